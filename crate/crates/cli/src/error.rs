use std::fmt;
use std::io;
use std::path::Path;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_DATA: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or configuration.
    Usage(String),
    /// A file could not be read or written.
    Io(anyhow::Error),
    /// Inputs were readable but their content is unusable.
    Data(anyhow::Error),
}

impl CliError {
    pub fn usage(e: impl fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn io(context: impl fmt::Display, e: io::Error) -> Self {
        CliError::Io(anyhow::Error::new(e).context(context.to_string()))
    }

    pub fn data(msg: impl fmt::Display) -> Self {
        CliError::Data(anyhow::anyhow!("{msg}"))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Data(_) => EXIT_DATA,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e:#}"),
            CliError::Data(e) => write!(f, "data error: {e:#}"),
        }
    }
}

/// Attaches a file path to a library error, classifying it by cause.
pub fn at(path: &Path) -> impl Fn(csnet_core::Error) -> CliError + '_ {
    move |e| {
        let io = e.is_io();
        let e = anyhow::Error::new(e).context(path.display().to_string());
        if io {
            CliError::Io(e)
        } else {
            CliError::Data(e)
        }
    }
}

/// Library errors that do not relate to a particular file.
impl From<csnet_core::Error> for CliError {
    fn from(e: csnet_core::Error) -> Self {
        if e.is_io() {
            CliError::Io(e.into())
        } else {
            CliError::Data(e.into())
        }
    }
}
