use std::fs;
use std::path::{Path, PathBuf};

use crate::error::CliError;

/// Output files collected in memory and written only once a command has
/// finished, so a failing run leaves nothing behind.
#[derive(Debug, Default)]
pub struct Outputs {
    files: Vec<(PathBuf, Vec<u8>)>,
}

impl Outputs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: impl Into<PathBuf>, bytes: Vec<u8>) {
        self.files.push((name.into(), bytes));
    }

    /// Renders through a library writer into an in-memory file.
    pub fn render<F>(&mut self, name: impl Into<PathBuf>, f: F) -> Result<(), CliError>
    where
        F: FnOnce(&mut Vec<u8>) -> csnet_core::Result<()>,
    {
        let mut buf = Vec::new();
        f(&mut buf)?;
        self.add(name, buf);
        Ok(())
    }

    pub fn merge(&mut self, other: Outputs) {
        self.files.extend(other.files);
    }

    /// Moves another set of outputs under `dir`.
    pub fn nest(&mut self, dir: &str, other: Outputs) {
        for (name, bytes) in other.files {
            self.files.push((Path::new(dir).join(name), bytes));
        }
    }

    #[cfg(test)]
    pub fn get(&self, name: &str) -> Option<&[u8]> {
        self.files
            .iter()
            .find(|(p, _)| p == Path::new(name))
            .map(|(_, b)| b.as_slice())
    }

    /// Writes every file below `root`. Each file goes to a temporary name
    /// first and is renamed into place once all of them are on disk.
    pub fn commit(self, root: &Path) -> Result<Vec<PathBuf>, CliError> {
        let mut staged = Vec::with_capacity(self.files.len());
        let result = (|| {
            for (name, bytes) in &self.files {
                let target = root.join(name);
                if let Some(dir) = target.parent() {
                    fs::create_dir_all(dir)
                        .map_err(|e| CliError::io(format!("creating {}", dir.display()), e))?;
                }
                let tmp = tmp_name(&target);
                fs::write(&tmp, bytes)
                    .map_err(|e| CliError::io(format!("writing {}", tmp.display()), e))?;
                staged.push((tmp, target));
            }
            Ok(())
        })();
        if let Err(e) = result {
            for (tmp, _) in &staged {
                let _ = fs::remove_file(tmp);
            }
            return Err(e);
        }
        let mut written = Vec::with_capacity(staged.len());
        for (tmp, target) in staged {
            fs::rename(&tmp, &target)
                .map_err(|e| CliError::io(format!("writing {}", target.display()), e))?;
            written.push(target);
        }
        Ok(written)
    }
}

fn tmp_name(target: &Path) -> PathBuf {
    let mut name = target.file_name().unwrap_or_default().to_os_string();
    name.push(".partial");
    target.with_file_name(name)
}
