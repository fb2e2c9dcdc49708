//! Classified-paper records, the two-level ACM taxonomy, and co-occurrence
//! graph construction.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, WeightedGraph};

/// Separator between labels inside the label column.
pub const LABEL_SEPARATOR: char = '/';

/// Longest run of "/"-separated fragments that may form a single label.
const MAX_JOINED_FRAGMENTS: usize = 4;

/// One classified paper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperRecord {
    pub conference: String,
    pub title: String,
    /// Distinct labels in order of first appearance; never empty.
    pub labels: Vec<String>,
}

/// Trims and collapses internal whitespace runs to single spaces. Case is kept.
pub fn canonicalize_label(raw: &str) -> String {
    raw.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Case-insensitive lookup key: canonical form, lowercased, with the spaces
/// around "/" removed.
fn lookup_key(raw: &str) -> String {
    let canonical = canonicalize_label(raw).to_lowercase();
    canonical
        .split(LABEL_SEPARATOR)
        .map(str::trim)
        .collect::<Vec<_>>()
        .join("/")
}

/// Two-level classification: subfield -> parent field.
#[derive(Debug, Clone, Default)]
pub struct Taxonomy {
    parents: BTreeMap<String, String>,
    fields: BTreeSet<String>,
    lookup: HashMap<String, String>,
}

impl Taxonomy {
    /// Builds a taxonomy from `(subfield, field)` pairs.
    pub fn from_pairs<I, S, T>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, T)>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut tax = Taxonomy::default();
        for (sub, field) in pairs {
            tax.insert(sub.as_ref(), field.as_ref())?;
        }
        if tax.parents.is_empty() {
            return Err(Error::Taxonomy("no subfield rows".into()));
        }
        Ok(tax)
    }

    fn insert(&mut self, sub: &str, field: &str) -> Result<()> {
        let sub = canonicalize_label(sub);
        let field = canonicalize_label(field);
        if sub.is_empty() || field.is_empty() {
            return Err(Error::Taxonomy("empty subfield or field label".into()));
        }
        if let Some(existing) = self.parents.get(&sub) {
            if *existing != field {
                return Err(Error::Taxonomy(format!(
                    "subfield {sub:?} has conflicting parents {existing:?} and {field:?}"
                )));
            }
            return Ok(());
        }
        self.lookup.insert(lookup_key(&sub), sub.clone());
        self.lookup.insert(lookup_key(&field), field.clone());
        self.fields.insert(field.clone());
        self.parents.insert(sub, field);
        Ok(())
    }

    /// The taxonomy's own spelling of `label`, if it names a field or subfield.
    pub fn canonical(&self, label: &str) -> Option<&str> {
        self.lookup.get(&lookup_key(label)).map(String::as_str)
    }

    /// Parent field of a subfield. Field labels resolve to themselves.
    pub fn parent(&self, label: &str) -> Option<&str> {
        let canonical = self.canonical(label)?;
        match self.parents.get(canonical) {
            Some(field) => Some(field),
            None => self.fields.get(canonical).map(String::as_str),
        }
    }

    pub fn is_field(&self, label: &str) -> bool {
        self.canonical(label)
            .is_some_and(|c| self.fields.contains(c))
    }

    pub fn fields(&self) -> impl Iterator<Item = &str> {
        self.fields.iter().map(String::as_str)
    }

    /// `(subfield, field)` pairs ordered by subfield.
    pub fn subfields(&self) -> impl Iterator<Item = (&str, &str)> {
        self.parents.iter().map(|(s, f)| (s.as_str(), f.as_str()))
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }
}

/// Reads a taxonomy file: header row, then `subfield, field` rows.
pub fn load_taxonomy<R: Read>(reader: R, delimiter: u8) -> Result<Taxonomy> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let mut pairs = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        if row.iter().all(str::is_empty) {
            continue;
        }
        if row.len() != 2 {
            return Err(Error::MalformedRow {
                row: line,
                reason: format!("expected 2 columns, found {}", row.len()),
            });
        }
        pairs.push((row[0].to_owned(), row[1].to_owned()));
    }
    Taxonomy::from_pairs(pairs)
}

#[derive(Debug, Clone, Copy)]
pub struct ParseOptions<'a> {
    pub delimiter: u8,
    /// When present, "/"-separated fragments that together spell a known
    /// label are re-joined, and known labels take the taxonomy's spelling.
    pub taxonomy: Option<&'a Taxonomy>,
}

impl Default for ParseOptions<'_> {
    fn default() -> Self {
        ParseOptions {
            delimiter: b',',
            taxonomy: None,
        }
    }
}

/// A data row that did not yield a record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectedRow {
    /// 1-based line number in the input (the header is line 1).
    pub row: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct ParsedRecords {
    pub records: Vec<PaperRecord>,
    pub rejected: Vec<RejectedRow>,
}

/// Parses a records file with columns `conference, labels, title` and a
/// header row.
///
/// Rows with the wrong column count or an empty label field are reported in
/// [`ParsedRecords::rejected`]; a failing stream is a hard error.
pub fn parse_records<R: Read>(reader: R, opts: &ParseOptions<'_>) -> Result<ParsedRecords> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(opts.delimiter)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let mut out = ParsedRecords::default();
    let mut raw = csv::ByteRecord::new();
    loop {
        let line = rdr.position().line();
        match rdr.read_byte_record(&mut raw) {
            Ok(false) => break,
            Ok(true) => {}
            Err(e) if e.is_io_error() => return Err(e.into()),
            Err(e) => {
                out.rejected.push(RejectedRow {
                    row: line,
                    reason: e.to_string(),
                });
                continue;
            }
        }
        let line = raw.position().map_or(line, |p| p.line());
        let row = match csv::StringRecord::from_byte_record(raw.clone()) {
            Ok(row) => row,
            Err(_) => {
                out.rejected.push(RejectedRow {
                    row: line,
                    reason: "invalid UTF-8".into(),
                });
                continue;
            }
        };
        if row.len() == 1 && row[0].is_empty() {
            continue;
        }
        if row.len() != 3 {
            out.rejected.push(RejectedRow {
                row: line,
                reason: format!("expected 3 columns, found {}", row.len()),
            });
            continue;
        }
        let labels = split_labels(&row[1], opts.taxonomy);
        if labels.is_empty() {
            out.rejected.push(RejectedRow {
                row: line,
                reason: "empty label field".into(),
            });
            continue;
        }
        out.records.push(PaperRecord {
            conference: row[0].to_owned(),
            title: row[2].to_owned(),
            labels,
        });
    }
    Ok(out)
}

/// Splits a label column on "/", canonicalizes, and drops duplicates.
pub fn split_labels(field: &str, taxonomy: Option<&Taxonomy>) -> Vec<String> {
    let fragments: Vec<&str> = field.split(LABEL_SEPARATOR).collect();
    let mut labels = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |label: String| {
        if !label.is_empty() && seen.insert(label.clone()) {
            labels.push(label);
        }
    };

    let mut i = 0;
    while i < fragments.len() {
        let mut consumed = 1;
        let mut label = None;
        if let Some(tax) = taxonomy {
            let longest = (fragments.len() - i).min(MAX_JOINED_FRAGMENTS);
            for len in (2..=longest).rev() {
                let joined = fragments[i..i + len].join("/");
                if let Some(known) = tax.canonical(&joined) {
                    label = Some(known.to_owned());
                    consumed = len;
                    break;
                }
            }
            if label.is_none() {
                label = tax.canonical(fragments[i]).map(str::to_owned);
            }
        }
        push(label.unwrap_or_else(|| canonicalize_label(fragments[i])));
        i += consumed;
    }
    labels
}

/// Writes the rejected-rows report: `row, reason`.
pub fn write_rejected<W: Write>(rows: &[RejectedRow], writer: W, delimiter: u8) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new()
        .delimiter(delimiter)
        .from_writer(writer);
    wtr.write_record(["row", "reason"])?;
    for r in rows {
        wtr.write_record([r.row.to_string().as_str(), r.reason.as_str()])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Co-occurrence graph: one node per distinct label (in order of first
/// appearance), and for every paper +1 on each pair of its labels.
pub fn build_cooccurrence(records: &[PaperRecord]) -> Result<WeightedGraph> {
    let mut builder = GraphBuilder::new();
    let mut ids = Vec::new();
    for record in records {
        ids.clear();
        for label in &record.labels {
            let id = builder.add_node(label)?;
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
        for (a, &u) in ids.iter().enumerate() {
            for &v in &ids[a + 1..] {
                builder.increment_edge(u, v, 1.0)?;
            }
        }
    }
    Ok(builder.build())
}

/// Number of papers carrying each label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: BTreeMap<String, usize>,
}

impl FrequencyTable {
    pub fn get(&self, label: &str) -> Option<usize> {
        self.counts.get(label).copied()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.counts.iter().map(|(l, &c)| (l.as_str(), c))
    }

    /// Labels by descending count; equal counts ordered by label.
    pub fn ranked(&self) -> Vec<(&str, usize)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        v
    }
}

pub fn label_frequency(records: &[PaperRecord]) -> FrequencyTable {
    let mut counts = BTreeMap::new();
    for record in records {
        let distinct: BTreeSet<&str> = record.labels.iter().map(String::as_str).collect();
        for label in distinct {
            *counts.entry(label.to_owned()).or_insert(0) += 1;
        }
    }
    FrequencyTable { counts }
}

/// Percentage of attempted papers that carry a classification.
pub fn classification_coverage(classified: usize, attempted: usize) -> Result<f64> {
    if attempted == 0 {
        return Err(Error::InvalidParameter(
            "attempted paper count must be positive".into(),
        ));
    }
    if classified > attempted {
        return Err(Error::InvalidParameter(format!(
            "classified count {classified} exceeds attempted count {attempted}"
        )));
    }
    Ok(100.0 * classified as f64 / attempted as f64)
}
