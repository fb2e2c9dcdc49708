//! Graph interchange: canonical edge-list CSV (read/write) and DOT output.
//!
//! Edge-list rows are `source,target,weight` with `source < target`, sorted,
//! and weights in shortest round-trip decimal form, so writing a graph that
//! was read from a canonical file reproduces it byte for byte. Nodes without
//! edges are written as `label,,` rows.

use std::fmt::Write as _;
use std::io::{Read, Write};

use crate::community::Partition;
use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, WeightedGraph};
use crate::report::NodeAttributes;

pub const EDGE_LIST_HEADER: [&str; 3] = ["source", "target", "weight"];

/// A graph with optional per-node annotations.
#[derive(Debug, Clone, Copy)]
pub struct GraphBundle<'a> {
    graph: &'a WeightedGraph,
    partition: Option<&'a Partition>,
    attributes: Option<&'a [NodeAttributes]>,
}

impl<'a> GraphBundle<'a> {
    pub fn new(graph: &'a WeightedGraph) -> Self {
        GraphBundle {
            graph,
            partition: None,
            attributes: None,
        }
    }

    pub fn with_partition(mut self, partition: &'a Partition) -> Result<Self> {
        if partition.len() != self.graph.node_count() {
            return Err(Error::PartitionMismatch(format!(
                "partition covers {} nodes, graph has {}",
                partition.len(),
                self.graph.node_count()
            )));
        }
        self.partition = Some(partition);
        Ok(self)
    }

    /// Attributes must list every node once, in node order.
    pub fn with_attributes(mut self, attributes: &'a [NodeAttributes]) -> Result<Self> {
        let matches = attributes.len() == self.graph.node_count()
            && attributes
                .iter()
                .zip(self.graph.labels())
                .all(|(a, l)| a.label == *l);
        if !matches {
            return Err(Error::NodeSetMismatch(
                "attribute rows do not match the graph's nodes".into(),
            ));
        }
        self.attributes = Some(attributes);
        Ok(self)
    }

    pub fn graph(&self) -> &'a WeightedGraph {
        self.graph
    }
}

fn canonical_rows(g: &WeightedGraph) -> Vec<[String; 3]> {
    let mut rows: Vec<[String; 3]> = g
        .edges()
        .map(|(u, v, w)| {
            let (a, b) = (g.label(u), g.label(v));
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            [a.to_owned(), b.to_owned(), w.to_string()]
        })
        .collect();
    for id in g.node_ids() {
        if g.degree(id).expect("node of g") == 0 {
            rows.push([g.label(id).to_owned(), String::new(), String::new()]);
        }
    }
    rows.sort_by(|x, y| (&x[0], &x[1]).cmp(&(&y[0], &y[1])));
    rows
}

pub fn write_edge_list<W: Write>(bundle: &GraphBundle<'_>, writer: W) -> Result<()> {
    let g = bundle.graph;
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(EDGE_LIST_HEADER)?;
    for row in canonical_rows(g) {
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Reads an edge list. Every unordered pair may appear at most once.
pub fn read_edge_list<R: Read>(reader: R) -> Result<WeightedGraph> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let mut builder = GraphBuilder::new();
    for row in rdr.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let malformed = |reason: String| Error::MalformedRow { row: line, reason };
        if row.len() != 3 {
            return Err(malformed(format!(
                "expected 3 columns, found {}",
                row.len()
            )));
        }
        let (source, target, weight) = (&row[0], &row[1], &row[2]);
        if source.is_empty() {
            return Err(malformed("empty source label".into()));
        }
        if target.is_empty() && weight.is_empty() {
            builder.add_node(source)?;
            continue;
        }
        if target.is_empty() {
            return Err(malformed("empty target label".into()));
        }
        let w: f64 = weight
            .parse()
            .map_err(|_| malformed(format!("invalid weight {weight:?}")))?;
        if !(w.is_finite() && w > 0.0) {
            return Err(malformed(format!("weight must be positive, got {weight}")));
        }
        if source == target {
            return Err(Error::SelfLoop(source.to_owned()));
        }
        let u = builder.add_node(source)?;
        let v = builder.add_node(target)?;
        builder.insert_edge(u, v, w)?;
    }
    Ok(builder.build())
}

/// Quotes a DOT identifier, escaping backslashes, quotes and newlines.
pub fn quote_dot(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            _ => out.push(ch),
        }
    }
    out.push('"');
    out
}

/// Inverse of [`quote_dot`] for the text between the quotes.
pub fn unescape_dot(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(ch) = chars.next() {
        if ch == '\\' {
            match chars.next() {
                Some('n') => out.push('\n'),
                Some(other) => out.push(other),
                None => out.push('\\'),
            }
        } else {
            out.push(ch);
        }
    }
    out
}

/// Undirected DOT description. Nodes are sorted by label and carry the
/// partition and attribute annotations; edges carry `weight`.
pub fn write_dot<W: Write>(bundle: &GraphBundle<'_>, mut writer: W) -> Result<()> {
    let g = bundle.graph;
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut out = String::from("graph cooccurrence {\n");
    let mut ids: Vec<_> = g.node_ids().collect();
    ids.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
    for id in ids {
        let mut props: Vec<String> = Vec::new();
        if let Some(p) = bundle.partition {
            props.push(format!("community={}", p.community_of(id)));
        }
        if let Some(attrs) = bundle.attributes {
            let a = &attrs[id.index()];
            props.push(format!("parent_field={}", quote_dot(&a.parent_field)));
            props.push(format!("frequency={}", a.frequency));
            props.push(format!("betweenness={}", a.betweenness));
            props.push(format!("weighted_degree={}", a.weighted_degree));
        }
        let _ = write!(out, "  {}", quote_dot(g.label(id)));
        if !props.is_empty() {
            let _ = write!(out, " [{}]", props.join(", "));
        }
        out.push_str(";\n");
    }
    for [a, b, w] in canonical_rows(g) {
        if b.is_empty() {
            continue;
        }
        let _ = writeln!(
            out,
            "  {} -- {} [weight={}];",
            quote_dot(&a),
            quote_dot(&b),
            w
        );
    }
    out.push_str("}\n");
    writer.write_all(out.as_bytes())?;
    writer.flush()?;
    Ok(())
}
