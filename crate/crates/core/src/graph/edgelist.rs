use std::io::{BufRead, Write};

use super::{CsrGraph, GraphError, VertexId};

/// Vertex label as it appears in an input file.
pub type Label = i64;

/// Bijection between the labels seen in an input and contiguous vertex
/// indices `0..n`. Indices follow ascending label order, so a file whose
/// labels are already `0..n` maps onto itself.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabelMap {
    labels: Vec<Label>,
}

impl LabelMap {
    /// Builds the map from any collection of labels (duplicates allowed).
    pub fn from_labels(mut labels: Vec<Label>) -> Self {
        labels.sort_unstable();
        labels.dedup();
        Self { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: Label) -> Option<VertexId> {
        self.labels
            .binary_search(&label)
            .ok()
            .map(|i| i as VertexId)
    }

    pub fn label_of(&self, index: VertexId) -> Option<Label> {
        self.labels.get(index as usize).copied()
    }

    /// `(label, index)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (Label, VertexId)> + '_ {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as VertexId))
    }
}

/// Raw `(source, target)` label pairs in input order, before
/// canonicalization. May hold self-loops, duplicates and both orientations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeList {
    edges: Vec<(Label, Label)>,
    label_map: LabelMap,
}

impl EdgeList {
    pub fn from_pairs(edges: Vec<(Label, Label)>) -> Result<Self, GraphError> {
        let labels: Vec<Label> = edges.iter().flat_map(|&(s, t)| [s, t]).collect();
        let label_map = LabelMap::from_labels(labels);
        if label_map.len() > VertexId::MAX as usize {
            return Err(GraphError::TooManyVertices(label_map.len() as u64));
        }
        Ok(Self { edges, label_map })
    }

    pub fn edges(&self) -> &[(Label, Label)] {
        &self.edges
    }

    pub fn label_map(&self) -> &LabelMap {
        &self.label_map
    }

    pub fn n_vertices(&self) -> usize {
        self.label_map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges translated to vertex indices, in input order.
    pub fn index_pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().map(|&(s, t)| {
            // Every label in `edges` is in the map by construction.
            let s = self.label_map.index_of(s).expect("label present in map");
            let t = self.label_map.index_of(t).expect("label present in map");
            (s, t)
        })
    }
}

#[derive(Debug, Clone)]
pub struct ParseOptions {
    /// Lines whose first non-blank character is one of these are skipped.
    pub comment_prefixes: Vec<char>,
    /// Accept input with no edge lines instead of failing with `NoEdges`.
    pub allow_empty: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self {
            comment_prefixes: vec!['#', '%'],
            allow_empty: false,
        }
    }
}

impl ParseOptions {
    pub fn allow_empty(mut self, allow: bool) -> Self {
        self.allow_empty = allow;
        self
    }
}

/// Reads a whitespace- or tab-separated edge list. Each data line holds
/// `source target [weight]`; the weight is validated as a number and
/// discarded.
pub fn parse_edge_list<R: BufRead>(
    mut reader: R,
    options: &ParseOptions,
) -> Result<EdgeList, GraphError> {
    let mut edges = Vec::new();
    let mut buf = Vec::new();
    let mut line_no = 0usize;
    loop {
        buf.clear();
        if reader.read_until(b'\n', &mut buf)? == 0 {
            break;
        }
        line_no += 1;
        let line = std::str::from_utf8(&buf).map_err(|_| GraphError::Parse {
            line: line_no,
            message: "line is not valid UTF-8".into(),
        })?;
        let line = line.trim();
        if line.is_empty() || line.starts_with(options.comment_prefixes.as_slice()) {
            continue;
        }
        edges.push(parse_line(line, line_no)?);
    }
    if edges.is_empty() && !options.allow_empty {
        return Err(GraphError::NoEdges);
    }
    EdgeList::from_pairs(edges)
}

fn parse_line(line: &str, line_no: usize) -> Result<(Label, Label), GraphError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if !(2..=3).contains(&fields.len()) {
        return Err(GraphError::Parse {
            line: line_no,
            message: format!("expected 2 or 3 fields, found {}", fields.len()),
        });
    }
    let label = |s: &str| {
        s.parse::<Label>().map_err(|_| GraphError::Parse {
            line: line_no,
            message: format!("`{s}` is not an integer vertex label"),
        })
    };
    let source = label(fields[0])?;
    let target = label(fields[1])?;
    if let Some(weight) = fields.get(2) {
        weight.parse::<f64>().map_err(|_| GraphError::Parse {
            line: line_no,
            message: format!("`{weight}` is not a numeric weight"),
        })?;
    }
    Ok((source, target))
}

/// Reduces an edge list to its canonical undirected simple graph over the
/// label map's vertex set.
pub fn canonicalize(edge_list: &EdgeList) -> CsrGraph {
    CsrGraph::from_index_pairs(edge_list.n_vertices(), edge_list.index_pairs())
        .expect("label map covers every edge endpoint")
}

/// Writes one `u\tv` line per undirected edge, `u < v`, sorted.
/// Isolated vertices have no line and are not represented.
pub fn write_tsv<W: Write>(graph: &CsrGraph, mut writer: W) -> std::io::Result<()> {
    for (u, v) in graph.upper_edges() {
        writeln!(writer, "{u}\t{v}")?;
    }
    writer.flush()
}

pub fn to_tsv_string(graph: &CsrGraph) -> String {
    let mut out = Vec::new();
    write_tsv(graph, &mut out).expect("writing to a Vec cannot fail");
    String::from_utf8(out).expect("tsv output is ASCII")
}
