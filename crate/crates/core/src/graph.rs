//! Labeled directed multigraphs: the presentations of sofic shifts.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An edge label. Labels are opaque, nonempty strings compared exactly.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Label(String);

impl Label {
    pub fn new(text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        if text.is_empty() {
            return Err(Error::InvalidGraph("empty label".into()));
        }
        Ok(Label(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Returns this label with `#k` appended.
    pub fn suffixed(&self, k: usize) -> Label {
        Label(format!("{}#{}", self.0, k))
    }
}

impl TryFrom<String> for Label {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        Label::new(s)
    }
}

impl From<Label> for String {
    fn from(l: Label) -> String {
        l.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand for building labels from literals in code that knows they are nonempty.
pub(crate) fn lbl(s: impl Into<String>) -> Label {
    Label::new(s).expect("nonempty label")
}

/// Parses a word written as whitespace-separated labels, e.g. `"p b a a c_0"`.
pub fn parse_word(text: &str) -> Result<Vec<Label>> {
    text.split_whitespace().map(Label::new).collect()
}

pub fn format_word(word: &[Label]) -> String {
    let parts: Vec<&str> = word.iter().map(Label::as_str).collect();
    parts.join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub label: Label,
    pub to: usize,
}

impl Edge {
    pub fn new(from: usize, label: Label, to: usize) -> Self {
        Edge { from, label, to }
    }
}

/// A finite directed multigraph with labeled edges.
///
/// Edges are kept sorted by `(from, label, to)`; exact duplicates are rejected.
/// Parallel edges with distinct labels are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn new(vertex_count: usize, mut edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            if e.from >= vertex_count || e.to >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {} -{}-> {} out of range for {} vertices",
                    e.from, e.label, e.to, vertex_count
                )));
            }
        }
        edges.sort();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge {} -{}-> {}",
                w[0].from, w[0].label, w[0].to
            )));
        }
        Ok(LabeledGraph {
            vertex_count,
            edges,
        })
    }

    /// Convenience constructor from `(from, label, to)` triples.
    pub fn from_triples<S: AsRef<str>>(
        vertex_count: usize,
        triples: &[(usize, S, usize)],
    ) -> Result<Self> {
        let edges = triples
            .iter()
            .map(|(f, l, t)| Ok(Edge::new(*f, Label::new(l.as_ref())?, *t)))
            .collect::<Result<Vec<_>>>()?;
        LabeledGraph::new(vertex_count, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted, deduplicated label set.
    pub fn alphabet(&self) -> Vec<Label> {
        let set: BTreeSet<&Label> = self.edges.iter().map(|e| &e.label).collect();
        set.into_iter().cloned().collect()
    }

    pub fn has_edge(&self, from: usize, label: &Label, to: usize) -> bool {
        self.edges
            .binary_search_by(|e| (e.from, &e.label, e.to).cmp(&(from, label, to)))
            .is_ok()
    }

    /// The same graph with every edge reversed.
    pub fn reversed(&self) -> LabeledGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(e.to, e.label.clone(), e.from))
            .collect();
        LabeledGraph::new(self.vertex_count, edges).expect("reversal preserves validity")
    }

    /// Applies `f` to every label. Fails if the renaming creates duplicate edges.
    pub fn relabeled(&self, f: impl Fn(&Label) -> Label) -> Result<LabeledGraph> {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(e.from, f(&e.label), e.to))
            .collect();
        LabeledGraph::new(self.vertex_count, edges)
    }

    pub fn is_essential(&self) -> bool {
        self.first_inessential().is_none()
    }

    pub(crate) fn first_inessential(&self) -> Option<usize> {
        let mut has_out = vec![false; self.vertex_count];
        let mut has_in = vec![false; self.vertex_count];
        for e in &self.edges {
            has_out[e.from] = true;
            has_in[e.to] = true;
        }
        (0..self.vertex_count).find(|&v| !(has_out[v] && has_in[v]))
    }
}

/// Result of trimming a graph to its essential part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trim {
    pub graph: LabeledGraph,
    /// `kept[new] = old` vertex index.
    pub kept: Vec<usize>,
    /// Old indices of removed vertices, ascending.
    pub removed: Vec<usize>,
}

impl Trim {
    pub fn new_index(&self, old: usize) -> Option<usize> {
        self.kept.binary_search(&old).ok()
    }
}

/// Repeatedly deletes vertices lacking an incoming or an outgoing edge.
pub fn trim(g: &LabeledGraph) -> Result<Trim> {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    loop {
        let mut out_deg = vec![0usize; n];
        let mut in_deg = vec![0usize; n];
        for e in g.edges() {
            if alive[e.from] && alive[e.to] {
                out_deg[e.from] += 1;
                in_deg[e.to] += 1;
            }
        }
        let mut changed = false;
        for v in 0..n {
            if alive[v] && (out_deg[v] == 0 || in_deg[v] == 0) {
                alive[v] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if kept.is_empty() {
        return Err(Error::EmptyShift);
    }
    let removed = (0..n).filter(|&v| !alive[v]).collect();
    let mut remap = vec![usize::MAX; n];
    for (new, &old) in kept.iter().enumerate() {
        remap[old] = new;
    }
    let edges = g
        .edges()
        .iter()
        .filter(|e| alive[e.from] && alive[e.to])
        .map(|e| Edge::new(remap[e.from], e.label.clone(), remap[e.to]))
        .collect();
    Ok(Trim {
        graph: LabeledGraph::new(kept.len(), edges)?,
        kept,
        removed,
    })
}

/// Maximal essential subgraph, vertex indices re-packed.
pub fn validate_essential(g: &LabeledGraph) -> Result<LabeledGraph> {
    trim(g).map(|t| t.graph)
}
