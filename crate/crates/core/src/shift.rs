//! Presented shifts and their JSON file format.
//!
//! ```json
//! {"vertices": N,
//!  "edges": [{"from": 0, "label": "a", "to": 1}, ...],
//!  "sync_loop": {"vertex": 1, "label": "q"} | null,
//!  "provenance": "gns(n=5,S={0,3},i*=3)"}
//! ```
//!
//! Edges are written sorted by `(from, label, to)`, so serialization is byte-reproducible.

use serde::{Deserialize, Serialize};

use crate::engine::Analysis;
use crate::error::{Error, Result};
use crate::graph::{trim, Edge, Label, LabeledGraph};

/// A self-loop whose label is a bi-synchronizing letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SyncLoop {
    pub vertex: usize,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedShift {
    graph: LabeledGraph,
    sync_loop: Option<SyncLoop>,
    provenance: String,
}

impl PresentedShift {
    /// Validates the designated loop: it must be an existing self-loop whose label is
    /// bi-synchronizing in `graph`.
    pub fn new(
        graph: LabeledGraph,
        sync_loop: Option<SyncLoop>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if let Some(sl) = &sync_loop {
            if !graph.has_edge(sl.vertex, &sl.label, sl.vertex) {
                return Err(Error::InvalidGraph(format!(
                    "sync_loop {}@{} is not a self-loop of the graph",
                    sl.label, sl.vertex
                )));
            }
            let analysis = Analysis::new(&graph)?;
            if !analysis
                .synchronizing_status(std::slice::from_ref(&sl.label))?
                .bi()
            {
                return Err(Error::InvalidGraph(format!(
                    "sync_loop label {} is not bi-synchronizing",
                    sl.label
                )));
            }
        }
        Ok(PresentedShift {
            graph,
            sync_loop,
            provenance: provenance.into(),
        })
    }

    /// A shift with no designated loop; no validation beyond the graph's own.
    pub fn plain(graph: LabeledGraph, provenance: impl Into<String>) -> Self {
        PresentedShift {
            graph,
            sync_loop: None,
            provenance: provenance.into(),
        }
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn sync_loop(&self) -> Option<&SyncLoop> {
        self.sync_loop.as_ref()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.graph.vertex_count(),
            edges: self
                .graph
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    from: e.from,
                    label: e.label.clone(),
                    to: e.to,
                })
                .collect(),
            sync_loop: self.sync_loop.clone(),
            provenance: self.provenance.clone(),
        }
    }

    /// Canonical pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("serializable");
        s.push('\n');
        s
    }

    /// Parses and validates a shift file. The graph must already be essential when a
    /// sync loop is given; use [`GraphFile::trimmed`] for raw input.
    pub fn from_json(text: &str) -> Result<Self> {
        GraphFile::parse(text)?.into_shift()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub from: usize,
    pub label: Label,
    pub to: usize,
}

/// Raw, unvalidated contents of a graph file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<EdgeRecord>,
    #[serde(default)]
    pub sync_loop: Option<SyncLoop>,
    #[serde(default)]
    pub provenance: String,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidGraph(e.to_string()))
    }

    pub fn graph(&self) -> Result<LabeledGraph> {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(e.from, e.label.clone(), e.to))
            .collect();
        LabeledGraph::new(self.vertices, edges)
    }

    pub fn into_shift(self) -> Result<PresentedShift> {
        let g = self.graph()?;
        PresentedShift::new(g, self.sync_loop, self.provenance)
    }

    /// Trims the graph to its essential part, remapping the sync loop, and returns the
    /// shift with the old indices of removed vertices.
    pub fn trimmed(self) -> Result<(PresentedShift, Vec<usize>)> {
        let t = trim(&self.graph()?)?;
        let sync_loop = match self.sync_loop {
            Some(sl) => Some(SyncLoop {
                vertex: t.new_index(sl.vertex).ok_or_else(|| {
                    Error::InvalidGraph(format!("sync_loop vertex {} was trimmed", sl.vertex))
                })?,
                label: sl.label,
            }),
            None => None,
        };
        let shift = PresentedShift::new(t.graph, sync_loop, self.provenance)?;
        Ok((shift, t.removed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::lbl;

    #[test]
    fn json_round_trip_is_byte_stable() {
        let g = LabeledGraph::from_triples(2, &[(1, "b", 0), (0, "a", 1), (0, "q", 0)]).unwrap();
        let s = PresentedShift::new(
            g,
            Some(SyncLoop {
                vertex: 0,
                label: lbl("q"),
            }),
            "test",
        )
        .unwrap();
        let text = s.to_json();
        let back = PresentedShift::from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json(), text);
        assert!(text.find("\"from\": 0").unwrap() < text.find("\"from\": 1").unwrap());
    }

    #[test]
    fn sync_loop_must_be_a_bi_synchronizing_self_loop() {
        let g =
            LabeledGraph::from_triples(2, &[(0, "a", 0), (0, "b", 1), (1, "a", 1), (1, "c", 0)])
                .unwrap();
        let bad = SyncLoop {
            vertex: 0,
            label: lbl("a"),
        };
        assert!(PresentedShift::new(g.clone(), Some(bad), "").is_err());
        let missing = SyncLoop {
            vertex: 0,
            label: lbl("b"),
        };
        assert!(PresentedShift::new(g, Some(missing), "").is_err());
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(GraphFile::parse("{\"vertices\": 1}").is_err());
        let dup = r#"{"vertices":1,"edges":[{"from":0,"label":"a","to":0},{"from":0,"label":"a","to":0}],"sync_loop":null,"provenance":""}"#;
        assert!(PresentedShift::from_json(dup).is_err());
        let empty_label = r#"{"vertices":1,"edges":[{"from":0,"label":"","to":0}]}"#;
        assert!(GraphFile::parse(empty_label).is_err());
    }

    #[test]
    fn trimming_remaps_the_sync_loop() {
        let text = r#"{"vertices":3,"edges":[{"from":0,"label":"x","to":1},{"from":1,"label":"q","to":1},{"from":1,"label":"r","to":2},{"from":2,"label":"s","to":1}],"sync_loop":{"vertex":1,"label":"q"},"provenance":"raw"}"#;
        let (shift, removed) = GraphFile::parse(text).unwrap().trimmed().unwrap();
        assert_eq!(removed, vec![0]);
        assert_eq!(shift.sync_loop().unwrap().vertex, 0);
        assert_eq!(shift.graph().vertex_count(), 2);
    }
}
