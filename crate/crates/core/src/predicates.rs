//! Structural predicates on presentations.

use std::collections::{HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::engine::{Analysis, PairRelation, SubsetState};
use crate::error::Result;
use crate::graph::{Label, LabeledGraph};

/// Out-edges at each vertex carry distinct labels.
pub fn is_right_resolving(g: &LabeledGraph) -> bool {
    // edges are sorted by (from, label, to)
    g.edges()
        .windows(2)
        .all(|w| (w[0].from, &w[0].label) != (w[1].from, &w[1].label))
}

/// In-edges at each vertex carry distinct labels.
pub fn is_left_resolving(g: &LabeledGraph) -> bool {
    is_right_resolving(&g.reversed())
}

fn reach_from(g: &LabeledGraph, start: usize, reverse: bool) -> FixedBitSet {
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for e in g.edges() {
        if reverse {
            adj[e.to].push(e.from);
        } else {
            adj[e.from].push(e.to);
        }
    }
    let mut seen = FixedBitSet::with_capacity(n);
    let mut queue = VecDeque::from([start]);
    seen.insert(start);
    while let Some(v) = queue.pop_front() {
        for &t in &adj[v] {
            if !seen.put(t) {
                queue.push_back(t);
            }
        }
    }
    seen
}

/// The underlying digraph is strongly connected.
pub fn is_irreducible(g: &LabeledGraph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return false;
    }
    reach_from(g, 0, false).count_ones(..) == n && reach_from(g, 0, true).count_ones(..) == n
}

/// Boolean adjacency matrix as rows of successor bitsets.
fn adjacency_rows(g: &LabeledGraph) -> Vec<FixedBitSet> {
    let n = g.vertex_count();
    let mut rows = vec![FixedBitSet::with_capacity(n); n];
    for e in g.edges() {
        rows[e.from].insert(e.to);
    }
    rows
}

fn bool_mul(lhs: &[FixedBitSet], rhs: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let n = rhs.len();
    lhs.iter()
        .map(|row| {
            let mut out = FixedBitSet::with_capacity(n);
            for j in row.ones() {
                out.union_with(&rhs[j]);
            }
            out
        })
        .collect()
}

/// Least `N` such that every ordered vertex pair is joined by a path of every length
/// `≥ N`; `None` when the graph is not primitive.
///
/// Iterates powers of the boolean adjacency matrix until it is all-ones. A repeated
/// power, or passing Wielandt's bound `(V−1)² + 1`, certifies non-primitivity.
pub fn primitivity_distance(g: &LabeledGraph) -> Option<usize> {
    let n = g.vertex_count();
    if n == 0 {
        return None;
    }
    let base = adjacency_rows(g);
    let wielandt = (n - 1) * (n - 1) + 1;
    let mut power = base.clone();
    let mut seen: HashSet<Vec<FixedBitSet>> = HashSet::new();
    for k in 1..=wielandt {
        if power.iter().all(|r| r.is_full()) {
            // all-ones forces every column nonzero, so all later powers stay all-ones
            return Some(k);
        }
        if !seen.insert(power.clone()) {
            return None;
        }
        power = bool_mul(&power, &base);
    }
    None
}

/// Right (`|τ(w)| = 1`) and left (`|ι(w)| = 1`) synchronization of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyncStatus {
    pub right: bool,
    pub left: bool,
}

impl SyncStatus {
    pub fn bi(&self) -> bool {
        self.right && self.left
    }
}

/// Vertex pairs `(I, J)` joined by a path of length at least one.
pub fn path_pairs(g: &LabeledGraph) -> Vec<(usize, usize)> {
    let rows = adjacency_rows(g);
    let mut out = Vec::new();
    for i in 0..g.vertex_count() {
        let mut seen = FixedBitSet::with_capacity(g.vertex_count());
        let mut queue: VecDeque<usize> = rows[i].ones().collect();
        for t in rows[i].ones() {
            seen.insert(t);
        }
        while let Some(v) = queue.pop_front() {
            for t in rows[v].ones() {
                if !seen.put(t) {
                    queue.push_back(t);
                }
            }
        }
        out.extend(seen.ones().map(|t| (i, t)));
    }
    out
}

impl Analysis {
    pub fn synchronizing_status(&self, word: &[Label]) -> Result<SyncStatus> {
        let tau = self.terminal_set(word)?;
        let iota = self.initial_set(word)?;
        Ok(SyncStatus {
            right: tau.len() == 1,
            left: iota.len() == 1,
        })
    }

    /// Distinct vertices have distinct right-languages.
    pub fn is_follower_separated(&self) -> bool {
        let n = self.graph().vertex_count();
        let mut sigs = HashSet::new();
        (0..n).all(|v| sigs.insert(self.follower_signature(&SubsetState::singleton(n, v))))
    }

    /// Distinct path-realized vertex pairs have distinct extender signatures.
    ///
    /// The signature of `{(I, T)}` is the product of the forward states containing `I`
    /// with the backward states containing `T`. Both factors are nonempty (the full set
    /// is in each closure), so comparing the factors compares the products.
    pub fn is_extender_separated(&self) -> bool {
        let n = self.graph().vertex_count();
        let columns = |states: &[SubsetState]| -> Vec<FixedBitSet> {
            (0..n)
                .map(|v| {
                    let mut col = FixedBitSet::with_capacity(states.len());
                    for (j, s) in states.iter().enumerate() {
                        col.set(j, s.contains(v));
                    }
                    col
                })
                .collect()
        };
        let fwd = columns(self.forward_closure().states());
        let bwd = columns(self.backward_closure().states());
        let mut sigs = HashSet::new();
        path_pairs(self.graph())
            .into_iter()
            .all(|(i, t)| sigs.insert((fwd[i].clone(), bwd[t].clone())))
    }

    /// [`is_extender_separated`](Self::is_extender_separated) computed from the full
    /// signatures.
    pub fn is_extender_separated_by_signature(&self) -> bool {
        let n = self.graph().vertex_count();
        let mut sigs = HashSet::new();
        path_pairs(self.graph()).into_iter().all(|(i, t)| {
            sigs.insert(self.extender_signature(&PairRelation::from_pairs(n, [(i, t)])))
        })
    }
}

/// Every predicate at once, as reported by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateReport {
    pub vertices: usize,
    pub edges: usize,
    pub right_resolving: bool,
    pub left_resolving: bool,
    pub irreducible: bool,
    pub primitivity_distance: Option<usize>,
    pub follower_separated: bool,
    pub extender_separated: bool,
}

pub fn predicate_report(a: &Analysis) -> PredicateReport {
    let g = a.graph();
    PredicateReport {
        vertices: g.vertex_count(),
        edges: g.edges().len(),
        right_resolving: is_right_resolving(g),
        left_resolving: is_left_resolving(g),
        irreducible: is_irreducible(g),
        primitivity_distance: primitivity_distance(g),
        follower_separated: a.is_follower_separated(),
        extender_separated: a.is_extender_separated(),
    }
}
