//! Joining two presentations through their synchronizing loops.
//!
//! The join is the disjoint union plus an edge `x` from the first loop's anchor to the
//! second's and an edge `y` back. Follower counts add; past twice the larger primitivity
//! distance, extender counts add plus `2·|V₁|·|V₂|`.

use std::collections::BTreeSet;

use crate::engine::Analysis;
use crate::error::{Error, Result};
use crate::graph::{lbl, Edge, Label, LabeledGraph};
use crate::predicates::{
    is_irreducible, is_left_resolving, is_right_resolving, primitivity_distance,
};
use crate::shift::{PresentedShift, SyncLoop};

/// Facts established while checking the join hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JoinFacts {
    pub vertices: usize,
    pub primitivity_distance: usize,
}

/// Checks every hypothesis the join needs, naming the first that fails.
pub fn check_join_hypotheses(shift: &PresentedShift, role: &str) -> Result<JoinFacts> {
    let g = shift.graph();
    let fail = |what: &str| Err(Error::HypothesisViolated(format!("{role}: {what}")));
    if shift.sync_loop().is_none() {
        return fail("no bi-synchronizing self-loop");
    }
    if !is_irreducible(g) {
        return fail("not irreducible");
    }
    if !is_right_resolving(g) {
        return fail("not right-resolving");
    }
    if !is_left_resolving(g) {
        return fail("not left-resolving");
    }
    let Some(distance) = primitivity_distance(g) else {
        return fail("not primitive");
    };
    if !Analysis::new(g)?.is_extender_separated() {
        return fail("not extender-separated");
    }
    Ok(JoinFacts {
        vertices: g.vertex_count(),
        primitivity_distance: distance,
    })
}

fn label_set(g: &LabeledGraph) -> BTreeSet<Label> {
    g.alphabet().into_iter().collect()
}

/// Smallest `k ≥ 1` whose `#k` suffix makes `second`'s labels disjoint from `first`'s.
fn disjoining_suffix(first: &BTreeSet<Label>, second: &BTreeSet<Label>) -> usize {
    (1..)
        .find(|&k| second.iter().all(|l| !first.contains(&l.suffixed(k))))
        .expect("some suffix is fresh")
}

fn suffix_shift(s: &PresentedShift, k: usize) -> Result<PresentedShift> {
    let graph = s.graph().relabeled(|l| l.suffixed(k))?;
    let sync_loop = s.sync_loop().map(|sl| SyncLoop {
        vertex: sl.vertex,
        label: sl.label.suffixed(k),
    });
    PresentedShift::new(graph, sync_loop, s.provenance())
}

/// Joins two shifts. Overlapping label sets are separated by suffixing the second
/// shift's labels; the connecting labels are `x#k`/`y#k` for the least fresh `k`.
pub fn join(s1: &PresentedShift, s2: &PresentedShift) -> Result<PresentedShift> {
    let l1 = label_set(s1.graph());
    let l2 = label_set(s2.graph());
    let relabeled;
    let (s2, l2) = if l1.is_disjoint(&l2) {
        (s2, l2)
    } else {
        relabeled = suffix_shift(s2, disjoining_suffix(&l1, &l2))?;
        let l2 = label_set(relabeled.graph());
        (&relabeled, l2)
    };
    let k = (0..)
        .find(|&k| {
            let x = lbl(format!("x#{k}"));
            let y = lbl(format!("y#{k}"));
            [&x, &y]
                .iter()
                .all(|l| !l1.contains(*l) && !l2.contains(*l))
        })
        .expect("some index is fresh");
    let provenance = format!("join({},{})", s1.provenance(), s2.provenance());
    join_with_index(s1, s2, k, provenance)
}

/// Joins shifts with disjoint labels using connecting labels `x#k`/`y#k`.
pub(crate) fn join_with_index(
    s1: &PresentedShift,
    s2: &PresentedShift,
    k: usize,
    provenance: String,
) -> Result<PresentedShift> {
    check_join_hypotheses(s1, "first argument")?;
    check_join_hypotheses(s2, "second argument")?;
    let (g1, g2) = (s1.graph(), s2.graph());
    let l1 = label_set(g1);
    let l2 = label_set(g2);
    if !l1.is_disjoint(&l2) {
        return Err(Error::HypothesisViolated(
            "label sets are not disjoint".into(),
        ));
    }
    let x = lbl(format!("x#{k}"));
    let y = lbl(format!("y#{k}"));
    if [&x, &y].iter().any(|l| l1.contains(*l) || l2.contains(*l)) {
        return Err(Error::HypothesisViolated(format!(
            "connecting labels {x}/{y} already in use"
        )));
    }

    let offset = g1.vertex_count();
    let anchor1 = s1.sync_loop().expect("checked").vertex;
    let anchor2 = s2.sync_loop().expect("checked").vertex + offset;
    let mut edges: Vec<Edge> = g1.edges().to_vec();
    edges.extend(
        g2.edges()
            .iter()
            .map(|e| Edge::new(e.from + offset, e.label.clone(), e.to + offset)),
    );
    edges.push(Edge::new(anchor1, x, anchor2));
    edges.push(Edge::new(anchor2, y, anchor1));
    let graph = LabeledGraph::new(offset + g2.vertex_count(), edges)?;
    let joined = PresentedShift::new(graph, s1.sync_loop().cloned(), provenance)?;
    check_join_hypotheses(&joined, "join result")?;
    Ok(joined)
}
