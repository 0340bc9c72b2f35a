//! The three-loop graphs `G_{n,S}` whose follower and extender counts oscillate with
//! period `n`, one higher at lengths `ℓ ≡ i (mod n)` for `i ∈ S`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{lbl, Edge, LabeledGraph};
use crate::shift::{PresentedShift, SyncLoop};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GnsSpec {
    n: usize,
    s: BTreeSet<usize>,
    i_star: usize,
}

impl GnsSpec {
    /// `i_star` defaults to `min(S)`.
    pub fn new(
        n: usize,
        s: impl IntoIterator<Item = usize>,
        i_star: Option<usize>,
    ) -> Result<Self> {
        let s: BTreeSet<usize> = s.into_iter().collect();
        if n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        let Some(&min) = s.iter().next() else {
            return Err(Error::InvalidSpec("S must be nonempty".into()));
        };
        if let Some(&bad) = s.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidSpec(format!(
                "S element {bad} is not below n = {n}"
            )));
        }
        let i_star = i_star.unwrap_or(min);
        if !s.contains(&i_star) {
            return Err(Error::InvalidSpec(format!("i* = {i_star} is not in S")));
        }
        Ok(GnsSpec { n, s, i_star })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> &BTreeSet<usize> {
        &self.s
    }

    pub fn i_star(&self) -> usize {
        self.i_star
    }

    pub fn vertex_count(&self) -> usize {
        3 * self.n + 2 * self.s.len() + 1
    }

    pub fn edge_count(&self) -> usize {
        3 * self.n + 5 * self.s.len() + 2
    }

    pub fn in_s(&self, l: usize) -> bool {
        self.s.contains(&(l % self.n))
    }

    /// First length from which the follower counts follow the residue rule.
    pub fn follower_threshold(&self) -> usize {
        self.n + 2
    }

    /// First length from which the extender counts follow the residue rule.
    pub fn extender_threshold(&self) -> usize {
        3 * self.n + 3
    }

    /// `3n + 3|S| + 3`, plus one when `ℓ mod n ∈ S`.
    pub fn expected_follower(&self, l: usize) -> usize {
        3 * self.n + 3 * self.s.len() + 3 + usize::from(self.in_s(l))
    }

    /// `(3n + 2|S| + 1)² + |S| + 2`, plus one when `ℓ mod n ∈ S`.
    pub fn expected_extender(&self, l: usize) -> usize {
        let v = self.vertex_count();
        v * v + self.s.len() + 2 + usize::from(self.in_s(l))
    }

    /// All valid specs for a given `n`: every nonempty `S` and every `i* ∈ S`.
    pub fn enumerate(n: usize) -> Vec<GnsSpec> {
        let mut out = Vec::new();
        for mask in 1u64..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            for &i_star in &s {
                out.push(GnsSpec::new(n, s.iter().copied(), Some(i_star)).expect("valid"));
            }
        }
        out
    }
}

impl fmt::Display for GnsSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.s.iter().map(|i| i.to_string()).collect();
        write!(
            f,
            "gns(n={},S={{{}}},i*={})",
            self.n,
            s.join(","),
            self.i_star
        )
    }
}

/// Named vertices of `G_{n,S}`.
#[derive(Debug, Clone)]
pub struct GnsLayout {
    n: usize,
    pub start: usize,
    /// Target of `p`, anchor of the `q` self-loop.
    pub q: usize,
    /// `(i, D_i, E_i)` for `i ∈ S \ {i*}`.
    pub detours: Vec<(usize, usize, usize)>,
    /// Target of `c_{i*}` leaving the first loop.
    pub x1: usize,
}

impl GnsLayout {
    pub fn new(spec: &GnsSpec) -> Self {
        let n = spec.n;
        let mut next = 2 + 3 * n;
        let detours = spec
            .s
            .iter()
            .filter(|&&i| i != spec.i_star)
            .map(|&i| {
                let d = next;
                next += 2;
                (i, d, d + 1)
            })
            .collect();
        GnsLayout {
            n,
            start: 0,
            q: 1,
            detours,
            x1: next,
        }
    }

    /// Vertex `j` of loop `t ∈ {0, 1, 2}`; vertex 0 is where the loop is entered.
    pub fn loop_vertex(&self, t: usize, j: usize) -> usize {
        2 + t * self.n + j % self.n
    }
}

pub fn build_gns(spec: &GnsSpec) -> Result<PresentedShift> {
    let n = spec.n;
    let layout = GnsLayout::new(spec);
    let lp = |t: usize, j: usize| layout.loop_vertex(t, j);
    // (i − 2) mod n
    let exit = |i: usize| (i + 2 * n - 2) % n;
    let c = |i: usize| lbl(format!("c_{i}"));

    let mut edges = vec![
        Edge::new(layout.start, lbl("p"), layout.q),
        Edge::new(layout.q, lbl("q"), layout.q),
        Edge::new(layout.q, lbl("b"), lp(0, 0)),
    ];
    for t in 0..3 {
        for j in 0..n {
            edges.push(Edge::new(lp(t, j), lbl("a"), lp(t, j + 1)));
        }
    }
    for &(i, d, e) in &layout.detours {
        edges.push(Edge::new(lp(0, exit(i)), c(i), d));
        edges.push(Edge::new(d, lbl(format!("d_{i}")), layout.start));
        edges.push(Edge::new(lp(1, exit(i)), c(i), e));
        edges.push(Edge::new(e, lbl(format!("e_{i}")), layout.start));
    }
    let i_star = spec.i_star;
    edges.push(Edge::new(lp(0, exit(i_star)), c(i_star), layout.x1));
    edges.push(Edge::new(layout.x1, lbl("b"), lp(1, 0)));
    edges.push(Edge::new(lp(1, exit(i_star)), c(i_star), lp(2, 0)));
    for &i in &spec.s {
        edges.push(Edge::new(lp(2, exit(i)), c(i), layout.start));
    }

    let graph = LabeledGraph::new(spec.vertex_count(), edges)?;
    PresentedShift::new(
        graph,
        Some(SyncLoop {
            vertex: layout.q,
            label: lbl("q"),
        }),
        spec.to_string(),
    )
}
