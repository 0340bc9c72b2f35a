//! Subset construction over a labeled graph.
//!
//! The forward closure is the family of terminal-vertex sets `τ(w)` reachable from the
//! full vertex set; the backward closure runs the same construction on the reversed
//! graph and yields the initial-vertex sets `ι(w)`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{Label, LabeledGraph};

/// Sentinel transition target for the empty set.
pub const DEAD: u32 = u32::MAX;

/// A set of vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetState(FixedBitSet);

impl SubsetState {
    pub fn empty(vertex_count: usize) -> Self {
        SubsetState(FixedBitSet::with_capacity(vertex_count))
    }

    pub fn full(vertex_count: usize) -> Self {
        let mut b = FixedBitSet::with_capacity(vertex_count);
        b.insert_range(..);
        SubsetState(b)
    }

    pub fn from_members(vertex_count: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(vertex_count);
        for v in members {
            s.0.insert(v);
        }
        s
    }

    pub fn singleton(vertex_count: usize, v: usize) -> Self {
        Self::from_members(vertex_count, [v])
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(v)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn intersects(&self, other: &SubsetState) -> bool {
        !self.0.is_disjoint(&other.0)
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.0
    }
}

/// Per-label successor lists, `succ[a][v]`, over a sorted alphabet.
#[derive(Debug, Clone)]
pub struct Adjacency {
    vertex_count: usize,
    alphabet: Vec<Label>,
    succ: Vec<Vec<Vec<usize>>>,
}

impl Adjacency {
    pub fn forward(g: &LabeledGraph) -> Self {
        Self::build(g, false)
    }

    /// Adjacency of the reversed graph, over the same alphabet indexing.
    pub fn backward(g: &LabeledGraph) -> Self {
        Self::build(g, true)
    }

    fn build(g: &LabeledGraph, reverse: bool) -> Self {
        let alphabet = g.alphabet();
        let n = g.vertex_count();
        let mut succ = vec![vec![Vec::new(); n]; alphabet.len()];
        for e in g.edges() {
            let a = alphabet.binary_search(&e.label).expect("label in alphabet");
            let (s, t) = if reverse {
                (e.to, e.from)
            } else {
                (e.from, e.to)
            };
            succ[a][s].push(t);
        }
        Adjacency {
            vertex_count: n,
            alphabet,
            succ,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn alphabet(&self) -> &[Label] {
        &self.alphabet
    }

    pub fn label_index(&self, label: &Label) -> Option<usize> {
        self.alphabet.binary_search(label).ok()
    }

    pub fn successors(&self, a: usize, v: usize) -> &[usize] {
        &self.succ[a][v]
    }

    /// `δ_a(A)`: every vertex reached from `A` by one edge labeled `a`.
    pub fn step(&self, subset: &SubsetState, a: usize) -> SubsetState {
        let mut out = SubsetState::empty(self.vertex_count);
        for v in subset.members() {
            for &t in &self.succ[a][v] {
                out.0.insert(t);
            }
        }
        out
    }
}

/// A deterministic family of subsets closed under every label map.
#[derive(Debug, Clone)]
pub struct SubsetClosure {
    states: Vec<SubsetState>,
    index: HashMap<SubsetState, u32>,
    alphabet_len: usize,
    trans: Vec<u32>,
    parent: Vec<Option<(u32, u32)>>,
}

impl SubsetClosure {
    /// Breadth-first subset construction from the full vertex set; state 0 is `V`.
    pub fn build(adj: &Adjacency, budget: usize) -> Result<Self> {
        let k = adj.alphabet().len();
        let root = SubsetState::full(adj.vertex_count());
        let mut c = SubsetClosure {
            states: vec![root.clone()],
            index: HashMap::from([(root, 0)]),
            alphabet_len: k,
            trans: Vec::new(),
            parent: vec![None],
        };
        let mut next = 0;
        while next < c.states.len() {
            for a in 0..k {
                let img = adj.step(&c.states[next], a);
                let target = if img.is_empty() {
                    DEAD
                } else if let Some(&id) = c.index.get(&img) {
                    id
                } else {
                    if c.states.len() >= budget {
                        return Err(Error::ClosureBudgetExceeded { limit: budget });
                    }
                    let id = c.states.len() as u32;
                    c.index.insert(img.clone(), id);
                    c.states.push(img);
                    c.parent.push(Some((next as u32, a as u32)));
                    id
                };
                c.trans.push(target);
            }
            next += 1;
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[SubsetState] {
        &self.states
    }

    pub fn state(&self, id: u32) -> &SubsetState {
        &self.states[id as usize]
    }

    pub fn id_of(&self, s: &SubsetState) -> Option<u32> {
        self.index.get(s).copied()
    }

    pub fn alphabet_len(&self) -> usize {
        self.alphabet_len
    }

    /// Transition on label index `a`; `DEAD` when the image is empty.
    #[inline]
    pub fn step(&self, id: u32, a: usize) -> u32 {
        self.trans[id as usize * self.alphabet_len + a]
    }

    /// Runs a word (label indices) from the root.
    pub fn run(&self, word: &[usize]) -> u32 {
        let mut id = 0;
        for &a in word {
            id = self.step(id, a);
            if id == DEAD {
                break;
            }
        }
        id
    }

    /// A shortest word (label indices) leading from the root to `id`.
    pub fn word_of(&self, id: u32) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = id;
        while let Some((p, a)) = self.parent[cur as usize] {
            word.push(a as usize);
            cur = p;
        }
        word.reverse();
        word
    }

    pub fn transitions(&self) -> &[u32] {
        &self.trans
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn even() -> LabeledGraph {
        LabeledGraph::from_triples(2, &[(0, "1", 0), (0, "0", 1), (1, "0", 0)]).unwrap()
    }

    fn sets(c: &SubsetClosure) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = c.states().iter().map(|s| s.members().collect()).collect();
        v.sort();
        v
    }

    #[test]
    fn full_shift_closure_is_single_state() {
        let g = LabeledGraph::from_triples(1, &[(0, "a", 0), (0, "b", 0)]).unwrap();
        let c = SubsetClosure::build(&Adjacency::forward(&g), 100).unwrap();
        assert_eq!(sets(&c), vec![vec![0]]);
    }

    #[test]
    fn even_shift_closures() {
        let g = even();
        let f = SubsetClosure::build(&Adjacency::forward(&g), 100).unwrap();
        assert_eq!(sets(&f), vec![vec![0], vec![0, 1], vec![1]]);
        let b = SubsetClosure::build(&Adjacency::backward(&g), 100).unwrap();
        assert_eq!(sets(&b), vec![vec![0], vec![0, 1], vec![1]]);
    }

    #[test]
    fn representative_words_reach_their_state() {
        let g = even();
        let adj = Adjacency::forward(&g);
        let c = SubsetClosure::build(&adj, 100).unwrap();
        for id in 0..c.len() as u32 {
            assert_eq!(c.run(&c.word_of(id)), id);
        }
    }

    #[test]
    fn budget_is_an_error() {
        let g = even();
        let err = SubsetClosure::build(&Adjacency::forward(&g), 2).unwrap_err();
        assert_eq!(err, Error::ClosureBudgetExceeded { limit: 2 });
    }
}
