//! Path relations `P(w)`: the set of (initial, terminal) vertex pairs of paths labeled `w`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::closure::{Adjacency, SubsetClosure, SubsetState, DEAD};
use crate::error::{Error, Result};

/// A set of (initial vertex, terminal vertex) pairs, stored row-major as `i * V + t`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairRelation {
    vertex_count: usize,
    bits: FixedBitSet,
}

impl PairRelation {
    pub fn empty(vertex_count: usize) -> Self {
        PairRelation {
            vertex_count,
            bits: FixedBitSet::with_capacity(vertex_count * vertex_count),
        }
    }

    pub fn identity(vertex_count: usize) -> Self {
        Self::from_pairs(vertex_count, (0..vertex_count).map(|v| (v, v)))
    }

    pub fn from_pairs(
        vertex_count: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut r = Self::empty(vertex_count);
        for (i, t) in pairs {
            r.bits.insert(i * vertex_count + t);
        }
        r
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Pairs in ascending `(initial, terminal)` order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let v = self.vertex_count;
        self.bits.ones().map(move |k| (k / v, k % v))
    }

    pub fn contains(&self, i: usize, t: usize) -> bool {
        self.bits.contains(i * self.vertex_count + t)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// `P ∘ δ_a`: extend every path by one edge labeled `a`.
    pub fn then(&self, adj: &Adjacency, a: usize) -> PairRelation {
        let v = self.vertex_count;
        let mut out = Self::empty(v);
        for k in self.bits.ones() {
            let (i, t) = (k / v, k % v);
            for &t2 in adj.successors(a, t) {
                out.bits.insert(i * v + t2);
            }
        }
        out
    }

    /// Terminal vertices of pairs whose initial vertex lies in `from`.
    pub fn image(&self, from: &SubsetState) -> SubsetState {
        let v = self.vertex_count;
        let members = from
            .members()
            .flat_map(|i| (0..v).filter(move |&t| self.bits.contains(i * v + t)));
        SubsetState::from_members(v, members)
    }

    /// Initial vertices of all pairs.
    pub fn domain(&self) -> SubsetState {
        SubsetState::from_members(self.vertex_count, self.pairs().map(|(i, _)| i))
    }

    /// Terminal vertices of all pairs.
    pub fn range(&self) -> SubsetState {
        SubsetState::from_members(self.vertex_count, self.pairs().map(|(_, t)| t))
    }
}

/// Every relation `P(w)` reachable from the identity, with transitions and, for each
/// relation, its action on the forward subset closure.
#[derive(Debug, Clone)]
pub struct RelationClosure {
    relations: Vec<PairRelation>,
    index: HashMap<PairRelation, u32>,
    alphabet_len: usize,
    trans: Vec<u32>,
    parent: Vec<Option<(u32, u32)>>,
    /// `realized[r]`: some nonempty word has relation `r`.
    realized: Vec<bool>,
    /// `images[r][A] = id of P[A]` in the forward closure, or `DEAD`.
    images: Vec<Vec<u32>>,
}

impl RelationClosure {
    pub fn build(adj: &Adjacency, forward: &SubsetClosure, budget: usize) -> Result<Self> {
        let k = adj.alphabet().len();
        let id_rel = PairRelation::identity(adj.vertex_count());
        let root_image: Vec<u32> = (0..forward.len() as u32).collect();
        let mut c = RelationClosure {
            relations: vec![id_rel.clone()],
            index: HashMap::from([(id_rel, 0)]),
            alphabet_len: k,
            trans: Vec::new(),
            parent: vec![None],
            realized: vec![false],
            images: vec![root_image],
        };
        let mut next = 0;
        while next < c.relations.len() {
            for a in 0..k {
                let rel = c.relations[next].then(adj, a);
                let target = if rel.is_empty() {
                    DEAD
                } else if let Some(&id) = c.index.get(&rel) {
                    c.realized[id as usize] = true;
                    id
                } else {
                    if c.relations.len() >= budget {
                        return Err(Error::ClosureBudgetExceeded { limit: budget });
                    }
                    let id = c.relations.len() as u32;
                    // P(wa)[A] = δ_a(P(w)[A])
                    let img = c.images[next]
                        .iter()
                        .map(|&s| if s == DEAD { DEAD } else { forward.step(s, a) })
                        .collect();
                    c.index.insert(rel.clone(), id);
                    c.relations.push(rel);
                    c.parent.push(Some((next as u32, a as u32)));
                    c.realized.push(true);
                    c.images.push(img);
                    id
                };
                c.trans.push(target);
            }
            next += 1;
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn relation(&self, id: u32) -> &PairRelation {
        &self.relations[id as usize]
    }

    pub fn relations(&self) -> &[PairRelation] {
        &self.relations
    }

    pub fn id_of(&self, r: &PairRelation) -> Option<u32> {
        self.index.get(r).copied()
    }

    pub fn is_realized(&self, id: u32) -> bool {
        self.realized[id as usize]
    }

    pub fn images(&self, id: u32) -> &[u32] {
        &self.images[id as usize]
    }

    #[inline]
    pub fn step(&self, id: u32, a: usize) -> u32 {
        self.trans[id as usize * self.alphabet_len + a]
    }

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
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LabeledGraph;

    #[test]
    fn composition_follows_edges() {
        let g = LabeledGraph::from_triples(2, &[(0, "1", 0), (0, "0", 1), (1, "0", 0)]).unwrap();
        let adj = Adjacency::forward(&g);
        let zero = adj.label_index(&crate::graph::lbl("0")).unwrap();
        let one = adj.label_index(&crate::graph::lbl("1")).unwrap();
        let id = PairRelation::identity(2);
        let p0 = id.then(&adj, zero);
        assert_eq!(p0.pairs().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
        let p00 = p0.then(&adj, zero);
        assert_eq!(p00, PairRelation::identity(2));
        let p01 = p0.then(&adj, one);
        assert_eq!(p01.pairs().collect::<Vec<_>>(), vec![(1, 0)]);
        assert_eq!(p01.domain().members().collect::<Vec<_>>(), vec![1]);
        assert_eq!(p01.range().members().collect::<Vec<_>>(), vec![0]);
        assert!(p01.then(&adj, one).pairs().eq([(1, 0)]));
        assert_eq!(
            p0.image(&SubsetState::singleton(2, 1))
                .members()
                .collect::<Vec<_>>(),
            vec![0]
        );
    }

    #[test]
    fn images_match_direct_computation() {
        let g = LabeledGraph::from_triples(
            3,
            &[
                (0, "a", 1),
                (0, "a", 2),
                (1, "b", 0),
                (2, "a", 0),
                (2, "b", 2),
                (1, "a", 1),
            ],
        )
        .unwrap();
        let adj = Adjacency::forward(&g);
        let fc = SubsetClosure::build(&adj, 1000).unwrap();
        let rc = RelationClosure::build(&adj, &fc, 1000).unwrap();
        for r in 0..rc.len() as u32 {
            for (a_id, a_state) in fc.states().iter().enumerate() {
                let img = rc.relation(r).image(a_state);
                let expected = if img.is_empty() {
                    DEAD
                } else {
                    fc.id_of(&img).unwrap()
                };
                assert_eq!(rc.images(r)[a_id], expected);
            }
            assert_eq!(rc.run(&rc.word_of(r)), r);
        }
    }
}
