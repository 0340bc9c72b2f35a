//! Follower/extender classification and count sequences.
//!
//! Follower sets of words are represented by terminal-vertex sets `τ(w)`, extender sets by
//! path relations `P(w)`. On a finite essential graph two infinite-extension sets agree iff
//! every finite extension agrees, so both equivalences are decided exactly on finite data:
//!
//! * subsets are classified by Moore partition refinement over the forward closure, with a
//!   single dead class for the empty set;
//! * relations are classified by their hit-signature over `forward × backward` closures.
//!   Row `A` of that signature depends only on the follower class of `P[A]`, so the engine
//!   keys relations by the vector of those classes. [`Analysis::extender_signature`]
//!   computes the literal bit-signature for cross-checks.

pub mod closure;
pub mod pump;
pub mod relation;
pub mod sequence;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use once_cell::sync::OnceCell;

pub use closure::{Adjacency, SubsetClosure, SubsetState, DEAD};
pub use pump::Pump;
pub use relation::{PairRelation, RelationClosure};
pub use sequence::{detect_periodicity, Periodicity, Quantity, SequenceReport};

use crate::error::{Error, Result};
use crate::graph::{format_word, Label, LabeledGraph};

pub const DEFAULT_CLOSURE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Maximum number of states in any subset or relation closure.
    pub closure_budget: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            closure_budget: DEFAULT_CLOSURE_BUDGET,
        }
    }
}

/// Relation closure together with extender classes.
#[derive(Debug, Clone)]
pub struct RelationIndex {
    pub closure: RelationClosure,
    class: Vec<u32>,
    class_count: usize,
}

impl RelationIndex {
    pub fn class(&self, id: u32) -> u32 {
        self.class[id as usize]
    }

    /// Number of extender classes realized by nonempty words.
    pub fn class_count(&self) -> usize {
        self.class_count
    }
}

/// Global equivalence index for one essential presentation.
///
/// The subset side is computed eagerly; the relation side on first use.
#[derive(Debug)]
pub struct Analysis {
    graph: LabeledGraph,
    config: EngineConfig,
    fwd: Adjacency,
    bwd: Adjacency,
    forward: SubsetClosure,
    backward: SubsetClosure,
    subset_class: Vec<u32>,
    relations: OnceCell<RelationIndex>,
}

impl Analysis {
    pub fn new(graph: &LabeledGraph) -> Result<Self> {
        Self::with_config(graph, EngineConfig::default())
    }

    pub fn with_config(graph: &LabeledGraph, config: EngineConfig) -> Result<Self> {
        if graph.vertex_count() == 0 {
            return Err(Error::EmptyShift);
        }
        if let Some(v) = graph.first_inessential() {
            return Err(Error::NotEssential(v));
        }
        let fwd = Adjacency::forward(graph);
        let bwd = Adjacency::backward(graph);
        let forward = SubsetClosure::build(&fwd, config.closure_budget)?;
        let backward = SubsetClosure::build(&bwd, config.closure_budget)?;
        let subset_class = refine(forward.transitions(), forward.len(), fwd.alphabet().len());
        Ok(Analysis {
            graph: graph.clone(),
            config,
            fwd,
            bwd,
            forward,
            backward,
            subset_class,
            relations: OnceCell::new(),
        })
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn config(&self) -> EngineConfig {
        self.config
    }

    pub fn alphabet(&self) -> &[Label] {
        self.fwd.alphabet()
    }

    pub fn forward_adjacency(&self) -> &Adjacency {
        &self.fwd
    }

    pub fn backward_adjacency(&self) -> &Adjacency {
        &self.bwd
    }

    pub fn forward_closure(&self) -> &SubsetClosure {
        &self.forward
    }

    pub fn backward_closure(&self) -> &SubsetClosure {
        &self.backward
    }

    /// Follower class of a forward-closure state; `DEAD` maps to `DEAD`.
    pub fn subset_class(&self, id: u32) -> u32 {
        if id == DEAD {
            DEAD
        } else {
            self.subset_class[id as usize]
        }
    }

    /// Class of an arbitrary subset in the closure, if it belongs to it.
    pub fn subset_class_of(&self, s: &SubsetState) -> Option<u32> {
        self.forward.id_of(s).map(|id| self.subset_class(id))
    }

    /// Number of follower classes realized by nonempty words.
    pub fn follower_class_count(&self) -> usize {
        let mut seen: Vec<u32> = self
            .forward
            .transitions()
            .iter()
            .filter(|&&t| t != DEAD)
            .map(|&t| self.subset_class(t))
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn relation_index(&self) -> Result<&RelationIndex> {
        self.relations.get_or_try_init(|| {
            let closure =
                RelationClosure::build(&self.fwd, &self.forward, self.config.closure_budget)?;
            let mut keys: HashMap<Vec<u32>, u32> = HashMap::new();
            let mut class = Vec::with_capacity(closure.len());
            for r in 0..closure.len() as u32 {
                let key: Vec<u32> = closure
                    .images(r)
                    .iter()
                    .map(|&s| self.subset_class(s))
                    .collect();
                let next = keys.len() as u32;
                class.push(*keys.entry(key).or_insert(next));
            }
            let mut realized: Vec<u32> = (0..closure.len() as u32)
                .filter(|&r| closure.is_realized(r))
                .map(|r| class[r as usize])
                .collect();
            realized.sort_unstable();
            realized.dedup();
            Ok(RelationIndex {
                closure,
                class,
                class_count: realized.len(),
            })
        })
    }

    /// Converts a word of labels to label indices.
    pub fn encode_word(&self, word: &[Label]) -> Result<Vec<usize>> {
        word.iter()
            .map(|l| {
                self.fwd
                    .label_index(l)
                    .ok_or_else(|| Error::WordNotInLanguage(format_word(word)))
            })
            .collect()
    }

    pub fn decode_word(&self, word: &[usize]) -> Vec<Label> {
        word.iter().map(|&a| self.alphabet()[a].clone()).collect()
    }

    /// Forward-closure id of `τ(w)`.
    pub fn terminal_id(&self, word: &[Label]) -> Result<u32> {
        let enc = self.encode_word(word)?;
        match self.forward.run(&enc) {
            DEAD => Err(Error::WordNotInLanguage(format_word(word))),
            id => Ok(id),
        }
    }

    /// `τ(w)`: terminal vertices of paths labeled `w`.
    pub fn terminal_set(&self, word: &[Label]) -> Result<SubsetState> {
        Ok(self.forward.state(self.terminal_id(word)?).clone())
    }

    /// `ι(w)`: initial vertices of paths labeled `w`.
    pub fn initial_set(&self, word: &[Label]) -> Result<SubsetState> {
        let mut enc = self.encode_word(word)?;
        enc.reverse();
        match self.backward.run(&enc) {
            DEAD => Err(Error::WordNotInLanguage(format_word(word))),
            id => Ok(self.backward.state(id).clone()),
        }
    }

    /// Relation-closure id of `P(w)`.
    pub fn relation_id(&self, word: &[Label]) -> Result<u32> {
        let enc = self.encode_word(word)?;
        let idx = self.relation_index()?;
        match idx.closure.run(&enc) {
            DEAD => Err(Error::WordNotInLanguage(format_word(word))),
            id => Ok(id),
        }
    }

    /// Hit-set of `s` over the backward closure: bit `B` is set iff `s ∩ B ≠ ∅`.
    ///
    /// Two subsets have equal right-languages iff these signatures agree; this works for
    /// subsets outside the forward closure (e.g. singletons).
    pub fn follower_signature(&self, s: &SubsetState) -> FixedBitSet {
        let states = self.backward.states();
        let mut sig = FixedBitSet::with_capacity(states.len());
        for (j, b) in states.iter().enumerate() {
            if s.intersects(b) {
                sig.insert(j);
            }
        }
        sig
    }

    /// Bit `(A, B)` over `forward × backward` is set iff some pair of `rel` lies in `A × B`.
    pub fn extender_signature(&self, rel: &PairRelation) -> FixedBitSet {
        let fs = self.forward.states();
        let bs = self.backward.states();
        let mut sig = FixedBitSet::with_capacity(fs.len() * bs.len());
        for (i, a) in fs.iter().enumerate() {
            let img = rel.image(a);
            if img.is_empty() {
                continue;
            }
            for (j, b) in bs.iter().enumerate() {
                if img.intersects(b) {
                    sig.insert(i * bs.len() + j);
                }
            }
        }
        sig
    }
}

/// Builds the full index, relation side included.
pub fn classify(g: &LabeledGraph) -> Result<Analysis> {
    let a = Analysis::new(g)?;
    a.relation_index()?;
    Ok(a)
}

/// Moore partition refinement of a deterministic automaton in which every state except
/// the implicit `DEAD` sink accepts. Returns class ids numbered by first occurrence.
pub(crate) fn refine(trans: &[u32], states: usize, alphabet_len: usize) -> Vec<u32> {
    let mut class = vec![0u32; states];
    let mut count = 1;
    loop {
        let mut keys: HashMap<Vec<u32>, u32> = HashMap::with_capacity(states);
        let mut next = Vec::with_capacity(states);
        for s in 0..states {
            let mut key = Vec::with_capacity(alphabet_len + 1);
            key.push(class[s]);
            for a in 0..alphabet_len {
                let t = trans[s * alphabet_len + a];
                key.push(if t == DEAD { DEAD } else { class[t as usize] });
            }
            let fresh = keys.len() as u32;
            next.push(*keys.entry(key).or_insert(fresh));
        }
        let new_count = keys.len();
        class = next;
        if new_count == count {
            return class;
        }
        count = new_count;
    }
}
