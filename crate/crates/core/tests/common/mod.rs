//! Random graphs and brute-force oracles shared by the integration tests.
//!
//! Everything here works from the raw edge list with vertex sets as `u8` masks, so it
//! supports graphs of at most 8 vertices and shares no code with the engine.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use rand::Rng;
use sofic::graph::trim;
use sofic::{Analysis, Label, LabeledGraph};

pub const MAX_VERTICES: usize = 8;
const LETTERS: [&str; 3] = ["a", "b", "c"];

/// Random essential graph with 2 to 8 vertices and at most 3 labels.
pub fn random_essential_graph(rng: &mut impl Rng) -> LabeledGraph {
    loop {
        let n = rng.gen_range(2..=MAX_VERTICES);
        let k = [1, 2, 2, 3, 3, 3][rng.gen_range(0..6)];
        // expected out-degree per label between 0.6 and 2
        let p = (rng.gen_range(0.6..2.0) / n as f64).min(1.0);
        let mut triples = Vec::new();
        for from in 0..n {
            for letter in &LETTERS[..k] {
                for to in 0..n {
                    if rng.gen_bool(p) {
                        triples.push((from, *letter, to));
                    }
                }
            }
        }
        let g = LabeledGraph::from_triples(n, &triples).expect("no duplicates by construction");
        match trim(&g) {
            Ok(t) if t.graph.vertex_count() > 1 => return t.graph,
            _ => {}
        }
    }
}

/// Edge list indexed by label, with vertex sets as bit masks.
pub struct Oracle {
    pub n: usize,
    pub alphabet: Vec<Label>,
    /// `out[a][v]`: mask of `a`-successors of `v`.
    out: Vec<Vec<u8>>,
    /// `inc[a][v]`: mask of `a`-predecessors of `v`.
    inc: Vec<Vec<u8>>,
}

fn members(mask: u8) -> impl Iterator<Item = usize> {
    (0..8).filter(move |v| mask >> v & 1 == 1)
}

impl Oracle {
    pub fn new(g: &LabeledGraph) -> Self {
        let n = g.vertex_count();
        assert!(n <= MAX_VERTICES);
        let alphabet: Vec<Label> = g.alphabet();
        let mut out = vec![vec![0u8; n]; alphabet.len()];
        let mut inc = vec![vec![0u8; n]; alphabet.len()];
        for e in g.edges() {
            let a = alphabet.iter().position(|l| *l == e.label).unwrap();
            out[a][e.from] |= 1 << e.to;
            inc[a][e.to] |= 1 << e.from;
        }
        Oracle {
            n,
            alphabet,
            out,
            inc,
        }
    }

    pub fn full(&self) -> u8 {
        ((1u16 << self.n) - 1) as u8
    }

    fn index(&self, l: &Label) -> usize {
        self.alphabet.iter().position(|x| x == l).unwrap()
    }

    fn step(table: &[Vec<u8>], set: u8, a: usize) -> u8 {
        members(set).fold(0, |acc, v| acc | table[a][v])
    }

    /// Ends of every path labeled `word`, found by walking each path separately.
    pub fn path_ends(&self, word: &[Label]) -> BTreeSet<(usize, usize)> {
        let word: Vec<usize> = word.iter().map(|l| self.index(l)).collect();
        let mut ends = BTreeSet::new();
        for start in 0..self.n {
            let mut stack = vec![(start, 0usize)];
            while let Some((v, k)) = stack.pop() {
                if k == word.len() {
                    ends.insert((start, v));
                    continue;
                }
                for t in members(self.out[word[k]][v]) {
                    stack.push((t, k + 1));
                }
            }
        }
        ends
    }

    /// Reachable sets under `table`, from the full set, within `depth` letters. With
    /// `nonempty_words`, only sets reached by at least one letter are kept. Each set
    /// comes with a shortest word reaching it.
    fn sets(&self, table: &[Vec<u8>], depth: usize, nonempty_words: bool) -> Vec<(u8, Vec<usize>)> {
        let mut seen: HashMap<u8, Vec<usize>> = HashMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::from([(self.full(), Vec::new())]);
        let mut expanded = HashSet::new();
        if !nonempty_words {
            seen.insert(self.full(), Vec::new());
            order.push(self.full());
        }
        while let Some((set, word)) = queue.pop_front() {
            if word.len() == depth || !expanded.insert(set) {
                continue;
            }
            for a in 0..self.alphabet.len() {
                let next = Self::step(table, set, a);
                if next == 0 {
                    continue;
                }
                let mut w = word.clone();
                w.push(a);
                if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(next) {
                    slot.insert(w.clone());
                    order.push(next);
                }
                queue.push_back((next, w));
            }
        }
        order.into_iter().map(|s| (s, seen[&s].clone())).collect()
    }

    /// `τ(s)` over words `s` of length at most `depth`, the empty word included.
    pub fn forward_sets(&self, depth: usize) -> Vec<u8> {
        self.sets(&self.out, depth, false)
            .into_iter()
            .map(|(s, _)| s)
            .collect()
    }

    /// `ι(u)` over words `u` of length at most `depth`, the empty word included.
    pub fn backward_sets(&self, depth: usize) -> Vec<u8> {
        self.sets(&self.inc, depth, false)
            .into_iter()
            .map(|(s, _)| s)
            .collect()
    }

    /// Number of distinct `τ(w)` over nonempty words.
    pub fn terminal_set_count(&self) -> usize {
        self.sets(&self.out, usize::MAX, true).len()
    }

    /// Comparison depth: the square of the number of reachable terminal sets.
    pub fn depth(&self) -> usize {
        let k = self.sets(&self.out, usize::MAX, false).len();
        k * k
    }

    fn decode(&self, w: &[usize]) -> Vec<Label> {
        w.iter().map(|&a| self.alphabet[a].clone()).collect()
    }

    /// One word per distinct `τ(w)`, with the right language of `τ(w)` up to `depth`.
    /// A word `u` of length at most `depth` follows `w` iff `τ(w)` meets `ι(u)`, so the
    /// language is recorded as the hit vector over all such `ι(u)`.
    pub fn follower_classes(&self, depth: usize) -> Vec<(Vec<Label>, Vec<bool>)> {
        let backward = self.backward_sets(depth);
        self.sets(&self.out, usize::MAX, true)
            .into_iter()
            .map(|(set, w)| {
                let lang = backward.iter().map(|&b| set & b != 0).collect();
                (self.decode(&w), lang)
            })
            .collect()
    }

    /// One word per distinct path relation `P(w)`, with its two-sided extensions up to
    /// `depth` on each side: the pair `(s, u)` extends `w` iff some path labeled `w`
    /// starts in `τ(s)` and ends in `ι(u)`.
    pub fn extender_classes(&self, depth: usize) -> Vec<(Vec<Label>, Vec<bool>)> {
        let forward = self.forward_sets(depth);
        let backward = self.backward_sets(depth);
        let identity: Vec<u8> = (0..self.n).map(|v| 1u8 << v).collect();
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([(identity, Vec::<usize>::new())]);
        while let Some((rows, word)) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                let next: Vec<u8> = rows.iter().map(|&r| Self::step(&self.out, r, a)).collect();
                if next.iter().all(|&r| r == 0) || !seen.insert(next.clone()) {
                    continue;
                }
                let mut w = word.clone();
                w.push(a);
                let mut ext = Vec::with_capacity(forward.len() * backward.len());
                for &f in &forward {
                    let image = members(f).fold(0u8, |acc, i| acc | next[i]);
                    ext.extend(backward.iter().map(|&b| image & b != 0));
                }
                out.push((self.decode(&w), ext));
                queue.push_back((next, w));
            }
        }
        out
    }
}

/// Checks that two labelings of the same words induce the same partition.
pub fn same_partition<K: std::hash::Hash + Eq + Clone, C: std::hash::Hash + Eq + Copy>(
    pairs: &[(K, C)],
) -> Result<(), String> {
    let mut by_key: HashMap<K, C> = HashMap::new();
    let mut by_class: HashMap<C, K> = HashMap::new();
    for (i, (k, c)) in pairs.iter().enumerate() {
        if *by_key.entry(k.clone()).or_insert(*c) != *c {
            return Err(format!(
                "word {i}: equal oracle languages, different engine classes"
            ));
        }
        if by_class.entry(*c).or_insert_with(|| k.clone()) != k {
            return Err(format!(
                "word {i}: one engine class, different oracle languages"
            ));
        }
    }
    Ok(())
}

/// Compares follower and extender classification of `g` against the oracle.
pub fn check_against_oracle(g: &LabeledGraph) -> Result<(), String> {
    let oracle = Oracle::new(g);
    let a = Analysis::new(g).map_err(|e| e.to_string())?;
    let depth = oracle.depth();

    let follower: Vec<(Vec<bool>, u32)> = oracle
        .follower_classes(depth)
        .into_iter()
        .map(|(w, lang)| (lang, a.subset_class(a.terminal_id(&w).unwrap())))
        .collect();
    same_partition(&follower).map_err(|e| format!("follower: {e}"))?;
    let distinct: HashSet<&Vec<bool>> = follower.iter().map(|(k, _)| k).collect();
    if distinct.len() != a.follower_class_count() {
        return Err(format!(
            "follower: oracle has {} classes, engine {}",
            distinct.len(),
            a.follower_class_count()
        ));
    }

    let idx = a.relation_index().map_err(|e| e.to_string())?;
    let extender: Vec<(Vec<bool>, u32)> = oracle
        .extender_classes(depth)
        .into_iter()
        .map(|(w, ext)| (ext, idx.class(a.relation_id(&w).unwrap())))
        .collect();
    same_partition(&extender).map_err(|e| format!("extender: {e}"))?;
    let distinct: HashSet<&Vec<bool>> = extender.iter().map(|(k, _)| k).collect();
    if distinct.len() != idx.class_count() {
        return Err(format!(
            "extender: oracle has {} classes, engine {}",
            distinct.len(),
            idx.class_count()
        ));
    }
    Ok(())
}

/// Random walk labels of length `len`, or `None` if the walk gets stuck.
pub fn random_walk_word(g: &LabeledGraph, len: usize, rng: &mut impl Rng) -> Option<Vec<Label>> {
    let mut v = rng.gen_range(0..g.vertex_count());
    let mut word = Vec::with_capacity(len);
    for _ in 0..len {
        let out: Vec<_> = g.edges().iter().filter(|e| e.from == v).collect();
        if out.is_empty() {
            return None;
        }
        let e = out[rng.gen_range(0..out.len())];
        word.push(e.label.clone());
        v = e.to;
    }
    Some(word)
}
