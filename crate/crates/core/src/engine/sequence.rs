//! Follower and extender count sequences with certified eventual periodicity.
//!
//! Layer `ℓ` is the family of `τ(w)` (or `P(w)`) over words of length `ℓ`. Layers evolve
//! by a deterministic self-map, so the first repeated layer proves exact eventual
//! periodicity of the whole layer orbit and hence of the counts.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::{Analysis, DEAD};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Follower,
    Extender,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::Follower => "follower",
            Quantity::Extender => "extender",
        })
    }
}

impl std::str::FromStr for Quantity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "follower" => Ok(Quantity::Follower),
            "extender" => Ok(Quantity::Extender),
            other => Err(format!(
                "unknown quantity `{other}` (expected follower|extender)"
            )),
        }
    }
}

/// Orbit shape: state `i + period` equals state `i` for every `i ≥ preperiod`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Periodicity {
    pub preperiod: usize,
    pub period: usize,
}

/// Incremental first-repeat detector over hashed canonical states.
#[derive(Debug)]
struct OrbitDetector<T> {
    seen: HashMap<T, usize>,
}

impl<T: Hash + Eq> OrbitDetector<T> {
    fn new() -> Self {
        OrbitDetector {
            seen: HashMap::new(),
        }
    }

    fn push(&mut self, state: T) -> Option<Periodicity> {
        let i = self.seen.len();
        match self.seen.get(&state) {
            Some(&j) => Some(Periodicity {
                preperiod: j,
                period: i - j,
            }),
            None => {
                self.seen.insert(state, i);
                None
            }
        }
    }
}

/// Least `(preperiod, period)` of a trace of deterministic-orbit states.
///
/// Fails with `NotYetPeriodic` when no state repeats.
pub fn detect_periodicity<T: Hash + Eq>(trace: &[T]) -> Result<Periodicity> {
    let mut det = OrbitDetector::new();
    for s in trace {
        if let Some(p) = det.push(s) {
            return Ok(p);
        }
    }
    Err(Error::NotYetPeriodic {
        lmax: trace.len().saturating_sub(1),
    })
}

/// Layer states `0..len`, plus the orbit shape when a repeat was seen.
#[derive(Debug, Clone)]
pub struct LayerTrace {
    layers: Vec<Vec<u32>>,
    orbit: Option<Periodicity>,
}

impl LayerTrace {
    pub fn orbit(&self) -> Option<Periodicity> {
        self.orbit
    }

    /// Canonical layer at length `l`, following the cycle past the computed prefix.
    pub fn layer(&self, l: usize) -> Option<&[u32]> {
        if l < self.layers.len() {
            return Some(&self.layers[l]);
        }
        let o = self.orbit?;
        Some(&self.layers[o.preperiod + (l - o.preperiod) % o.period])
    }
}

/// Count sequence for `ℓ = 1..=lmax` with its certified periodic structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceReport {
    pub quantity: Quantity,
    pub counts: Vec<usize>,
    /// First length from which the counts repeat with `period`.
    pub preperiod: usize,
    /// Least eventual period of the counts; divides `layer_period`.
    pub period: usize,
    pub certified: bool,
    pub liminf: usize,
    pub limsup: usize,
    pub layer_preperiod: usize,
    pub layer_period: usize,
}

impl SequenceReport {
    pub fn lmax(&self) -> usize {
        self.counts.len()
    }

    /// Count at length `l ≥ 1`; lengths past `lmax` are answered from the certified cycle.
    pub fn count(&self, l: usize) -> Option<usize> {
        if l == 0 {
            return None;
        }
        if l <= self.counts.len() {
            return Some(self.counts[l - 1]);
        }
        if !self.certified {
            return None;
        }
        let idx = self.preperiod + (l - self.preperiod) % self.period;
        self.counts.get(idx - 1).copied()
    }

    /// `limsup − liminf`.
    pub fn spread(&self) -> usize {
        self.limsup - self.liminf
    }
}

impl Analysis {
    /// Layer trace up to `lmax`, stopping early at the first repeated layer.
    pub fn layer_trace(&self, quantity: Quantity, lmax: usize) -> Result<LayerTrace> {
        let (start, step): (u32, Box<dyn Fn(u32, usize) -> u32 + '_>) = match quantity {
            Quantity::Follower => (0, Box::new(|id, a| self.forward_closure().step(id, a))),
            Quantity::Extender => {
                let idx = self.relation_index()?;
                (0, Box::new(move |id, a| idx.closure.step(id, a)))
            }
        };
        let k = self.alphabet().len();
        let mut det = OrbitDetector::new();
        let mut layers = Vec::new();
        let mut cur = vec![start];
        for _ in 0..=lmax {
            if let Some(orbit) = det.push(cur.clone()) {
                return Ok(LayerTrace {
                    layers,
                    orbit: Some(orbit),
                });
            }
            let mut next: Vec<u32> = cur
                .iter()
                .flat_map(|&id| (0..k).map(move |a| (id, a)))
                .map(|(id, a)| step(id, a))
                .filter(|&t| t != DEAD)
                .collect();
            next.sort_unstable();
            next.dedup();
            layers.push(std::mem::replace(&mut cur, next));
        }
        Ok(LayerTrace {
            layers,
            orbit: None,
        })
    }

    fn class_of(&self, quantity: Quantity, id: u32) -> Result<u32> {
        Ok(match quantity {
            Quantity::Follower => self.subset_class(id),
            Quantity::Extender => self.relation_index()?.class(id),
        })
    }

    /// Sorted distinct classes among a layer's members.
    pub fn layer_classes(&self, quantity: Quantity, layer: &[u32]) -> Result<Vec<u32>> {
        let mut classes = layer
            .iter()
            .map(|&id| self.class_of(quantity, id))
            .collect::<Result<Vec<_>>>()?;
        classes.sort_unstable();
        classes.dedup();
        Ok(classes)
    }

    pub fn sequence(&self, quantity: Quantity, lmax: usize) -> Result<SequenceReport> {
        if lmax == 0 {
            return Err(Error::InvalidSpec("lmax must be at least 1".into()));
        }
        let trace = self.layer_trace(quantity, lmax)?;
        let count_at = |l: usize| -> Result<usize> {
            let layer = trace.layer(l).expect("length within trace");
            Ok(self.layer_classes(quantity, layer)?.len())
        };
        let counts = (1..=lmax).map(count_at).collect::<Result<Vec<_>>>()?;

        let Some(orbit) = trace.orbit() else {
            return Ok(SequenceReport {
                quantity,
                liminf: counts.iter().copied().min().unwrap_or(0),
                limsup: counts.iter().copied().max().unwrap_or(0),
                counts,
                preperiod: 0,
                period: 0,
                certified: false,
                layer_preperiod: 0,
                layer_period: 0,
            });
        };

        // Counts over one full layer cycle, starting at the first length ≥ 1 inside it.
        let base = orbit.preperiod.max(1);
        let cycle = (base..base + orbit.period)
            .map(count_at)
            .collect::<Result<Vec<_>>>()?;
        let period = (1..=orbit.period)
            .filter(|d| orbit.period % d == 0)
            .find(|&d| (0..orbit.period).all(|i| cycle[i] == cycle[(i + d) % orbit.period]))
            .expect("the layer period is a count period");
        let mut preperiod = base;
        while preperiod > 1 && count_at(preperiod - 1)? == count_at(preperiod - 1 + period)? {
            preperiod -= 1;
        }
        Ok(SequenceReport {
            quantity,
            counts,
            preperiod,
            period,
            certified: true,
            liminf: *cycle.iter().min().expect("nonempty cycle"),
            limsup: *cycle.iter().max().expect("nonempty cycle"),
            layer_preperiod: orbit.preperiod,
            layer_period: orbit.period,
        })
    }

    pub fn follower_sequence(&self, lmax: usize) -> Result<SequenceReport> {
        self.sequence(Quantity::Follower, lmax)
    }

    pub fn extender_sequence(&self, lmax: usize) -> Result<SequenceReport> {
        self.sequence(Quantity::Extender, lmax)
    }

    /// True iff the classes realized at length `ℓ` are among those realized at `ℓ + k`,
    /// for every `ℓ` in `lo..=hi`.
    pub fn verify_nested_growth(
        &self,
        quantity: Quantity,
        k: usize,
        lo: usize,
        hi: usize,
    ) -> Result<bool> {
        if k == 0 {
            return Err(Error::InvalidSpec(
                "nesting offset k must be at least 1".into(),
            ));
        }
        let trace = self.layer_trace(quantity, hi + k)?;
        for l in lo..=hi {
            let here = self.layer_classes(quantity, trace.layer(l).expect("within trace"))?;
            let later = self.layer_classes(quantity, trace.layer(l + k).expect("within trace"))?;
            if !here.iter().all(|c| later.binary_search(c).is_ok()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
