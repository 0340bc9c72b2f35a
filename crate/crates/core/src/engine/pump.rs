//! Pumping decompositions and per-word classification.

use serde::Serialize;

use super::{Analysis, DEAD};
use crate::error::{Error, Result};
use crate::graph::{format_word, Label};

/// `w = x y z` with `|y| ≥ 1` such that `x yⁱ z` keeps the extender class of `w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pump {
    pub x: Vec<Label>,
    pub y: Vec<Label>,
    pub z: Vec<Label>,
}

impl Pump {
    pub fn pumped(&self, i: usize) -> Vec<Label> {
        let mut w = self.x.clone();
        for _ in 0..i {
            w.extend_from_slice(&self.y);
        }
        w.extend_from_slice(&self.z);
        w
    }
}

impl Analysis {
    /// `(follower class of τ(w), extender class of P(w))`.
    pub fn word_class(&self, word: &[Label]) -> Result<(u32, u32)> {
        let f = self.subset_class(self.terminal_id(word)?);
        let r = self.relation_id(word)?;
        Ok((f, self.relation_index()?.class(r)))
    }

    /// One greater than the number of extender classes.
    pub fn pumping_length(&self) -> Result<usize> {
        Ok(self.relation_index()?.class_count() + 1)
    }

    /// Equal extender classes step to equal classes, or both die, under every label.
    ///
    /// With this, `P(xy) ~ P(x)` gives `P(x yⁱ z) ~ P(w)` for every `i` and `z`, and any
    /// word of length at least the pumping length has two prefixes in one class. So
    /// every such word pumps.
    pub fn extender_classes_are_congruent(&self) -> Result<bool> {
        let idx = self.relation_index()?;
        let rc = &idx.closure;
        let letters = self.alphabet().len();
        let mut image: std::collections::HashMap<(u32, usize), u32> = Default::default();
        for r in 0..rc.len() as u32 {
            for a in 0..letters {
                let t = rc.step(r, a);
                let tc = if t == DEAD { DEAD } else { idx.class(t) };
                if *image.entry((idx.class(r), a)).or_insert(tc) != tc {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Splits `w` at the first two nonempty prefixes sharing an extender class.
    ///
    /// Every word of length at least [`pumping_length`](Self::pumping_length) has such a
    /// pair; shorter words are accepted when one exists. The result is checked for
    /// `i ∈ {0, 1, 2, 3}` before returning.
    pub fn pump_decomposition(&self, word: &[Label]) -> Result<Pump> {
        let enc = self.encode_word(word)?;
        let idx = self.relation_index()?;
        let mut first_at: std::collections::HashMap<u32, usize> = Default::default();
        let mut rel = 0u32;
        let mut split = None;
        for (i, &a) in enc.iter().enumerate() {
            rel = idx.closure.step(rel, a);
            if rel == DEAD {
                return Err(Error::WordNotInLanguage(format_word(word)));
            }
            let len = i + 1;
            let class = idx.class(rel);
            if split.is_none() {
                if let Some(&start) = first_at.get(&class) {
                    split = Some((start, len));
                } else {
                    first_at.insert(class, len);
                }
            }
        }
        let Some((i, j)) = split else {
            return Err(Error::WordTooShort {
                len: word.len(),
                needed: self.pumping_length()?,
            });
        };
        let pump = Pump {
            x: word[..i].to_vec(),
            y: word[i..j].to_vec(),
            z: word[j..].to_vec(),
        };
        let target = idx.class(rel);
        for k in 0..=3 {
            let w = pump.pumped(k);
            let class = idx.class(self.relation_id(&w)?);
            assert_eq!(
                class,
                target,
                "pumped word `{}` changed class",
                format_word(&w)
            );
        }
        Ok(pump)
    }
}
