//! Shifts whose follower or extender counts follow a prescribed oscillation: `m + r_j`
//! at lengths whose residue mod `n` lies in block `A_j`.

use std::collections::BTreeSet;

use super::gns::{build_gns, GnsSpec};
use super::join::join_with_index;
use crate::error::{Error, Result};
use crate::shift::{PresentedShift, SyncLoop};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSpec {
    n: usize,
    blocks: Vec<BTreeSet<usize>>,
    rates: Vec<usize>,
}

impl PartitionSpec {
    pub fn new(n: usize, blocks: Vec<BTreeSet<usize>>, rates: Vec<usize>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if n == 0 {
            return bad("n must be at least 1".into());
        }
        if blocks.len() < 2 {
            return bad(format!("need at least two blocks, got {}", blocks.len()));
        }
        if rates.len() != blocks.len() {
            return bad(format!(
                "{} rates given for {} blocks",
                rates.len(),
                blocks.len()
            ));
        }
        let mut seen = BTreeSet::new();
        for (j, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return bad(format!("block {} is empty", j + 1));
            }
            for &i in block {
                if i >= n {
                    return bad(format!("residue {i} is not below n = {n}"));
                }
                if !seen.insert(i) {
                    return bad(format!("residue {i} appears in two blocks"));
                }
            }
        }
        if seen.len() != n {
            let missing: Vec<usize> = (0..n).filter(|i| !seen.contains(i)).collect();
            return bad(format!("residues {missing:?} are in no block"));
        }
        if rates[0] != 0 {
            return bad("the first rate must be 0".into());
        }
        if rates.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!("rates {rates:?} are not strictly increasing"));
        }
        Ok(PartitionSpec { n, blocks, rates })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[BTreeSet<usize>] {
        &self.blocks
    }

    pub fn rates(&self) -> &[usize] {
        &self.rates
    }

    pub fn top_rate(&self) -> usize {
        *self.rates.last().expect("at least two rates")
    }

    /// Index `j` (0-based) of the block holding `ℓ mod n`.
    pub fn block_of(&self, l: usize) -> usize {
        let r = l % self.n;
        self.blocks
            .iter()
            .position(|b| b.contains(&r))
            .expect("blocks cover every residue")
    }

    /// `A_i ∪ … ∪ A_k` for 0-based `i`.
    fn tail_union(&self, i: usize) -> BTreeSet<usize> {
        self.blocks[i..].iter().flatten().copied().collect()
    }

    /// Constituent specs in build order, one entry per copy.
    pub fn constituents(&self) -> Vec<GnsSpec> {
        let mut out = Vec::new();
        for i in 1..self.blocks.len() {
            let spec = GnsSpec::new(self.n, self.tail_union(i), None).expect("valid tail");
            for _ in 0..self.rates[i] - self.rates[i - 1] {
                out.push(spec.clone());
            }
        }
        out
    }

    /// `Σ_{i≥2} (r_i − r_{i−1})(3n + 3 Σ_{j≥i}|A_j| + 3)`.
    pub fn follower_m(&self) -> usize {
        (1..self.blocks.len())
            .map(|i| {
                let tail: usize = self.blocks[i..].iter().map(|b| b.len()).sum();
                (self.rates[i] - self.rates[i - 1]) * (3 * self.n + 3 * tail + 3)
            })
            .sum()
    }

    /// Every pair of constituents is joined across exactly one tree edge, so the
    /// join order does not matter: `(Σ|V_c|)² + Σ(|S_c| + 2)`.
    pub fn extender_m(&self) -> usize {
        let parts = self.constituents();
        let total: usize = parts.iter().map(|c| c.vertex_count()).sum();
        total * total + parts.iter().map(|c| c.s().len() + 2).sum::<usize>()
    }

    /// `(6n + 3) r_k`, a strict upper bound for the follower `m`.
    pub fn follower_m_bound(&self) -> usize {
        (6 * self.n + 3) * self.top_rate()
    }

    /// `39 n² r_k²`, an upper bound for the extender `m`.
    pub fn extender_m_bound(&self) -> usize {
        39 * self.n * self.n * self.top_rate() * self.top_rate()
    }

    /// `14 r_k n − 1`, the length by which extender counts are periodic.
    pub fn extender_onset_bound(&self) -> usize {
        14 * self.top_rate() * self.n - 1
    }

    /// `m + r_j` where `ℓ mod n ∈ A_j`.
    pub fn expected_follower(&self, l: usize) -> usize {
        self.follower_m() + self.rates[self.block_of(l)]
    }

    pub fn expected_extender(&self, l: usize) -> usize {
        self.extender_m() + self.rates[self.block_of(l)]
    }
}

fn suffix_copy(shift: &PresentedShift, c: usize) -> Result<PresentedShift> {
    let graph = shift.graph().relabeled(|l| l.suffixed(c))?;
    let sync_loop = shift.sync_loop().map(|sl| SyncLoop {
        vertex: sl.vertex,
        label: sl.label.suffixed(c),
    });
    PresentedShift::new(graph, sync_loop, format!("{}#{c}", shift.provenance()))
}

/// Joins in a balanced binary tree; the left half takes the extra element. `k` numbers
/// the joins in post-order so the connecting labels are unique.
fn balanced_join(parts: &[PresentedShift], k: &mut usize) -> Result<PresentedShift> {
    match parts {
        [] => unreachable!("at least one constituent"),
        [only] => Ok(only.clone()),
        _ => {
            let mid = parts.len().div_ceil(2);
            let left = balanced_join(&parts[..mid], k)?;
            let right = balanced_join(&parts[mid..], k)?;
            let index = *k;
            *k += 1;
            join_with_index(&left, &right, index, String::new())
        }
    }
}

fn build_target(spec: &PartitionSpec) -> Result<PresentedShift> {
    let parts = spec
        .constituents()
        .iter()
        .enumerate()
        .map(|(c, g)| suffix_copy(&build_gns(g)?, c))
        .collect::<Result<Vec<_>>>()?;
    let names: Vec<&str> = parts.iter().map(|p| p.provenance()).collect();
    let provenance = format!("join(balanced,[{}])", names.join(","));
    let mut k = 0;
    Ok(balanced_join(&parts, &mut k)?.with_provenance(provenance))
}

/// Shift with `|F(ℓ)| = m + r_j` for `ℓ ≥ n + 2`, `ℓ mod n ∈ A_j`.
pub fn build_follower_target(spec: &PartitionSpec) -> Result<PresentedShift> {
    build_target(spec)
}

/// Shift with `|E(ℓ)| = m + r_j` for `ℓ ≥ 14 r_k n − 1`, `ℓ mod n ∈ A_j`.
pub fn build_extender_target(spec: &PartitionSpec) -> Result<PresentedShift> {
    build_target(spec)
}
