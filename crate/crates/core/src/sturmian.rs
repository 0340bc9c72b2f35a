//! A Sturmian shift generated by substitution, and the counts of its product with a
//! sofic shift.
//!
//! Product counts are `|E_X(ℓ)|·(ℓ + 1)`: the Sturmian factor counts are used
//! analytically, while the sofic factor comes from a certified sequence.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::constructions::{build_gns, GnsSpec};
use crate::engine::{Analysis, EngineConfig, Quantity, SequenceReport};
use crate::error::{Error, Result};

pub const DEFAULT_PREFIX_BUDGET: usize = 1 << 20;

/// A binary substitution iterated from `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmianModel {
    images: [Vec<u8>; 2],
    prefix_budget: usize,
}

impl Default for SturmianModel {
    fn default() -> Self {
        Self::fibonacci()
    }
}

impl SturmianModel {
    /// `0 → 01`, `1 → 0`.
    pub fn fibonacci() -> Self {
        SturmianModel {
            images: [vec![0, 1], vec![0]],
            prefix_budget: DEFAULT_PREFIX_BUDGET,
        }
    }

    /// A substitution on `{0, 1}` whose image of `0` starts with `0` and is longer than
    /// one letter, so iterating from `0` yields ever longer prefixes of one fixed point.
    pub fn with_substitution(zero: &[u8], one: &[u8]) -> Result<Self> {
        if zero.len() < 2 || zero[0] != 0 || one.is_empty() {
            return Err(Error::InvalidSpec(
                "image of 0 must start with 0 and have length at least 2".into(),
            ));
        }
        if zero.iter().chain(one).any(|&c| c > 1) {
            return Err(Error::InvalidSpec("substitution is not binary".into()));
        }
        Ok(SturmianModel {
            images: [zero.to_vec(), one.to_vec()],
            prefix_budget: DEFAULT_PREFIX_BUDGET,
        })
    }

    pub fn with_prefix_budget(mut self, budget: usize) -> Self {
        self.prefix_budget = budget;
        self
    }

    pub fn prefix_budget(&self) -> usize {
        self.prefix_budget
    }

    fn substitute(&self, word: &[u8]) -> Vec<u8> {
        word.iter()
            .flat_map(|&c| self.images[c as usize].iter().copied())
            .collect()
    }

    /// Factors of length `l`, collected from successive prefixes until two consecutive
    /// prefixes give the same set.
    fn factor_set(&self, l: usize) -> Result<HashSet<Vec<u8>>> {
        let mut prefix = vec![0u8];
        let mut previous: Option<HashSet<Vec<u8>>> = None;
        loop {
            if prefix.len() > self.prefix_budget {
                return Err(Error::BudgetExceeded {
                    limit: self.prefix_budget,
                });
            }
            if prefix.len() >= l {
                let current: HashSet<Vec<u8>> = prefix.windows(l).map(<[u8]>::to_vec).collect();
                if previous.as_ref() == Some(&current) {
                    return Ok(current);
                }
                previous = Some(current);
            }
            prefix = self.substitute(&prefix);
        }
    }
}

fn render(word: &[u8]) -> String {
    word.iter().map(|&c| char::from(b'0' + c)).collect()
}

/// Distinct length-`l` factors, as `0`/`1` strings. Fails unless there are exactly
/// `l + 1` of them.
pub fn sturmian_factors(model: &SturmianModel, l: usize) -> Result<BTreeSet<String>> {
    if l == 0 {
        return Err(Error::InvalidSpec(
            "factor length must be at least 1".into(),
        ));
    }
    let factors: BTreeSet<String> = model.factor_set(l)?.iter().map(|w| render(w)).collect();
    if factors.len() != l + 1 {
        return Err(Error::InvalidSpec(format!(
            "{} factors of length {l}, a Sturmian word has {}",
            factors.len(),
            l + 1
        )));
    }
    Ok(factors)
}

/// `(|F_Y(ℓ)|, |E_Y(ℓ)|) = (ℓ + 1, ℓ + 1)` for any Sturmian shift.
pub fn sturmian_counts(l: usize) -> (usize, usize) {
    (l + 1, l + 1)
}

/// Number of distinct sets `{u ∈ L_depth : wu ∈ L_{ℓ+depth}}` over `w ∈ L_ℓ`.
pub fn empirical_distinction(model: &SturmianModel, l: usize, depth: usize) -> Result<usize> {
    if l == 0 || depth == 0 {
        return Err(Error::InvalidSpec(
            "length and depth must be at least 1".into(),
        ));
    }
    let long = model.factor_set(l + depth)?;
    let words = model.factor_set(l)?;
    let mut followers: std::collections::HashMap<&[u8], BTreeSet<&[u8]>> = words
        .iter()
        .map(|w| (w.as_slice(), BTreeSet::new()))
        .collect();
    for f in &long {
        let (w, u) = f.split_at(l);
        followers
            .get_mut(w)
            .expect("prefix of a factor is a factor")
            .insert(u);
    }
    let distinct: HashSet<&BTreeSet<&[u8]>> = followers.values().collect();
    Ok(distinct.len())
}

/// Least depth at which [`empirical_distinction`] reaches `ℓ + 1`, searching up to
/// `max_depth`.
pub fn distinction_depth(
    model: &SturmianModel,
    l: usize,
    max_depth: usize,
) -> Result<Option<usize>> {
    for depth in 1..=max_depth {
        if empirical_distinction(model, l, depth)? == l + 1 {
            return Ok(Some(depth));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductReport {
    pub quantity: Quantity,
    pub counts_x: Vec<usize>,
    pub counts_y: Vec<usize>,
    pub counts_product: Vec<usize>,
    /// Lengths `ℓ` with `counts_product[ℓ] > counts_product[ℓ + 1]`.
    pub nonmonotone_witnesses: Vec<usize>,
    /// Every product count in the last full period exceeds the count one period earlier.
    pub unbounded: bool,
}

impl ProductReport {
    /// Product count at length `l ≥ 1`.
    pub fn count(&self, l: usize) -> Option<usize> {
        l.checked_sub(1)
            .and_then(|i| self.counts_product.get(i))
            .copied()
    }
}

/// Counts of `X × Y` for `ℓ = 1..=lmax`, with `X` given by a certified report and `Y`
/// Sturmian.
pub fn product_counts(report_x: &SequenceReport, lmax: usize) -> Result<ProductReport> {
    if !report_x.certified {
        return Err(Error::UncertifiedInput);
    }
    if lmax == 0 {
        return Err(Error::InvalidSpec("lmax must be at least 1".into()));
    }
    let counts_x: Vec<usize> = (1..=lmax)
        .map(|l| report_x.count(l).expect("certified reports extend"))
        .collect();
    let counts_y: Vec<usize> = (1..=lmax).map(|l| sturmian_counts(l).1).collect();
    let counts_product: Vec<usize> = counts_x.iter().zip(&counts_y).map(|(x, y)| x * y).collect();
    let nonmonotone_witnesses = counts_product
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i + 1)
        .collect();
    let period = report_x.period;
    let unbounded = lmax >= report_x.preperiod.max(1) + 2 * period
        && (lmax - period + 1..=lmax)
            .all(|l| counts_product[l - 1] > counts_product[l - 1 - period]);
    Ok(ProductReport {
        quantity: report_x.quantity,
        counts_x,
        counts_y,
        counts_product,
        nonmonotone_witnesses,
        unbounded,
    })
}

/// Certified sequence of a shift, doubling the horizon until a layer repeats.
pub fn certified_sequence(
    a: &Analysis,
    quantity: Quantity,
    start: usize,
) -> Result<SequenceReport> {
    let mut lmax = start.max(1);
    loop {
        let report = a.sequence(quantity, lmax)?;
        if report.certified {
            return Ok(report);
        }
        lmax *= 2;
    }
}

/// Least `ℓ ≥ m` (and past the preperiod) with `ℓ mod n ∈ S` and `(ℓ + 1) mod n ∉ S`,
/// where `m` is the liminf of the certified `G_{n,S}` sequence. At such a length the
/// product with a Sturmian shift has a strictly smaller count at `ℓ + 1`.
pub fn find_nonmonotone_length(
    spec: &GnsSpec,
    quantity: Quantity,
    config: EngineConfig,
) -> Result<usize> {
    let n = spec.n();
    if !(0..n).any(|i| spec.s().contains(&i) && !spec.s().contains(&((i + 1) % n))) {
        return Err(Error::NoSuchLength);
    }
    let shift = build_gns(spec)?;
    let a = Analysis::with_config(shift.graph(), config)?;
    let report = certified_sequence(&a, quantity, 4 * n + 8)?;
    let from = report.liminf.max(report.preperiod).max(1);
    Ok((from..)
        .find(|&l| spec.in_s(l) && !spec.in_s(l + 1))
        .expect("a suitable residue exists"))
}
