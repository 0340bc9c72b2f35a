//! Lower bounds that every sofic sequence must satisfy, checked on computed data.

use serde::Serialize;

use crate::engine::{Quantity, SequenceReport};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Inequality {
    pub name: String,
    pub holds: bool,
    pub lhs: f64,
    pub rhs: f64,
}

/// `(m, r, n)`: liminf, limsup − liminf, least eventual period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Oscillation {
    pub m: usize,
    pub r: usize,
    pub n: usize,
}

impl Oscillation {
    pub fn of(report: &SequenceReport) -> Result<Self> {
        if !report.certified {
            return Err(Error::UncertifiedInput);
        }
        Ok(Oscillation {
            m: report.liminf,
            r: report.limsup - report.liminf,
            n: report.period,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub follower: Option<Oscillation>,
    pub extender: Option<Oscillation>,
    pub inequalities: Vec<Inequality>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.inequalities.iter().all(|i| i.holds)
    }
}

// log2 of 0 is −∞, which every finite m exceeds
fn log2(x: f64) -> f64 {
    if x <= 0.0 {
        f64::NEG_INFINITY
    } else {
        x.log2()
    }
}

fn half_loglog(n: usize) -> f64 {
    0.5 * log2(log2(n as f64))
}

fn root(x: f64) -> f64 {
    if x < 0.0 {
        f64::NEG_INFINITY
    } else {
        x.sqrt()
    }
}

fn check(name: &str, lhs: f64, rhs: f64) -> Inequality {
    Inequality {
        name: name.to_string(),
        holds: lhs > rhs,
        lhs,
        rhs,
    }
}

fn follower_bounds(o: Oscillation) -> [Inequality; 2] {
    let m = o.m as f64;
    [
        check("m > log2(r)", m, log2(o.r as f64)),
        check("m > log2(log2(n))/2", m, half_loglog(o.n)),
    ]
}

fn extender_bounds(o: Oscillation) -> [Inequality; 2] {
    let m = o.m as f64;
    [
        check("m' > sqrt(log2(r'))", m, root(log2(o.r as f64))),
        check("m' > sqrt(log2(log2(n'))/2)", m, root(half_loglog(o.n))),
    ]
}

/// Evaluates the four inequalities on whichever reports are given. A report with the
/// wrong quantity or without certified periodicity is rejected.
pub fn lower_bound_check(
    follower: Option<&SequenceReport>,
    extender: Option<&SequenceReport>,
) -> Result<BoundReport> {
    let mut out = BoundReport {
        follower: None,
        extender: None,
        inequalities: Vec::new(),
    };
    if let Some(f) = follower {
        if f.quantity != Quantity::Follower {
            return Err(Error::InvalidSpec("expected a follower report".into()));
        }
        let o = Oscillation::of(f)?;
        out.follower = Some(o);
        out.inequalities.extend(follower_bounds(o));
    }
    if let Some(e) = extender {
        if e.quantity != Quantity::Extender {
            return Err(Error::InvalidSpec("expected an extender report".into()));
        }
        let o = Oscillation::of(e)?;
        out.extender = Some(o);
        out.inequalities.extend(extender_bounds(o));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(
        quantity: Quantity,
        m: usize,
        r: usize,
        period: usize,
        certified: bool,
    ) -> SequenceReport {
        SequenceReport {
            quantity,
            counts: vec![m; 4],
            preperiod: 1,
            period,
            certified,
            liminf: m,
            limsup: m + r,
            layer_preperiod: 1,
            layer_period: period,
        }
    }

    #[test]
    fn gns_5_03_values_hold() {
        let f = report(Quantity::Follower, 24, 1, 5, true);
        let e = report(Quantity::Extender, 404, 1, 5, true);
        let b = lower_bound_check(Some(&f), Some(&e)).unwrap();
        assert_eq!(b.inequalities.len(), 4);
        assert!(b.all_hold());
    }

    #[test]
    fn degenerate_logs_hold() {
        let f = report(Quantity::Follower, 1, 0, 1, true);
        let b = lower_bound_check(Some(&f), None).unwrap();
        assert!(b.all_hold());
    }

    #[test]
    fn small_m_with_large_spread_fails() {
        let f = report(Quantity::Follower, 2, 8, 3, true);
        let b = lower_bound_check(Some(&f), None).unwrap();
        assert!(!b.inequalities[0].holds);
    }

    #[test]
    fn uncertified_input_is_rejected() {
        let f = report(Quantity::Follower, 0, 100, 1, false);
        assert_eq!(
            lower_bound_check(Some(&f), None),
            Err(Error::UncertifiedInput)
        );
    }
}
