//! End-to-end verification suites. Each suite records the expected and computed value
//! of every check it makes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{
    build_extender_target, build_follower_target, build_gns, check_join_hypotheses, join,
    lower_bound_check, GnsSpec, PartitionSpec,
};
use crate::engine::{Analysis, EngineConfig, Quantity, SequenceReport};
use crate::error::{Error, Result};
use crate::graph::{Label, LabeledGraph};
use crate::predicates::{
    is_irreducible, is_left_resolving, is_right_resolving, primitivity_distance,
};
use crate::shift::PresentedShift;
use crate::sturmian::{certified_sequence, find_nonmonotone_length, product_counts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Counts,
    Join,
    PartitionFollower,
    PartitionExtender,
    Bounds,
    Periodic,
    Nonsofic,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Counts,
        Suite::Join,
        Suite::PartitionFollower,
        Suite::PartitionExtender,
        Suite::Bounds,
        Suite::Periodic,
        Suite::Nonsofic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Counts => "thm-counts",
            Suite::Join => "thm-join",
            Suite::PartitionFollower => "thm-partition-F",
            Suite::PartitionExtender => "thm-partition-E",
            Suite::Bounds => "thm-bounds",
            Suite::Periodic => "thm-periodic",
            Suite::Nonsofic => "thm-nonsofic",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                format!("unknown suite `{s}`; expected one of {}", names.join(", "))
            })
    }
}

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Suite parameters; unset fields take per-suite defaults.
#[derive(Debug, Clone, Default)]
pub struct SuiteParams {
    pub n: Option<usize>,
    pub s: Option<Vec<usize>>,
    pub istar: Option<usize>,
    pub n2: Option<usize>,
    pub s2: Option<Vec<usize>>,
    pub blocks: Option<Vec<BTreeSet<usize>>>,
    pub rates: Option<Vec<usize>>,
    pub lmax: Option<usize>,
    pub quantity: Option<Quantity>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub config: EngineConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub parameters: Value,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteResult {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Default)]
struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn eq<T: Serialize + PartialEq>(
        &mut self,
        name: &str,
        length: Option<usize>,
        expected: T,
        computed: T,
    ) {
        let pass = expected == computed;
        self.push(name, length, json!(expected), json!(computed), pass);
    }

    fn holds(
        &mut self,
        name: &str,
        length: Option<usize>,
        expected: Value,
        computed: Value,
        pass: bool,
    ) {
        self.push(name, length, expected, computed, pass);
    }

    fn push(
        &mut self,
        name: &str,
        length: Option<usize>,
        expected: Value,
        computed: Value,
        pass: bool,
    ) {
        self.checks.push(Check {
            name: name.to_string(),
            length,
            expected,
            computed,
            pass,
        });
    }

    fn finish(self, suite: Suite, parameters: Value) -> SuiteResult {
        SuiteResult {
            suite: suite.name().to_string(),
            parameters,
            passed: self.checks.iter().all(|c| c.pass),
            checks: self.checks,
        }
    }
}

fn gns_from(
    n: Option<usize>,
    s: Option<&Vec<usize>>,
    istar: Option<usize>,
    default: (usize, &[usize]),
) -> Result<GnsSpec> {
    let n = n.unwrap_or(default.0);
    let s = s.cloned().unwrap_or_else(|| default.1.to_vec());
    GnsSpec::new(n, s, istar)
}

fn partition_from(p: &SuiteParams) -> Result<PartitionSpec> {
    let n = p.n.unwrap_or(4);
    let blocks = p.blocks.clone().unwrap_or_else(|| {
        [vec![0, 2], vec![1], vec![3]]
            .into_iter()
            .map(|b| b.into_iter().collect())
            .collect()
    });
    let rates = p.rates.clone().unwrap_or_else(|| vec![0, 1, 2]);
    PartitionSpec::new(n, blocks, rates)
}

fn lmax_of(p: &SuiteParams, default: usize) -> Result<usize> {
    match p.lmax.unwrap_or(default) {
        0 => Err(Error::InvalidSpec("lmax must be at least 1".into())),
        l => Ok(l),
    }
}

fn sequences(a: &Analysis, lmax: usize) -> Result<(SequenceReport, SequenceReport)> {
    Ok((a.follower_sequence(lmax)?, a.extender_sequence(lmax)?))
}

fn record_structure(rec: &mut Recorder, g: &LabeledGraph, a: &Analysis, pd_bound: Option<usize>) {
    rec.eq("essential", None, true, g.is_essential());
    rec.eq("irreducible", None, true, is_irreducible(g));
    rec.eq("right-resolving", None, true, is_right_resolving(g));
    rec.eq("left-resolving", None, true, is_left_resolving(g));
    rec.eq("follower-separated", None, true, a.is_follower_separated());
    rec.eq("extender-separated", None, true, a.is_extender_separated());
    let pd = primitivity_distance(g);
    match pd_bound {
        Some(bound) => rec.holds(
            "primitivity distance",
            None,
            json!(format!("<= {bound}")),
            json!(pd),
            pd.is_some_and(|d| d <= bound),
        ),
        None => rec.holds("primitive", None, json!(true), json!(pd), pd.is_some()),
    }
}

fn record_certified(rec: &mut Recorder, r: &SequenceReport) {
    rec.eq(
        &format!("{} certified", r.quantity),
        None,
        true,
        r.certified,
    );
}

fn counts_gns(p: &SuiteParams) -> Result<SuiteResult> {
    let spec = gns_from(p.n, p.s.as_ref(), p.istar, (5, &[0, 3]))?;
    let lmax = lmax_of(p, 100)?;
    let n = spec.n();
    let shift = build_gns(&spec)?;
    let g = shift.graph();
    let a = Analysis::with_config(g, p.config)?;
    let mut rec = Recorder::default();
    rec.eq("vertices", None, spec.vertex_count(), g.vertex_count());
    rec.eq("edges", None, spec.edge_count(), g.edges().len());
    record_structure(&mut rec, g, &a, Some(3 * n + 3));
    let (f, e) = sequences(&a, lmax)?;
    for l in spec.follower_threshold()..=lmax {
        rec.eq(
            "follower count",
            Some(l),
            spec.expected_follower(l),
            f.counts[l - 1],
        );
    }
    for l in spec.extender_threshold()..=lmax {
        rec.eq(
            "extender count",
            Some(l),
            spec.expected_extender(l),
            e.counts[l - 1],
        );
    }
    for r in [&f, &e] {
        record_certified(&mut rec, r);
        rec.holds(
            &format!("{} period divides n", r.quantity),
            None,
            json!(format!("divides {n}")),
            json!(r.period),
            r.period > 0 && n % r.period == 0,
        );
    }
    Ok(rec.finish(
        Suite::Counts,
        json!({"gns": spec.to_string(), "lmax": lmax}),
    ))
}

fn join_suite(p: &SuiteParams) -> Result<SuiteResult> {
    let first = gns_from(p.n, p.s.as_ref(), p.istar, (2, &[0]))?;
    let second = gns_from(p.n2.or(p.n), p.s2.as_ref(), None, (2, &[1]))?;
    let lmax = lmax_of(p, 60)?;
    let s1 = build_gns(&first)?;
    let s2 = build_gns(&second)?;
    let facts1 = check_join_hypotheses(&s1, "first argument")?;
    let facts2 = check_join_hypotheses(&s2, "second argument")?;
    let joined = join(&s1, &s2)?;
    let mut rec = Recorder::default();
    rec.eq(
        "joined vertices",
        None,
        facts1.vertices + facts2.vertices,
        joined.graph().vertex_count(),
    );
    let a1 = Analysis::with_config(s1.graph(), p.config)?;
    let a2 = Analysis::with_config(s2.graph(), p.config)?;
    let aj = Analysis::with_config(joined.graph(), p.config)?;
    record_structure(&mut rec, joined.graph(), &aj, None);
    let (f1, e1) = sequences(&a1, lmax)?;
    let (f2, e2) = sequences(&a2, lmax)?;
    let (fj, ej) = sequences(&aj, lmax)?;
    for l in 1..=lmax {
        rec.eq(
            "follower additivity",
            Some(l),
            f1.counts[l - 1] + f2.counts[l - 1],
            fj.counts[l - 1],
        );
    }
    let threshold = 2 * facts1.primitivity_distance.max(facts2.primitivity_distance);
    let cross = 2 * facts1.vertices * facts2.vertices;
    for l in threshold + 1..=lmax {
        rec.eq(
            "extender additivity",
            Some(l),
            e1.counts[l - 1] + e2.counts[l - 1] + cross,
            ej.counts[l - 1],
        );
    }
    Ok(rec.finish(
        Suite::Join,
        json!({"first": first.to_string(), "second": second.to_string(), "lmax": lmax, "threshold": threshold}),
    ))
}

fn partition_follower(p: &SuiteParams) -> Result<SuiteResult> {
    let spec = partition_from(p)?;
    let lmax = lmax_of(p, 100)?;
    let shift = build_follower_target(&spec)?;
    let a = Analysis::with_config(shift.graph(), p.config)?;
    let f = a.follower_sequence(lmax)?;
    let mut rec = Recorder::default();
    record_certified(&mut rec, &f);
    let m = spec.follower_m();
    rec.eq("liminf equals closed form", None, m, f.liminf);
    rec.holds(
        "m below (6n+3)r_k",
        None,
        json!(format!("< {}", spec.follower_m_bound())),
        json!(m),
        m < spec.follower_m_bound(),
    );
    for l in spec.n() + 2..=lmax {
        rec.eq(
            "follower count",
            Some(l),
            spec.expected_follower(l),
            f.counts[l - 1],
        );
    }
    Ok(rec.finish(
        Suite::PartitionFollower,
        partition_params(&spec, &shift, lmax),
    ))
}

fn partition_params(spec: &PartitionSpec, shift: &PresentedShift, lmax: usize) -> Value {
    json!({
        "n": spec.n(),
        "blocks": spec.blocks(),
        "rates": spec.rates(),
        "lmax": lmax,
        "vertices": shift.graph().vertex_count(),
    })
}

fn partition_extender(p: &SuiteParams) -> Result<SuiteResult> {
    let spec = partition_from(p)?;
    let onset = spec.extender_onset_bound();
    let lmax = lmax_of(p, 100)?.max(onset + 2 * spec.n());
    let shift = build_extender_target(&spec)?;
    let a = Analysis::with_config(shift.graph(), p.config)?;
    let e = a.extender_sequence(lmax)?;
    let mut rec = Recorder::default();
    record_certified(&mut rec, &e);
    rec.holds(
        "liminf at most 39 n^2 r_k^2",
        None,
        json!(format!("<= {}", spec.extender_m_bound())),
        json!(e.liminf),
        e.liminf <= spec.extender_m_bound(),
    );
    rec.holds(
        "periodic onset at most 14 r_k n - 1",
        None,
        json!(format!("<= {onset}")),
        json!(e.preperiod),
        e.certified && e.preperiod <= onset,
    );
    rec.eq(
        "liminf equals summed closed form",
        None,
        spec.extender_m(),
        e.liminf,
    );
    for l in onset..=lmax {
        rec.eq(
            "extender count",
            Some(l),
            e.liminf + spec.rates()[spec.block_of(l)],
            e.counts[l - 1],
        );
    }
    Ok(rec.finish(
        Suite::PartitionExtender,
        partition_params(&spec, &shift, lmax),
    ))
}

fn bounds_suite(p: &SuiteParams) -> Result<SuiteResult> {
    let (shift, what) = if p.blocks.is_some() || p.rates.is_some() {
        let spec = partition_from(p)?;
        let s = build_follower_target(&spec)?;
        let name = s.provenance().to_string();
        (s, name)
    } else {
        let spec = gns_from(p.n, p.s.as_ref(), p.istar, (5, &[0, 3]))?;
        (build_gns(&spec)?, spec.to_string())
    };
    let a = Analysis::with_config(shift.graph(), p.config)?;
    let f = certified_sequence(&a, Quantity::Follower, lmax_of(p, 100)?)?;
    let e = certified_sequence(&a, Quantity::Extender, lmax_of(p, 100)?)?;
    let report = lower_bound_check(Some(&f), Some(&e))?;
    let mut rec = Recorder::default();
    for i in &report.inequalities {
        rec.holds(&i.name, None, json!(i.rhs), json!(i.lhs), i.holds);
    }
    Ok(rec.finish(
        Suite::Bounds,
        json!({"shift": what, "follower": report.follower, "extender": report.extender}),
    ))
}

fn random_word(g: &LabeledGraph, len: usize, rng: &mut ChaCha8Rng) -> Vec<Label> {
    let mut out_edges = vec![Vec::new(); g.vertex_count()];
    for e in g.edges() {
        out_edges[e.from].push(e);
    }
    let mut v = rng.gen_range(0..g.vertex_count());
    (0..len)
        .map(|_| {
            let e = out_edges[v][rng.gen_range(0..out_edges[v].len())];
            v = e.to;
            e.label.clone()
        })
        .collect()
}

fn saturating_factorial(p: usize) -> u128 {
    (1..=p as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
}

fn periodic_suite(p: &SuiteParams) -> Result<SuiteResult> {
    let spec = gns_from(p.n, p.s.as_ref(), p.istar, (5, &[0, 3]))?;
    let lmax = lmax_of(p, 100)?;
    let shift = build_gns(&spec)?;
    let g = shift.graph();
    let a = Analysis::with_config(g, p.config)?;
    let mut rec = Recorder::default();
    let pump_len = a.pumping_length()?;
    let fact = saturating_factorial(pump_len);
    for q in [Quantity::Follower, Quantity::Extender] {
        let r = a.sequence(q, lmax)?;
        record_certified(&mut rec, &r);
        if !r.certified {
            continue;
        }
        rec.holds(
            &format!("{q} period divides layer period"),
            None,
            json!(format!("divides {}", r.layer_period)),
            json!(r.period),
            r.layer_period % r.period == 0,
        );
        rec.holds(
            &format!("{q} period at most p!"),
            None,
            json!(format!("<= {pump_len}!")),
            json!(r.period),
            (r.period as u128) <= fact,
        );
        rec.holds(
            &format!("{q} preperiod at most p(1+p!)"),
            None,
            json!(format!("<= {pump_len}(1+{pump_len}!)")),
            json!(r.preperiod),
            (r.preperiod as u128) <= fact.saturating_add(1).saturating_mul(pump_len as u128),
        );
        let periodic = (r.preperiod..=lmax.saturating_sub(r.period))
            .all(|l| r.counts[l - 1] == r.counts[l - 1 + r.period]);
        rec.eq(
            &format!("{q} counts repeat from preperiod"),
            None,
            true,
            periodic,
        );
        let from = r.layer_preperiod.max(1);
        if from + r.layer_period <= lmax {
            let nested = a.verify_nested_growth(q, r.layer_period, from, lmax - r.layer_period)?;
            rec.eq(
                &format!("{q} classes nest at the layer period"),
                None,
                true,
                nested,
            );
        }
    }
    rec.eq(
        "extender classes form a congruence",
        None,
        true,
        a.extender_classes_are_congruent()?,
    );
    let seed = p.seed.unwrap_or(DEFAULT_SEED);
    let samples = p.samples.unwrap_or(200);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pumped = 0;
    for _ in 0..samples {
        let w = random_word(g, pump_len, &mut rng);
        if a.pump_decomposition(&w).is_ok() {
            pumped += 1;
        }
    }
    rec.eq("sampled words of length p that pump", None, samples, pumped);
    Ok(rec.finish(
        Suite::Periodic,
        json!({"gns": spec.to_string(), "lmax": lmax, "pumping_length": pump_len, "seed": seed, "samples": samples}),
    ))
}

fn nonsofic_suite(p: &SuiteParams) -> Result<SuiteResult> {
    let spec = gns_from(p.n, p.s.as_ref(), p.istar, (2, &[0]))?;
    let quantity = p.quantity.unwrap_or(Quantity::Extender);
    let lmax = lmax_of(p, 200)?;
    let l_star = find_nonmonotone_length(&spec, quantity, p.config)?;
    let a = Analysis::with_config(build_gns(&spec)?.graph(), p.config)?;
    let report = a.sequence(quantity, lmax)?;
    let product = product_counts(&report, lmax)?;
    let mut rec = Recorder::default();
    for (i, ((x, y), xy)) in product
        .counts_x
        .iter()
        .zip(&product.counts_y)
        .zip(&product.counts_product)
        .enumerate()
    {
        rec.eq("product is multiplicative", Some(i + 1), x * y, *xy);
    }
    if l_star < lmax {
        let here = product.count(l_star).expect("within horizon");
        let next = product.count(l_star + 1).expect("within horizon");
        rec.holds(
            "count drops after the first nonmonotone length",
            Some(l_star),
            json!(format!("> {next}")),
            json!(here),
            here > next,
        );
    }
    let predicted: Vec<usize> = (l_star..lmax)
        .filter(|&l| spec.in_s(l) && !spec.in_s(l + 1))
        .collect();
    let observed: Vec<usize> = product
        .nonmonotone_witnesses
        .iter()
        .copied()
        .filter(|&l| l >= l_star)
        .collect();
    rec.eq(
        "decreases from the first nonmonotone length",
        None,
        predicted,
        observed,
    );
    rec.eq("counts unbounded", None, true, product.unbounded);
    Ok(rec.finish(
        Suite::Nonsofic,
        json!({"gns": spec.to_string(), "quantity": quantity, "lmax": lmax, "first_nonmonotone_length": l_star}),
    ))
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<SuiteResult> {
    match suite {
        Suite::Counts => counts_gns(params),
        Suite::Join => join_suite(params),
        Suite::PartitionFollower => partition_follower(params),
        Suite::PartitionExtender => partition_extender(params),
        Suite::Bounds => bounds_suite(params),
        Suite::Periodic => periodic_suite(params),
        Suite::Nonsofic => nonsofic_suite(params),
    }
}
