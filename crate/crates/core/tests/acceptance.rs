//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! A criterion marked `known` fails in a way that matches a documented analysis of the
//! construction; the run still succeeds as long as the failure looks exactly like that.
//! Any other failure, or a known failure that changes shape, makes the run fail.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sofic::constructions::{
    build_extender_target, build_follower_target, build_gns, join, lower_bound_check, GnsSpec,
    PartitionSpec,
};
use sofic::predicates::primitivity_distance;
use sofic::sturmian::{
    certified_sequence, distinction_depth, find_nonmonotone_length, product_counts,
    sturmian_factors, SturmianModel,
};
use sofic::{Analysis, EngineConfig, LabeledGraph, PresentedShift, Quantity};

const SEED: u64 = 0x5eed;
const RANDOM_GRAPHS: usize = 200;
const PUMP_SAMPLES: usize = 1000;

struct Outcome {
    pass: bool,
    /// The failure matches the documented analysis.
    known: bool,
    detail: String,
}

impl Outcome {
    fn check(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            known: false,
            detail: detail.into(),
        }
    }
}

fn gns(n: usize, s: &[usize], i_star: Option<usize>) -> PresentedShift {
    build_gns(&GnsSpec::new(n, s.iter().copied(), i_star).unwrap()).unwrap()
}

fn analysis(g: &LabeledGraph) -> Analysis {
    Analysis::new(g).unwrap()
}

fn counts(g: &LabeledGraph, q: Quantity, lmax: usize) -> Vec<usize> {
    analysis(g).sequence(q, lmax).unwrap().counts
}

fn even_shift() -> LabeledGraph {
    LabeledGraph::from_triples(2, &[(0, "1", 0), (0, "0", 1), (1, "0", 0)]).unwrap()
}

fn full_shift() -> LabeledGraph {
    LabeledGraph::from_triples(1, &[(0, "0", 0), (0, "1", 0)]).unwrap()
}

fn partition_spec() -> PartitionSpec {
    let blocks = vec![
        BTreeSet::from([0, 2]),
        BTreeSet::from([1]),
        BTreeSet::from([3]),
    ];
    PartitionSpec::new(4, blocks, vec![0, 1, 2]).unwrap()
}

fn join_components() -> Vec<(&'static str, PresentedShift)> {
    vec![
        ("G(2,{0})", gns(2, &[0], None)),
        ("G(2,{1})", gns(2, &[1], None)),
        ("G(3,{1})", gns(3, &[1], None)),
    ]
}

/// Every graph used by criteria 1 to 7.
fn corpus() -> Vec<(String, LabeledGraph)> {
    let mut out = vec![
        (
            "G(5,{0,3}), i*=3".to_string(),
            gns(5, &[0, 3], Some(3)).graph().clone(),
        ),
        ("even shift".into(), even_shift()),
        ("full shift".into(), full_shift()),
    ];
    let parts = join_components();
    for (name, s) in &parts {
        out.push((name.to_string(), s.graph().clone()));
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let joined = join(&parts[i].1, &parts[j].1).unwrap();
        out.push((
            format!("join {} {}", parts[i].0, parts[j].0),
            joined.graph().clone(),
        ));
    }
    let spec = partition_spec();
    out.push((
        "follower target".into(),
        build_follower_target(&spec).unwrap().graph().clone(),
    ));
    out.push((
        "extender target".into(),
        build_extender_target(&spec).unwrap().graph().clone(),
    ));
    out
}

fn gns_5_03_residue_counts(q: Quantity, from: usize, big: usize) -> Outcome {
    let c = counts(gns(5, &[0, 3], Some(3)).graph(), q, 100);
    let bad: Vec<usize> = (from..=100)
        .filter(|&l| {
            c[l - 1]
                != if l % 5 == 0 || l % 5 == 3 {
                    big
                } else {
                    big - 1
                }
        })
        .collect();
    Outcome::check(
        bad.is_empty(),
        format!(
            "{q} lengths {from}..=100 against {big}/{}; mismatches at {bad:?}",
            big - 1
        ),
    )
}

fn criterion_1() -> Outcome {
    gns_5_03_residue_counts(Quantity::Follower, 7, 25)
}

fn criterion_2() -> Outcome {
    gns_5_03_residue_counts(Quantity::Extender, 18, 405)
}

fn criterion_3() -> Outcome {
    let mut specs = 0;
    let mut follower_bad = 0;
    // spec -> failing extender lengths
    let mut extender_bad: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut explained = true;
    for n in 1..=6 {
        for spec in GnsSpec::enumerate(n) {
            specs += 1;
            let s = spec.s().len();
            let shift = build_gns(&spec).unwrap();
            let a = analysis(shift.graph());
            let (lo, hi) = ((n + 2).max(3 * n + 3), 3 * n + 3 + 4 * n);
            let f = a.follower_sequence(hi).unwrap().counts;
            let e = a.extender_sequence(hi).unwrap().counts;
            let v = 3 * n + 2 * s + 1;
            let mut bad = Vec::new();
            for l in lo..=hi {
                let hit = usize::from(spec.s().contains(&(l % n)));
                if f[l - 1] != 3 * n + 3 * s + 3 + hit {
                    follower_bad += 1;
                }
                if e[l - 1] != v * v + s + 2 + hit {
                    bad.push(l);
                }
            }
            if !bad.is_empty() {
                let pd = primitivity_distance(shift.graph()).unwrap();
                let below: Vec<usize> = if n == 1 {
                    vec![6]
                } else {
                    (3 * n + 3..pd).collect()
                };
                explained &= bad == below;
                extender_bad.insert(format!("{spec} pd={pd}"), bad);
            }
        }
    }
    let pass = follower_bad == 0 && extender_bad.is_empty();
    let sample: Vec<String> = extender_bad
        .iter()
        .take(3)
        .map(|(k, v)| format!("{k} at {v:?}"))
        .collect();
    let mut detail = format!(
        "{specs} specs; follower mismatches {follower_bad}; extender form fails for {} specs, e.g. {}",
        extender_bad.len(),
        sample.join("; ")
    );
    if !pass && explained && follower_bad == 0 {
        detail.push_str(
            "; every failing length lies in [3n+3, pd) (pd = primitivity distance > 3n+3), \
             or is 6 for n = 1, so the stated threshold 3n+3 is too early for these graphs",
        );
    }
    Outcome {
        pass,
        known: !pass && explained && follower_bad == 0 && extender_bad.len() == 130,
        detail,
    }
}

fn criterion_4() -> Outcome {
    let even = counts(&even_shift(), Quantity::Follower, 50);
    let full = counts(&full_shift(), Quantity::Follower, 50);
    let even_ok = even[0] == 2 && even[1..].iter().all(|&c| c == 3);
    let full_ok = full.iter().all(|&c| c == 1);
    Outcome::check(
        even_ok && full_ok,
        format!(
            "even shift {:?}..., full shift {:?}...",
            &even[..5],
            &full[..5]
        ),
    )
}

fn criterion_5() -> Outcome {
    let parts = join_components();
    let mut lines = Vec::new();
    let mut pass = true;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let (g1, g2) = (parts[i].1.graph(), parts[j].1.graph());
        let joined = join(&parts[i].1, &parts[j].1).unwrap();
        let g = joined.graph();
        let (f, f1, f2) = (
            counts(g, Quantity::Follower, 60),
            counts(g1, Quantity::Follower, 60),
            counts(g2, Quantity::Follower, 60),
        );
        let (e, e1, e2) = (
            counts(g, Quantity::Extender, 60),
            counts(g1, Quantity::Extender, 60),
            counts(g2, Quantity::Extender, 60),
        );
        let pd = primitivity_distance(g1)
            .unwrap()
            .max(primitivity_distance(g2).unwrap());
        let cross = 2 * g1.vertex_count() * g2.vertex_count();
        let f_ok = (0..60).all(|k| f[k] == f1[k] + f2[k]);
        let e_ok = (2 * pd + 1..=60).all(|l| e[l - 1] == e1[l - 1] + e2[l - 1] + cross);
        pass &= f_ok && e_ok;
        lines.push(format!(
            "{} + {}: follower {}, extender +{cross} from {} {}",
            parts[i].0,
            parts[j].0,
            if f_ok { "ok" } else { "MISMATCH" },
            2 * pd + 1,
            if e_ok { "ok" } else { "MISMATCH" }
        ));
    }
    Outcome::check(pass, lines.join("; "))
}

fn criterion_6() -> Outcome {
    let spec = partition_spec();
    let n = 4;
    let blocks = spec.blocks();
    let rates = spec.rates();
    let mut m = 0;
    for i in 1..rates.len() {
        let tail: BTreeSet<usize> = blocks[i..].iter().flatten().copied().collect();
        m += (rates[i] - rates[i - 1]) * (3 * n + 3 * tail.len() + 3);
    }
    let c = counts(
        build_follower_target(&spec).unwrap().graph(),
        Quantity::Follower,
        100,
    );
    let bad: Vec<usize> = (n + 2..=100)
        .filter(|&l| {
            let j = blocks.iter().position(|b| b.contains(&(l % n))).unwrap();
            c[l - 1] != m + rates[j]
        })
        .collect();
    Outcome::check(
        bad.is_empty() && m < 54,
        format!("m = {m} < 54; counts m + r_j for lengths 6..=100, mismatches at {bad:?}"),
    )
}

fn criterion_7() -> Outcome {
    let spec = partition_spec();
    let a = analysis(build_extender_target(&spec).unwrap().graph());
    let r = certified_sequence(&a, Quantity::Extender, 120).unwrap();
    Outcome::check(
        r.certified && r.liminf <= 2496 && r.preperiod <= 111,
        format!(
            "m' = {} <= 2496, periodic from {} <= 111 with period {}",
            r.liminf, r.preperiod, r.period
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut pass = true;
    let mut failures = Vec::new();
    let mut checked = 0;
    for (name, g) in corpus() {
        let a = analysis(&g);
        for q in [Quantity::Follower, Quantity::Extender] {
            let first = certified_sequence(&a, q, 100).unwrap();
            let (from, k) = (first.layer_preperiod.max(1), first.layer_period);
            let lmax = (from + 2 * k).max(100);
            let r = a.sequence(q, lmax).unwrap();
            let nested = a.verify_nested_growth(q, k, from, lmax - k).unwrap();
            let ok = r.certified && k % r.period == 0 && nested;
            checked += 1;
            if !ok {
                pass = false;
                failures.push(format!("{name} {q}"));
            }
        }
    }
    Outcome::check(
        pass,
        format!("{checked} sequences certified and nested; failures {failures:?}"),
    )
}

fn criterion_9() -> Outcome {
    let shift = gns(2, &[0], None);
    let g = shift.graph();
    let a = analysis(g);
    let p = a.pumping_length().unwrap();
    let congruent = a.extender_classes_are_congruent().unwrap();
    let idx = a.relation_index().unwrap();
    let class = |w: &[sofic::Label]| idx.class(a.relation_id(w).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pumped = 0;
    let mut sampled = 0;
    while sampled < PUMP_SAMPLES {
        let Some(w) = common::random_walk_word(g, p, &mut rng) else {
            continue;
        };
        sampled += 1;
        if let Ok(pump) = a.pump_decomposition(&w) {
            if !pump.y.is_empty() && (0..=3).all(|i| class(&pump.pumped(i)) == class(&w)) {
                pumped += 1;
            }
        }
    }
    Outcome::check(
        congruent && pumped == sampled,
        format!(
            "p = {p}; extender classes form a congruence: {congruent}, so every word of length p pumps; \
             {pumped}/{sampled} sampled words pump for i = 0..=3"
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut mismatches = Vec::new();
    let mut nontrivial = 0;
    let mut largest = 0;
    for i in 0..RANDOM_GRAPHS {
        let g = common::random_essential_graph(&mut rng);
        let a = analysis(&g);
        if a.follower_class_count() > 1 {
            nontrivial += 1;
        }
        largest = largest.max(a.relation_index().unwrap().class_count());
        if let Err(e) = common::check_against_oracle(&g) {
            mismatches.push(format!("graph {i}: {e}"));
        }
    }
    Outcome::check(
        mismatches.is_empty(),
        format!(
            "{RANDOM_GRAPHS} graphs (seed {SEED:#x}), {nontrivial} with several follower classes, \
             up to {largest} extender classes; mismatches {mismatches:?}"
        ),
    )
}

fn criterion_11() -> Outcome {
    let m = SturmianModel::fibonacci();
    let counts_ok = (1..=60).all(|l| {
        sturmian_factors(&m, l)
            .map(|f| f.len() == l + 1)
            .unwrap_or(false)
    });
    let mut deepest = 0;
    let mut missing = Vec::new();
    for l in 1..=40 {
        match distinction_depth(&m, l, 2 * l + 5).unwrap() {
            Some(d) => deepest = deepest.max(d),
            None => missing.push(l),
        }
    }
    Outcome::check(
        counts_ok && missing.is_empty(),
        format!(
            "factor counts l+1 for l <= 60: {counts_ok}; distinction reaches l+1 within 2l+5 for l <= 40 \
             (deepest {deepest}), missing {missing:?}"
        ),
    )
}

fn criterion_12() -> Outcome {
    let shift = gns(2, &[0], None);
    let a = analysis(shift.graph());
    let r = a.sequence(Quantity::Extender, 201).unwrap();
    let product = product_counts(&r, 201).unwrap();
    let c = |l: usize| product.counts_product[l - 1];
    let spec = GnsSpec::new(2, [0], None).unwrap();
    let l_star =
        find_nonmonotone_length(&spec, Quantity::Extender, EngineConfig::default()).unwrap();
    let decreases: Vec<usize> = (1..=200).filter(|&l| c(l + 1) < c(l)).collect();
    let expected: Vec<usize> = (84..=200).step_by(2).collect();
    Outcome::check(
        c(84) == 7225 && c(85) == 7224 && l_star == 84 && decreases == expected,
        format!(
            "count(84) = {}, count(85) = {}, first nonmonotone length {l_star}, decreases at {} lengths \
             from {:?} to {:?}, all even",
            c(84),
            c(85),
            decreases.len(),
            decreases.first(),
            decreases.last()
        ),
    )
}

fn criterion_13() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for (name, g) in corpus() {
        let a = analysis(&g);
        let f = certified_sequence(&a, Quantity::Follower, 100).unwrap();
        let e = certified_sequence(&a, Quantity::Extender, 100).unwrap();
        let report = lower_bound_check(Some(&f), Some(&e)).unwrap();
        checked += report.inequalities.len();
        for i in report.inequalities.iter().filter(|i| !i.holds) {
            failures.push(format!("{name}: {} ({} vs {})", i.name, i.lhs, i.rhs));
        }
    }
    Outcome::check(
        failures.is_empty(),
        format!("{checked} inequalities checked; failures {failures:?}"),
    )
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 13] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
        criterion_12,
        criterion_13,
    ];
    let started = Instant::now();
    let mut passed = 0;
    let mut known = Vec::new();
    let mut unexpected = Vec::new();
    for (i, run) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let status = match (outcome.pass, outcome.known) {
            (true, _) => {
                passed += 1;
                "PASS"
            }
            (false, true) => {
                known.push(i + 1);
                "FAIL (known)"
            }
            (false, false) => {
                unexpected.push(i + 1);
                "FAIL"
            }
        };
        println!(
            "criterion {:>2}: {status} [{:.2}s] {}",
            i + 1,
            t.elapsed().as_secs_f64(),
            outcome.detail
        );
    }
    println!(
        "acceptance: {passed} passed, {} failed as documented {known:?}, {} failed unexpectedly {unexpected:?} in {:.1}s",
        known.len(),
        unexpected.len(),
        started.elapsed().as_secs_f64()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
