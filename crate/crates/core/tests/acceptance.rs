//! Acceptance criteria, run in order with their time limits. Prints one
//! PASS/FAIL line per criterion and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use rainbow_core::rng::{derive_seed, rng};
use rainbow_core::verify::{
    run_sweep, verify_lower_bound, CheckOutcome, Mode, SweepConfig, Verdict, VerificationReport,
    VerifyConfig,
};
use rainbow_core::{
    count_arborescences, enumerate_arborescences, enumerate_colorings, enumerate_tournaments,
    has_rainbow_arborescence, ArcColoring, EnumerationLimits, RainbowOracle, Tournament,
    VertexSet,
};

const SEED: u64 = 20_240_607;

const LIMIT_BASE_CASE: Duration = Duration::from_secs(1);
const LIMIT_ORDER_FOUR: Duration = Duration::from_secs(10);
const LIMIT_ORDER_FIVE_SINGLE: Duration = Duration::from_secs(600);
const LIMIT_ORDER_FIVE_EIGHT: Duration = Duration::from_secs(120);
const LIMIT_SAMPLED: Duration = Duration::from_secs(15 * 60);

const SAMPLED_TOURNAMENTS: usize = 10;
const SAMPLED_COLORINGS: u64 = 100_000;
const ORACLE_COLORINGS: u64 = 1000;
const DELTA3_CASES: u64 = 10_000;
const HAMILTONIAN_CASES: u64 = 1000;

type Check = std::result::Result<String, String>;

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{detail}; took {took:.2?}, limit {limit:?}"));
    }
    Ok(format!("{detail}; {took:.2?} (limit {limit:?})"))
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

fn exhaustive(n: usize) -> Result<Vec<VerificationReport>, String> {
    let cfg = SweepConfig {
        orders: vec![n],
        mode: Mode::Exhaustive,
        record_timings: false,
        ..SweepConfig::default()
    };
    run_sweep(&cfg, |_| {}).map_err(|e| e.to_string())
}

/// Every report consistent, every check passed, exhaustive counts complete.
fn all_consistent(reports: &[VerificationReport], expected: usize) -> Result<(), String> {
    if reports.len() != expected {
        return Err(format!("{} tournaments, expected {expected}", reports.len()));
    }
    for r in reports {
        let checks = [r.lower_bound, r.upper_bound, r.characterization];
        if r.verdict != Verdict::Consistent || checks.iter().any(|c| *c != CheckOutcome::Pass) {
            return Err(format!("{} ({}): {:?} {:?}", r.tournament_id, r.orientation, r.verdict, r.failures));
        }
        for (&k, &count) in &r.colorings_checked {
            if count as u128 != rainbow_core::stirling2(r.m, k) {
                return Err(format!("{}: {count} colorings at k = {k}", r.tournament_id));
            }
        }
        for k in [r.h - 1, r.h] {
            if !r.colorings_checked.contains_key(&k) {
                return Err(format!("{}: k = {k} not checked", r.tournament_id));
            }
        }
    }
    Ok(())
}

fn base_case() -> Check {
    let reports = exhaustive(3)?;
    all_consistent(&reports, 2)?;
    for r in &reports {
        if r.h != 2 || r.colorings_checked.get(&1) != Some(&1) || r.colorings_checked.get(&2) != Some(&3) {
            return Err(format!("{}: h = {}, counts {:?}", r.tournament_id, r.h, r.colorings_checked));
        }
    }
    Ok("2 tournaments, h = 2, S(3,1) = 1 and S(3,2) = 3 colorings each".into())
}

fn order_four(reports: &mut Vec<VerificationReport>) -> Check {
    let r = exhaustive(4)?;
    all_consistent(&r, 4)?;
    let total: u64 = r.iter().map(|r| r.total_checked()).sum();
    reports.extend(r);
    Ok(format!("4 tournaments, {total} colorings, 0 failures"))
}

fn order_five(reports: &mut Vec<VerificationReport>) -> Check {
    let single = timed(LIMIT_ORDER_FIVE_SINGLE, || {
        let r = pool(1).install(|| exhaustive(5))?;
        all_consistent(&r, 12)?;
        let total: u64 = r.iter().map(|r| r.total_checked()).sum();
        reports.extend(r);
        Ok(format!("12 tournaments, {total} colorings, 0 failures, 1 worker"))
    })?;
    let eight = timed(LIMIT_ORDER_FIVE_EIGHT, || {
        let r = pool(8).install(|| exhaustive(5))?;
        all_consistent(&r, 12)?;
        Ok("8 workers".into())
    })?;
    Ok(format!("{single}; {eight}"))
}

fn sampled() -> Check {
    let cfg = SweepConfig {
        orders: vec![6, 7],
        mode: Mode::Sampled,
        tournaments_per_order: SAMPLED_TOURNAMENTS,
        verify: VerifyConfig {
            samples: SAMPLED_COLORINGS,
            seed: SEED,
            ..VerifyConfig::default()
        },
        record_timings: false,
        ..SweepConfig::default()
    };
    let reports = run_sweep(&cfg, |_| {}).map_err(|e| e.to_string())?;
    if reports.len() != 2 * SAMPLED_TOURNAMENTS {
        return Err(format!("{} reports", reports.len()));
    }
    for r in &reports {
        if r.verdict != Verdict::Consistent
            || r.lower_bound != CheckOutcome::Pass
            || r.upper_bound != CheckOutcome::Pass
            || r.colorings_checked.get(&r.h) != Some(&SAMPLED_COLORINGS)
        {
            return Err(format!("n = {} {}: {:?} {:?}", r.n, r.orientation, r.verdict, r.failures));
        }
    }
    Ok(format!(
        "{} tournaments x {SAMPLED_COLORINGS} h-colorings, extremal colorings fail, 0 failures",
        reports.len()
    ))
}

fn oracle_equivalence() -> Check {
    let mut tournaments = Vec::new();
    for n in 1..=5 {
        tournaments.extend(enumerate_tournaments(n, false, EnumerationLimits::default()).map_err(|e| e.to_string())?);
    }
    let mismatches: Vec<String> = tournaments
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, t)| {
            let mut bad = Vec::new();
            let oracle = RainbowOracle::new(t).expect("n <= 5");
            let m = t.arc_count();
            for r in 0..t.order() {
                let listed = enumerate_arborescences(t, r).expect("n <= 5").len();
                if count_arborescences(t, r).expect("root in range") != listed.into() {
                    bad.push(format!("{t:?} root {r}: matrix-tree count differs"));
                }
            }
            if m == 0 {
                return bad;
            }
            let mut g = rng(derive_seed(SEED, 5, i as u64));
            for j in 0..ORACLE_COLORINGS {
                use rand::Rng;
                let k = g.gen_range(1..=m);
                let c = ArcColoring::random_surjective(m, k, &mut g).expect("1 <= k <= m");
                let out = has_rainbow_arborescence(t, &c).expect("matching sizes");
                if out.found() != oracle.has_rainbow(&c) {
                    bad.push(format!("{t:?} sample {j}: search and enumeration disagree"));
                }
                if let Some(w) = &out.witness {
                    if w.validate(t).is_err() || !w.is_rainbow(&c) {
                        bad.push(format!("{t:?} sample {j}: invalid witness"));
                    }
                }
            }
            bad
        })
        .collect();
    if !mismatches.is_empty() {
        return Err(format!("{} mismatches, first: {}", mismatches.len(), mismatches[0]));
    }
    Ok(format!(
        "{} labeled tournaments x {ORACLE_COLORINGS} colorings, all roots counted, exact agreement",
        tournaments.len()
    ))
}

fn lemma_suite(reports: &[VerificationReport]) -> Check {
    let mut colorings = 0;
    for r in reports {
        let s = &r.lemma_stats;
        if s.colorings == 0 || !s.all_pass() || r.failures.iter().any(|f| f.check == "lemma_bounds") {
            return Err(format!("n = {} {}: {:?}", r.n, r.orientation, s));
        }
        colorings += s.colorings;
    }
    if reports.len() != 16 {
        return Err(format!("expected the 16 tournaments of orders 4 and 5, got {}", reports.len()));
    }
    Ok(format!("{colorings} failing colorings over {} tournaments, 0 violations", reports.len()))
}

fn structural() -> Check {
    let mut r = rng(derive_seed(SEED, 7, 0));
    for i in 0..DELTA3_CASES {
        use rand::Rng;
        let n = r.gen_range(3..=32);
        let t = Tournament::random(n, derive_seed(SEED, 7, 1 + i)).map_err(|e| e.to_string())?;
        let mut d = t.in_degrees();
        d.sort_unstable();
        let (delta, _) = t.delta3_minus().map_err(|e| e.to_string())?;
        if delta < 3 || delta != d[0] + d[1] + d[2] {
            return Err(format!("delta3 = {delta} on {t:?}"));
        }
    }
    for i in 0..HAMILTONIAN_CASES {
        use rand::Rng;
        let n = r.gen_range(1..=64);
        let t = Tournament::random(n, derive_seed(SEED, 8, i)).map_err(|e| e.to_string())?;
        let p = t.hamiltonian_path();
        let valid = p.len() == n
            && p.iter().copied().collect::<VertexSet>() == VertexSet::full(n)
            && p.windows(2).all(|w| t.has_arc(w[0], w[1]));
        if !valid {
            return Err(format!("invalid Hamiltonian path on {t:?}"));
        }
    }
    let mut s = [[0u64; 11]; 11];
    s[0][0] = 1;
    for m in 1..=10 {
        for k in 1..=m {
            s[m][k] = k as u64 * s[m - 1][k] + s[m - 1][k - 1];
            let count = enumerate_colorings(m, k).map_err(|e| e.to_string())?.count() as u64;
            if count != s[m][k] {
                return Err(format!("S({m},{k}): enumerated {count}, recurrence {}", s[m][k]));
            }
        }
    }
    Ok(format!(
        "{DELTA3_CASES} delta3 cases, {HAMILTONIAN_CASES} Hamiltonian paths, S(m,k) for m <= 10"
    ))
}

fn main() -> ExitCode {
    // The lower bound is a precondition of everything below; fail loudly on
    // the smallest case first.
    let c3 = Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    assert_eq!(verify_lower_bound(&c3, &VerifyConfig::default()).unwrap().outcome, CheckOutcome::Pass);

    let mut lemma_reports = Vec::new();
    let results: Vec<(&str, Check)> = vec![
        ("1 base case, n = 3", timed(LIMIT_BASE_CASE, base_case)),
        ("2 exhaustive, n = 4", timed(LIMIT_ORDER_FOUR, || order_four(&mut lemma_reports))),
        ("3 exhaustive, n = 5", order_five(&mut lemma_reports)),
        ("4 sampled, n = 6, 7", timed(LIMIT_SAMPLED, sampled)),
        ("5 oracle equivalence, n <= 5", oracle_equivalence()),
        ("6 lemma bounds on failing colorings", lemma_suite(&lemma_reports)),
        ("7 structural invariants", structural()),
    ];

    let mut failed = 0;
    for (name, result) in &results {
        match result {
            Ok(detail) => println!("acceptance {name}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("acceptance {name}: FAIL ({detail})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
