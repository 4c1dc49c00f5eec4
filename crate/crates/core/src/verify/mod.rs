//! Machine checks of the formula `h(T) = C(n,2) - delta3(T) + 2` and of the
//! structure of colorings that attain `h(T) - 1` colors without a rainbow
//! spanning out-tree.
//!
//! Each check scans a stream of colorings with the backtracking search.
//! Whenever the search reports that no rainbow tree exists, the claim is
//! re-checked against the exhaustive arborescence enumeration (for
//! `n <= 7`) before anything is reported.

mod report;
mod sweep;

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arborescence::{RainbowOracle, ENUMERATION_CAP};
use crate::coloring::{
    classify_with, color_stats, extremal_coloring, matching_extremal_triple, ArcColoring,
    VertexType,
};
use crate::error::{domain, Error, Result};
use crate::partition::{feasible_prefixes, stirling2, RestrictedGrowth};
use crate::rng::{derive_seed, rng};
use crate::search::{search, SearchConfig, SearchStatus};
use crate::tournament::{Tournament, Triple};

pub use report::{tournament_id, Verdict, VerificationReport, CSV_HEADER};
pub use sweep::{run_sweep, verify_tournament, SweepConfig};

/// Hard cap on the colorings examined per tournament in exhaustive mode.
pub const DEFAULT_COLORING_BUDGET: u128 = 100_000_000;

/// Colorings per independently seeded sample block.
const SAMPLE_BLOCK: u64 = 1024;

/// Prefix length used to split coloring enumeration across workers.
const SPLIT_DEPTH: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "sampled" => Ok(Mode::Sampled),
            other => Err(Error::Parse(format!(
                "unknown mode {other:?}, expected exhaustive or sampled"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Exhaustive scans larger than this many colorings are skipped and
    /// reported inconclusive.
    pub coloring_budget: u128,
    /// Node budget for every individual search.
    pub search: SearchConfig,
    /// Random colorings per tournament in sampled mode.
    pub samples: u64,
    /// Seed of the sampled coloring stream.
    pub seed: u64,
    /// Orders up to which the upper bound is also checked with `h + 1`
    /// colors.
    pub next_k_up_to: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            coloring_budget: DEFAULT_COLORING_BUDGET,
            search: SearchConfig::default(),
            samples: 100_000,
            seed: 0,
            next_k_up_to: 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckOutcome {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

impl CheckOutcome {
    /// Combines two outcomes of parts of one check.
    fn and(self, other: CheckOutcome) -> CheckOutcome {
        use CheckOutcome::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            (Skipped, x) | (x, Skipped) => x,
            (Pass, Pass) => Pass,
        }
    }
}

/// A coloring (or the lack of one) that contradicts an expected property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub check: String,
    pub k: usize,
    pub colors: Option<Vec<u32>>,
    pub reason: String,
}

impl FailureRecord {
    fn new(check: &str, k: usize, coloring: Option<&ArcColoring>, reason: impl Into<String>) -> Self {
        FailureRecord {
            check: check.to_string(),
            k,
            colors: coloring.map(|c| c.colors().to_vec()),
            reason: reason.into(),
        }
    }
}

/// Pass counts of the three vertex-type bounds over failing colorings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaStats {
    pub colorings: u64,
    pub type1_bound: u64,
    pub type2_bound: u64,
    pub type1_count: u64,
}

impl LemmaStats {
    fn record(&mut self, check: &LemmaCheck) {
        self.colorings += 1;
        self.type1_bound += check.type1_bound as u64;
        self.type2_bound += check.type2_bound as u64;
        self.type1_count += check.type1_count as u64;
    }

    pub fn merge(&mut self, other: &LemmaStats) {
        self.colorings += other.colorings;
        self.type1_bound += other.type1_bound;
        self.type2_bound += other.type2_bound;
        self.type1_count += other.type1_count;
    }

    pub fn all_pass(&self) -> bool {
        self.type1_bound == self.colorings
            && self.type2_bound == self.colorings
            && self.type1_count == self.colorings
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundCheck {
    pub outcome: CheckOutcome,
    pub triple: Triple,
    pub coloring: ArcColoring,
    pub status: SearchStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperBoundCheck {
    pub outcome: CheckOutcome,
    pub checked: BTreeMap<usize, u64>,
    pub failures: Vec<FailureRecord>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterizationCheck {
    pub outcome: CheckOutcome,
    pub k: usize,
    pub checked: u64,
    pub failing: u64,
    pub matched: u64,
    /// Whether the extremal coloring of every minimizing triple was among
    /// the failing colorings, up to renaming.
    pub rediscovered: bool,
    pub failures: Vec<FailureRecord>,
    pub lemma_stats: LemmaStats,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub types: Vec<VertexType>,
    /// `c(x)`: colors all of whose arcs touch `x`.
    pub c: Vec<usize>,
    /// Every Type1 vertex has `c(x) >= n - 4`.
    pub type1_bound: bool,
    /// Every Type2 vertex has `d+(x) >= c(x) = n - 4`.
    pub type2_bound: bool,
    /// At most `n - 2` vertices are Type1.
    pub type1_count: bool,
    pub violations: Vec<String>,
}

impl LemmaCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn require_order(t: &Tournament) -> Result<()> {
    if t.order() < 3 {
        return domain(format!("the checks need n >= 3, got {}", t.order()));
    }
    Ok(())
}

/// Lazily built enumeration oracle, shared by the workers of one scan.
struct Oracle<'a> {
    t: &'a Tournament,
    cell: OnceLock<Option<RainbowOracle>>,
}

impl<'a> Oracle<'a> {
    fn new(t: &'a Tournament) -> Self {
        Oracle {
            t,
            cell: OnceLock::new(),
        }
    }

    /// `Some(true)` if enumeration finds a rainbow tree, `None` when the
    /// order is above the enumeration cap.
    fn has_rainbow(&self, coloring: &ArcColoring) -> Option<bool> {
        self.cell
            .get_or_init(|| {
                (self.t.order() <= ENUMERATION_CAP)
                    .then(|| RainbowOracle::new(self.t).expect("order within the cap"))
            })
            .as_ref()
            .map(|o| o.has_rainbow(coloring))
    }
}

/// Result of scanning a stream of colorings.
#[derive(Default)]
struct Scan {
    checked: u64,
    /// No rainbow tree, confirmed by enumeration where available.
    failing: Vec<ArcColoring>,
    /// The subset of `failing` that enumeration could not confirm.
    unconfirmed: u64,
    /// The search found nothing but enumeration found a tree.
    disagreements: Vec<ArcColoring>,
    exhausted: u64,
}

impl Scan {
    fn absorb(&mut self, other: Scan) {
        self.checked += other.checked;
        self.failing.extend(other.failing);
        self.unconfirmed += other.unconfirmed;
        self.disagreements.extend(other.disagreements);
        self.exhausted += other.exhausted;
    }
}

fn scan<I>(t: &Tournament, colorings: I, config: SearchConfig, oracle: &Oracle) -> Result<Scan>
where
    I: IntoIterator<Item = ArcColoring>,
{
    let mut s = Scan::default();
    for g in colorings {
        s.checked += 1;
        match search(t, &g, config)?.status {
            SearchStatus::Found => {}
            SearchStatus::BudgetExhausted => s.exhausted += 1,
            SearchStatus::NotFound => match oracle.has_rainbow(&g) {
                Some(true) => s.disagreements.push(g),
                Some(false) => s.failing.push(g),
                None => {
                    s.unconfirmed += 1;
                    s.failing.push(g);
                }
            },
        }
    }
    Ok(s)
}

/// Every coloring with exactly `k` colors up to renaming, split by prefix
/// across the rayon pool and merged in enumeration order.
fn scan_exhaustive(t: &Tournament, k: usize, config: SearchConfig, oracle: &Oracle) -> Result<Scan> {
    let m = t.arc_count();
    let prefixes = feasible_prefixes(m, k, SPLIT_DEPTH)?;
    let parts: Vec<Scan> = prefixes
        .par_iter()
        .map(|p| {
            let it = RestrictedGrowth::with_prefix(m, k, p)?;
            scan(t, it.map(|c| ArcColoring::from_parts(c, k)), config, oracle)
        })
        .collect::<Result<_>>()?;
    let mut total = Scan::default();
    for p in parts {
        total.absorb(p);
    }
    Ok(total)
}

/// `samples` random surjective `k`-colorings drawn in blocks seeded from
/// `seed`, so the stream does not depend on the number of workers.
fn scan_sampled(
    t: &Tournament,
    k: usize,
    samples: u64,
    seed: u64,
    config: SearchConfig,
    oracle: &Oracle,
) -> Result<Scan> {
    let m = t.arc_count();
    let blocks = samples.div_ceil(SAMPLE_BLOCK);
    let parts: Vec<Scan> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut r = rng(derive_seed(seed, k as u64, b));
            let len = SAMPLE_BLOCK.min(samples - b * SAMPLE_BLOCK);
            let colorings = (0..len)
                .map(|_| ArcColoring::random_surjective(m, k, &mut r))
                .collect::<Result<Vec<_>>>()?;
            scan(t, colorings, config, oracle)
        })
        .collect::<Result<_>>()?;
    let mut total = Scan::default();
    for p in parts {
        total.absorb(p);
    }
    Ok(total)
}

/// The extremal coloring on the lexicographically first minimizing triple
/// must have no rainbow spanning out-tree.
pub fn verify_lower_bound(t: &Tournament, config: &VerifyConfig) -> Result<LowerBoundCheck> {
    require_order(t)?;
    let (_, triples) = t.delta3_minus()?;
    let triple = triples[0];
    let coloring = extremal_coloring(t, triple.vertices)?;
    let status = search(t, &coloring, config.search)?.status;
    let outcome = match status {
        SearchStatus::Found => CheckOutcome::Fail,
        SearchStatus::BudgetExhausted => CheckOutcome::Inconclusive,
        SearchStatus::NotFound => match Oracle::new(t).has_rainbow(&coloring) {
            Some(true) => CheckOutcome::Fail,
            _ => CheckOutcome::Pass,
        },
    };
    Ok(LowerBoundCheck {
        outcome,
        triple,
        coloring,
        status,
    })
}

/// Every coloring with `h` colors (and with `h + 1` colors for small
/// orders, exhaustive mode only) must have a rainbow spanning out-tree.
pub fn verify_upper_bound(t: &Tournament, mode: Mode, config: &VerifyConfig) -> Result<UpperBoundCheck> {
    require_order(t)?;
    let h = t.h_value()?;
    let m = t.arc_count();
    let oracle = Oracle::new(t);
    let mut ks = vec![h];
    if mode == Mode::Exhaustive && t.order() <= config.next_k_up_to && h < m {
        ks.push(h + 1);
    }
    let mut check = UpperBoundCheck {
        outcome: CheckOutcome::Pass,
        checked: BTreeMap::new(),
        failures: Vec::new(),
        notes: Vec::new(),
    };
    for k in ks {
        let s = match mode {
            Mode::Exhaustive => {
                let total = stirling2(m, k);
                if total > config.coloring_budget {
                    check.outcome = check.outcome.and(CheckOutcome::Inconclusive);
                    check.notes.push(format!(
                        "k = {k}: S({m},{k}) = {total} exceeds the budget of {}",
                        config.coloring_budget
                    ));
                    continue;
                }
                scan_exhaustive(t, k, config.search, &oracle)?
            }
            Mode::Sampled => scan_sampled(t, k, config.samples, config.seed, config.search, &oracle)?,
        };
        check.checked.insert(k, s.checked);
        if s.exhausted > 0 {
            check.outcome = check.outcome.and(CheckOutcome::Inconclusive);
            check.notes.push(format!("k = {k}: {} searches ran out of budget", s.exhausted));
        }
        let reason = if s.unconfirmed > 0 {
            format!("search found no rainbow spanning out-tree (enumeration unavailable for n > {ENUMERATION_CAP})")
        } else {
            "no rainbow spanning out-tree, confirmed by enumeration".to_string()
        };
        for g in &s.failing {
            check.failures.push(FailureRecord::new("upper_bound", k, Some(g), reason.clone()));
        }
        for g in &s.disagreements {
            check.failures.push(FailureRecord::new(
                "upper_bound",
                k,
                Some(g),
                "search reported no rainbow tree but enumeration found one",
            ));
        }
    }
    if !check.failures.is_empty() {
        check.outcome = CheckOutcome::Fail;
    }
    Ok(check)
}

/// Every coloring with `h - 1` colors and no rainbow spanning out-tree must
/// be an extremal coloring of some minimizing triple, at least one such
/// coloring must exist, and the vertex-type bounds must hold on each.
pub fn verify_characterization(t: &Tournament, config: &VerifyConfig) -> Result<CharacterizationCheck> {
    require_order(t)?;
    let h = t.h_value()?;
    let k = h - 1;
    let m = t.arc_count();
    let (_, triples) = t.delta3_minus()?;
    let mut check = CharacterizationCheck {
        outcome: CheckOutcome::Pass,
        k,
        checked: 0,
        failing: 0,
        matched: 0,
        rediscovered: false,
        failures: Vec::new(),
        lemma_stats: LemmaStats::default(),
        notes: Vec::new(),
    };
    let total = stirling2(m, k);
    if total > config.coloring_budget {
        check.outcome = CheckOutcome::Inconclusive;
        check.notes.push(format!(
            "k = {k}: S({m},{k}) = {total} exceeds the budget of {}",
            config.coloring_budget
        ));
        return Ok(check);
    }
    let oracle = Oracle::new(t);
    let s = scan_exhaustive(t, k, config.search, &oracle)?;
    check.checked = s.checked;
    check.failing = s.failing.len() as u64;
    if s.exhausted > 0 {
        check.outcome = CheckOutcome::Inconclusive;
        check.notes.push(format!("k = {k}: {} searches ran out of budget", s.exhausted));
    }
    for g in &s.disagreements {
        check.failures.push(FailureRecord::new(
            "characterization",
            k,
            Some(g),
            "search reported no rainbow tree but enumeration found one",
        ));
    }
    let mut expected: Vec<(Triple, ArcColoring, bool)> = triples
        .iter()
        .map(|tr| Ok((*tr, extremal_coloring(t, tr.vertices)?.normalized(), false)))
        .collect::<Result<_>>()?;
    for g in &s.failing {
        match matching_extremal_triple(t, g, &triples)? {
            Some(_) => check.matched += 1,
            None => check.failures.push(FailureRecord::new(
                "characterization",
                k,
                Some(g),
                "failing coloring is not extremal for any minimizing triple",
            )),
        }
        let normalized = g.normalized();
        for e in expected.iter_mut().filter(|e| e.1 == normalized) {
            e.2 = true;
        }
        let lemma = lemma_bounds(t, g)?;
        check.lemma_stats.record(&lemma);
        for v in lemma.violations {
            check.failures.push(FailureRecord::new("lemma_bounds", k, Some(g), v));
        }
    }
    if s.failing.is_empty() {
        check.failures.push(FailureRecord::new(
            "characterization",
            k,
            None,
            "no coloring with h - 1 colors lacks a rainbow spanning out-tree",
        ));
    }
    check.rediscovered = expected.iter().all(|e| e.2);
    for (tr, _, _) in expected.iter().filter(|e| !e.2) {
        check.failures.push(FailureRecord::new(
            "characterization",
            k,
            None,
            format!("extremal coloring of triple {:?} was not among the failing colorings", tr.vertices),
        ));
    }
    if !check.failures.is_empty() {
        check.outcome = CheckOutcome::Fail;
    }
    Ok(check)
}

/// Vertex-type bounds for a coloring with `h - 1` colors and no rainbow
/// spanning out-tree. Either hypothesis failing is a domain error.
pub fn verify_lemma_bounds(t: &Tournament, coloring: &ArcColoring) -> Result<LemmaCheck> {
    require_order(t)?;
    let h = t.h_value()?;
    if coloring.len() != t.arc_count() {
        return domain("coloring does not match the tournament");
    }
    if coloring.num_colors() != h - 1 {
        return domain(format!(
            "coloring uses {} colors, the bounds need h - 1 = {}",
            coloring.num_colors(),
            h - 1
        ));
    }
    if search(t, coloring, SearchConfig::default())?.found() {
        return domain("coloring has a rainbow spanning out-tree");
    }
    lemma_bounds(t, coloring)
}

fn lemma_bounds(t: &Tournament, coloring: &ArcColoring) -> Result<LemmaCheck> {
    let n = t.order();
    let floor = n as i64 - 4;
    let stats = color_stats(t, coloring)?;
    let types: Vec<VertexType> = (0..n).map(|x| classify_with(t, coloring, &stats, x)).collect();
    let c: Vec<usize> = (0..n).map(|x| stats.c(x)).collect();
    let mut check = LemmaCheck {
        types,
        c,
        type1_bound: true,
        type2_bound: true,
        type1_count: true,
        violations: Vec::new(),
    };
    for x in 0..n {
        let cx = check.c[x] as i64;
        match check.types[x] {
            VertexType::Type1 if cx < floor => {
                check.type1_bound = false;
                check.violations.push(format!("Type1 vertex {x} has c(x) = {cx} < n - 4"));
            }
            VertexType::Type2 => {
                let out = t.out_degree(x)? as i64;
                if out < cx || cx != floor {
                    check.type2_bound = false;
                    check.violations.push(format!(
                        "Type2 vertex {x} has d+(x) = {out}, c(x) = {cx}, n - 4 = {floor}"
                    ));
                }
            }
            _ => {}
        }
    }
    let type1 = check.types.iter().filter(|&&v| v == VertexType::Type1).count();
    if type1 + 2 > n {
        check.type1_count = false;
        check.violations.push(format!("{type1} Type1 vertices, more than n - 2"));
    }
    Ok(check)
}

/// Lemma statistics over the extremal colorings of every minimizing triple
/// that has no rainbow tree. Used in sampled mode, where the failing
/// colorings cannot be enumerated.
fn extremal_lemma_stats(t: &Tournament, config: &VerifyConfig) -> Result<(LemmaStats, Vec<FailureRecord>)> {
    let (_, triples) = t.delta3_minus()?;
    let mut stats = LemmaStats::default();
    let mut failures = Vec::new();
    for tr in &triples {
        let g = extremal_coloring(t, tr.vertices)?;
        if search(t, &g, config.search)?.status != SearchStatus::NotFound {
            continue;
        }
        let lemma = lemma_bounds(t, &g)?;
        stats.record(&lemma);
        for v in lemma.violations {
            failures.push(FailureRecord::new("lemma_bounds", g.num_colors(), Some(&g), v));
        }
    }
    Ok((stats, failures))
}
