use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use super::{
    extremal_lemma_stats, verify_characterization, verify_lower_bound, verify_upper_bound,
    CheckOutcome, LemmaStats, Mode, Verdict, VerificationReport, VerifyConfig,
};
use crate::canon::{enumerate_tournaments, EnumerationLimits};
use crate::coloring::ArcColoring;
use crate::error::{domain, Error, Result};
use crate::format::{write_clr, write_trn};
use crate::rng::derive_seed;
use crate::tournament::Tournament;

use super::report::tournament_id;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub orders: Vec<usize>,
    pub mode: Mode,
    pub verify: VerifyConfig,
    /// Random tournaments per order in sampled mode.
    pub tournaments_per_order: usize,
    /// Largest order allowed in exhaustive mode.
    pub max_exhaustive_order: usize,
    /// Failing colorings are written here as `.trn`/`.clr` pairs.
    pub quarantine: Option<PathBuf>,
    /// With `false`, `elapsed_ms` is always 0 so reports are byte-stable.
    pub record_timings: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            orders: vec![3, 4],
            mode: Mode::Exhaustive,
            verify: VerifyConfig::default(),
            tournaments_per_order: 10,
            max_exhaustive_order: 5,
            quarantine: None,
            record_timings: true,
        }
    }
}

/// Runs every check on one tournament. In sampled mode the coloring stream
/// is seeded from `config.seed` and the characterization sweep is skipped;
/// the lemma bounds are then evaluated on the extremal colorings.
pub fn verify_tournament(t: &Tournament, mode: Mode, config: &VerifyConfig, record_timings: bool) -> Result<VerificationReport> {
    let start = Instant::now();
    let (delta3, _) = t.delta3_minus()?;
    let h = t.h_value()?;
    let lower = verify_lower_bound(t, config)?;
    let upper = verify_upper_bound(t, mode, config)?;
    let mut checked: BTreeMap<usize, u64> = upper.checked.clone();
    let mut failures = Vec::new();
    let mut notes = upper.notes.clone();
    if lower.outcome == CheckOutcome::Fail {
        failures.push(super::FailureRecord::new(
            "lower_bound",
            lower.coloring.num_colors(),
            Some(&lower.coloring),
            format!("extremal coloring of triple {:?} has a rainbow spanning out-tree", lower.triple.vertices),
        ));
    }
    failures.extend(upper.failures);
    let (characterization, lemma_stats) = match mode {
        Mode::Exhaustive => {
            let c = verify_characterization(t, config)?;
            if c.checked > 0 {
                checked.insert(c.k, c.checked);
            }
            failures.extend(c.failures);
            notes.extend(c.notes);
            (c.outcome, c.lemma_stats)
        }
        Mode::Sampled => {
            let (stats, f): (LemmaStats, _) = extremal_lemma_stats(t, config)?;
            failures.extend(f);
            (CheckOutcome::Skipped, stats)
        }
    };
    let mut report = VerificationReport {
        tournament_id: tournament_id(t),
        orientation: t.orientation().to_string(),
        n: t.order(),
        m: t.arc_count(),
        delta3,
        h,
        mode,
        colorings_checked: checked,
        lower_bound: lower.outcome,
        upper_bound: upper.outcome,
        characterization,
        failures,
        lemma_stats,
        seed: None,
        coloring_seed: (mode == Mode::Sampled).then_some(config.seed),
        elapsed_ms: 0,
        notes,
        verdict: Verdict::Consistent,
    };
    report.settle_verdict();
    if record_timings {
        report.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    Ok(report)
}

/// One report per tournament: every isomorphism class of each order in
/// exhaustive mode, `tournaments_per_order` seeded random tournaments in
/// sampled mode. `on_report` sees each report as soon as it is complete.
pub fn run_sweep(
    config: &SweepConfig,
    mut on_report: impl FnMut(&VerificationReport),
) -> Result<Vec<VerificationReport>> {
    if config.orders.is_empty() {
        return domain("no orders to sweep");
    }
    for &n in &config.orders {
        if n < 3 {
            return domain(format!("orders must be at least 3, got {n}"));
        }
        if config.mode == Mode::Exhaustive && n > config.max_exhaustive_order {
            return domain(format!(
                "exhaustive mode is limited to n <= {}, got {n}",
                config.max_exhaustive_order
            ));
        }
    }
    if let Some(dir) = &config.quarantine {
        fs::create_dir_all(dir)
            .map_err(|e| Error::Resource(format!("cannot create {}: {e}", dir.display())))?;
    }
    let limits = EnumerationLimits {
        up_to_iso: config.max_exhaustive_order.max(EnumerationLimits::default().up_to_iso),
        ..EnumerationLimits::default()
    };
    let mut reports = Vec::new();
    for &n in &config.orders {
        let jobs: Vec<(Tournament, VerifyConfig, Option<u64>)> = match config.mode {
            Mode::Exhaustive => enumerate_tournaments(n, true, limits)?
                .map(|t| (t, config.verify, None))
                .collect(),
            Mode::Sampled => (0..config.tournaments_per_order as u64)
                .map(|i| {
                    let t = Tournament::random(n, derive_seed(config.verify.seed, n as u64, 2 * i))?;
                    let verify = VerifyConfig {
                        seed: derive_seed(config.verify.seed, n as u64, 2 * i + 1),
                        ..config.verify
                    };
                    Ok((t, verify, Some(config.verify.seed)))
                })
                .collect::<Result<_>>()?,
        };
        for (t, verify, seed) in jobs {
            let mut report = verify_tournament(&t, config.mode, &verify, config.record_timings)?;
            report.seed = seed;
            if let Some(dir) = &config.quarantine {
                quarantine(dir, &t, &mut report);
            }
            on_report(&report);
            reports.push(report);
        }
    }
    Ok(reports)
}

/// Writes `<id>-<i>.trn` and `<id>-<i>.clr` for every failure that carries
/// a coloring. Write errors are recorded in the report's notes.
pub(super) fn quarantine(dir: &Path, t: &Tournament, report: &mut VerificationReport) {
    let mut errors = Vec::new();
    for (i, f) in report.failures.iter().enumerate() {
        let Some(colors) = &f.colors else { continue };
        let stem = dir.join(format!("{}-{i}", report.tournament_id));
        let coloring = ArcColoring::new(colors.clone()).unwrap_or_else(|_| ArcColoring::from_labels(colors));
        let clr = write_clr(&coloring);
        for (path, body) in [(stem.with_extension("trn"), write_trn(t)), (stem.with_extension("clr"), clr)] {
            if let Err(e) = fs::write(&path, body) {
                errors.push(format!("quarantine write to {} failed: {e}", path.display()));
            }
        }
    }
    report.notes.extend(errors);
}
