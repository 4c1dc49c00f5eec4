use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{CheckOutcome, FailureRecord, LemmaStats, Mode};
use crate::canon::{canonical_form, CANONICAL_CAP};
use crate::tournament::Tournament;

/// Column order of [`VerificationReport::csv_row`].
pub const CSV_HEADER: &str = "n,tournament_id,delta3,h,mode,checked,failures,elapsed_ms";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Consistent,
    Counterexample,
    Inconclusive,
}

/// Outcome of every check on one tournament.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tournament_id: String,
    /// Orientation bits of the tournament as checked.
    pub orientation: String,
    pub n: usize,
    pub m: usize,
    pub delta3: usize,
    pub h: usize,
    pub mode: Mode,
    /// Colorings examined, keyed by number of colors.
    pub colorings_checked: BTreeMap<usize, u64>,
    pub lower_bound: CheckOutcome,
    pub upper_bound: CheckOutcome,
    pub characterization: CheckOutcome,
    pub failures: Vec<FailureRecord>,
    pub lemma_stats: LemmaStats,
    /// Sweep seed, sampled mode only.
    pub seed: Option<u64>,
    /// Seed of this tournament's coloring stream, sampled mode only.
    pub coloring_seed: Option<u64>,
    pub elapsed_ms: u64,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub(crate) fn settle_verdict(&mut self) {
        let outcomes = [self.lower_bound, self.upper_bound, self.characterization];
        self.verdict = if !self.failures.is_empty() || outcomes.contains(&CheckOutcome::Fail) {
            Verdict::Counterexample
        } else if outcomes.contains(&CheckOutcome::Inconclusive) {
            Verdict::Inconclusive
        } else {
            Verdict::Consistent
        };
    }

    pub fn total_checked(&self) -> u64 {
        self.colorings_checked.values().sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn csv_row(&self) -> String {
        let mode = match self.mode {
            Mode::Exhaustive => "exhaustive",
            Mode::Sampled => "sampled",
        };
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.tournament_id,
            self.delta3,
            self.h,
            mode,
            self.total_checked(),
            self.failures.len(),
            self.elapsed_ms
        )
    }
}

/// First 16 hex digits of the SHA-256 of `"n:bits"`, where `bits` is the
/// canonical form for `n <= 8` and the labeled orientation above that.
pub fn tournament_id(t: &Tournament) -> String {
    let bits = if t.order() <= CANONICAL_CAP {
        canonical_form(t).expect("order within the cap")
    } else {
        t.orientation()
    };
    let digest = Sha256::digest(format!("{}:{}", t.order(), bits).as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}
