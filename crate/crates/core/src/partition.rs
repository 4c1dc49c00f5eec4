//! Set partitions as restricted-growth strings.
//!
//! A string `a[0..m]` is restricted-growth when `a[0] = 0` and
//! `a[i] <= 1 + max(a[0..i])`. Such strings are in bijection with the
//! partitions of `m` labeled slots, which is all that matters for rainbow
//! questions: renaming colors never changes which subgraphs are rainbow.

use crate::error::{domain, Result};

/// Stirling number of the second kind `S(m, k)` from the recurrence
/// `S(m, k) = k S(m-1, k) + S(m-1, k-1)`. Saturates at `u128::MAX`.
pub fn stirling2(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=m {
        for j in (1..=k.min(i)).rev() {
            row[j] = (j as u128)
                .saturating_mul(row[j])
                .saturating_add(row[j - 1]);
        }
        row[0] = 0;
    }
    row[k]
}

/// Iterator over the restricted-growth strings of length `m` with exactly
/// `k` distinct values and a fixed prefix, in lexicographic order.
#[derive(Clone, Debug)]
pub struct RestrictedGrowth {
    m: usize,
    k: usize,
    fixed: usize,
    current: Vec<u32>,
    /// `prefix_max[i]` is `max(current[0..=i])`.
    prefix_max: Vec<u32>,
    started: bool,
    done: bool,
}

impl RestrictedGrowth {
    /// All strings with `k` blocks of `m` slots.
    pub fn new(m: usize, k: usize) -> Result<Self> {
        if k == 0 || k > m {
            return domain(format!("need 1 <= k <= m, got m = {m}, k = {k}"));
        }
        Self::with_prefix(m, k, &[0])
    }

    /// Strings that start with `prefix`. The prefix must itself be a
    /// restricted-growth string; an infeasible prefix yields nothing.
    pub fn with_prefix(m: usize, k: usize, prefix: &[u32]) -> Result<Self> {
        if k == 0 || k > m {
            return domain(format!("need 1 <= k <= m, got m = {m}, k = {k}"));
        }
        if prefix.is_empty() || prefix.len() > m {
            return domain("prefix length must be in 1..=m");
        }
        let mut current = Vec::with_capacity(m);
        let mut prefix_max = Vec::with_capacity(m);
        let mut max = 0u32;
        for (i, &c) in prefix.iter().enumerate() {
            if (i == 0 && c != 0) || c > max + 1 || c as usize >= k {
                return domain(format!("prefix {prefix:?} is not restricted-growth for k = {k}"));
            }
            max = max.max(c);
            current.push(c);
            prefix_max.push(max);
        }
        let mut it = RestrictedGrowth {
            m,
            k,
            fixed: prefix.len(),
            current,
            prefix_max,
            started: false,
            done: false,
        };
        current_fill(&mut it.current, &mut it.prefix_max, m, k);
        it.done = !it.feasible_at(m);
        Ok(it)
    }

    fn feasible_at(&self, m: usize) -> bool {
        self.current.len() == m && self.prefix_max[m - 1] as usize + 1 == self.k
    }

    fn advance(&mut self) -> bool {
        let m = self.current.len();
        let k = self.k as u32;
        let mut i = m;
        while i > self.fixed {
            i -= 1;
            let prev_max = self.prefix_max[i - 1];
            let next = self.current[i] + 1;
            // After raising slot i the remaining slots must still be able to
            // introduce every missing value.
            let max_here = prev_max.max(next);
            if next <= prev_max + 1 && next < k && (m - 1 - i) as u32 >= k - 1 - max_here {
                self.current[i] = next;
                self.prefix_max[i] = max_here;
                self.current.truncate(i + 1);
                self.prefix_max.truncate(i + 1);
                current_fill(&mut self.current, &mut self.prefix_max, m, self.k);
                return true;
            }
        }
        false
    }
}

/// Completes a partial string to length `m` with the smallest feasible
/// suffix: zeros, then the missing values in increasing order at the end.
fn current_fill(current: &mut Vec<u32>, prefix_max: &mut Vec<u32>, m: usize, k: usize) {
    let mut max = *prefix_max.last().expect("nonempty prefix");
    let len = current.len();
    let missing = (k as u32 - 1).saturating_sub(max) as usize;
    let remaining = m - len;
    if missing > remaining {
        // Infeasible; leave short so `feasible_at` fails.
        return;
    }
    for _ in 0..remaining - missing {
        current.push(0);
        prefix_max.push(max);
    }
    for _ in 0..missing {
        max += 1;
        current.push(max);
        prefix_max.push(max);
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        debug_assert_eq!(self.m, self.current.len());
        Some(self.current.clone())
    }
}

/// Every partition of `m` arc slots into exactly `k` color classes, as
/// restricted-growth color vectors. Yields `S(m, k)` items.
pub fn enumerate_colorings(m: usize, k: usize) -> Result<RestrictedGrowth> {
    RestrictedGrowth::new(m, k)
}

/// Restricted-growth prefixes of length `depth` that extend to at least one
/// string of length `m` with exactly `k` values, in lexicographic order.
/// Running [`RestrictedGrowth::with_prefix`] on each prefix partitions the
/// full enumeration into disjoint contiguous chunks.
pub fn feasible_prefixes(m: usize, k: usize, depth: usize) -> Result<Vec<Vec<u32>>> {
    if k == 0 || k > m {
        return domain(format!("need 1 <= k <= m, got m = {m}, k = {k}"));
    }
    let depth = depth.clamp(1, m);
    let mut out = Vec::new();
    let mut cur = vec![0u32];
    fn rec(cur: &mut Vec<u32>, max: u32, m: usize, k: usize, depth: usize, out: &mut Vec<Vec<u32>>) {
        let missing = (k as u32 - 1).saturating_sub(max) as usize;
        if missing > m - cur.len() {
            return;
        }
        if cur.len() == depth {
            out.push(cur.clone());
            return;
        }
        for c in 0..=(max + 1).min(k as u32 - 1) {
            cur.push(c);
            rec(cur, max.max(c), m, k, depth, out);
            cur.pop();
        }
    }
    rec(&mut cur, 0, m, k, depth, &mut out);
    Ok(out)
}
