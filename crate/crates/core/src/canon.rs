//! Canonical forms and exhaustive enumeration of small tournaments.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::tournament::{arc_count, Orientation, Tournament, VertexSet};

/// Largest order accepted by [`canonical_form`].
pub const CANONICAL_CAP: usize = 8;

/// Order caps for [`enumerate_tournaments`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub up_to_iso: usize,
    pub labeled: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            up_to_iso: 7,
            labeled: 5,
        }
    }
}

/// The lexicographically smallest orientation string over all relabelings
/// of `t`.
///
/// Positions are filled in order. Rows of the orientation string are
/// consecutive, so the string is minimized row by row: the vertex placed at
/// position `i` must minimize row `i`, and doing so forces its in-neighbors
/// before its out-neighbors inside every block of still-unordered positions.
/// Vertices tied on a row are all explored.
pub fn canonical_form(t: &Tournament) -> Result<Orientation> {
    Ok(canonical_labeling(t)?.0)
}

/// Canonical form together with a relabeling `perm` (vertex `v` becomes
/// `perm[v]`) that realizes it.
pub fn canonical_labeling(t: &Tournament) -> Result<(Orientation, Vec<usize>)> {
    let n = t.order();
    if n > CANONICAL_CAP {
        return Err(Error::Resource(format!(
            "canonical form is limited to n <= {CANONICAL_CAP}, got {n}"
        )));
    }
    let mut search = CanonSearch {
        t,
        best: None,
        rows: Vec::with_capacity(n),
    };
    let order: Vec<usize> = (0..n).collect();
    let cell_end = vec![n; n];
    search.descend(0, order, cell_end);
    let (rows, order) = search.best.expect("at least one leaf is reached");
    let bits: Vec<bool> = rows.into_iter().flatten().collect();
    debug_assert_eq!(bits.len(), arc_count(n));
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    Ok((Orientation::from_bools(&bits), perm))
}

struct CanonSearch<'a> {
    t: &'a Tournament,
    best: Option<(Vec<Vec<bool>>, Vec<usize>)>,
    rows: Vec<Vec<bool>>,
}

impl CanonSearch<'_> {
    /// `order[p]` is the vertex currently at position `p`; `cell_end[p]` is
    /// the exclusive end of the block containing `p`.
    fn descend(&mut self, i: usize, order: Vec<usize>, cell_end: Vec<usize>) {
        let n = order.len();
        if i == n {
            let better = match &self.best {
                None => true,
                Some((rows, _)) => self.rows < *rows,
            };
            if better {
                self.best = Some((self.rows.clone(), order));
            }
            return;
        }
        let end = cell_end[i];
        let mut candidates: Vec<(Vec<bool>, Vec<usize>, Vec<usize>)> = Vec::new();
        for slot in i..end {
            let u = order[slot];
            let (row, new_order, new_end) = self.refine(i, u, &order, &cell_end);
            match candidates.first() {
                Some((r, _, _)) if row > *r => continue,
                Some((r, _, _)) if row < *r => candidates.clear(),
                _ => {}
            }
            candidates.push((row, new_order, new_end));
        }
        self.rows.push(candidates[0].0.clone());
        for (_, new_order, new_end) in candidates {
            // Prune once the prefix is already worse than the best leaf.
            if let Some((rows, _)) = &self.best {
                if self.rows[..] > rows[..=i] {
                    break;
                }
            }
            self.descend(i + 1, new_order, new_end);
        }
        self.rows.pop();
    }

    fn refine(
        &self,
        i: usize,
        u: usize,
        order: &[usize],
        cell_end: &[usize],
    ) -> (Vec<bool>, Vec<usize>, Vec<usize>) {
        let n = order.len();
        let mut new_order = order[..=i].to_vec();
        new_order[i] = u;
        let mut new_end = cell_end[..=i].to_vec();
        new_end[i] = i + 1;
        let mut row = Vec::with_capacity(n - i - 1);
        let mut start = i;
        while start < n {
            let end = cell_end[start];
            let block: Vec<usize> = order[start..end].iter().copied().filter(|&v| v != u).collect();
            let (ins, outs): (Vec<usize>, Vec<usize>) =
                block.into_iter().partition(|&v| self.t.has_arc(v, u));
            let base = new_order.len();
            row.extend(std::iter::repeat_n(false, ins.len()));
            row.extend(std::iter::repeat_n(true, outs.len()));
            let split = base + ins.len();
            let stop = split + outs.len();
            new_end.extend(std::iter::repeat_n(split, ins.len()));
            new_end.extend(std::iter::repeat_n(stop, outs.len()));
            new_order.extend(ins);
            new_order.extend(outs);
            start = end;
        }
        (row, new_order, new_end)
    }
}

/// Tournaments of order `n`: all `2^C(n,2)` labeled ones in lexicographic
/// order of their orientation strings, or one canonical representative per
/// isomorphism class in increasing canonical order.
pub fn enumerate_tournaments(
    n: usize,
    up_to_iso: bool,
    limits: EnumerationLimits,
) -> Result<Box<dyn Iterator<Item = Tournament> + Send>> {
    if n == 0 {
        return Err(Error::Domain("order must be at least 1".into()));
    }
    if up_to_iso {
        if n > limits.up_to_iso {
            return Err(Error::Resource(format!(
                "isomorphism-free enumeration is capped at n = {} (requested {n}); \
                 raise the cap explicitly, n = 8 has 6880 classes",
                limits.up_to_iso
            )));
        }
        let reps = iso_classes(n)?;
        Ok(Box::new(reps.into_iter()))
    } else {
        if n > limits.labeled {
            return Err(Error::Resource(format!(
                "labeled enumeration is capped at n = {} (requested {n}); \
                 it yields 2^{} tournaments",
                limits.labeled,
                arc_count(n)
            )));
        }
        let m = arc_count(n);
        Ok(Box::new((0u64..1u64 << m).map(move |code| {
            Tournament::from_fn(n, |u, v| {
                let i = crate::tournament::arc_index(n, u, v);
                (code >> (m - 1 - i)) & 1 == 1
            })
            .expect("order already validated")
        })))
    }
}

/// Canonical representatives built by extending each class of order `n - 1`
/// with a new vertex in every possible way.
fn iso_classes(n: usize) -> Result<Vec<Tournament>> {
    let mut reps = vec![Tournament::transitive(1)?];
    for k in 2..=n {
        let mut seen = BTreeSet::new();
        for r in &reps {
            for mask in 0u64..1 << (k - 1) {
                // Bit v of `mask` set means the new vertex beats v.
                let ext = Tournament::from_fn(k, |u, v| {
                    if v == k - 1 {
                        (mask >> u) & 1 == 0
                    } else {
                        r.has_arc(u, v)
                    }
                })?;
                seen.insert(canonical_form(&ext)?);
            }
        }
        reps = seen
            .into_iter()
            .map(|o| Tournament::from_orientation(k, &o))
            .collect::<Result<_>>()?;
    }
    Ok(reps)
}

/// Score sequence (sorted in-degrees); an isomorphism invariant.
pub fn score_sequence(t: &Tournament) -> Vec<usize> {
    let mut d = t.in_degrees();
    d.sort_unstable();
    d
}

/// Vertices of `t` that reach every other vertex.
pub fn spanning_roots(t: &Tournament) -> VertexSet {
    let full = VertexSet::full(t.order());
    (0..t.order())
        .filter(|&v| t.reachable_from(v) == full)
        .collect()
}
