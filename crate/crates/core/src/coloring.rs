//! Arc colorings, per-vertex color statistics and the extremal coloring.

use std::fmt;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::tournament::{Tournament, Triple, VertexSet};

/// A surjective map from arc indices to colors `0..k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcColoring {
    colors: Vec<u32>,
    k: usize,
}

impl ArcColoring {
    /// Wraps a color vector, checking that the colors used are exactly
    /// `0..=max`.
    pub fn new(colors: Vec<u32>) -> Result<Self> {
        let Some(&max) = colors.iter().max() else {
            return Ok(ArcColoring { colors, k: 0 });
        };
        let k = max as usize + 1;
        let mut used = vec![false; k];
        for &c in &colors {
            used[c as usize] = true;
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return domain(format!("color {c} is unused; colors must be 0..{k} and all used"));
        }
        Ok(ArcColoring { colors, k })
    }

    /// Trusted constructor for vectors known to be surjective onto `0..k`.
    pub(crate) fn from_parts(colors: Vec<u32>, k: usize) -> Self {
        debug_assert_eq!(ArcColoring::new(colors.clone()).unwrap().k, k);
        ArcColoring { colors, k }
    }

    /// Builds a coloring from arbitrary labels, renaming them to
    /// `0..k` by first occurrence.
    pub fn from_labels(labels: &[u32]) -> Self {
        let mut map = std::collections::HashMap::new();
        let colors = labels
            .iter()
            .map(|l| {
                let next = map.len() as u32;
                *map.entry(*l).or_insert(next)
            })
            .collect();
        ArcColoring::from_parts(colors, map.len())
    }

    /// A random coloring of `m` arcs using exactly `k` colors: a uniformly
    /// random set of `k` arcs receives the colors `0..k` in order and every
    /// other arc draws a color uniformly.
    pub fn random_surjective<R: rand::Rng + ?Sized>(m: usize, k: usize, rng: &mut R) -> Result<Self> {
        if k == 0 || k > m {
            return domain(format!("need 1 <= k <= m, got m = {m}, k = {k}"));
        }
        let mut slots: Vec<usize> = (0..m).collect();
        let (chosen, _) = slots.partial_shuffle(rng, k);
        let mut colors = vec![u32::MAX; m];
        for (c, &slot) in chosen.iter().enumerate() {
            colors[slot] = c as u32;
        }
        for c in colors.iter_mut().filter(|c| **c == u32::MAX) {
            *c = rng.gen_range(0..k as u32);
        }
        Ok(ArcColoring::from_parts(colors, k))
    }

    /// Every arc its own color.
    pub fn rainbow(m: usize) -> Self {
        ArcColoring::from_parts((0..m as u32).collect(), m)
    }

    /// One color on every arc.
    pub fn monochromatic(m: usize) -> Self {
        ArcColoring::from_parts(vec![0; m], usize::from(m > 0))
    }

    #[inline]
    pub fn color(&self, arc: usize) -> u32 {
        self.colors[arc]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Number of arcs.
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors.
    pub fn num_colors(&self) -> usize {
        self.k
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.colors {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// Relabels colors by first occurrence, giving the restricted-growth
    /// representative of the same partition.
    pub fn normalized(&self) -> ArcColoring {
        let mut map = vec![u32::MAX; self.k];
        let mut next = 0;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if map[c as usize] == u32::MAX {
                    map[c as usize] = next;
                    next += 1;
                }
                map[c as usize]
            })
            .collect();
        ArcColoring::from_parts(colors, self.k)
    }

    /// Whether the colors are in restricted-growth form.
    pub fn is_normalized(&self) -> bool {
        let mut max: i64 = -1;
        for &c in &self.colors {
            if c as i64 > max + 1 {
                return false;
            }
            max = max.max(c as i64);
        }
        true
    }

    fn check_for(&self, t: &Tournament) -> Result<()> {
        if self.colors.len() != t.arc_count() {
            return domain(format!(
                "coloring has {} entries but the tournament has {} arcs",
                self.colors.len(),
                t.arc_count()
            ));
        }
        Ok(())
    }
}

impl fmt::Debug for ArcColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArcColoring(k={}, {:?})", self.k, self.colors)
    }
}

/// Per-color and per-vertex statistics of a coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorStats {
    pub class_sizes: Vec<usize>,
    /// Colors used on exactly one arc, ascending.
    pub singulars: Vec<u32>,
    /// `colors_at[x]`: colors all of whose arcs are incident to `x`, ascending.
    pub colors_at: Vec<Vec<u32>>,
}

impl ColorStats {
    /// `c(x)`, the number of colors exclusive to arcs at `x`.
    pub fn c(&self, x: usize) -> usize {
        self.colors_at[x].len()
    }

    pub fn is_singular(&self, color: u32) -> bool {
        self.class_sizes[color as usize] == 1
    }

    pub fn exclusive_to(&self, x: usize, color: u32) -> bool {
        self.colors_at[x].binary_search(&color).is_ok()
    }
}

pub fn color_stats(t: &Tournament, coloring: &ArcColoring) -> Result<ColorStats> {
    coloring.check_for(t)?;
    let n = t.order();
    let k = coloring.num_colors();
    let class_sizes = coloring.class_sizes();
    // Intersection of the endpoint sets of all arcs of each color.
    let mut common = vec![VertexSet::full(n); k];
    for (i, u, v) in t.arcs() {
        let c = coloring.color(i) as usize;
        common[c] = common[c].intersection(VertexSet::singleton(u).union(VertexSet::singleton(v)));
    }
    let mut colors_at = vec![Vec::new(); n];
    for (c, set) in common.iter().enumerate() {
        for x in set.iter() {
            colors_at[x].push(c as u32);
        }
    }
    let singulars = (0..k as u32)
        .filter(|&c| class_sizes[c as usize] == 1)
        .collect();
    Ok(ColorStats {
        class_sizes,
        singulars,
        colors_at,
    })
}

/// Classification of a vertex under a coloring by how its in-arcs are colored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexType {
    /// Some in-arc carries a color exclusive to the vertex.
    Type1,
    /// No in-arc color is exclusive to the vertex and the in-arcs carry at
    /// least two colors.
    Type2,
    /// No in-arc color is exclusive to the vertex and all in-arcs share one
    /// color. A vertex with no in-arcs falls here.
    Type3,
}

pub fn classify_vertex(t: &Tournament, coloring: &ArcColoring, x: usize) -> Result<VertexType> {
    let stats = color_stats(t, coloring)?;
    if x >= t.order() {
        return domain(format!("vertex {x} out of range for n = {}", t.order()));
    }
    Ok(classify_with(t, coloring, &stats, x))
}

/// [`classify_vertex`] with precomputed statistics.
pub fn classify_with(t: &Tournament, coloring: &ArcColoring, stats: &ColorStats, x: usize) -> VertexType {
    let mut first = None;
    let mut several = false;
    for a in t.in_arcs(x) {
        let c = coloring.color(a);
        if stats.exclusive_to(x, c) {
            return VertexType::Type1;
        }
        match first {
            None => first = Some(c),
            Some(f) if f != c => several = true,
            _ => {}
        }
    }
    if several {
        VertexType::Type2
    } else {
        VertexType::Type3
    }
}

/// Types of all vertices in index order.
pub fn classify_all(t: &Tournament, coloring: &ArcColoring) -> Result<Vec<VertexType>> {
    let stats = color_stats(t, coloring)?;
    Ok((0..t.order())
        .map(|x| classify_with(t, coloring, &stats, x))
        .collect())
}

/// The coloring that paints every in-arc of the three given vertices with
/// color 0 and gives every other arc its own color, numbered in canonical
/// arc order. It uses `C(n,2) - (in-degree sum) + 1` colors.
pub fn extremal_coloring(t: &Tournament, triple: [usize; 3]) -> Result<ArcColoring> {
    let tr = Triple::new(t, triple[0], triple[1], triple[2])?;
    let black = tr.as_set();
    let mut next = 1u32;
    let colors: Vec<u32> = t
        .arcs()
        .into_iter()
        .map(|(_, _, head)| {
            if black.contains(head) {
                0
            } else {
                next += 1;
                next - 1
            }
        })
        .collect();
    let k = next as usize;
    debug_assert_eq!(k, t.arc_count() - tr.degree_sum + 1);
    Ok(ArcColoring::from_parts(colors, k))
}

/// Recolors every arc of color `drop` with `keep`, then shifts the colors
/// above `drop` down by one so the ids stay contiguous.
pub fn merge_colors(coloring: &ArcColoring, keep: u32, drop: u32) -> Result<ArcColoring> {
    let k = coloring.num_colors() as u32;
    if keep >= k || drop >= k {
        return domain(format!("colors {keep} and {drop} must both be below {k}"));
    }
    if keep == drop {
        return domain("cannot merge a color with itself");
    }
    let colors = coloring
        .colors
        .iter()
        .map(|&c| {
            let c = if c == drop { keep } else { c };
            if c > drop {
                c - 1
            } else {
                c
            }
        })
        .collect();
    Ok(ArcColoring::from_parts(colors, coloring.num_colors() - 1))
}

/// Whether `coloring` has the extremal shape for some triple in `triples`:
/// all in-arcs of the triple share one color and every other arc has a
/// singular color. Returns the first matching triple.
pub fn matching_extremal_triple(
    t: &Tournament,
    coloring: &ArcColoring,
    triples: &[Triple],
) -> Result<Option<Triple>> {
    let stats = color_stats(t, coloring)?;
    'triples: for tr in triples {
        let set = tr.as_set();
        let mut black = None;
        for (i, _, head) in t.arcs() {
            let c = coloring.color(i);
            if set.contains(head) {
                match black {
                    None => black = Some(c),
                    Some(b) if b != c => continue 'triples,
                    _ => {}
                }
            } else if !stats.is_singular(c) {
                continue 'triples;
            }
        }
        return Ok(Some(*tr));
    }
    Ok(None)
}
