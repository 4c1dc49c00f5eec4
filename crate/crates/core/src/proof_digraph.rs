//! Maximal rainbow spanning subdigraph anchored at an arc.
//!
//! For an arc `x -> y`, the subdigraph keeps `x -> y`, drops every other
//! in-arc of `x` and `y`, and is otherwise a maximal rainbow set of arcs. Its
//! size is the total number of colors minus `k(x, y)`, the number of colors
//! that occur only on the dropped arcs.

use crate::coloring::ArcColoring;
use crate::error::{domain, Result};
use crate::tournament::{reachable_set, Tournament, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofDigraph {
    pub n: usize,
    /// `(tail, head)` pairs in the order they were added; `x -> y` first.
    pub arcs: Vec<(usize, usize)>,
    pub arc_ids: Vec<usize>,
    pub anchor: (usize, usize),
    pub k_xy: usize,
}

impl ProofDigraph {
    /// Vertices reachable from the anchor's tail.
    pub fn reachable_from_anchor(&self) -> VertexSet {
        reachable_set(self.n, &self.arcs, self.anchor.0)
    }
}

/// Greedy construction: starting from `x -> y`, scan the arcs whose head is
/// neither `x` nor `y` in canonical order and keep each one whose color is
/// not yet present.
pub fn proof_digraph(t: &Tournament, coloring: &ArcColoring, x: usize, y: usize) -> Result<ProofDigraph> {
    let n = t.order();
    if coloring.len() != t.arc_count() {
        return domain("coloring does not match the tournament");
    }
    if x >= n || y >= n || x == y || !t.has_arc(x, y) {
        return domain(format!("({x}, {y}) is not an arc of the tournament"));
    }
    let mut used = vec![false; coloring.num_colors()];
    let anchor_id = crate::tournament::arc_index(n, x, y);
    used[coloring.color(anchor_id) as usize] = true;
    let mut arcs = vec![(x, y)];
    let mut arc_ids = vec![anchor_id];
    for (i, tail, head) in t.arcs() {
        if head == x || head == y {
            continue;
        }
        let c = coloring.color(i) as usize;
        if !used[c] {
            used[c] = true;
            arcs.push((tail, head));
            arc_ids.push(i);
        }
    }
    let k_xy = coloring.num_colors() - arcs.len();
    Ok(ProofDigraph {
        n,
        arcs,
        arc_ids,
        anchor: (x, y),
        k_xy,
    })
}
