//! Tournaments, arc indexing and basic digraph routines.
//!
//! Arcs are indexed by unordered vertex pairs `{u, v}` with `u < v`, listed
//! in lexicographic order of `(u, v)`. The orientation bit of pair `i` is 1
//! when the arc runs from the smaller to the larger endpoint. Colorings and
//! file formats are defined against this ordering.

use std::cmp::Ordering;
use std::fmt;

use rand::RngCore;

use crate::error::{domain, Error, Result};
use crate::rng;

/// Largest supported order. Adjacency rows are single `u64` masks.
pub const MAX_ORDER: usize = 64;

/// Number of arcs of a tournament of order `n`.
pub const fn arc_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Index of the pair `{u, v}` (in either order) among the `C(n,2)` pairs.
///
/// # Panics
/// Panics if `u == v` or either vertex is `>= n`.
#[inline]
pub fn arc_index(n: usize, u: usize, v: usize) -> usize {
    assert!(u != v && u < n && v < n, "invalid pair ({u}, {v}) for n = {n}");
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// Inverse of [`arc_index`]: the pair `(u, v)`, `u < v`, with the given index.
pub fn arc_pair(n: usize, index: usize) -> (usize, usize) {
    assert!(index < arc_count(n), "arc index {index} out of range for n = {n}");
    let mut u = 0;
    let mut start = 0;
    loop {
        let row = n - u - 1;
        if index < start + row {
            return (u, u + 1 + index - start);
        }
        start += row;
        u += 1;
    }
}

/// A set of vertices of a digraph with at most [`MAX_ORDER`] vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        (self.0 >> v) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// Orientation bits in canonical arc order, packed most significant bit first
/// so that comparing words compares the bit strings lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    len: usize,
    words: Vec<u64>,
}

impl Orientation {
    pub fn zeros(len: usize) -> Self {
        Orientation {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut o = Orientation::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                o.set(i, true);
            }
        }
        o
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (63 - i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (63 - i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

impl Ord for Orientation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.cmp(&other.words))
    }
}

impl PartialOrd for Orientation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Orientation({self})")
    }
}

/// A three-vertex set with its in-degree sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub vertices: [usize; 3],
    pub degree_sum: usize,
}

impl Triple {
    /// Builds the triple `{a, b, c}` of `t`, sorting the vertices.
    pub fn new(t: &Tournament, a: usize, b: usize, c: usize) -> Result<Self> {
        let mut vertices = [a, b, c];
        vertices.sort_unstable();
        if vertices[0] == vertices[1] || vertices[1] == vertices[2] {
            return domain(format!("triple {a}, {b}, {c} has repeated vertices"));
        }
        if vertices[2] >= t.order() {
            return domain(format!(
                "triple vertex {} out of range for n = {}",
                vertices[2],
                t.order()
            ));
        }
        let degree_sum = vertices.iter().map(|&v| t.in_deg(v)).sum();
        Ok(Triple {
            vertices,
            degree_sum,
        })
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn as_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }
}

/// An orientation of the complete graph on vertices `0..n`.
///
/// Rows of the adjacency matrix are stored as out-neighbor masks, so the
/// type is limited to [`MAX_ORDER`] vertices. Values are immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    out: Vec<u64>,
}

impl Tournament {
    fn check_order(n: usize) -> Result<()> {
        if n == 0 {
            return domain("a tournament needs at least one vertex");
        }
        if n > MAX_ORDER {
            return Err(Error::Resource(format!(
                "order {n} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        Ok(())
    }

    /// Builds a tournament from its orientation bits in canonical arc order.
    pub fn from_orientation(n: usize, bits: &Orientation) -> Result<Self> {
        Self::check_order(n)?;
        if bits.len() != arc_count(n) {
            return domain(format!(
                "expected {} orientation bits for n = {n}, got {}",
                arc_count(n),
                bits.len()
            ));
        }
        let mut out = vec![0u64; n];
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits.get(i) {
                    out[u] |= 1 << v;
                } else {
                    out[v] |= 1 << u;
                }
                i += 1;
            }
        }
        Ok(Tournament { n, out })
    }

    pub fn from_bools(n: usize, bits: &[bool]) -> Result<Self> {
        Self::from_orientation(n, &Orientation::from_bools(bits))
    }

    /// Builds a tournament from `n` and a closure deciding whether `u -> v`
    /// for each pair `u < v`.
    pub fn from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        Self::check_order(n)?;
        let mut out = vec![0u64; n];
        for u in 0..n {
            for v in u + 1..n {
                if forward(u, v) {
                    out[u] |= 1 << v;
                } else {
                    out[v] |= 1 << u;
                }
            }
        }
        Ok(Tournament { n, out })
    }

    /// Builds a tournament from an explicit arc list. Every pair must be
    /// covered by exactly one arc.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        Self::check_order(n)?;
        let mut seen = vec![false; arc_count(n)];
        let mut out = vec![0u64; n];
        for &(u, v) in arcs {
            if u >= n || v >= n || u == v {
                return domain(format!("invalid arc ({u}, {v}) for n = {n}"));
            }
            let i = arc_index(n, u, v);
            if seen[i] {
                return domain(format!("pair {{{u}, {v}}} given twice"));
            }
            seen[i] = true;
            out[u] |= 1 << v;
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            let (u, v) = arc_pair(n, i);
            return domain(format!("pair {{{u}, {v}}} has no arc"));
        }
        Ok(Tournament { n, out })
    }

    /// The transitive tournament with `i -> j` iff `i < j`.
    pub fn transitive(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| true)
    }

    /// The circulant tournament on `Z_n` with `i -> i + s` for `s` in
    /// `connection`. The connection set must contain exactly one of `s`,
    /// `n - s` for every nonzero residue.
    pub fn circulant(n: usize, connection: &[usize]) -> Result<Self> {
        Self::check_order(n)?;
        let mut has = vec![false; n];
        for &s in connection {
            if s == 0 || s >= n || has[s] {
                return domain(format!("invalid connection element {s} for n = {n}"));
            }
            has[s] = true;
        }
        for s in 1..n {
            if has[s] == has[n - s] {
                return domain(format!(
                    "connection set must contain exactly one of {s} and {}",
                    n - s
                ));
            }
        }
        Self::from_fn(n, |u, v| has[v - u])
    }

    /// The regular tournament on an odd number of vertices, `i -> i + s` for
    /// `s = 1..=(n-1)/2`.
    pub fn rotational(n: usize) -> Result<Self> {
        if n.is_multiple_of(2) {
            return domain(format!("a regular tournament needs odd order, got {n}"));
        }
        let conn: Vec<usize> = (1..=(n - 1) / 2).collect();
        Self::circulant(n, &conn)
    }

    /// A uniformly random labeled tournament: orientation bit `i` is bit
    /// `63 - i % 64` of the `(i / 64)`-th SplitMix64 output for `seed`.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        Self::check_order(n)?;
        let m = arc_count(n);
        let mut r = rng::rng(seed);
        let mut bits = Orientation::zeros(m);
        for w in bits.words.iter_mut() {
            *w = r.next_u64();
        }
        if !m.is_multiple_of(64) {
            let last = bits.words.len() - 1;
            bits.words[last] &= !(u64::MAX >> (m % 64));
        }
        Self::from_orientation(n, &bits)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        arc_count(self.n)
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        (self.out[u] >> v) & 1 == 1
    }

    #[inline]
    pub fn out_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.out[v])
    }

    #[inline]
    pub fn in_neighbors(&self, v: usize) -> VertexSet {
        VertexSet::full(self.n).difference(VertexSet(self.out[v] | (1 << v)))
    }

    #[inline]
    pub(crate) fn in_deg(&self, v: usize) -> usize {
        self.n - 1 - self.out[v].count_ones() as usize
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return domain(format!("vertex {v} out of range for n = {}", self.n));
        }
        Ok(())
    }

    pub fn in_degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.in_deg(v))
    }

    pub fn out_degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.out[v].count_ones() as usize)
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.in_deg(v)).collect()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        self.out.iter().map(|w| w.count_ones() as usize).collect()
    }

    /// `(tail, head)` of the arc on pair `index`.
    #[inline]
    pub fn arc(&self, index: usize) -> (usize, usize) {
        let (u, v) = arc_pair(self.n, index);
        if self.has_arc(u, v) {
            (u, v)
        } else {
            (v, u)
        }
    }

    /// All arcs as `(index, tail, head)` in canonical order.
    pub fn arcs(&self) -> Vec<(usize, usize, usize)> {
        let mut arcs = Vec::with_capacity(self.arc_count());
        for u in 0..self.n {
            for v in u + 1..self.n {
                let i = arcs.len();
                if self.has_arc(u, v) {
                    arcs.push((i, u, v));
                } else {
                    arcs.push((i, v, u));
                }
            }
        }
        arcs
    }

    /// Indices of the in-arcs of `v`.
    pub fn in_arcs(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n;
        self.in_neighbors(v).iter().map(move |u| arc_index(n, u, v))
    }

    pub fn orientation(&self) -> Orientation {
        let mut bits = Orientation::zeros(self.arc_count());
        let mut i = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                bits.set(i, self.has_arc(u, v));
                i += 1;
            }
        }
        bits
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return domain("permutation length differs from the order");
        }
        let mut seen = VertexSet::EMPTY;
        for &p in perm {
            if p >= self.n || seen.contains(p) {
                return domain("not a permutation");
            }
            seen.insert(p);
        }
        let mut out = vec![0u64; self.n];
        for u in 0..self.n {
            for v in self.out_neighbors(u).iter() {
                out[perm[u]] |= 1 << perm[v];
            }
        }
        Ok(Tournament { n: self.n, out })
    }

    /// The subtournament induced on `keep`, vertices renumbered in
    /// increasing order.
    pub fn induced(&self, keep: VertexSet) -> Result<Self> {
        let verts = keep.to_vec();
        if verts.is_empty() || verts[verts.len() - 1] >= self.n {
            return domain("induced vertex set must be a nonempty subset of V(T)");
        }
        Self::from_fn(verts.len(), |a, b| self.has_arc(verts[a], verts[b]))
    }

    /// Minimum in-degree sum over all three-vertex sets, and every triple
    /// attaining it in lexicographic order.
    pub fn delta3_minus(&self) -> Result<(usize, Vec<Triple>)> {
        if self.n < 3 {
            return domain(format!("delta3 needs n >= 3, got n = {}", self.n));
        }
        let mut degs = self.in_degrees();
        degs.sort_unstable();
        let value = degs[0] + degs[1] + degs[2];
        // Every vertex of a minimizing triple has in-degree at most the third
        // smallest value.
        let bound = degs[2];
        let cand: Vec<usize> = (0..self.n).filter(|&v| self.in_deg(v) <= bound).collect();
        let mut witnesses = Vec::new();
        for (i, &a) in cand.iter().enumerate() {
            for (j, &b) in cand.iter().enumerate().skip(i + 1) {
                for &c in &cand[j + 1..] {
                    let s = self.in_deg(a) + self.in_deg(b) + self.in_deg(c);
                    if s == value {
                        witnesses.push(Triple {
                            vertices: [a, b, c],
                            degree_sum: s,
                        });
                    }
                }
            }
        }
        Ok((value, witnesses))
    }

    /// `C(n,2) - delta3(T) + 2`.
    pub fn h_value(&self) -> Result<usize> {
        let (d, _) = self.delta3_minus()?;
        Ok(self.arc_count() + 2 - d)
    }

    /// A Hamiltonian path by insertion: each vertex in index order is placed
    /// before the first path vertex it beats, provided the previous path
    /// vertex beats it.
    pub fn hamiltonian_path(&self) -> Vec<usize> {
        let mut path: Vec<usize> = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let pos = (0..=path.len())
                .find(|&i| {
                    let before_ok = i == 0 || self.has_arc(path[i - 1], v);
                    let after_ok = i == path.len() || self.has_arc(v, path[i]);
                    before_ok && after_ok
                })
                .expect("a tournament always admits an insertion point");
            path.insert(pos, v);
        }
        path
    }

    /// Vertices reachable from `x` along arcs of the tournament.
    pub fn reachable_from(&self, x: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(x);
        let mut stack = vec![x];
        while let Some(u) = stack.pop() {
            let new = self.out[u] & !seen.0;
            seen.0 |= new;
            stack.extend(VertexSet(new).iter());
        }
        seen
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament(n={}, {})", self.n, self.orientation())
    }
}

/// Vertices reachable from `x` in the digraph on `n` vertices with the given
/// arcs, including `x`. Breadth-first, neighbors in index order.
pub fn reachable_set(n: usize, arcs: &[(usize, usize)], x: usize) -> VertexSet {
    assert!(n <= MAX_ORDER && x < n);
    let mut adj = vec![0u64; n];
    for &(u, v) in arcs {
        assert!(u < n && v < n, "arc ({u}, {v}) out of range");
        adj[u] |= 1 << v;
    }
    let mut seen = VertexSet::singleton(x);
    let mut queue = std::collections::VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for v in VertexSet(adj[u] & !seen.0).iter() {
            seen.insert(v);
            queue.push_back(v);
        }
    }
    seen
}
