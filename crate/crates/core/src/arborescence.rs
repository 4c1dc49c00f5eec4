//! Spanning out-trees of tournaments: representation, exhaustive
//! enumeration and counting by the directed matrix-tree theorem.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::coloring::ArcColoring;
use crate::error::{domain, Error, Result};
use crate::matrix::determinant;
use crate::tournament::{arc_index, Tournament, VertexSet};

/// Largest order accepted by [`enumerate_arborescences`].
pub const ENUMERATION_CAP: usize = 7;

/// A spanning out-tree: a root and the tree parent of every other vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arborescence {
    pub root: usize,
    /// `parent[root]` is `None`.
    pub parent: Vec<Option<usize>>,
}

impl Arborescence {
    pub fn order(&self) -> usize {
        self.parent.len()
    }

    /// Tree arcs `(parent, child)` by child index.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)))
            .collect()
    }

    /// Arc indices of the tree arcs, by child index.
    pub fn arc_ids(&self) -> Vec<usize> {
        let n = self.order();
        self.arcs().into_iter().map(|(u, v)| arc_index(n, u, v)).collect()
    }

    /// Colors of the tree arcs under `coloring`, ascending.
    pub fn colors(&self, coloring: &ArcColoring) -> Vec<u32> {
        let mut c: Vec<u32> = self.arc_ids().into_iter().map(|i| coloring.color(i)).collect();
        c.sort_unstable();
        c
    }

    /// Checks that this is a spanning out-tree of `t` rooted at `root`.
    pub fn validate(&self, t: &Tournament) -> Result<()> {
        let n = t.order();
        if self.parent.len() != n {
            return domain(format!("parent map has {} entries, expected {n}", self.parent.len()));
        }
        if self.root >= n || self.parent[self.root].is_some() {
            return domain("root must be a vertex without a parent");
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in self.parent.iter().enumerate() {
            match p {
                None if v != self.root => return domain(format!("vertex {v} has no parent")),
                Some(p) if *p >= n || !t.has_arc(*p, v) => {
                    return domain(format!("({p}, {v}) is not an arc of the tournament"))
                }
                Some(p) => children[*p].push(v),
                None => {}
            }
        }
        let mut seen = VertexSet::singleton(self.root);
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            for &c in &children[u] {
                seen.insert(c);
                stack.push(c);
            }
        }
        if seen != VertexSet::full(n) {
            return domain("not every vertex is reachable from the root");
        }
        Ok(())
    }

    /// Whether the tree arcs carry pairwise distinct colors.
    pub fn is_rainbow(&self, coloring: &ArcColoring) -> bool {
        let c = self.colors(coloring);
        c.windows(2).all(|w| w[0] != w[1])
    }
}

/// Every spanning out-tree of `t` rooted at `root`, each exactly once.
///
/// The tree is grown from the root. At each step the lowest-indexed arc
/// leaving the reached set that has not been ruled out is either taken or
/// ruled out for the rest of that branch.
pub fn enumerate_arborescences(t: &Tournament, root: usize) -> Result<Vec<Arborescence>> {
    enumerate_arborescences_capped(t, root, ENUMERATION_CAP)
}

pub fn enumerate_arborescences_capped(
    t: &Tournament,
    root: usize,
    cap: usize,
) -> Result<Vec<Arborescence>> {
    let n = t.order();
    if n > cap {
        return Err(Error::Resource(format!(
            "arborescence enumeration is capped at n = {cap}, got {n}"
        )));
    }
    if root >= n {
        return domain(format!("root {root} out of range for n = {n}"));
    }
    let mut out = Vec::new();
    let mut parent = vec![None; n];
    let mut banned = vec![false; t.arc_count()];
    grow(t, root, VertexSet::singleton(root), &mut parent, &mut banned, &mut out);
    Ok(out)
}

fn grow(
    t: &Tournament,
    root: usize,
    reached: VertexSet,
    parent: &mut Vec<Option<usize>>,
    banned: &mut Vec<bool>,
    out: &mut Vec<Arborescence>,
) {
    let n = t.order();
    if reached == VertexSet::full(n) {
        out.push(Arborescence {
            root,
            parent: parent.clone(),
        });
        return;
    }
    let next = t.arcs().into_iter().find(|&(i, u, v)| {
        !banned[i] && reached.contains(u) && !reached.contains(v)
    });
    let Some((i, u, v)) = next else {
        return;
    };
    parent[v] = Some(u);
    let mut with = reached;
    with.insert(v);
    grow(t, root, with, parent, banned, out);
    parent[v] = None;
    banned[i] = true;
    grow(t, root, reached, parent, banned, out);
    banned[i] = false;
}

/// Brute-force rainbow check: every spanning out-tree of the tournament,
/// over all roots, stored as arc-index lists.
#[derive(Clone, Debug)]
pub struct RainbowOracle {
    trees: Vec<Vec<usize>>,
}

impl RainbowOracle {
    pub fn new(t: &Tournament) -> Result<Self> {
        let mut trees = Vec::new();
        for r in 0..t.order() {
            trees.extend(enumerate_arborescences(t, r)?.iter().map(|a| a.arc_ids()));
        }
        Ok(RainbowOracle { trees })
    }

    pub fn tree_count(&self) -> usize {
        self.trees.len()
    }

    /// Whether some spanning out-tree has pairwise distinct colors.
    pub fn has_rainbow(&self, coloring: &ArcColoring) -> bool {
        let mut seen: Vec<u32> = Vec::with_capacity(64);
        self.trees.iter().any(|tree| {
            seen.clear();
            tree.iter().all(|&i| {
                let c = coloring.color(i);
                if seen.contains(&c) {
                    false
                } else {
                    seen.push(c);
                    true
                }
            })
        })
    }
}

/// Number of spanning out-trees rooted at `root`: the determinant of the
/// in-degree Laplacian `L = D_in - A` with the root's row and column
/// removed, computed exactly.
pub fn count_arborescences(t: &Tournament, root: usize) -> Result<BigUint> {
    let n = t.order();
    if root >= n {
        return domain(format!("root {root} out of range for n = {n}"));
    }
    let keep: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let minor: Vec<Vec<BigInt>> = keep
        .iter()
        .map(|&u| {
            keep.iter()
                .map(|&v| {
                    if u == v {
                        BigInt::from(t.in_degree(v).expect("vertex in range"))
                    } else if t.has_arc(u, v) {
                        BigInt::from(-1)
                    } else {
                        BigInt::from(0)
                    }
                })
                .collect()
        })
        .collect();
    let d = determinant(minor);
    Ok(d.to_biguint().expect("arborescence counts are nonnegative"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{enumerate_tournaments, EnumerationLimits};

    fn cycle3() -> Tournament {
        Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    /// Brute force over parent maps: each non-root vertex picks one
    /// in-neighbor, keep the acyclic choices.
    fn brute_force(t: &Tournament, root: usize) -> Vec<Arborescence> {
        let n = t.order();
        let mut out = Vec::new();
        let choices: Vec<Vec<usize>> = (0..n)
            .map(|v| if v == root { vec![usize::MAX] } else { t.in_neighbors(v).to_vec() })
            .collect();
        let mut idx = vec![0usize; n];
        if choices.iter().any(|c| c.is_empty()) {
            return out;
        }
        loop {
            let parent: Vec<Option<usize>> = (0..n)
                .map(|v| if v == root { None } else { Some(choices[v][idx[v]]) })
                .collect();
            let a = Arborescence { root, parent };
            if a.validate(t).is_ok() {
                out.push(a);
            }
            let mut v = 0;
            loop {
                if v == n {
                    out.sort();
                    return out;
                }
                idx[v] += 1;
                if idx[v] < choices[v].len() {
                    break;
                }
                idx[v] = 0;
                v += 1;
            }
        }
    }

    #[test]
    fn small_examples() {
        let c = cycle3();
        let e = enumerate_arborescences(&c, 0).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].arcs(), vec![(0, 1), (1, 2)]);
        let t = Tournament::transitive(3).unwrap();
        assert_eq!(enumerate_arborescences(&t, 0).unwrap().len(), 2);
        assert_eq!(enumerate_arborescences(&t, 1).unwrap().len(), 0);
        for r in 0..3 {
            assert_eq!(count_arborescences(&c, r).unwrap(), BigUint::from(1u32));
        }
        let counts: Vec<u32> = (0..3)
            .map(|r| count_arborescences(&t, r).unwrap().try_into().unwrap())
            .collect();
        assert_eq!(counts, vec![2, 0, 0]);
        let single = Tournament::transitive(1).unwrap();
        assert_eq!(enumerate_arborescences(&single, 0).unwrap().len(), 1);
        assert_eq!(count_arborescences(&single, 0).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn enumeration_matches_brute_force_and_matrix_tree() {
        for n in 1..=5 {
            for t in enumerate_tournaments(n, false, EnumerationLimits::default()).unwrap() {
                let mut total = 0usize;
                for r in 0..n {
                    let mut e = enumerate_arborescences(&t, r).unwrap();
                    for a in &e {
                        a.validate(&t).unwrap();
                    }
                    let len = e.len();
                    e.sort();
                    e.dedup();
                    assert_eq!(e.len(), len, "duplicates");
                    assert_eq!(e, brute_force(&t, r));
                    assert_eq!(count_arborescences(&t, r).unwrap(), BigUint::from(len));
                    total += len;
                }
                assert!(total >= 1);
            }
        }
    }

    #[test]
    fn validation_rejects_bad_trees() {
        let t = Tournament::transitive(3).unwrap();
        let bad_arc = Arborescence {
            root: 0,
            parent: vec![None, Some(2), Some(0)],
        };
        assert!(bad_arc.validate(&t).is_err());
        let orphan = Arborescence {
            root: 0,
            parent: vec![None, Some(0), None],
        };
        assert!(orphan.validate(&t).is_err());
        let ok = Arborescence {
            root: 0,
            parent: vec![None, Some(0), Some(1)],
        };
        ok.validate(&t).unwrap();
        assert!(ok.is_rainbow(&ArcColoring::rainbow(3)));
        assert!(!ok.is_rainbow(&ArcColoring::monochromatic(3)));
    }

    #[test]
    fn caps() {
        let t = Tournament::random(8, 1).unwrap();
        assert!(matches!(enumerate_arborescences(&t, 0), Err(Error::Resource(_))));
        assert!(count_arborescences(&t, 9).is_err());
        // Counting has no cap.
        let big = Tournament::random(40, 3).unwrap();
        let total: BigUint = (0..40).map(|r| count_arborescences(&big, r).unwrap()).sum();
        assert!(total >= BigUint::from(1u32));
    }
}
