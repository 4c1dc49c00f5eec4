//! Deciding whether an arc-colored tournament has a rainbow spanning
//! out-tree.
//!
//! Depth-first search over partial trees grown from a root. Each node picks
//! one arc leaving the reached set and branches on taking it or ruling it
//! out, so every tree is met at most once. Before branching, a node is
//! discarded when the arcs still usable (unused color, not ruled out, head
//! not yet reached) cannot reach every remaining vertex, or cannot give the
//! remaining vertices in-arcs of pairwise distinct colors (checked as a
//! bipartite matching between vertices and colors).

use serde::{Deserialize, Serialize};

use crate::arborescence::Arborescence;
use crate::coloring::ArcColoring;
use crate::error::{domain, Result};
use crate::tournament::{Tournament, VertexSet};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of search nodes to expand; `None` is unbounded.
    pub budget: Option<u64>,
}

impl SearchConfig {
    pub fn with_budget(budget: u64) -> Self {
        SearchConfig {
            budget: Some(budget),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    NotFound,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<Arborescence>,
    pub nodes_expanded: u64,
    pub prunes: u64,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        self.status == SearchStatus::Found
    }
}

/// Unbounded search; see [`search`].
pub fn has_rainbow_arborescence(t: &Tournament, coloring: &ArcColoring) -> Result<SearchOutcome> {
    search(t, coloring, SearchConfig::default())
}

/// Searches for a rainbow spanning out-tree. Roots are tried by decreasing
/// out-degree, ties by index; arcs are chosen by how few arcs of the same
/// color leave the reached set.
pub fn search(t: &Tournament, coloring: &ArcColoring, config: SearchConfig) -> Result<SearchOutcome> {
    if coloring.len() != t.arc_count() {
        return domain(format!(
            "coloring has {} entries but the tournament has {} arcs",
            coloring.len(),
            t.arc_count()
        ));
    }
    let mut s = Searcher::new(t, coloring, config.budget);
    let n = t.order();
    let mut roots: Vec<usize> = (0..n).collect();
    let out = t.out_degrees();
    roots.sort_by_key(|&v| (std::cmp::Reverse(out[v]), v));
    let full = VertexSet::full(n);
    for root in roots {
        if t.reachable_from(root) != full {
            s.prunes += 1;
            continue;
        }
        s.reset(root);
        match s.dfs() {
            Ok(true) => {
                let witness = Arborescence {
                    root,
                    parent: s.parent.clone(),
                };
                return Ok(s.outcome(SearchStatus::Found, Some(witness)));
            }
            Ok(false) => {}
            Err(Exhausted) => return Ok(s.outcome(SearchStatus::BudgetExhausted, None)),
        }
    }
    Ok(s.outcome(SearchStatus::NotFound, None))
}

struct Exhausted;

#[derive(Clone, Copy)]
struct Arc {
    tail: usize,
    head: usize,
    color: usize,
}

struct Searcher {
    n: usize,
    arcs: Vec<Arc>,
    /// Arc positions entering each vertex.
    into: Vec<Vec<usize>>,
    used: Vec<bool>,
    banned: Vec<bool>,
    parent: Vec<Option<usize>>,
    reached: VertexSet,
    budget: Option<u64>,
    nodes: u64,
    prunes: u64,
    // Scratch space for the matching check.
    owner: Vec<usize>,
    visit_stamp: Vec<u32>,
    stamp: u32,
    frontier_per_color: Vec<u32>,
    options: Vec<Vec<usize>>,
}

const NONE: usize = usize::MAX;

impl Searcher {
    fn new(t: &Tournament, coloring: &ArcColoring, budget: Option<u64>) -> Self {
        let n = t.order();
        let k = coloring.num_colors();
        let arcs: Vec<Arc> = t
            .arcs()
            .into_iter()
            .map(|(i, tail, head)| Arc {
                tail,
                head,
                color: coloring.color(i) as usize,
            })
            .collect();
        let mut into = vec![Vec::new(); n];
        for (i, a) in arcs.iter().enumerate() {
            into[a.head].push(i);
        }
        Searcher {
            n,
            banned: vec![false; arcs.len()],
            arcs,
            into,
            used: vec![false; k],
            parent: vec![None; n],
            reached: VertexSet::EMPTY,
            budget,
            nodes: 0,
            prunes: 0,
            owner: vec![NONE; k],
            visit_stamp: vec![0; k],
            stamp: 0,
            frontier_per_color: vec![0; k],
            options: vec![Vec::new(); n],
        }
    }

    fn reset(&mut self, root: usize) {
        self.used.iter_mut().for_each(|u| *u = false);
        self.banned.iter_mut().for_each(|b| *b = false);
        self.parent.iter_mut().for_each(|p| *p = None);
        self.reached = VertexSet::singleton(root);
    }

    fn outcome(&self, status: SearchStatus, witness: Option<Arborescence>) -> SearchOutcome {
        SearchOutcome {
            status,
            witness,
            nodes_expanded: self.nodes,
            prunes: self.prunes,
        }
    }

    #[inline]
    fn available(&self, i: usize) -> bool {
        let a = self.arcs[i];
        !self.banned[i] && !self.used[a.color] && !self.reached.contains(a.head)
    }

    fn dfs(&mut self) -> std::result::Result<bool, Exhausted> {
        let full = VertexSet::full(self.n);
        if self.reached == full {
            return Ok(true);
        }
        if let Some(b) = self.budget {
            if self.nodes >= b {
                return Err(Exhausted);
            }
        }
        self.nodes += 1;
        if !self.can_still_span() || !self.distinct_in_colors_possible() {
            self.prunes += 1;
            return Ok(false);
        }
        let Some(choice) = self.pick_frontier_arc() else {
            return Ok(false);
        };
        let a = self.arcs[choice];

        self.used[a.color] = true;
        self.parent[a.head] = Some(a.tail);
        self.reached.insert(a.head);
        let found = self.dfs()?;
        if found {
            return Ok(true);
        }
        self.reached.remove(a.head);
        self.parent[a.head] = None;
        self.used[a.color] = false;

        self.banned[choice] = true;
        let found = self.dfs()?;
        self.banned[choice] = false;
        Ok(found)
    }

    /// Every unreached vertex is reachable from the reached set along
    /// available arcs.
    fn can_still_span(&self) -> bool {
        let mut seen = self.reached;
        let mut stack: Vec<usize> = seen.iter().collect();
        while let Some(u) = stack.pop() {
            for v in VertexSet::full(self.n).difference(seen).iter() {
                let usable = self.into[v]
                    .iter()
                    .any(|&i| self.arcs[i].tail == u && self.available(i));
                if usable {
                    seen.insert(v);
                    stack.push(v);
                }
            }
        }
        seen == VertexSet::full(self.n)
    }

    /// Hall-type check: the unreached vertices can be assigned pairwise
    /// distinct colors, each carried by an available in-arc.
    fn distinct_in_colors_possible(&mut self) -> bool {
        let unreached = VertexSet::full(self.n).difference(self.reached);
        let mut touched = Vec::new();
        for v in unreached.iter() {
            let mut opts = std::mem::take(&mut self.options[v]);
            opts.clear();
            for &i in &self.into[v] {
                if self.available(i) {
                    let c = self.arcs[i].color;
                    if !opts.contains(&c) {
                        opts.push(c);
                    }
                }
            }
            self.options[v] = opts;
        }
        let mut ok = true;
        for v in unreached.iter() {
            self.stamp = self.stamp.wrapping_add(1);
            if self.stamp == 0 {
                self.visit_stamp.iter_mut().for_each(|s| *s = 0);
                self.stamp = 1;
            }
            if !self.augment(v, &mut touched) {
                ok = false;
                break;
            }
        }
        for c in touched {
            self.owner[c] = NONE;
        }
        ok
    }

    fn augment(&mut self, v: usize, touched: &mut Vec<usize>) -> bool {
        for idx in 0..self.options[v].len() {
            let c = self.options[v][idx];
            if self.visit_stamp[c] == self.stamp {
                continue;
            }
            self.visit_stamp[c] = self.stamp;
            let holder = self.owner[c];
            if holder == NONE || self.augment(holder, touched) {
                if holder == NONE {
                    touched.push(c);
                }
                self.owner[c] = v;
                return true;
            }
        }
        false
    }

    /// The frontier arc whose color has the fewest frontier arcs, then whose
    /// head has the fewest available in-arcs, then lowest index.
    fn pick_frontier_arc(&mut self) -> Option<usize> {
        let frontier: Vec<usize> = (0..self.arcs.len())
            .filter(|&i| self.available(i) && self.reached.contains(self.arcs[i].tail))
            .collect();
        for &i in &frontier {
            self.frontier_per_color[self.arcs[i].color] += 1;
        }
        let best = frontier.iter().copied().min_by_key(|&i| {
            let a = self.arcs[i];
            let head_opts = self.into[a.head].iter().filter(|&&j| self.available(j)).count();
            (self.frontier_per_color[a.color], head_opts, i)
        });
        for &i in &frontier {
            self.frontier_per_color[self.arcs[i].color] = 0;
        }
        best
    }
}
