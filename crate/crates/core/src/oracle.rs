//! Exhaustive backtracking search for d-divisible graceful (alpha-)labelings
//! of small graphs.
//!
//! Vertices are labelled one at a time in a fixed order. A branch is cut as
//! soon as a label repeats, an edge difference repeats or is forbidden, or
//! (in alpha mode) neither orientation of the bipartition can still separate
//! the classes. Since there are exactly `e` allowed differences, a complete
//! assignment that survives these cuts is a valid labeling.
//!
//! The top `split_depth` levels are enumerated first and the remaining
//! subtrees are searched in parallel; results are concatenated in branch
//! order so output is independent of scheduling.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::check::{check_alpha, check_d_graceful, d_params, AlphaFailure, DParams};
use crate::error::{Error, Result};
use crate::grid::{two_coloring, Graph};
use crate::labeling::Labeling;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexOrder {
    /// Breadth-first from vertex 0 (then from the smallest unvisited vertex).
    BreadthFirst,
    Natural,
    Custom(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub d: u64,
    pub alpha_only: bool,
    /// Stop after this many labelings; 0 searches exhaustively.
    pub max_results: usize,
    pub order: VertexOrder,
    /// Keep one labeling from each complementary pair `f`, `max - f`: the
    /// vertex labelled 0 must precede the one labelled `max` in index order.
    /// Halves exhaustive counts.
    pub symmetry_breaking: bool,
    /// Count only; do not materialise labelings.
    pub count_only: bool,
    /// Depth at which subtrees are handed to worker threads. 0 is sequential.
    pub split_depth: usize,
}

impl SearchConfig {
    pub fn new(d: u64) -> Self {
        Self {
            d,
            alpha_only: false,
            max_results: 0,
            order: VertexOrder::BreadthFirst,
            symmetry_breaking: false,
            count_only: false,
            split_depth: 2,
        }
    }

    pub fn alpha(mut self) -> Self {
        self.alpha_only = true;
        self
    }

    pub fn limit(mut self, max_results: usize) -> Self {
        self.max_results = max_results;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub labelings: Vec<Labeling>,
    /// Number of labelings found (all of them when `exhaustive`).
    pub count: u64,
    /// The whole space was explored.
    pub exhaustive: bool,
}

const UNSET: u64 = u64::MAX;

struct Engine {
    params: DParams,
    order: Vec<usize>,
    /// For each depth, the neighbours of `order[depth]` placed earlier.
    back: Vec<Vec<usize>>,
    color: Option<Vec<u8>>,
    symmetry_breaking: bool,
}

#[derive(Clone)]
struct State {
    labels: Vec<u64>,
    used_label: Vec<bool>,
    used_diff: Vec<bool>,
    /// `(min, max)` label per colour class.
    bounds: [(u64, u64); 2],
    zero_at: Option<usize>,
    top_at: Option<usize>,
}

fn separable(low: (u64, u64), high: (u64, u64)) -> bool {
    // an empty class has min = MAX, max = 0
    low.1 < high.0 || low.0 == u64::MAX || high.0 == u64::MAX
}

impl Engine {
    fn new<G: Graph + ?Sized>(g: &G, cfg: &SearchConfig, symmetry_breaking: bool) -> Result<Self> {
        let params = d_params(g.edge_count() as u64, cfg.d)?;
        let n = g.vertex_count();
        let adj = g.adjacency();
        let order = match &cfg.order {
            VertexOrder::Natural => (0..n).collect(),
            VertexOrder::BreadthFirst => bfs_order(&adj),
            VertexOrder::Custom(order) => {
                let mut seen = vec![false; n];
                if order.len() != n
                    || order
                        .iter()
                        .any(|&v| v >= n || std::mem::replace(&mut seen[v], true))
                {
                    return Err(Error::InvalidParameters(
                        "custom vertex order is not a permutation of the vertices".into(),
                    ));
                }
                order.clone()
            }
        };
        let mut position = vec![0; n];
        order.iter().enumerate().for_each(|(p, &v)| position[v] = p);
        let back = order
            .iter()
            .enumerate()
            .map(|(p, &v)| {
                adj[v]
                    .iter()
                    .copied()
                    .filter(|&u| position[u] < p)
                    .collect()
            })
            .collect();
        let color = if cfg.alpha_only {
            Some(two_coloring(g).map_err(|edge| AlphaFailure::NotBipartite { edge })?)
        } else {
            None
        };
        Ok(Self {
            params,
            order,
            back,
            color,
            symmetry_breaking,
        })
    }

    fn fresh_state(&self) -> State {
        let top = self.params.max_label as usize;
        State {
            labels: vec![UNSET; self.order.len()],
            used_label: vec![false; top + 1],
            used_diff: vec![false; top + 1],
            bounds: [(u64::MAX, 0); 2],
            zero_at: None,
            top_at: None,
        }
    }

    /// Places `label` on the vertex at `depth` if every constraint still holds.
    fn place(&self, st: &mut State, depth: usize, label: u64) -> bool {
        let p = &self.params;
        if label > p.max_label || st.used_label[label as usize] {
            return false;
        }
        let v = self.order[depth];

        let mut bounds = st.bounds;
        if let Some(color) = &self.color {
            let c = color[v] as usize;
            bounds[c] = (bounds[c].0.min(label), bounds[c].1.max(label));
            if !separable(bounds[0], bounds[1]) && !separable(bounds[1], bounds[0]) {
                return false;
            }
        }

        let (mut zero_at, mut top_at) = (st.zero_at, st.top_at);
        if self.symmetry_breaking {
            if label == 0 {
                zero_at = Some(v);
            }
            if label == p.max_label {
                top_at = Some(v);
            }
            if let (Some(z), Some(t)) = (zero_at, top_at) {
                if z > t {
                    return false;
                }
            }
        }

        let back = &self.back[depth];
        for (i, &u) in back.iter().enumerate() {
            let diff = label.abs_diff(st.labels[u]);
            if !p.is_allowed(diff) || st.used_diff[diff as usize] {
                for &w in &back[..i] {
                    st.used_diff[label.abs_diff(st.labels[w]) as usize] = false;
                }
                return false;
            }
            st.used_diff[diff as usize] = true;
        }

        st.labels[v] = label;
        st.used_label[label as usize] = true;
        st.bounds = bounds;
        st.zero_at = zero_at;
        st.top_at = top_at;
        true
    }

    fn unplace(
        &self,
        st: &mut State,
        depth: usize,
        saved: ([(u64, u64); 2], Option<usize>, Option<usize>),
    ) {
        let v = self.order[depth];
        let label = st.labels[v];
        for &u in &self.back[depth] {
            st.used_diff[label.abs_diff(st.labels[u]) as usize] = false;
        }
        st.used_label[label as usize] = false;
        st.labels[v] = UNSET;
        (st.bounds, st.zero_at, st.top_at) = saved;
    }

    fn accepts(&self, f: &Labeling) -> bool {
        if f.len() != self.order.len() {
            return false;
        }
        let mut st = self.fresh_state();
        (0..self.order.len()).all(|depth| self.place(&mut st, depth, f[self.order[depth]]))
    }

    /// Depth-first search below `depth`. Returns true once `limit` is reached.
    fn dfs(&self, st: &mut State, depth: usize, sink: &mut Sink) -> bool {
        if depth == self.order.len() {
            return sink.push(&st.labels);
        }
        for label in 0..=self.params.max_label {
            let saved = (st.bounds, st.zero_at, st.top_at);
            if self.place(st, depth, label) {
                let stop = self.dfs(st, depth + 1, sink);
                self.unplace(st, depth, saved);
                if stop {
                    return true;
                }
            }
        }
        false
    }

    /// Every surviving assignment of the first `depth` vertices, in order.
    fn prefixes(&self, depth: usize) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut st = self.fresh_state();
        self.collect_prefixes(&mut st, 0, depth, &mut Vec::new(), &mut out);
        out
    }

    fn collect_prefixes(
        &self,
        st: &mut State,
        depth: usize,
        target: usize,
        prefix: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if depth == target {
            out.push(prefix.clone());
            return;
        }
        for label in 0..=self.params.max_label {
            let saved = (st.bounds, st.zero_at, st.top_at);
            if self.place(st, depth, label) {
                prefix.push(label);
                self.collect_prefixes(st, depth + 1, target, prefix, out);
                prefix.pop();
                self.unplace(st, depth, saved);
            }
        }
    }
}

struct Sink {
    keep: bool,
    limit: usize,
    found: Vec<Labeling>,
    count: u64,
}

impl Sink {
    fn push(&mut self, labels: &[u64]) -> bool {
        self.count += 1;
        if self.keep {
            self.found.push(Labeling::new(labels.to_vec()));
        }
        self.limit != 0 && self.count >= self.limit as u64
    }
}

fn bfs_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let mut next: Vec<usize> = adj[u].iter().copied().filter(|&w| !seen[w]).collect();
            next.sort_unstable();
            for w in next {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}

/// Searches for labelings of `g` under `cfg`. Every returned labeling passes
/// [`check_d_graceful`] (and [`check_alpha`] in alpha mode).
pub fn search<G: Graph + ?Sized>(g: &G, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let engine = Engine::new(g, cfg, cfg.symmetry_breaking)?;
    let split = cfg.split_depth.min(engine.order.len());
    let prefixes = engine.prefixes(split);

    let sinks: Vec<Sink> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut st = engine.fresh_state();
            for (depth, &label) in prefix.iter().enumerate() {
                let placed = engine.place(&mut st, depth, label);
                debug_assert!(placed);
            }
            let mut sink = Sink {
                keep: !cfg.count_only,
                limit: cfg.max_results,
                found: Vec::new(),
                count: 0,
            };
            engine.dfs(&mut st, split, &mut sink);
            sink
        })
        .collect();

    let total: u64 = sinks.iter().map(|s| s.count).sum();
    let mut labelings: Vec<Labeling> = sinks.into_iter().flat_map(|s| s.found).collect();
    let exhaustive = cfg.max_results == 0 || total < cfg.max_results as u64;
    let count = if exhaustive {
        total
    } else {
        labelings.truncate(cfg.max_results);
        cfg.max_results as u64
    };
    Ok(SearchOutcome {
        labelings,
        count,
        exhaustive,
    })
}

/// Runs `f` through both the checker and the search's constraint engine and
/// returns their common verdict. Symmetry breaking is ignored since it is not
/// part of the definition.
pub fn cross_validate<G: Graph + ?Sized>(
    g: &G,
    f: &Labeling,
    d: u64,
    cfg: &SearchConfig,
) -> Result<bool> {
    let cfg = SearchConfig { d, ..cfg.clone() };
    let engine = Engine::new(g, &cfg, false)?;
    let by_engine = engine.accepts(f);
    let by_checker =
        check_d_graceful(g, f, d).is_ok() && (!cfg.alpha_only || check_alpha(g, f).is_ok());
    if by_engine != by_checker {
        return Err(Error::Inconsistent(format!(
            "checker says {by_checker}, search constraints say {by_engine} for {:?}",
            f.as_slice()
        )));
    }
    Ok(by_checker)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{prism_labeling, PrismVariant};
    use crate::grid::{build_grid, SimpleGraph};

    #[test]
    fn single_edge_count() {
        let g = SimpleGraph::path(2);
        let out = search(&g, &SearchConfig::new(1)).unwrap();
        assert_eq!(out.count, 2);
        assert!(out.exhaustive);
        let labels: Vec<_> = out
            .labelings
            .iter()
            .map(|f| f.as_slice().to_vec())
            .collect();
        assert_eq!(labels, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn four_cycle_graceful() {
        let g = SimpleGraph::cycle(4).unwrap();
        let out = search(&g, &SearchConfig::new(1)).unwrap();
        assert!(out.count >= 1);
        for f in &out.labelings {
            check_d_graceful(&g, f, 1).unwrap();
        }
    }

    #[test]
    fn rejects_bad_input() {
        let g = build_grid(1, 2).unwrap();
        assert!(matches!(
            search(&g, &SearchConfig::new(5)),
            Err(Error::InvalidParameters(_))
        ));
        let tri = SimpleGraph::cycle(3).unwrap();
        assert!(matches!(
            search(&tri, &SearchConfig::new(1).alpha()),
            Err(Error::NotAlpha(AlphaFailure::NotBipartite { .. }))
        ));
        let mut cfg = SearchConfig::new(3);
        cfg.order = VertexOrder::Custom(vec![0, 0, 1, 2, 3, 4, 5, 6]);
        assert!(search(&g, &cfg).is_err());
    }

    #[test]
    fn limit_and_split_are_deterministic() {
        let g = build_grid(1, 2).unwrap();
        let mut cfg = SearchConfig::new(3).alpha().limit(5);
        cfg.split_depth = 0;
        let seq = search(&g, &cfg).unwrap();
        cfg.split_depth = 3;
        let par = search(&g, &cfg).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.labelings.len(), 5);
        assert!(!seq.exhaustive);
    }

    #[test]
    fn symmetry_breaking_halves() {
        let g = SimpleGraph::cycle(4).unwrap();
        let raw = search(&g, &SearchConfig::new(1)).unwrap().count;
        let mut cfg = SearchConfig::new(1);
        cfg.symmetry_breaking = true;
        assert_eq!(search(&g, &cfg).unwrap().count * 2, raw);
    }

    #[test]
    fn cross_validation_agrees() {
        let (g, f) = prism_labeling(1, PrismVariant::D3).unwrap();
        let cfg = SearchConfig::new(3).alpha();
        assert!(cross_validate(&g, &f, 3, &cfg).unwrap());
        let mut bad = f.clone();
        bad.swap(0, 1);
        assert!(!cross_validate(&g, &bad, 3, &cfg).unwrap());
        let edge = SimpleGraph::path(2);
        assert!(
            cross_validate(&edge, &Labeling::new(vec![0, 1]), 1, &SearchConfig::new(1)).unwrap()
        );
    }
}
