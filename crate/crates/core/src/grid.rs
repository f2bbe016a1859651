//! Graph model for grids on cylinders `C_{4k} x P_m` plus a plain simple-graph
//! type used by the checker and the search oracle.
//!
//! Grid vertices are addressed as `(i, j)` with layer `i` in `1..=m` and
//! position `j` in `1..=4k`. The canonical vertex index is
//! `(i - 1) * 4k + (j - 1)`; every serialized form uses that index.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};

/// Unordered edge between two canonical vertex indices.
pub type Edge = (usize, usize);

/// Anything the checker can run over: a vertex count and a fixed edge list.
pub trait Graph {
    fn vertex_count(&self) -> usize;
    fn edges(&self) -> &[Edge];

    fn edge_count(&self) -> usize {
        self.edges().len()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(u, v) in self.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }
}

/// Simple undirected graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl SimpleGraph {
    /// Builds a graph, rejecting loops, duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameters(format!(
                    "edge {{{u},{v}}} has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameters(format!("loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidParameters(format!(
                    "duplicate edge {{{u},{v}}}"
                )));
            }
        }
        Ok(Self { n, edges })
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| (v - 1, v)).collect();
        Self { n, edges }
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameters(format!(
                "cycle needs n >= 3, got {n}"
            )));
        }
        let edges = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Ok(Self { n, edges })
    }
}

impl Graph for SimpleGraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

/// `C_{4k} x P_m`: `m` layer-cycles of length `4k` joined by rungs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridGraph {
    k: usize,
    m: usize,
    edges: Vec<Edge>,
}

/// Builds `C_{4k} x P_m` with edges in canonical order: the layer-cycle edges
/// of layers `1..=m`, then the rungs between layers `i` and `i + 1` for
/// `i in 1..m`, each block in increasing `j`.
pub fn build_grid(k: usize, m: usize) -> Result<GridGraph> {
    if k < 1 {
        return Err(Error::InvalidParameters(format!("k must be >= 1, got {k}")));
    }
    if m < 2 {
        return Err(Error::InvalidParameters(format!("m must be >= 2, got {m}")));
    }
    let len = 4 * k;
    let mut edges = Vec::with_capacity(len * (2 * m - 1));
    for layer in 0..m {
        for pos in 0..len {
            edges.push((layer * len + pos, layer * len + (pos + 1) % len));
        }
    }
    for layer in 0..m - 1 {
        for pos in 0..len {
            edges.push((layer * len + pos, (layer + 1) * len + pos));
        }
    }
    Ok(GridGraph { k, m, edges })
}

impl GridGraph {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Cycle length `4k`.
    pub fn cycle_len(&self) -> usize {
        4 * self.k
    }

    /// Canonical index of `(i, j)`, both 1-based. Positions wrap cyclically.
    pub fn index(&self, layer: usize, pos: usize) -> usize {
        debug_assert!((1..=self.m).contains(&layer));
        let len = self.cycle_len();
        (layer - 1) * len + (pos - 1) % len
    }

    /// Inverse of [`GridGraph::index`].
    pub fn coords(&self, v: usize) -> (usize, usize) {
        let len = self.cycle_len();
        (v / len + 1, v % len + 1)
    }

    /// Canonical indices of layer `C^i` in increasing `j`.
    pub fn layer(&self, layer: usize) -> std::ops::Range<usize> {
        let len = self.cycle_len();
        (layer - 1) * len..layer * len
    }

    /// The two colour classes: `A = {(i,j) : i + j even}` and its complement.
    pub fn bipartition(&self) -> (Vec<usize>, Vec<usize>) {
        (0..self.vertex_count()).partition(|&v| {
            let (i, j) = self.coords(v);
            (i + j) % 2 == 0
        })
    }

    pub fn as_simple(&self) -> SimpleGraph {
        SimpleGraph {
            n: self.vertex_count(),
            edges: self.edges.clone(),
        }
    }

    pub fn prism_view(&self) -> Result<PrismView<'_>> {
        if self.m != 2 {
            return Err(Error::NotPrism { m: self.m });
        }
        Ok(PrismView { grid: self })
    }
}

impl Graph for GridGraph {
    fn vertex_count(&self) -> usize {
        4 * self.k * self.m
    }

    fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

/// Prism `T_{8k} = C_{4k} x P_2` with `x_i = (1, i)` and `y_i = (2, i)`.
#[derive(Debug, Clone, Copy)]
pub struct PrismView<'g> {
    grid: &'g GridGraph,
}

impl PrismView<'_> {
    pub fn x(&self, i: usize) -> usize {
        self.grid.index(1, i)
    }

    pub fn y(&self, i: usize) -> usize {
        self.grid.index(2, i)
    }

    fn pick(&self, layer: usize, odd: bool) -> Vec<usize> {
        (1..=self.grid.cycle_len())
            .filter(|i| (i % 2 == 1) == odd)
            .map(|i| self.grid.index(layer, i))
            .collect()
    }

    pub fn odd_x(&self) -> Vec<usize> {
        self.pick(1, true)
    }

    pub fn even_x(&self) -> Vec<usize> {
        self.pick(1, false)
    }

    pub fn odd_y(&self) -> Vec<usize> {
        self.pick(2, true)
    }

    pub fn even_y(&self) -> Vec<usize> {
        self.pick(2, false)
    }
}

/// Proper 2-colouring of an arbitrary graph, or the first edge closing an odd
/// cycle. Each component's smallest vertex gets colour 0.
pub fn two_coloring<G: Graph + ?Sized>(g: &G) -> std::result::Result<Vec<u8>, Edge> {
    let adj = g.adjacency();
    let mut color = vec![u8::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    for root in 0..g.vertex_count() {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return Err((u.min(w), u.max(w)));
                }
            }
        }
    }
    Ok(color)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        for (k, m, nv, ne) in [
            (1, 2, 8, 12),
            (2, 3, 24, 40),
            (1, 4, 16, 28),
            (1, 3, 12, 20),
        ] {
            let g = build_grid(k, m).unwrap();
            assert_eq!(g.vertex_count(), nv);
            assert_eq!(g.edge_count(), ne);
        }
    }

    #[test]
    fn rejects_degenerate() {
        assert!(build_grid(0, 2).is_err());
        assert!(build_grid(1, 1).is_err());
    }

    #[test]
    fn degrees_and_coloring() {
        for k in 1..=8 {
            for m in 2..=6 {
                let g = build_grid(k, m).unwrap();
                assert_eq!(g.edge_count(), 4 * k * (2 * m - 1));
                let adj = g.adjacency();
                for (v, nbrs) in adj.iter().enumerate() {
                    let (i, _) = g.coords(v);
                    let want = if i == 1 || i == m { 3 } else { 4 };
                    assert_eq!(nbrs.len(), want, "k={k} m={m} v={v}");
                }
                let (a, b) = g.bipartition();
                assert_eq!(a.len(), 2 * k * m);
                assert_eq!(b.len(), 2 * k * m);
                let mut side = vec![false; g.vertex_count()];
                a.iter().for_each(|&v| side[v] = true);
                assert!(g.edges().iter().all(|&(u, v)| side[u] != side[v]));
                assert_eq!(g, build_grid(k, m).unwrap());
            }
        }
    }

    #[test]
    fn smallest_prism_classes() {
        let g = build_grid(1, 2).unwrap();
        let (a, _) = g.bipartition();
        let want: Vec<usize> = [(1, 1), (1, 3), (2, 2), (2, 4)]
            .iter()
            .map(|&(i, j)| g.index(i, j))
            .collect();
        assert_eq!(a, want);
        let p = g.prism_view().unwrap();
        let mut ox_ey = p.odd_x();
        ox_ey.extend(p.even_y());
        assert_eq!(ox_ey, want);
    }

    #[test]
    fn wraparound_edge() {
        let g = build_grid(1, 2).unwrap();
        let s = g.as_simple();
        assert_eq!(s.vertex_count(), 8);
        assert_eq!(s.edge_count(), 12);
        assert!(s.edges().contains(&(3, 0)));
        assert_eq!(g.index(1, 4), 3);
        assert_eq!(g.index(1, 5), 0);
    }

    #[test]
    fn simple_graph_validation() {
        assert!(SimpleGraph::new(2, vec![(0, 0)]).is_err());
        assert!(SimpleGraph::new(2, vec![(0, 1), (1, 0)]).is_err());
        assert!(SimpleGraph::new(2, vec![(0, 2)]).is_err());
        assert!(two_coloring(&SimpleGraph::cycle(5).unwrap()).is_err());
        assert!(two_coloring(&SimpleGraph::cycle(4).unwrap()).is_ok());
    }

    #[test]
    fn prism_view_only_for_m2() {
        assert!(build_grid(1, 3).unwrap().prism_view().is_err());
    }
}
