//! Verifier for d-divisible graceful labelings and the alpha condition.
//!
//! For a graph of size `e = d * q` a d-divisible graceful labeling is an
//! injective map into `[0, d(q+1) - 1]` whose edge differences are exactly
//! `[1, d(q+1)]` minus the multiples of `q + 1`. Equivalently the differences
//! fill the `d` blocks `P^t = [(q+1)t + 1, (q+1)t + q]`, `q` values each.
//! `d = 1` is the classical graceful condition and `d = e` the odd-graceful one.

use std::fmt;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::grid::{two_coloring, Edge, Graph, GridGraph};
use crate::labeling::Labeling;

/// Parameters derived from the edge count `e` and divisor `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DParams {
    pub e: u64,
    pub d: u64,
    /// `e / d`.
    pub q: u64,
    /// `d(q+1) - 1`.
    pub max_label: u64,
}

pub fn d_params(e: u64, d: u64) -> Result<DParams> {
    if e == 0 || d == 0 || !e.is_multiple_of(d) {
        return Err(Error::InvalidParameters(format!(
            "d = {d} does not divide e = {e}"
        )));
    }
    let q = e / d;
    Ok(DParams {
        e,
        d,
        q,
        max_label: d * (q + 1) - 1,
    })
}

impl DParams {
    /// Multiples of `q + 1` up to `d(q+1)`.
    pub fn forbidden(&self) -> Vec<u64> {
        (1..=self.d).map(|t| t * (self.q + 1)).collect()
    }

    /// Block `P^t`, `t in 0..d`.
    pub fn block(&self, t: u64) -> std::ops::RangeInclusive<u64> {
        let base = (self.q + 1) * t;
        base + 1..=base + self.q
    }

    pub fn is_allowed(&self, diff: u64) -> bool {
        diff >= 1 && diff <= self.d * (self.q + 1) && !diff.is_multiple_of(self.q + 1)
    }

    pub fn allowed_differences(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.d * (self.q + 1)).filter(|&x| self.is_allowed(x))
    }
}

/// First violated clause of the d-divisible graceful definition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("d = {d} does not divide e = {e}")]
    InvalidParameters { e: u64, d: u64 },
    #[error("expected {expected} labels, found {found}")]
    WrongLabelCount { expected: usize, found: usize },
    #[error("label {label} of vertex {vertex} exceeds the ceiling {max}")]
    LabelOutOfRange { vertex: usize, label: u64, max: u64 },
    #[error("label {label} used by vertices {first} and {second}")]
    DuplicateLabel {
        label: u64,
        first: usize,
        second: usize,
    },
    #[error("{0}")]
    Differences(DifferenceMismatch),
}

/// Where the edge-difference multiset departs from the required set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DifferenceMismatch {
    /// Allowed values hit more than once.
    pub duplicated: Vec<u64>,
    /// Zero or multiples of `q + 1` that occur.
    pub forbidden: Vec<u64>,
    /// Allowed values never hit.
    pub missing: Vec<u64>,
}

impl fmt::Display for DifferenceMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "difference multiset mismatch: duplicated {:?}, forbidden {:?}, missing {:?}",
            self.duplicated, self.forbidden, self.missing
        )
    }
}

/// All edge differences in the graph's edge order.
pub fn edge_differences<G: Graph + ?Sized>(g: &G, f: &Labeling) -> Vec<u64> {
    g.edges().iter().map(|&e| f.difference(e)).collect()
}

/// Checks `f` against the d-divisible graceful definition. Returns the derived
/// parameters on success.
pub fn check_d_graceful<G: Graph + ?Sized>(
    g: &G,
    f: &Labeling,
    d: u64,
) -> std::result::Result<DParams, Violation> {
    let e = g.edge_count() as u64;
    let params = d_params(e, d).map_err(|_| Violation::InvalidParameters { e, d })?;
    if f.len() != g.vertex_count() {
        return Err(Violation::WrongLabelCount {
            expected: g.vertex_count(),
            found: f.len(),
        });
    }

    let mut owner = vec![usize::MAX; params.max_label as usize + 1];
    for (vertex, &label) in f.as_slice().iter().enumerate() {
        if label > params.max_label {
            return Err(Violation::LabelOutOfRange {
                vertex,
                label,
                max: params.max_label,
            });
        }
        let slot = &mut owner[label as usize];
        if *slot != usize::MAX {
            return Err(Violation::DuplicateLabel {
                label,
                first: *slot,
                second: vertex,
            });
        }
        *slot = vertex;
    }

    // labels are in range, so every difference is <= max_label
    let mut hits = vec![0u32; params.max_label as usize + 1];
    for &edge in g.edges() {
        hits[f.difference(edge) as usize] += 1;
    }
    let mut mismatch = DifferenceMismatch::default();
    for (diff, &count) in hits.iter().enumerate() {
        let diff = diff as u64;
        if params.is_allowed(diff) {
            match count {
                0 => mismatch.missing.push(diff),
                1 => {}
                _ => mismatch.duplicated.push(diff),
            }
        } else if count > 0 {
            mismatch.forbidden.push(diff);
        }
    }
    // d(q+1) itself is forbidden and unreachable, so it is never "missing"
    if mismatch == DifferenceMismatch::default() {
        Ok(params)
    } else {
        Err(Violation::Differences(mismatch))
    }
}

/// Witness that all labels of one colour class lie strictly below the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaCert {
    /// Vertices of the low class, ascending.
    pub low: Vec<usize>,
    pub high: Vec<usize>,
    /// Largest label on the low class.
    pub lambda: u64,
}

impl AlphaCert {
    /// Per-vertex flag: `true` on the high class.
    pub fn high_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        self.high.iter().for_each(|&v| mask[v] = true);
        mask
    }

    /// Confirms this certificate describes `f` on `g`: every edge crosses the
    /// classes, low labels are at most `lambda` and high labels exceed it.
    pub fn validate<G: Graph + ?Sized>(&self, g: &G, f: &Labeling) -> bool {
        let n = g.vertex_count();
        if f.len() != n || self.low.len() + self.high.len() != n {
            return false;
        }
        let high = self.high_mask(n);
        let mut seen = vec![false; n];
        for &v in self.low.iter().chain(&self.high) {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        g.edges().iter().all(|&(u, v)| high[u] != high[v])
            && self.low.iter().all(|&v| f[v] <= self.lambda)
            && self.high.iter().all(|&v| f[v] > self.lambda)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphaFailure {
    #[error("graph is not bipartite (odd cycle closed by edge {{{}, {}}})", .edge.0, .edge.1)]
    NotBipartite { edge: Edge },
    #[error("expected {expected} labels, found {found}")]
    WrongLabelCount { expected: usize, found: usize },
    #[error("no class lies below the other (class 0 spans [{}, {}], class 1 spans [{}, {}])",
        .class0.0, .class0.1, .class1.0, .class1.1)]
    Boundary {
        class0: (u64, u64),
        class1: (u64, u64),
    },
}

/// Tries both orientations of the bipartition and returns the one whose low
/// class lies entirely below the high class.
pub fn check_alpha<G: Graph + ?Sized>(
    g: &G,
    f: &Labeling,
) -> std::result::Result<AlphaCert, AlphaFailure> {
    let color = two_coloring(g).map_err(|edge| AlphaFailure::NotBipartite { edge })?;
    if f.len() != g.vertex_count() {
        return Err(AlphaFailure::WrongLabelCount {
            expected: g.vertex_count(),
            found: f.len(),
        });
    }
    let (c0, c1): (Vec<usize>, Vec<usize>) = (0..f.len()).partition(|&v| color[v] == 0);
    let span = |class: &[usize]| {
        let lo = class.iter().map(|&v| f[v]).min().unwrap_or(u64::MAX);
        let hi = class.iter().map(|&v| f[v]).max().unwrap_or(0);
        (lo, hi)
    };
    let (s0, s1) = (span(&c0), span(&c1));
    if c0.is_empty() || s0.1 < s1.0 {
        return Ok(AlphaCert {
            lambda: s0.1,
            low: c0,
            high: c1,
        });
    }
    if c1.is_empty() || s1.1 < s0.0 {
        return Ok(AlphaCert {
            lambda: s1.1,
            low: c1,
            high: c0,
        });
    }
    Err(AlphaFailure::Boundary {
        class0: s0,
        class1: s1,
    })
}

/// Edge differences of a prism `T_{8k}`, split into the x-cycle (`sigma`),
/// the y-cycle (`epsilon`) and the spokes (`rho`), indices cyclic mod `4k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceProfile {
    /// All differences in canonical edge order.
    pub all: Vec<u64>,
    pub sigma: Vec<u64>,
    pub epsilon: Vec<u64>,
    pub rho: Vec<u64>,
}

impl DifferenceProfile {
    pub fn sorted(values: &[u64]) -> Vec<u64> {
        let mut v = values.to_vec();
        v.sort_unstable();
        v
    }
}

pub fn difference_profile(g: &GridGraph, f: &Labeling) -> Result<DifferenceProfile> {
    let prism = g.prism_view()?;
    if f.len() != g.vertex_count() {
        return Err(Error::Rejected(Violation::WrongLabelCount {
            expected: g.vertex_count(),
            found: f.len(),
        }));
    }
    let len = g.cycle_len();
    let mut sigma = Vec::with_capacity(len);
    let mut epsilon = Vec::with_capacity(len);
    let mut rho = Vec::with_capacity(len);
    for i in 1..=len {
        sigma.push(f[prism.x(i + 1)].abs_diff(f[prism.x(i)]));
        epsilon.push(f[prism.y(i + 1)].abs_diff(f[prism.y(i)]));
        rho.push(f[prism.x(i)].abs_diff(f[prism.y(i)]));
    }
    Ok(DifferenceProfile {
        all: edge_differences(g, f),
        sigma,
        epsilon,
        rho,
    })
}
