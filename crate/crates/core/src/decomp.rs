//! Cyclic decompositions of complete multipartite graphs from d-divisible
//! graceful labelings.
//!
//! The host graph `K_{(q+1) x 2dn}` lives on `Z_v`, `v = 2dn(q+1)`, with parts
//! the residue classes mod `q + 1`: `{x, y}` is an edge iff `q + 1` does not
//! divide `x - y`. Base block `j` keeps the low-class labels and adds
//! `j * d(q+1)` to the high-class labels, so the blocks together realise every
//! difference class in `[1, dn(q+1)]` not divisible by `q + 1` exactly once.
//! Developing the blocks through `Z_v` then partitions the edge set.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::check::{check_d_graceful, AlphaCert};
use crate::construct::Family;
use crate::error::{Error, Result};
use crate::grid::{Edge, Graph, SimpleGraph};
use crate::labeling::Labeling;

/// `K_{parts x part_size}` on `Z_v` with parts the residues mod `parts`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultipartiteSpec {
    pub parts: u64,
    pub part_size: u64,
    pub v: u64,
}

impl MultipartiteSpec {
    /// The host graph for a labeling with parameters `q`, `d` and `n` copies.
    pub fn for_labeling(q: u64, d: u64, n: u64) -> Self {
        let parts = q + 1;
        let part_size = 2 * d * n;
        Self {
            parts,
            part_size,
            v: parts * part_size,
        }
    }

    pub fn part_of(&self, x: u64) -> u64 {
        x % self.parts
    }

    pub fn is_edge(&self, x: u64, y: u64) -> bool {
        x < self.v && y < self.v && self.part_of(x) != self.part_of(y)
    }

    /// `C(v, 2) - parts * C(part_size, 2)`.
    pub fn edge_count(&self) -> u64 {
        self.v * (self.v - 1) / 2 - self.parts * self.part_size * (self.part_size - 1) / 2
    }
}

impl fmt::Display for MultipartiteSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{{{}x{}}}", self.parts, self.part_size)
    }
}

/// Image of the block graph's vertices in `Z_v`, in canonical vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseBlock(pub Vec<u64>);

impl BaseBlock {
    pub fn translate(&self, t: u64, v: u64) -> BaseBlock {
        BaseBlock(self.0.iter().map(|&x| (x + t) % v).collect())
    }

    /// Endpoints in `Z_v` of every block edge, each with the smaller first.
    pub fn edge_images<'a>(&'a self, edges: &'a [Edge]) -> impl Iterator<Item = (u64, u64)> + 'a {
        edges.iter().map(|&(a, b)| {
            let (x, y) = (self.0[a], self.0[b]);
            (x.min(y), x.max(y))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub host: MultipartiteSpec,
    /// The block graph.
    pub graph: SimpleGraph,
    pub d: u64,
    pub q: u64,
    pub n: u64,
    pub base_blocks: Vec<BaseBlock>,
    /// All `n * v` translates, block-major, once developed.
    pub development: Option<Vec<BaseBlock>>,
}

/// Base blocks of the cyclic decomposition induced by `f`.
///
/// `f` must be d-divisible graceful on `g`. For `n > 1` it must also be an
/// alpha-labeling and `cert` must describe its class split.
pub fn base_blocks<G: Graph + ?Sized>(
    g: &G,
    f: &Labeling,
    cert: Option<&AlphaCert>,
    d: u64,
    n: u64,
) -> Result<Decomposition> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be >= 1".into()));
    }
    let params = check_d_graceful(g, f, d)?;
    let high = match cert {
        Some(cert) if cert.validate(g, f) => cert.high_mask(g.vertex_count()),
        Some(_) => {
            return Err(Error::InvalidParameters(
                "alpha certificate does not match the labeling".into(),
            ))
        }
        None if n == 1 => vec![false; g.vertex_count()],
        None => {
            return Err(Error::InvalidParameters(
                "an alpha certificate is required for n > 1".into(),
            ))
        }
    };
    let host = MultipartiteSpec::for_labeling(params.q, d, n);
    let step = d * (params.q + 1);
    let blocks = (0..n)
        .map(|j| {
            BaseBlock(
                f.as_slice()
                    .iter()
                    .zip(&high)
                    .map(|(&x, &hi)| if hi { x + j * step } else { x })
                    .collect(),
            )
        })
        .collect();
    Ok(Decomposition {
        host,
        graph: SimpleGraph::new(g.vertex_count(), g.edges().to_vec())?,
        d,
        q: params.q,
        n,
        base_blocks: blocks,
        development: None,
    })
}

/// Adds every translate of every base block.
pub fn develop(mut dec: Decomposition) -> Decomposition {
    let v = dec.host.v;
    let all = dec
        .base_blocks
        .iter()
        .flat_map(|b| (0..v).map(move |t| b.translate(t, v)))
        .collect();
    dec.development = Some(all);
    dec
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompViolation {
    #[error("decomposition has not been developed")]
    MissingDevelopment,
    #[error("block {block} has label {label} outside Z_{v}")]
    LabelOutOfRange { block: usize, label: u64, v: u64 },
    #[error("block {block} uses {label} for two vertices")]
    NonInjective { block: usize, label: u64 },
    #[error("block {block} contains {{{x}, {y}}}, which lies inside a part")]
    IllegalEdge { block: usize, x: u64, y: u64 },
    #[error("edge {{{x}, {y}}} covered more than once")]
    DuplicateEdge { x: u64, y: u64 },
    #[error("edge {{{x}, {y}}} not covered")]
    Uncovered { x: u64, y: u64 },
    #[error("difference class {class} realised {count} times")]
    DifferenceClass { class: u64, count: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coverage {
    pub covered: u64,
    pub total: u64,
}

impl fmt::Display for Coverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} edges covered", self.covered, self.total)
    }
}

struct PairBitmap {
    v: usize,
    words: Vec<u64>,
}

impl PairBitmap {
    fn new(v: usize) -> Self {
        Self {
            v,
            words: vec![0; (v * v).div_ceil(64)],
        }
    }

    /// Sets the bit of `x < y`; returns false if it was already set.
    fn insert(&mut self, x: u64, y: u64) -> bool {
        let idx = x as usize * self.v + y as usize;
        let (w, b) = (idx / 64, idx % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    fn contains(&self, x: u64, y: u64) -> bool {
        let idx = x as usize * self.v + y as usize;
        self.words[idx / 64] & (1 << (idx % 64)) != 0
    }

    fn pair(&self, idx: usize) -> (u64, u64) {
        ((idx / self.v) as u64, (idx % self.v) as u64)
    }
}

fn check_blocks(
    host: &MultipartiteSpec,
    edges: &[Edge],
    blocks: &[BaseBlock],
    offset: usize,
) -> std::result::Result<PairBitmap, DecompViolation> {
    let mut bits = PairBitmap::new(host.v as usize);
    let mut sorted = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        let id = offset + i;
        sorted.clear();
        sorted.extend_from_slice(&block.0);
        sorted.sort_unstable();
        if let Some(&label) = sorted.last().filter(|&&x| x >= host.v) {
            return Err(DecompViolation::LabelOutOfRange {
                block: id,
                label,
                v: host.v,
            });
        }
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(DecompViolation::NonInjective {
                block: id,
                label: w[0],
            });
        }
        for (x, y) in block.edge_images(edges) {
            if !host.is_edge(x, y) {
                return Err(DecompViolation::IllegalEdge { block: id, x, y });
            }
            if !bits.insert(x, y) {
                return Err(DecompViolation::DuplicateEdge { x, y });
            }
        }
    }
    Ok(bits)
}

/// Exhaustive check that the developed blocks partition the host's edges.
///
/// Blocks are split across worker threads; their coverage bitmaps are merged
/// in block order, so overlaps between chunks are caught at merge time.
pub fn verify_decomposition(dec: &Decomposition) -> std::result::Result<Coverage, DecompViolation> {
    let blocks = dec
        .development
        .as_deref()
        .ok_or(DecompViolation::MissingDevelopment)?;
    let host = dec.host;
    let edges = dec.graph.edges();
    let chunk = blocks.len().div_ceil(rayon::current_num_threads()).max(1);

    let partial: Vec<_> = blocks
        .par_chunks(chunk)
        .enumerate()
        .map(|(c, part)| check_blocks(&host, edges, part, c * chunk))
        .collect();

    let mut acc = PairBitmap::new(host.v as usize);
    for bits in partial {
        let bits = bits?;
        for (w, (a, b)) in acc.words.iter_mut().zip(&bits.words).enumerate() {
            let clash = *a & *b;
            if clash != 0 {
                let (x, y) = bits.pair(w * 64 + clash.trailing_zeros() as usize);
                return Err(DecompViolation::DuplicateEdge { x, y });
            }
            *a |= *b;
        }
    }

    for x in 0..host.v {
        for y in x + 1..host.v {
            if host.is_edge(x, y) && !acc.contains(x, y) {
                return Err(DecompViolation::Uncovered { x, y });
            }
        }
    }
    let covered = acc.words.iter().map(|w| w.count_ones() as u64).sum();
    Ok(Coverage {
        covered,
        total: host.edge_count(),
    })
}

/// `min(delta, v - delta)` for the difference of `x` and `y` in `Z_v`.
pub fn difference_class(x: u64, y: u64, v: u64) -> u64 {
    let delta = x.abs_diff(y) % v;
    delta.min(v - delta)
}

/// Scalable certificate: the base blocks realise each difference class in
/// `[1, v/2]` not divisible by `q + 1` exactly once and nothing else.
pub fn difference_certificate(dec: &Decomposition) -> std::result::Result<(), DecompViolation> {
    let v = dec.host.v;
    let half = v / 2;
    let mut hits = vec![0u32; half as usize + 1];
    for block in &dec.base_blocks {
        for (x, y) in block.edge_images(dec.graph.edges()) {
            hits[difference_class(x, y, v) as usize] += 1;
        }
    }
    for (class, &count) in hits.iter().enumerate() {
        let class = class as u64;
        let wanted = u32::from(class != 0 && !class.is_multiple_of(dec.host.parts));
        if count != wanted {
            return Err(DecompViolation::DifferenceClass { class, count });
        }
    }
    Ok(())
}

/// One host graph admitting a cyclic `C_{4k} x P_m`-decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HostTarget {
    pub family: Family,
    pub d: u64,
    pub q: u64,
    pub host: MultipartiteSpec,
}

/// The three hosts `K_{(4k+1) x 2(2m-1)n}`, `K_{(2k+1) x 4(2m-1)n}` and
/// `K_{(k+1) x 8(2m-1)n}`, one per family.
///
/// The closing statement these come from is phrased for `m > 2`, while the
/// labelings exist for every `m >= 2`; `m = 2` is accepted here.
pub fn host_table(k: usize, m: usize, n: u64) -> Result<[HostTarget; 3]> {
    if k < 1 || m < 2 || n < 1 {
        return Err(Error::InvalidParameters(format!(
            "need k >= 1, m >= 2, n >= 1 (got k={k}, m={m}, n={n})"
        )));
    }
    let e = 4 * k as u64 * (2 * m as u64 - 1);
    let target = |c: u64| -> Result<HostTarget> {
        let family = Family::with_multiplier(c, k)?;
        let d = family.divisor(m);
        let q = e / d;
        Ok(HostTarget {
            family,
            d,
            q,
            host: MultipartiteSpec::for_labeling(q, d, n),
        })
    };
    Ok([target(1)?, target(2)?, target(4)?])
}
