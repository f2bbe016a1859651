//! JSON certificates and DOT rendering.
//!
//! Field order in the serialized forms is fixed by the struct definitions, so
//! writing a certificate that was just read reproduces the same bytes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::check::{check_alpha, check_d_graceful, AlphaCert, DParams};
use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::grid::{build_grid, Edge, Graph, GridGraph, SimpleGraph};
use crate::labeling::Labeling;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GraphDescriptor {
    Grid { k: usize, m: usize },
    Simple { n: usize, edges: Vec<[usize; 2]> },
}

/// A graph materialised from a [`GraphDescriptor`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyGraph {
    Grid(GridGraph),
    Simple(SimpleGraph),
}

impl Graph for AnyGraph {
    fn vertex_count(&self) -> usize {
        match self {
            AnyGraph::Grid(g) => g.vertex_count(),
            AnyGraph::Simple(g) => g.vertex_count(),
        }
    }

    fn edges(&self) -> &[Edge] {
        match self {
            AnyGraph::Grid(g) => g.edges(),
            AnyGraph::Simple(g) => g.edges(),
        }
    }
}

impl GraphDescriptor {
    pub fn build(&self) -> Result<AnyGraph> {
        match self {
            GraphDescriptor::Grid { k, m } => Ok(AnyGraph::Grid(build_grid(*k, *m)?)),
            GraphDescriptor::Simple { n, edges } => Ok(AnyGraph::Simple(SimpleGraph::new(
                *n,
                edges.iter().map(|&[u, v]| (u, v)).collect(),
            )?)),
        }
    }

    pub fn of_simple(g: &SimpleGraph) -> Self {
        GraphDescriptor::Simple {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn of_grid(g: &GridGraph) -> Self {
        GraphDescriptor::Grid { k: g.k(), m: g.m() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaBlock {
    pub low_class: Vec<usize>,
    pub lambda: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelingCertificate {
    pub graph: GraphDescriptor,
    pub d: u64,
    pub labels: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<AlphaBlock>,
}

/// Outcome of re-checking a labeling certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verified {
    pub graph: AnyGraph,
    pub labeling: Labeling,
    pub params: DParams,
    pub alpha: Option<AlphaCert>,
}

impl LabelingCertificate {
    pub fn new(graph: GraphDescriptor, d: u64, f: &Labeling, alpha: Option<&AlphaCert>) -> Self {
        Self {
            graph,
            d,
            labels: f.as_slice().to_vec(),
            alpha: alpha.map(|c| AlphaBlock {
                low_class: c.low.clone(),
                lambda: c.lambda,
            }),
        }
    }

    pub fn labeling(&self) -> Labeling {
        Labeling::new(self.labels.clone())
    }

    /// Re-runs the checker. An embedded alpha block must describe the labels;
    /// with `require_alpha` the alpha condition must hold even without one.
    pub fn verify(&self, require_alpha: bool) -> Result<Verified> {
        let graph = self.graph.build()?;
        let f = self.labeling();
        let params = check_d_graceful(&graph, &f, self.d)?;
        let alpha = match &self.alpha {
            Some(block) => {
                let n = graph.vertex_count();
                let mut is_low = vec![false; n];
                for &v in &block.low_class {
                    if v >= n {
                        return Err(Error::InvalidParameters(format!(
                            "alpha block names vertex {v} outside 0..{n}"
                        )));
                    }
                    is_low[v] = true;
                }
                let cert = AlphaCert {
                    low: block.low_class.clone(),
                    high: (0..n).filter(|&v| !is_low[v]).collect(),
                    lambda: block.lambda,
                };
                if !cert.validate(&graph, &f) {
                    check_alpha(&graph, &f)?;
                    return Err(Error::InvalidParameters(
                        "alpha block does not match the labels".into(),
                    ));
                }
                Some(cert)
            }
            None if require_alpha => Some(check_alpha(&graph, &f)?),
            None => None,
        };
        Ok(Verified {
            graph,
            labeling: f,
            params,
            alpha,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionCertificate {
    pub graph: GraphDescriptor,
    pub q: u64,
    pub d: u64,
    pub n: u64,
    pub v: u64,
    pub base_blocks: Vec<Vec<u64>>,
}

impl DecompositionCertificate {
    pub fn new(graph: GraphDescriptor, dec: &Decomposition) -> Self {
        Self {
            graph,
            q: dec.q,
            d: dec.d,
            n: dec.n,
            v: dec.host.v,
            base_blocks: dec.base_blocks.iter().map(|b| b.0.clone()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Undirected DOT graph: one node per vertex labelled with its value, one
/// edge statement per edge, both in canonical order.
pub fn to_dot<G: Graph + ?Sized>(g: &G, f: &Labeling) -> String {
    let mut out = String::from("graph labeling {\n");
    for v in 0..g.vertex_count() {
        writeln!(out, "  {v} [label=\"{}\"];", f[v]).unwrap();
    }
    for &(u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct, Family};

    fn sample() -> LabelingCertificate {
        let c = construct(1, 3, Family::F1).unwrap();
        let cert = check_alpha(&c.grid, &c.labeling).unwrap();
        LabelingCertificate::new(
            GraphDescriptor::of_grid(&c.grid),
            c.d,
            &c.labeling,
            Some(&cert),
        )
    }

    #[test]
    fn round_trip_bytes() {
        let text = sample().to_json();
        let back = LabelingCertificate::from_json(&text).unwrap();
        assert_eq!(back, sample());
        assert_eq!(back.to_json(), text);
        assert!(text.starts_with("{\n  \"graph\": {\n    \"kind\": \"grid\",\n    \"k\": 1,\n    \"m\": 3\n  },\n  \"d\": 5,"));
    }

    #[test]
    fn verify_detects_tampering() {
        let cert = sample();
        let ok = cert.verify(true).unwrap();
        assert_eq!(ok.params.max_label, 24);
        let mut bad = cert.clone();
        bad.labels[0] = 23;
        assert!(bad.verify(false).is_err());
        let mut bad = cert.clone();
        bad.alpha.as_mut().unwrap().lambda = 3;
        assert!(bad.verify(false).is_err());
    }

    #[test]
    fn malformed_json() {
        assert!(LabelingCertificate::from_json("{\"graph\": 3}").is_err());
        assert!(LabelingCertificate::from_json(
            "{\"graph\":{\"kind\":\"torus\",\"k\":1},\"d\":1,\"labels\":[]}"
        )
        .is_err());
    }

    #[test]
    fn simple_descriptor() {
        let g = SimpleGraph::path(3);
        let desc = GraphDescriptor::of_simple(&g);
        assert_eq!(desc.build().unwrap(), AnyGraph::Simple(g));
        let bad = GraphDescriptor::Simple {
            n: 2,
            edges: vec![[0, 0]],
        };
        assert!(bad.build().is_err());
    }

    #[test]
    fn dot_shape() {
        let g = crate::grid::build_grid(1, 2).unwrap();
        let f = Labeling::new(vec![7, 5, 9, 6, 0, 14, 1, 12]);
        let dot = to_dot(&g, &f);
        assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 8);
        assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 12);
        assert!(dot.contains("  0 [label=\"7\"];\n"));
        assert!(dot.contains("  3 -- 0;\n"));
        assert_eq!(dot, to_dot(&g, &f));
    }
}
