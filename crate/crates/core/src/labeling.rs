use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::grid::{Edge, GridGraph};

/// Vertex labels indexed by canonical vertex index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Labeling(Vec<u64>);

impl Labeling {
    pub fn new(labels: Vec<u64>) -> Self {
        Self(labels)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }

    pub fn set(&mut self, v: usize, label: u64) {
        self.0[v] = label;
    }

    pub fn swap(&mut self, a: usize, b: usize) {
        self.0.swap(a, b);
    }

    /// `|f(u) - f(v)|` for one edge.
    pub fn difference(&self, (u, v): Edge) -> u64 {
        self.0[u].abs_diff(self.0[v])
    }

    /// Labels of layer `C^i` of a grid, in increasing position.
    pub fn layer<'a>(&'a self, g: &GridGraph, layer: usize) -> &'a [u64] {
        &self.0[g.layer(layer)]
    }

    pub fn max_label(&self) -> Option<u64> {
        self.0.iter().copied().max()
    }

    pub fn min_label(&self) -> Option<u64> {
        self.0.iter().copied().min()
    }
}

impl Index<usize> for Labeling {
    type Output = u64;

    fn index(&self, v: usize) -> &u64 {
        &self.0[v]
    }
}

impl From<Vec<u64>> for Labeling {
    fn from(v: Vec<u64>) -> Self {
        Self(v)
    }
}
