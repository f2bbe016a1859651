//! d-divisible graceful alpha-labelings of grids on cylinders `C_{4k} x P_m`.
//!
//! * [`grid`] models the graphs and their canonical vertex numbering.
//! * [`check`] verifies labelings against the definition and the alpha condition.
//! * [`construct`] builds the explicit prism labelings and extends them layer by layer.
//! * [`decomp`] turns a verified labeling into a cyclic decomposition of a
//!   complete multipartite graph and checks the edge partition.
//! * [`oracle`] is an exhaustive backtracking search used as ground truth.
//! * [`io`] holds the JSON certificate formats and DOT rendering.

pub mod check;
pub mod construct;
pub mod decomp;
pub mod error;
pub mod grid;
pub mod io;
pub mod labeling;
pub mod oracle;

pub use check::{check_alpha, check_d_graceful, d_params, AlphaCert, DParams, Violation};
pub use construct::{
    construct, extend, layer_pattern, prism_labeling, seed_matches, Family, Parity, PrismVariant,
};
pub use error::{Error, Result};
pub use grid::{build_grid, Graph, GridGraph, SimpleGraph};
pub use labeling::Labeling;
