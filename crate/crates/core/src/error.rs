use thiserror::Error;

use crate::check::{AlphaFailure, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("graph is not a prism (m = {m}, expected 2)")]
    NotPrism { m: usize },

    #[error("layer C^{layer} does not carry the seed pattern of the family")]
    SeedMismatch { layer: usize },

    #[error("labeling rejected: {0}")]
    Rejected(#[from] Violation),

    #[error("alpha condition failed: {0}")]
    NotAlpha(#[from] AlphaFailure),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
