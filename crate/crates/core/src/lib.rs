//! Combinatorics and exact algebra for moduli spaces of pointed curves:
//! stable graphs and their strata, a fixed-point engine for inductive
//! statements over the `(g, n)` grid, ramification profiles of covers of
//! the line, point-independence bounds, and normal forms for graded
//! relation systems.

pub mod bounds;
pub mod cli;
pub mod config;
pub mod filling;
pub mod graph;
pub mod hurwitz;
pub mod rewrite;
pub mod strata;

use thiserror::Error;

pub use graph::{CanonicalKey, GraphError, StableGraph};

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Strata(#[from] strata::StrataError),
    #[error(transparent)]
    Fill(#[from] filling::FillError),
    #[error(transparent)]
    Hurwitz(#[from] hurwitz::HurwitzError),
    #[error(transparent)]
    Bound(#[from] bounds::BoundError),
    #[error(transparent)]
    Rewrite(#[from] rewrite::RewriteError),
    #[error(transparent)]
    Config(#[from] config::ConfigError),
}

impl Error {
    /// Stable identifier of the error variant, as printed by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Graph(e) => e.name(),
            Error::Strata(e) => e.name(),
            Error::Fill(e) => e.name(),
            Error::Hurwitz(e) => e.name(),
            Error::Bound(e) => e.name(),
            Error::Rewrite(e) => e.name(),
            Error::Config(e) => e.name(),
        }
    }
}
