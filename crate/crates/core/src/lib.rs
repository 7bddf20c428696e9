//! Largest eigenvalue of bipartite graphs with a prescribed number of edges.
//!
//! The largest eigenvalue of a bipartite graph equals the largest singular
//! value of its representation matrix `A`. Among graphs with a given degree
//! sequence the chain graph maximises it, so extremal questions reduce to
//! staircases (Ferrers diagrams). This crate computes spectra and rational
//! bounds for chain graphs, solves the associated `omega`-minimisation
//! problems exactly, and checks the extremal claims by exhaustive search.

pub mod bipartite;
pub mod cli;
pub mod cmatrix;
pub mod compound;
pub mod error;
pub mod extremal;
pub mod report;
pub mod spectra;

pub use error::{Error, Result};

/// Exact rational used for `omega`-type quantities.
pub type Rational = num_rational::Ratio<i128>;
