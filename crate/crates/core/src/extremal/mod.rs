//! The `omega`-minimisation problems and the verification engines built on them.

pub mod minimize;
pub mod verify;

pub use minimize::{
    auxmin, min_omega_continuous, min_omega_e3k1, min_omega_integer, AuxBoundary, AuxMin,
    ContinuousMin, IntegerMin, TwoBlockProfile,
};
pub use verify::{
    admissible_instances, build_extremal_degrees, chain_lambda_sq, check_hypotheses,
    has_conjecture_shape, is_admissible, isomorphic_chains, monotonicity_margin,
    verify_chain_dominance, verify_conjecture, verify_monotonicity, Candidate, DominanceMode,
    DominanceReport, DominanceRow, ExtremalInstance, ExtremalReport, Separation,
};
