//! Explicit matrix representations of `Γ_n` in `GL(m, C)` / `SL(m, C)`.
//!
//! Representations are built as `A_i = g_i D_i g_i^{-1}` from exact
//! eigenvalue data, checked numerically against the defining relations, and
//! deformed along the flows used to count and connect components.
//!
//! Tolerances follow a fixed ladder: construction [`CONSTRUCTION_TOL`],
//! verification [`VERIFY_TOL`] (the default representation tolerance) and
//! path following [`PATH_TOL`].

mod build;
mod checks;
mod deform;
pub mod linalg;
mod types;

pub use build::{build_representation, random_conjugator};
pub use checks::{
    double_coset_invariant, eigenspan_check, is_irreducible_sl2, max_commutator_norm, verify_relations,
    EigenspanReport, RelationCheck,
};
pub use deform::{path_to_abelian, sdr_step, z_flow, AbelianPath};
pub use types::{ComplexMatrix, EigenConfig, Representation};

use thiserror::Error;

pub const CONSTRUCTION_TOL: f64 = 1e-12;
pub const VERIFY_TOL: f64 = 1e-9;
pub const PATH_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("conjugator {index} is singular (|det| = {det:e})")]
    SingularConjugator { index: usize, det: f64 },
    #[error("matrix {index} is not invertible (|det| = {det:e})")]
    NotInvertible { index: usize, det: f64 },
    #[error("A_i^(n_i) are not a common scalar matrix (residual {residual:e})")]
    NonCentral { residual: f64 },
    #[error("central charge has modulus {modulus}, expected 1")]
    ChargeNotUnit { modulus: f64 },
    #[error("matrix {index} is not diagonalizable within tolerance")]
    NotDiagonalizable { index: usize },
    #[error("eigen-solver residual {residual:e} exceeds tolerance")]
    IllConditioned { residual: f64 },
    #[error("commutator norm {norm:e} is within [tol, 10 tol]; tighten the input")]
    Ambiguous { norm: f64 },
    #[error("commutator and common-eigenvector tests disagree; input is not polystable")]
    CriteriaDisagree,
    #[error("determinant {det} is not 1")]
    DeterminantNotOne { det: String },
    #[error("path left the tolerance budget: {0}")]
    PathDrift(String),
}

impl RepError {
    pub fn name(&self) -> &'static str {
        match self {
            RepError::Invalid(_) => "InvalidInput",
            RepError::SingularConjugator { .. } => "SingularConjugator",
            RepError::NotInvertible { .. } => "NotInvertible",
            RepError::NonCentral { .. } => "NonCentral",
            RepError::ChargeNotUnit { .. } => "ChargeNotUnit",
            RepError::NotDiagonalizable { .. } => "NotDiagonalizable",
            RepError::IllConditioned { .. } => "IllConditioned",
            RepError::Ambiguous { .. } => "Ambiguous",
            RepError::CriteriaDisagree => "CriteriaDisagree",
            RepError::DeterminantNotOne { .. } => "DeterminantNotOne",
            RepError::PathDrift(_) => "PathDrift",
        }
    }
}
