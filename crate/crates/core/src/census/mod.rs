//! Component counts for representation spaces of `Γ_n`.
//!
//! Every count that has a closed formula also has an enumeration path, and
//! every enumeration carries an internal Burnside recount. A disagreement
//! between the two inside one operation is reported as
//! [`CensusError::AuditMismatch`] rather than silently resolved.

mod de;
mod gl;
mod sl2;

pub use de::{de_components, gl2_irr_components, DeOutcome, SubsetTuple};
pub use gl::{
    free_product_components_gl, mccrudden_bound_check, nth_root_classes, McCruddenCheck, RootClasses,
};
pub use sl2::{sl2_components_enumerate, sl2_components_formula, EigenTuple};

use serde::Serialize;
use thiserror::Error;

use crate::exact_arith::Sign;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("enumeration needs {required} items, budget is {budget}")]
    BudgetExceeded { required: String, budget: u64 },
    #[error("internal audit failed: {0}")]
    AuditMismatch(String),
}

impl CensusError {
    pub fn name(&self) -> &'static str {
        match self {
            CensusError::InvalidInput(_) => "InvalidInput",
            CensusError::NotApplicable(_) => "NotApplicable",
            CensusError::BudgetExceeded { .. } => "BudgetExceeded",
            CensusError::AuditMismatch(_) => "AuditMismatch",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    /// Upper bound on the number of tuples an enumeration may visit.
    pub budget: u64,
    /// Keep one canonical representative per counted component.
    pub witness: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { budget: DEFAULT_BUDGET, witness: false }
    }
}

/// Orbit tallies for one value of the shared sign `λ_i^{n_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignTally {
    pub sign: Sign,
    pub tuples: u64,
    pub orbits: u64,
    pub exceptional: u64,
    pub components: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport<W> {
    /// Tuples visited before quotienting.
    pub enumerated: u64,
    pub total_orbits: u64,
    pub exceptional_orbits: u64,
    pub component_count: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub by_sign: Vec<SignTally>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<W>>,
}

fn check_budget(required: u128, budget: u64) -> Result<(), CensusError> {
    if required > budget as u128 {
        Err(CensusError::BudgetExceeded { required: required.to_string(), budget })
    } else {
        Ok(())
    }
}

/// Product that saturates instead of overflowing; only compared to budgets.
fn saturating_product(xs: impl IntoIterator<Item = u128>) -> u128 {
    xs.into_iter().fold(1u128, |acc, x| acc.saturating_mul(x))
}
