//! Invariants of generalized torus knot and link groups
//! `Γ_n = <γ_1, ..., γ_r | γ_1^{n_1} = ... = γ_r^{n_r}>`.
//!
//! * [`exact_arith`]: Bezout, roots of unity as exact angles, Smith normal form.
//! * [`torus_groups`]: knot/link classification and abelianization.
//! * [`census`]: component counts of SL(2,C) and GL(m,C) representation
//!   spaces, each closed formula paired with an enumeration.
//! * [`rep_lab`]: floating-point construction, verification and deformation
//!   of explicit matrix representations.
//! * [`cli`]: the `charvar` command-line surface.

pub mod census;
pub mod cli;
pub mod exact_arith;
pub mod json;
pub mod rep_lab;
pub mod torus_groups;

pub use exact_arith::{RootOfUnity, Sign};
pub use torus_groups::GroupSpec;
