use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

use super::linalg::{self, CMat};
use super::{max_commutator_norm, verify_relations, RepError, Representation, CONSTRUCTION_TOL, PATH_TOL, VERIFY_TOL};
use crate::exact_arith::RootOfUnity;

/// Deformation retraction onto unit central charge: generator `i` is scaled
/// by `λ^{-s/n_i}` with `λ = |ω|`, so the charge becomes `λ^{-s} ω`.
pub fn sdr_step(rep: &Representation, s: f64) -> Result<Representation, RepError> {
    if !(0.0..=1.0).contains(&s) {
        return Err(RepError::Invalid(format!("s must lie in [0, 1], got {s}")));
    }
    let omega = verify_relations(rep).central()?;
    let lambda = omega.norm();
    let factors: Vec<Complex64> =
        rep.spec().exponents().iter().map(|&n| Complex64::new(lambda.powf(-s / n as f64), 0.0)).collect();
    rep.scaled(&factors)
}

/// Multiply each `A_i` by `e^{2πik/n_i}`. Needs a central charge of modulus 1.
pub fn z_flow(rep: &Representation, k: i64) -> Result<Representation, RepError> {
    let omega = verify_relations(rep).central()?;
    if (omega.norm() - 1.0).abs() > rep.tolerance() {
        return Err(RepError::ChargeNotUnit { modulus: omega.norm() });
    }
    let factors: Vec<Complex64> =
        rep.spec().exponents().iter().map(|&n| RootOfUnity::new(k, n).to_complex()).collect();
    rep.scaled(&factors)
}

#[derive(Debug, Clone, Serialize)]
pub struct AbelianPath {
    pub path: Vec<Representation>,
    /// Largest relation residual over all samples.
    pub max_residual: f64,
    /// `max_{i<j} |[A_i, A_j] - I|_F` at the last sample.
    pub endpoint_commutator: f64,
}

/// Largest size for which paths are constructed.
const MAX_PATH_SIZE: usize = 4;
const MAX_RETRIES: usize = 8;
/// Eigenvalues of `g^{-1}` closer than this (in argument) to the negative
/// real axis trigger a retry with a perturbed conjugator.
const BRANCH_CUT_MARGIN: f64 = 1e-6;
/// Sample residuals may exceed the input residual by this factor, and may
/// always reach the verification tolerance.
const RESIDUAL_GROWTH: f64 = 100.0;

/// `h(t) = exp(t log M)` for a diagonalizable `M = W diag(μ) W^{-1}`.
struct LogInterpolator {
    w: CMat,
    w_inv: CMat,
    logs: Vec<Complex64>,
}

impl LogInterpolator {
    fn new(m: &CMat) -> Option<Self> {
        let (w, mu) = linalg::diagonalize(m, CONSTRUCTION_TOL)?;
        if mu.iter().any(|z| (z.arg().abs() - PI).abs() < BRANCH_CUT_MARGIN) {
            return None;
        }
        let w_inv = linalg::inverse(&w)?;
        Some(LogInterpolator { w, w_inv, logs: mu.iter().map(|z| z.ln()).collect() })
    }

    fn at(&self, t: f64) -> CMat {
        let d = CMat::from_diagonal(&linalg::CVec::from_iterator(self.logs.len(), self.logs.iter().map(|l| (l * t).exp())));
        &self.w * d * &self.w_inv
    }
}

/// `h_i(t)` and its inverse; `None` for generators that are already diagonal.
enum Conjugation {
    Fixed,
    Moving(LogInterpolator),
}

impl Conjugation {
    fn apply(&self, a: &CMat, t: f64) -> CMat {
        match self {
            Conjugation::Fixed => a.clone(),
            Conjugation::Moving(h) => h.at(t) * a * h.at(-t),
        }
    }
}

/// Unitary diagonal with unit determinant.
fn det_one_phases(m: usize, rng: &mut ChaCha8Rng) -> CMat {
    let mut angles: Vec<f64> = (0..m - 1).map(|_| rng.gen_range(0.0..TAU)).collect();
    angles.push(-angles.iter().sum::<f64>());
    CMat::from_diagonal(&linalg::CVec::from_iterator(m, angles.into_iter().map(|a| Complex64::from_polar(1.0, a))))
}

fn conjugation_for(a: &CMat, index: usize, rng: &mut ChaCha8Rng) -> Result<Conjugation, RepError> {
    if linalg::is_diagonal(a, CONSTRUCTION_TOL) {
        return Ok(Conjugation::Fixed);
    }
    let (g, _) = linalg::diagonalize(a, CONSTRUCTION_TOL).ok_or(RepError::NotDiagonalizable { index })?;
    let m = a.nrows();
    for attempt in 0..=MAX_RETRIES {
        // g U diagonalizes `a` as well, for any diagonal U
        let g = if attempt == 0 { g.clone() } else { &g * det_one_phases(m, rng) };
        let Some(g_inv) = linalg::inverse(&g) else { break };
        if let Some(h) = LogInterpolator::new(&g_inv) {
            return Ok(Conjugation::Moving(h));
        }
    }
    Err(RepError::NotDiagonalizable { index })
}

/// Path `x_i(t) = h_i(t) A_i h_i(t)^{-1}` from `rep` to a representation with
/// diagonal, hence commuting, generators. `h_i(t) = exp(t log g_i^{-1})` where
/// `g_i` diagonalizes `A_i`; `seed` drives the conjugator perturbations used
/// when the principal logarithm is undefined.
pub fn path_to_abelian(rep: &Representation, steps: usize, seed: u64) -> Result<AbelianPath, RepError> {
    if steps == 0 {
        return Err(RepError::Invalid("steps must be at least 1".into()));
    }
    if rep.size() > MAX_PATH_SIZE {
        return Err(RepError::Invalid(format!("paths need m <= {MAX_PATH_SIZE}, got m = {}", rep.size())));
    }
    // Diagonalizability first: a defective generator is the more specific
    // diagnosis, since it can never have a central power.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let conjugations = rep
        .matrices()
        .iter()
        .enumerate()
        .map(|(i, a)| conjugation_for(a.matrix(), i, &mut rng))
        .collect::<Result<Vec<_>, _>>()?;
    let input = verify_relations(rep);
    input.central()?;

    let budget = (RESIDUAL_GROWTH * input.max_residual).max(VERIFY_TOL);
    let mut path = Vec::with_capacity(steps + 1);
    path.push(rep.clone());
    let mut max_residual = input.max_residual;
    for k in 1..=steps {
        let t = k as f64 / steps as f64;
        let mats = rep.matrices().iter().zip(&conjugations).map(|(a, c)| c.apply(a.matrix(), t)).collect();
        let sample = rep.replace(mats)?;
        let residual = verify_relations(&sample).max_residual;
        if residual >= budget {
            return Err(RepError::PathDrift(format!("relation residual {residual:e} at t = {t} exceeds {budget:e}")));
        }
        max_residual = max_residual.max(residual);
        path.push(sample);
    }

    let endpoint_commutator = max_commutator_norm(path.last().expect("non-empty path"));
    if endpoint_commutator >= PATH_TOL {
        return Err(RepError::PathDrift(format!("endpoint commutator {endpoint_commutator:e} exceeds {PATH_TOL:e}")));
    }
    Ok(AbelianPath { path, max_residual, endpoint_commutator })
}
