use num_complex::Complex64;
use serde::Serialize;

use super::linalg::{self, CMat};
use super::{ComplexMatrix, RepError, Representation};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationCheck {
    /// `max_{i,j} |A_i^{n_i} - A_j^{n_j}|_F`
    pub max_residual: f64,
    /// `max_i |A_i^{n_i} - ω I|_F` for `ω = tr(A_1^{n_1}) / m`.
    pub central_residual: f64,
    /// The central charge, when every `A_i^{n_i}` is within tolerance of `ω I`.
    #[serde(serialize_with = "crate::json::opt_complex")]
    pub omega: Option<Complex64>,
}

impl RelationCheck {
    pub fn is_central(&self) -> bool {
        self.omega.is_some()
    }

    /// `ω`, or [`RepError::NonCentral`].
    pub fn central(&self) -> Result<Complex64, RepError> {
        self.omega.ok_or(RepError::NonCentral { residual: self.central_residual })
    }
}

fn relation_powers(rep: &Representation) -> Vec<CMat> {
    rep.matrices()
        .iter()
        .zip(rep.spec().exponents())
        .map(|(a, &n)| linalg::power(a.matrix(), n as i64).expect("non-negative power"))
        .collect()
}

pub fn verify_relations(rep: &Representation) -> RelationCheck {
    let powers = relation_powers(rep);
    let m = rep.size();
    let mut max_residual: f64 = 0.0;
    for i in 0..powers.len() {
        for j in i + 1..powers.len() {
            max_residual = max_residual.max(linalg::frob(&(&powers[i] - &powers[j])));
        }
    }
    let omega = powers[0].trace() / m as f64;
    let scalar = linalg::identity(m) * omega;
    let central_residual = powers.iter().map(|p| linalg::frob(&(p - &scalar))).fold(0.0, f64::max);
    let central = central_residual <= rep.tolerance() * omega.norm().max(1.0);
    RelationCheck { max_residual, central_residual, omega: central.then_some(omega) }
}

/// `max_{i<j} |[A_i, A_j] - I|_F` with `[A, B] = A B A^{-1} B^{-1}`.
pub fn max_commutator_norm(rep: &Representation) -> f64 {
    let m = rep.size();
    let mats = rep.matrices();
    let mut best: f64 = 0.0;
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            let c = linalg::commutator(mats[i].matrix(), mats[j].matrix()).expect("representation matrices are invertible");
            best = best.max(linalg::frob(&(c - linalg::identity(m))));
        }
    }
    best
}

fn is_scalar(a: &CMat, tol: f64) -> bool {
    let m = a.nrows();
    let mean = a.trace() / m as f64;
    linalg::frob(&(a - linalg::identity(m) * mean)) <= tol * linalg::frob(a).max(1.0)
}

/// Smallest, over candidate eigenvectors `v` of one non-scalar generator, of
/// the worst misalignment `|A_j v - (v^H A_j v) v|` across generators.
fn common_eigenvector_gap(rep: &Representation) -> Result<f64, RepError> {
    let tol = rep.tolerance();
    let Some(pivot) = rep.matrices().iter().find(|a| !is_scalar(a.matrix(), tol)) else {
        return Ok(0.0);
    };
    let spaces = linalg::eigenspaces(pivot.matrix(), tol).map_err(|e| RepError::IllConditioned { residual: e.residual })?;
    let mut best = f64::INFINITY;
    for v in spaces.iter().flat_map(|s| s.basis.iter()) {
        let worst = rep
            .matrices()
            .iter()
            .map(|a| {
                let av = a.matrix() * v;
                let rayleigh = v.dotc(&av);
                (av - v * rayleigh).norm() / linalg::frob(a.matrix()).max(1.0)
            })
            .fold(0.0, f64::max);
        best = best.min(worst);
    }
    Ok(best)
}

/// Irreducibility of a polystable `SL(2, C)` representation: some commutator
/// is non-trivial. Cross-checked against the existence of a common eigenvector.
pub fn is_irreducible_sl2(rep: &Representation) -> Result<bool, RepError> {
    if rep.size() != 2 {
        return Err(RepError::Invalid(format!("irreducibility test needs m = 2, got m = {}", rep.size())));
    }
    let tol = rep.tolerance();
    let norm = max_commutator_norm(rep);
    if (tol..=10.0 * tol).contains(&norm) {
        return Err(RepError::Ambiguous { norm });
    }
    let irreducible = norm > 10.0 * tol;
    let has_common = common_eigenvector_gap(rep)? <= tol.sqrt();
    if irreducible == has_common {
        return Err(RepError::CriteriaDisagree);
    }
    Ok(irreducible)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenspanReport {
    pub dim_a: usize,
    pub dim_ak: usize,
    /// Dimensions agree and the two spans coincide.
    pub equal: bool,
}

/// Rank below which stacked unit eigenvectors are considered dependent.
const SPAN_RTOL: f64 = 1e-6;

/// Compare the span of the eigenvectors of `A` with that of `A^k`.
pub fn eigenspan_check(a: &ComplexMatrix, k: i64, tol: f64) -> Result<EigenspanReport, RepError> {
    if k == 0 {
        return Err(RepError::Invalid("exponent k must be non-zero".into()));
    }
    let det = a.determinant().norm();
    if det <= tol {
        return Err(RepError::NotInvertible { index: 0, det });
    }
    let m = a.size();
    let ak = linalg::power(a.matrix(), k).ok_or(RepError::NotInvertible { index: 0, det })?;
    let collect = |x: &CMat| -> Result<Vec<linalg::CVec>, RepError> {
        let spaces = linalg::eigenspaces(x, tol).map_err(|e| RepError::IllConditioned { residual: e.residual })?;
        Ok(spaces.into_iter().flat_map(|s| s.basis).collect())
    };
    let va = collect(a.matrix())?;
    let vk = collect(&ak)?;
    let dim_a = linalg::rank(&linalg::stack_columns(&va, m), SPAN_RTOL);
    let dim_ak = linalg::rank(&linalg::stack_columns(&vk, m), SPAN_RTOL);
    let joint: Vec<_> = va.iter().chain(&vk).cloned().collect();
    let dim_joint = linalg::rank(&linalg::stack_columns(&joint, m), SPAN_RTOL);
    Ok(EigenspanReport { dim_a, dim_ak, equal: dim_a == dim_ak && dim_joint == dim_a })
}

/// The entry product `a d` of `A = ((a, b), (c, d))` in `SL(2, C)`, invariant
/// under `A -> diag(λ, 1/λ) A diag(μ, 1/μ)`.
pub fn double_coset_invariant(a: &ComplexMatrix, tol: f64) -> Result<Complex64, RepError> {
    if a.size() != 2 {
        return Err(RepError::Invalid(format!("double coset invariant needs a 2x2 matrix, got {0}x{0}", a.size())));
    }
    let det = a.determinant();
    if (det - Complex64::new(1.0, 0.0)).norm() >= tol {
        return Err(RepError::DeterminantNotOne { det: format!("{det}") });
    }
    let m = a.matrix();
    Ok(m[(0, 0)] * m[(1, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{RootOfUnity, Sign};
    use crate::rep_lab::{build_representation, EigenConfig, VERIFY_TOL};
    use crate::torus_groups::GroupSpec;

    fn spec(n: &[u64]) -> GroupSpec {
        GroupSpec::new(n.to_vec()).unwrap()
    }

    fn d(q: RootOfUnity) -> ComplexMatrix {
        ComplexMatrix::diagonal(&[q.to_complex(), q.inverse().to_complex()])
    }

    #[test]
    fn trivial_rep_is_central_with_charge_one() {
        let rep = Representation::with_default_tolerance(spec(&[2, 3]), vec![ComplexMatrix::identity(3); 2]).unwrap();
        let c = verify_relations(&rep);
        assert_eq!(c.max_residual, 0.0);
        assert_eq!(c.omega, Some(Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn violated_relation() {
        let i = RootOfUnity::new(1, 4);
        let rep = Representation::with_default_tolerance(spec(&[4, 5]), vec![d(i), d(i)]).unwrap();
        let c = verify_relations(&rep);
        // D(i)^4 = I while D(i)^5 = D(i)
        let expect = linalg::frob(&(linalg::identity(2) - d(i).matrix()));
        assert!((c.max_residual - expect).abs() < 1e-12);
        assert!(c.max_residual > 1.0);
        assert!(!c.is_central());
        assert!(matches!(c.central(), Err(RepError::NonCentral { .. })));
    }

    #[test]
    fn built_minus_sign_has_charge_minus_one() {
        let q = RootOfUnity::new(1, 8);
        let p = RootOfUnity::new(1, 10);
        let cfg = EigenConfig::new(spec(&[4, 5]), Sign::Minus, vec![vec![q, q.inverse()], vec![p, p.inverse()]]);
        let rep = build_representation(&cfg, 3).unwrap();
        let c = verify_relations(&rep);
        assert!(c.max_residual < 1e-9);
        assert!((c.omega.unwrap() + 1.0).norm() < 1e-9);
    }

    #[test]
    fn irreducibility_examples() {
        let i = RootOfUnity::new(1, 4);
        let z = RootOfUnity::new(1, 5);
        let diag = Representation::with_default_tolerance(spec(&[4, 5]), vec![d(i), d(z)]).unwrap();
        assert!(!is_irreducible_sl2(&diag).unwrap());

        let cfg = EigenConfig::new(spec(&[4, 5]), Sign::Plus, vec![vec![i, i.inverse()], vec![z, z.inverse()]])
            .with_conjugators(vec![ComplexMatrix::identity(2), crate::rep_lab::random_conjugator(2, &mut rand_chacha::ChaCha8Rng::seed_from_u64(11))]);
        let generic = build_representation(&cfg, 0).unwrap();
        assert!(is_irreducible_sl2(&generic).unwrap());

        let any = ComplexMatrix::from_real_rows(&[&[2.0, 3.0], &[1.0, 2.0]]).unwrap();
        let scalar = Representation::with_default_tolerance(spec(&[4, 5]), vec![ComplexMatrix::identity(2), any]).unwrap();
        assert!(!is_irreducible_sl2(&scalar).unwrap());
    }

    #[test]
    fn irreducibility_needs_m_two() {
        let rep = Representation::with_default_tolerance(spec(&[2, 3]), vec![ComplexMatrix::identity(3); 2]).unwrap();
        assert!(matches!(is_irreducible_sl2(&rep), Err(RepError::Invalid(_))));
    }

    #[test]
    fn ambiguous_commutator() {
        // [A, B] - I has norm ~ 5e-9 for a tiny off-diagonal perturbation.
        let a = ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 0.5]]).unwrap();
        let b = ComplexMatrix::from_real_rows(&[&[1.0, 2e-9], &[0.0, 1.0]]).unwrap();
        let rep = Representation::with_default_tolerance(spec(&[3, 3]), vec![a, b]).unwrap();
        let n = max_commutator_norm(&rep);
        assert!((VERIFY_TOL..=10.0 * VERIFY_TOL).contains(&n), "{n}");
        assert!(matches!(is_irreducible_sl2(&rep), Err(RepError::Ambiguous { .. })));
    }

    #[test]
    fn non_polystable_pair_is_flagged() {
        // Upper-triangular pair: non-trivial commutator but a common eigenvector.
        let a = ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 0.5]]).unwrap();
        let b = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        let rep = Representation::with_default_tolerance(spec(&[3, 3]), vec![a, b]).unwrap();
        assert_eq!(is_irreducible_sl2(&rep), Err(RepError::CriteriaDisagree));
    }

    #[test]
    fn eigenspan_examples() {
        let j = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert_eq!(eigenspan_check(&j, 3, VERIFY_TOL).unwrap(), EigenspanReport { dim_a: 1, dim_ak: 1, equal: true });

        let diag = ComplexMatrix::from_real_rows(&[&[2.0, 0.0, 0.0], &[0.0, -1.0, 0.0], &[0.0, 0.0, 3.0]]).unwrap();
        for k in [-3, -1, 1, 2, 5] {
            assert_eq!(eigenspan_check(&diag, k, VERIFY_TOL).unwrap(), EigenspanReport { dim_a: 3, dim_ak: 3, equal: true });
        }

        // J_2(2) ⊕ (5): one eigenvector from the block, one from the scalar.
        let block = ComplexMatrix::from_real_rows(&[&[2.0, 1.0, 0.0], &[0.0, 2.0, 0.0], &[0.0, 0.0, 5.0]]).unwrap();
        assert_eq!(eigenspan_check(&block, 2, VERIFY_TOL).unwrap(), EigenspanReport { dim_a: 2, dim_ak: 2, equal: true });
    }

    #[test]
    fn eigenspan_rejects_bad_input() {
        let j = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(eigenspan_check(&j, 0, VERIFY_TOL), Err(RepError::Invalid(_))));
        let sing = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(eigenspan_check(&sing, 2, VERIFY_TOL), Err(RepError::NotInvertible { .. })));
    }

    #[test]
    fn double_coset_examples() {
        assert_eq!(double_coset_invariant(&ComplexMatrix::identity(2), VERIFY_TOL).unwrap(), Complex64::new(1.0, 0.0));
        let a = ComplexMatrix::from_real_rows(&[&[2.0, 3.0], &[1.0, 2.0]]).unwrap();
        assert_eq!(double_coset_invariant(&a, VERIFY_TOL).unwrap(), Complex64::new(4.0, 0.0));
        let bad = ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 2.0]]).unwrap();
        assert!(matches!(double_coset_invariant(&bad, VERIFY_TOL), Err(RepError::DeterminantNotOne { .. })));
        assert!(matches!(double_coset_invariant(&ComplexMatrix::identity(3), VERIFY_TOL), Err(RepError::Invalid(_))));
    }

    use rand::SeedableRng;
}
