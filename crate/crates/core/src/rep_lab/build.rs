use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::{self, CMat};
use super::{verify_relations, ComplexMatrix, EigenConfig, RepError, Representation, CONSTRUCTION_TOL};

/// Conjugators drawn by the seeded generator are redrawn until their
/// condition number is below this. Rounding in `A^n` grows roughly like
/// `n κ^3 ε`, so `κ = 30` keeps exponents up to a few dozen well inside the
/// verification tolerance.
const MAX_DRAWN_COND: f64 = 30.0;
const MAX_DRAWS: usize = 64;

/// Seeded pseudorandom invertible `m x m` matrix with entries in the unit
/// square of the complex plane.
pub fn random_conjugator<R: Rng>(m: usize, rng: &mut R) -> ComplexMatrix {
    let mut best: Option<(f64, CMat)> = None;
    for _ in 0..MAX_DRAWS {
        let g = CMat::from_fn(m, m, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let cond = linalg::condition_number(&g);
        if cond <= MAX_DRAWN_COND {
            return ComplexMatrix::from_matrix(g).expect("finite draw");
        }
        if best.as_ref().map_or(true, |(c, _)| cond < *c) {
            best = Some((cond, g));
        }
    }
    ComplexMatrix::from_matrix(best.expect("at least one draw").1).expect("finite draw")
}

/// `A_i = g_i D_i g_i^{-1}` with `D_i` the diagonal of the configured roots.
///
/// Without explicit conjugators, `g_i` come from a ChaCha generator seeded
/// with `seed`.
pub fn build_representation(config: &EigenConfig, seed: u64) -> Result<Representation, RepError> {
    config.validate()?;
    let m = config.size();
    let conjugators: Vec<ComplexMatrix> = match &config.conjugators {
        Some(gs) => gs.clone(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..config.spec.rank()).map(|_| random_conjugator(m, &mut rng)).collect()
        }
    };

    let mut matrices = Vec::with_capacity(conjugators.len());
    for (index, (g, roots)) in conjugators.iter().zip(&config.roots).enumerate() {
        let det = g.determinant().norm();
        if det <= CONSTRUCTION_TOL {
            return Err(RepError::SingularConjugator { index, det });
        }
        let g_inv = linalg::inverse(g.matrix()).ok_or(RepError::SingularConjugator { index, det })?;
        let values: Vec<Complex64> = roots.iter().map(|q| q.to_complex()).collect();
        let d = ComplexMatrix::diagonal(&values);
        matrices.push(ComplexMatrix::from_matrix(g.matrix() * d.matrix() * g_inv)?);
    }

    let rep = Representation::new(config.spec.clone(), matrices, config.tol)?;
    let check = verify_relations(&rep);
    if check.max_residual >= rep.tolerance() {
        return Err(RepError::IllConditioned { residual: check.max_residual });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{RootOfUnity, Sign};
    use crate::torus_groups::GroupSpec;

    fn r(a: i64, b: u64) -> RootOfUnity {
        RootOfUnity::new(a, b)
    }

    fn config_4_5() -> EigenConfig {
        EigenConfig::new(
            GroupSpec::new(vec![4, 5]).unwrap(),
            Sign::Plus,
            vec![vec![r(1, 4), r(3, 4)], vec![r(1, 5), r(4, 5)]],
        )
    }

    #[test]
    fn identity_conjugators_give_diagonal_pair() {
        let cfg = config_4_5().with_conjugators(vec![ComplexMatrix::identity(2), ComplexMatrix::identity(2)]);
        let rep = build_representation(&cfg, 0).unwrap();
        let i = Complex64::new(0.0, 1.0);
        assert!((rep.matrices()[0].matrix() - ComplexMatrix::diagonal(&[i, -i]).matrix()).norm() < 1e-15);
        let z = r(1, 5).to_complex();
        assert!((rep.matrices()[1].matrix() - ComplexMatrix::diagonal(&[z, z.conj()]).matrix()).norm() < 1e-15);
        let a4 = linalg::power(rep.matrices()[0].matrix(), 4).unwrap();
        let b5 = linalg::power(rep.matrices()[1].matrix(), 5).unwrap();
        assert!((a4 - linalg::identity(2)).norm() < 1e-14);
        assert!((b5 - linalg::identity(2)).norm() < 1e-14);
    }

    #[test]
    fn seeded_conjugators_are_reproducible_and_accurate() {
        let a = build_representation(&config_4_5(), 7).unwrap();
        let b = build_representation(&config_4_5(), 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, build_representation(&config_4_5(), 8).unwrap());
        assert!(verify_relations(&a).max_residual < 1e-12);
    }

    #[test]
    fn trivial_rank_one() {
        let cfg = EigenConfig::new(GroupSpec::new(vec![2, 3]).unwrap(), Sign::Plus, vec![vec![r(0, 1)], vec![r(0, 1)]]);
        let rep = build_representation(&cfg, 0).unwrap();
        for a in rep.matrices() {
            assert!((a.matrix()[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn singular_conjugator_rejected() {
        let sing = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        let cfg = config_4_5().with_conjugators(vec![ComplexMatrix::identity(2), sing]);
        assert!(matches!(build_representation(&cfg, 0), Err(RepError::SingularConjugator { index: 1, .. })));
    }
}
