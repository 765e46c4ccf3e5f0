//! Seeded generators shared by the property and acceptance suites.
#![allow(dead_code)]

use charvar::exact_arith::enumerate_roots;
use charvar::rep_lab::{build_representation, random_conjugator, ComplexMatrix, EigenConfig, Representation};
use charvar::{GroupSpec, RootOfUnity, Sign};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random eigenvalue configuration with `r` generators of size `m`.
pub fn random_config(rng: &mut ChaCha8Rng, m: usize, r: usize) -> EigenConfig {
    let n: Vec<u64> = (0..r).map(|_| rng.gen_range(2..=9)).collect();
    let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
    let roots = n
        .iter()
        .map(|&ni| {
            let pool = enumerate_roots(ni, sign);
            (0..m).map(|_| *pool.choose(rng).unwrap()).collect()
        })
        .collect();
    EigenConfig::new(GroupSpec::new(n).unwrap(), sign, roots)
}

/// A config and a representation built from it with a seed drawn from `rng`.
pub fn random_rep(rng: &mut ChaCha8Rng, m: usize, r: usize) -> (EigenConfig, Representation) {
    let cfg = random_config(rng, m, r);
    let seed = rng.gen();
    let rep = build_representation(&cfg, seed).expect("seeded build succeeds");
    (cfg, rep)
}

pub fn complex_in_annulus(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Block diagonal Jordan form with the given `(eigenvalue, block size)` list.
pub fn jordan(blocks: &[(Complex64, usize)]) -> DMatrix<Complex64> {
    let m: usize = blocks.iter().map(|b| b.1).sum();
    let mut a = DMatrix::zeros(m, m);
    let mut at = 0;
    for &(lambda, k) in blocks {
        for i in 0..k {
            a[(at + i, at + i)] = lambda;
            if i + 1 < k {
                a[(at + i, at + i + 1)] = Complex64::new(1.0, 0.0);
            }
        }
        at += k;
    }
    a
}

/// Random invertible matrix for the eigenspan suite: either a Jordan form of
/// size <= 4 (conjugated by a near-identity matrix) or `g D g^{-1}` with
/// deliberately repeated eigenvalues.
pub fn eigenspan_matrix(rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let m = rng.gen_range(1..=4);
    let mut pool: Vec<Complex64> = (0..2).map(|_| complex_in_annulus(rng)).collect();
    while (pool[0] - pool[1]).norm() < 0.1 {
        pool[1] = complex_in_annulus(rng);
    }
    if rng.gen_bool(0.5) {
        let mut blocks = Vec::new();
        let mut left = m;
        while left > 0 {
            let k = rng.gen_range(1..=left);
            blocks.push((*pool.choose(rng).unwrap(), k));
            left -= k;
        }
        let j = jordan(&blocks);
        if rng.gen_bool(0.5) {
            return j;
        }
        let p = DMatrix::from_fn(m, m, |i, k| {
            let base = if i == k { 1.0 } else { 0.0 };
            Complex64::new(base + rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2))
        });
        let p_inv = p.clone().try_inverse().unwrap();
        p * j * p_inv
    } else {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_fn(m, |_, _| *pool.choose(rng).unwrap()));
        let g = random_conjugator(m, rng).into_matrix();
        let g_inv = g.clone().try_inverse().unwrap();
        g * d * g_inv
    }
}

/// Random element of `SL(2, C)`.
pub fn random_sl2(rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = random_conjugator(2, rng).into_matrix();
    let det = g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)];
    ComplexMatrix::from_matrix(g / det.sqrt()).unwrap()
}

pub fn torus(lambda: Complex64) -> DMatrix<Complex64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![lambda, lambda.inv()]))
}

pub fn root(num: i64, den: u64) -> RootOfUnity {
    RootOfUnity::new(num, den)
}
