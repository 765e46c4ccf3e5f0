//! Small dense complex linear algebra on top of nalgebra: powers, numerical
//! rank, null spaces, and clustered eigen-decomposition with residual checks.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Eigenvalues closer than this (relative to the spectral scale) are treated
/// as one repeated eigenvalue. Generous because a defective eigenvalue of
/// multiplicity k splits by roughly the k-th root of the rounding error.
pub const CLUSTER_RTOL: f64 = 1e-2;
/// Singular values below this (relative to `|A|_F`) count as zero.
pub const NULL_RTOL: f64 = 1e-8;
/// Eigenvector bases worse conditioned than this are not diagonalizations.
pub const MAX_BASIS_COND: f64 = 1e8;

pub fn identity(m: usize) -> CMat {
    CMat::identity(m, m)
}

pub fn frob(a: &CMat) -> f64 {
    a.norm()
}

pub fn inverse(a: &CMat) -> Option<CMat> {
    a.clone().try_inverse()
}

/// `a^k` by repeated squaring; negative `k` goes through the inverse.
pub fn power(a: &CMat, k: i64) -> Option<CMat> {
    let base = if k < 0 { inverse(a)? } else { a.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = identity(a.nrows());
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    Some(acc)
}

/// `a b a^{-1} b^{-1}`
pub fn commutator(a: &CMat, b: &CMat) -> Option<CMat> {
    Some(a * b * inverse(a)? * inverse(b)?)
}

fn svd(a: &CMat, want_v: bool) -> nalgebra::SVD<Complex64, nalgebra::Dyn, nalgebra::Dyn> {
    let max_niter = SWEEPS_PER_DIM * a.nrows().max(a.ncols()).max(1);
    a.clone()
        .try_svd(false, want_v, f64::EPSILON, max_niter)
        .or_else(|| a.clone().try_svd(false, want_v, 1e-14, max_niter))
        .expect("SVD converges")
}

pub fn singular_values(a: &CMat) -> Vec<f64> {
    svd(a, false).singular_values.iter().copied().collect()
}

pub fn condition_number(a: &CMat) -> f64 {
    let sv = singular_values(a);
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Numerical rank with threshold `rtol * max(1, σ_max)`.
pub fn rank(a: &CMat, rtol: f64) -> usize {
    if a.ncols() == 0 || a.nrows() == 0 {
        return 0;
    }
    let sv = singular_values(a);
    let max = sv.iter().copied().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > rtol * max.max(1.0)).count()
}

/// Orthonormal basis of `{v : |a v| <= thresh}` taken from the SVD.
pub fn null_space(a: &CMat, thresh: f64) -> Vec<CVec> {
    let svd = svd(a, true);
    let v_t = svd.v_t.expect("requested V^H");
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= thresh)
        .map(|(j, _)| v_t.row(j).adjoint())
        .collect()
}

/// Sweeps allowed per dimension before a Schur or SVD attempt is abandoned.
const SWEEPS_PER_DIM: usize = 500;

/// Eigenvalues from the complex Schur form. The QR iteration can stall on
/// nearly scalar or highly structured input, so a stalled attempt is retried
/// on the normalized matrix shifted by its mean eigenvalue, then on unitary
/// (Fourier) conjugates of it, each with a strict and a looser deflation
/// threshold.
pub fn eigenvalues(a: &CMat) -> Option<Vec<Complex64>> {
    let m = a.nrows();
    let max_niter = SWEEPS_PER_DIM * m.max(1);
    let mean = a.trace() / m.max(1) as f64;
    let mut shifted = a - identity(m) * mean;
    let norm = frob(&shifted);
    let norm = if norm > 0.0 { norm } else { 1.0 };
    shifted /= Complex64::new(norm, 0.0);
    let f = fourier(m);
    let mixed = &f * &shifted * f.adjoint();
    let mixed2 = &f * &mixed * f.adjoint();
    let attempts = [(a, 1.0, Complex64::new(0.0, 0.0)), (&shifted, norm, mean), (&mixed, norm, mean), (&mixed2, norm, mean)];
    for eps in [f64::EPSILON, 1e-14, 1e-13] {
        for &(x, scale, shift) in &attempts {
            if let Some(schur) = nalgebra::Schur::try_new(x.clone(), eps, max_niter) {
                let (_, t) = schur.unpack();
                return Some(t.diagonal().iter().map(|z| z * scale + shift).collect());
            }
        }
    }
    None
}

/// Unitary discrete Fourier matrix.
fn fourier(m: usize) -> CMat {
    let scale = 1.0 / (m as f64).sqrt();
    CMat::from_fn(m, m, |j, k| Complex64::from_polar(scale, std::f64::consts::TAU * (j * k) as f64 / m as f64))
}

/// Groups eigenvalues by single linkage at [`CLUSTER_RTOL`]; returns
/// `(mean, multiplicity)`.
pub fn cluster(eigs: &[Complex64]) -> Vec<(Complex64, usize)> {
    let scale = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let scale = if scale > 0.0 { scale } else { 1.0 };
    cluster_within(eigs, CLUSTER_RTOL * scale)
        .into_iter()
        .map(|members| (members.iter().sum::<Complex64>() / members.len() as f64, members.len()))
        .collect()
}

/// Single-linkage groups of `eigs` at absolute `radius`.
fn cluster_within(eigs: &[Complex64], radius: f64) -> Vec<Vec<Complex64>> {
    let mut label: Vec<usize> = (0..eigs.len()).collect();
    for i in 0..eigs.len() {
        for j in 0..i {
            if (eigs[i] - eigs[j]).norm() <= radius {
                let (a, b) = (label[i], label[j]);
                for l in label.iter_mut() {
                    if *l == a {
                        *l = b;
                    }
                }
            }
        }
    }
    let mut out: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for (i, &l) in label.iter().enumerate() {
        match out.iter_mut().find(|(k, _)| *k == l) {
            Some(entry) => entry.1.push(eigs[i]),
            None => out.push((l, vec![eigs[i]])),
        }
    }
    out.into_iter().map(|(_, members)| members).collect()
}

/// One eigenspace: the cluster mean, its algebraic multiplicity, and an
/// orthonormal basis of `ker(A - μI)`.
#[derive(Debug, Clone)]
pub struct Eigenspace {
    pub value: Complex64,
    pub multiplicity: usize,
    pub basis: Vec<CVec>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenFailure {
    pub residual: f64,
}

/// Eigenspaces of `a`, one per eigenvalue cluster. A cluster whose mean has
/// no numerical kernel is split at a tighter radius before giving up, since
/// distinct eigenvalues can fall within [`CLUSTER_RTOL`] of each other. Fails
/// when no kernel is found or a basis vector's residual exceeds
/// `max(check_tol, NULL_RTOL) * |A|_F`.
pub fn eigenspaces(a: &CMat, check_tol: f64) -> Result<Vec<Eigenspace>, EigenFailure> {
    let scale = frob(a);
    let scale = if scale > 0.0 { scale } else { 1.0 };
    let eigs = eigenvalues(a).ok_or(EigenFailure { residual: f64::INFINITY })?;
    let spectral = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let spectral = if spectral > 0.0 { spectral } else { 1.0 };
    let mut out = Vec::new();
    for members in cluster_within(&eigs, CLUSTER_RTOL * spectral) {
        let radius = CLUSTER_RTOL * spectral;
        split_eigenspace(a, &members, radius, radius * MIN_SPLIT, scale, check_tol, &mut out)?;
    }
    Ok(out)
}

/// Smallest cluster radius tried, relative to the first.
const MIN_SPLIT: f64 = 1e-4;

fn split_eigenspace(
    a: &CMat,
    members: &[Complex64],
    radius: f64,
    floor: f64,
    scale: f64,
    check_tol: f64,
    out: &mut Vec<Eigenspace>,
) -> Result<(), EigenFailure> {
    let m = a.nrows();
    let mu = members.iter().sum::<Complex64>() / members.len() as f64;
    let shifted = a - identity(m) * mu;
    let basis = null_space(&shifted, NULL_RTOL * scale);
    if basis.is_empty() {
        let tighter = radius / 10.0;
        let parts = cluster_within(members, tighter);
        if members.len() > 1 && tighter >= floor {
            for part in parts {
                split_eigenspace(a, &part, tighter, floor, scale, check_tol, out)?;
            }
            return Ok(());
        }
        return Err(EigenFailure { residual: singular_values(&shifted).into_iter().fold(f64::INFINITY, f64::min) });
    }
    for v in &basis {
        let res = (&shifted * v).norm();
        if res > check_tol.max(NULL_RTOL) * scale {
            return Err(EigenFailure { residual: res });
        }
    }
    out.push(Eigenspace { value: mu, multiplicity: members.len(), basis });
    Ok(())
}

/// Columns of all eigenspace bases side by side.
pub fn stack_columns(vectors: &[CVec], m: usize) -> CMat {
    CMat::from_fn(m, vectors.len(), |i, j| vectors[j][i])
}

/// `A = V diag(values) V^{-1}` when `a` is diagonalizable with a basis whose
/// condition number is at most [`MAX_BASIS_COND`].
pub fn diagonalize(a: &CMat, check_tol: f64) -> Option<(CMat, Vec<Complex64>)> {
    let m = a.nrows();
    let spaces = eigenspaces(a, check_tol).ok()?;
    let mut vectors = Vec::with_capacity(m);
    let mut values = Vec::with_capacity(m);
    for s in spaces {
        for v in s.basis {
            vectors.push(v);
            values.push(s.value);
        }
    }
    if vectors.len() != m {
        return None;
    }
    let v = stack_columns(&vectors, m);
    if condition_number(&v) > MAX_BASIS_COND {
        return None;
    }
    Some((v, values))
}

pub fn is_diagonal(a: &CMat, tol: f64) -> bool {
    let mut off = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            if i != j {
                off += a[(i, j)].norm_sqr();
            }
        }
    }
    off.sqrt() <= tol
}
