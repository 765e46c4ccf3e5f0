use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ArithError;

/// `g = gcd(|a|, |b|)` together with coefficients satisfying `s*a + t*b = g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bezout {
    pub gcd: BigInt,
    pub s: BigInt,
    pub t: BigInt,
}

/// Extended Euclid. The gcd is always non-negative; for `(0, 0)` it is zero
/// and both coefficients are zero.
pub fn gcd_bezout(a: &BigInt, b: &BigInt) -> Bezout {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        Bezout { gcd: -e.gcd, s: -e.x, t: -e.y }
    } else {
        Bezout { gcd: e.gcd, s: e.x, t: e.y }
    }
}

/// Coefficients `b_i` with `sum b_i * (N / n_i) = 1`, where `N = prod n_i`.
///
/// Succeeds exactly when the exponents are pairwise coprime.
pub fn multi_bezout(ns: &[u64]) -> Result<Vec<BigInt>, ArithError> {
    if ns.is_empty() {
        return Err(ArithError::Empty);
    }
    let total: BigInt = ns.iter().map(|&n| BigInt::from(n)).product();
    let cofactors: Vec<BigInt> = ns.iter().map(|&n| &total / BigInt::from(n)).collect();

    // Fold pairwise: keep coefficients so that sum coeffs[i] * cofactors[i] = g.
    let mut coeffs = vec![BigInt::zero(); ns.len()];
    coeffs[0] = BigInt::one();
    let mut g = cofactors[0].clone();
    for (i, c) in cofactors.iter().enumerate().skip(1) {
        let step = gcd_bezout(&g, c);
        for x in coeffs.iter_mut().take(i) {
            *x *= &step.s;
        }
        coeffs[i] = step.t;
        g = step.gcd;
    }
    if g.is_one() {
        Ok(coeffs)
    } else {
        Err(ArithError::NotCoprime { gcd: g })
    }
}
