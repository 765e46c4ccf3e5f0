use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{check_budget, CensusError};
use crate::exact_arith::RootOfUnity;
use crate::torus_groups::GroupSpec;

fn binom(n: u64, k: u64) -> BigUint {
    binomial(BigUint::from(n), BigUint::from(k))
}

/// Components of `Hom^irr(Z_{n_1} * ... * Z_{n_r}, GL(m, C))`:
/// `Π binom(m + n_i - 1, m)`.
pub fn free_product_components_gl(m: u64, spec: &GroupSpec) -> Result<BigUint, CensusError> {
    if m == 0 {
        return Err(CensusError::InvalidInput("matrix size m must be >= 1".into()));
    }
    Ok(spec.exponents().iter().map(|&n| binom(m + n - 1, m)).product())
}

/// Non-decreasing sequences of length `m` over `0..n`, in lexicographic order.
pub(crate) struct Multisets {
    n: u64,
    current: Option<Vec<u64>>,
}

impl Multisets {
    pub(crate) fn new(n: u64, m: usize) -> Self {
        Multisets { n, current: (n > 0 || m == 0).then(|| vec![0; m]) }
    }
}

impl Iterator for Multisets {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        if let Some(i) = (0..next.len()).rev().find(|&i| next[i] + 1 < self.n) {
            let v = next[i] + 1;
            for x in &mut next[i..] {
                *x = v;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Conjugacy classes of `n`-th roots of the identity in `GL(m, C)`, each
/// labelled by its multiset of eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootClasses {
    #[serde(serialize_with = "crate::json::biguint_as_number")]
    pub count: BigUint,
    pub representatives: Vec<Vec<RootOfUnity>>,
}

pub fn nth_root_classes(m: u64, n: u64, budget: u64) -> Result<RootClasses, CensusError> {
    if m == 0 || n == 0 {
        return Err(CensusError::InvalidInput("m and n must be >= 1".into()));
    }
    let count = binom(m + n - 1, n - 1);
    check_budget(count.to_u128().unwrap_or(u128::MAX), budget)?;
    let representatives: Vec<Vec<RootOfUnity>> = Multisets::new(n, m as usize)
        .map(|ks| ks.into_iter().map(|k| RootOfUnity::new(k as i64, n)).collect())
        .collect();
    if BigUint::from(representatives.len()) != count {
        return Err(CensusError::AuditMismatch(format!(
            "enumerated {} classes, binomial count is {count}",
            representatives.len()
        )));
    }
    Ok(RootClasses { count, representatives })
}

/// `|C^n(I)^{GL(m)}| <= |n-th roots of 1 in the centre| * |C^n(I)^{SL(m)}|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct McCruddenCheck {
    pub bound_ok: bool,
    pub lhs: u64,
    pub rhs: u64,
    /// Scalar `n`-th roots of unity.
    pub central_roots: u64,
    /// Classes of `n`-th roots of `I` in `SL(m, C)`: eigenvalue multisets whose
    /// angles sum to an integer.
    pub sl_classes: u64,
}

pub fn mccrudden_bound_check(m: u64, n: u64, budget: u64) -> Result<McCruddenCheck, CensusError> {
    let classes = nth_root_classes(m, n, budget)?;
    let lhs = classes.representatives.len() as u64;
    let sl_classes = Multisets::new(n, m as usize)
        .filter(|ks| ks.iter().sum::<u64>() % n == 0)
        .count() as u64;
    let rhs = n
        .checked_mul(sl_classes)
        .ok_or_else(|| CensusError::InvalidInput("bound overflows 64 bits".into()))?;
    Ok(McCruddenCheck { bound_ok: lhs <= rhs, lhs, rhs, central_roots: n, sl_classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::DEFAULT_BUDGET;

    fn spec(n: &[u64]) -> GroupSpec {
        GroupSpec::new(n.to_vec()).unwrap()
    }

    /// Count multisets of size `m` drawn from `n` symbols by brute force over
    /// all ordered tuples.
    fn brute_multisets(m: u32, n: u64) -> u64 {
        let mut seen = std::collections::HashSet::new();
        for code in 0..n.pow(m) {
            let mut c = code;
            let mut v: Vec<u64> = (0..m)
                .map(|_| {
                    let x = c % n;
                    c /= n;
                    x
                })
                .collect();
            v.sort();
            seen.insert(v);
        }
        seen.len() as u64
    }

    #[test]
    fn free_product_examples() {
        assert_eq!(free_product_components_gl(2, &spec(&[2, 3])).unwrap(), BigUint::from(18u32));
        assert_eq!(free_product_components_gl(2, &spec(&[5, 7])).unwrap(), BigUint::from(420u32));
        assert_eq!(free_product_components_gl(1, &spec(&[4, 9, 5])).unwrap(), BigUint::from(180u32));
        assert!(free_product_components_gl(0, &spec(&[2])).is_err());
    }

    #[test]
    fn free_product_matches_multiset_enumeration() {
        for m in 1..=3u32 {
            for a in 1..=6u64 {
                for b in 1..=6u64 {
                    let expect = brute_multisets(m, a) * brute_multisets(m, b);
                    assert_eq!(free_product_components_gl(m as u64, &spec(&[a, b])).unwrap(), BigUint::from(expect));
                }
            }
        }
    }

    #[test]
    fn root_class_examples() {
        let c = nth_root_classes(2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.count, BigUint::from(3u32));
        let half = RootOfUnity::MINUS_ONE;
        let one = RootOfUnity::ONE;
        assert_eq!(c.representatives, vec![vec![one, one], vec![one, half], vec![half, half]]);
        assert_eq!(nth_root_classes(1, 5, DEFAULT_BUDGET).unwrap().count, BigUint::from(5u32));
        assert_eq!(nth_root_classes(3, 2, DEFAULT_BUDGET).unwrap().count, BigUint::from(4u32));
        assert!(matches!(nth_root_classes(3, 5, 34), Err(CensusError::BudgetExceeded { .. })));
    }

    #[test]
    fn root_class_lists_have_binomial_length() {
        for m in 1..=13u64 {
            for n in 1..=(14 - m) {
                let c = nth_root_classes(m, n, DEFAULT_BUDGET).unwrap();
                assert_eq!(BigUint::from(c.representatives.len()), c.count);
                if m <= 4 && n <= 6 {
                    assert_eq!(c.representatives.len() as u64, brute_multisets(m as u32, n));
                }
            }
        }
    }

    #[test]
    fn mccrudden_examples() {
        let c = mccrudden_bound_check(2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!((c.lhs, c.sl_classes, c.rhs, c.bound_ok), (3, 2, 4, true));
        let c = mccrudden_bound_check(1, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!((c.lhs, c.rhs, c.bound_ok), (3, 3, true));
        // SL(2) classes of cube roots of I: {1,1} and {ω, ω²}.
        let c = mccrudden_bound_check(2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!((c.lhs, c.sl_classes, c.rhs, c.bound_ok), (6, 2, 6, true));
    }

    #[test]
    fn mccrudden_bound_holds_on_small_grid() {
        for m in 1..=5 {
            for n in 1..=8 {
                assert!(mccrudden_bound_check(m, n, DEFAULT_BUDGET).unwrap().bound_ok, "m={m} n={n}");
            }
        }
    }
}
