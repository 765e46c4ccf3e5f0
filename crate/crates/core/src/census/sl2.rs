use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{check_budget, saturating_product, CensusError, CensusOptions, CensusReport, SignTally};
use crate::exact_arith::{enumerate_roots, RootOfUnity, Sign};
use crate::torus_groups::GroupSpec;

/// Eigenvalue tuple `(λ_1, ..., λ_r)` with `λ_i^{n_i} = sign` for every `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EigenTuple {
    pub entries: Vec<RootOfUnity>,
    pub sign: Sign,
}

impl EigenTuple {
    pub fn new(spec: &GroupSpec, entries: Vec<RootOfUnity>, sign: Sign) -> Result<Self, CensusError> {
        if entries.len() != spec.rank() {
            return Err(CensusError::InvalidInput(format!(
                "{} eigenvalues for {} generators",
                entries.len(),
                spec.rank()
            )));
        }
        for (q, &n) in entries.iter().zip(spec.exponents()) {
            if q.power(n as i64) != sign.root() {
                return Err(CensusError::InvalidInput(format!("{q}^{n} is not {}", sign.as_i8())));
            }
        }
        Ok(EigenTuple { entries, sign })
    }

    /// Entries other than `±1`.
    pub fn noncentral(&self) -> usize {
        self.entries.iter().filter(|q| !q.is_real()).count()
    }
}

fn require_two_generators(spec: &GroupSpec) -> Result<(), CensusError> {
    if spec.rank() < 2 {
        return Err(CensusError::InvalidInput("at least two generators required".into()));
    }
    Ok(())
}

/// `r - 2 - Σ n_i + Π(n_i + 1) / 2^{r-1}`, valid when at most one exponent is even.
pub fn sl2_components_formula(spec: &GroupSpec) -> Result<BigInt, CensusError> {
    require_two_generators(spec)?;
    let evens = spec.exponents().iter().filter(|n| n.is_even()).count();
    if evens >= 2 {
        return Err(CensusError::NotApplicable(format!(
            "{spec} has {evens} even exponents; the closed formula needs at most one"
        )));
    }
    let r = spec.rank();
    let sum: BigInt = spec.exponents().iter().map(|&n| BigInt::from(n)).sum();
    let prod: BigInt = spec.exponents().iter().map(|&n| BigInt::from(n) + 1).product();
    let denom = BigInt::from(1) << (r - 1);
    let (quot, rem) = prod.div_rem(&denom);
    if !rem.is_zero() {
        return Err(CensusError::AuditMismatch(format!("Π(n_i+1) = {prod} not divisible by {denom}")));
    }
    let value = BigInt::from(r as i64 - 2) - sum + quot;
    if value.is_negative() {
        return Err(CensusError::AuditMismatch(format!("formula produced {value}")));
    }
    Ok(value)
}

/// Fixed-point counts of `F = C_2^r` split by how many coordinates are
/// non-central (0, 1, 2+), summed over all of `F`. Counts per coordinate, so
/// it never looks at orbit representatives.
fn burnside_sums(coords: &[Vec<RootOfUnity>]) -> [u128; 3] {
    let r = coords.len();
    let mut sums = [0u128; 3];
    for sigma in 0u64..(1 << r) {
        let mut dp = [1u128, 0, 0];
        for (i, roots) in coords.iter().enumerate() {
            let inverts = sigma >> i & 1 == 1;
            let mut next = [0u128; 3];
            for q in roots {
                if inverts && *q != q.inverse() {
                    continue;
                }
                let step = usize::from(!q.is_real());
                for (state, &count) in dp.iter().enumerate() {
                    next[(state + step).min(2)] += count;
                }
            }
            dp = next;
        }
        for k in 0..3 {
            sums[k] += dp[k];
        }
    }
    sums
}

/// Orbits of `F = C_2^r` (coordinatewise inversion) on `X_+ ⊔ X_-`; a
/// component is an orbit with at least two non-central coordinates.
pub fn sl2_components_enumerate(
    spec: &GroupSpec,
    opts: CensusOptions,
) -> Result<CensusReport<EigenTuple>, CensusError> {
    require_two_generators(spec)?;
    if spec.rank() > 63 {
        return Err(CensusError::InvalidInput("too many generators".into()));
    }
    let per_sign = saturating_product(spec.exponents().iter().map(|&n| n as u128));
    check_budget(per_sign.saturating_mul(2), opts.budget)?;

    let group_order = 1u128 << spec.rank();
    let mut by_sign = Vec::with_capacity(2);
    let mut witnesses = BTreeSet::new();

    for sign in Sign::both() {
        let coords: Vec<Vec<RootOfUnity>> =
            spec.exponents().iter().map(|&n| enumerate_roots(n, sign)).collect();

        let mut orbits: HashSet<Vec<RootOfUnity>> = HashSet::new();
        let mut idx = vec![0usize; coords.len()];
        let mut tuples = 0u64;
        'odometer: loop {
            tuples += 1;
            let mut canonical = Vec::with_capacity(coords.len());
            for (i, &j) in idx.iter().enumerate() {
                let q = coords[i][j];
                if q.power(spec.exponents()[i] as i64) != sign.root() {
                    return Err(CensusError::AuditMismatch(format!(
                        "root {q} in coordinate {i} does not match sign {}",
                        sign.as_i8()
                    )));
                }
                canonical.push(q.min(q.inverse()));
            }
            orbits.insert(canonical);

            for i in (0..idx.len()).rev() {
                idx[i] += 1;
                if idx[i] < coords[i].len() {
                    continue 'odometer;
                }
                idx[i] = 0;
            }
            break;
        }

        let total = orbits.len() as u64;
        let mut exceptional = 0u64;
        for rep in orbits {
            let t = EigenTuple { entries: rep, sign };
            if t.noncentral() < 2 {
                exceptional += 1;
            } else if opts.witness {
                witnesses.insert(t);
            }
        }

        let sums = burnside_sums(&coords);
        let burnside_total = (sums[0] + sums[1] + sums[2]) / group_order;
        let burnside_exceptional = (sums[0] + sums[1]) / group_order;
        if (sums[0] + sums[1] + sums[2]) % group_order != 0
            || burnside_total != total as u128
            || burnside_exceptional != exceptional as u128
        {
            return Err(CensusError::AuditMismatch(format!(
                "sign {}: hashed {total} orbits ({exceptional} exceptional), Burnside {burnside_total} ({burnside_exceptional})",
                sign.as_i8()
            )));
        }

        by_sign.push(SignTally { sign, tuples, orbits: total, exceptional, components: total - exceptional });
    }

    let total_orbits = by_sign.iter().map(|t| t.orbits).sum();
    let exceptional_orbits = by_sign.iter().map(|t| t.exceptional).sum();
    Ok(CensusReport {
        enumerated: by_sign.iter().map(|t| t.tuples).sum(),
        total_orbits,
        exceptional_orbits,
        component_count: total_orbits - exceptional_orbits,
        by_sign,
        witnesses: opts.witness.then(|| witnesses.into_iter().collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: &[u64]) -> GroupSpec {
        GroupSpec::new(n.to_vec()).unwrap()
    }

    fn count(n: &[u64]) -> CensusReport<EigenTuple> {
        sl2_components_enumerate(&spec(n), CensusOptions::default()).unwrap()
    }

    #[test]
    fn formula_examples() {
        assert_eq!(sl2_components_formula(&spec(&[5, 7])).unwrap(), BigInt::from(12));
        assert_eq!(sl2_components_formula(&spec(&[4, 5])).unwrap(), BigInt::from(6));
        assert_eq!(sl2_components_formula(&spec(&[3, 5, 7])).unwrap(), BigInt::from(34));
        assert!(matches!(sl2_components_formula(&spec(&[4, 4])), Err(CensusError::NotApplicable(_))));
        assert!(matches!(sl2_components_formula(&spec(&[5])), Err(CensusError::InvalidInput(_))));
    }

    #[test]
    fn five_seven() {
        let rep = count(&[5, 7]);
        assert_eq!((rep.total_orbits, rep.exceptional_orbits, rep.component_count), (24, 12, 12));
        assert_eq!(rep.enumerated, 70);
    }

    #[test]
    fn four_five_sign_split() {
        let rep = count(&[4, 5]);
        assert_eq!(rep.component_count, 6);
        assert_eq!(rep.exceptional_orbits, 9);
        let plus = &rep.by_sign[0];
        let minus = &rep.by_sign[1];
        assert_eq!((plus.sign, plus.orbits), (Sign::Plus, 9));
        assert_eq!((minus.sign, minus.orbits), (Sign::Minus, 6));
    }

    #[test]
    fn small_cases_by_hand() {
        // (3,3): each sign contributes one orbit with both entries non-central.
        assert_eq!(count(&[3, 3]).component_count, 2);
        // n_i = 1 forces λ_i = ±1, so nothing is irreducible for r = 2.
        assert_eq!(count(&[1, 7]).component_count, 0);
        assert_eq!(count(&[3, 5, 7]).component_count, 34);
    }

    #[test]
    fn witnesses_are_canonical_and_valid() {
        let s = spec(&[5, 7]);
        let rep = sl2_components_enumerate(&s, CensusOptions { witness: true, ..Default::default() }).unwrap();
        let w = rep.witnesses.unwrap();
        assert_eq!(w.len() as u64, rep.component_count);
        for t in &w {
            assert!(EigenTuple::new(&s, t.entries.clone(), t.sign).is_ok());
            assert!(t.noncentral() >= 2);
            assert!(t.entries.iter().all(|q| *q <= q.inverse()));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = sl2_components_enumerate(&spec(&[5, 7]), CensusOptions { budget: 69, witness: false });
        assert!(matches!(err, Err(CensusError::BudgetExceeded { .. })));
        assert!(sl2_components_enumerate(&spec(&[5, 7]), CensusOptions { budget: 70, witness: false }).is_ok());
    }

    #[test]
    fn formula_matches_enumeration_all_odd() {
        let odd = [1u64, 3, 5, 7, 9, 11];
        for &a in &odd {
            for &b in &odd {
                assert_eq!(sl2_components_formula(&spec(&[a, b])).unwrap(), BigInt::from(count(&[a, b]).component_count));
                for &c in &odd {
                    for d in [None, Some(3u64)] {
                        let mut n = vec![a, b, c];
                        n.extend(d);
                        assert_eq!(
                            sl2_components_formula(&spec(&n)).unwrap(),
                            BigInt::from(count(&n).component_count),
                            "{n:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn formula_matches_enumeration_one_even() {
        // The closed formula is also claimed for exactly one even exponent.
        for a in [2u64, 4, 6, 8, 10] {
            for b in [1u64, 3, 5, 7, 9, 11] {
                for tail in [vec![], vec![3], vec![5, 7]] {
                    let mut n = vec![a, b];
                    n.extend(tail.iter().copied());
                    let e = count(&n).component_count;
                    assert_eq!(sl2_components_formula(&spec(&n)).unwrap(), BigInt::from(e), "{n:?}");
                    n.rotate_left(1);
                    assert_eq!(count(&n).component_count, e, "{n:?}");
                }
            }
        }
    }

    #[test]
    fn r2_coprime_odd_matches_classical_count() {
        for a in (3..=13u64).step_by(2) {
            for b in (3..=13u64).step_by(2) {
                if a.gcd(&b) == 1 {
                    assert_eq!(count(&[a, b]).component_count, (a - 1) * (b - 1) / 2);
                }
            }
        }
    }

    #[test]
    fn subtraction_list_agrees_for_odd_exponents() {
        // For odd n_i the exceptional orbits are exactly 2 + Σ(n_i - 1).
        for n in [vec![3u64, 5], vec![5, 7], vec![3, 5, 7], vec![9, 9, 3], vec![11, 1, 5, 3]] {
            let expect: u64 = 2 + n.iter().map(|x| x - 1).sum::<u64>();
            assert_eq!(count(&n).exceptional_orbits, expect, "{n:?}");
        }
    }

    #[test]
    fn two_even_exponents_still_enumerate() {
        let rep = count(&[4, 6]);
        assert_eq!(rep.total_orbits, rep.exceptional_orbits + rep.component_count);
        assert!(rep.component_count > 0);
    }
}
