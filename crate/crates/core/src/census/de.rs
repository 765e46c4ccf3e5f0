use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use super::{check_budget, saturating_product, CensusError, CensusOptions, CensusReport};
use crate::exact_arith::RootOfUnity;
use crate::torus_groups::GroupSpec;

/// One `m`-element set of distinct `n_i`-th roots of unity per generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SubsetTuple {
    pub subsets: Vec<Vec<RootOfUnity>>,
}

impl SubsetTuple {
    pub fn new(spec: &GroupSpec, mut subsets: Vec<Vec<RootOfUnity>>) -> Result<Self, CensusError> {
        if subsets.len() != spec.rank() {
            return Err(CensusError::InvalidInput("one subset per generator required".into()));
        }
        let m = subsets.first().map_or(0, Vec::len);
        for (s, &n) in subsets.iter_mut().zip(spec.exponents()) {
            s.sort();
            s.dedup();
            if s.len() != m || m == 0 {
                return Err(CensusError::InvalidInput("subsets must have the same size m >= 1 and distinct elements".into()));
            }
            if s.iter().any(|q| q.power(n as i64) != RootOfUnity::ONE) {
                return Err(CensusError::InvalidInput(format!("subset element is not an {n}-th root of unity")));
            }
        }
        Ok(SubsetTuple { subsets })
    }

    /// The `Z`-action: rotate the `i`-th set by `exp(2πi k / n_i)`.
    pub fn shifted(&self, spec: &GroupSpec, k: i64) -> SubsetTuple {
        let subsets = self
            .subsets
            .iter()
            .zip(spec.exponents())
            .map(|(s, &n)| {
                let rot = RootOfUnity::new(k, n);
                let mut out: Vec<RootOfUnity> = s.iter().map(|q| q.mul(&rot)).collect();
                out.sort();
                out
            })
            .collect();
        SubsetTuple { subsets }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DeOutcome {
    /// `m > min n_i`: no matrix has `m` distinct `n_i`-th roots as eigenvalues.
    Empty,
    Orbits(CensusReport<SubsetTuple>),
}

impl DeOutcome {
    pub fn component_count(&self) -> u64 {
        match self {
            DeOutcome::Empty => 0,
            DeOutcome::Orbits(r) => r.component_count,
        }
    }
}

/// Lexicographically ordered `m`-subsets of `0..n`.
fn combinations(n: u64, m: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur: Vec<u64> = (0..m as u64).collect();
    if m as u64 > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..m).rev().find(|&i| cur[i] < n - (m - i) as u64) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..m {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// Per-generator subset list with `shift[s][k]` = index of subset `s` rotated by `k`.
struct Coordinate {
    subsets: Vec<Vec<u64>>,
    shift: Vec<Vec<usize>>,
}

impl Coordinate {
    fn new(n: u64, m: usize) -> Self {
        let subsets = combinations(n, m);
        let index: HashMap<&Vec<u64>, usize> = subsets.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let shift = subsets
            .iter()
            .map(|s| {
                (0..n)
                    .map(|k| {
                        let mut t: Vec<u64> = s.iter().map(|x| (x + k) % n).collect();
                        t.sort_unstable();
                        index[&t]
                    })
                    .collect()
            })
            .collect();
        Coordinate { subsets, shift }
    }

    fn fixed_by(&self, k: usize) -> u128 {
        (0..self.subsets.len()).filter(|&s| self.shift[s][k] == s).count() as u128
    }
}

/// Path components of the distinct-eigenvalue locus `R^de_{Γ_n, m}`: orbits
/// of `Z_N` (`N = lcm n_i`) on `m`-subset tuples of roots of unity.
pub fn de_components(m: u64, spec: &GroupSpec, opts: CensusOptions) -> Result<DeOutcome, CensusError> {
    if m == 0 {
        return Err(CensusError::InvalidInput("matrix size m must be >= 1".into()));
    }
    if m > spec.min_exponent() {
        return Ok(DeOutcome::Empty);
    }
    let ns = spec.exponents();
    let sizes: Vec<u128> = ns.iter().map(|&n| num_integer::binomial(n as u128, m as u128)).collect();
    let total = saturating_product(sizes.iter().copied());
    check_budget(total, opts.budget)?;
    let total = total as usize;

    let coords: Vec<Coordinate> = ns.iter().map(|&n| Coordinate::new(n, m as usize)).collect();
    let period = spec.lcm();

    // Walk each orbit once from its first unvisited member. Tuples are indexed
    // in mixed radix with the first generator most significant, so the first
    // member reached is the lexicographically least one.
    let mut visited = vec![false; total];
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut digits = vec![0usize; coords.len()];
    for start in 0..total {
        if !visited[start] {
            let mut cur = digits.clone();
            loop {
                let code = encode(&cur, &coords);
                if visited[code] {
                    break;
                }
                visited[code] = true;
                for (i, c) in coords.iter().enumerate() {
                    cur[i] = c.shift[cur[i]][1 % ns[i] as usize];
                }
            }
            reps.push(digits.clone());
        }
        for i in (0..digits.len()).rev() {
            digits[i] += 1;
            if digits[i] < coords[i].subsets.len() {
                break;
            }
            digits[i] = 0;
        }
    }

    let orbits = reps.len() as u64;
    let fixed_sum: u128 = (0..period)
        .map(|k| {
            coords
                .iter()
                .zip(ns)
                .map(|(c, &n)| c.fixed_by((k % n) as usize))
                .product::<u128>()
        })
        .sum();
    if fixed_sum % period as u128 != 0 || fixed_sum / period as u128 != orbits as u128 {
        return Err(CensusError::AuditMismatch(format!(
            "orbit walk found {orbits} orbits, Burnside gives {fixed_sum}/{period}"
        )));
    }

    let witnesses = opts.witness.then(|| {
        reps.iter()
            .map(|digits| SubsetTuple {
                subsets: digits
                    .iter()
                    .zip(&coords)
                    .zip(ns)
                    .map(|((&d, c), &n)| c.subsets[d].iter().map(|&k| RootOfUnity::new(k as i64, n)).collect())
                    .collect(),
            })
            .collect()
    });

    Ok(DeOutcome::Orbits(CensusReport {
        enumerated: total as u64,
        total_orbits: orbits,
        exceptional_orbits: 0,
        component_count: orbits,
        by_sign: Vec::new(),
        witnesses,
    }))
}

fn encode(digits: &[usize], coords: &[Coordinate]) -> usize {
    digits.iter().zip(coords).fold(0, |acc, (&d, c)| acc * c.subsets.len() + d)
}

/// Components of `Hom^irr(Γ_n, GL(2, C))` for coprime `r = 2`:
/// `⌊n_1/2⌋ · ⌊n_2/2⌋`. The same count holds for `PGL(2, C)`.
pub fn gl2_irr_components(spec: &GroupSpec) -> Result<u64, CensusError> {
    let ns = spec.exponents();
    if ns.len() != 2 {
        return Err(CensusError::NotApplicable(format!("{spec} does not have exactly two generators")));
    }
    if ns[0].gcd(&ns[1]) != 1 {
        return Err(CensusError::NotApplicable(format!("{spec} is not coprime")));
    }
    Ok((ns[0] / 2) * (ns[1] / 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: &[u64]) -> GroupSpec {
        GroupSpec::new(n.to_vec()).unwrap()
    }

    fn orbits(m: u64, n: &[u64]) -> CensusReport<SubsetTuple> {
        match de_components(m, &spec(n), CensusOptions { witness: true, ..Default::default() }).unwrap() {
            DeOutcome::Orbits(r) => r,
            DeOutcome::Empty => panic!("unexpected empty locus"),
        }
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn four_five() {
        let r = orbits(2, &[4, 5]);
        assert_eq!(r.enumerated, 60);
        assert_eq!(r.component_count, 4);
    }

    #[test]
    fn five_seven() {
        assert_eq!(orbits(2, &[5, 7]).component_count, 6);
    }

    #[test]
    fn empty_when_m_exceeds_an_exponent() {
        assert_eq!(de_components(3, &spec(&[2, 5]), CensusOptions::default()).unwrap(), DeOutcome::Empty);
        // order of exponents does not matter for the emptiness test
        assert_eq!(de_components(3, &spec(&[5, 2]), CensusOptions::default()).unwrap(), DeOutcome::Empty);
    }

    #[test]
    fn gl2_examples() {
        assert_eq!(gl2_irr_components(&spec(&[4, 5])).unwrap(), 4);
        assert_eq!(gl2_irr_components(&spec(&[3, 5])).unwrap(), 2);
        assert!(matches!(gl2_irr_components(&spec(&[2, 2])), Err(CensusError::NotApplicable(_))));
        assert!(matches!(gl2_irr_components(&spec(&[2, 3, 5])), Err(CensusError::NotApplicable(_))));
    }

    #[test]
    fn de_matches_gl2_formula_on_coprime_pairs() {
        for a in 1..=15u64 {
            for b in 1..=15u64 {
                let s = spec(&[a, b]);
                if let Ok(expect) = gl2_irr_components(&s) {
                    let got = de_components(2, &s, CensusOptions::default()).unwrap().component_count();
                    assert_eq!(got, expect, "{s}");
                }
            }
        }
    }

    #[test]
    fn witnesses_are_least_in_their_orbit() {
        let s = spec(&[4, 6, 3]);
        let r = orbits(2, &[4, 6, 3]);
        let w = r.witnesses.unwrap();
        assert_eq!(w.len() as u64, r.component_count);
        for t in &w {
            assert!(SubsetTuple::new(&s, t.subsets.clone()).is_ok());
            for k in 0..s.lcm() as i64 {
                assert!(*t <= t.shifted(&s, k));
            }
            assert_eq!(t.shifted(&s, s.lcm() as i64), *t);
        }
        // distinct witnesses lie in distinct orbits
        for (i, a) in w.iter().enumerate() {
            for b in &w[i + 1..] {
                assert!((0..s.lcm() as i64).all(|k| a.shifted(&s, k) != *b));
            }
        }
    }

    #[test]
    fn m_one_counts_generator_choices_up_to_rotation() {
        // One eigenvalue per generator: Π n_i tuples, Z_N acting freely
        // on each coordinate's n_i choices.
        let r = orbits(1, &[2, 3]);
        assert_eq!(r.enumerated, 6);
        assert_eq!(r.component_count, 1);
        let r = orbits(1, &[2, 4]);
        assert_eq!(r.component_count, 2);
    }
}
