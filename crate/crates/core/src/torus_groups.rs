//! Group-level invariants of `Γ_n`: knot/link classification, the relation
//! matrix of the abelianization, its cokernel, and an explicit generator of
//! `Γ_n^ab ≅ Z` for knot groups.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_arith::{multi_bezout, smith_normal_form, ArithError, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group needs at least one generator")]
    Empty,
    #[error("exponent at position {0} is zero; exponents must be >= 1")]
    ZeroExponent(usize),
    #[error("a single generator has no relations")]
    SingleGenerator,
    #[error("exponents {0:?} are not pairwise coprime; the abelianization is not cyclic")]
    NotKnot(Vec<u64>),
    #[error("invariant factor {0} does not fit in 64 bits")]
    Overflow(String),
}

impl GroupError {
    pub fn name(&self) -> &'static str {
        match self {
            GroupError::Empty => "Empty",
            GroupError::ZeroExponent(_) => "ZeroExponent",
            GroupError::SingleGenerator => "SingleGenerator",
            GroupError::NotKnot(_) => "NotKnot",
            GroupError::Overflow(_) => "Overflow",
        }
    }
}

/// Exponent tuple `n = (n_1, ..., n_r)`, kept in the order given.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct GroupSpec {
    exponents: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    n: Vec<u64>,
}

impl TryFrom<RawSpec> for GroupSpec {
    type Error = GroupError;
    fn try_from(raw: RawSpec) -> Result<Self, GroupError> {
        GroupSpec::new(raw.n)
    }
}

impl From<GroupSpec> for RawSpec {
    fn from(g: GroupSpec) -> RawSpec {
        RawSpec { n: g.exponents }
    }
}

impl GroupSpec {
    pub fn new(exponents: Vec<u64>) -> Result<Self, GroupError> {
        if exponents.is_empty() {
            return Err(GroupError::Empty);
        }
        if let Some(i) = exponents.iter().position(|&n| n == 0) {
            return Err(GroupError::ZeroExponent(i));
        }
        Ok(GroupSpec { exponents })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Number of generators `r`.
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn min_exponent(&self) -> u64 {
        *self.exponents.iter().min().expect("non-empty")
    }

    pub fn lcm(&self) -> u64 {
        self.exponents.iter().fold(1, |acc, n| acc.lcm(n))
    }

    pub fn is_pairwise_coprime(&self) -> bool {
        let e = &self.exponents;
        (0..e.len()).all(|i| (i + 1..e.len()).all(|j| e[i].gcd(&e[j]) == 1))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for GroupSpec {
    type Err = String;

    /// Comma-separated exponents, e.g. `5,7`.
    fn from_str(s: &str) -> Result<Self, String> {
        let exps = s
            .split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|_| format!("invalid exponent {:?}", p.trim())))
            .collect::<Result<Vec<_>, _>>()?;
        GroupSpec::new(exps).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Knot,
    Link,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Knot => "knot",
            Classification::Link => "link",
        })
    }
}

/// `Z^free_rank ⊕ Z_{d_1} ⊕ ... ⊕ Z_{d_k}` with `d_1 | d_2 | ...`, all `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            parts.push("0".into());
        }
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// `x = Σ b_i γ_i` generating `Γ_n^ab`, with `γ_j = (N/n_j)·x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGenerator {
    #[serde(serialize_with = "crate::json::big_vec_as_numbers")]
    pub coefficients: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::big_vec_as_numbers")]
    pub witness_multipliers: Vec<BigInt>,
}

impl AbelianGenerator {
    /// `Σ b_i · (N/n_i)`, which is 1 for a valid generator.
    pub fn identity_value(&self) -> BigInt {
        self.coefficients.iter().zip(&self.witness_multipliers).map(|(b, m)| b * m).sum()
    }
}

pub fn classify(spec: &GroupSpec) -> Classification {
    if spec.is_pairwise_coprime() {
        Classification::Knot
    } else {
        Classification::Link
    }
}

/// The `r x (r-1)` relation matrix: column `j` carries `-n_j` in row `j` and
/// `n_{j+1}` in row `j+1`.
pub fn presentation_matrix(spec: &GroupSpec) -> Result<IntMatrix, GroupError> {
    let r = spec.rank();
    if r < 2 {
        return Err(GroupError::SingleGenerator);
    }
    let mut m = IntMatrix::zeros(r, r - 1);
    for j in 0..r - 1 {
        m[(j, j)] = -BigInt::from(spec.exponents[j]);
        m[(j + 1, j)] = BigInt::from(spec.exponents[j + 1]);
    }
    Ok(m)
}

pub fn abelianize(spec: &GroupSpec) -> Result<Abelianization, GroupError> {
    if spec.rank() == 1 {
        return Ok(Abelianization { free_rank: 1, torsion: Vec::new() });
    }
    let a = presentation_matrix(spec)?;
    let snf = smith_normal_form(&a);
    let free_rank = a.rows() - snf.rank();
    let torsion = snf
        .factors
        .iter()
        .filter(|d| **d > BigInt::one())
        .map(|d| d.to_u64().ok_or_else(|| GroupError::Overflow(d.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Abelianization { free_rank, torsion })
}

pub fn abelian_generator(spec: &GroupSpec) -> Result<AbelianGenerator, GroupError> {
    let coefficients = multi_bezout(spec.exponents()).map_err(|e| match e {
        ArithError::NotCoprime { .. } => GroupError::NotKnot(spec.exponents.clone()),
        ArithError::Empty => GroupError::Empty,
    })?;
    let total: BigInt = spec.exponents.iter().map(|&n| BigInt::from(n)).product();
    let witness_multipliers = spec.exponents.iter().map(|&n| &total / BigInt::from(n)).collect();
    Ok(AbelianGenerator { coefficients, witness_multipliers })
}
