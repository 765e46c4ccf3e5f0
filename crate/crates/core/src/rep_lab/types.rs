use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::linalg::{self, CMat};
use super::{RepError, VERIFY_TOL};
use crate::exact_arith::{RootOfUnity, Sign};
use crate::torus_groups::GroupSpec;

/// Square complex matrix with finite entries.
///
/// JSON form is the row-major entry list `[[re, im], ...]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(CMat);

impl ComplexMatrix {
    pub fn new(m: usize, entries: Vec<Complex64>) -> Result<Self, RepError> {
        if m == 0 || entries.len() != m * m {
            return Err(RepError::Invalid(format!("{} entries do not form a square matrix", entries.len())));
        }
        Self::from_matrix(CMat::from_row_slice(m, m, &entries))
    }

    pub fn from_matrix(a: CMat) -> Result<Self, RepError> {
        if a.nrows() != a.ncols() || a.nrows() == 0 {
            return Err(RepError::Invalid("matrix is not square".into()));
        }
        if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(RepError::Invalid("matrix has non-finite entries".into()));
        }
        Ok(ComplexMatrix(a))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self, RepError> {
        let m = rows.len();
        let entries = rows.iter().flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0))).collect();
        Self::new(m, entries)
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        ComplexMatrix(CMat::from_diagonal(&linalg::CVec::from_column_slice(values)))
    }

    pub fn identity(m: usize) -> Self {
        ComplexMatrix(linalg::identity(m))
    }

    pub fn size(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.0
    }

    pub fn into_matrix(self) -> CMat {
        self.0
    }

    pub fn determinant(&self) -> Complex64 {
        self.0.determinant()
    }

    pub fn row_major(&self) -> Vec<Complex64> {
        let m = self.size();
        (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| self.0[(i, j)]).collect()
    }
}

fn pairs(entries: &[Complex64]) -> Vec<[f64; 2]> {
    entries.iter().map(|z| [z.re, z.im]).collect()
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        pairs(&self.row_major()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<[f64; 2]>::deserialize(d)?;
        let m = (raw.len() as f64).sqrt().round() as usize;
        let entries = raw.into_iter().map(|[re, im]| Complex64::new(re, im)).collect();
        ComplexMatrix::new(m, entries).map_err(D::Error::custom)
    }
}

/// Images `A_1, ..., A_r` of the generators, all of size `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    spec: GroupSpec,
    matrices: Vec<ComplexMatrix>,
    tolerance: f64,
}

impl Representation {
    pub fn new(spec: GroupSpec, matrices: Vec<ComplexMatrix>, tolerance: f64) -> Result<Self, RepError> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(RepError::Invalid(format!("tolerance must be positive, got {tolerance}")));
        }
        if matrices.len() != spec.rank() {
            return Err(RepError::Invalid(format!(
                "{} matrices for {} generators",
                matrices.len(),
                spec.rank()
            )));
        }
        let m = matrices[0].size();
        if matrices.iter().any(|a| a.size() != m) {
            return Err(RepError::Invalid("matrices have different sizes".into()));
        }
        for (index, a) in matrices.iter().enumerate() {
            let det = a.determinant().norm();
            if det <= tolerance {
                return Err(RepError::NotInvertible { index, det });
            }
        }
        Ok(Representation { spec, matrices, tolerance })
    }

    pub fn with_default_tolerance(spec: GroupSpec, matrices: Vec<ComplexMatrix>) -> Result<Self, RepError> {
        Self::new(spec, matrices, VERIFY_TOL)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn size(&self) -> usize {
        self.matrices[0].size()
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self, RepError> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(RepError::Invalid(format!("tolerance must be positive, got {tolerance}")));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    /// Same group and tolerance, new generator images.
    pub(crate) fn replace(&self, matrices: Vec<CMat>) -> Result<Self, RepError> {
        let matrices = matrices.into_iter().map(ComplexMatrix::from_matrix).collect::<Result<_, _>>()?;
        Representation::new(self.spec.clone(), matrices, self.tolerance)
    }

    /// Multiply generator `i` by the scalar `factors[i]`.
    pub fn scaled(&self, factors: &[Complex64]) -> Result<Self, RepError> {
        if factors.len() != self.matrices.len() {
            return Err(RepError::Invalid("one scale factor per generator required".into()));
        }
        self.replace(self.matrices.iter().zip(factors).map(|(a, &f)| a.matrix() * f).collect())
    }
}

#[derive(Serialize, Deserialize)]
struct RawRepresentation {
    n: Vec<u64>,
    m: usize,
    matrices: Vec<ComplexMatrix>,
    tol: f64,
}

impl Serialize for Representation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawRepresentation {
            n: self.spec.exponents().to_vec(),
            m: self.size(),
            matrices: self.matrices.clone(),
            tol: self.tolerance,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Representation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawRepresentation::deserialize(d)?;
        if raw.matrices.iter().any(|a| a.size() != raw.m) {
            return Err(D::Error::custom(format!("matrices do not have declared size m = {}", raw.m)));
        }
        let spec = GroupSpec::new(raw.n).map_err(D::Error::custom)?;
        Representation::new(spec, raw.matrices, raw.tol).map_err(D::Error::custom)
    }
}

/// Eigenvalue data for a representation: `m` roots (with multiplicity) per
/// generator, all satisfying `q^{n_i} = sign`, plus optional conjugators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenConfig {
    #[serde(flatten)]
    pub spec: GroupSpec,
    pub sign: Sign,
    pub roots: Vec<Vec<RootOfUnity>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugators: Option<Vec<ComplexMatrix>>,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

fn default_tol() -> f64 {
    VERIFY_TOL
}

impl EigenConfig {
    pub fn new(spec: GroupSpec, sign: Sign, roots: Vec<Vec<RootOfUnity>>) -> Self {
        EigenConfig { spec, sign, roots, conjugators: None, tol: VERIFY_TOL }
    }

    pub fn with_conjugators(mut self, conjugators: Vec<ComplexMatrix>) -> Self {
        self.conjugators = Some(conjugators);
        self
    }

    pub fn size(&self) -> usize {
        self.roots.first().map_or(0, Vec::len)
    }

    pub fn validate(&self) -> Result<(), RepError> {
        let m = self.size();
        if self.roots.len() != self.spec.rank() {
            return Err(RepError::Invalid(format!(
                "{} root lists for {} generators",
                self.roots.len(),
                self.spec.rank()
            )));
        }
        if m == 0 || self.roots.iter().any(|r| r.len() != m) {
            return Err(RepError::Invalid("every generator needs the same number m >= 1 of roots".into()));
        }
        for (i, (roots, &n)) in self.roots.iter().zip(self.spec.exponents()).enumerate() {
            if let Some(q) = roots.iter().find(|q| q.power(n as i64) != self.sign.root()) {
                return Err(RepError::Invalid(format!(
                    "root {q} of generator {} does not satisfy q^{n} = {}",
                    i + 1,
                    self.sign.as_i8()
                )));
            }
        }
        if let Some(gs) = &self.conjugators {
            if gs.len() != self.spec.rank() || gs.iter().any(|g| g.size() != m) {
                return Err(RepError::Invalid(format!("need {} conjugators of size {m}", self.spec.rank())));
            }
        }
        Ok(())
    }
}
