use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A root of unity `exp(2*pi*i * num/den)` stored as its angle in `Q/Z`.
///
/// The angle is always reduced: `0 <= num < den` and `gcd(num, den) = 1`,
/// so structural equality is equality of complex numbers.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { num: 0, den: 1 };
    pub const MINUS_ONE: RootOfUnity = RootOfUnity { num: 1, den: 2 };

    /// Canonical root for the angle `num/den` (any integer `num`).
    ///
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "root of unity needs a positive denominator");
        let d = den as i128;
        let a = (num as i128).rem_euclid(d) as u64;
        let g = a.gcd(&den);
        RootOfUnity { num: a / g, den: den / g }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// Multiplicative order, i.e. the reduced denominator.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn power(&self, k: i64) -> Self {
        let d = self.den as i128;
        let a = (self.num as i128 * k as i128).rem_euclid(d);
        RootOfUnity::new(a as i64, self.den)
    }

    pub fn inverse(&self) -> Self {
        self.power(-1)
    }

    /// Product of roots, i.e. sum of angles.
    pub fn mul(&self, other: &RootOfUnity) -> Self {
        let den = self.den.lcm(&other.den);
        let a = self.num as u128 * (den / self.den) as u128 + other.num as u128 * (den / other.den) as u128;
        RootOfUnity::new((a % den as u128) as i64, den)
    }

    /// `true` for `1` and `-1`, the roots fixed by inversion.
    pub fn is_real(&self) -> bool {
        self.den <= 2
    }

    pub fn angle(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Exact for the quarter turns, `from_polar` otherwise.
    pub fn to_complex(&self) -> Complex64 {
        match (self.num, self.den) {
            (0, _) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            _ => Complex64::from_polar(1.0, TAU * self.angle()),
        }
    }
}

impl Ord for RootOfUnity {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for RootOfUnity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e(2πi·{}/{})", self.num, self.den)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawRoot {
    num: i64,
    den: u64,
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawRoot { num: self.num as i64, den: self.den }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawRoot::deserialize(d)?;
        if raw.den == 0 {
            return Err(serde::de::Error::custom("root of unity denominator must be positive"));
        }
        Ok(RootOfUnity::new(raw.num, raw.den))
    }
}

/// The common value of `lambda_i^{n_i}`: `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn root(self) -> RootOfUnity {
        match self {
            Sign::Plus => RootOfUnity::ONE,
            Sign::Minus => RootOfUnity::MINUS_ONE,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_i64(v).ok_or_else(|| serde::de::Error::custom(format!("sign must be 1 or -1, got {v}")))
    }
}

/// All `q` with `q^n = sign`, sorted by angle.
pub fn enumerate_roots(n: u64, sign: Sign) -> Vec<RootOfUnity> {
    assert!(n >= 1, "root order must be positive");
    let mut roots: Vec<RootOfUnity> = match sign {
        Sign::Plus => (0..n).map(|k| RootOfUnity::new(k as i64, n)).collect(),
        Sign::Minus => (0..n).map(|k| RootOfUnity::new(2 * k as i64 + 1, 2 * n)).collect(),
    };
    roots.sort();
    roots
}
