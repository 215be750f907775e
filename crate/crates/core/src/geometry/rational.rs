//! Rational points of the unit cube.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GeometryError;

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational, GeometryError> {
    let bad = || GeometryError::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A point of `[0,1]^n` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint(Vec<BigRational>);

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self, GeometryError> {
        let one = BigRational::one();
        if coords.iter().any(|c| c < &BigRational::zero() || c > &one) {
            return Err(GeometryError::OutOfUnitCube(Self(coords).to_string()));
        }
        Ok(Self(coords))
    }

    /// `(n_0/d_0, n_1/d_1, ...)` from integer pairs.
    pub fn from_fractions(pairs: &[(i64, i64)]) -> Result<Self, GeometryError> {
        Self::new(pairs.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect())
    }

    /// `e_i / w` in dimension `n`.
    pub fn scaled_basis(n: usize, i: usize, w: u64) -> Self {
        let mut c = vec![BigRational::zero(); n];
        c[i] = BigRational::new(BigInt::one(), BigInt::from(w));
        Self(c)
    }

    /// Comma-separated `p/q` list, e.g. `"1/3,2/5"`.
    pub fn parse(s: &str) -> Result<Self, GeometryError> {
        if s.trim().is_empty() {
            return Self::new(Vec::new());
        }
        Self::new(s.split(',').map(parse_rational).collect::<Result<_, _>>()?)
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Least common denominator of the coordinates.
    pub fn den(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(d)?;
        let coords = parts
            .iter()
            .map(|p| parse_rational(p))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        RationalPoint::new(coords).map_err(serde::de::Error::custom)
    }
}

/// `(den(v) v + den(w) w) / (den(v) + den(w))`.
pub fn farey_mediant(v: &RationalPoint, w: &RationalPoint) -> Result<RationalPoint, GeometryError> {
    if v.dim() != w.dim() {
        return Err(GeometryError::DimensionMismatch { expected: v.dim(), got: w.dim() });
    }
    if v == w {
        return Err(GeometryError::EqualPoints);
    }
    let (dv, dw) = (BigRational::from_integer(v.den()), BigRational::from_integer(w.den()));
    let total = &dv + &dw;
    let coords = v.0.iter().zip(&w.0).map(|(a, b)| (&dv * a + &dw * b) / &total).collect();
    Ok(RationalPoint(coords))
}
