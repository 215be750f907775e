//! Continuous piecewise-linear functions on `[0,1]^n` with integral pieces,
//! kept in max-of-min normal form.

mod arrangement;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::geometry::{GeometricComplex, RationalPoint, Simplex, StellarStep};

/// Operations refuse to build functions with more affine forms than this.
pub const MAX_FORMS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PwlError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point {0} lies outside [0,1]^n")]
    OutOfBox(String),
    #[error("result would need more than {MAX_FORMS} affine forms")]
    SizeOverflow,
    #[error("exact checks are only available for n <= 2, got n = {0}")]
    UnsupportedDimension(usize),
    #[error("a function needs at least one term and every term at least one form")]
    EmptyTerm,
    #[error("depth {depth} is past the last step {last}")]
    DepthOutOfRange { depth: usize, last: usize },
}

/// `x ↦ coeffs · x + constant`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AffineForm {
    #[serde(with = "json_ints")]
    pub coeffs: Vec<BigInt>,
    #[serde(rename = "const", with = "json_int")]
    pub constant: BigInt,
}

impl AffineForm {
    pub fn new(coeffs: Vec<BigInt>, constant: BigInt) -> Self {
        Self { coeffs, constant }
    }

    pub fn from_i64s(coeffs: &[i64], constant: i64) -> Self {
        Self::new(coeffs.iter().map(|&c| c.into()).collect(), constant.into())
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.coeffs.iter().zip(x).fold(BigRational::from_integer(self.constant.clone()), |acc, (c, xi)| acc + xi * c)
    }

    pub fn add(&self, other: &AffineForm) -> AffineForm {
        AffineForm::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(), &self.constant + &other.constant)
    }

    pub fn neg(&self) -> AffineForm {
        AffineForm::new(self.coeffs.iter().map(|c| -c).collect(), -&self.constant)
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{c}*x{}", i + 1));
            }
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(self.constant.to_string());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `x ↦ max_i min_j terms[i][j](x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PwlFunction {
    n: usize,
    terms: Vec<Vec<AffineForm>>,
}

#[derive(Deserialize)]
struct PwlJson {
    n: usize,
    terms: Vec<Vec<AffineForm>>,
}

impl<'de> Deserialize<'de> for PwlFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PwlJson::deserialize(d)?;
        PwlFunction::new(raw.n, raw.terms).map_err(serde::de::Error::custom)
    }
}

/// Sorts and deduplicates, and drops every term whose form set contains
/// another term's: its minimum can never be the larger one.
fn normalize(mut terms: Vec<Vec<AffineForm>>) -> Vec<Vec<AffineForm>> {
    for t in terms.iter_mut() {
        t.sort();
        t.dedup();
    }
    terms.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    terms.dedup();
    let mut kept: Vec<Vec<AffineForm>> = Vec::with_capacity(terms.len());
    for t in terms {
        if !kept.iter().any(|k| is_sorted_subset(k, &t)) {
            kept.push(t);
        }
    }
    kept.sort();
    kept
}

fn is_sorted_subset(small: &[AffineForm], big: &[AffineForm]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

fn capped(terms: Vec<Vec<AffineForm>>) -> Result<Vec<Vec<AffineForm>>, PwlError> {
    if terms.iter().map(Vec::len).sum::<usize>() > MAX_FORMS {
        return Err(PwlError::SizeOverflow);
    }
    Ok(normalize(terms))
}

impl PwlFunction {
    pub fn new(n: usize, terms: Vec<Vec<AffineForm>>) -> Result<Self, PwlError> {
        if terms.is_empty() || terms.iter().any(Vec::is_empty) {
            return Err(PwlError::EmptyTerm);
        }
        if let Some(a) = terms.iter().flatten().find(|a| a.dim() != n) {
            return Err(PwlError::DimensionMismatch { expected: n, got: a.dim() });
        }
        Ok(Self { n, terms: capped(terms)? })
    }

    pub fn affine(form: AffineForm) -> Self {
        Self { n: form.dim(), terms: vec![vec![form]] }
    }

    pub fn constant(n: usize, c: i64) -> Self {
        Self::affine(AffineForm::new(vec![BigInt::zero(); n], c.into()))
    }

    /// The `i`-th coordinate function (0-based).
    pub fn projection(n: usize, i: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs[i] = BigInt::one();
        Self::affine(AffineForm::new(coeffs, BigInt::zero()))
    }

    /// Maximum of the given affine forms.
    pub fn max_of(n: usize, forms: Vec<AffineForm>) -> Result<Self, PwlError> {
        Self::new(n, forms.into_iter().map(|f| vec![f]).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Vec<AffineForm>] {
        &self.terms
    }

    pub fn form_count(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    fn same_dim(&self, other: &PwlFunction) -> Result<(), PwlError> {
        if self.n != other.n {
            return Err(PwlError::DimensionMismatch { expected: self.n, got: other.n });
        }
        Ok(())
    }

    /// Exact value at a rational point of the unit cube.
    pub fn eval(&self, x: &RationalPoint) -> Result<BigRational, PwlError> {
        if x.dim() != self.n {
            return Err(PwlError::DimensionMismatch { expected: self.n, got: x.dim() });
        }
        Ok(self.eval_unchecked(x.coords()))
    }

    /// Value at arbitrary rational coordinates, without the box check.
    pub fn eval_unchecked(&self, x: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|t| t.iter().map(|a| a.eval(x)).min().expect("nonempty term"))
            .max()
            .expect("nonempty function")
    }

    /// Evaluates a list of rational coordinates that may lie anywhere.
    pub fn eval_coords(&self, x: &[BigRational]) -> Result<BigRational, PwlError> {
        if x.len() != self.n {
            return Err(PwlError::DimensionMismatch { expected: self.n, got: x.len() });
        }
        let p = RationalPoint::new(x.to_vec()).map_err(|_| PwlError::OutOfBox(format!("{x:?}")))?;
        self.eval(&p)
    }

    pub fn pw_add(&self, other: &PwlFunction) -> Result<PwlFunction, PwlError> {
        self.same_dim(other)?;
        let size = self.form_count().saturating_mul(other.form_count());
        if size > MAX_FORMS {
            return Err(PwlError::SizeOverflow);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.iter().flat_map(|x| b.iter().map(move |y| x.add(y))).collect());
            }
        }
        Ok(PwlFunction { n: self.n, terms: capped(terms)? })
    }

    pub fn pw_join(&self, other: &PwlFunction) -> Result<PwlFunction, PwlError> {
        self.same_dim(other)?;
        Ok(PwlFunction { n: self.n, terms: capped(self.terms.iter().chain(&other.terms).cloned().collect())? })
    }

    pub fn pw_meet(&self, other: &PwlFunction) -> Result<PwlFunction, PwlError> {
        self.same_dim(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                if terms.len() * (a.len() + b.len()) > MAX_FORMS {
                    return Err(PwlError::SizeOverflow);
                }
                terms.push(a.iter().chain(b).cloned().collect());
            }
        }
        Ok(PwlFunction { n: self.n, terms: capped(terms)? })
    }

    /// `-max_i min_j a_ij = max over choices (j_i) of min_i -a_{i j_i}`.
    /// Partial choices are pruned by absorption after every factor.
    pub fn pw_neg(&self) -> Result<PwlFunction, PwlError> {
        let mut terms: Vec<Vec<AffineForm>> = vec![Vec::new()];
        for t in &self.terms {
            let size = terms.iter().map(|p| p.len() + 1).sum::<usize>().saturating_mul(t.len());
            if size > MAX_FORMS {
                return Err(PwlError::SizeOverflow);
            }
            let mut next = Vec::with_capacity(terms.len() * t.len());
            for partial in &terms {
                for a in t {
                    let mut p = partial.clone();
                    p.push(a.neg());
                    next.push(p);
                }
            }
            terms = normalize(next);
        }
        Ok(PwlFunction { n: self.n, terms })
    }

    pub fn pw_sub(&self, other: &PwlFunction) -> Result<PwlFunction, PwlError> {
        self.pw_add(&other.pw_neg()?)
    }

    fn gate(&self) -> Result<(), PwlError> {
        if self.n > 2 {
            return Err(PwlError::UnsupportedDimension(self.n));
        }
        Ok(())
    }

    /// Is the restriction to the closed simplex `s` convex?
    pub fn convex_check(&self, s: &Simplex) -> Result<bool, PwlError> {
        self.gate()?;
        if s.ambient_dim() != self.n {
            return Err(PwlError::DimensionMismatch { expected: self.n, got: s.ambient_dim() });
        }
        Ok(arrangement::Restriction::new(self, s).is_convex())
    }

    /// Does the function vanish identically on `|K|`?
    pub fn vanishes_on(&self, k: &GeometricComplex) -> Result<bool, PwlError> {
        self.gate()?;
        if k.ambient_dim != self.n {
            return Err(PwlError::DimensionMismatch { expected: self.n, got: k.ambient_dim });
        }
        Ok(k.maximal().into_iter().all(|s| arrangement::Restriction::new(self, s).vanishes()))
    }
}

impl fmt::Display for PwlFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("min({})", t.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "max({})", terms.join(", "))
    }
}

/// Does `f` vanish on `|Δ_depth|`? A `true` answer certifies membership in
/// the ideal of functions vanishing on some `|Δ_i|`; `false` only says this
/// depth is no witness.
pub fn ideal_member_at_depth(f: &PwlFunction, steps: &[StellarStep], depth: usize) -> Result<bool, PwlError> {
    let step = steps.get(depth).ok_or(PwlError::DepthOutOfRange { depth, last: steps.len().saturating_sub(1) })?;
    f.vanishes_on(&step.geometry)
}

/// Maximum of `1..=max_forms` random affine forms with coefficients in
/// `-bound..=bound`; convex by construction.
pub fn random_convex<R: Rng + ?Sized>(rng: &mut R, n: usize, max_forms: usize, bound: i64) -> PwlFunction {
    let k = rng.gen_range(1..=max_forms.max(1));
    let forms = (0..k)
        .map(|_| AffineForm::new((0..n).map(|_| rng.gen_range(-bound..=bound).into()).collect(), rng.gen_range(-bound..=bound).into()))
        .collect();
    PwlFunction::max_of(n, forms).expect("forms share the dimension")
}

/// Random max-of-min function with up to `outer` terms of up to `inner`
/// forms each.
pub fn random_pwl<R: Rng + ?Sized>(rng: &mut R, n: usize, outer: usize, inner: usize, bound: i64) -> PwlFunction {
    let terms = (0..rng.gen_range(1..=outer.max(1)))
        .map(|_| {
            (0..rng.gen_range(1..=inner.max(1)))
                .map(|_| AffineForm::new((0..n).map(|_| rng.gen_range(-bound..=bound).into()).collect(), rng.gen_range(-bound..=bound).into()))
                .collect()
        })
        .collect();
    PwlFunction::new(n, terms).expect("terms share the dimension")
}

/// Random rational point of `[0,1]^n` with denominators up to `max_den`.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, n: usize, max_den: i64) -> RationalPoint {
    let coords = (0..n)
        .map(|_| {
            let d = rng.gen_range(1..=max_den);
            BigRational::new(rng.gen_range(0..=d).into(), d.into())
        })
        .collect();
    RationalPoint::new(coords).expect("coordinates lie in [0,1]")
}

mod json_int {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    pub(super) enum Repr {
        Int(i64),
        Text(String),
    }

    pub(super) fn to_repr(v: &BigInt) -> Repr {
        i64::try_from(v).map_or_else(|_| Repr::Text(v.to_string()), Repr::Int)
    }

    pub(super) fn from_repr<E: serde::de::Error>(r: Repr) -> Result<BigInt, E> {
        match r {
            Repr::Int(i) => Ok(i.into()),
            Repr::Text(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
        }
    }

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_repr(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_repr(Repr::deserialize(d)?)
    }
}

mod json_ints {
    use super::json_int::{from_repr, to_repr, Repr};
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(d)?.into_iter().map(from_repr).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pt(p: &[(i64, i64)]) -> RationalPoint {
        RationalPoint::from_fractions(p).unwrap()
    }

    fn one_minus_x(n: usize) -> PwlFunction {
        let mut c = vec![0; n];
        c[0] = -1;
        PwlFunction::affine(AffineForm::from_i64s(&c, 1))
    }

    #[test]
    fn evaluation() {
        let f = PwlFunction::new(1, vec![vec![AffineForm::from_i64s(&[2], -1), AffineForm::from_i64s(&[1], 0)]]).unwrap();
        assert_eq!(f.eval(&pt(&[(1, 3)])).unwrap(), q(-1, 3));
        assert_eq!(PwlFunction::constant(3, 1).eval(&pt(&[(1, 5), (0, 1), (1, 1)])).unwrap(), q(1, 1));
        assert_eq!(PwlFunction::projection(2, 0).eval(&pt(&[(1, 2), (1, 1)])).unwrap(), q(1, 2));
        assert_eq!(f.eval(&pt(&[(1, 3), (1, 3)])), Err(PwlError::DimensionMismatch { expected: 1, got: 2 }));
        assert!(matches!(f.eval_coords(&[q(3, 2)]), Err(PwlError::OutOfBox(_))));
    }

    #[test]
    fn lattice_operations() {
        let x = PwlFunction::projection(1, 0);
        let y = one_minus_x(1);
        let sum = x.pw_add(&y).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        for _ in 0..10 {
            assert_eq!(sum.eval(&random_point(&mut rng, 1, 20)).unwrap(), q(1, 1));
        }
        let j = x.pw_join(&y).unwrap();
        assert_eq!(j.eval(&pt(&[(1, 2)])).unwrap(), q(1, 2));
        assert_eq!(j.eval(&pt(&[(0, 1)])).unwrap(), q(1, 1));
        let m = x.pw_meet(&y).unwrap();
        assert_eq!(m.eval(&pt(&[(1, 4)])).unwrap(), q(1, 4));
    }

    #[test]
    fn negation_is_an_involution() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let f = random_pwl(&mut rng, 2, 3, 3, 4);
            let back = f.pw_neg().unwrap().pw_neg().unwrap();
            for _ in 0..20 {
                let p = random_point(&mut rng, 2, 16);
                assert_eq!(back.eval(&p).unwrap(), f.eval(&p).unwrap());
            }
        }
    }

    #[test]
    fn size_cap() {
        let forms: Vec<AffineForm> = (0..300).map(|i| AffineForm::from_i64s(&[i], 0)).collect();
        let wide = PwlFunction::max_of(1, forms.clone()).unwrap();
        let tall = PwlFunction::new(1, vec![forms]).unwrap();
        assert_eq!(wide.pw_add(&tall), Err(PwlError::SizeOverflow));
        // every singleton term of `wide` absorbs the long term of `tall`
        assert_eq!(tall.pw_join(&wide).unwrap(), wide);
        let mut layered = PwlFunction::new(1, (0..20).map(|i| vec![AffineForm::from_i64s(&[i], 0), AffineForm::from_i64s(&[i], 1)]).collect()).unwrap();
        layered = layered.pw_join(&PwlFunction::constant(1, 7)).unwrap();
        assert_eq!(layered.pw_neg(), Err(PwlError::SizeOverflow));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(PwlFunction::new(1, vec![]), Err(PwlError::EmptyTerm));
        assert_eq!(PwlFunction::new(1, vec![vec![]]), Err(PwlError::EmptyTerm));
        assert_eq!(
            PwlFunction::new(1, vec![vec![AffineForm::from_i64s(&[1, 2], 0)]]),
            Err(PwlError::DimensionMismatch { expected: 1, got: 2 })
        );
    }

    #[test]
    fn json_format() {
        let text = r#"{"n":1,"terms":[[{"coeffs":[2],"const":-1},{"coeffs":[1],"const":0}]]}"#;
        let f: PwlFunction = serde_json::from_str(text).unwrap();
        assert_eq!(f.eval(&pt(&[(1, 3)])).unwrap(), q(-1, 3));
        let again: PwlFunction = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(again, f);
        let big: PwlFunction = serde_json::from_str(r#"{"n":1,"terms":[[{"coeffs":["123456789012345678901234567890"],"const":0}]]}"#).unwrap();
        assert!(serde_json::to_string(&big).unwrap().contains("\"123456789012345678901234567890\""));
        assert!(serde_json::from_str::<PwlFunction>(r#"{"n":2,"terms":[[{"coeffs":[1],"const":0}]]}"#).is_err());
    }

    #[test]
    fn convexity_examples() {
        let unit = Simplex::new(vec![pt(&[(0, 1)]), pt(&[(1, 1)])]).unwrap();
        let tent = PwlFunction::new(1, vec![vec![AffineForm::from_i64s(&[1], 0), AffineForm::from_i64s(&[-1], 1)]]).unwrap();
        assert!(!tent.convex_check(&unit).unwrap());
        let vee = PwlFunction::projection(1, 0).pw_join(&one_minus_x(1)).unwrap();
        assert!(vee.convex_check(&unit).unwrap());
        assert!(PwlFunction::affine(AffineForm::from_i64s(&[-3], 2)).convex_check(&unit).unwrap());
        // the tent is affine on either half
        let left = Simplex::new(vec![pt(&[(0, 1)]), pt(&[(1, 2)])]).unwrap();
        assert!(tent.convex_check(&left).unwrap());
        let cube3 = Simplex::new(vec![pt(&[(0, 1), (0, 1), (0, 1)])]).unwrap();
        assert_eq!(PwlFunction::constant(3, 0).convex_check(&cube3), Err(PwlError::UnsupportedDimension(3)));
    }

    #[test]
    fn convexity_in_the_plane() {
        let tri = Simplex::new(vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 1), (0, 1)]), pt(&[(0, 1), (1, 1)])]).unwrap();
        let x = PwlFunction::projection(2, 0);
        let y = PwlFunction::projection(2, 1);
        assert!(x.pw_join(&y).unwrap().convex_check(&tri).unwrap());
        assert!(!x.pw_meet(&y).unwrap().convex_check(&tri).unwrap());
        // min(x, y) is affine along the diagonal segment
        let diag = Simplex::new(vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 1), (1, 1)])]).unwrap();
        assert!(x.pw_meet(&y).unwrap().convex_check(&diag).unwrap());
        // but not along the anti-diagonal
        let anti = Simplex::new(vec![pt(&[(1, 1), (0, 1)]), pt(&[(0, 1), (1, 1)])]).unwrap();
        assert!(!x.pw_meet(&y).unwrap().convex_check(&anti).unwrap());
    }

    #[test]
    fn vanishing_examples() {
        let f = PwlFunction::max_of(1, vec![AffineForm::from_i64s(&[2], -1), AffineForm::from_i64s(&[0], 0)]).unwrap();
        let half = GeometricComplex::from_simplexes(1, [Simplex::new(vec![pt(&[(0, 1)]), pt(&[(1, 2)])]).unwrap()]).unwrap();
        let whole = GeometricComplex::from_simplexes(1, [Simplex::new(vec![pt(&[(0, 1)]), pt(&[(1, 1)])]).unwrap()]).unwrap();
        assert!(f.vanishes_on(&half).unwrap());
        assert!(!f.vanishes_on(&whole).unwrap());
        assert!(PwlFunction::constant(1, 0).vanishes_on(&whole).unwrap());
        let origin = GeometricComplex::from_simplexes(1, [Simplex::point(pt(&[(0, 1)]))]).unwrap();
        let mid = GeometricComplex::from_simplexes(1, [Simplex::point(pt(&[(1, 2)]))]).unwrap();
        assert!(PwlFunction::projection(1, 0).vanishes_on(&origin).unwrap());
        assert!(!PwlFunction::projection(1, 0).vanishes_on(&mid).unwrap());
        assert!(PwlFunction::constant(1, 0).vanishes_on(&GeometricComplex::empty(1)).unwrap());
    }

    #[test]
    fn vanishing_inside_a_triangle() {
        // max(0, x + y - 1) vanishes on the lower-left triangle only
        let f = PwlFunction::max_of(2, vec![AffineForm::from_i64s(&[0, 0], 0), AffineForm::from_i64s(&[1, 1], -1)]).unwrap();
        let lower = Simplex::new(vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 1), (0, 1)]), pt(&[(0, 1), (1, 1)])]).unwrap();
        let upper = Simplex::new(vec![pt(&[(1, 1), (1, 1)]), pt(&[(1, 1), (0, 1)]), pt(&[(0, 1), (1, 1)])]).unwrap();
        assert!(f.vanishes_on(&GeometricComplex::from_simplexes(2, [lower]).unwrap()).unwrap());
        assert!(!f.vanishes_on(&GeometricComplex::from_simplexes(2, [upper]).unwrap()).unwrap());
        // a tent that is zero at all three corners but not inside
        let tent = PwlFunction::new(
            2,
            vec![vec![AffineForm::from_i64s(&[1, 0], 0), AffineForm::from_i64s(&[0, 1], 0), AffineForm::from_i64s(&[-1, -1], 1)]],
        )
        .unwrap();
        let tri = Simplex::new(vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 1), (0, 1)]), pt(&[(0, 1), (1, 1)])]).unwrap();
        assert!(!tent.vanishes_on(&GeometricComplex::from_simplexes(2, [tri]).unwrap()).unwrap());
    }
}
