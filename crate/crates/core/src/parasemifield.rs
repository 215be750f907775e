//! `G(F)` read as an additively idempotent parasemifield.
//!
//! Semiring addition is the lattice join, multiplication is the group
//! addition, inversion is group negation and the multiplicative unit is the
//! group zero. In this dictionary `s <= 1` means `s <= 0` in the group, and a
//! monomial `x^a` under a generator assignment is the integer combination
//! `sum a_i * g_i`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forest::RootedForest;
use crate::tlex::{group_order_unit, same_forest, ForestRef, TlexElement, TlexError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParasemifieldError {
    #[error("exponent vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a positive rational")]
    NonPositive(String),
    #[error(transparent)]
    Tlex(#[from] TlexError),
}

/// Semiring signature on the elements of `G(F)`.
#[derive(Debug, Clone)]
pub struct Parasemifield {
    forest: Arc<RootedForest>,
}

/// The lattice-group signature recovered from a [`Parasemifield`].
#[derive(Debug, Clone)]
pub struct LGroupView {
    forest: Arc<RootedForest>,
}

impl Parasemifield {
    pub fn wrap(forest: Arc<RootedForest>) -> Self {
        Self { forest }
    }

    pub fn unwrap(&self) -> LGroupView {
        LGroupView { forest: self.forest.clone() }
    }

    pub fn forest(&self) -> &Arc<RootedForest> {
        &self.forest
    }

    pub fn ps_add(&self, a: &TlexElement, b: &TlexElement) -> Result<TlexElement, TlexError> {
        a.join(b)
    }

    pub fn ps_mul(&self, a: &TlexElement, b: &TlexElement) -> Result<TlexElement, TlexError> {
        a.add(b)
    }

    pub fn ps_inv(&self, a: &TlexElement) -> TlexElement {
        a.neg()
    }

    pub fn ps_one(&self) -> TlexElement {
        TlexElement::zero(&self.forest)
    }

    /// `u^n` in multiplicative notation.
    pub fn ps_pow(&self, a: &TlexElement, n: &BigInt) -> TlexElement {
        a.scale(n)
    }

    /// Lattice meet written in the semiring signature:
    /// `a ^ b = (a^-1 + b^-1)^-1`.
    pub fn ps_meet(&self, a: &TlexElement, b: &TlexElement) -> Result<TlexElement, TlexError> {
        Ok(self.ps_inv(&self.ps_add(&self.ps_inv(a), &self.ps_inv(b))?))
    }

    /// Semiring order `a <= b` iff `a + b = b`.
    pub fn ps_leq(&self, a: &TlexElement, b: &TlexElement) -> Result<bool, TlexError> {
        Ok(self.ps_add(a, b)? == *b)
    }
}

impl LGroupView {
    pub fn zero(&self) -> TlexElement {
        TlexElement::zero(&self.forest)
    }

    pub fn add(&self, a: &TlexElement, b: &TlexElement) -> Result<TlexElement, TlexError> {
        a.add(b)
    }

    pub fn neg(&self, a: &TlexElement) -> TlexElement {
        a.neg()
    }

    pub fn join(&self, a: &TlexElement, b: &TlexElement) -> Result<TlexElement, TlexError> {
        a.join(b)
    }

    pub fn meet(&self, a: &TlexElement, b: &TlexElement) -> Result<TlexElement, TlexError> {
        a.meet(b)
    }
}

/// Images `g_1, ..., g_m` of the polynomial variables under a semiring map
/// `N[x_1, ..., x_m] -> G(F)`.
#[derive(Debug, Clone)]
pub struct GeneratorAssignment {
    forest: Arc<RootedForest>,
    gens: Vec<TlexElement>,
}

impl GeneratorAssignment {
    pub fn new(forest: Arc<RootedForest>, gens: Vec<TlexElement>) -> Result<Self, TlexError> {
        if gens.iter().any(|g| !same_forest(g.forest(), &forest)) {
            return Err(TlexError::ForestMismatch);
        }
        Ok(Self { forest, gens })
    }

    pub fn forest(&self) -> &Arc<RootedForest> {
        &self.forest
    }

    pub fn gens(&self) -> &[TlexElement] {
        &self.gens
    }

    pub fn arity(&self) -> usize {
        self.gens.len()
    }

    /// `phi(x^a) = sum a_i * g_i`.
    pub fn monomial_eval(&self, a: &[u64]) -> Result<TlexElement, ParasemifieldError> {
        if a.len() != self.gens.len() {
            return Err(ParasemifieldError::LengthMismatch { expected: self.gens.len(), got: a.len() });
        }
        let mut acc = TlexElement::zero(&self.forest);
        for (g, &k) in self.gens.iter().zip(a) {
            if k != 0 {
                acc = acc.add(&g.scale(&BigInt::from(k)))?;
            }
        }
        Ok(acc)
    }

    /// `a` lies in the exponent cone iff `phi(x^a) <= 1`.
    pub fn cone_member(&self, a: &[u64]) -> Result<bool, ParasemifieldError> {
        let s = self.monomial_eval(a)?;
        Ok(s.leq(&TlexElement::zero(&self.forest))?)
    }

    /// First `c` in graded-lexicographic order with total degree at most
    /// `degree_bound` such that `c` and every `c + e_i` are in the cone.
    pub fn find_interior_cone_point(&self, degree_bound: u64) -> Option<Vec<u64>> {
        let m = self.gens.len();
        for degree in 0..=degree_bound {
            let mut found = None;
            for_each_composition(m, degree, &mut |c| {
                if self.is_interior(c) {
                    found = Some(c.to_vec());
                    true
                } else {
                    false
                }
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn is_interior(&self, c: &[u64]) -> bool {
        let member = |a: &[u64]| self.cone_member(a).expect("length checked");
        if !member(c) {
            return false;
        }
        let mut shifted = c.to_vec();
        (0..c.len()).all(|i| {
            shifted[i] += 1;
            let ok = member(&shifted);
            shifted[i] -= 1;
            ok
        })
    }

    /// `u = phi(x^c)`.
    pub fn def2_unit_from_cone(&self, c: &[u64]) -> Result<TlexElement, ParasemifieldError> {
        self.monomial_eval(c)
    }

    /// A bound on certificates for the generators: one more than the
    /// largest absolute root coordinate.
    pub fn certificate_bound(&self) -> BigInt {
        let top = self
            .gens
            .iter()
            .flat_map(|g| self.forest.roots().map(move |r| g.coord(r).abs()))
            .max()
            .unwrap_or_else(BigInt::zero);
        top + 1u32
    }

    pub fn to_json(&self) -> GensJson {
        let coords = |g: &TlexElement| {
            self.forest
                .vertices()
                .map(|v| (self.forest.name(v).to_owned(), g.coord(v).to_string()))
                .collect()
        };
        GensJson {
            forest: ForestRef::Inline(self.forest.to_json()),
            gens: self.gens.iter().map(|g| GenJson { forest: None, coords: coords(g) }).collect(),
        }
    }

    pub fn from_json(json: &GensJson) -> Result<Self, TlexError> {
        let forest = Arc::new(json.forest.resolve()?);
        let gens = json
            .gens
            .iter()
            .map(|g| {
                if let Some(own) = &g.forest {
                    if own.resolve()? != *forest {
                        return Err(TlexError::ForestMismatch);
                    }
                }
                TlexElement::from_coord_map(&forest, &g.coords)
            })
            .collect::<Result<_, _>>()?;
        Self::new(forest, gens)
    }
}

/// Generator-assignment JSON: `{"forest": ..., "gens": [element JSON]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GensJson {
    pub forest: ForestRef,
    pub gens: Vec<GenJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forest: Option<ForestRef>,
    pub coords: BTreeMap<String, String>,
}

/// Calls `visit` on every `c` in `N_0^m` with `|c| = degree`, in increasing
/// lexicographic order, until `visit` returns true.
fn for_each_composition(m: usize, degree: u64, visit: &mut dyn FnMut(&[u64]) -> bool) {
    fn go(c: &mut Vec<u64>, i: usize, left: u64, visit: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        if i + 1 == c.len() {
            c[i] = left;
            return visit(c);
        }
        for k in 0..=left {
            c[i] = k;
            if go(c, i + 1, left - k, visit) {
                return true;
            }
        }
        false
    }
    if m == 0 {
        if degree == 0 {
            visit(&[]);
        }
        return;
    }
    go(&mut vec![0; m], 0, degree, visit);
}

/// Why no order-unit certificate was found.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Def2Failure {
    #[error("no certificate n <= {0}")]
    Fails(BigInt),
    #[error(transparent)]
    Tlex(#[from] TlexError),
}

/// Least `n` in `1..=n_bound` with `u^n s + 1 = 1`, i.e. `n*u + s <= 0`.
pub fn def2_check(u: &TlexElement, s: &TlexElement, n_bound: &BigInt) -> Result<BigInt, Def2Failure> {
    let ps = Parasemifield::wrap(u.forest().clone());
    let one = ps.ps_one();
    let holds = |n: &BigInt| -> Result<bool, TlexError> {
        let lhs = ps.ps_mul(&ps.ps_pow(u, n), s)?;
        Ok(ps.ps_add(&lhs, &one)? == one)
    };
    let fails = || Def2Failure::Fails(n_bound.clone());
    if n_bound < &BigInt::one() {
        return Err(fails());
    }
    if u.leq(&one)? {
        // monotone in n: gallop, then bisect for the least witness
        let mut hi = BigInt::one();
        while !holds(&hi)? {
            if &hi >= n_bound {
                return Err(fails());
            }
            hi = (&hi * 2u32).min(n_bound.clone());
        }
        let mut lo = BigInt::zero(); // invariant: lo fails or is 0, hi holds
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1;
            if holds(&mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return Ok(hi);
    }
    let mut n = BigInt::one();
    while &n <= n_bound {
        if holds(&n)? {
            return Ok(n);
        }
        n += 1u32;
    }
    Err(fails())
}

/// The unit that always works: the inverse of the group order-unit.
pub fn fallback_unit(forest: &Arc<RootedForest>) -> TlexElement {
    group_order_unit(forest).unit.neg()
}

/// Additive `p`-adic valuation of a nonzero rational.
pub fn padic_valuation(x: &BigRational, p: u64) -> i64 {
    let p = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut n = n.abs();
        let mut k = 0i64;
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                return k;
            }
            n = q;
            k += 1;
        }
    };
    count(x.numer()) - count(x.denom())
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d: &u64| d.saturating_mul(*d) <= p).all(|d| !p.is_multiple_of(d))
}

/// Membership in `{x in Q+ : 2^(-v_p(x)) < x}`.
pub fn padic_member(x: &BigRational, p: u64) -> Result<bool, ParasemifieldError> {
    if !is_prime(p) {
        return Err(ParasemifieldError::NotPrime(p));
    }
    if !x.is_positive() {
        return Err(ParasemifieldError::NonPositive(x.to_string()));
    }
    let v = padic_valuation(x, p);
    let two_pow = BigInt::one() << v.unsigned_abs();
    let bound = if v >= 0 {
        BigRational::new(BigInt::one(), two_pow)
    } else {
        BigRational::from_integer(two_pow)
    };
    Ok(bound < *x)
}
