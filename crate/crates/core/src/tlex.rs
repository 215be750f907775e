//! The lattice-ordered group `G(F)` attached to a rooted forest.
//!
//! As a group `G(F)` is `Z^|F|`, one integer per vertex. The lattice
//! operations are tree-lexicographic: two tuples are compared along the
//! largest initial segment on which they agree, and at each next vertex the
//! larger tuple wins on the whole subtree below it. Trees of the forest act
//! independently, so `G(F)` is the product of the groups of its trees.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forest::{ForestError, ForestJson, RootedForest, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TlexError {
    #[error("elements live over different forests")]
    ForestMismatch,
    #[error("the trivial forest has no roots to build an order-unit from")]
    EmptyForest,
    #[error("coordinates do not match the forest: {0}")]
    CoordinateDomain(String),
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("unknown named forest `{0}`")]
    UnknownForestName(String),
    #[error(transparent)]
    Forest(#[from] ForestError),
}

/// An element of `G(F)`: an integer for every vertex of the forest.
#[derive(Clone)]
pub struct TlexElement {
    forest: Arc<RootedForest>,
    coords: Vec<BigInt>,
}

impl PartialEq for TlexElement {
    fn eq(&self, other: &Self) -> bool {
        same_forest(&self.forest, &other.forest) && self.coords == other.coords
    }
}

impl Eq for TlexElement {}

impl fmt::Debug for TlexElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TlexElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn same_forest(a: &Arc<RootedForest>, b: &Arc<RootedForest>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Per-vertex `(slope, offset)` pairs describing `offset + n * slope` as
/// `n -> +inf`. The sign at a vertex is the lexicographic sign of the pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticSign {
    pairs: Vec<(BigInt, BigInt)>,
}

impl AsymptoticSign {
    /// Pairs for `h - n * g`.
    pub fn of_difference(h: &TlexElement, g: &TlexElement) -> Self {
        let pairs = g.coords.iter().zip(&h.coords).map(|(gw, hw)| (-gw, hw.clone())).collect();
        Self { pairs }
    }

    /// Pairs for `h + n * g`.
    pub fn of_sum(h: &TlexElement, g: &TlexElement) -> Self {
        let pairs = g.coords.iter().zip(&h.coords).map(|(gw, hw)| (gw.clone(), hw.clone())).collect();
        Self { pairs }
    }

    fn sign(&self, v: VertexId) -> std::cmp::Ordering {
        let (s, o) = &self.pairs[v.0];
        s.sign().cmp(&num_bigint::Sign::NoSign).then_with(|| {
            if s.is_zero() {
                o.cmp(&BigInt::zero())
            } else {
                std::cmp::Ordering::Equal
            }
        })
    }

    /// True iff the represented element is strictly positive for all
    /// sufficiently large `n`.
    pub fn eventually_positive(&self, forest: &RootedForest) -> bool {
        strictly_positive_by(forest, |v| self.sign(v))
    }
}

/// Positivity through the zero initial segment: the element is `> 0` iff it
/// is nonzero and every vertex adjacent to its maximal zero initial segment
/// carries a positive value.
fn strictly_positive_by(forest: &RootedForest, sign: impl Fn(VertexId) -> std::cmp::Ordering) -> bool {
    use std::cmp::Ordering::*;
    let mut stack: Vec<VertexId> = forest.roots().collect();
    let mut nonzero = false;
    while let Some(v) = stack.pop() {
        match sign(v) {
            Equal => stack.extend(forest.children(v)),
            Greater => nonzero = true,
            Less => return false,
        }
    }
    nonzero
}

/// Tree-lexicographic join (`take_larger`) or meet of two coordinate
/// vectors over `forest`.
pub(crate) fn lattice_coords(
    forest: &RootedForest,
    a: &[BigInt],
    b: &[BigInt],
    take_larger: bool,
) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); forest.len()];
    let mut stack: Vec<VertexId> = forest.roots().collect();
    while let Some(v) = stack.pop() {
        let (x, y) = (&a[v.0], &b[v.0]);
        if x == y {
            out[v.0] = x.clone();
            stack.extend(forest.children(v));
        } else {
            let src = if (x > y) == take_larger { a } else { b };
            let mut below = vec![v];
            while let Some(u) = below.pop() {
                out[u.0] = src[u.0].clone();
                below.extend(forest.children(u));
            }
        }
    }
    out
}

impl TlexElement {
    pub fn new(forest: Arc<RootedForest>, coords: Vec<BigInt>) -> Result<Self, TlexError> {
        if coords.len() != forest.len() {
            return Err(TlexError::CoordinateDomain(format!(
                "expected {} coordinates, got {}",
                forest.len(),
                coords.len()
            )));
        }
        Ok(Self { forest, coords })
    }

    /// Convenience constructor from machine integers, in vertex order.
    pub fn from_i64s(forest: &Arc<RootedForest>, coords: &[i64]) -> Result<Self, TlexError> {
        Self::new(forest.clone(), coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(forest: &Arc<RootedForest>) -> Self {
        Self { forest: forest.clone(), coords: vec![BigInt::zero(); forest.len()] }
    }

    /// `b(w)`: one at `w`, zero elsewhere.
    pub fn basis(forest: &Arc<RootedForest>, w: VertexId) -> Self {
        let mut e = Self::zero(forest);
        e.coords[w.0] = BigInt::one();
        e
    }

    pub fn forest(&self) -> &Arc<RootedForest> {
        &self.forest
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn coord(&self, v: VertexId) -> &BigInt {
        &self.coords[v.0]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), TlexError> {
        if same_forest(&self.forest, &other.forest) {
            Ok(())
        } else {
            Err(TlexError::ForestMismatch)
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Self, TlexError> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect();
        Ok(Self { forest: self.forest.clone(), coords })
    }

    pub fn add(&self, other: &Self) -> Result<Self, TlexError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TlexError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self { forest: self.forest.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        Self { forest: self.forest.clone(), coords: self.coords.iter().map(|c| c * n).collect() }
    }

    fn lattice(&self, other: &Self, take_larger: bool) -> Result<Self, TlexError> {
        self.check(other)?;
        let coords = lattice_coords(&self.forest, &self.coords, &other.coords, take_larger);
        Ok(Self { forest: self.forest.clone(), coords })
    }

    pub fn join(&self, other: &Self) -> Result<Self, TlexError> {
        self.lattice(other, true)
    }

    pub fn meet(&self, other: &Self) -> Result<Self, TlexError> {
        self.lattice(other, false)
    }

    /// `self <= other`, read off the lattice: `self v other == other`.
    pub fn leq(&self, other: &Self) -> Result<bool, TlexError> {
        Ok(self.join(other)? == *other)
    }

    pub fn lt(&self, other: &Self) -> Result<bool, TlexError> {
        Ok(self != other && self.leq(other)?)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && Self::zero(&self.forest).leq(self).expect("same forest")
    }

    /// `self << other`: `n * self < other` for every integer `n`.
    ///
    /// Decided exactly from the two asymptotic sign patterns of
    /// `other - n * self`; the set of `n` where that element is positive is
    /// an interval, so both tails being positive covers every `n`.
    pub fn inf_less(&self, other: &Self) -> Result<bool, TlexError> {
        self.check(other)?;
        let f = &*self.forest;
        Ok(AsymptoticSign::of_difference(other, self).eventually_positive(f)
            && AsymptoticSign::of_sum(other, self).eventually_positive(f))
    }

    /// Some `h` with `self << h` exists iff every root coordinate is zero;
    /// the sum of root basis elements is then a witness.
    pub fn is_infinitesimal(&self) -> bool {
        self.forest.roots().all(|r| self.coords[r.0].is_zero())
    }

    /// Witness for [`Self::is_infinitesimal`], when one exists.
    pub fn infinitesimal_witness(&self) -> Option<Self> {
        self.is_infinitesimal().then(|| group_order_unit(&self.forest).unit)
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            forest: ForestRef::Inline(self.forest.to_json()),
            coords: self
                .forest
                .vertices()
                .map(|v| (self.forest.name(v).to_owned(), self.coords[v.0].to_string()))
                .collect(),
        }
    }

    pub fn from_json(json: &ElementJson) -> Result<Self, TlexError> {
        let forest = Arc::new(json.forest.resolve()?);
        Self::from_coord_map(&forest, &json.coords)
    }

    /// Reads coordinates keyed by vertex name. Every vertex must be present.
    pub fn from_coord_map(
        forest: &Arc<RootedForest>,
        coords: &BTreeMap<String, String>,
    ) -> Result<Self, TlexError> {
        if coords.len() != forest.len() {
            return Err(TlexError::CoordinateDomain(format!(
                "expected {} coordinates, got {}",
                forest.len(),
                coords.len()
            )));
        }
        let mut out = vec![BigInt::zero(); forest.len()];
        for (name, value) in coords {
            let v = forest.lookup(name)?;
            out[v.0] = value.trim().parse().map_err(|_| TlexError::BadInteger(value.clone()))?;
        }
        Self::new(forest.clone(), out)
    }
}

/// An order-unit of `G(F)` together with whether the forest was trivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderUnit {
    pub unit: TlexElement,
    /// Set for the empty forest, where the unit is zero.
    pub degenerate: bool,
}

/// `u = sum of b(v)` over the roots `v`.
pub fn group_order_unit(forest: &Arc<RootedForest>) -> OrderUnit {
    let mut unit = TlexElement::zero(forest);
    for r in forest.roots() {
        unit.coords[r.0] = BigInt::one();
    }
    OrderUnit { unit, degenerate: forest.is_empty() }
}

/// The multiplier `n = max(1, 1 + max root coordinate of g)`.
pub fn order_unit_certificate(g: &TlexElement) -> BigInt {
    let top = g.forest.roots().map(|r| g.coords[r.0].clone()).max().unwrap_or_else(BigInt::zero);
    (top + 1u32).max(BigInt::one())
}

/// Checks `n * u >= g` for every sample, with `n` from
/// [`order_unit_certificate`]. Returns the certificates when all hold.
pub fn is_group_order_unit(
    u: &TlexElement,
    samples: &[TlexElement],
) -> Result<Option<Vec<BigInt>>, TlexError> {
    let mut certs = Vec::with_capacity(samples.len());
    for g in samples {
        let n = order_unit_certificate(g);
        if !g.leq(&u.scale(&n))? {
            return Ok(None);
        }
        certs.push(n);
    }
    Ok(Some(certs))
}

/// Element with coordinates drawn uniformly from `[-bound, bound]`.
pub fn random_element_with<R: Rng + ?Sized>(rng: &mut R, forest: &Arc<RootedForest>, bound: i64) -> TlexElement {
    let coords = (0..forest.len()).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    TlexElement { forest: forest.clone(), coords }
}

/// Deterministic in `seed`.
pub fn random_element(forest: &Arc<RootedForest>, seed: u64, bound: u32) -> TlexElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_element_with(&mut rng, forest, i64::from(bound))
}

/// Rank of `G(F)` as a free abelian group, read off the representation.
pub fn group_rank(forest: &RootedForest) -> usize {
    forest.len()
}

/// Element JSON: `{"forest": <forest JSON or name>, "coords": {vertex: "int"}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementJson {
    pub forest: ForestRef,
    pub coords: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ForestRef {
    Named(String),
    Inline(ForestJson),
}

impl ForestRef {
    pub fn resolve(&self) -> Result<RootedForest, TlexError> {
        match self {
            ForestRef::Named(name) => named_forest(name),
            ForestRef::Inline(raw) => Ok(RootedForest::validate(raw)?),
        }
    }
}

/// Shipped forests: `empty`, `singleton`, `chainN`, `starN` (root plus N
/// leaves), `singletonsN`.
pub fn named_forest(name: &str) -> Result<RootedForest, TlexError> {
    let unknown = || TlexError::UnknownForestName(name.to_owned());
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    match name {
        "empty" => Ok(RootedForest::empty()),
        "singleton" => Ok(RootedForest::singleton()),
        _ => {
            if let Some(k) = num("singletons") {
                Ok(RootedForest::singletons(k))
            } else if let Some(k) = num("chain") {
                Ok(RootedForest::chain(k))
            } else if let Some(k) = num("star") {
                Ok(RootedForest::star(k))
            } else {
                Err(unknown())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn arc(f: RootedForest) -> Arc<RootedForest> {
        Arc::new(f)
    }

    fn el(f: &Arc<RootedForest>, c: &[i64]) -> TlexElement {
        TlexElement::from_i64s(f, c).unwrap()
    }

    #[test]
    fn group_ops() {
        let f = arc(RootedForest::chain(2));
        assert_eq!(el(&f, &[1, 5]).add(&el(&f, &[0, -2])).unwrap(), el(&f, &[1, 3]));
        assert_eq!(TlexElement::zero(&f).neg(), TlexElement::zero(&f));
        let (a, b) = (VertexId(0), VertexId(1));
        assert_eq!(
            TlexElement::basis(&f, a).add(&TlexElement::basis(&f, b)).unwrap(),
            el(&f, &[1, 1])
        );
        let other = arc(RootedForest::singletons(2));
        assert_eq!(el(&f, &[0, 0]).add(&el(&other, &[0, 0])), Err(TlexError::ForestMismatch));
        assert_eq!(el(&f, &[0, 0]).join(&el(&other, &[0, 0])), Err(TlexError::ForestMismatch));
        // structurally equal forests behind different pointers are compatible
        let f2 = arc(RootedForest::chain(2));
        assert!(el(&f, &[1, 1]).add(&el(&f2, &[1, 1])).is_ok());
    }

    #[test]
    fn lattice_examples() {
        let chain = arc(RootedForest::chain(2));
        assert_eq!(el(&chain, &[1, 5]).join(&el(&chain, &[1, 3])).unwrap(), el(&chain, &[1, 5]));
        assert_eq!(el(&chain, &[1, 5]).meet(&el(&chain, &[1, 3])).unwrap(), el(&chain, &[1, 3]));
        assert_eq!(el(&chain, &[1, 5]).join(&el(&chain, &[2, -100])).unwrap(), el(&chain, &[2, -100]));

        let star = arc(RootedForest::star(2));
        let (g, h) = (el(&star, &[0, 2, -1]), el(&star, &[0, 1, 4]));
        assert_eq!(g.join(&h).unwrap(), el(&star, &[0, 2, 4]));
        assert_eq!(g.meet(&h).unwrap(), el(&star, &[0, 1, -1]));
    }

    #[test]
    fn order_examples() {
        let chain = arc(RootedForest::chain(2));
        let zero = TlexElement::zero(&chain);
        assert!(zero.leq(&TlexElement::basis(&chain, VertexId(0))).unwrap());
        assert!(el(&chain, &[0, -7]).leq(&zero).unwrap());

        let star = arc(RootedForest::star(2));
        let g = el(&star, &[0, 1, -3]);
        assert!(!g.is_positive());
        assert_eq!(g.join(&TlexElement::zero(&star)).unwrap(), el(&star, &[0, 1, 0]));
        assert!(!TlexElement::zero(&star).is_positive());
    }

    #[test]
    fn inf_less_examples() {
        let chain = arc(RootedForest::chain(2));
        let (a, b) = (TlexElement::basis(&chain, VertexId(0)), TlexElement::basis(&chain, VertexId(1)));
        assert!(b.inf_less(&a).unwrap());
        assert!(!a.inf_less(&b).unwrap());
        assert!(TlexElement::zero(&chain).inf_less(&a).unwrap());
        // h must itself be positive (n = 0)
        assert!(!TlexElement::zero(&chain).inf_less(&TlexElement::zero(&chain)).unwrap());

        let two = arc(RootedForest::singletons(2));
        assert!(!el(&two, &[0, 1]).inf_less(&el(&two, &[1, 0])).unwrap());
    }

    #[test]
    fn infinitesimal_examples() {
        let chain = arc(RootedForest::chain(2));
        let g = el(&chain, &[0, 5]);
        assert!(g.is_infinitesimal());
        let w = g.infinitesimal_witness().unwrap();
        assert_eq!(w, el(&chain, &[1, 0]));
        assert!(g.inf_less(&w).unwrap());
        assert!(!el(&chain, &[1, 5]).is_infinitesimal());
        assert!(el(&chain, &[-2, 0]).infinitesimal_witness().is_none());
        assert!(TlexElement::zero(&chain).is_infinitesimal());
    }

    #[test]
    fn order_unit_examples() {
        let chain = arc(RootedForest::chain(2));
        let u = group_order_unit(&chain);
        assert_eq!(u.unit, el(&chain, &[1, 0]));
        assert!(!u.degenerate);
        let g = el(&chain, &[3, 100]);
        assert_eq!(order_unit_certificate(&g), BigInt::from(4));
        assert_eq!(is_group_order_unit(&u.unit, &[g]).unwrap(), Some(vec![BigInt::from(4)]));

        let two = arc(RootedForest::singletons(2));
        let u2 = group_order_unit(&two).unit;
        assert_eq!(u2, el(&two, &[1, 1]));
        assert_eq!(is_group_order_unit(&u2, &[el(&two, &[5, -2])]).unwrap(), Some(vec![BigInt::from(6)]));
        assert_eq!(
            is_group_order_unit(&u2, &[TlexElement::zero(&two)]).unwrap(),
            Some(vec![BigInt::from(1)])
        );
        // zero is not an order-unit of a nontrivial group
        assert_eq!(is_group_order_unit(&TlexElement::zero(&two), &[el(&two, &[1, 0])]).unwrap(), None);

        let empty = arc(RootedForest::empty());
        assert!(group_order_unit(&empty).degenerate);
    }

    #[test]
    fn random_element_examples() {
        let f = arc(RootedForest::star(3));
        assert!(random_element(&f, 42, 0).is_zero());
        assert_eq!(random_element(&f, 42, 5), random_element(&f, 42, 5));
        let e = random_element(&f, 42, 5);
        assert!(e.coords().iter().all(|c| c.abs() <= BigInt::from(5)));
    }

    #[test]
    fn json_round_trip_and_names() {
        let f = arc(RootedForest::star(2));
        let g = el(&f, &[3, -4, 12345678901234567890i128 as i64]);
        let text = serde_json::to_string(&g.to_json()).unwrap();
        let back = TlexElement::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, g);

        let json: ElementJson =
            serde_json::from_str(r#"{"forest":"chain2","coords":{"v0":"1","v1":"-99999999999999999999999"}}"#).unwrap();
        let h = TlexElement::from_json(&json).unwrap();
        assert_eq!(h.coords()[1].to_string(), "-99999999999999999999999");
        assert!(matches!(named_forest("tree7"), Err(TlexError::UnknownForestName(_))));
        let bad: ElementJson = serde_json::from_str(r#"{"forest":"chain2","coords":{"v0":"1"}}"#).unwrap();
        assert!(matches!(TlexElement::from_json(&bad), Err(TlexError::CoordinateDomain(_))));
    }

    #[test]
    fn rank_equals_vertex_count() {
        for f in [RootedForest::empty(), RootedForest::chain(4), RootedForest::star(3)] {
            let f = arc(f);
            assert_eq!(group_rank(&f), f.len());
            // every element is the integer combination of the basis it reads off
            let g = random_element(&f, 9, 20);
            let mut acc = TlexElement::zero(&f);
            for v in f.vertices() {
                acc = acc.add(&TlexElement::basis(&f, v).scale(g.coord(v))).unwrap();
            }
            assert_eq!(acc, g);
        }
    }
}
