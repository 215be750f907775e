//! Finite rational simplicial complexes and blow-ups.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::linalg;
use super::rational::RationalPoint;
use super::GeometryError;

/// Convex hull of finitely many affinely independent points, stored as its
/// sorted vertex list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<RationalPoint>", into = "Vec<RationalPoint>")]
pub struct Simplex(Vec<RationalPoint>);

impl Simplex {
    pub fn new(mut vertices: Vec<RationalPoint>) -> Result<Self, GeometryError> {
        vertices.sort();
        vertices.dedup();
        let Some(first) = vertices.first() else {
            return Err(GeometryError::EmptySimplex);
        };
        let n = first.dim();
        if let Some(v) = vertices.iter().find(|v| v.dim() != n) {
            return Err(GeometryError::DimensionMismatch { expected: n, got: v.dim() });
        }
        let s = Self(vertices);
        if s.affine_dimension() + 1 != s.0.len() {
            return Err(GeometryError::NotAffinelyIndependent(s.to_string()));
        }
        Ok(s)
    }

    pub fn point(p: RationalPoint) -> Self {
        Self(vec![p])
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.0[0].dim()
    }

    fn refs(&self) -> Vec<&[BigRational]> {
        self.0.iter().map(|v| v.coords()).collect()
    }

    fn affine_dimension(&self) -> usize {
        linalg::affine_dimension(&self.refs()).unwrap_or(0)
    }

    /// Barycentric coordinates of `p`, if `p` lies on the affine hull.
    pub fn barycentric(&self, p: &RationalPoint) -> Option<Vec<BigRational>> {
        if p.dim() != self.ambient_dim() {
            return None;
        }
        linalg::barycentric(&self.refs(), p.coords())
    }

    /// `p` lies in the closed simplex.
    pub fn contains_point(&self, p: &RationalPoint) -> bool {
        self.barycentric(p).is_some_and(|l| l.iter().all(|x| !x.is_negative()))
    }

    /// `p` lies in the relative interior.
    pub fn relint_contains(&self, p: &RationalPoint) -> bool {
        self.barycentric(p).is_some_and(|l| l.iter().all(|x| x.is_positive()))
    }

    /// Every vertex of `other` lies in this closed simplex.
    pub fn closure_contains(&self, other: &Simplex) -> bool {
        other.0.iter().all(|v| self.contains_point(v))
    }

    /// All nonempty faces, this simplex included.
    pub fn faces(&self) -> Vec<Simplex> {
        let k = self.0.len();
        (1u64..(1u64 << k))
            .map(|mask| Simplex((0..k).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i].clone()).collect()))
            .collect()
    }

    /// Do the relative interiors meet? Decided exactly as the feasibility of
    /// `sum l_i p_i = sum m_j q_j`, `sum l_i = sum m_j` with all `l_i, m_j >= 1`.
    pub fn relint_meets(&self, other: &Simplex) -> bool {
        if self.ambient_dim() != other.ambient_dim() {
            return false;
        }
        let n = self.ambient_dim();
        let (p, q) = (&self.0, &other.0);
        // substituting l = 1 + x, m = 1 + y with x, y >= 0
        let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(n + 1);
        let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
        for c in 0..n {
            let mut row: Vec<BigRational> = p.iter().map(|v| v.coords()[c].clone()).collect();
            row.extend(q.iter().map(|v| -v.coords()[c].clone()));
            let rhs: BigRational = q.iter().map(|v| v.coords()[c].clone()).sum::<BigRational>()
                - p.iter().map(|v| v.coords()[c].clone()).sum::<BigRational>();
            a.push(row);
            b.push(rhs);
        }
        let one = BigRational::from_integer(1.into());
        let mut row = vec![one.clone(); p.len()];
        row.extend(std::iter::repeat_n(-one, q.len()));
        a.push(row);
        b.push(BigRational::from_integer((q.len() as i64 - p.len() as i64).into()));
        linalg::feasible_nonneg(&a, &b)
    }
}

impl TryFrom<Vec<RationalPoint>> for Simplex {
    type Error = GeometryError;

    fn try_from(v: Vec<RationalPoint>) -> Result<Self, GeometryError> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<RationalPoint> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl std::fmt::Display for Simplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "conv[{}]", parts.join(", "))
    }
}

/// A finite set of simplexes in `[0,1]^n` containing every face of each
/// member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometricComplex {
    pub ambient_dim: usize,
    simplexes: BTreeSet<Simplex>,
}

impl GeometricComplex {
    pub fn empty(ambient_dim: usize) -> Self {
        Self { ambient_dim, simplexes: BTreeSet::new() }
    }

    /// The complex generated by `simplexes` and all their faces.
    pub fn from_simplexes(ambient_dim: usize, simplexes: impl IntoIterator<Item = Simplex>) -> Result<Self, GeometryError> {
        let mut out = BTreeSet::new();
        for s in simplexes {
            if s.ambient_dim() != ambient_dim {
                return Err(GeometryError::DimensionMismatch { expected: ambient_dim, got: s.ambient_dim() });
            }
            if out.contains(&s) {
                continue;
            }
            out.extend(s.faces());
        }
        Ok(Self { ambient_dim, simplexes: out })
    }

    pub fn simplexes(&self) -> impl Iterator<Item = &Simplex> {
        self.simplexes.iter()
    }

    pub fn len(&self) -> usize {
        self.simplexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplexes.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplexes.contains(s)
    }

    pub fn vertices(&self) -> BTreeSet<RationalPoint> {
        self.simplexes.iter().filter(|s| s.dim() == 0).map(|s| s.0[0].clone()).collect()
    }

    /// Simplexes that are not a proper face of another member.
    pub fn maximal(&self) -> Vec<&Simplex> {
        self.simplexes
            .iter()
            .filter(|s| !self.simplexes.iter().any(|t| t.0.len() > s.0.len() && s.0.iter().all(|v| t.0.contains(v))))
            .collect()
    }

    /// Every facet of every member is a member.
    pub fn is_closed(&self) -> bool {
        self.simplexes.iter().all(|s| {
            s.0.len() == 1
                || (0..s.0.len()).all(|skip| {
                    let facet = Simplex(s.0.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, v)| v.clone()).collect());
                    self.simplexes.contains(&facet)
                })
        })
    }

    /// `p` lies in the support `|K|`.
    pub fn support_contains(&self, p: &RationalPoint) -> bool {
        self.maximal().iter().any(|s| s.contains_point(p))
    }

    /// Each member of `self` lies inside a single member of `other`; this
    /// implies `|self| ⊆ |other|`.
    pub fn refines_into(&self, other: &GeometricComplex) -> bool {
        let targets = other.maximal();
        self.maximal().iter().all(|s| targets.iter().any(|t| t.closure_contains(s)))
    }

    /// Removes a single simplex, leaving its faces in place.
    pub fn remove(&mut self, s: &Simplex) -> bool {
        self.simplexes.remove(s)
    }

    /// Replaces each member `T` containing `p` by the cones
    /// `conv(F ∪ {p})` over the faces `F` of `T` avoiding `p`.
    pub fn blow_up(&self, p: &RationalPoint) -> Result<GeometricComplex, GeometryError> {
        if p.dim() != self.ambient_dim {
            return Err(GeometryError::DimensionMismatch { expected: self.ambient_dim, got: p.dim() });
        }
        if !self.support_contains(p) {
            return Err(GeometryError::PointOutsideSupport(p.to_string()));
        }
        let mut out = BTreeSet::new();
        for t in &self.simplexes {
            if !t.contains_point(p) {
                out.insert(t.clone());
                continue;
            }
            out.insert(Simplex::point(p.clone()));
            for f in t.faces() {
                if f.contains_point(p) {
                    continue;
                }
                // p ∈ T off the face F means p is off aff(F), so the cone is
                // again a simplex
                let mut v = f.0;
                v.push(p.clone());
                v.sort();
                out.insert(Simplex(v));
            }
        }
        Ok(GeometricComplex { ambient_dim: self.ambient_dim, simplexes: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(p: &[(i64, i64)]) -> RationalPoint {
        RationalPoint::from_fractions(p).unwrap()
    }

    fn simplex(vs: &[&[(i64, i64)]]) -> Simplex {
        Simplex::new(vs.iter().map(|v| pt(v)).collect()).unwrap()
    }

    #[test]
    fn affine_independence() {
        assert!(matches!(
            Simplex::new(vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 2), (1, 2)]), pt(&[(1, 1), (1, 1)])]),
            Err(GeometryError::NotAffinelyIndependent(_))
        ));
        assert!(matches!(Simplex::new(vec![]), Err(GeometryError::EmptySimplex)));
        assert_eq!(simplex(&[&[(0, 1)], &[(1, 1)], &[(0, 1)]]).dim(), 1);
    }

    #[test]
    fn blow_up_segment() {
        let k = GeometricComplex::from_simplexes(1, [simplex(&[&[(0, 1)], &[(1, 1)]])]).unwrap();
        assert_eq!(k.len(), 3);
        let kp = k.blow_up(&pt(&[(1, 2)])).unwrap();
        let expect = GeometricComplex::from_simplexes(
            1,
            [simplex(&[&[(0, 1)], &[(1, 2)]]), simplex(&[&[(1, 2)], &[(1, 1)]])],
        )
        .unwrap();
        assert_eq!(kp, expect);
        assert_eq!(kp.len(), 5);
        assert!(kp.is_closed());
    }

    #[test]
    fn blow_up_at_vertex_is_identity() {
        let k = GeometricComplex::from_simplexes(2, [simplex(&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)], &[(0, 1), (1, 1)]])]).unwrap();
        assert_eq!(k.blow_up(&pt(&[(1, 1), (0, 1)])).unwrap(), k);
    }

    #[test]
    fn blow_up_triangle_at_edge_midpoint() {
        let k = GeometricComplex::from_simplexes(2, [simplex(&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)], &[(0, 1), (1, 1)]])]).unwrap();
        let m = pt(&[(1, 2), (1, 2)]);
        let kp = k.blow_up(&m).unwrap();
        let max: Vec<&Simplex> = kp.maximal();
        assert_eq!(max.len(), 2);
        assert!(max.iter().all(|s| s.dim() == 2 && s.vertices().contains(&m)));
        assert!(kp.contains(&simplex(&[&[(0, 1), (0, 1)], &[(1, 2), (1, 2)]])));
        assert!(kp.is_closed());
        assert!(kp.refines_into(&k));
    }

    #[test]
    fn blow_up_outside_support() {
        let k = GeometricComplex::from_simplexes(1, [simplex(&[&[(0, 1)], &[(1, 2)]])]).unwrap();
        assert!(matches!(k.blow_up(&pt(&[(3, 4)])), Err(GeometryError::PointOutsideSupport(_))));
    }

    #[test]
    fn relative_interiors() {
        let edge = simplex(&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)]]);
        let tri = simplex(&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)], &[(1, 1), (1, 1)]]);
        let diag = simplex(&[&[(0, 1), (0, 1)], &[(1, 1), (1, 1)]]);
        let other = simplex(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]]);
        let origin = Simplex::point(pt(&[(0, 1), (0, 1)]));
        assert!(!edge.relint_meets(&tri));
        assert!(!diag.relint_meets(&tri));
        assert!(!origin.relint_meets(&edge));
        assert!(origin.relint_meets(&origin));
        assert!(diag.relint_meets(&other));
        let inner = simplex(&[&[(1, 4), (1, 8)], &[(3, 4), (1, 4)]]);
        assert!(inner.relint_meets(&tri));
    }
}
