//! Weighted abstract simplicial complexes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::complex::{GeometricComplex, Simplex};
use super::rational::RationalPoint;
use super::GeometryError;

pub type VertexSet = BTreeSet<String>;

/// Map from abstract vertices to their points.
pub type Realization = BTreeMap<String, RationalPoint>;

/// `(V, Σ, ω)`: named vertices in a fixed order, a subset-closed family of
/// nonempty vertex sets covering `V`, and weights `ω >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedComplex {
    vertices: Vec<String>,
    weights: BTreeMap<String, u64>,
    sets: BTreeSet<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedComplexJson {
    pub vertices: Vec<String>,
    pub weights: BTreeMap<String, u64>,
    pub sets: Vec<Vec<String>>,
}

fn subsets(s: &VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
    let items: Vec<&String> = s.iter().collect();
    let k = items.len();
    (1u64..(1u64 << k)).map(move |mask| (0..k).filter(|i| mask >> i & 1 == 1).map(|i| items[i].clone()).collect())
}

impl WeightedComplex {
    /// Builds the complex generated by `sets`; every vertex also gets its
    /// singleton set.
    pub fn new(vertices: Vec<String>, weights: BTreeMap<String, u64>, sets: impl IntoIterator<Item = VertexSet>) -> Result<Self, GeometryError> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(GeometryError::NameCollision(v.clone()));
            }
            match weights.get(v) {
                Some(&w) if w >= 1 => {}
                _ => return Err(GeometryError::BadWeight(v.clone())),
            }
        }
        if let Some(extra) = weights.keys().find(|k| !seen.contains(k)) {
            return Err(GeometryError::UnknownVertex(extra.clone()));
        }
        let mut closed = BTreeSet::new();
        for s in sets {
            if let Some(u) = s.iter().find(|u| !seen.contains(u)) {
                return Err(GeometryError::UnknownVertex(u.clone()));
            }
            if s.len() > 63 {
                return Err(GeometryError::SetTooLarge(s.len()));
            }
            if !closed.contains(&s) {
                closed.extend(subsets(&s));
            }
        }
        for v in &vertices {
            closed.insert(BTreeSet::from([v.clone()]));
        }
        Ok(Self { vertices, weights, sets: closed })
    }

    /// The full simplex on `names` with the given weights.
    pub fn simplex(names: &[&str], weights: &[u64]) -> Result<Self, GeometryError> {
        let vertices: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let w = vertices.iter().cloned().zip(weights.iter().copied()).collect();
        let all: VertexSet = vertices.iter().cloned().collect();
        Self::new(vertices, w, [all])
    }

    pub fn from_json(j: &WeightedComplexJson) -> Result<Self, GeometryError> {
        Self::new(j.vertices.clone(), j.weights.clone(), j.sets.iter().map(|s| s.iter().cloned().collect()))
    }

    /// Lists only the maximal sets.
    pub fn to_json(&self) -> WeightedComplexJson {
        WeightedComplexJson {
            vertices: self.vertices.clone(),
            weights: self.weights.clone(),
            sets: self.maximal_sets().into_iter().map(|s| s.iter().cloned().collect()).collect(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn weight(&self, v: &str) -> Option<u64> {
        self.weights.get(v).copied()
    }

    pub fn weights(&self) -> &BTreeMap<String, u64> {
        &self.weights
    }

    pub fn sets(&self) -> impl Iterator<Item = &VertexSet> {
        self.sets.iter()
    }

    pub fn contains_set(&self, s: &VertexSet) -> bool {
        self.sets.contains(s)
    }

    pub fn is_maximal(&self, s: &VertexSet) -> bool {
        self.sets.contains(s) && !self.sets.iter().any(|t| t.len() > s.len() && t.is_superset(s))
    }

    pub fn maximal_sets(&self) -> Vec<&VertexSet> {
        self.sets.iter().filter(|s| self.is_maximal(s)).collect()
    }

    /// Σ is subset-closed and covers exactly the vertex list.
    pub fn is_valid(&self) -> bool {
        let covered: BTreeSet<&String> = self.sets.iter().flatten().collect();
        let listed: BTreeSet<&String> = self.vertices.iter().collect();
        covered == listed
            && self.vertices.iter().all(|v| self.weights.get(v).is_some_and(|&w| w >= 1))
            && self.sets.iter().all(|s| subsets(s).all(|t| self.sets.contains(&t)))
    }

    /// Splits the edge `{v, w}` at a new vertex `a` of weight `ω(v) + ω(w)`:
    /// each set containing both `v` and `w` is replaced by its two halves
    /// with `a` in place of `w`, respectively `v`.
    pub fn binary_subdivision(&self, v: &str, w: &str, a: &str) -> Result<Self, GeometryError> {
        let edge: VertexSet = [v.to_string(), w.to_string()].into();
        if edge.len() != 2 || !self.sets.contains(&edge) {
            return Err(GeometryError::EdgeNotPresent(v.to_string(), w.to_string()));
        }
        if self.weights.contains_key(a) {
            return Err(GeometryError::NameCollision(a.to_string()));
        }
        let wa = self.weights[v].checked_add(self.weights[w]).ok_or(GeometryError::WeightOverflow)?;
        let mut sets = BTreeSet::new();
        for s in &self.sets {
            if !s.is_superset(&edge) {
                sets.insert(s.clone());
                continue;
            }
            for drop in [w, v] {
                let mut half = s.clone();
                half.remove(drop);
                half.insert(a.to_string());
                sets.extend(subsets(&half));
            }
        }
        let mut vertices = self.vertices.clone();
        vertices.push(a.to_string());
        let mut weights = self.weights.clone();
        weights.insert(a.to_string(), wa);
        Ok(Self { vertices, weights, sets })
    }

    /// Removes a maximal set; vertices left in no set are dropped.
    pub fn delete_maximal(&self, m: &VertexSet) -> Result<Self, GeometryError> {
        if !self.sets.contains(m) {
            return Err(GeometryError::NotPresent(format_set(m)));
        }
        if !self.is_maximal(m) {
            return Err(GeometryError::NotMaximal(format_set(m)));
        }
        let mut sets = self.sets.clone();
        sets.remove(m);
        let alive: BTreeSet<&String> = sets.iter().flatten().collect();
        let vertices: Vec<String> = self.vertices.iter().filter(|v| alive.contains(v)).cloned().collect();
        let weights = self.weights.iter().filter(|(k, _)| alive.contains(k)).map(|(k, w)| (k.clone(), *w)).collect();
        Ok(Self { vertices, weights, sets })
    }

    /// `v_i ↦ e_i / ω(v_i)` in `[0,1]^n`, with the simplexes of Σ carried
    /// over.
    pub fn canonical_realization(&self) -> (GeometricComplex, Realization) {
        let n = self.vertices.len();
        let iota: Realization = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), RationalPoint::scaled_basis(n, i, self.weights[v])))
            .collect();
        let delta = self.realize_with(&iota).expect("standard basis points are affinely independent");
        (delta, iota)
    }

    /// The image of Σ under an arbitrary vertex placement.
    pub fn realize_with(&self, iota: &Realization) -> Result<GeometricComplex, GeometryError> {
        let ambient = iota.values().next().map_or(self.vertices.len(), |p| p.dim());
        let mut simplexes = Vec::with_capacity(self.sets.len());
        for s in &self.sets {
            let pts = s
                .iter()
                .map(|v| iota.get(v).cloned().ok_or_else(|| GeometryError::UnknownVertex(v.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            simplexes.push(Simplex::new(pts)?);
        }
        GeometricComplex::from_simplexes(ambient, simplexes)
    }
}

pub(crate) fn format_set(s: &VertexSet) -> String {
    format!("{{{}}}", s.iter().cloned().collect::<Vec<_>>().join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(names: &[&str]) -> VertexSet {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn family(sets: &[&[&str]]) -> BTreeSet<VertexSet> {
        sets.iter().map(|s| set(s)).collect()
    }

    #[test]
    fn subdivide_edge() {
        let w = WeightedComplex::simplex(&["v1", "v2"], &[1, 1]).unwrap();
        let s = w.binary_subdivision("v1", "v2", "a").unwrap();
        assert_eq!(s.sets, family(&[&["v1"], &["v2"], &["a"], &["v1", "a"], &["a", "v2"]]));
        assert_eq!(s.weight("a"), Some(2));
        assert!(s.is_valid());
    }

    #[test]
    fn subdivide_triangle() {
        let w = WeightedComplex::simplex(&["v", "w", "u"], &[1, 2, 1]).unwrap();
        let s = w.binary_subdivision("v", "w", "a").unwrap();
        let max: BTreeSet<VertexSet> = s.maximal_sets().into_iter().cloned().collect();
        assert_eq!(max, family(&[&["v", "a", "u"], &["a", "w", "u"]]));
        assert_eq!(s.weight("a"), Some(3));
        assert!(!s.contains_set(&set(&["v", "w"])));
        assert!(s.contains_set(&set(&["v", "u"])));
    }

    #[test]
    fn subdivision_errors() {
        let w = WeightedComplex::new(
            vec!["x".into(), "y".into(), "z".into()],
            [("x".into(), 1), ("y".into(), 1), ("z".into(), 1)].into(),
            [set(&["x", "y"])],
        )
        .unwrap();
        assert_eq!(w.binary_subdivision("x", "z", "a"), Err(GeometryError::EdgeNotPresent("x".into(), "z".into())));
        assert_eq!(w.binary_subdivision("x", "x", "a"), Err(GeometryError::EdgeNotPresent("x".into(), "x".into())));
        assert_eq!(w.binary_subdivision("x", "y", "z"), Err(GeometryError::NameCollision("z".into())));
    }

    #[test]
    fn deletions() {
        let w = WeightedComplex::simplex(&["v1", "v2"], &[1, 1]).unwrap();
        let d = w.delete_maximal(&set(&["v1", "v2"])).unwrap();
        assert_eq!(d.sets, family(&[&["v1"], &["v2"]]));
        let d = d.delete_maximal(&set(&["v2"])).unwrap();
        assert_eq!(d.vertices(), ["v1".to_string()]);
        assert_eq!(d.weight("v2"), None);
        assert!(d.is_valid());
        assert_eq!(w.delete_maximal(&set(&["v1"])), Err(GeometryError::NotMaximal("{v1}".into())));
        assert_eq!(w.delete_maximal(&set(&["q"])), Err(GeometryError::NotPresent("{q}".into())));
    }

    #[test]
    fn realization() {
        let w = WeightedComplex::simplex(&["v1", "v2"], &[1, 2]).unwrap();
        let (delta, iota) = w.canonical_realization();
        assert_eq!(iota["v1"], RationalPoint::from_fractions(&[(1, 1), (0, 1)]).unwrap());
        assert_eq!(iota["v2"], RationalPoint::from_fractions(&[(0, 1), (1, 2)]).unwrap());
        assert_eq!(iota["v1"].den(), 1.into());
        assert_eq!(iota["v2"].den(), 2.into());
        assert_eq!(delta.maximal().len(), 1);
        assert_eq!(delta.maximal()[0].dim(), 1);

        let unit = WeightedComplex::simplex(&["a", "b", "c"], &[1, 1, 1]).unwrap();
        let (_, iota) = unit.canonical_realization();
        assert_eq!(iota["c"], RationalPoint::scaled_basis(3, 2, 1));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"vertices":["v1","v2","v3"],"weights":{"v1":1,"v2":2,"v3":1},"sets":[["v1","v2"],["v3"]]}"#;
        let j: WeightedComplexJson = serde_json::from_str(text).unwrap();
        let w = WeightedComplex::from_json(&j).unwrap();
        assert_eq!(w.sets().count(), 4);
        assert_eq!(WeightedComplex::from_json(&w.to_json()).unwrap(), w);
        let bad: WeightedComplexJson = serde_json::from_str(r#"{"vertices":["v"],"weights":{"v":0},"sets":[]}"#).unwrap();
        assert_eq!(WeightedComplex::from_json(&bad), Err(GeometryError::BadWeight("v".into())));
        let bad: WeightedComplexJson = serde_json::from_str(r#"{"vertices":["v"],"weights":{"v":1},"sets":[["w"]]}"#).unwrap();
        assert_eq!(WeightedComplex::from_json(&bad), Err(GeometryError::UnknownVertex("w".into())));
    }
}
