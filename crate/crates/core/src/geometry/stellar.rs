//! Finite stellar scripts, applied to an abstract complex and its
//! realization in lockstep.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::complex::{GeometricComplex, Simplex};
use super::rational::{farey_mediant, RationalPoint};
use super::weighted::{Realization, VertexSet, WeightedComplex, WeightedComplexJson};
use super::GeometryError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum StellarOp {
    Subdivide { edge: [String; 2], new: String },
    Delete { set: Vec<String> },
    Identity,
}

pub type StellarScript = Vec<StellarOp>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {source}")]
pub struct StellarError {
    pub step: usize,
    pub source: GeometryError,
}

/// One term `(W_i, Δ_i, ι_i)` of the sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StellarStep {
    pub complex: WeightedComplex,
    pub geometry: GeometricComplex,
    pub realization: Realization,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub complex: WeightedComplexJson,
    pub ambient_dim: usize,
    /// Maximal simplexes of Δ.
    pub simplexes: Vec<Simplex>,
    pub realization: BTreeMap<String, RationalPoint>,
}

impl StellarStep {
    pub fn initial(w: WeightedComplex) -> Self {
        let (geometry, realization) = w.canonical_realization();
        Self { complex: w, geometry, realization }
    }

    pub fn apply(&self, op: &StellarOp) -> Result<StellarStep, GeometryError> {
        match op {
            StellarOp::Identity => Ok(self.clone()),
            StellarOp::Subdivide { edge: [v, w], new } => {
                let complex = self.complex.binary_subdivision(v, w, new)?;
                let e = farey_mediant(&self.realization[v], &self.realization[w])?;
                let geometry = self.geometry.blow_up(&e)?;
                let mut realization = self.realization.clone();
                realization.insert(new.clone(), e);
                Ok(StellarStep { complex, geometry, realization })
            }
            StellarOp::Delete { set } => {
                let m: VertexSet = set.iter().cloned().collect();
                let complex = self.complex.delete_maximal(&m)?;
                let cell = Simplex::new(m.iter().map(|v| self.realization[v].clone()).collect())?;
                let mut geometry = self.geometry.clone();
                geometry.remove(&cell);
                let realization =
                    self.realization.iter().filter(|(k, _)| complex.weight(k).is_some()).map(|(k, p)| (k.clone(), p.clone())).collect();
                Ok(StellarStep { complex, geometry, realization })
            }
        }
    }

    pub fn to_json(&self) -> StepJson {
        StepJson {
            complex: self.complex.to_json(),
            ambient_dim: self.geometry.ambient_dim,
            simplexes: self.geometry.maximal().into_iter().cloned().collect(),
            realization: self.realization.clone(),
        }
    }

    pub fn from_json(j: &StepJson) -> Result<Self, GeometryError> {
        Ok(Self {
            complex: WeightedComplex::from_json(&j.complex)?,
            geometry: GeometricComplex::from_simplexes(j.ambient_dim, j.simplexes.iter().cloned())?,
            realization: j.realization.clone(),
        })
    }

    /// `ω(v) = den(ι(v))` for every vertex.
    pub fn weights_match_denominators(&self) -> bool {
        self.complex.vertices().iter().all(|v| {
            let w = self.complex.weight(v).expect("listed vertex has a weight");
            self.realization.get(v).is_some_and(|p| p.den() == w.into())
        })
    }
}

/// Realizes `w0` canonically and runs the script, returning every
/// intermediate term, the initial one included.
pub fn apply_stellar_script(w0: &WeightedComplex, script: &[StellarOp]) -> Result<Vec<StellarStep>, StellarError> {
    let mut steps = vec![StellarStep::initial(w0.clone())];
    for (i, op) in script.iter().enumerate() {
        let next = steps[i].apply(op).map_err(|source| StellarError { step: i, source })?;
        steps.push(next);
    }
    Ok(steps)
}

/// Random complex on `1..=max_vertices` vertices `v1, v2, ...` with weights
/// in `1..=3` and a few random maximal sets.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize) -> WeightedComplex {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let weights = vertices.iter().map(|v| (v.clone(), rng.gen_range(1..=3))).collect();
    let sets: Vec<VertexSet> = (0..rng.gen_range(1..=3))
        .map(|_| vertices.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect::<VertexSet>())
        .filter(|s| !s.is_empty())
        .collect();
    WeightedComplex::new(vertices, weights, sets).expect("generated complex is valid")
}

/// A legal script of exactly `len` steps: subdivisions of random edges,
/// deletions of random maximal sets and identities. New vertices are named
/// `a1, a2, ...`.
pub fn random_script<R: Rng + ?Sized>(rng: &mut R, w0: &WeightedComplex, len: usize) -> StellarScript {
    let mut w = w0.clone();
    let mut script = Vec::with_capacity(len);
    let mut fresh = 0;
    for _ in 0..len {
        let edges: Vec<&VertexSet> = w.sets().filter(|s| s.len() == 2).collect();
        let roll = rng.gen_range(0..10);
        let op = if roll < 5 && !edges.is_empty() {
            let e: Vec<String> = edges[rng.gen_range(0..edges.len())].iter().cloned().collect();
            fresh += 1;
            StellarOp::Subdivide { edge: [e[0].clone(), e[1].clone()], new: format!("a{fresh}") }
        } else if roll < 8 && w.vertices().len() > 1 {
            let max = w.maximal_sets();
            StellarOp::Delete { set: max[rng.gen_range(0..max.len())].iter().cloned().collect() }
        } else {
            StellarOp::Identity
        };
        w = match &op {
            StellarOp::Subdivide { edge: [a, b], new } => w.binary_subdivision(a, b, new),
            StellarOp::Delete { set } => w.delete_maximal(&set.iter().cloned().collect()),
            StellarOp::Identity => Ok(w.clone()),
        }
        .expect("generated step is legal");
        script.push(op);
    }
    script
}

/// Checks the correspondence between the abstract and geometric sides of a
/// sequence: `ω(v) = den(ι(v))` throughout, each `Δ_{i+1}` lies inside
/// `Δ_i`, and each `Δ_i` is exactly the image of `W_i` under `ι_i`.
pub fn check_correspondence(steps: &[StellarStep]) -> Result<(), String> {
    for (i, s) in steps.iter().enumerate() {
        if !s.weights_match_denominators() {
            return Err(format!("step {i}: weight differs from denominator"));
        }
        let realized = s.complex.realize_with(&s.realization).map_err(|e| format!("step {i}: {e}"))?;
        if realized != s.geometry {
            return Err(format!("step {i}: geometric complex differs from the realized abstract complex"));
        }
        if i > 0 && !s.geometry.refines_into(&steps[i - 1].geometry) {
            return Err(format!("step {i}: support is not nested in the previous one"));
        }
    }
    Ok(())
}
