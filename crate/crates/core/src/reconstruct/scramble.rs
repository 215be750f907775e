//! Opaque presentations of `G(F)` for the reconstruction harness.
//!
//! A presentation hands out tuples of integers and the six ℓ-group
//! operations on them, but not the forest. The harness builds one by
//! transporting `G(F)` through a hidden automorphism of `Z^n`: shears that
//! add a multiple of an ancestor's coordinate to a descendant's, followed by
//! a permutation of coordinates. Both kinds of map preserve the
//! tree-lexicographic order, so the transported operations are again those of
//! an ℓ-group isomorphic to `G(F)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ReconstructError;
use crate::forest::{ForestJson, RootedForest, VertexId};
use crate::tlex::lattice_coords;

pub type Tuple = Vec<BigInt>;

/// The operations of an ℓ-group on opaque integer tuples.
pub trait LGroupOracle: Send + Sync {
    fn dimension(&self) -> usize;
    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Tuple;
    fn neg(&self, a: &[BigInt]) -> Tuple;
    fn zero(&self) -> Tuple {
        vec![BigInt::zero(); self.dimension()]
    }
    fn join(&self, a: &[BigInt], b: &[BigInt]) -> Tuple;
    fn meet(&self, a: &[BigInt], b: &[BigInt]) -> Tuple;
    fn equal(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        a == b
    }
}

/// One shear: `x[descendant] += factor * x[ancestor]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shear {
    pub ancestor: VertexId,
    pub descendant: VertexId,
    pub factor: BigInt,
}

/// Shears followed by a coordinate permutation: vertex `v` ends up at
/// position `placement[v]`.
#[derive(Debug, Clone)]
pub struct HiddenScramble {
    forest: Arc<RootedForest>,
    placement: Vec<usize>,
    shears: Vec<Shear>,
}

impl HiddenScramble {
    pub fn new(forest: Arc<RootedForest>, placement: Vec<usize>, shears: Vec<Shear>) -> Result<Self, ReconstructError> {
        let n = forest.len();
        let mut seen = vec![false; n];
        for &p in &placement {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(ReconstructError::InvalidPresentation("placement is not a permutation".into()));
            }
        }
        if placement.len() != n {
            return Err(ReconstructError::InvalidPresentation("placement length differs from forest size".into()));
        }
        for s in &shears {
            if s.ancestor.0 >= n || s.descendant.0 >= n || !forest.is_strict_ancestor(s.ancestor, s.descendant) {
                return Err(ReconstructError::InvalidPresentation(
                    "shear must add an ancestor coordinate to a descendant coordinate".into(),
                ));
            }
        }
        Ok(Self { forest, placement, shears })
    }

    pub fn forest(&self) -> &Arc<RootedForest> {
        &self.forest
    }

    pub fn placement(&self) -> &[usize] {
        &self.placement
    }

    pub fn shears(&self) -> &[Shear] {
        &self.shears
    }

    /// Forest coordinates to presented tuple.
    pub fn apply(&self, x: &[BigInt]) -> Tuple {
        let mut x = x.to_vec();
        for s in &self.shears {
            let add = &s.factor * &x[s.ancestor.0];
            x[s.descendant.0] += add;
        }
        let mut y = vec![BigInt::zero(); x.len()];
        for (v, value) in x.into_iter().enumerate() {
            y[self.placement[v]] = value;
        }
        y
    }

    /// Presented tuple back to forest coordinates.
    pub fn invert(&self, y: &[BigInt]) -> Tuple {
        let mut x: Tuple = self.placement.iter().map(|&p| y[p].clone()).collect();
        for s in self.shears.iter().rev() {
            let sub = &s.factor * &x[s.ancestor.0];
            x[s.descendant.0] -= sub;
        }
        x
    }
}

impl LGroupOracle for HiddenScramble {
    fn dimension(&self) -> usize {
        self.forest.len()
    }

    // the map is linear, so the group operations are coordinatewise
    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Tuple {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn neg(&self, a: &[BigInt]) -> Tuple {
        a.iter().map(|x| -x).collect()
    }

    fn join(&self, a: &[BigInt], b: &[BigInt]) -> Tuple {
        self.apply(&lattice_coords(&self.forest, &self.invert(a), &self.invert(b), true))
    }

    fn meet(&self, a: &[BigInt], b: &[BigInt]) -> Tuple {
        self.apply(&lattice_coords(&self.forest, &self.invert(a), &self.invert(b), false))
    }
}

/// An ℓ-group given only through its operations and a generating set.
#[derive(Debug, Clone)]
pub struct ScrambledPresentation {
    pub dimension: usize,
    pub gens: Vec<Tuple>,
    hidden: HiddenScramble,
}

impl ScrambledPresentation {
    pub fn new(gens: Vec<Tuple>, hidden: HiddenScramble) -> Result<Self, ReconstructError> {
        let dimension = hidden.dimension();
        if gens.iter().any(|g| g.len() != dimension) {
            return Err(ReconstructError::InvalidPresentation("generator length differs from dimension".into()));
        }
        Ok(Self { dimension, gens, hidden })
    }

    /// The operations, without access to the forest.
    pub fn ops(&self) -> &dyn LGroupOracle {
        &self.hidden
    }

    /// Harness-only view of the hidden structure.
    pub fn hidden(&self) -> &HiddenScramble {
        &self.hidden
    }

    pub fn to_json(&self) -> PresentationJson {
        let f = &self.hidden.forest;
        PresentationJson {
            dimension: self.dimension,
            gens: self.gens.iter().map(|g| g.iter().map(|c| c.to_string()).collect()).collect(),
            hidden: HiddenJson {
                forest: f.to_json(),
                placement: self.hidden.placement.clone(),
                shears: self
                    .hidden
                    .shears
                    .iter()
                    .map(|s| ShearJson {
                        ancestor: f.name(s.ancestor).to_owned(),
                        descendant: f.name(s.descendant).to_owned(),
                        factor: s.factor.to_string(),
                    })
                    .collect(),
            },
        }
    }

    pub fn from_json(json: &PresentationJson) -> Result<Self, ReconstructError> {
        let bad = |m: String| ReconstructError::InvalidPresentation(m);
        let forest = Arc::new(RootedForest::validate(&json.hidden.forest).map_err(|e| bad(e.to_string()))?);
        let int = |s: &str| s.trim().parse::<BigInt>().map_err(|_| bad(format!("invalid integer `{s}`")));
        let shears = json
            .hidden
            .shears
            .iter()
            .map(|s| {
                Ok(Shear {
                    ancestor: forest.lookup(&s.ancestor).map_err(|e| bad(e.to_string()))?,
                    descendant: forest.lookup(&s.descendant).map_err(|e| bad(e.to_string()))?,
                    factor: int(&s.factor)?,
                })
            })
            .collect::<Result<_, ReconstructError>>()?;
        let hidden = HiddenScramble::new(forest, json.hidden.placement.clone(), shears)?;
        if json.dimension != hidden.dimension() {
            return Err(bad(format!(
                "dimension {} but hidden forest has {} vertices",
                json.dimension,
                hidden.dimension()
            )));
        }
        let gens = json
            .gens
            .iter()
            .map(|g| g.iter().map(|c| int(c)).collect::<Result<Tuple, _>>())
            .collect::<Result<_, _>>()?;
        Self::new(gens, hidden)
    }
}

/// Presentation file. The operations are those of `G(hidden.forest)`
/// transported through the hidden map; the reconstruction never reads it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationJson {
    pub dimension: usize,
    pub gens: Vec<Vec<String>>,
    pub hidden: HiddenJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HiddenJson {
    pub forest: ForestJson,
    pub placement: Vec<usize>,
    #[serde(default)]
    pub shears: Vec<ShearJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShearJson {
    pub ancestor: String,
    pub descendant: String,
    pub factor: String,
}

/// Largest absolute shear factor drawn by [`scramble`].
pub const SHEAR_FACTOR_BOUND: i64 = 3;

/// Presents `G(F)` through a random permutation and `shear_count` random
/// ancestor-to-descendant shears. Forests without an ancestor/descendant
/// pair get the permutation only. Generators are the images of all basis
/// elements, listed in random order.
pub fn scramble(forest: &Arc<RootedForest>, seed: u64, shear_count: usize) -> ScrambledPresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = forest.len();
    let mut placement: Vec<usize> = (0..n).collect();
    placement.shuffle(&mut rng);

    let pairs: Vec<(VertexId, VertexId)> = forest
        .vertices()
        .flat_map(|d| {
            let mut anc = Vec::new();
            let mut cur = d;
            while let Some(p) = forest.parent(cur) {
                anc.push((p, d));
                cur = p;
            }
            anc
        })
        .collect();
    let shears = if pairs.is_empty() {
        Vec::new()
    } else {
        (0..shear_count)
            .map(|_| {
                let (ancestor, descendant) = pairs[rng.gen_range(0..pairs.len())];
                let mut k = 0;
                while k == 0 {
                    k = rng.gen_range(-SHEAR_FACTOR_BOUND..=SHEAR_FACTOR_BOUND);
                }
                Shear { ancestor, descendant, factor: BigInt::from(k) }
            })
            .collect()
    };
    scramble_with(forest, placement, shears, &mut rng)
}

/// [`scramble`] with an explicit map; generator order is still shuffled by
/// `rng`.
pub fn scramble_with<R: Rng + ?Sized>(
    forest: &Arc<RootedForest>,
    placement: Vec<usize>,
    shears: Vec<Shear>,
    rng: &mut R,
) -> ScrambledPresentation {
    let hidden = HiddenScramble::new(forest.clone(), placement, shears).expect("valid scramble");
    let mut gens: Vec<Tuple> = forest
        .vertices()
        .map(|w| {
            let mut b = vec![BigInt::zero(); forest.len()];
            b[w.0] = BigInt::from(1);
            hidden.apply(&b)
        })
        .collect();
    gens.shuffle(rng);
    ScrambledPresentation::new(gens, hidden).expect("dimensions agree")
}
