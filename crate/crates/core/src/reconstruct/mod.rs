//! Recovering the rooted forest from an ℓ-group presented without it.
//!
//! The roots correspond to a maximal set `B0` of positive,
//! non-infinitesimal, indecomposable, pairwise disjoint elements. Each
//! chosen element `g` cuts out the ℓ-subgroup `{h : h << g}`, which is again
//! of the form `G(F')` for the forest of subtrees below that root, and the
//! procedure recurses there. The group is only ever touched through
//! [`LGroupOracle`], and only finitely many of its elements (a
//! [`CandidatePool`]) are searched.

pub mod pool;
pub mod scramble;

use thiserror::Error;

use crate::forest::RootedForest;
pub use pool::{build_pool, select_b0, CandidatePool, OrderProbe, LADDER_TOP, POOL_CAP};
pub use scramble::{scramble, HiddenScramble, LGroupOracle, PresentationJson, ScrambledPresentation, Shear, Tuple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("candidate pool at depth {depth} exceeds {cap} elements")]
    PoolOverflow { depth: usize, cap: usize },
    #[error("no element qualifies for the root set; the pool is too shallow")]
    EmptySelection,
    #[error("recovered {found} vertices but the presentation has dimension {expected}")]
    ReconstructionIncomplete { found: usize, expected: usize },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
}

/// Default starting depth of the pool ladder.
pub const DEFAULT_DEPTH: usize = 2;
/// Deepest pool the ladder will try.
pub const MAX_DEPTH: usize = 4;

/// Forest recovered from a pool of a fixed depth, without retries.
pub fn recover_at_depth(p: &ScrambledPresentation, depth: usize) -> Result<RootedForest, ReconstructError> {
    let ops = p.ops();
    if p.dimension == 0 {
        return Ok(RootedForest::empty());
    }
    let pool = build_pool(ops, &p.gens, depth)?;
    let probe = OrderProbe::new(ops, &pool.elements);
    let mut parent: Vec<Option<usize>> = Vec::new();
    let all: Vec<usize> = (0..pool.len()).collect();
    let top = pool::select_b0_in(&probe, ops, &all)?;
    // each entry carries the pool slice it was selected from; `<<` is
    // transitive, so a child's subgroup lies inside its parent's
    let all = std::rc::Rc::new(all);
    let mut pending: Vec<(usize, Option<usize>, std::rc::Rc<Vec<usize>>)> =
        top.into_iter().rev().map(|g| (g, None, all.clone())).collect();
    while let Some((g, up, within)) = pending.pop() {
        let me = parent.len();
        parent.push(up);
        if parent.len() > p.dimension {
            break;
        }
        let below: Vec<usize> = within.iter().copied().filter(|&h| probe.inf_less(h, g)).collect();
        let below = std::rc::Rc::new(below);
        match pool::select_b0_in(&probe, ops, &below) {
            Ok(kids) => pending.extend(kids.into_iter().rev().map(|k| (k, Some(me), below.clone()))),
            Err(ReconstructError::EmptySelection) => {}
            Err(e) => return Err(e),
        }
    }
    if parent.len() != p.dimension {
        return Err(ReconstructError::ReconstructionIncomplete { found: parent.len(), expected: p.dimension });
    }
    Ok(RootedForest::from_parent_indices(&parent))
}

/// Recovers the forest, starting at `depth` and moving along the depth
/// ladder: one level shallower on pool overflow, one level deeper (up to
/// [`MAX_DEPTH`]) when too few vertices were found. Each depth is tried at
/// most once.
pub fn recover_forest(p: &ScrambledPresentation, depth: usize) -> Result<RootedForest, ReconstructError> {
    let mut tried = [false; MAX_DEPTH + 1];
    let mut d = depth.clamp(1, MAX_DEPTH);
    loop {
        tried[d] = true;
        let err = match recover_at_depth(p, d) {
            Ok(f) => return Ok(f),
            Err(e) => e,
        };
        let next = match err {
            ReconstructError::PoolOverflow { .. } => d.checked_sub(1).filter(|&n| n >= 1),
            ReconstructError::ReconstructionIncomplete { .. } | ReconstructError::EmptySelection => {
                Some(d + 1).filter(|&n| n <= MAX_DEPTH)
            }
            ReconstructError::InvalidPresentation(_) => None,
        };
        match next {
            Some(n) if !tried[n] => d = n,
            _ => return Err(err),
        }
    }
}

/// Spot-checks the lattice-group laws on `trials` random triples built from
/// the generators through the presentation's own operations.
pub fn spot_check(p: &ScrambledPresentation, seed: u64, trials: usize) -> Result<(), ReconstructError> {
    spot_check_ops(p.ops(), &p.gens, seed, trials)
}

pub fn spot_check_ops(ops: &dyn LGroupOracle, gens: &[Tuple], seed: u64, trials: usize) -> Result<(), ReconstructError> {
    use rand::{Rng, SeedableRng};
    if gens.iter().any(|g| g.len() != ops.dimension()) {
        return Err(ReconstructError::InvalidPresentation("generator of the wrong length".into()));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let sample = |rng: &mut rand_chacha::ChaCha8Rng| {
        let mut x = ops.zero();
        for g in gens {
            let k = rng.gen_range(-3i32..=3);
            let term = if k < 0 { ops.neg(g) } else { g.clone() };
            for _ in 0..k.unsigned_abs() {
                x = ops.add(&x, &term);
            }
        }
        if rng.gen_bool(0.5) && !gens.is_empty() {
            let g = &gens[rng.gen_range(0..gens.len())];
            x = if rng.gen_bool(0.5) { ops.join(&x, g) } else { ops.meet(&x, g) };
        }
        x
    };
    let fail = |law: &str| Err(ReconstructError::InvalidPresentation(format!("{law} fails on a sampled triple")));
    for _ in 0..trials {
        let (a, b, c) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
        let eq = |x: &[num_bigint::BigInt], y: &[num_bigint::BigInt]| ops.equal(x, y);
        if !eq(&ops.add(&a, &b), &ops.add(&b, &a)) || !eq(&ops.add(&ops.add(&a, &b), &c), &ops.add(&a, &ops.add(&b, &c))) {
            return fail("additive group law");
        }
        if !eq(&ops.add(&a, &ops.neg(&a)), &ops.zero()) || !eq(&ops.add(&a, &ops.zero()), &a) {
            return fail("inverse law");
        }
        if !eq(&ops.join(&a, &b), &ops.join(&b, &a)) || !eq(&ops.meet(&a, &ops.join(&a, &b)), &a) {
            return fail("lattice law");
        }
        if !eq(&ops.add(&a, &ops.join(&b, &c)), &ops.join(&ops.add(&a, &b), &ops.add(&a, &c))) {
            return fail("distributivity of + over v");
        }
        if !eq(&ops.meet(&a, &ops.join(&b, &c)), &ops.join(&ops.meet(&a, &b), &ops.meet(&a, &c))) {
            return fail("lattice distributivity");
        }
    }
    Ok(())
}

pub fn canonical_string(p: &ScrambledPresentation, depth: usize) -> Result<String, ReconstructError> {
    Ok(recover_forest(p, depth)?.ahu_canonical())
}

pub fn decide_iso(a: &ScrambledPresentation, b: &ScrambledPresentation, depth: usize) -> Result<bool, ReconstructError> {
    Ok(canonical_string(a, depth)? == canonical_string(b, depth)?)
}
