//! Finite candidate pools and the black-box order tests run on them.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;

use super::scramble::{LGroupOracle, Tuple};
use super::ReconstructError;

/// Pools larger than this abort with [`ReconstructError::PoolOverflow`].
pub const POOL_CAP: usize = 1024;

/// Largest exponent `k` in the doubling ladder `n = 2^k` used for `<<`.
pub const LADDER_TOP: u32 = 40;

/// Terms of bounded depth over the generators, deduplicated, in a fixed
/// order: generators first, then zero, then negations, then each closure
/// round in the order its terms were produced.
#[derive(Debug, Clone)]
pub struct CandidatePool {
    pub elements: Vec<Tuple>,
    pub depth: usize,
}

impl CandidatePool {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, t: &[BigInt]) -> bool {
        self.elements.iter().any(|e| e.as_slice() == t)
    }
}

/// Closes `gens ∪ {0}` under negation, then `depth` times under one round
/// of `+`, `v`, `^` followed by negation. The result is closed under
/// negation.
pub fn build_pool(ops: &dyn LGroupOracle, gens: &[Tuple], depth: usize) -> Result<CandidatePool, ReconstructError> {
    let mut elements: Vec<Tuple> = Vec::new();
    let mut index: HashMap<Tuple, usize> = HashMap::new();
    let mut push = |t: Tuple, elements: &mut Vec<Tuple>| -> Result<(), ReconstructError> {
        if !index.contains_key(&t) {
            if elements.len() == POOL_CAP {
                return Err(ReconstructError::PoolOverflow { depth, cap: POOL_CAP });
            }
            index.insert(t.clone(), elements.len());
            elements.push(t);
        }
        Ok(())
    };
    for g in gens {
        push(g.clone(), &mut elements)?;
    }
    push(ops.zero(), &mut elements)?;
    let close_under_neg = |from: usize, elements: &mut Vec<Tuple>, push: &mut dyn FnMut(Tuple, &mut Vec<Tuple>) -> Result<(), ReconstructError>| {
        for i in from..elements.len() {
            let neg = ops.neg(&elements[i]);
            push(neg, elements)?;
        }
        Ok::<(), ReconstructError>(())
    };
    close_under_neg(0, &mut elements, &mut push)?;
    for _ in 0..depth {
        let current = elements.len();
        for i in 0..current {
            for j in i..current {
                let (a, b) = (&elements[i], &elements[j]);
                let terms = [ops.add(a, b), ops.join(a, b), ops.meet(a, b)];
                for t in terms {
                    push(t, &mut elements)?;
                }
            }
        }
        close_under_neg(current, &mut elements, &mut push)?;
    }
    Ok(CandidatePool { elements, depth })
}

/// Black-box `<`, `<<` and infinitesimality on pool members, with the
/// doubling ladders of each member cached.
pub struct OrderProbe<'a> {
    ops: &'a dyn LGroupOracle,
    pool: &'a [Tuple],
    zero: Tuple,
    positive: RefCell<HashMap<usize, bool>>,
    extremes: RefCell<HashMap<usize, (Tuple, Tuple)>>,
}

impl<'a> OrderProbe<'a> {
    pub fn new(ops: &'a dyn LGroupOracle, pool: &'a [Tuple]) -> Self {
        Self { ops, pool, zero: ops.zero(), positive: RefCell::new(HashMap::new()), extremes: RefCell::new(HashMap::new()) }
    }

    pub fn element(&self, i: usize) -> &Tuple {
        &self.pool[i]
    }

    pub fn lt(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        !self.ops.equal(a, b) && self.ops.equal(&self.ops.join(a, b), b)
    }

    pub fn is_positive(&self, i: usize) -> bool {
        if let Some(&p) = self.positive.borrow().get(&i) {
            return p;
        }
        let p = self.lt(&self.zero, &self.pool[i]);
        self.positive.borrow_mut().insert(i, p);
        p
    }

    /// `2^LADDER_TOP * g` and its negative.
    fn extremes(&self, i: usize) -> std::cell::Ref<'_, (Tuple, Tuple)> {
        if !self.extremes.borrow().contains_key(&i) {
            let mut top = self.pool[i].clone();
            for _ in 0..LADDER_TOP {
                top = self.ops.add(&top, &top);
            }
            let bottom = self.ops.neg(&top);
            self.extremes.borrow_mut().insert(i, (top, bottom));
        }
        std::cell::Ref::map(self.extremes.borrow(), |m| &m[&i])
    }

    /// `pool[g] << pool[h]`, tested as `n*g < h` for `n = 0` and
    /// `n = ±2^k`, `k <= LADDER_TOP`.
    ///
    /// In any ℓ-group the set of `n` with `n*g < h` is an interval of
    /// integers, so the whole ladder holds iff its two extreme rungs and
    /// `n = 0` do; only those three comparisons are evaluated.
    pub fn inf_less(&self, g: usize, h: usize) -> bool {
        if !self.is_positive(h) {
            return false;
        }
        let target = &self.pool[h];
        let ext = self.extremes(g);
        self.lt(&ext.0, target) && self.lt(&ext.1, target)
    }

    /// Some member of `within` dominates `pool[g]` infinitesimally.
    pub fn is_infinitesimal_in(&self, g: usize, within: &[usize]) -> bool {
        within.iter().any(|&h| h != g && self.inf_less(g, h))
    }
}

/// Greedy maximal set of pool members (among `within`, in that order) that
/// are positive, not infinitesimal, not a sum of two positive
/// non-infinitesimal members, and pairwise satisfy `a v b = a + b`.
pub fn select_b0_in(probe: &OrderProbe<'_>, ops: &dyn LGroupOracle, within: &[usize]) -> Result<Vec<usize>, ReconstructError> {
    let lookup: HashMap<&[BigInt], usize> = within.iter().map(|&i| (probe.element(i).as_slice(), i)).collect();
    let mut standard: HashMap<usize, bool> = HashMap::new();
    // positive and not infinitesimal
    let mut is_standard = |i: usize| {
        *standard
            .entry(i)
            .or_insert_with(|| probe.is_positive(i) && !probe.is_infinitesimal_in(i, within))
    };

    let mut chosen: Vec<usize> = Vec::new();
    for &c in within {
        let g = probe.element(c);
        let orthogonal = chosen.iter().all(|&s| {
            let t = probe.element(s);
            ops.equal(&ops.join(g, t), &ops.add(g, t))
        });
        if !orthogonal || !is_standard(c) {
            continue;
        }
        let decomposable = within.iter().any(|&x| {
            if x == c || !probe.is_positive(x) {
                return false;
            }
            let rest = ops.add(g, &ops.neg(probe.element(x)));
            match lookup.get(rest.as_slice()) {
                Some(&y) => is_standard(x) && is_standard(y),
                None => false,
            }
        });
        if !decomposable {
            chosen.push(c);
        }
    }
    if chosen.is_empty() {
        return Err(ReconstructError::EmptySelection);
    }
    Ok(chosen)
}

/// [`select_b0_in`] over a whole pool. Returns the selected tuples.
pub fn select_b0(ops: &dyn LGroupOracle, pool: &CandidatePool) -> Result<Vec<Tuple>, ReconstructError> {
    let probe = OrderProbe::new(ops, &pool.elements);
    let all: Vec<usize> = (0..pool.len()).collect();
    Ok(select_b0_in(&probe, ops, &all)?.into_iter().map(|i| pool.elements[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::RootedForest;
    use crate::reconstruct::scramble::HiddenScramble;
    use std::sync::Arc;

    fn t(c: &[i64]) -> Tuple {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn plain(f: RootedForest) -> HiddenScramble {
        let n = f.len();
        HiddenScramble::new(Arc::new(f), (0..n).collect(), Vec::new()).unwrap()
    }

    #[test]
    fn pool_of_single_generator() {
        let ops = plain(RootedForest::singleton());
        let pool = build_pool(&ops, &[t(&[1])], 1).unwrap();
        let mut got = pool.elements.clone();
        got.sort();
        assert_eq!(got, vec![t(&[-2]), t(&[-1]), t(&[0]), t(&[1]), t(&[2])]);
        assert_eq!(pool.elements[0], t(&[1]));
    }

    #[test]
    fn pool_is_closed_under_negation() {
        let f = Arc::new(RootedForest::star(2));
        let p = crate::reconstruct::scramble(&f, 8, 3);
        for depth in 0..=2 {
            let pool = build_pool(p.ops(), &p.gens, depth).unwrap();
            assert!(p.gens.iter().all(|g| pool.contains(g)));
            assert!(pool.contains(&p.ops().zero()));
            assert!(pool.elements.iter().all(|x| pool.contains(&p.ops().neg(x))));
        }
    }

    #[test]
    fn pool_of_zero_is_zero() {
        let ops = plain(RootedForest::chain(2));
        for depth in 1..=3 {
            let pool = build_pool(&ops, &[t(&[0, 0])], depth).unwrap();
            assert_eq!(pool.elements, vec![t(&[0, 0])]);
        }
    }

    #[test]
    fn pool_contains_gens_and_overflows() {
        let ops = plain(RootedForest::star(5));
        let gens: Vec<Tuple> = (0..6).map(|i| (0..6).map(|j| BigInt::from((i == j) as i32)).collect()).collect();
        let pool = build_pool(&ops, &gens, 1).unwrap();
        assert!(gens.iter().all(|g| pool.contains(g)));
        assert!(matches!(build_pool(&ops, &gens, 3), Err(ReconstructError::PoolOverflow { .. })));
    }

    #[test]
    fn b0_of_two_singletons() {
        let ops = plain(RootedForest::singletons(2));
        let pool = CandidatePool { elements: vec![t(&[1, 0]), t(&[0, 1]), t(&[1, 1]), t(&[0, 0])], depth: 0 };
        assert_eq!(select_b0(&ops, &pool).unwrap(), vec![t(&[1, 0]), t(&[0, 1])]);
        // a sum of two chosen-type elements is rejected even when listed first
        let pool = CandidatePool { elements: vec![t(&[1, 1]), t(&[1, 0]), t(&[0, 1]), t(&[0, 0])], depth: 0 };
        assert_eq!(select_b0(&ops, &pool).unwrap(), vec![t(&[1, 0]), t(&[0, 1])]);
    }

    #[test]
    fn b0_of_lex_chain() {
        let ops = plain(RootedForest::chain(2));
        let pool = CandidatePool { elements: vec![t(&[1, 0]), t(&[0, 1]), t(&[1, 5]), t(&[0, 0])], depth: 0 };
        let b0 = select_b0(&ops, &pool).unwrap();
        assert_eq!(b0.len(), 1);
        assert_eq!(b0[0][0], BigInt::from(1));
        let pool = CandidatePool { elements: vec![t(&[1, 5]), t(&[0, 1]), t(&[1, 0]), t(&[0, 0])], depth: 0 };
        assert_eq!(select_b0(&ops, &pool).unwrap(), vec![t(&[1, 5])]);
    }

    #[test]
    fn b0_of_trivial_group() {
        let ops = plain(RootedForest::empty());
        let pool = build_pool(&ops, &[], 2).unwrap();
        assert_eq!(select_b0(&ops, &pool), Err(ReconstructError::EmptySelection));
    }

    #[test]
    fn ladder_matches_exact_inf_less() {
        use crate::tlex::{random_element_with, TlexElement};
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let f = Arc::new(RootedForest::random(&mut rng, 5));
            let ops = HiddenScramble::new(f.clone(), (0..5).collect(), Vec::new()).unwrap();
            let elems: Vec<TlexElement> = (0..12).map(|_| random_element_with(&mut rng, &f, 3)).collect();
            let pool: Vec<Tuple> = elems.iter().map(|e| e.coords().to_vec()).collect();
            let probe = OrderProbe::new(&ops, &pool);
            for i in 0..pool.len() {
                for j in 0..pool.len() {
                    assert_eq!(probe.inf_less(i, j), elems[i].inf_less(&elems[j]).unwrap());
                }
            }
        }
    }
}
