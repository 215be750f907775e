//! Seeded property suites.
//!
//! Trial `t` of a run draws from a ChaCha8 stream seeded with the master
//! seed and stream number `t`, so each trial is reproducible on its own and
//! a report depends only on `(suite, seed, trials)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forest::RootedForest;
use crate::geometry::stellar::{check_correspondence, random_complex, random_script};
use crate::geometry::{apply_stellar_script, RationalPoint, Simplex};
use crate::parasemifield::{GeneratorAssignment, Parasemifield};
use crate::pwl::{random_convex, random_point};
use crate::reconstruct::{self, scramble, DEFAULT_DEPTH};
use crate::tlex::{named_forest, random_element_with, TlexElement};

pub const SUITES: [&str; 7] = [
    "lgroup-axioms",
    "parasemifield-axioms",
    "antisymmetry",
    "purity",
    "convexity-closure",
    "weight-denominator",
    "reconstruction-roundtrip",
];

const SHIPPED: [&str; 6] = ["singleton", "chain2", "chain3", "star3", "singletons2", "chain5"];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FuzzError {
    #[error("unknown suite `{0}` (known: {list})", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("trials must be at least 1")]
    NoTrials,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub first_counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub properties: Vec<PropertyReport>,
}

impl FuzzReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.failed == 0)
    }
}

type Check = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn show(e: &TlexElement) -> String {
    let c: Vec<String> = e.coords().iter().map(|x| x.to_string()).collect();
    format!("({})", c.join(","))
}

fn triple(a: &TlexElement, b: &TlexElement, c: &TlexElement) -> String {
    format!("forest {} a={} b={} c={}", a.forest().ahu_canonical(), show(a), show(b), show(c))
}

/// A shipped forest on even trials, a random one with at most `max` vertices
/// on odd trials.
fn pick_forest(rng: &mut ChaCha8Rng, trial: usize, max: usize) -> Arc<RootedForest> {
    if trial.is_multiple_of(2) {
        let name = SHIPPED[(trial / 2) % SHIPPED.len()];
        Arc::new(named_forest(name).expect("shipped forest"))
    } else {
        let n = rng.gen_range(1..=max);
        Arc::new(RootedForest::random(rng, n))
    }
}

/// One trial: a list of named outcomes, one per property.
type Trial = Vec<(&'static str, Check)>;

fn lgroup_axioms(rng: &mut ChaCha8Rng, trial: usize) -> Trial {
    let f = pick_forest(rng, trial, 10);
    let [a, b, c] = [0; 3].map(|_| random_element_with(rng, &f, 1_000_000));
    let t = || triple(&a, &b, &c);
    let ok = |x: TlexElement, y: TlexElement| ensure(x == y, t);
    let add = |x: &TlexElement, y: &TlexElement| x.add(y).expect("same forest");
    let join = |x: &TlexElement, y: &TlexElement| x.join(y).expect("same forest");
    let meet = |x: &TlexElement, y: &TlexElement| x.meet(y).expect("same forest");
    let zero = TlexElement::zero(&f);
    vec![
        ("add-commutative", ok(add(&a, &b), add(&b, &a))),
        ("add-associative", ok(add(&add(&a, &b), &c), add(&a, &add(&b, &c)))),
        ("add-identity", ok(add(&a, &zero), a.clone())),
        ("add-inverse", ok(add(&a, &a.neg()), zero.clone())),
        ("join-commutative", ok(join(&a, &b), join(&b, &a))),
        ("join-associative", ok(join(&join(&a, &b), &c), join(&a, &join(&b, &c)))),
        ("meet-commutative", ok(meet(&a, &b), meet(&b, &a))),
        ("meet-associative", ok(meet(&meet(&a, &b), &c), meet(&a, &meet(&b, &c)))),
        ("join-idempotent", ok(join(&a, &a), a.clone())),
        ("absorption", ok(meet(&a, &join(&a, &b)), a.clone()).and(ok(join(&a, &meet(&a, &b)), a.clone()))),
        ("lattice-distributive", ok(meet(&a, &join(&b, &c)), join(&meet(&a, &b), &meet(&a, &c)))),
        ("add-distributes-over-join", ok(add(&a, &join(&b, &c)), join(&add(&a, &b), &add(&a, &c)))),
        ("add-distributes-over-meet", ok(add(&a, &meet(&b, &c)), meet(&add(&a, &b), &add(&a, &c)))),
        ("neg-swaps-join-meet", ok(join(&a, &b).neg(), meet(&a.neg(), &b.neg()))),
        ("join-is-upper-bound", ensure(a.leq(&join(&a, &b)).unwrap() && b.leq(&join(&a, &b)).unwrap(), t)),
        ("leq-matches-meet", ensure(a.leq(&b).unwrap() == (meet(&a, &b) == a), t)),
        ("sum-of-parts", ok(add(&join(&a, &b), &meet(&a, &b)), add(&a, &b))),
    ]
}

fn parasemifield_axioms(rng: &mut ChaCha8Rng, trial: usize) -> Trial {
    let f = pick_forest(rng, trial, 8);
    let s = Parasemifield::wrap(f.clone());
    let [a, x, y] = [0; 3].map(|_| random_element_with(rng, &f, 20));
    // b, c <= a by construction
    let b = s.ps_meet(&a, &x).unwrap();
    let c = s.ps_meet(&a, &y).unwrap();
    let t = || triple(&a, &b, &c);
    let plus = |p: &TlexElement, q: &TlexElement| s.ps_add(p, q).expect("same forest");
    let times = |p: &TlexElement, q: &TlexElement| s.ps_mul(p, q).expect("same forest");
    let p3 = if plus(&plus(&a, &b), &c) == a { ensure(plus(&a, &b) == a, t) } else { Err(format!("construction failed: {}", t())) };
    let recovered = s.ps_inv(&plus(&s.ps_inv(&a), &s.ps_inv(&x)));
    vec![
        ("plus-idempotent", ensure(plus(&a, &a) == a, t)),
        ("plus-commutative", ensure(plus(&a, &x) == plus(&x, &a), t)),
        ("times-distributes", ensure(times(&a, &plus(&x, &y)) == plus(&times(&a, &x), &times(&a, &y)), t)),
        ("times-inverse", ensure(times(&a, &s.ps_inv(&a)) == s.ps_one(), t)),
        ("one-is-neutral", ensure(times(&a, &s.ps_one()) == a, t)),
        ("absorbing-sum", p3),
        ("meet-recovery", ensure(recovered == a.meet(&x).unwrap(), t)),
    ]
}

fn antisymmetry(rng: &mut ChaCha8Rng, trial: usize) -> Trial {
    let f = pick_forest(rng, trial, 8);
    let s = Parasemifield::wrap(f.clone());
    let a = random_element_with(rng, &f, 5);
    // half the time b equals a through a detour, otherwise b is arbitrary
    let b = if rng.gen_bool(0.5) {
        let x = random_element_with(rng, &f, 5);
        a.add(&x).unwrap().join(&a.add(&x).unwrap()).unwrap().sub(&x).unwrap()
    } else {
        random_element_with(rng, &f, 2)
    };
    let c = TlexElement::zero(&f);
    let t = || triple(&a, &b, &c);
    let both = s.ps_leq(&a, &b).unwrap() && s.ps_leq(&b, &a).unwrap();
    let semiring_both = s.ps_add(&a, &b).unwrap() == b && s.ps_add(&b, &a).unwrap() == a;
    vec![
        ("order-antisymmetric", ensure(!both || a == b, t)),
        ("semiring-antisymmetric", ensure(!semiring_both || a == b, t)),
        ("mutual-order-is-equality", ensure(both == (a == b), t)),
    ]
}

fn purity(rng: &mut ChaCha8Rng, trial: usize) -> Trial {
    let f = pick_forest(rng, trial, 6);
    let m = rng.gen_range(1..=4);
    let gens: Vec<TlexElement> = (0..m).map(|_| random_element_with(rng, &f, 4)).collect();
    let ga = GeneratorAssignment::new(f.clone(), gens.clone()).expect("same forest");
    let a: Vec<u64> = (0..m).map(|_| rng.gen_range(0..=5)).collect();
    let b: Vec<u64> = (0..m).map(|_| rng.gen_range(0..=5)).collect();
    let desc = || {
        let g: Vec<String> = gens.iter().map(show).collect();
        format!("forest {} gens [{}] a={a:?} b={b:?}", f.ahu_canonical(), g.join(" "))
    };
    let in_a = ga.cone_member(&a).unwrap();
    let pure = (1..=10u64).all(|n| {
        let na: Vec<u64> = a.iter().map(|x| x * n).collect();
        ga.cone_member(&na).unwrap() == in_a
    });
    let in_b = ga.cone_member(&b).unwrap();
    let sum: Vec<u64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    let (sa, sb) = (ga.monomial_eval(&a).unwrap(), ga.monomial_eval(&b).unwrap());
    let zero = TlexElement::zero(&f);
    let join_below = sa.join(&sb).unwrap().leq(&zero).unwrap();
    vec![
        ("cone-purity", ensure(pure, desc)),
        ("cone-additive", ensure(!(in_a && in_b) || ga.cone_member(&sum).unwrap(), desc)),
        ("join-below-one", ensure(join_below == (in_a && in_b), desc)),
    ]
}

fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> Simplex {
    loop {
        let k = rng.gen_range(1..=n + 1);
        let pts: Vec<RationalPoint> = (0..k).map(|_| random_point(rng, n, 8)).collect();
        if let Ok(s) = Simplex::new(pts) {
            return s;
        }
    }
}

fn convexity_closure(rng: &mut ChaCha8Rng, _trial: usize) -> Trial {
    let n = rng.gen_range(1..=2);
    let f = random_convex(rng, n, 3, 5);
    let g = random_convex(rng, n, 3, 5);
    let s = random_simplex(rng, n);
    let desc = || format!("f={f} g={g} on {s}");
    let convex = |h: &crate::pwl::PwlFunction| h.convex_check(&s).unwrap_or(false);
    vec![
        ("inputs-convex", ensure(convex(&f) && convex(&g), desc)),
        ("sum-convex", ensure(convex(&f.pw_add(&g).unwrap()), desc)),
        ("join-convex", ensure(convex(&f.pw_join(&g).unwrap()), desc)),
    ]
}

fn weight_denominator(rng: &mut ChaCha8Rng, _trial: usize) -> Trial {
    let w0 = random_complex(rng, 6);
    let len = rng.gen_range(0..=10);
    let script = random_script(rng, &w0, len);
    let desc = |why: String| format!("{why}; script {}", serde_json::to_string(&script).unwrap_or_default());
    let outcome = match apply_stellar_script(&w0, &script) {
        Ok(steps) => check_correspondence(&steps).map_err(desc),
        Err(e) => Err(desc(e.to_string())),
    };
    vec![("realization-commutes", outcome)]
}

fn reconstruction_roundtrip(rng: &mut ChaCha8Rng, _trial: usize) -> Trial {
    let n = rng.gen_range(0..=12);
    let f = Arc::new(RootedForest::random(rng, n));
    let (s1, s2) = (rng.gen(), rng.gen());
    let (k1, k2) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
    let (p1, p2) = (scramble(&f, s1, k1), scramble(&f, s2, k2));
    let desc = |why: String| format!("forest {} seeds {s1},{s2}: {why}", f.ahu_canonical());
    let axioms = reconstruct::spot_check(&p1, s1, 8).map_err(|e| desc(e.to_string()));
    let recovered = match reconstruct::recover_forest(&p1, DEFAULT_DEPTH) {
        Ok(g) => ensure(g.is_isomorphic(&f), || desc(format!("recovered {}", g.ahu_canonical()))),
        Err(e) => Err(desc(e.to_string())),
    };
    let canonical = match (reconstruct::canonical_string(&p1, DEFAULT_DEPTH), reconstruct::canonical_string(&p2, DEFAULT_DEPTH)) {
        (Ok(a), Ok(b)) => ensure(a == b, || desc(format!("{a} vs {b}"))),
        (Err(e), _) | (_, Err(e)) => Err(desc(e.to_string())),
    };
    vec![("ops-spot-check", axioms), ("recovers-forest", recovered), ("scrambles-agree", canonical)]
}

pub fn fuzz(suite: &str, seed: u64, trials: usize) -> Result<FuzzReport, FuzzError> {
    let run: fn(&mut ChaCha8Rng, usize) -> Trial = match suite {
        "lgroup-axioms" => lgroup_axioms,
        "parasemifield-axioms" => parasemifield_axioms,
        "antisymmetry" => antisymmetry,
        "purity" => purity,
        "convexity-closure" => convexity_closure,
        "weight-denominator" => weight_denominator,
        "reconstruction-roundtrip" => reconstruction_roundtrip,
        other => return Err(FuzzError::UnknownSuite(other.to_string())),
    };
    if trials == 0 {
        return Err(FuzzError::NoTrials);
    }
    let mut properties: Vec<PropertyReport> = Vec::new();
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64);
        for (i, (name, outcome)) in run(&mut rng, t).into_iter().enumerate() {
            if properties.len() <= i {
                properties.push(PropertyReport { name: name.to_string(), passed: 0, failed: 0, first_counterexample: None });
            }
            let p = &mut properties[i];
            match outcome {
                Ok(()) => p.passed += 1,
                Err(ce) => {
                    p.failed += 1;
                    p.first_counterexample.get_or_insert(ce);
                }
            }
        }
    }
    Ok(FuzzReport { suite: suite.to_string(), seed, trials, properties })
}
