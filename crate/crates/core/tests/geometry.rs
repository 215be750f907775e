use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use treelex::geometry::stellar::{check_correspondence, random_complex, random_script};
use treelex::geometry::{apply_stellar_script, farey_mediant, GeometricComplex, RationalPoint, Simplex, WeightedComplex};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn point_strategy(dim: usize) -> impl Strategy<Value = RationalPoint> {
    prop::collection::vec((1i64..=12).prop_flat_map(|d| (0..=d, Just(d))), dim)
        .prop_map(|v| RationalPoint::new(v.into_iter().map(|(n, d)| q(n, d)).collect()).unwrap())
}

/// Random point of a closed simplex, from random nonnegative weights.
fn sample_in<R: Rng>(rng: &mut R, s: &Simplex) -> RationalPoint {
    let mut w: Vec<i64> = s.vertices().iter().map(|_| rng.gen_range(0..6)).collect();
    if w.iter().all(|&x| x == 0) {
        w.fill(1);
    }
    let total: i64 = w.iter().sum();
    let n = s.ambient_dim();
    let mut c = vec![BigRational::zero(); n];
    for (v, &wi) in s.vertices().iter().zip(&w) {
        for (x, y) in c.iter_mut().zip(v.coords()) {
            *x += y * q(wi, total);
        }
    }
    RationalPoint::new(c).unwrap()
}

proptest! {
    #[test]
    fn mediant_lies_in_open_segment(v in point_strategy(3), w in point_strategy(3)) {
        prop_assume!(v != w);
        let m = farey_mediant(&v, &w).unwrap();
        let seg = Simplex::new(vec![v.clone(), w.clone()]).unwrap();
        prop_assert!(seg.relint_contains(&m));
        prop_assert!(m.den() <= v.den() + w.den());
    }

    #[test]
    fn den_divides_scaled_coordinates(v in point_strategy(4)) {
        let d = BigRational::from_integer(v.den());
        prop_assert!(v.coords().iter().all(|c| (c * &d).is_integer()));
        prop_assert!(v.den() >= BigInt::one());
    }
}

#[test]
fn mediant_denominator_is_additive_on_canonical_vertices() {
    for a in 1..6u64 {
        for b in 1..6u64 {
            let v = RationalPoint::scaled_basis(2, 0, a);
            let w = RationalPoint::scaled_basis(2, 1, b);
            assert_eq!(farey_mediant(&v, &w).unwrap().den(), BigInt::from(a + b));
        }
    }
}

#[test]
fn blow_up_keeps_support_and_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let w = random_complex(&mut rng, 4);
        let (k, _) = w.canonical_realization();
        let max: Vec<Simplex> = k.maximal().into_iter().cloned().collect();
        let host = &max[rng.gen_range(0..max.len())];
        let p = sample_in(&mut rng, host);
        let kp = k.blow_up(&p).unwrap();
        assert!(kp.is_closed());
        assert!(kp.refines_into(&k));
        assert!(kp.vertices().contains(&p));
        for t in &max {
            for _ in 0..5 {
                let x = sample_in(&mut rng, t);
                assert!(kp.support_contains(&x), "{x} lost by blowing up at {p}");
            }
        }
    }
}

#[test]
fn simplexes_without_the_point_are_untouched() {
    let a = RationalPoint::from_fractions(&[(0, 1), (0, 1)]).unwrap();
    let b = RationalPoint::from_fractions(&[(1, 1), (0, 1)]).unwrap();
    let c = RationalPoint::from_fractions(&[(0, 1), (1, 1)]).unwrap();
    let d = RationalPoint::from_fractions(&[(1, 1), (1, 1)]).unwrap();
    let k = GeometricComplex::from_simplexes(
        2,
        [Simplex::new(vec![a.clone(), b.clone(), c.clone()]).unwrap(), Simplex::new(vec![b.clone(), c.clone(), d.clone()]).unwrap()],
    )
    .unwrap();
    let p = RationalPoint::from_fractions(&[(1, 4), (1, 4)]).unwrap();
    let kp = k.blow_up(&p).unwrap();
    assert!(kp.contains(&Simplex::new(vec![b.clone(), c.clone(), d]).unwrap()));
    assert_eq!(kp.maximal().len(), 4);
}

#[test]
fn random_scripts_keep_weights_and_supports() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let w0 = random_complex(&mut rng, 6);
        let len = rng.gen_range(0..=10);
        let script = random_script(&mut rng, &w0, len);
        let steps = apply_stellar_script(&w0, &script).unwrap();
        assert_eq!(check_correspondence(&steps), Ok(()), "script {script:?}");
        for s in &steps {
            assert!(s.complex.is_valid());
            assert!(s.geometry.is_closed());
        }
    }
}

#[test]
fn weighted_json_keeps_only_maximal_sets() {
    let w = WeightedComplex::simplex(&["x", "y", "z"], &[1, 1, 2]).unwrap();
    let j = w.to_json();
    assert_eq!(j.sets, vec![vec!["x".to_string(), "y".to_string(), "z".to_string()]]);
}
