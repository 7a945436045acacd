use std::collections::HashSet;

use flseq_core::arith::prime_power;
use flseq_core::prelude::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_prime_powers(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&q| prime_power(q).is_some()).collect()
}

#[test]
fn field_axioms_exhaustive_up_to_16() {
    for q in small_prime_powers(16) {
        let f = Field::from_order(q).unwrap();
        let elems: Vec<_> = f.elements().collect();
        for x in &elems {
            assert_eq!(x + &f.zero(), *x);
            assert_eq!(x * &f.one(), *x);
            assert!((x + &-x).is_zero());
            if !x.is_zero() {
                assert!((x * &x.inv().unwrap()).is_one());
            }
            for y in &elems {
                assert_eq!(x + y, y + x);
                assert_eq!(x * y, y * x);
                for z in &elems {
                    assert_eq!(&(x + y) + z, x + &(y + z));
                    assert_eq!(&(x * y) * z, x * &(y * z));
                    assert_eq!(x * &(y + z), &(x * y) + &(x * z));
                }
            }
        }
    }
}

#[test]
fn frobenius_is_additive_up_to_16() {
    for q in small_prime_powers(16) {
        let f = Field::from_order(q).unwrap();
        let p = f.characteristic() as u64;
        for x in f.elements() {
            for y in f.elements() {
                assert_eq!((&x + &y).pow(p), &x.pow(p) + &y.pow(p));
            }
        }
    }
}

#[test]
fn generator_and_log_tables() {
    for q in small_prime_powers(256) {
        let f = Field::from_order(q).unwrap();
        let g = f.generator();
        assert!(g.pow(q - 1).is_one());
        assert_eq!(g.multiplicative_order(), q - 1);
        for k in 0..(q - 1) as u32 {
            assert_eq!(f.discrete_log(&g.pow(k as u64)).unwrap(), k);
        }
        let logs: HashSet<u32> = f
            .elements()
            .filter(|x| !x.is_zero())
            .map(|x| f.discrete_log(&x).unwrap())
            .collect();
        assert_eq!(logs.len() as u64, q - 1);
    }
}

#[test]
fn generator_examples() {
    let expect = [(5u64, 2u32), (7, 3), (2, 1)];
    for (q, g) in expect {
        let f = Field::from_order(q).unwrap();
        // oracle: order by repeated multiplication
        let mut x = 1u64;
        let mut order = 0;
        loop {
            x = x * g as u64 % q;
            order += 1;
            if x == 1 {
                break;
            }
        }
        assert_eq!(order, q - 1);
        assert_eq!(f.find_generator().code(), g);
    }
}

#[test]
fn gf9_modulus_has_no_root() {
    // x^2 + 1 over Z_3: no root among 0, 1, 2.
    assert!((0..3u32).all(|x| (x * x + 1) % 3 != 0));
    assert!(Field::new(3, 2, Some(&[1, 0, 1])).is_ok());
}

fn arb_large_field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![243u64, 1024, 2187, 65521, 65536, 3125])
        .prop_map(|q| Field::from_order(q).unwrap())
}

proptest! {
    #[test]
    fn ring_laws_on_larger_fields(f in arb_large_field(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let q = f.order();
        let (x, y, z) = (f.element(a % q), f.element(b % q), f.element(c % q));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }
}

#[test]
fn composition_respects_application() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64] {
        let f = Field::from_order(q).unwrap();
        let qq = f.order();
        let random_map = |rng: &mut ChaCha8Rng| loop {
            let c = [(); 4].map(|_| rng.gen_range(0..qq));
            if let Ok(m) = MoebiusMap::from_codes(&f, c) {
                return m;
            }
        };
        let line = projective_line(&f);
        for _ in 0..1000 {
            let g = random_map(&mut rng);
            let h = random_map(&mut rng);
            let pt = &line[rng.gen_range(0..line.len())];
            let lhs = g.compose(&h).unwrap().apply(pt).unwrap();
            let rhs = g.apply(&h.apply(pt).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "q={q}");
        }
    }
}

#[test]
fn every_map_permutes_the_line() {
    for q in [4u64, 5, 7] {
        let f = Field::from_order(q).unwrap();
        let line = projective_line(&f);
        for g in enumerate_group(&f).unwrap() {
            let image: HashSet<_> = line.iter().map(|p| g.apply(p).unwrap()).collect();
            assert_eq!(image.len(), line.len());
            assert_eq!((q * (q * q - 1)) % g.order(), 0);
        }
    }
}

#[test]
fn psi_properties_for_all_prime_powers_up_to_64() {
    for q in small_prime_powers(64) {
        let f = Field::from_order(q).unwrap();
        let psi = find_psi(&f).unwrap();
        assert!(psi.fixed_points().is_empty(), "q={q}");
        assert_eq!(psi.order(), q + 1);
        assert!(psi.pow(q + 1).is_identity());
        let orbit = psi.orbit(&ProjPoint::Finite(f.one())).unwrap();
        let distinct: HashSet<_> = orbit.iter().cloned().collect();
        assert_eq!(distinct.len() as u64, q + 1);
    }
}

#[test]
fn psi_q2_matches_hand_evaluation() {
    let f = Field::from_order(2).unwrap();
    let psi = find_psi(&f).unwrap();
    // 1/(z+1): 1 -> 1/0 = inf -> a/c = 0 -> 1/1 = 1
    assert_eq!(psi.codes(), [0, 1, 1, 1]);
    let orbit = psi.orbit(&ProjPoint::Finite(f.one())).unwrap();
    assert_eq!(
        orbit,
        vec![
            ProjPoint::Finite(f.one()),
            ProjPoint::Infinity,
            ProjPoint::Finite(f.zero())
        ]
    );
}
