use super::*;
use crate::fgab::CanonicalForm;
use crate::mackey::{burnside, check_green_axioms, GroupContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rings() -> Vec<BaseRing> {
    vec![BaseRing::Integers, BaseRing::IntegersMod(4), BaseRing::IntegersMod(2), BaseRing::IntegersMod(3)]
}

#[test]
fn trivial_group_gives_the_ring() {
    for ring in rings() {
        let w = witt_green(ring, 1).unwrap();
        let expected = match ring.modulus() {
            None => CanonicalForm::free(1),
            Some(m) => CanonicalForm::cyclic(m),
        };
        assert_eq!(w.mackey().level(1).canonical_form(), expected);
    }
}

#[test]
fn top_levels() {
    for p in [2u64, 3] {
        for k in 0..3u32 {
            let w = witt_green(BaseRing::IntegersMod(p), p.pow(k)).unwrap();
            assert_eq!(w.mackey().level(p.pow(k)).canonical_form(), CanonicalForm::cyclic(p.pow(k + 1)));
        }
    }
    for n in [2u64, 3, 4, 6] {
        let w = witt_green(BaseRing::Integers, n).unwrap();
        assert_eq!(w.mackey().level(n).canonical_form(), CanonicalForm::free(divisors(n).len()));
    }
}

#[test]
fn comparison_with_classical_witt_vectors() {
    for ring in rings() {
        for n in [1u64, 2, 3, 4, 6] {
            let w = witt_green(ring, n).unwrap();
            assert!(check_green_axioms(&w.green).passed(), "{ring} {n}");
            let c = compare_with_classical(&w).unwrap();
            assert!(c.passed(), "{ring} {n}: {c:?}");
            let size = ring.modulus().map(|m| m.pow(divisors(n).len() as u32) as usize);
            assert_eq!(c.exhaustive, size.is_some_and(|s| s <= EXHAUSTIVE_LIMIT));
            assert_eq!(c.ghost, ring.modulus().map_or(Some(true), |_| None));
        }
    }
}

#[test]
fn teichmuller_lift() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (ring, m) in [(BaseRing::IntegersMod(8), 8i64), (BaseRing::IntegersMod(3), 3)] {
        for n in [2u64, 3, 4] {
            let w = witt_green(ring, n).unwrap();
            let top = w.mackey().level(n).clone();
            assert!(top.elements_equal(&w.teichmuller(&BigInt::from(1)).unwrap(), w.green.unit(n)));
            assert!(top.is_zero(&w.teichmuller(&BigInt::from(0)).unwrap()));
            for _ in 0..6 {
                let (r, s) = (rng.gen_range(0..m), rng.gen_range(0..m));
                let lhs = w.teichmuller(&BigInt::from(r * s)).unwrap();
                let rhs = w.green.mul(n, &w.teichmuller(&BigInt::from(r)).unwrap(), &w.teichmuller(&BigInt::from(s)).unwrap());
                assert!(top.elements_equal(&lhs, &rhs), "{ring} {n} {r} {s}");
                let bottom = w.mackey().apply_res(1, n, &w.teichmuller(&BigInt::from(r)).unwrap());
                let power: Vector = w.green.unit(1).iter().map(|u| u * BigInt::from(r).pow(n as u32)).collect();
                assert!(w.mackey().level(1).elements_equal(&bottom, &power));
            }
        }
    }
}

#[test]
fn ghost_coordinates_of_teichmuller_lifts() {
    for n in [1u64, 2, 3, 4, 6] {
        let w = witt_green(BaseRing::Integers, n).unwrap();
        for r in [-2i64, 0, 1, 3] {
            let t = w.teichmuller(&BigInt::from(r)).unwrap();
            for d in divisors(n) {
                let g = w.ghost_coordinate(d, &t).unwrap();
                assert_eq!(g.group.canonical_form(), CanonicalForm::free(1));
                assert!(g.is_multiple_of_unit(&BigInt::from(r).pow((n / d) as u32)), "{n} {d} {r}");
            }
        }
    }
    let w = witt_green(BaseRing::IntegersMod(2), 2).unwrap();
    let g = w.ghost_coordinate(2, w.green.unit(2)).unwrap();
    assert_eq!(g.group.canonical_form(), CanonicalForm::cyclic(2));
    let bottom = w.ghost_coordinate(1, w.green.unit(2)).unwrap();
    assert_eq!(bottom.group.canonical_form(), CanonicalForm::cyclic(2));
}

#[test]
fn naturality_in_reduction() {
    for (m, n) in [(4u64, 2u64), (3, 3), (2, 4)] {
        let wz = witt_green(BaseRing::Integers, n).unwrap();
        let wm = witt_green(BaseRing::IntegersMod(m), n).unwrap();
        // V_e(1) goes to V_e(1), so the input map is the identity on coordinates.
        for r in 0..6i64 {
            let tz = wz.norm().unwrap().external_norm_element(&BigInt::from(r)).unwrap();
            let lhs = wm.class_of_input(n, &tz);
            let rhs = wm.teichmuller(&BigInt::from(r)).unwrap();
            assert!(wm.mackey().level(n).elements_equal(&lhs, &rhs), "{m} {n} {r}");
        }
    }
}

#[test]
fn green_input_and_errors() {
    let a = burnside(GroupContext::new(2).unwrap());
    let w = witt_green_of(&a).unwrap();
    assert_eq!(w.mackey().canonical_forms(), a.mackey().canonical_forms());
    assert!(w.teichmuller(&BigInt::from(1)).is_err());
    assert!(compare_with_classical(&w).is_err());
    assert!(w.ghost_coordinate(3, w.green.unit(2)).is_err());
    let j = witt_json(&witt_green(BaseRing::IntegersMod(2), 2).unwrap()).unwrap();
    assert_eq!(j["comparison"]["passed"], true);
}
