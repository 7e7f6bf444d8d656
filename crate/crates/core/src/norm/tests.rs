use super::*;
use crate::fgab::CanonicalForm;
use crate::mackey::check_green_axioms;
use crate::wittcore::{frobenius, verschiebung, witt_mul};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fp(p: u64) -> BaseRing {
    BaseRing::prime_field(p).unwrap()
}

#[test]
fn prime_field_table() {
    for p in [2u64, 3] {
        for k in 0..=3u32 {
            let n = p.pow(k);
            let norm = norm_trivial_ring(fp(p), n).unwrap();
            let m = norm.mackey();
            for j in 0..=k {
                let d = p.pow(j);
                assert_eq!(m.level(d).canonical_form(), CanonicalForm::cyclic(p.pow(j + 1)), "p={p} n={n} d={d}");
                assert!(m.weyl(d).equals(&crate::fgab::AbHom::identity(m.level(d).clone())));
            }
            for (d, e) in m.ctx().prime_edges() {
                assert!(m.res_edge(d, e).is_surjective());
                assert!(m.tr_edge(d, e).is_injective());
            }
        }
    }
}

#[test]
fn trivial_group_and_integers() {
    let z = norm_trivial_ring(BaseRing::Integers, 1).unwrap();
    assert_eq!(z.mackey().level(1).canonical_form(), CanonicalForm::free(1));
    let f = norm_trivial_ring(BaseRing::integers_mod(4).unwrap(), 1).unwrap();
    assert_eq!(f.mackey().level(1).canonical_form(), CanonicalForm::cyclic(4));
    let z2 = norm_trivial_ring(BaseRing::Integers, 2).unwrap();
    assert_eq!(z2.mackey().level(2).canonical_form(), CanonicalForm::free(2));
    let s2 = TruncationSet::divisors_of(2);
    for (a1, a2) in [(1i64, 0i64), (3, 5), (-2, 7)] {
        let w = WittVector::from_i64(s2.clone(), BaseRing::Integers, &[a1, a2]).unwrap();
        let c = z2.coordinates(2, &w).unwrap();
        let down = z2.mackey().apply_res(1, 2, &c);
        assert_eq!(down, vec![BigInt::from(a1 * a1 + 2 * a2)]);
        let b = WittVector::from_i64(TruncationSet::divisors_of(1), BaseRing::Integers, &[a1]).unwrap();
        let up = z2.mackey().apply_tr(1, 2, &z2.coordinates(1, &b).unwrap());
        assert_eq!(z2.witt_vector(2, &up).unwrap().components(), &[BigInt::zero(), BigInt::from(a1)]);
    }
}

/// Structure maps on coordinates agree with Frobenius, Verschiebung and
/// Witt multiplication on components.
#[test]
fn structure_maps_match_witt_operations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rings = [BaseRing::Integers, fp(2), fp(3), BaseRing::integers_mod(4).unwrap()];
    for ring in rings {
        for n in [2u64, 4, 6] {
            let norm = norm_trivial_ring(ring, n).unwrap();
            let m = norm.mackey();
            let random = |d: u64, rng: &mut ChaCha8Rng| -> Vector { (0..divisors(d).len()).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect() };
            for _ in 0..6 {
                for (d, e) in m.ctx().prime_edges() {
                    let x = random(e, &mut rng);
                    let w = norm.witt_vector(e, &x).unwrap();
                    let f = frobenius(e / d, &w).unwrap();
                    assert_eq!(norm.witt_vector(d, &m.apply_res(d, e, &x)).unwrap(), f, "{ring} {n} F");
                    let y = random(d, &mut rng);
                    let v = verschiebung(e / d, &norm.witt_vector(d, &y).unwrap(), &TruncationSet::divisors_of(e)).unwrap();
                    assert_eq!(norm.witt_vector(e, &m.apply_tr(d, e, &y)).unwrap(), v, "{ring} {n} V");
                }
                for d in m.divisors() {
                    let (x, y) = (random(d, &mut rng), random(d, &mut rng));
                    let prod = witt_mul(&norm.witt_vector(d, &x).unwrap(), &norm.witt_vector(d, &y).unwrap()).unwrap();
                    assert_eq!(norm.witt_vector(d, &norm.green().mul(d, &x, &y)).unwrap(), prod, "{ring} {n} mul");
                    let w = norm.witt_vector(d, &x).unwrap();
                    let c = norm.coordinates(d, &w).unwrap();
                    assert!(m.level(d).elements_equal(&c, &x));
                }
            }
        }
    }
}

#[test]
fn axioms_for_small_groups() {
    for ring in [BaseRing::Integers, fp(2), fp(3), BaseRing::integers_mod(4).unwrap()] {
        for n in 1..=12u64 {
            let norm = norm_trivial_ring(ring, n).unwrap();
            let r = check_green_axioms(norm.green());
            assert!(r.passed(), "{ring} {n}: {r}");
        }
    }
}

#[test]
fn transfer_restriction_is_p() {
    for p in [2u64, 3] {
        let norm = norm_trivial_ring(fp(p), p * p).unwrap();
        let m = norm.mackey();
        for (d, e) in m.ctx().prime_edges() {
            let h = m.res_edge(d, e).compose(m.tr_edge(d, e));
            assert!(h.equals(&crate::fgab::scalar_hom(m.level(e).clone(), p as i64)));
        }
    }
}

#[test]
fn external_norm() {
    let ring = BaseRing::integers_mod(9).unwrap();
    let n = 3;
    let norm = norm_trivial_ring(ring, n).unwrap();
    let one = norm.external_norm_element(&BigInt::from(1)).unwrap();
    assert!(norm.mackey().level(n).elements_equal(&one, norm.green().unit(n)));
    for r in 0..9i64 {
        let x = norm.external_norm_element(&BigInt::from(r)).unwrap();
        let bottom = norm.mackey().apply_res(1, n, &x);
        let w = norm.witt_vector(1, &bottom).unwrap();
        assert_eq!(w.components()[0], BigInt::from(r.pow(3) % 9));
        for s in 0..9i64 {
            let y = norm.external_norm_element(&BigInt::from(s)).unwrap();
            let rs = norm.external_norm_element(&BigInt::from(r * s)).unwrap();
            assert!(norm.mackey().level(n).elements_equal(&norm.green().mul(n, &x, &y), &rs));
        }
    }
    let f2 = norm_trivial_ring(fp(2), 2).unwrap();
    let u = f2.external_norm_element(&BigInt::from(1)).unwrap();
    assert_eq!(f2.mackey().level(2).element_order(&u), Some(BigInt::from(4)));
}

#[test]
fn restriction_identity() {
    for (ring, n, j) in [
        (fp(2), 4u64, 2u64),
        (fp(2), 4, 4),
        (fp(2), 2, 1),
        (fp(3), 3, 1),
        (BaseRing::Integers, 4, 2),
        (fp(2), 6, 3),
        (BaseRing::integers_mod(4).unwrap(), 4, 2),
    ] {
        let r = check_norm_restriction_identity(ring, n, j).unwrap();
        assert!(r.passed(), "{ring} {n} {j}: {r}");
    }
    let power = box_power(norm_trivial_ring(fp(2), 2).unwrap().green(), 2).unwrap();
    assert_eq!(power.result().level(2).canonical_form(), CanonicalForm::cyclic(4));
}
