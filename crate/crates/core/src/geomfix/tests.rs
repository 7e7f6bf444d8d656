use super::*;
use crate::fgab::CanonicalForm;
use crate::green::box_product;
use crate::mackey::{burnside, check_axioms, check_green_axioms, fixed_point_mackey, representable, ActionRing, Orbit};

fn ctx(n: u64) -> GroupContext {
    GroupContext::new(n).unwrap()
}

fn fp(p: u64) -> BaseRing {
    BaseRing::IntegersMod(p)
}

fn samples(n: u64) -> Vec<MackeyFunctor> {
    let c = ctx(n);
    vec![
        (**burnside(c).mackey()).clone(),
        fixed_point_mackey(c, &ActionRing::integers().module).unwrap(),
        fixed_point_mackey(c, &ActionRing::trivial_cyclic(4).module).unwrap(),
        representable(c, &[Orbit(1)]).unwrap(),
        (**norm_trivial_ring(fp(2), n).unwrap().mackey()).clone(),
    ]
}

#[test]
fn tilde_ef_basics() {
    for n in [1u64, 2, 3, 4, 6] {
        for m in samples(n) {
            assert_eq!(tilde_ef(&m, 1).unwrap().canonical_forms(), m.canonical_forms());
            for k in divisors(n) {
                let t = tilde_ef(&m, k).unwrap();
                assert!(check_axioms(&t).passed(), "{n} {k}");
                assert_eq!(tilde_ef(&t, k).unwrap().canonical_forms(), t.canonical_forms());
                for d in divisors(n).into_iter().filter(|d| d % k != 0) {
                    assert!(t.level(d).is_trivial());
                }
            }
        }
    }
    let a = burnside(ctx(3));
    let t = tilde_ef(a.mackey(), 3).unwrap();
    assert_eq!(t.level(3).canonical_form(), CanonicalForm::free(1));
    assert!(t.level(1).is_trivial());
}

#[test]
fn phi_of_burnside_and_representables() {
    for p in [2u64, 3, 5] {
        let f = phi(burnside(ctx(p)).mackey(), p).unwrap();
        assert_eq!(f.n(), 1);
        assert_eq!(f.level(1).canonical_form(), CanonicalForm::free(1));
    }
    for n in [2u64, 4, 6] {
        for k in divisors(n) {
            let f = phi_green(&burnside(ctx(n)), k).unwrap();
            assert!(check_green_axioms(&f).passed());
            assert_eq!(f.mackey().canonical_forms(), burnside(ctx(n / k)).mackey().canonical_forms(), "{n} {k}");
            let free = representable(ctx(n), &[Orbit(1)]).unwrap();
            assert_eq!(phi(&free, k).unwrap().is_zero(), k > 1);
        }
    }
}

#[test]
fn phi_of_norms_is_the_smaller_norm() {
    for (ring, n, k) in
        [(fp(2), 2, 2), (fp(2), 4, 2), (fp(2), 8, 2), (fp(3), 9, 3), (fp(2), 6, 3), (BaseRing::Integers, 6, 2), (BaseRing::IntegersMod(4), 4, 2)]
    {
        let (big, small, iso) = norm_truncation(ring, n, k).unwrap();
        assert!(iso.is_isomorphism(), "{ring} {n} {k}");
        let g = phi_green(&big, k).unwrap();
        for d in divisors(n / k) {
            for i in 0..g.mackey().num_generators(d) {
                for j in 0..g.mackey().num_generators(d) {
                    let lhs = iso.apply(d, g.product_of_generators(d, i, j));
                    let rhs = small.mul(d, &iso.component(d).image_of_generator(i), &iso.component(d).image_of_generator(j));
                    assert!(small.mackey().level(d).elements_equal(&lhs, &rhs));
                }
            }
        }
    }
    // The top map is the reduction Z/8 -> Z/4.
    let (_, small, iso) = norm_truncation(fp(2), 4, 2).unwrap();
    assert_eq!(iso.source().level(2).canonical_form(), CanonicalForm::cyclic(4));
    assert_eq!(small.mackey().level(2).canonical_form(), CanonicalForm::cyclic(4));
}

#[test]
fn phi_is_monoidal_on_levels() {
    for n in [2u64, 3, 4, 6] {
        let s = samples(n);
        for (a, b) in [(0, 1), (1, 2), (3, 4), (2, 4)] {
            let bx = box_product(&s[a], &s[b]).unwrap();
            for k in divisors(n) {
                let lhs = phi(bx.result(), k).unwrap();
                let rhs = box_product(&phi(&s[a], k).unwrap(), &phi(&s[b], k).unwrap()).unwrap();
                assert_eq!(lhs.canonical_forms(), rhs.result().canonical_forms(), "{n} {a} {b} {k}");
            }
        }
    }
}

#[test]
fn cyclotomic_comparisons() {
    let r = cyclotomic_check_norm(fp(2), 4, 2, 2).unwrap();
    assert!(r.passed(), "{r}");
    let r = cyclotomic_check_norm(fp(3), 3, 3, 1).unwrap();
    assert!(r.passed(), "{r}");
    let r = cyclotomic_check_green(&burnside(ctx(4)), 2, 2).unwrap();
    assert!(r.passed(), "{r}");
    let r = cyclotomic_check_norm(fp(2), 4, 1, 1).unwrap();
    assert!(r.passed(), "{r}");
    let r = cyclotomic_check_green(&burnside(ctx(2)), 1, 1).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn tr_tower_of_prime_field() {
    for p in [2u64, 3] {
        let t = tr_tower(fp(p), p, 3, 0).unwrap();
        let groups: Vec<CanonicalForm> = t.stages.iter().map(|s| s.group.clone()).collect();
        assert_eq!(groups, vec![CanonicalForm::cyclic(p), CanonicalForm::cyclic(p * p), CanonicalForm::cyclic(p * p * p)]);
        assert_eq!(t.limit, TowerLimit { description: format!("Z_{p}"), precision: 3 });
        for m in &t.maps {
            assert_eq!(m.rows(), 1);
            assert_eq!(m[(0, 0)].clone() % BigInt::from(p), BigInt::from(1));
        }
    }
    for k in [1usize, 2] {
        let t = tr_tower(fp(2), 2, 3, k).unwrap();
        assert!(t.stages.iter().all(|s| s.group.is_zero()), "{k}");
        assert_eq!(t.limit.description, "0");
    }
    assert!(tr_tower(fp(2), 4, 2, 0).is_err());
    let j = tr_tower(fp(2), 2, 2, 0).unwrap().to_json();
    assert_eq!(j["stages"][1]["n"], 2);
    assert_eq!(j["limit"]["precision"], 2);
}
