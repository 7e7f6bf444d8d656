use super::*;
use crate::fgab::CanonicalForm;
use crate::mackey::{burnside, fixed_point_green, ActionRing, GroupContext};
use crate::norm::norm_trivial_ring;
use crate::wittcore::BaseRing;

fn ctx(n: u64) -> GroupContext {
    GroupContext::new(n).unwrap()
}

fn fp(p: u64) -> BaseRing {
    BaseRing::prime_field(p).unwrap()
}

#[test]
fn integers_over_trivial_group() {
    let z = fixed_point_green(ctx(1), &ActionRing::integers()).unwrap();
    let nerve = twisted_cyclic_nerve(&z, 3).unwrap();
    assert!(nerve.simplicial.check_identities().passed());
    assert_eq!(hh(&nerve, 0).unwrap().functor.level(1).canonical_form(), CanonicalForm::free(1));
    for k in 1..3 {
        assert!(hh(&nerve, k).unwrap().functor.is_zero());
    }
    assert!(matches!(hh(&nerve, 3), Err(Error::TruncationTooShort { .. })));
}

#[test]
fn prime_field_norms() {
    for (p, n) in [(2u64, 2u64), (3, 3), (2, 4)] {
        let norm = norm_trivial_ring(fp(p), n).unwrap();
        let nerve = twisted_cyclic_nerve(norm.green(), 3).unwrap();
        let r = nerve.simplicial.check_identities();
        assert!(r.passed(), "{p} {n}: {r}");
        let h0 = hh(&nerve, 0).unwrap();
        assert_eq!(h0.functor.canonical_forms(), norm.mackey().canonical_forms());
        for k in 1..=2 {
            assert!(hh(&nerve, k).unwrap().functor.is_zero(), "{p} {n} HH_{k}");
        }
        for d in norm.mackey().divisors() {
            assert!(nerve.simplicial.face(1, 0).component(d).equals(nerve.simplicial.face(1, 1).component(d)));
        }
    }
}

#[test]
fn swap_twist_is_visible() {
    let r = fixed_point_green(ctx(2), &ActionRing::coinduced(2)).unwrap();
    let nerve = twisted_cyclic_nerve(&r, 2).unwrap();
    assert!(nerve.simplicial.check_identities().passed());
    assert!(!nerve.simplicial.face(1, 0).component(1).equals(nerve.simplicial.face(1, 1).component(1)));
    let report = check_hh0_against_oracle(&nerve).unwrap();
    assert!(report.passed(), "{report}");
    assert!(hh(&nerve, 0).unwrap().functor.is_zero());
}

#[test]
fn degree_zero_oracle() {
    for n in [2u64, 3, 4] {
        let c = ctx(n);
        let mut rings = vec![burnside(c), fixed_point_green(c, &ActionRing::gaussian_conjugation()).ok().unwrap_or_else(|| burnside(c))];
        if n % 2 == 0 {
            rings.push(fixed_point_green(c, &ActionRing::dual_numbers_sign()).unwrap());
            rings.push(fixed_point_green(c, &ActionRing::coinduced(2)).unwrap());
        }
        rings.push(norm_trivial_ring(BaseRing::integers_mod(4).unwrap(), n).unwrap().green().clone());
        for r in rings {
            let nerve = twisted_cyclic_nerve(&r, 1).unwrap();
            let report = check_hh0_against_oracle(&nerve).unwrap();
            assert!(report.passed(), "{n}: {report}");
        }
    }
}

#[test]
fn subdivision() {
    let norm = norm_trivial_ring(fp(2), 2).unwrap();
    let nerve = twisted_cyclic_nerve(norm.green(), 3).unwrap();
    let sd1 = nerve.simplicial.subdivide(1, 3).unwrap();
    for j in 1..=3 {
        for i in 0..=j {
            assert!(sd1.face(j, i).equals(nerve.simplicial.face(j, i)));
        }
    }
    let sd2 = nerve.simplicial.subdivide(2, 1).unwrap();
    assert!(sd2.check_identities().passed());
    assert!(matches!(nerve.simplicial.subdivide(2, 2), Err(Error::TruncationTooShort { .. })));
    let r = compare_restricted_nerve(fp(2), 4, 2, 2).unwrap();
    assert!(r.passed(), "{r}");
    let r = compare_restricted_nerve(fp(2), 6, 3, 1).unwrap();
    assert!(r.passed(), "{r}");
}
