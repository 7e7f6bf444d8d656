use super::*;
use crate::arith::divisors;
use crate::fgab::CanonicalForm;
use crate::green::unit_isomorphism;
use crate::hochschild::{hh, simplicial_homology, twisted_cyclic_nerve};
use crate::mackey::{burnside, check_axioms, check_green_axioms, fixed_point_green};

fn ctx(n: u64) -> GroupContext {
    GroupContext::new(n).unwrap()
}

fn monoids(n: u64) -> Vec<PointedGMonoid> {
    let mut out = vec![PointedGMonoid::trivial(n), PointedGMonoid::dual_numbers(n)];
    if n.is_multiple_of(2) {
        out.push(PointedGMonoid::swapped_square_zero(n).unwrap());
    }
    out
}

#[test]
fn monoid_validation_and_json() {
    let text = r#"{"elements": ["0", "1", "x"], "zero": "0", "one": "1",
        "table": [["0","0","0"],["0","1","x"],["0","x","0"]], "action": ["0","1","x"]}"#;
    assert_eq!(PointedGMonoid::from_json(2, text).unwrap(), PointedGMonoid::dual_numbers(2));
    let not_unital = r#"{"elements": ["0", "1", "x"], "zero": "0", "one": "1",
        "table": [["0","0","0"],["0","1","0"],["0","x","0"]], "action": ["0","1","x"]}"#;
    assert!(PointedGMonoid::from_json(1, not_unital).is_err());
    let bad_action = r#"{"elements": ["0", "1", "x"], "zero": "0", "one": "1",
        "table": [["0","0","0"],["0","1","x"],["0","x","0"]], "action": ["0","x","1"]}"#;
    assert!(PointedGMonoid::from_json(2, bad_action).is_err());
    assert!(PointedGMonoid::swapped_square_zero(3).is_err());
    assert!(PointedGMonoid::from_json(1, "{").is_err());
    assert_eq!(monoid_orbits(&PointedGMonoid::swapped_square_zero(2).unwrap()), vec![("1".to_string(), 2), ("x".to_string(), 1)]);
}

#[test]
fn burnside_monoid_rings() {
    for n in [1u64, 2, 3, 4] {
        for m in monoids(n) {
            let a = burnside_monoid_ring(&m).unwrap();
            assert!(check_green_axioms(&a).passed(), "{n} {m:?}");
        }
        let a = burnside_monoid_ring(&PointedGMonoid::trivial(n)).unwrap();
        assert_eq!(a.mackey().canonical_forms(), burnside(ctx(n)).mackey().canonical_forms());
    }
}

#[test]
fn direct_and_box_constructions_agree() {
    let rings = [ActionRing::integers(), ActionRing::trivial_cyclic(3), ActionRing::coinduced(2), ActionRing::dual_numbers_sign()];
    for n in [1u64, 2, 4] {
        for a in rings.iter().filter(|a| n % 2 == 0 || a.module.action.is_identity()) {
            let r = fixed_point_green(ctx(n), a).unwrap();
            for m in monoids(n) {
                let direct = monoid_algebra_fixed(a, &m).unwrap();
                let boxed = monoid_algebra(&r, &m).unwrap();
                assert!(check_green_axioms(&boxed).passed());
                assert_eq!(direct.mackey().canonical_forms(), boxed.mackey().canonical_forms(), "{n} {m:?}");
                let (hd, hb) = (twisted_cyclic_nerve(&direct, 1).unwrap(), twisted_cyclic_nerve(&boxed, 1).unwrap());
                assert_eq!(hh(&hd, 0).unwrap().functor.canonical_forms(), hh(&hb, 0).unwrap().functor.canonical_forms());
            }
        }
    }
    // Over the Burnside functor the unit isomorphism is multiplicative.
    for n in [2u64, 4] {
        for m in monoids(n) {
            let a = burnside_monoid_ring(&m).unwrap();
            let (bp, h) = unit_isomorphism(a.mackey()).unwrap();
            assert!(h.is_isomorphism());
            let boxed = monoid_algebra(&burnside(ctx(n)), &m).unwrap();
            assert_eq!(bp.result().canonical_forms(), boxed.mackey().canonical_forms());
        }
    }
}

#[test]
fn dual_numbers_levels() {
    let r = fixed_point_green(ctx(1), &ActionRing::integers()).unwrap();
    let d = monoid_algebra(&r, &PointedGMonoid::dual_numbers(1)).unwrap();
    assert_eq!(d.mackey().level(1).canonical_form(), CanonicalForm::free(2));
    let (s, to, _) = d.simplify();
    let x = to.apply(1, &[BigInt::from(0), BigInt::from(1)]);
    let one = s.unit(1).clone();
    assert!(!s.mackey().level(1).elements_equal(&x, &one));
    let r2 = burnside(ctx(2));
    let d2 = monoid_algebra(&r2, &PointedGMonoid::dual_numbers(2)).unwrap();
    for dd in divisors(2) {
        let base = r2.mackey().level(dd).canonical_form();
        let doubled = CanonicalForm::free(2 * base.rank);
        assert_eq!(d2.mackey().level(dd).canonical_form(), doubled);
    }
}

#[test]
fn cyclic_nerves() {
    let point = cyclic_nerve_monoid(&PointedGMonoid::trivial(3), 3).unwrap();
    assert!(point.sets.iter().all(|s| s.len() == 2));
    let dual = cyclic_nerve_monoid(&PointedGMonoid::dual_numbers(1), 3).unwrap();
    assert_eq!(dual.sets[1].len(), 5);
    assert!(dual.check().passed());
    let swap = PointedGMonoid::swapped_square_zero(2).unwrap();
    let x = cyclic_nerve_monoid(&swap, 3).unwrap();
    assert!(x.check().passed(), "{}", x.check());
    // d_1 (1, x) = (g x * 1) = y.
    let p = x.labels[1].iter().position(|t| t == &vec![1, 2]).unwrap();
    let q = x.faces[1][1][p];
    assert_eq!(x.labels[0][q], vec![3]);
}

#[test]
fn cellular_chains_of_small_sets() {
    for n in [1u64, 2, 4] {
        for m in monoids(n) {
            let (c, _) = cellular_chains(&cyclic_nerve_monoid(&m, 3).unwrap()).unwrap();
            assert!(c.check_identities().passed(), "{n} {m:?}");
            for j in 0..=c.max_degree() {
                assert!(check_axioms(c.object(j)).passed());
            }
        }
    }
    let (c, _) = cellular_chains(&cyclic_nerve_monoid(&PointedGMonoid::trivial(2), 2).unwrap()).unwrap();
    assert_eq!(simplicial_homology(&c, 0).unwrap().functor.canonical_forms(), burnside(ctx(2)).mackey().canonical_forms());
    assert!(simplicial_homology(&c, 1).unwrap().functor.is_zero());
    let (c, _) = cellular_chains(&cyclic_nerve_monoid(&PointedGMonoid::dual_numbers(1), 2).unwrap()).unwrap();
    assert_eq!(simplicial_homology(&c, 0).unwrap().functor.level(1).canonical_form(), CanonicalForm::free(2));
}

#[test]
fn splitting() {
    let z = fixed_point_green(ctx(1), &ActionRing::integers()).unwrap();
    let rep = splitting_check(&z, &PointedGMonoid::dual_numbers(1), 1).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.degrees[0].1[&1], CanonicalForm::free(2));
    assert_eq!(rep.degrees[1].1[&1], CanonicalForm::from_parts(&[2], 1));
    let rep = splitting_check(&z, &PointedGMonoid::trivial(1), 1).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.degrees[0].1[&1], CanonicalForm::free(1));
    let a = burnside(ctx(2));
    let rep = splitting_check(&a, &PointedGMonoid::dual_numbers(2), 0).unwrap();
    assert!(rep.passed(), "{rep:?}");
    let rep = splitting_check(&a, &PointedGMonoid::swapped_square_zero(2).unwrap(), 0).unwrap();
    assert!(rep.passed(), "{rep:?}");
}
