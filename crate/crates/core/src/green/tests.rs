use super::*;
use crate::fgab::matrix::vector_from_i64;
use crate::fgab::CanonicalForm;
use crate::mackey::{burnside, check_axioms, check_green_axioms, fixed_point_green, fixed_point_mackey, representable, ActionRing, Orbit};

fn ctx(n: u64) -> GroupContext {
    GroupContext::new(n).unwrap()
}

fn samples(n: u64) -> Vec<Arc<MackeyFunctor>> {
    let c = ctx(n);
    vec![
        burnside(c).mackey().clone(),
        Arc::new(fixed_point_mackey(c, &ActionRing::integers().module).unwrap()),
        Arc::new(fixed_point_mackey(c, &ActionRing::trivial_cyclic(4).module).unwrap()),
        Arc::new(representable(c, &[Orbit(1)]).unwrap()),
    ]
}

#[test]
fn unit_isomorphism_holds() {
    for n in [1u64, 2, 3, 4, 6] {
        for m in samples(n) {
            let (bp, h) = unit_isomorphism(&m).unwrap();
            assert!(check_axioms(bp.result()).passed(), "{n}");
            assert!(h.is_natural(), "{n}: {:?}", h.naturality_failures());
            assert!(h.is_isomorphism(), "{n} {m:?}");
        }
    }
    let swap = Arc::new(fixed_point_mackey(ctx(2), &ActionRing::coinduced(2).module).unwrap());
    assert!(unit_isomorphism(&swap).unwrap().1.is_isomorphism());
}

#[test]
fn symmetry_isomorphism_holds() {
    for n in [2u64, 4] {
        let s = samples(n);
        for (a, b) in [(0, 1), (1, 2), (3, 1), (2, 3)] {
            let (_, _, h) = symmetry_isomorphism(&s[a], &s[b]).unwrap();
            assert!(h.is_isomorphism(), "{n}: {a} {b}");
        }
    }
}

#[test]
fn representable_products() {
    for (n, t1, t2) in
        [(2u64, vec![1u64], vec![1u64]), (2, vec![2], vec![1]), (3, vec![1], vec![1]), (3, vec![1, 3], vec![1]), (4, vec![2], vec![1]), (6, vec![2], vec![3])]
    {
        let o1: Vec<Orbit> = t1.iter().map(|&t| Orbit(t)).collect();
        let o2: Vec<Orbit> = t2.iter().map(|&t| Orbit(t)).collect();
        let (bp, target, h) = representable_product_isomorphism(ctx(n), &o1, &o2).unwrap();
        assert!(h.is_isomorphism(), "{n} {t1:?} {t2:?}: {:?}", h.naturality_failures());
        assert_eq!(bp.result().canonical_forms(), target.canonical_forms());
    }
}

#[test]
fn constant_box_constant() {
    let c = ctx(2);
    let z = fixed_point_mackey(c, &ActionRing::integers().module).unwrap();
    let bp = box_product(&z, &z).unwrap();
    assert_eq!(bp.result().canonical_forms(), z.canonical_forms());
    assert!(check_axioms(bp.result()).passed());
}

#[test]
fn burnside_square() {
    let a = burnside(ctx(2));
    let p = box_power(&a, 2).unwrap();
    assert_eq!(p.result().canonical_forms(), a.mackey().canonical_forms());
    let g = p.green();
    assert!(check_green_axioms(&g).passed(), "{}", check_green_axioms(&g));
    let one = box_power(&a, 1).unwrap();
    assert_eq!(one.result().canonical_forms(), a.mackey().canonical_forms());
    let m = p.multiply_adjacent(&one, 0);
    assert!(m.is_isomorphism());
}

#[test]
fn green_box_axioms() {
    for n in [2u64, 3, 4] {
        let c = ctx(n);
        let a = burnside(c);
        let r = fixed_point_green(c, &ActionRing::coinduced(2)).ok();
        let z = fixed_point_green(c, &ActionRing::trivial_cyclic(3)).unwrap();
        let gb = green_box(&[&a, &z]).unwrap();
        assert!(check_green_axioms(&gb.green).passed(), "{n}: {}", check_green_axioms(&gb.green));
        if let Some(r) = r {
            let gb = green_box(&[&r, &r]).unwrap();
            assert!(check_green_axioms(&gb.green).passed(), "{n}: {}", check_green_axioms(&gb.green));
        }
    }
}

#[test]
fn burnside_mod_free_orbit() {
    let a = burnside(ctx(2));
    let q = quotient_by_green_ideal(&a, &[(2, vector_from_i64(&[1, 0]))]);
    let f = q.mackey().canonical_forms();
    assert_eq!(f[&2], CanonicalForm::free(1));
    assert_eq!(f[&1], CanonicalForm::cyclic(2));
    assert!(check_green_axioms(&q).passed());
}
