use super::*;
use crate::fgab::matrix::vector_from_i64;

fn ctx(n: u64) -> GroupContext {
    GroupContext::new(n).unwrap()
}

#[test]
fn burnside_c2_structure() {
    let a = burnside(ctx(2));
    let m = a.mackey();
    assert_eq!(m.level(2).canonical_form(), CanonicalForm::free(2));
    assert_eq!(m.level(1).canonical_form(), CanonicalForm::free(1));
    // basis at level 2: [C_2/C_1] (index 0), [C_2/C_2] = [pt] (index 1)
    assert_eq!(m.res_edge(1, 2).apply(&vector_from_i64(&[0, 1])), vector_from_i64(&[1]));
    assert_eq!(m.res_edge(1, 2).apply(&vector_from_i64(&[1, 0])), vector_from_i64(&[2]));
    assert_eq!(m.tr_edge(1, 2).apply(&vector_from_i64(&[1])), vector_from_i64(&[1, 0]));
    assert_eq!(a.mul(2, &vector_from_i64(&[1, 0]), &vector_from_i64(&[1, 0])), vector_from_i64(&[2, 0]));
    assert!(check_green_axioms(&a).passed());
}

#[test]
fn burnside_prime_square() {
    for p in [3u64, 5] {
        let a = burnside(ctx(p));
        assert_eq!(a.mul(p, &vector_from_i64(&[1, 0]), &vector_from_i64(&[1, 0])), vector_from_i64(&[p as i64, 0]));
    }
}

#[test]
fn axioms_hold_for_constructions() {
    for n in 1..=12 {
        let c = ctx(n);
        let a = burnside(c);
        assert!(check_green_axioms(&a).passed(), "burnside {n}: {}", check_green_axioms(&a));
        for t in c.divisors() {
            let r = representable(c, &[Orbit(t), Orbit(1)]).unwrap();
            assert!(check_axioms(&r).passed(), "representable {n}/{t}");
        }
    }
    for n in [2u64, 4, 6] {
        for ring in [ActionRing::coinduced(2), ActionRing::gaussian_conjugation(), ActionRing::dual_numbers_sign()] {
            let g = fixed_point_green(ctx(n), &ring).unwrap();
            assert!(check_green_axioms(&g).passed(), "{n}: {}", check_green_axioms(&g));
        }
    }
    let g = fixed_point_green(ctx(6), &ActionRing::coinduced(3)).unwrap();
    assert!(check_green_axioms(&g).passed());
}

#[test]
fn broken_transfer_is_caught() {
    let a = burnside(ctx(2));
    let m = a.mackey();
    let bad = MackeyFunctor::from_fn(
        ctx(2),
        |d| (**m.level(d)).clone(),
        |d, e| m.res_edge(d, e).matrix().clone(),
        |d, e| m.tr_edge(d, e).matrix().scale(&BigInt::from(3)),
        |d| m.weyl(d).matrix().clone(),
    )
    .unwrap();
    let report = check_axioms(&bad);
    assert!(!report.passed());
    assert!(report.failures.iter().any(|f| f.contains("double coset")));
}

#[test]
fn representable_of_free_orbit() {
    let r = representable(ctx(2), &[Orbit(1)]).unwrap();
    assert_eq!(r.level(2).canonical_form(), CanonicalForm::free(1));
    assert_eq!(r.level(1).canonical_form(), CanonicalForm::free(2));
    assert!(representable(ctx(4), &[Orbit(3)]).is_err());
}

#[test]
fn yoneda() {
    let c = ctx(2);
    let rep = representable(c, &[Orbit(1)]).unwrap();
    let targets = [
        burnside(c).mackey().as_ref().clone(),
        fixed_point_mackey(c, &ActionRing::coinduced(2).module).unwrap(),
        fixed_point_mackey(c, &ActionModule::trivial(FgAbGroup::cyclic(4))).unwrap(),
    ];
    for m in &targets {
        assert_eq!(hom_group(&rep, m).canonical_form(), m.level(1).canonical_form());
        let pt = representable(c, &[Orbit(2)]).unwrap();
        assert_eq!(hom_group(&pt, m).canonical_form(), m.level(2).canonical_form());
    }
}

#[test]
fn fixed_points_of_trivial_and_swap() {
    let c = ctx(2);
    let z = fixed_point_mackey(c, &ActionRing::integers().module).unwrap();
    assert_eq!(z.tr_edge(1, 2).apply(&vector_from_i64(&[1])), vector_from_i64(&[2]));
    assert_eq!(z.res_edge(1, 2).apply(&vector_from_i64(&[1])), vector_from_i64(&[1]));
    let swap = fixed_point_mackey(c, &ActionRing::coinduced(2).module).unwrap();
    assert_eq!(swap.level(2).canonical_form(), CanonicalForm::free(1));
    assert_eq!(swap.level(1).canonical_form(), CanonicalForm::free(2));
    let diag = swap.res_edge(1, 2).apply(&vector_from_i64(&[1]));
    assert_eq!(diag.len(), 2);
    assert_eq!(diag[0].clone() * &diag[0], BigInt::from(1));
    assert_eq!(diag[0], diag[1]);
    let bad = ActionModule::free(Matrix::from_i64(1, 1, &[-1])).unwrap();
    assert!(matches!(fixed_point_mackey(ctx(3), &bad), Err(crate::Error::ActionOrder(3))));
}

#[test]
fn tr_res_is_index_on_trivial_modules() {
    let c = ctx(6);
    let z = fixed_point_mackey(c, &ActionRing::integers().module).unwrap();
    for e in c.divisors() {
        for d in crate::arith::divisors(e) {
            let h = z.res(d, e).compose(&z.tr(d, e));
            assert!(h.equals(&crate::fgab::scalar_hom(z.level(e).clone(), (e / d) as i64)));
        }
    }
}

#[test]
fn restriction_functor() {
    let b4 = burnside(ctx(4));
    let r = restrict(b4.mackey(), 2).unwrap();
    assert!(check_axioms(&r).passed());
    assert_eq!(r.level(2).canonical_form(), CanonicalForm::free(2));
    let same = restrict(b4.mackey(), 4).unwrap();
    assert_eq!(same.canonical_forms(), b4.mackey().canonical_forms());
    assert!(restrict(b4.mackey(), 3).is_err());
    let swap = fixed_point_green(ctx(2), &ActionRing::coinduced(2)).unwrap();
    let bottom = swap.restrict(1).unwrap();
    assert_eq!(bottom.mackey().level(1).canonical_form(), CanonicalForm::free(2));
}

#[test]
fn simplification_is_an_isomorphism() {
    let m = fixed_point_mackey(ctx(4), &ActionModule::trivial(FgAbGroup::from_relations(2, vec![vector_from_i64(&[2, 4])]))).unwrap();
    let s = m.simplify();
    assert!(s.to_simple.is_isomorphism());
    assert!(s.from_simple.is_isomorphism());
    assert!(check_axioms(&s.functor).passed());
}

#[test]
fn json_has_stable_order() {
    let v = json::mackey_json(burnside(ctx(6)).mackey());
    let levels: Vec<&String> = v["levels"].as_object().unwrap().keys().collect();
    assert_eq!(levels, vec!["1", "2", "3", "6"]);
    assert_eq!(v["levels"]["6"]["rank"], 4);
    assert!(v["res"].as_object().unwrap().contains_key("1|2"));
}
