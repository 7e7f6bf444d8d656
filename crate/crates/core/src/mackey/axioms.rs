//! Diagnostic checks of the Mackey and Green functor axioms.

use std::fmt;

use super::{GreenFunctor, MackeyFunctor};
use crate::arith::{divisors, gcd, lcm, prime_factors};
use crate::fgab::{sum_of, AbHom};

/// Failed identities, each with a short witness description.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, s: String) {
        self.failures.push(s);
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass");
        }
        write!(f, "fail: {}", self.failures.join("; "))
    }
}

/// Every maximal chain of prime steps from `d` up to `e`.
fn prime_paths(d: u64, e: u64) -> Vec<Vec<u64>> {
    if d == e {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for p in prime_factors(e / d) {
        for mut rest in prime_paths(d * p, e) {
            rest.insert(0, d);
            out.push(rest);
        }
    }
    out
}

pub fn check_axioms(m: &MackeyFunctor) -> AxiomReport {
    let mut r = AxiomReport::default();
    let n = m.n();
    for d in m.divisors() {
        let w = m.weyl(d);
        if !w.is_well_defined() {
            r.fail(format!("weyl({d}) is not well defined"));
            continue;
        }
        let full = AbHom::new_unchecked(m.level(d).clone(), m.level(d).clone(), w.matrix().pow(n / d));
        if !full.equals(&AbHom::identity(m.level(d).clone())) {
            r.fail(format!("weyl({d})^{} is not the identity", n / d));
        }
    }
    for (d, e) in m.ctx().prime_edges() {
        let (res, tr) = (m.res_edge(d, e), m.tr_edge(d, e));
        if !res.is_well_defined() {
            r.fail(format!("res {d}|{e} is not well defined"));
        }
        if !tr.is_well_defined() {
            r.fail(format!("tr {d}|{e} is not well defined"));
        }
        if !m.weyl(e).compose(res).equals(&res.compose(m.weyl(d))) {
            r.fail(format!("res {d}|{e} does not commute with weyl"));
        }
        if !m.weyl(d).compose(tr).equals(&tr.compose(m.weyl(e))) {
            r.fail(format!("tr {d}|{e} does not commute with weyl"));
        }
    }
    if !r.passed() {
        return r;
    }
    // Path independence of composites.
    for e in m.divisors() {
        for d in divisors(e) {
            let paths = prime_paths(d, e);
            if paths.len() < 2 {
                continue;
            }
            let compose_res = |p: &Vec<u64>| {
                let mut h = AbHom::identity(m.level(e).clone());
                for w in p.windows(2).rev() {
                    h = h.compose(m.res_edge(w[0], w[1]));
                }
                h
            };
            let compose_tr = |p: &Vec<u64>| {
                let mut h = AbHom::identity(m.level(d).clone());
                for w in p.windows(2) {
                    h = h.compose(m.tr_edge(w[0], w[1]));
                }
                h
            };
            let (r0, t0) = (compose_res(&paths[0]), compose_tr(&paths[0]));
            for p in &paths[1..] {
                if !compose_res(p).equals(&r0) {
                    r.fail(format!("res {d}|{e} depends on the path {p:?}"));
                }
                if !compose_tr(p).equals(&t0) {
                    r.fail(format!("tr {d}|{e} depends on the path {p:?}"));
                }
            }
        }
    }
    // Double coset formula: res^e_a tr^e_b = sum_gamma tr^a_g gamma res^b_g.
    for e in m.divisors() {
        for a in divisors(e) {
            for b in divisors(e) {
                let g = gcd(a, b);
                let lhs = m.tr(b, e).compose(&m.res(a, e));
                let terms: Vec<AbHom> = (0..e / lcm(a, b)).map(|j| m.res(g, b).compose(&m.weyl_power(g, (n / e) * j)).compose(&m.tr(g, a))).collect();
                let rhs = sum_of(&terms, m.level(b).clone(), m.level(a).clone());
                if !lhs.equals(&rhs) {
                    r.fail(format!("double coset formula fails for a={a}, b={b} inside {e}"));
                }
            }
        }
    }
    r
}

/// Mackey axioms plus the ring axioms, multiplicativity of restriction and
/// Weyl maps, and Frobenius reciprocity.
pub fn check_green_axioms(g: &GreenFunctor) -> AxiomReport {
    let m = g.mackey();
    let mut r = check_axioms(m);
    for d in m.divisors() {
        let lev = m.level(d);
        let k = lev.num_generators();
        let gen = |i: usize| lev.generator(i);
        for rel in lev.relations().row_iter() {
            for j in 0..k {
                if !lev.is_zero(&g.mul(d, rel, &gen(j))) {
                    r.fail(format!("level {d}: product does not respect relations"));
                }
            }
        }
        let one = g.unit(d);
        let w = m.weyl(d);
        if !lev.elements_equal(&w.apply(one), one) {
            r.fail(format!("level {d}: weyl does not fix the unit"));
        }
        for i in 0..k {
            let x = gen(i);
            if !lev.elements_equal(&g.mul(d, one, &x), &x) {
                r.fail(format!("level {d}: unit law fails on generator {i}"));
            }
            for j in 0..k {
                let y = gen(j);
                let xy = g.mul(d, &x, &y);
                if !lev.elements_equal(&xy, &g.mul(d, &y, &x)) {
                    r.fail(format!("level {d}: generators {i},{j} do not commute"));
                }
                if !lev.elements_equal(&w.apply(&xy), &g.mul(d, &w.apply(&x), &w.apply(&y))) {
                    r.fail(format!("level {d}: weyl is not multiplicative on {i},{j}"));
                }
                for l in 0..k {
                    let z = gen(l);
                    if !lev.elements_equal(&g.mul(d, &xy, &z), &g.mul(d, &x, &g.mul(d, &y, &z))) {
                        r.fail(format!("level {d}: associativity fails on {i},{j},{l}"));
                    }
                }
            }
        }
    }
    for (d, e) in m.ctx().prime_edges() {
        let (ld, le) = (m.level(d), m.level(e));
        let res = m.res_edge(d, e);
        let tr = m.tr_edge(d, e);
        if !ld.elements_equal(&res.apply(g.unit(e)), g.unit(d)) {
            r.fail(format!("res {d}|{e} does not preserve the unit"));
        }
        for i in 0..le.num_generators() {
            let y = le.generator(i);
            for j in 0..le.num_generators() {
                let z = le.generator(j);
                if !ld.elements_equal(&res.apply(&g.mul(e, &y, &z)), &g.mul(d, &res.apply(&y), &res.apply(&z))) {
                    r.fail(format!("res {d}|{e} is not multiplicative on {i},{j}"));
                }
            }
            for j in 0..ld.num_generators() {
                let x = ld.generator(j);
                let lhs = tr.apply(&g.mul(d, &x, &res.apply(&y)));
                let rhs = g.mul(e, &tr.apply(&x), &y);
                if !le.elements_equal(&lhs, &rhs) {
                    r.fail(format!("Frobenius reciprocity fails on edge {d}|{e}"));
                }
            }
        }
    }
    r
}
