//! Green ideals and quotients by them.

use std::collections::BTreeMap;

use crate::fgab::matrix::is_zero_vector;
use crate::fgab::{Matrix, Vector};
use crate::mackey::GreenFunctor;

/// Generators, level by level, of the smallest Green ideal containing the
/// given elements: closed under products, restrictions, transfers and the
/// Weyl action.
pub fn green_ideal(r: &GreenFunctor, generators: &[(u64, Vector)]) -> BTreeMap<u64, Matrix> {
    let m = r.mackey();
    let mut rows: BTreeMap<u64, Matrix> = m.divisors().into_iter().map(|d| (d, Matrix::zeros(0, m.num_generators(d)))).collect();
    let mut work: Vec<(u64, Vector)> = generators.to_vec();
    while let Some((d, x)) = work.pop() {
        let lev = m.level(d);
        let x = lev.reduce(&x);
        if is_zero_vector(&x) || lev.in_span(&rows[&d], &x) {
            continue;
        }
        rows.get_mut(&d).unwrap().push_row(&x);
        for i in 0..lev.num_generators() {
            work.push((d, r.mul(d, &x, &lev.generator(i))));
        }
        work.push((d, m.weyl(d).apply(&x)));
        for (a, b) in m.ctx().prime_edges() {
            if b == d {
                work.push((a, m.res_edge(a, b).apply(&x)));
            }
            if a == d {
                work.push((b, m.tr_edge(a, b).apply(&x)));
            }
        }
    }
    rows
}

/// `R / I` for the Green ideal `I` generated by the given elements, on the
/// generators of `R`.
pub fn quotient_by_green_ideal(r: &GreenFunctor, generators: &[(u64, Vector)]) -> GreenFunctor {
    let ideal = green_ideal(r, generators);
    let q = std::sync::Arc::new(r.mackey().quotient(&ideal));
    GreenFunctor::from_product(q, |d, i, j| r.product_of_generators(d, i, j).clone(), |d| r.unit(d).clone())
        .expect("quotient keeps the shape of the ring structure")
}
