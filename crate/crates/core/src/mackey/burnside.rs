//! Representable functors `A_T` and the Burnside Green functor.
//!
//! `C_n` is written additively as `Z/n` with `g = 1`, so the orbit
//! `C_n/C_t` is `Z/(n/t)`. A basis element of `A_T(C_n/C_d)` is an
//! isomorphism class of transitive `C_d`-sets over `T`: an orbit index `i`,
//! a stabilizer `C_c` with `c | gcd(d, t_i)`, and the image `x` of the base
//! point, taken modulo the `C_d`-action, so `x` lies in `Z/(n/lcm(d, t_i))`.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{GreenFunctor, GroupContext, MackeyFunctor};
use crate::arith::{divisors, gcd, lcm};
use crate::error::{Error, Result};
use crate::fgab::matrix::zero_vector;
use crate::fgab::{FgAbGroup, Matrix};

/// The orbit `C_n/C_t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orbit(pub u64);

/// `(orbit index, c, x)`
pub type SpanCell = (usize, u64, u64);

pub(crate) struct RepBasis {
    pub cells: Vec<SpanCell>,
    index: HashMap<SpanCell, usize>,
}

impl RepBasis {
    pub fn new(n: u64, orbits: &[Orbit], d: u64) -> Self {
        let mut cells = Vec::new();
        for (i, &Orbit(t)) in orbits.iter().enumerate() {
            for c in divisors(gcd(d, t)) {
                for x in 0..n / lcm(d, t) {
                    cells.push((i, c, x));
                }
            }
        }
        let index = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        RepBasis { cells, index }
    }

    pub fn index(&self, cell: SpanCell) -> usize {
        self.index[&cell]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }
}

/// Basis cells of `A_T(C_n/C_d)`, in generator order.
pub fn representable_cells(n: u64, orbits: &[Orbit], d: u64) -> Vec<SpanCell> {
    RepBasis::new(n, orbits, d).cells
}

/// The functor represented by the finite `C_n`-set `T`, a disjoint union of orbits.
pub fn representable(ctx: GroupContext, orbits: &[Orbit]) -> Result<MackeyFunctor> {
    let n = ctx.n();
    for &Orbit(t) in orbits {
        ctx.check_divisor(t)?;
    }
    let bases: HashMap<u64, RepBasis> = ctx.divisors().into_iter().map(|d| (d, RepBasis::new(n, orbits, d))).collect();
    let ts: Vec<u64> = orbits.iter().map(|o| o.0).collect();
    let res = |d: u64, e: u64| {
        let (be, bd) = (&bases[&e], &bases[&d]);
        let mut m = Matrix::zeros(be.len(), bd.len());
        for (row, &(i, c, x)) in be.cells.iter().enumerate() {
            let t = ts[i];
            let g = gcd(d, c);
            for j in 0..e / lcm(d, c) {
                let y = (x + j * (n / e)) % (n / lcm(d, t));
                m[(row, bd.index((i, g, y)))] += 1;
            }
        }
        m
    };
    let tr = |d: u64, e: u64| {
        let (bd, be) = (&bases[&d], &bases[&e]);
        let mut m = Matrix::zeros(bd.len(), be.len());
        for (row, &(i, c, x)) in bd.cells.iter().enumerate() {
            let y = x % (n / lcm(e, ts[i]));
            m[(row, be.index((i, c, y)))] += 1;
        }
        m
    };
    let weyl = |d: u64| {
        let b = &bases[&d];
        let mut m = Matrix::zeros(b.len(), b.len());
        for (row, &(i, c, x)) in b.cells.iter().enumerate() {
            let y = (x + 1) % (n / lcm(d, ts[i]));
            m[(row, b.index((i, c, y)))] += 1;
        }
        m
    };
    MackeyFunctor::from_fn(ctx, |d| FgAbGroup::free(bases[&d].len()), res, tr, weyl)
}

/// The Burnside Green functor `A = A_{C_n/C_n}`: level `d` has basis
/// `[C_d/C_c]` for `c | d`, multiplied by decomposing products into orbits.
pub fn burnside(ctx: GroupContext) -> GreenFunctor {
    let m = Arc::new(representable(ctx, &[Orbit(ctx.n())]).expect("the point is an orbit"));
    let product = |d: u64, i: usize, j: usize| {
        let divs = divisors(d);
        let (a, b) = (divs[i], divs[j]);
        let g = gcd(a, b);
        let mut v = zero_vector(divs.len());
        v[divs.iter().position(|&c| c == g).unwrap()] = BigInt::from(d * g / (a * b));
        v
    };
    let unit = |d: u64| {
        let k = divisors(d).len();
        let mut v = zero_vector(k);
        v[k - 1] = BigInt::from(1);
        v
    };
    GreenFunctor::from_product(m, product, unit).expect("Burnside structure constants")
}

/// Validate a list of orbit parameters against the group.
pub fn orbits_from(ctx: GroupContext, ts: &[u64]) -> Result<Vec<Orbit>> {
    ts.iter().map(|&t| if ctx.n().is_multiple_of(t) { Ok(Orbit(t)) } else { Err(Error::Divisibility(t, ctx.n())) }).collect()
}
