//! Universal Witt polynomials, solved symbolically from the ghost equations
//! and memoized per operation and index.
//!
//! Variable `2e` stands for the component `a_e` of the first operand and
//! `2e + 1` for `b_e` of the second.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{divisors, pow_mod};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WittOp {
    Sum,
    Product,
    /// `F_r`, a polynomial in the `a` variables only.
    Frobenius(u64),
}

pub fn var_a(e: u64) -> u32 {
    (2 * e) as u32
}

pub fn var_b(e: u64) -> u32 {
    (2 * e + 1) as u32
}

/// `gh_d = sum_{e | d} e * x_e^{d/e}` in the variables picked by `var`.
fn ghost_poly(d: u64, var: fn(u64) -> u32) -> Poly {
    let mut p = Poly::zero();
    for e in divisors(d) {
        p = p.add(&Poly::var(var(e)).pow((d / e) as u32).scale(&BigInt::from(e)));
    }
    p
}

type Cache<K, V> = OnceLock<Mutex<HashMap<K, Arc<V>>>>;

static POLYS: Cache<(WittOp, u64), Poly> = OnceLock::new();
static COMPILED: Cache<(WittOp, u64, u64), CompiledPoly> = OnceLock::new();

fn lookup<K: std::hash::Hash + Eq + Clone, V>(cache: &Cache<K, V>, key: &K, build: impl FnOnce() -> V) -> Arc<V> {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(key) {
        return v.clone();
    }
    // Built outside the lock: building recurses into the same cache.
    let v = Arc::new(build());
    map.lock().unwrap().entry(key.clone()).or_insert(v).clone()
}

/// The universal polynomial for component `d` of the given operation.
pub fn universal(op: WittOp, d: u64) -> Arc<Poly> {
    lookup(&POLYS, &(op, d), || {
        let mut target = match op {
            WittOp::Sum => ghost_poly(d, var_a).add(&ghost_poly(d, var_b)),
            WittOp::Product => ghost_poly(d, var_a).mul(&ghost_poly(d, var_b)),
            WittOp::Frobenius(r) => ghost_poly(r * d, var_a),
        };
        for e in divisors(d) {
            if e == d {
                continue;
            }
            let lower = universal(op, e);
            target = target.sub(&lower.pow((d / e) as u32).scale(&BigInt::from(e)));
        }
        target.div_exact(&BigInt::from(d)).unwrap_or_else(|| panic!("Witt polynomial {op:?} at {d} has non-integral coefficients"))
    })
}

/// A universal polynomial with coefficients reduced mod `m`.
pub struct CompiledPoly {
    modulus: u64,
    terms: Vec<(u64, Vec<(u32, u32)>)>,
}

impl CompiledPoly {
    pub fn eval(&self, value: impl Fn(u32) -> u64) -> u64 {
        let m = self.modulus as u128;
        let mut acc = 0u128;
        for (c, mono) in &self.terms {
            let mut t = *c as u128;
            for &(v, e) in mono {
                t = t * pow_mod(value(v), e as u64, self.modulus) as u128 % m;
                if t == 0 {
                    break;
                }
            }
            acc = (acc + t) % m;
        }
        acc as u64
    }
}

pub fn compiled(op: WittOp, d: u64, m: u64) -> Arc<CompiledPoly> {
    lookup(&COMPILED, &(op, d, m), || {
        let p = universal(op, d);
        let modulus = BigInt::from(m);
        let terms = p
            .terms()
            .filter_map(|(mono, c)| {
                let c = c.mod_floor(&modulus).to_u64().unwrap();
                (c != 0).then(|| (c, mono.clone()))
            })
            .collect();
        CompiledPoly { modulus: m, terms }
    })
}
