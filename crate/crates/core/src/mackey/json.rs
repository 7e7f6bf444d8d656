//! JSON rendering of Mackey functors on their simplified presentations.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use super::MackeyFunctor;
use crate::fgab::{CanonicalForm, Matrix};

pub const SCHEMA: &str = "mackey-witt/1";

pub fn integer(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(m.row_iter().map(|r| Value::Array(r.iter().map(integer).collect())).collect())
}

pub fn canonical_form(cf: &CanonicalForm) -> Value {
    json!({
        "invariant_factors": cf.invariant_factors.iter().map(integer).collect::<Vec<_>>(),
        "rank": cf.rank,
    })
}

/// `{"n", "levels", "res", "tr", "weyl"}` with divisors ascending.
pub fn mackey_json(m: &MackeyFunctor) -> Value {
    let s = m.simplify();
    let f = &s.functor;
    let mut levels = Map::new();
    let mut weyl = Map::new();
    for d in f.divisors() {
        levels.insert(d.to_string(), canonical_form(&f.level(d).canonical_form()));
        weyl.insert(d.to_string(), matrix(f.weyl(d).matrix()));
    }
    let mut res = Map::new();
    let mut tr = Map::new();
    for (d, e) in f.ctx().prime_edges() {
        res.insert(format!("{d}|{e}"), matrix(f.res_edge(d, e).matrix()));
        tr.insert(format!("{d}|{e}"), matrix(f.tr_edge(d, e).matrix()));
    }
    json!({
        "n": m.n(),
        "levels": levels,
        "res": res,
        "tr": tr,
        "weyl": weyl,
    })
}
