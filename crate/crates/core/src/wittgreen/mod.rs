//! Witt vectors of Green functors, `W_G(R) = HH_0`, with ghost coordinates
//! and Teichmüller lifts.
//!
//! For a ring `R` with trivial action the input is the norm `N_e^{C_n} R`;
//! a commutative Green functor over `C_n` may also be given directly.
//! The ghost coordinate at `C_d` restricts to level `d` and divides out the
//! transfers from proper subgroups. Only the top class is computed, not the
//! whole coinduced object.

use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::fgab::matrix::unit_vector;
use crate::fgab::{AbHom, FgAbGroup, Matrix, Vector};
use crate::hochschild::{hh, twisted_cyclic_nerve, HomologyFunctor, TwistedNerve};
use crate::mackey::json::{integer, mackey_json, SCHEMA};
use crate::mackey::{GreenFunctor, MackeyFunctor};
use crate::norm::{norm_trivial_ring, NormGreenFunctor};
use crate::wittcore::{enumerate, ghost, v_unit, witt_mul, BaseRing, TruncationSet, WittVector};

#[derive(Clone, Debug)]
pub struct GreenWittVectors {
    /// `HH_0` with its Green structure, on a diagonal presentation.
    pub green: GreenFunctor,
    pub homology: HomologyFunctor,
    pub nerve: TwistedNerve,
    pub source: String,
    norm: Option<NormGreenFunctor>,
}

/// `W_{C_n}(R)` for a ring with trivial action.
pub fn witt_green(ring: BaseRing, n: u64) -> Result<GreenWittVectors> {
    let norm = norm_trivial_ring(ring, n)?;
    let mut w = witt_green_of(norm.green())?;
    w.source = format!("norm of {ring} to C_{n}");
    w.norm = Some(norm);
    Ok(w)
}

/// `W_{C_n}(R)` for a commutative Green functor `R` over `C_n`.
pub fn witt_green_of(r: &GreenFunctor) -> Result<GreenWittVectors> {
    let nerve = twisted_cyclic_nerve(r, 1)?;
    let homology = hh(&nerve, 0)?;
    let ring = &nerve.ring;
    let green = GreenFunctor::from_product(
        homology.functor.clone(),
        |d, i, j| {
            let x = ring.mul(d, &homology.representative(d, i), &homology.representative(d, j));
            homology.class_of(d, &x).expect("every chain is a cycle in degree 0")
        },
        |d| homology.class_of(d, ring.unit(d)).expect("every chain is a cycle in degree 0"),
    )?;
    Ok(GreenWittVectors { green, homology, nerve, source: format!("Green functor over C_{}", r.n()), norm: None })
}

impl GreenWittVectors {
    pub fn n(&self) -> u64 {
        self.green.n()
    }

    pub fn mackey(&self) -> &Arc<MackeyFunctor> {
        self.green.mackey()
    }

    /// Class of an element of the input Green functor at level `d`.
    pub fn class_of_input(&self, d: u64, x: &[BigInt]) -> Vector {
        let y = self.nerve.to_ring.apply(d, x);
        self.homology.class_of(d, &y).expect("every chain is a cycle in degree 0")
    }

    pub fn norm(&self) -> Option<&NormGreenFunctor> {
        self.norm.as_ref()
    }

    fn require_norm(&self) -> Result<&NormGreenFunctor> {
        self.norm.as_ref().ok_or_else(|| Error::Invalid("needs Witt vectors of a ring, not of a Green functor".into()))
    }

    /// The image of a classical Witt vector of length `<d>` at level `d`.
    pub fn from_witt_vector(&self, d: u64, w: &WittVector) -> Result<Vector> {
        let norm = self.require_norm()?;
        Ok(self.class_of_input(d, &norm.coordinates(d, w)?))
    }

    /// `t(r)`, the class of the external norm of `r` at the top level.
    pub fn teichmuller(&self, r: &BigInt) -> Result<Vector> {
        let norm = self.require_norm()?;
        Ok(self.class_of_input(self.n(), &norm.external_norm_element(r)?))
    }

    /// The ghost coordinate at `C_d` of a top-level element.
    pub fn ghost_coordinate(&self, d: u64, x: &[BigInt]) -> Result<GhostValue> {
        let m = self.mackey();
        m.ctx().check_divisor(d)?;
        let mut rows = Matrix::zeros(0, m.num_generators(d));
        for e in divisors(d).into_iter().filter(|&e| e != d) {
            for i in 0..m.num_generators(e) {
                rows.push_row(&m.apply_tr(e, d, &unit_vector(m.num_generators(e), i)));
            }
        }
        let quotient = Arc::new(m.level(d).quotient(&rows));
        let s = quotient.simplify();
        let at = |v: &[BigInt]| s.group.reduce(&s.to_simple.apply(&m.apply_res(d, self.n(), v)));
        let unit = at(self.green.unit(self.n()));
        Ok(GhostValue { d, value: at(x), unit, group: s.group })
    }
}

/// A class in `Phi^{C_d}` of the restriction, with the class of `1`.
#[derive(Clone, Debug)]
pub struct GhostValue {
    pub d: u64,
    pub value: Vector,
    pub unit: Vector,
    pub group: Arc<FgAbGroup>,
}

impl GhostValue {
    /// `value = c * unit`.
    pub fn is_multiple_of_unit(&self, c: &BigInt) -> bool {
        let scaled: Vector = self.unit.iter().map(|u| u * c).collect();
        self.group.elements_equal(&self.value, &scaled)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "group": crate::mackey::json::canonical_form(&self.group.canonical_form()),
            "value": self.value.iter().map(integer).collect::<Vec<_>>(),
            "unit": self.unit.iter().map(integer).collect::<Vec<_>>(),
        })
    }
}

/// `t(r)` in `W_{C_n}(ring)`.
pub fn teichmuller_green(ring: BaseRing, r: &BigInt, n: u64) -> Result<Vector> {
    witt_green(ring, n)?.teichmuller(r)
}

/// Outcome of comparing the top level of `W_{C_n}(R)` with `W_<n>(R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittComparison {
    pub additive_isomorphism: bool,
    pub unit: bool,
    pub multiplicative: bool,
    /// Pairs of elements checked; every pair when the ring is small enough.
    pub pairs_checked: usize,
    pub exhaustive: bool,
    /// Over `Z`: every ghost coordinate of the image of `V_e(1)` is the classical ghost component.
    pub ghost: Option<bool>,
}

impl WittComparison {
    pub fn passed(&self) -> bool {
        self.additive_isomorphism && self.unit && self.multiplicative && self.ghost != Some(false)
    }
}

/// Largest `W_<n>(R)` compared on all pairs of elements.
pub const EXHAUSTIVE_LIMIT: usize = 81;

/// Compare through `W_<n>(R) -> N(R)(top) -> HH_0(top)`. Products are taken
/// with the classical Witt multiplication on one side and the Green structure
/// of `HH_0` on the other.
pub fn compare_with_classical(w: &GreenWittVectors) -> Result<WittComparison> {
    let norm = w.require_norm()?;
    let ring = norm.base_ring();
    let n = w.n();
    let s = TruncationSet::divisors_of(n);
    let top = w.mackey().level(n).clone();
    let images: Vec<Vector> = s.elements().iter().map(|&e| w.from_witt_vector(n, &v_unit(e, &s, ring))).collect::<Result<_>>()?;
    let additive = AbHom::from_images(norm.mackey().level(n).clone(), top.clone(), images).is_isomorphism();
    let unit = top.elements_equal(&w.from_witt_vector(n, &WittVector::one(s.clone(), ring))?, w.green.unit(n));
    let (elements, exhaustive) = match enumerate(&s, ring) {
        Some(all) if all.len() <= EXHAUSTIVE_LIMIT => (all, true),
        _ => (s.elements().iter().map(|&e| v_unit(e, &s, ring)).collect(), false),
    };
    let classes: Vec<Vector> = elements.iter().map(|x| w.from_witt_vector(n, x)).collect::<Result<_>>()?;
    let mut multiplicative = true;
    let mut pairs = 0;
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate().skip(i) {
            pairs += 1;
            let lhs = w.from_witt_vector(n, &witt_mul(a, b)?)?;
            let rhs = w.green.mul(n, &classes[i], &classes[j]);
            if !top.elements_equal(&lhs, &rhs) {
                multiplicative = false;
            }
        }
    }
    let ghost = match ring {
        BaseRing::Integers => Some(ghosts_agree(w, &s)?),
        BaseRing::IntegersMod(_) => None,
    };
    Ok(WittComparison { additive_isomorphism: additive, unit, multiplicative, pairs_checked: pairs, exhaustive, ghost })
}

/// `phi_{C_d}` of the image of `w` equals `gh_{n/d}(w)`.
fn ghosts_agree(w: &GreenWittVectors, s: &TruncationSet) -> Result<bool> {
    let n = w.n();
    for &e in s.elements() {
        let v = v_unit(e, s, BaseRing::Integers);
        let gh = ghost(&v)?;
        let image = w.from_witt_vector(n, &v)?;
        for d in divisors(n) {
            let k = s.index_of(n / d).expect("divisor");
            if !w.ghost_coordinate(d, &image)?.is_multiple_of_unit(&gh[k]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// JSON for the `witt` subcommand: both sides and the verdict.
pub fn witt_json(w: &GreenWittVectors) -> Result<Value> {
    let norm = w.require_norm()?;
    let ring = norm.base_ring();
    let n = w.n();
    let s = TruncationSet::divisors_of(n);
    let cmp = compare_with_classical(w)?;
    let basis: Vec<Value> = s
        .elements()
        .iter()
        .map(|&e| {
            let v = v_unit(e, &s, ring);
            json!({"v": e, "components": v.components().iter().map(integer).collect::<Vec<_>>()})
        })
        .collect();
    Ok(json!({
        "schema": SCHEMA,
        "ring": ring.to_string(),
        "n": n,
        "green": mackey_json(w.mackey()),
        "classical": {
            "truncation": s.elements(),
            "additive": crate::mackey::json::canonical_form(&norm.mackey().level(n).canonical_form()),
            "v_basis": basis,
        },
        "comparison": {
            "additive_isomorphism": cmp.additive_isomorphism,
            "unit": cmp.unit,
            "multiplicative": cmp.multiplicative,
            "pairs_checked": cmp.pairs_checked,
            "exhaustive": cmp.exhaustive,
            "ghost": cmp.ghost,
            "passed": cmp.passed(),
        },
    }))
}

#[cfg(test)]
mod tests;
