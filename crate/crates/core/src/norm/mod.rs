//! Norms `N_e^{C_n} R` of trivial-action rings, modelled on big Witt vectors.
//!
//! Level `d` is `W_<d>(R)` on the additive generators `V_e(1)`, `e | d`
//! (ascending). Restriction is Frobenius, transfer is Verschiebung, the
//! Weyl action is trivial. On these generators all three are integral:
//! `F_p V_a(1) = gcd(p, a) V_{a/gcd(p,a)}(1)`, `V_p V_a(1) = V_{pa}(1)` and
//! `V_a(1) V_b(1) = gcd(a, b) V_{lcm(a,b)}(1)`. Over `Z/m` the additive
//! relations come from enumerating the group.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{divisors, gcd, lcm};
use crate::error::{Error, Result};
use crate::fgab::matrix::{unit_vector, zero_vector};
use crate::fgab::{FgAbGroup, Matrix, Vector};
use crate::green::box_power;
use crate::mackey::{restrict, AxiomReport, GreenFunctor, GroupContext, MackeyFunctor, MackeyHom};
use crate::wittcore::{from_v_coordinates, reduce_mod, teichmuller, v_coordinates, v_unit, witt_add, BaseRing, TruncationSet, WittVector};

/// Largest additive group enumerated for a level over `Z/m`.
pub const MAX_LEVEL_ORDER: u64 = 1 << 22;

/// Components-to-coordinates lookup for one level over `Z/m`.
#[derive(Clone, Debug, Default)]
struct Table {
    coords: HashMap<Vec<u64>, Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct NormGreenFunctor {
    ring: BaseRing,
    green: GreenFunctor,
    tables: BTreeMap<u64, Table>,
}

fn index_in(d: u64, e: u64) -> usize {
    divisors(d).iter().position(|&x| x == e).expect("divisor")
}

/// Relations of `W_<d>(Z/m)` on the `V_e(1)` and the lookup table.
fn enumerate_level(d: u64, ring: BaseRing) -> Result<(Vec<Vector>, Table)> {
    let m = ring.modulus().expect("torsion ring");
    let s = TruncationSet::divisors_of(d);
    let tau = s.len();
    if (m as f64).powi(tau as i32) > MAX_LEVEL_ORDER as f64 {
        return Err(Error::UnsupportedRing(format!("W_<{d}>({ring}) is too large to enumerate")));
    }
    let mut table = Table::default();
    let zero = WittVector::zero(s.clone(), ring);
    table.coords.insert(zero.residues(), vec![0; tau]);
    let mut elems = vec![(zero, vec![0i64; tau])];
    let mut rels = Vec::new();
    for (i, &e) in s.elements().iter().enumerate() {
        let g = v_unit(e, &s, ring);
        let mut cur = g.clone();
        let mut k = 1i64;
        while !table.coords.contains_key(&cur.residues()) {
            cur = witt_add(&cur, &g)?;
            k += 1;
        }
        let mut row: Vector = table.coords[&cur.residues()].iter().map(|&c| BigInt::from(-c)).collect();
        row[i] += k;
        rels.push(row);
        let mut grown = Vec::with_capacity(elems.len() * k as usize);
        for (w, c) in &elems {
            let mut x = w.clone();
            for t in 1..k {
                x = witt_add(&x, &g)?;
                let mut c2 = c.clone();
                c2[i] = t;
                table.coords.insert(x.residues(), c2.clone());
                grown.push((x.clone(), c2));
            }
        }
        elems.extend(grown);
    }
    Ok((rels, table))
}

/// `N_e^{C_n} R` for `R` in `{Z, Z/m}`.
pub fn norm_trivial_ring(ring: BaseRing, n: u64) -> Result<NormGreenFunctor> {
    let ctx = GroupContext::new(n)?;
    let mut tables = BTreeMap::new();
    let mut groups = BTreeMap::new();
    for d in ctx.divisors() {
        let tau = divisors(d).len();
        let g = match ring {
            BaseRing::Integers => FgAbGroup::free(tau),
            BaseRing::IntegersMod(_) => {
                let (rels, table) = enumerate_level(d, ring)?;
                tables.insert(d, table);
                FgAbGroup::from_relations(tau, rels)
            }
        };
        groups.insert(d, g);
    }
    let mackey = MackeyFunctor::from_fn(
        ctx,
        |d| groups[&d].clone(),
        |d, e| {
            let p = e / d;
            let rows = divisors(e)
                .into_iter()
                .map(|a| {
                    let g = gcd(p, a);
                    let mut v = zero_vector(divisors(d).len());
                    v[index_in(d, a / g)] = BigInt::from(g);
                    v
                })
                .collect();
            Matrix::from_rows(divisors(d).len(), rows)
        },
        |d, e| {
            let p = e / d;
            let rows = divisors(d).into_iter().map(|a| unit_vector(divisors(e).len(), index_in(e, p * a))).collect();
            Matrix::from_rows(divisors(e).len(), rows)
        },
        |d| Matrix::identity(divisors(d).len()),
    )?;
    let green = GreenFunctor::from_product(
        Arc::new(mackey),
        |d, i, j| {
            let ds = divisors(d);
            let (a, b) = (ds[i], ds[j]);
            let mut v = zero_vector(ds.len());
            v[index_in(d, lcm(a, b))] = BigInt::from(gcd(a, b));
            v
        },
        |d| unit_vector(divisors(d).len(), 0),
    )?;
    Ok(NormGreenFunctor { ring, green, tables })
}

impl NormGreenFunctor {
    pub fn base_ring(&self) -> BaseRing {
        self.ring
    }

    pub fn ctx(&self) -> GroupContext {
        self.green.ctx()
    }

    pub fn green(&self) -> &GreenFunctor {
        &self.green
    }

    pub fn mackey(&self) -> &Arc<MackeyFunctor> {
        self.green.mackey()
    }

    /// Coordinates of a Witt vector of length `<d>` on the `V_e(1)`.
    pub fn coordinates(&self, d: u64, w: &WittVector) -> Result<Vector> {
        self.ctx().check_divisor(d)?;
        if w.truncation() != &TruncationSet::divisors_of(d) || w.ring() != self.ring {
            return Err(Error::ContextMismatch("Witt vector lengths or base rings".into()));
        }
        match self.ring {
            BaseRing::Integers => v_coordinates(w),
            BaseRing::IntegersMod(_) => {
                let c = &self.tables[&d].coords[&w.residues()];
                Ok(c.iter().map(|&x| BigInt::from(x)).collect())
            }
        }
    }

    /// The Witt vector with the given coordinates.
    pub fn witt_vector(&self, d: u64, coords: &[BigInt]) -> Result<WittVector> {
        let s = TruncationSet::divisors_of(d);
        let w = from_v_coordinates(coords, &s, BaseRing::Integers)?;
        match self.ring.modulus() {
            None => Ok(w),
            Some(m) => reduce_mod(&w, m),
        }
    }

    /// `N(r) = [r]` at the top level.
    pub fn external_norm_element(&self, r: &BigInt) -> Result<Vector> {
        let n = self.ctx().n();
        self.coordinates(n, &teichmuller(r, TruncationSet::divisors_of(n), self.ring))
    }
}

pub fn external_norm_element(ring: BaseRing, r: &BigInt, n: u64) -> Result<Vector> {
    norm_trivial_ring(ring, n)?.external_norm_element(r)
}

/// Compare `i_J^* N_e^{C_n} R` with `(N_e^{C_j} R)^{[] n/j}` through the
/// multiplication map, and check that the cyclic rotation of factors
/// matches the action of the generator of `C_n`.
pub fn check_norm_restriction_identity(ring: BaseRing, n: u64, j: u64) -> Result<AxiomReport> {
    let mut report = AxiomReport::default();
    let ctx = GroupContext::new(n)?;
    ctx.check_divisor(j)?;
    let big = norm_trivial_ring(ring, n)?;
    let small = norm_trivial_ring(ring, j)?;
    let restricted = Arc::new(restrict(big.mackey(), j)?);
    let k = (n / j) as usize;
    let power = box_power(small.green(), k)?;
    let bp = &power.presentation;
    for d in divisors(j) {
        let (a, b) = (restricted.level(d).canonical_form(), power.result().level(d).canonical_form());
        if a != b {
            report.failures.push(format!("level {d}: {a} against {b}"));
        }
    }
    // x_1 (x) ... (x) x_k at level e goes to tr^d_e(x_1 ... x_k), computed in the big norm.
    let product_of = |e: u64, gens: &[usize]| -> Vector {
        let mut acc = big.green().unit(e).clone();
        for (i, &g) in gens.iter().enumerate() {
            acc = big.green().mul(e, &acc, &power.from_ring.apply(e, &bp.factor_vector(i, e, g)));
        }
        acc
    };
    let mult = bp.hom_from_tags(restricted.clone(), |d, e, gens| restricted.apply_tr(e, d, &product_of(e, gens)));
    for f in mult.naturality_failures() {
        report.failures.push(format!("multiplication map: {f}"));
    }
    if report.passed() && !mult.is_isomorphism() {
        report.failures.push("multiplication map is not an isomorphism".into());
    }
    let rotate = bp.hom_from_tags(power.result().clone(), |d, e, gens| {
        let mut v: Vec<Vector> = Vec::with_capacity(k);
        let last = bp.factor(k - 1).weyl(e).image_of_generator(gens[k - 1]);
        v.push(last);
        for (i, &g) in gens.iter().enumerate().take(k - 1) {
            v.push(unit_vector(bp.factor(i).num_generators(e), g));
        }
        bp.embed(d, e, &v)
    });
    let twisted = MackeyHom::from_matrices(restricted.clone(), restricted.clone(), |d| big.mackey().weyl(d).matrix().clone());
    if !rotate.compose(&mult).equals(&mult.compose(&twisted)) {
        report.failures.push("rotation of factors does not match the generator action".into());
    }
    Ok(report)
}

/// Additive order of a level of the norm, when finite.
pub fn level_order(norm: &NormGreenFunctor, d: u64) -> Option<u64> {
    norm.mackey().level(d).order().and_then(|o| o.to_u64())
}

#[cfg(test)]
mod tests;
