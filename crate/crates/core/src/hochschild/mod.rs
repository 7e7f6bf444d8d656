//! The twisted cyclic nerve of a Green functor and its homology.
//!
//! Degree `j` is `R^{[] (j+1)}`. The faces `d_i`, `i < j`, multiply factors
//! `i` and `i+1`; the last face moves the last factor to the front, applies
//! the generator `g` to it and multiplies it into the first factor.
//! Homology is taken of the unnormalized alternating-sum complex.

mod simplicial;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fgab::matrix::{unit_vector, vec_sub};
use crate::fgab::{homology, AbHom, FgAbGroup, Homology, Matrix, Vector};
use crate::green::{box_power, box_power_of_simplified, green_ideal, quotient_by_green_ideal, BoxPower};
use crate::mackey::{AxiomReport, GreenFunctor, MackeyFunctor, MackeyHom};

pub use simplicial::{compare_restricted_nerve, restrict_hom, SimplicialMackey};

/// `HC(R; gR)` truncated at `max_degree`.
#[derive(Clone, Debug)]
pub struct TwistedNerve {
    /// `R` on its diagonal presentation; degree 0 of the nerve.
    pub ring: GreenFunctor,
    /// Isomorphisms between `ring` and the input.
    pub to_ring: MackeyHom,
    pub from_ring: MackeyHom,
    pub powers: Vec<BoxPower>,
    pub simplicial: SimplicialMackey,
}

fn last_face(source: &BoxPower, target: &BoxPower) -> MackeyHom {
    let r = &source.ring;
    let j = source.k - 1;
    let bp = &source.presentation;
    bp.hom_from_tags(target.result().clone(), |d, e, gens| {
        let x: Vec<Vector> = gens.iter().enumerate().map(|(i, &g)| unit_vector(bp.factor(i).num_generators(e), g)).collect();
        let moved = r.mackey().weyl(e).apply(&x[j]);
        let mut v = Vec::with_capacity(j);
        v.push(r.mul(e, &moved, &x[0]));
        v.extend(x[1..j].iter().cloned());
        target.presentation.embed(d, e, &v)
    })
}

fn degeneracy(source: &BoxPower, target: &BoxPower, i: usize) -> MackeyHom {
    let r = &source.ring;
    let bp = &source.presentation;
    bp.hom_from_tags(target.result().clone(), |d, e, gens| {
        let mut v: Vec<Vector> = gens.iter().enumerate().map(|(l, &g)| unit_vector(bp.factor(l).num_generators(e), g)).collect();
        v.insert(i + 1, r.unit(e).clone());
        target.presentation.embed(d, e, &v)
    })
}

pub fn twisted_cyclic_nerve(r: &GreenFunctor, max_degree: usize) -> Result<TwistedNerve> {
    if max_degree < 1 {
        return Err(Error::Invalid("the nerve needs at least degree 1".into()));
    }
    let first = box_power(r, 1)?;
    let ring = first.ring.clone();
    let (to_ring, from_ring) = (first.to_ring.clone(), first.from_ring.clone());
    let mut powers = vec![first];
    for j in 1..=max_degree {
        powers.push(box_power_of_simplified(&ring, j + 1));
    }
    let mut faces = vec![Vec::new()];
    for j in 1..=max_degree {
        let mut fs: Vec<MackeyHom> = (0..j).map(|i| powers[j].multiply_adjacent(&powers[j - 1], i)).collect();
        fs.push(last_face(&powers[j], &powers[j - 1]));
        faces.push(fs);
    }
    let degeneracies = (0..max_degree).map(|j| (0..=j).map(|i| degeneracy(&powers[j], &powers[j + 1], i)).collect()).collect();
    let objects = powers.iter().map(|p| p.result().clone()).collect();
    let simplicial = SimplicialMackey::new(objects, faces, degeneracies);
    Ok(TwistedNerve { ring, to_ring, from_ring, powers, simplicial })
}

/// A Mackey functor of homology groups with the levelwise homology data.
#[derive(Clone, Debug)]
pub struct HomologyFunctor {
    /// Homology on diagonal presentations.
    pub functor: Arc<MackeyFunctor>,
    /// Levelwise homology on the raw cycle generators.
    pub levels: BTreeMap<u64, Homology>,
    to_simple: MackeyHom,
    from_simple: MackeyHom,
}

impl HomologyFunctor {
    /// Class of a cycle at level `d` of the chain functor.
    pub fn class_of(&self, d: u64, z: &[BigInt]) -> Option<Vector> {
        let c = self.levels[&d].class_of(z)?;
        Some(self.functor.level(d).reduce(&self.to_simple.apply(d, &c)))
    }

    /// A cycle representing generator `i` of level `d`.
    pub fn representative(&self, d: u64, i: usize) -> Vector {
        let c = self.from_simple.component(d).image_of_generator(i);
        self.levels[&d].cycles.inclusion.apply(&c)
    }
}

/// Homology at `X_k` of the alternating-sum complex of a simplicial Mackey functor.
pub fn simplicial_homology(x: &SimplicialMackey, k: usize) -> Result<HomologyFunctor> {
    if k + 1 > x.max_degree() {
        return Err(Error::TruncationTooShort { needed: k + 1, available: x.max_degree() });
    }
    let mid = x.object(k).clone();
    let d_in = x.boundary(k + 1);
    let ctx = mid.ctx();
    let mut levels = BTreeMap::new();
    for d in ctx.divisors() {
        let d_out = if k == 0 { AbHom::zero(mid.level(d).clone(), Arc::new(FgAbGroup::zero())) } else { x.boundary(k).component(d).clone() };
        levels.insert(d, homology(d_in.component(d), &d_out)?);
    }
    let induced = |h: &AbHom, s: u64, t: u64| -> Matrix { levels[&s].induced(h, &levels[&t]).expect("structure maps preserve cycles").matrix().clone() };
    let functor = MackeyFunctor::from_fn(
        ctx,
        |d| (*levels[&d].group).clone(),
        |d, e| induced(mid.res_edge(d, e), e, d),
        |d, e| induced(mid.tr_edge(d, e), d, e),
        |d| induced(mid.weyl(d), d, d),
    )?;
    let s = functor.simplify();
    Ok(HomologyFunctor { functor: s.functor, levels, to_simple: s.to_simple, from_simple: s.from_simple })
}

/// `HH_k(R)`, the twisted Hochschild homology.
pub fn hh(nerve: &TwistedNerve, k: usize) -> Result<HomologyFunctor> {
    simplicial_homology(&nerve.simplicial, k)
}

/// `R` modulo the Green ideal generated by `g x - x`.
pub fn hh0_oracle(r: &GreenFunctor) -> GreenFunctor {
    quotient_by_green_ideal(r, &twist_generators(r))
}

fn twist_generators(r: &GreenFunctor) -> Vec<(u64, Vector)> {
    let m = r.mackey();
    let mut gens = Vec::new();
    for d in m.divisors() {
        for i in 0..m.num_generators(d) {
            let x = m.level(d).generator(i);
            gens.push((d, vec_sub(&m.weyl(d).apply(&x), &x)));
        }
    }
    gens
}

/// Compare `HH_0` with the quotient of `R` by the Green ideal of `g x - x`:
/// the kernels of `R -> HH_0` and of `R -> oracle` must coincide.
pub fn check_hh0_against_oracle(nerve: &TwistedNerve) -> Result<AxiomReport> {
    let mut report = AxiomReport::default();
    let r = &nerve.ring;
    let h0 = hh(nerve, 0)?;
    let ideal = green_ideal(r, &twist_generators(r));
    let boundary = nerve.simplicial.boundary(1);
    for d in r.mackey().divisors() {
        let lev = r.mackey().level(d);
        for row in ideal[&d].row_iter() {
            match h0.class_of(d, row) {
                Some(c) if h0.functor.level(d).is_zero(&c) => {}
                _ => report.failures.push(format!("level {d}: ideal element survives in HH_0")),
            }
        }
        for i in 0..boundary.source().num_generators(d) {
            let b = boundary.component(d).image_of_generator(i);
            if !lev.in_span(&ideal[&d], &b) {
                report.failures.push(format!("level {d}: boundary outside the ideal"));
            }
        }
    }
    let oracle = hh0_oracle(r);
    if oracle.mackey().canonical_forms() != h0.functor.canonical_forms() {
        report.failures.push("levels differ from the oracle".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
