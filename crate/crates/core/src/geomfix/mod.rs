//! Geometric fixed points, the cyclotomic comparison for twisted cyclic
//! nerves, and algebraic TR towers.
//!
//! `tilde_ef(M, m)` kills level `d` when `m` does not divide `d`, and
//! otherwise divides out the transfers from subgroups not containing `C_m`.
//! `phi(M, m)` reindexes the surviving levels as a functor over `C_{n/m}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::arith::{divisors, is_prime};
use crate::error::{Error, Result};
use crate::fgab::matrix::{add_scaled, unit_vector, zero_vector};
use crate::fgab::{CanonicalForm, Matrix, Vector};
use crate::green::quotient_by_green_ideal;
use crate::hochschild::{hh, twisted_cyclic_nerve, SimplicialMackey, TwistedNerve};
use crate::mackey::json::{canonical_form, matrix, SCHEMA};
use crate::mackey::{AxiomReport, GreenFunctor, GroupContext, MackeyFunctor, MackeyHom};
use crate::norm::norm_trivial_ring;
use crate::wittcore::BaseRing;

/// Generators of the subgroups divided out by `tilde_ef`, level by level.
fn transfer_subgroups(m: &MackeyFunctor, k: u64) -> BTreeMap<u64, Matrix> {
    let mut out = BTreeMap::new();
    for d in m.divisors() {
        let g = m.num_generators(d);
        let rows = if d % k != 0 {
            Matrix::identity(g)
        } else {
            let mut rows = Matrix::zeros(0, g);
            for e in divisors(d).into_iter().filter(|e| e % k != 0) {
                for i in 0..m.num_generators(e) {
                    rows.push_row(&m.apply_tr(e, d, &unit_vector(m.num_generators(e), i)));
                }
            }
            rows
        };
        out.insert(d, rows);
    }
    out
}

pub fn tilde_ef(m: &MackeyFunctor, k: u64) -> Result<MackeyFunctor> {
    m.ctx().check_divisor(k)?;
    Ok(m.quotient(&transfer_subgroups(m, k)))
}

/// Reindex the levels `d` with `k | d` of a functor over `C_n` as a functor over `C_{n/k}`.
fn reindex(m: &MackeyFunctor, k: u64) -> Result<MackeyFunctor> {
    let ctx = GroupContext::new(m.n() / k)?;
    MackeyFunctor::from_fn(
        ctx,
        |d| (**m.level(k * d)).clone(),
        |d, e| m.res_edge(k * d, k * e).matrix().clone(),
        |d, e| m.tr_edge(k * d, k * e).matrix().clone(),
        |d| m.weyl(k * d).matrix().clone(),
    )
}

/// `Phi^{C_k} M` over `C_{n/k}`; level `d` is `tilde_ef(M, k)` at level `k d`
/// on the same generators.
pub fn phi(m: &MackeyFunctor, k: u64) -> Result<MackeyFunctor> {
    reindex(&tilde_ef(m, k)?, k)
}

/// `Phi^{C_k}` of a Green functor; the transfer subgroups form a Green ideal.
pub fn phi_green(r: &GreenFunctor, k: u64) -> Result<GreenFunctor> {
    let m = r.mackey();
    m.ctx().check_divisor(k)?;
    let gens: Vec<(u64, Vector)> =
        transfer_subgroups(m, k).into_iter().flat_map(|(d, rows)| rows.row_iter().map(|r| (d, r.to_vec())).collect::<Vec<_>>()).collect();
    let q = quotient_by_green_ideal(r, &gens);
    let mackey = Arc::new(reindex(q.mackey(), k)?);
    GreenFunctor::from_product(mackey, |d, i, j| q.product_of_generators(k * d, i, j).clone(), |d| q.unit(k * d).clone())
}

/// The map induced by `h` on `Phi^{C_k}`, between the given reindexed functors.
pub fn phi_hom(h: &MackeyHom, k: u64, source: Arc<MackeyFunctor>, target: Arc<MackeyFunctor>) -> MackeyHom {
    MackeyHom::from_matrices(source, target, |d| h.component(k * d).matrix().clone())
}

/// `Phi^{C_k}` applied degreewise.
pub fn phi_simplicial(x: &SimplicialMackey, k: u64) -> Result<SimplicialMackey> {
    let objects: Vec<Arc<MackeyFunctor>> = (0..=x.max_degree()).map(|j| phi(x.object(j), k).map(Arc::new)).collect::<Result<_>>()?;
    let mut faces = vec![Vec::new()];
    for j in 1..=x.max_degree() {
        faces.push((0..=j).map(|i| phi_hom(x.face(j, i), k, objects[j].clone(), objects[j - 1].clone())).collect());
    }
    let degeneracies =
        (0..x.max_degree()).map(|j| (0..=j).map(|i| phi_hom(x.degeneracy(j, i), k, objects[j].clone(), objects[j + 1].clone())).collect()).collect();
    Ok(SimplicialMackey::new(objects, faces, degeneracies))
}

/// `Phi^{C_k} HC^{C_n}(R)` against `HC^{C_{n/k}}(S)` for a ring `S` with a
/// given isomorphism `Phi^{C_k} R -> S`.
#[derive(Clone, Debug)]
pub struct CyclotomicComparison {
    pub k: u64,
    pub source: TwistedNerve,
    pub phi_source: SimplicialMackey,
    pub target: TwistedNerve,
    /// Degree `q` component `Phi^{C_k}(R^{[] q+1}) -> S^{[] q+1}`.
    pub maps: Vec<MackeyHom>,
}

pub fn cyclotomic_comparison(r: &GreenFunctor, k: u64, max_degree: usize, s: &GreenFunctor, iso: &MackeyHom) -> Result<CyclotomicComparison> {
    r.ctx().check_divisor(k)?;
    if s.n() * k != r.n() {
        return Err(Error::ContextMismatch("groups of the two nerves".into()));
    }
    let source = twisted_cyclic_nerve(r, max_degree)?;
    let target = twisted_cyclic_nerve(s, max_degree)?;
    let phi_source = phi_simplicial(&source.simplicial, k)?;
    let maps = (0..=max_degree)
        .map(|q| {
            let src = &source.powers[q];
            let tgt = &target.powers[q];
            let bp = &src.presentation;
            let tags_by_level: BTreeMap<u64, Vec<(u64, Vec<usize>)>> = src.result().divisors().into_iter().map(|d| (d, bp.tags(d))).collect();
            MackeyHom::from_images(phi_source.object(q).clone(), tgt.result().clone(), |d, i| {
                let big = k * d;
                let tags = &tags_by_level[&big];
                let raw = bp.generator_tags(big, i);
                let mut out = zero_vector(tgt.result().num_generators(d));
                for (t, c) in raw.iter().enumerate() {
                    let (e, gens) = &tags[t];
                    if c.is_zero() || e % k != 0 {
                        continue;
                    }
                    let xs: Vec<Vector> = gens
                        .iter()
                        .enumerate()
                        .map(|(l, &g)| {
                            let x = source.from_ring.apply(*e, &unit_vector(bp.factor(l).num_generators(*e), g));
                            target.to_ring.apply(e / k, &iso.apply(e / k, &x))
                        })
                        .collect();
                    add_scaled(&mut out, c, &tgt.presentation.embed(d, e / k, &xs));
                }
                tgt.result().level(d).reduce(&out)
            })
        })
        .collect();
    Ok(CyclotomicComparison { k, source, phi_source, target, maps })
}

impl CyclotomicComparison {
    /// Each degree is an isomorphism compatible with faces and degeneracies.
    pub fn check(&self) -> AxiomReport {
        let mut report = AxiomReport::default();
        let (x, y) = (&self.phi_source, &self.target.simplicial);
        for (q, m) in self.maps.iter().enumerate() {
            for f in m.naturality_failures() {
                report.failures.push(format!("degree {q}: {f}"));
            }
            if !m.is_levelwise_isomorphism() {
                report.failures.push(format!("degree {q}: not an isomorphism"));
            }
        }
        for q in 1..self.maps.len() {
            for i in 0..=q {
                if !x.face(q, i).compose(&self.maps[q - 1]).equals(&self.maps[q].compose(y.face(q, i))) {
                    report.failures.push(format!("degree {q}: d_{i} does not commute"));
                }
            }
        }
        for q in 0..self.maps.len() - 1 {
            for i in 0..=q {
                if !x.degeneracy(q, i).compose(&self.maps[q + 1]).equals(&self.maps[q].compose(y.degeneracy(q, i))) {
                    report.failures.push(format!("degree {q}: s_{i} does not commute"));
                }
            }
        }
        report
    }

    /// Top-level map `HH_j(R)(C_n/C_n) -> HH_j(S)(C_{n/k}/C_{n/k})`.
    pub fn top_map_on_homology(&self, j: usize) -> Result<Matrix> {
        let n = self.source.ring.n();
        let top = n / self.k;
        let hs = hh(&self.source, j)?;
        let ht = hh(&self.target, j)?;
        let rows = (0..hs.functor.num_generators(n))
            .map(|i| {
                let z = hs.representative(n, i);
                let image = self.maps[j].component(top).apply(&z);
                ht.class_of(top, &image).ok_or_else(|| Error::Invalid("comparison does not preserve cycles".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(ht.functor.num_generators(top), rows))
    }
}

/// `Phi^{C_k} N_e^{C_n} R -> N_e^{C_{n/k}} R`: level `d` of the source is
/// `W_<kd>(R)` modulo transfers, sent to `W_<d>(R)` by truncation, which
/// keeps `V_e(1)` for `e | d` and kills the rest.
pub fn norm_truncation(ring: BaseRing, n: u64, k: u64) -> Result<(GreenFunctor, GreenFunctor, MackeyHom)> {
    let big = norm_trivial_ring(ring, n)?;
    let small = norm_trivial_ring(ring, n / k)?;
    let source = Arc::new(phi(big.mackey(), k)?);
    let hom = MackeyHom::from_images(source, small.mackey().clone(), |d, i| {
        let e = divisors(k * d)[i];
        let ds = divisors(d);
        match ds.iter().position(|&x| x == e) {
            Some(j) => unit_vector(ds.len(), j),
            None => zero_vector(ds.len()),
        }
    });
    Ok((big.green().clone(), small.green().clone(), hom))
}

/// The comparison for `R = N_e^{C_n}(ring)` against the nerve of `N_e^{C_{n/k}}(ring)`.
pub fn cyclotomic_check_norm(ring: BaseRing, n: u64, k: u64, max_degree: usize) -> Result<AxiomReport> {
    let (big, small, iso) = norm_truncation(ring, n, k)?;
    let mut report = AxiomReport::default();
    if !iso.is_isomorphism() {
        report.failures.push("truncation is not an isomorphism on geometric fixed points".into());
    }
    report.merge(cyclotomic_comparison(&big, k, max_degree, &small, &iso)?.check());
    Ok(report)
}

/// The comparison for a Green functor `R` against the nerve of `Phi^{C_k} R`.
pub fn cyclotomic_check_green(r: &GreenFunctor, k: u64, max_degree: usize) -> Result<AxiomReport> {
    let s = phi_green(r, k)?;
    let iso = MackeyHom::identity(s.mackey().clone());
    Ok(cyclotomic_comparison(r, k, max_degree, &s, &iso)?.check())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerStage {
    pub n: u64,
    pub group: CanonicalForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLimit {
    pub description: String,
    pub precision: u32,
}

/// `HH_k^{C_{p^s}}(R)(top)` for `s = 0..stages` with the maps `stage s -> stage s-1`.
#[derive(Clone, Debug)]
pub struct TrTower {
    pub p: u64,
    pub degree: usize,
    pub stages: Vec<TowerStage>,
    /// `maps[s-1]` goes from stage `s` to stage `s-1`, on simplified generators.
    pub maps: Vec<Matrix>,
    pub limit: TowerLimit,
}

pub fn tr_tower(ring: BaseRing, p: u64, stages: u32, degree: usize) -> Result<TrTower> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    if stages == 0 {
        return Err(Error::Invalid("a tower needs at least one stage".into()));
    }
    let mut out = Vec::new();
    let mut maps = Vec::new();
    for s in 0..stages {
        let n = p.pow(s);
        let norm = norm_trivial_ring(ring, n)?;
        let nerve = twisted_cyclic_nerve(norm.green(), degree + 1)?;
        out.push(TowerStage { n, group: hh(&nerve, degree)?.functor.level(n).canonical_form() });
        if s > 0 {
            let (big, small, iso) = norm_truncation(ring, n, p)?;
            let cmp = cyclotomic_comparison(&big, p, degree + 1, &small, &iso)?;
            maps.push(cmp.top_map_on_homology(degree)?);
        }
    }
    let limit = describe_limit(p, &out, &maps);
    Ok(TrTower { p, degree, stages: out, maps, limit })
}

fn describe_limit(p: u64, stages: &[TowerStage], maps: &[Matrix]) -> TowerLimit {
    let precision = stages.len() as u32;
    if stages.iter().all(|s| s.group.is_zero()) {
        return TowerLimit { description: "0".into(), precision };
    }
    let pro_cyclic = stages.iter().enumerate().all(|(s, st)| st.group == CanonicalForm::cyclic(p.pow(s as u32 + 1)))
        && maps.iter().all(|m| m.rows() == 1 && m.cols() == 1 && num_integer::Integer::gcd(&m[(0, 0)], &BigInt::from(p)) == BigInt::from(1));
    if pro_cyclic {
        return TowerLimit { description: format!("Z_{p}"), precision };
    }
    let n = stages.len();
    if n >= 2 && stages[n - 1].group == stages[n - 2].group {
        return TowerLimit { description: format!("{} (stabilized)", stages[n - 1].group), precision };
    }
    TowerLimit { description: "not stabilized".into(), precision }
}

impl TrTower {
    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "p": self.p,
            "degree": self.degree,
            "stages": self.stages.iter().map(|s| json!({"n": s.n, "group": canonical_form(&s.group)})).collect::<Vec<_>>(),
            "maps": self.maps.iter().map(matrix).collect::<Vec<_>>(),
            "limit": {"description": self.limit.description, "precision": self.limit.precision},
        })
    }
}

#[cfg(test)]
mod tests;
