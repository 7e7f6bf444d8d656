//! Mackey and Green functors for cyclic groups `C_n`.
//!
//! Subgroups are named by their orders: level `d` is the value at
//! `C_n/C_d`. Only restrictions and transfers along prime-index inclusions
//! are stored; longer composites are assembled along a fixed prime chain.
//! The distinguished generator `g = exp(2 pi i / n)` acts on level `d`
//! through `weyl(d)`.

mod axioms;
mod burnside;
mod fixed;
pub mod json;
mod morphism;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{divisors, prime_chain, prime_edges};
use crate::error::{Error, Result};
use crate::fgab::matrix::add_scaled;
use crate::fgab::{AbHom, CanonicalForm, FgAbGroup, Matrix, Vector};

pub use axioms::{check_axioms, check_green_axioms, AxiomReport};
pub use burnside::{burnside, orbits_from, representable, representable_cells, Orbit, SpanCell};
pub use fixed::{fixed_point_green, fixed_point_mackey, ActionModule, ActionRing};
pub use morphism::{hom_group, MackeyHom};

/// The cyclic group `C_n` inside the circle group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupContext {
    n: u64,
}

impl GroupContext {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("group order must be positive".into()));
        }
        Ok(GroupContext { n })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn divisors(&self) -> Vec<u64> {
        divisors(self.n)
    }

    pub fn check_divisor(&self, d: u64) -> Result<()> {
        if d == 0 || !self.n.is_multiple_of(d) {
            return Err(Error::Divisibility(d, self.n));
        }
        Ok(())
    }

    /// `(d, e)` with `d | e | n` and `e/d` prime.
    pub fn prime_edges(&self) -> Vec<(u64, u64)> {
        prime_edges(self.n)
    }
}

/// Levelwise abelian groups with restriction, transfer and Weyl action.
#[derive(Clone)]
pub struct MackeyFunctor {
    ctx: GroupContext,
    levels: BTreeMap<u64, Arc<FgAbGroup>>,
    res: BTreeMap<(u64, u64), AbHom>,
    tr: BTreeMap<(u64, u64), AbHom>,
    weyl: BTreeMap<u64, AbHom>,
}

impl fmt::Debug for MackeyFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MackeyFunctor(C_{}:", self.ctx.n)?;
        for (d, g) in &self.levels {
            write!(f, " {d}: {}", g.canonical_form())?;
        }
        write!(f, ")")
    }
}

impl MackeyFunctor {
    /// Assemble from prime-edge data. `res[(d, e)]` maps level `e` to level `d`,
    /// `tr[(d, e)]` maps level `d` to level `e`.
    pub fn new(
        ctx: GroupContext,
        levels: BTreeMap<u64, Arc<FgAbGroup>>,
        res: BTreeMap<(u64, u64), AbHom>,
        tr: BTreeMap<(u64, u64), AbHom>,
        weyl: BTreeMap<u64, AbHom>,
    ) -> Result<Self> {
        let bad = |what: String| Err(Error::Invalid(what));
        for d in ctx.divisors() {
            let Some(g) = levels.get(&d) else { return bad(format!("missing level {d}")) };
            match weyl.get(&d) {
                Some(w) if shape(w) == (g.num_generators(), g.num_generators()) => {}
                _ => return bad(format!("bad Weyl map at level {d}")),
            }
        }
        if levels.len() != ctx.divisors().len() {
            return bad("levels must be indexed by the divisors of n".into());
        }
        for (d, e) in ctx.prime_edges() {
            let (gd, ge) = (levels[&d].num_generators(), levels[&e].num_generators());
            match (res.get(&(d, e)), tr.get(&(d, e))) {
                (Some(r), Some(t)) if shape(r) == (ge, gd) && shape(t) == (gd, ge) => {}
                _ => return bad(format!("bad restriction or transfer on the edge {d}|{e}")),
            }
        }
        let rebind = |h: &AbHom, s: u64, t: u64| h.reinterpret(levels[&s].clone(), levels[&t].clone());
        let res = res.iter().map(|(&(d, e), h)| ((d, e), rebind(h, e, d))).collect();
        let tr = tr.iter().map(|(&(d, e), h)| ((d, e), rebind(h, d, e))).collect();
        let weyl = weyl.iter().map(|(&d, h)| (d, rebind(h, d, d))).collect();
        Ok(MackeyFunctor { ctx, levels, res, tr, weyl })
    }

    /// Build from closures on the prime edges.
    pub fn from_fn(
        ctx: GroupContext,
        level: impl Fn(u64) -> FgAbGroup,
        res: impl Fn(u64, u64) -> Matrix,
        tr: impl Fn(u64, u64) -> Matrix,
        weyl: impl Fn(u64) -> Matrix,
    ) -> Result<Self> {
        let levels: BTreeMap<u64, Arc<FgAbGroup>> = ctx.divisors().into_iter().map(|d| (d, Arc::new(level(d)))).collect();
        let mut r = BTreeMap::new();
        let mut t = BTreeMap::new();
        for (d, e) in ctx.prime_edges() {
            r.insert((d, e), AbHom::new_unchecked(levels[&e].clone(), levels[&d].clone(), res(d, e)));
            t.insert((d, e), AbHom::new_unchecked(levels[&d].clone(), levels[&e].clone(), tr(d, e)));
        }
        let w = levels.iter().map(|(&d, g)| (d, AbHom::new_unchecked(g.clone(), g.clone(), weyl(d)))).collect();
        MackeyFunctor::new(ctx, levels, r, t, w)
    }

    pub fn zero(ctx: GroupContext) -> Self {
        MackeyFunctor::from_fn(ctx, |_| FgAbGroup::zero(), |_, _| Matrix::zeros(0, 0), |_, _| Matrix::zeros(0, 0), |_| Matrix::zeros(0, 0))
            .expect("zero functor")
    }

    pub fn ctx(&self) -> GroupContext {
        self.ctx
    }

    pub fn n(&self) -> u64 {
        self.ctx.n
    }

    pub fn divisors(&self) -> Vec<u64> {
        self.levels.keys().copied().collect()
    }

    pub fn level(&self, d: u64) -> &Arc<FgAbGroup> {
        self.levels.get(&d).unwrap_or_else(|| panic!("{d} is not a divisor of {}", self.ctx.n))
    }

    pub fn num_generators(&self, d: u64) -> usize {
        self.level(d).num_generators()
    }

    /// Stored restriction along a prime edge.
    pub fn res_edge(&self, d: u64, e: u64) -> &AbHom {
        &self.res[&(d, e)]
    }

    pub fn tr_edge(&self, d: u64, e: u64) -> &AbHom {
        &self.tr[&(d, e)]
    }

    /// `res^e_d : M(e) -> M(d)` along the standard prime chain.
    pub fn res(&self, d: u64, e: u64) -> AbHom {
        let chain = prime_chain(d, e);
        let mut h = AbHom::identity(self.level(e).clone());
        for w in chain.windows(2).rev() {
            h = h.compose(&self.res[&(w[0], w[1])]);
        }
        h
    }

    /// `tr^e_d : M(d) -> M(e)` along the standard prime chain.
    pub fn tr(&self, d: u64, e: u64) -> AbHom {
        let chain = prime_chain(d, e);
        let mut h = AbHom::identity(self.level(d).clone());
        for w in chain.windows(2) {
            h = h.compose(&self.tr[&(w[0], w[1])]);
        }
        h
    }

    /// Action of the distinguished generator on level `d`.
    pub fn weyl(&self, d: u64) -> &AbHom {
        &self.weyl[&d]
    }

    /// Action of `g^k` on level `d`.
    pub fn weyl_power(&self, d: u64, k: u64) -> AbHom {
        let k = k % (self.ctx.n / d);
        let m = self.weyl(d).matrix().pow(k);
        AbHom::new_unchecked(self.level(d).clone(), self.level(d).clone(), m)
    }

    pub fn apply_res(&self, d: u64, e: u64, x: &[BigInt]) -> Vector {
        let chain = prime_chain(d, e);
        let mut v = x.to_vec();
        for w in chain.windows(2).rev() {
            v = self.res[&(w[0], w[1])].apply(&v);
        }
        v
    }

    pub fn apply_tr(&self, d: u64, e: u64, x: &[BigInt]) -> Vector {
        let chain = prime_chain(d, e);
        let mut v = x.to_vec();
        for w in chain.windows(2) {
            v = self.tr[&(w[0], w[1])].apply(&v);
        }
        v
    }

    pub fn apply_weyl(&self, d: u64, k: u64, x: &[BigInt]) -> Vector {
        let mut v = x.to_vec();
        for _ in 0..k % (self.ctx.n / d) {
            v = self.weyl[&d].apply(&v);
        }
        v
    }

    pub fn canonical_forms(&self) -> BTreeMap<u64, CanonicalForm> {
        self.levels.iter().map(|(&d, g)| (d, g.canonical_form())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.levels.values().all(|g| g.is_trivial())
    }

    /// Same groups at every level (up to isomorphism).
    pub fn same_levels(&self, other: &MackeyFunctor) -> bool {
        self.ctx == other.ctx && self.canonical_forms() == other.canonical_forms()
    }

    /// An isomorphic functor whose levels are diagonal Smith presentations.
    pub fn simplify(&self) -> Simplification {
        let mut levels = BTreeMap::new();
        let mut to = BTreeMap::new();
        let mut from = BTreeMap::new();
        for (&d, g) in &self.levels {
            let s = g.simplify();
            levels.insert(d, s.group.clone());
            to.insert(d, s.to_simple);
            from.insert(d, s.from_simple);
        }
        let conj = |h: &AbHom, s: u64, t: u64| reduce_hom(&from[&s].compose(h).compose(&to[&t]));
        let res = self.res.iter().map(|(&(d, e), h)| ((d, e), conj(h, e, d))).collect();
        let tr = self.tr.iter().map(|(&(d, e), h)| ((d, e), conj(h, d, e))).collect();
        let weyl = self.weyl.iter().map(|(&d, h)| (d, conj(h, d, d))).collect();
        let simple = Arc::new(MackeyFunctor { ctx: self.ctx, levels, res, tr, weyl });
        let this = Arc::new(self.clone());
        let to = to.into_iter().map(|(d, h)| (d, h.reinterpret(this.level(d).clone(), simple.level(d).clone()))).collect();
        let from = from.into_iter().map(|(d, h)| (d, h.reinterpret(simple.level(d).clone(), this.level(d).clone()))).collect();
        Simplification { to_simple: MackeyHom::new(this.clone(), simple.clone(), to), from_simple: MackeyHom::new(simple.clone(), this, from), functor: simple }
    }

    /// Levelwise direct sum.
    pub fn direct_sum(parts: &[&MackeyFunctor]) -> Result<MackeyFunctor> {
        let ctx = parts.first().map(|m| m.ctx).ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
        if parts.iter().any(|m| m.ctx != ctx) {
            return Err(Error::ContextMismatch("groups".into()));
        }
        let block = |ms: Vec<&AbHom>| {
            let rows: usize = ms.iter().map(|h| h.matrix().rows()).sum();
            let cols: usize = ms.iter().map(|h| h.matrix().cols()).sum();
            let mut out = Matrix::zeros(rows, cols);
            let (mut r0, mut c0) = (0, 0);
            for h in ms {
                let m = h.matrix();
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        out[(r0 + i, c0 + j)] = m[(i, j)].clone();
                    }
                }
                r0 += m.rows();
                c0 += m.cols();
            }
            out
        };
        MackeyFunctor::from_fn(
            ctx,
            |d| {
                let gs: Vec<Arc<FgAbGroup>> = parts.iter().map(|m| m.level(d).clone()).collect();
                (*FgAbGroup::direct_sum(&gs).group).clone()
            },
            |d, e| block(parts.iter().map(|m| m.res_edge(d, e)).collect()),
            |d, e| block(parts.iter().map(|m| m.tr_edge(d, e)).collect()),
            |d| block(parts.iter().map(|m| m.weyl(d)).collect()),
        )
    }

    /// Quotient by levelwise subgroups given as generator rows, on the same generators.
    /// The subgroups must be stable under all structure maps.
    pub fn quotient(&self, subgroups: &BTreeMap<u64, Matrix>) -> MackeyFunctor {
        let levels: BTreeMap<u64, Arc<FgAbGroup>> = self
            .levels
            .iter()
            .map(|(&d, g)| {
                let q = match subgroups.get(&d) {
                    Some(rows) if rows.rows() > 0 => g.quotient(rows),
                    _ => (**g).clone(),
                };
                (d, Arc::new(q))
            })
            .collect();
        let rebind = |h: &AbHom, s: u64, t: u64| h.reinterpret(levels[&s].clone(), levels[&t].clone());
        let res = self.res.iter().map(|(&(d, e), h)| ((d, e), rebind(h, e, d))).collect();
        let tr = self.tr.iter().map(|(&(d, e), h)| ((d, e), rebind(h, d, e))).collect();
        let weyl = self.weyl.iter().map(|(&d, h)| (d, rebind(h, d, d))).collect();
        MackeyFunctor { ctx: self.ctx, levels, res, tr, weyl }
    }
}

/// Reduce matrix entries of a map into a diagonal target modulo the orders.
fn reduce_hom(h: &AbHom) -> AbHom {
    let t = h.target();
    let m = h.matrix();
    let rows = m.row_iter().map(|r| t.reduce(r)).collect();
    AbHom::new_unchecked(h.source().clone(), t.clone(), Matrix::from_rows(m.cols(), rows))
}

fn shape(h: &AbHom) -> (usize, usize) {
    (h.matrix().rows(), h.matrix().cols())
}

pub struct Simplification {
    pub functor: Arc<MackeyFunctor>,
    pub to_simple: MackeyHom,
    pub from_simple: MackeyHom,
}

/// Restriction `i_J^*` to `C_j`: levels `d | j`, Weyl generator `g^{n/j}`.
pub fn restrict(m: &MackeyFunctor, j: u64) -> Result<MackeyFunctor> {
    m.ctx.check_divisor(j)?;
    let ctx = GroupContext::new(j)?;
    let k = m.n() / j;
    MackeyFunctor::from_fn(
        ctx,
        |d| (**m.level(d)).clone(),
        |d, e| m.res_edge(d, e).matrix().clone(),
        |d, e| m.tr_edge(d, e).matrix().clone(),
        |d| m.weyl_power(d, k).matrix().clone(),
    )
}

/// A Mackey functor with a commutative ring structure on every level,
/// given by structure constants on the level generators.
#[derive(Clone)]
pub struct GreenFunctor {
    mackey: Arc<MackeyFunctor>,
    products: BTreeMap<u64, Vec<Vec<Vector>>>,
    units: BTreeMap<u64, Vector>,
}

impl fmt::Debug for GreenFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Green{:?}", self.mackey)
    }
}

impl GreenFunctor {
    pub fn new(mackey: Arc<MackeyFunctor>, products: BTreeMap<u64, Vec<Vec<Vector>>>, units: BTreeMap<u64, Vector>) -> Result<Self> {
        for d in mackey.divisors() {
            let k = mackey.num_generators(d);
            let ok = products.get(&d).is_some_and(|p| p.len() == k && p.iter().all(|r| r.len() == k && r.iter().all(|v| v.len() == k)))
                && units.get(&d).is_some_and(|u| u.len() == k);
            if !ok {
                return Err(Error::Invalid(format!("ring structure has the wrong shape at level {d}")));
            }
        }
        Ok(GreenFunctor { mackey, products, units })
    }

    /// Ring structure from a bilinear product on generators.
    pub fn from_product(mackey: Arc<MackeyFunctor>, product: impl Fn(u64, usize, usize) -> Vector, unit: impl Fn(u64) -> Vector) -> Result<Self> {
        let mut products = BTreeMap::new();
        let mut units = BTreeMap::new();
        for d in mackey.divisors() {
            let k = mackey.num_generators(d);
            products.insert(d, (0..k).map(|i| (0..k).map(|j| product(d, i, j)).collect()).collect());
            units.insert(d, unit(d));
        }
        GreenFunctor::new(mackey, products, units)
    }

    pub fn mackey(&self) -> &Arc<MackeyFunctor> {
        &self.mackey
    }

    pub fn ctx(&self) -> GroupContext {
        self.mackey.ctx
    }

    pub fn n(&self) -> u64 {
        self.mackey.n()
    }

    pub fn unit(&self, d: u64) -> &Vector {
        &self.units[&d]
    }

    /// Product of generators `i` and `j` at level `d`.
    pub fn product_of_generators(&self, d: u64, i: usize, j: usize) -> &Vector {
        &self.products[&d][i][j]
    }

    pub fn mul(&self, d: u64, x: &[BigInt], y: &[BigInt]) -> Vector {
        let table = &self.products[&d];
        let mut out = vec![BigInt::zero(); x.len()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                add_scaled(&mut out, &(a * b), &table[i][j]);
            }
        }
        self.mackey.level(d).reduce(&out)
    }

    /// Transport the ring structure along levelwise isomorphisms `to`/`from`.
    pub fn transport(&self, to: &MackeyHom, from: &MackeyHom) -> GreenFunctor {
        let target = to.target().clone();
        let product = |d: u64, i: usize, j: usize| {
            let x = from.component(d).image_of_generator(i);
            let y = from.component(d).image_of_generator(j);
            target.level(d).reduce(&to.component(d).apply(&self.mul(d, &x, &y)))
        };
        let unit = |d: u64| target.level(d).reduce(&to.component(d).apply(self.unit(d)));
        GreenFunctor::from_product(target.clone(), product, unit).expect("transported structure has the right shape")
    }

    /// Isomorphic Green functor on diagonal presentations, with the isomorphisms.
    pub fn simplify(&self) -> (GreenFunctor, MackeyHom, MackeyHom) {
        let s = self.mackey.simplify();
        let g = self.transport(&s.to_simple, &s.from_simple);
        (g, s.to_simple, s.from_simple)
    }

    pub fn restrict(&self, j: u64) -> Result<GreenFunctor> {
        let m = Arc::new(restrict(&self.mackey, j)?);
        let products = self.products.iter().filter(|(d, _)| j.is_multiple_of(**d)).map(|(d, p)| (*d, p.clone())).collect();
        let units = self.units.iter().filter(|(d, _)| j.is_multiple_of(**d)).map(|(d, u)| (*d, u.clone())).collect();
        GreenFunctor::new(m, products, units)
    }
}

#[cfg(test)]
mod tests;
