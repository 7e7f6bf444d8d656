//! Box products of Mackey functors, Green structures on them, and quotients
//! by Green ideals.
//!
//! Level `d` of `M_1 [] ... [] M_k` is presented on tags `(e; x_1, ..., x_k)`
//! with `e | d` and `x_i` a generator of `M_i(e)`; the tag stands for
//! `tr^d_e(x_1 (x) ... (x) x_k)`. Relations are the tensor relations, the
//! Weyl relations for `C_d/C_e`, and Frobenius relations along prime edges
//! `e | f | d`. Factors are first replaced by their Smith presentations so
//! the tensor relations are diagonal.

mod ideal;
mod iso;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{divisors, gcd, lcm};
use crate::error::{Error, Result};
use crate::fgab::matrix::{add_scaled, unit_vector, zero_vector};
use crate::fgab::{FgAbGroup, Matrix, Vector};
use crate::mackey::{GreenFunctor, GroupContext, MackeyFunctor, MackeyHom};

pub use ideal::{green_ideal, quotient_by_green_ideal};
pub use iso::{product_orbits, representable_product_isomorphism, symmetry_isomorphism, unit_isomorphism};

#[derive(Clone, Debug)]
struct Block {
    e: u64,
    offset: usize,
    dims: Vec<usize>,
}

impl Block {
    fn size(&self) -> usize {
        self.dims.iter().product()
    }

    fn index(&self, gens: &[usize]) -> usize {
        let mut idx = 0;
        for (g, d) in gens.iter().zip(&self.dims) {
            idx = idx * d + g;
        }
        self.offset + idx
    }
}

#[derive(Clone, Debug)]
struct BoxLevel {
    blocks: Vec<Block>,
    ntags: usize,
    to: Matrix,
    from: Matrix,
}

/// All multi-indices below `dims`, last position varying fastest.
pub(crate) fn multi_indices(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        let mut next = Vec::with_capacity(out.len() * d);
        for v in &out {
            for i in 0..d {
                let mut w = v.clone();
                w.push(i);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// A presented box product with its tag bookkeeping.
#[derive(Clone)]
pub struct BoxProduct {
    ctx: GroupContext,
    factors: Vec<Arc<MackeyFunctor>>,
    factor_to: Vec<MackeyHom>,
    factor_from: Vec<MackeyHom>,
    single: bool,
    levels: BTreeMap<u64, BoxLevel>,
    result: Arc<MackeyFunctor>,
}

impl std::fmt::Debug for BoxProduct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BoxProduct[{} factors]{:?}", self.factors.len(), self.result)
    }
}

/// `M [] N`.
pub fn box_product(m: &MackeyFunctor, n: &MackeyFunctor) -> Result<BoxProduct> {
    box_many(&[m, n])
}

/// `M_1 [] ... [] M_k` with flattened tags.
pub fn box_many(factors: &[&MackeyFunctor]) -> Result<BoxProduct> {
    let ctx = factors.first().ok_or_else(|| Error::Invalid("empty box product".into()))?.ctx();
    if factors.iter().any(|m| m.ctx() != ctx) {
        return Err(Error::ContextMismatch("groups".into()));
    }
    let parts = factors
        .iter()
        .map(|m| {
            let s = m.simplify();
            (s.functor, s.to_simple, s.from_simple)
        })
        .collect();
    Ok(BoxProduct::build(ctx, parts))
}

impl BoxProduct {
    /// Build from factors already on diagonal presentations, with their
    /// isomorphisms to and from the original functors.
    pub(crate) fn build(ctx: GroupContext, parts: Vec<(Arc<MackeyFunctor>, MackeyHom, MackeyHom)>) -> Self {
        let single = parts.len() == 1;
        let mut factors = Vec::new();
        let mut factor_to = Vec::new();
        let mut factor_from = Vec::new();
        for (f, t, fr) in parts {
            factors.push(f);
            factor_to.push(t);
            factor_from.push(fr);
        }
        let mut layouts: BTreeMap<u64, (Vec<Block>, usize)> = BTreeMap::new();
        for d in ctx.divisors() {
            let mut blocks = Vec::new();
            let mut offset = 0;
            let es = if single { vec![d] } else { divisors(d) };
            for e in es {
                let dims: Vec<usize> = factors.iter().map(|f| f.num_generators(e)).collect();
                let b = Block { e, offset, dims };
                offset += b.size();
                blocks.push(b);
            }
            layouts.insert(d, (blocks, offset));
        }
        let mut bp = BoxProduct {
            ctx,
            factors,
            factor_to,
            factor_from,
            single,
            levels: layouts
                .into_iter()
                .map(|(d, (blocks, ntags))| (d, BoxLevel { blocks, ntags, to: Matrix::zeros(0, 0), from: Matrix::zeros(0, 0) }))
                .collect(),
            result: Arc::new(MackeyFunctor::zero(ctx)),
        };
        bp.assemble();
        bp
    }

    fn block(&self, d: u64, e: u64) -> &Block {
        self.levels[&d].blocks.iter().find(|b| b.e == e).expect("no block for this subgroup")
    }

    /// Multilinear expansion of `tr^d_e(v_1 (x) ... (x) v_k)` on raw tags,
    /// with `v_i` in the simplified coordinates of factor `i` at level `e`.
    fn embed_raw(&self, d: u64, e: u64, vectors: &[Vector]) -> Vector {
        let ntags = self.levels[&d].ntags;
        if self.single {
            return self.factors[0].apply_tr(e, d, &vectors[0]);
        }
        let mut out = zero_vector(ntags);
        let block = self.block(d, e);
        fn rec(vectors: &[Vector], pos: usize, idx: usize, coeff: &BigInt, block: &Block, out: &mut Vector) {
            if pos == vectors.len() {
                out[block.offset + idx] += coeff;
                return;
            }
            for (g, x) in vectors[pos].iter().enumerate() {
                if !x.is_zero() {
                    rec(vectors, pos + 1, idx * block.dims[pos] + g, &(coeff * x), block, out);
                }
            }
        }
        rec(vectors, 0, 0, &BigInt::one(), block, &mut out);
        out
    }

    fn tag_units(&self, e: u64, gens: &[usize]) -> Vec<Vector> {
        gens.iter().enumerate().map(|(i, &g)| unit_vector(self.factors[i].num_generators(e), g)).collect()
    }

    /// Raw tags of level `d` in generator order.
    pub fn tags(&self, d: u64) -> Vec<(u64, Vec<usize>)> {
        let mut out = Vec::new();
        for b in &self.levels[&d].blocks {
            for gens in multi_indices(&b.dims) {
                out.push((b.e, gens));
            }
        }
        out
    }

    fn relations(&self, d: u64) -> Vec<Vector> {
        let n = self.ctx.n();
        let mut rels = Vec::new();
        let ntags = self.levels[&d].ntags;
        if self.single {
            return self.factors[0].level(d).relations().row_iter().map(|r| r.to_vec()).collect();
        }
        let k = self.factors.len();
        for b in &self.levels[&d].blocks {
            let e = b.e;
            let ords: Vec<Vec<BigInt>> = self.factors.iter().map(|f| f.level(e).diagonal_orders().expect("diagonal factor")).collect();
            let weyls: Vec<Matrix> = self.factors.iter().map(|f| f.weyl_power(e, n / d).matrix().clone()).collect();
            for gens in multi_indices(&b.dims) {
                let idx = b.index(&gens);
                let mut o = BigInt::zero();
                for (i, &g) in gens.iter().enumerate() {
                    o = num_integer::Integer::gcd(&o, &ords[i][g]);
                }
                if !o.is_zero() {
                    let mut r = zero_vector(ntags);
                    r[idx] = o;
                    rels.push(r);
                }
                if e != d {
                    let moved: Vec<Vector> = gens.iter().enumerate().map(|(i, &g)| weyls[i].row_vec(g)).collect();
                    let mut r = self.embed_raw(d, e, &moved);
                    r[idx] -= 1;
                    rels.push(r);
                }
            }
        }
        // Frobenius relations along prime edges e | f inside d.
        for (e, f) in crate::arith::prime_edges(d) {
            for j in 0..k {
                let dims: Vec<usize> = (0..k).map(|l| if l == j { self.factors[l].num_generators(e) } else { self.factors[l].num_generators(f) }).collect();
                for gens in multi_indices(&dims) {
                    let top: Vec<Vector> = (0..k)
                        .map(|l| if l == j { self.factors[l].tr_edge(e, f).image_of_generator(gens[l]) } else { unit_vector(dims[l], gens[l]) })
                        .collect();
                    let bottom: Vec<Vector> = (0..k)
                        .map(|l| if l == j { unit_vector(dims[l], gens[l]) } else { self.factors[l].res_edge(e, f).image_of_generator(gens[l]) })
                        .collect();
                    let mut r = self.embed_raw(d, f, &top);
                    add_scaled(&mut r, &BigInt::from(-1), &self.embed_raw(d, e, &bottom));
                    rels.push(r);
                }
            }
        }
        rels
    }

    fn raw_res(&self, d: u64, d2: u64) -> Matrix {
        let n = self.ctx.n();
        let ntags = self.levels[&d].ntags;
        let rows = self
            .tags(d2)
            .into_iter()
            .map(|(e, gens)| {
                if self.single {
                    return self.factors[0].res_edge(d, d2).image_of_generator(gens[0]);
                }
                let g = gcd(d, e);
                let mut acc = zero_vector(ntags);
                let base: Vec<Vector> =
                    gens.iter().enumerate().map(|(i, &x)| self.factors[i].apply_res(g, e, &unit_vector(self.factors[i].num_generators(e), x))).collect();
                for j in 0..d2 / lcm(d, e) {
                    let moved: Vec<Vector> = base.iter().enumerate().map(|(i, v)| self.factors[i].apply_weyl(g, (n / d2) * j, v)).collect();
                    add_scaled(&mut acc, &BigInt::one(), &self.embed_raw(d, g, &moved));
                }
                acc
            })
            .collect();
        Matrix::from_rows(ntags, rows)
    }

    fn raw_tr(&self, d: u64, d2: u64) -> Matrix {
        let ntags = self.levels[&d2].ntags;
        let rows = self
            .tags(d)
            .into_iter()
            .map(|(e, gens)| {
                if self.single {
                    return self.factors[0].tr_edge(d, d2).image_of_generator(gens[0]);
                }
                self.embed_raw(d2, e, &self.tag_units(e, &gens))
            })
            .collect();
        Matrix::from_rows(ntags, rows)
    }

    fn raw_weyl(&self, d: u64) -> Matrix {
        let ntags = self.levels[&d].ntags;
        let rows = self
            .tags(d)
            .into_iter()
            .map(|(e, gens)| {
                let moved: Vec<Vector> = gens.iter().enumerate().map(|(i, &g)| self.factors[i].weyl(e).image_of_generator(g)).collect();
                self.embed_raw(d, e, &moved)
            })
            .collect();
        Matrix::from_rows(ntags, rows)
    }

    fn assemble(&mut self) {
        let divs = self.ctx.divisors();
        let mut groups = BTreeMap::new();
        for &d in &divs {
            let raw = Arc::new(FgAbGroup::from_relations(self.levels[&d].ntags, self.relations(d)));
            let s = raw.simplify();
            let lev = self.levels.get_mut(&d).unwrap();
            lev.to = s.to_simple.matrix().clone();
            lev.from = s.from_simple.matrix().clone();
            groups.insert(d, s.group);
        }
        let conj = |raw: Matrix, s: u64, t: u64| {
            let m = self.levels[&s].from.mul(&raw).mul(&self.levels[&t].to);
            let g = &groups[&t];
            Matrix::from_rows(m.cols(), m.row_iter().map(|r| g.reduce(r)).collect())
        };
        let result = MackeyFunctor::from_fn(
            self.ctx,
            |d| (*groups[&d]).clone(),
            |d, e| conj(self.raw_res(d, e), e, d),
            |d, e| conj(self.raw_tr(d, e), d, e),
            |d| conj(self.raw_weyl(d), d, d),
        )
        .expect("box product data has consistent shapes");
        self.result = Arc::new(result);
    }

    pub fn ctx(&self) -> GroupContext {
        self.ctx
    }

    pub fn result(&self) -> &Arc<MackeyFunctor> {
        &self.result
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    /// Factor `i` on its diagonal presentation.
    pub fn factor(&self, i: usize) -> &Arc<MackeyFunctor> {
        &self.factors[i]
    }

    /// Generator `g` of the simplified factor `i` at level `e`, in the original coordinates.
    pub fn factor_vector(&self, i: usize, e: u64, g: usize) -> Vector {
        self.factor_from[i].component(e).image_of_generator(g)
    }

    /// Class of `tr^d_e(v_1 (x) ... (x) v_k)` for `v_i` in simplified factor coordinates.
    pub fn embed(&self, d: u64, e: u64, vectors: &[Vector]) -> Vector {
        let raw = self.embed_raw(d, e, vectors);
        self.result.level(d).reduce(&self.levels[&d].to.apply(&raw))
    }

    /// As [`BoxProduct::embed`] with `v_i` in the original factor coordinates.
    pub fn embed_original(&self, d: u64, e: u64, vectors: &[Vector]) -> Vector {
        let simple: Vec<Vector> = vectors.iter().enumerate().map(|(i, v)| self.factor_to[i].apply(e, v)).collect();
        self.embed(d, e, &simple)
    }

    /// Raw tag combination representing result generator `i` at level `d`.
    pub fn generator_tags(&self, d: u64, i: usize) -> Vector {
        self.levels[&d].from.row_vec(i)
    }

    /// Class of a raw tag combination at level `d`.
    pub fn class_of_tags(&self, d: u64, raw: &[BigInt]) -> Vector {
        self.result.level(d).reduce(&self.levels[&d].to.apply(raw))
    }

    /// The morphism out of the box product determined by its values on tags;
    /// `f(d, e, gens)` is the image of `tr^d_e` of the tag at level `d`.
    pub fn hom_from_tags(&self, target: Arc<MackeyFunctor>, f: impl Fn(u64, u64, &[usize]) -> Vector) -> MackeyHom {
        let t = target.clone();
        MackeyHom::from_matrices(self.result.clone(), target, |d| {
            let images: Vec<Vector> = self.tags(d).into_iter().map(|(e, gens)| f(d, e, &gens)).collect();
            let raw = Matrix::from_rows(t.num_generators(d), images);
            let m = self.levels[&d].from.mul(&raw);
            Matrix::from_rows(m.cols(), m.row_iter().map(|r| t.level(d).reduce(r)).collect())
        })
    }
}

impl BoxProduct {
    /// `f_1 [] ... [] f_k` into another box product, the `f_i` acting on the original factors.
    pub fn box_of_homs(&self, target: &BoxProduct, homs: &[&MackeyHom]) -> MackeyHom {
        self.hom_from_tags(target.result().clone(), |d, e, gens| {
            let images: Vec<Vector> = homs.iter().enumerate().map(|(i, h)| h.apply(e, &self.factor_vector(i, e, gens[i]))).collect();
            target.embed_original(d, e, &images)
        })
    }
}

/// A box product of Green functors with its induced ring structure.
#[derive(Clone, Debug)]
pub struct GreenBox {
    pub presentation: BoxProduct,
    /// The factors on diagonal presentations.
    pub rings: Vec<GreenFunctor>,
    pub green: GreenFunctor,
}

/// `R_1 [] ... [] R_k` as a Green functor.
pub fn green_box(factors: &[&GreenFunctor]) -> Result<GreenBox> {
    let ctx = factors.first().ok_or_else(|| Error::Invalid("empty box product".into()))?.ctx();
    if factors.iter().any(|g| g.ctx() != ctx) {
        return Err(Error::ContextMismatch("groups".into()));
    }
    let mut parts = Vec::new();
    let mut rings = Vec::new();
    for g in factors {
        let (s, to, from) = g.simplify();
        parts.push((s.mackey().clone(), to, from));
        rings.push(s);
    }
    Ok(green_box_simplified(ctx, parts, rings))
}

fn green_box_simplified(ctx: GroupContext, parts: Vec<(Arc<MackeyFunctor>, MackeyHom, MackeyHom)>, rings: Vec<GreenFunctor>) -> GreenBox {
    let presentation = BoxProduct::build(ctx, parts);
    let green = if presentation.single {
        GreenFunctor::new(presentation.result.clone(), ring_tables(&rings[0]), ring_units(&rings[0])).expect("single factor")
    } else {
        box_ring_structure(&presentation, &rings)
    };
    GreenBox { presentation, rings, green }
}

fn ring_tables(r: &GreenFunctor) -> BTreeMap<u64, Vec<Vec<Vector>>> {
    r.mackey()
        .divisors()
        .into_iter()
        .map(|d| {
            let k = r.mackey().num_generators(d);
            (d, (0..k).map(|i| (0..k).map(|j| r.product_of_generators(d, i, j).clone()).collect()).collect())
        })
        .collect()
}

fn ring_units(r: &GreenFunctor) -> BTreeMap<u64, Vector> {
    r.mackey().divisors().into_iter().map(|d| (d, r.unit(d).clone())).collect()
}

/// Product of two tags at level `d` in raw coordinates.
fn tag_product(bp: &BoxProduct, rings: &[GreenFunctor], d: u64, a: &(u64, Vec<usize>), b: &(u64, Vec<usize>)) -> Vector {
    let n = bp.ctx.n();
    let (e1, x) = a;
    let (e2, y) = b;
    let g = gcd(*e1, *e2);
    let mut acc = zero_vector(bp.levels[&d].ntags);
    let xs: Vec<Vector> = x.iter().enumerate().map(|(l, &i)| rings[l].mackey().apply_res(g, *e1, &unit_vector(bp.factors[l].num_generators(*e1), i))).collect();
    let ys: Vec<Vector> = y.iter().enumerate().map(|(l, &i)| rings[l].mackey().apply_res(g, *e2, &unit_vector(bp.factors[l].num_generators(*e2), i))).collect();
    for j in 0..d / lcm(*e1, *e2) {
        let prod: Vec<Vector> = (0..xs.len())
            .map(|l| {
                let moved = rings[l].mackey().apply_weyl(g, (n / d) * j, &ys[l]);
                rings[l].mul(g, &xs[l], &moved)
            })
            .collect();
        add_scaled(&mut acc, &BigInt::one(), &bp.embed_raw(d, g, &prod));
    }
    acc
}

fn box_ring_structure(bp: &BoxProduct, rings: &[GreenFunctor]) -> GreenFunctor {
    let mut tables = BTreeMap::new();
    let mut units = BTreeMap::new();
    for d in bp.ctx.divisors() {
        let tags = bp.tags(d);
        let k = bp.result.num_generators(d);
        let gen_tags: Vec<Vec<(usize, BigInt)>> =
            (0..k).map(|i| bp.generator_tags(d, i).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()).collect();
        let mut memo: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        let mut table = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in i..k {
                let mut raw = zero_vector(bp.levels[&d].ntags);
                for (s, cs) in &gen_tags[i] {
                    for (t, ct) in &gen_tags[j] {
                        let key = if s <= t { (*s, *t) } else { (*t, *s) };
                        let v = memo.entry(key).or_insert_with(|| tag_product(bp, rings, d, &tags[key.0], &tags[key.1]));
                        add_scaled(&mut raw, &(cs * ct), v);
                    }
                }
                let v = bp.class_of_tags(d, &raw);
                table[i][j] = v.clone();
                table[j][i] = v;
            }
        }
        tables.insert(d, table);
        let ones: Vec<Vector> = rings.iter().map(|r| r.unit(d).clone()).collect();
        units.insert(d, bp.embed(d, d, &ones));
    }
    GreenFunctor::new(bp.result.clone(), tables, units).expect("box ring structure has the right shape")
}

/// `R^{[] k}` for a Green functor `R`; `k = 1` is `R` itself on its
/// diagonal presentation.
#[derive(Clone, Debug)]
pub struct BoxPower {
    pub presentation: BoxProduct,
    /// `R` on its diagonal presentation, shared by every factor.
    pub ring: GreenFunctor,
    /// Isomorphisms between `ring` and the functor the power was taken of.
    pub to_ring: MackeyHom,
    pub from_ring: MackeyHom,
    pub k: usize,
}

impl BoxPower {
    pub fn result(&self) -> &Arc<MackeyFunctor> {
        self.presentation.result()
    }

    /// Green structure on the box power.
    pub fn green(&self) -> GreenFunctor {
        if self.k == 1 {
            return self.ring.clone();
        }
        box_ring_structure(&self.presentation, &vec![self.ring.clone(); self.k])
    }

    /// The morphism `R^{[] k} -> R^{[] (k-1)}` multiplying factors `i` and `i+1`.
    pub fn multiply_adjacent(&self, target: &BoxPower, i: usize) -> MackeyHom {
        assert_eq!(target.k + 1, self.k);
        assert!(i + 1 < self.k);
        let r = &self.ring;
        self.presentation.hom_from_tags(target.result().clone(), |d, e, gens| {
            let units = self.presentation.tag_units(e, gens);
            let mut v: Vec<Vector> = Vec::with_capacity(self.k - 1);
            for (l, u) in units.iter().enumerate() {
                if l == i + 1 {
                    continue;
                }
                if l == i {
                    v.push(r.mul(e, u, &units[i + 1]));
                } else {
                    v.push(u.clone());
                }
            }
            target.presentation.embed(d, e, &v)
        })
    }
}

pub fn box_power(r: &GreenFunctor, k: usize) -> Result<BoxPower> {
    if k == 0 {
        return Err(Error::Invalid("box powers start at 1".into()));
    }
    let (s, to, from) = r.simplify();
    let mut p = box_power_of_simplified(&s, k);
    p.to_ring = to;
    p.from_ring = from;
    Ok(p)
}

/// Box power of a Green functor already on a diagonal presentation.
pub(crate) fn box_power_of_simplified(s: &GreenFunctor, k: usize) -> BoxPower {
    let id = MackeyHom::identity(s.mackey().clone());
    let parts = (0..k).map(|_| (s.mackey().clone(), id.clone(), id.clone())).collect();
    BoxPower { presentation: BoxProduct::build(s.ctx(), parts), ring: s.clone(), to_ring: id.clone(), from_ring: id, k }
}

#[cfg(test)]
mod tests;
