//! Fixed-point Mackey functors of modules and rings with a `C_n`-action.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{GreenFunctor, GroupContext, MackeyFunctor};
use crate::error::{Error, Result};
use crate::fgab::matrix::{add_scaled, vector_from_i64, zero_vector};
use crate::fgab::{AbHom, FgAbGroup, Matrix, Subgroup, Vector};

/// A finitely generated abelian group with the generator acting by `x -> x * action`.
#[derive(Clone, Debug)]
pub struct ActionModule {
    pub group: Arc<FgAbGroup>,
    pub action: Matrix,
}

impl ActionModule {
    pub fn new(group: FgAbGroup, action: Matrix) -> Result<Self> {
        let group = Arc::new(group);
        AbHom::new(group.clone(), group.clone(), action.clone())?;
        Ok(ActionModule { group, action })
    }

    /// `Z^r` with the given action matrix.
    pub fn free(action: Matrix) -> Result<Self> {
        ActionModule::new(FgAbGroup::free(action.rows()), action)
    }

    pub fn trivial(group: FgAbGroup) -> Self {
        let k = group.num_generators();
        ActionModule { group: Arc::new(group), action: Matrix::identity(k) }
    }

    fn power(&self, k: u64) -> Matrix {
        self.action.pow(k)
    }

    fn check_order(&self, n: u64) -> Result<()> {
        let id = AbHom::identity(self.group.clone());
        let an = AbHom::new_unchecked(self.group.clone(), self.group.clone(), self.power(n));
        if !an.equals(&id) {
            return Err(Error::ActionOrder(n));
        }
        Ok(())
    }
}

/// A commutative ring on an [`ActionModule`], acted on by ring automorphisms.
#[derive(Clone, Debug)]
pub struct ActionRing {
    pub module: ActionModule,
    /// `products[i][j]` is the product of generators `i` and `j`.
    pub products: Vec<Vec<Vector>>,
    pub unit: Vector,
}

impl ActionRing {
    pub fn new(module: ActionModule, products: Vec<Vec<Vector>>, unit: Vector) -> Result<Self> {
        let r = ActionRing { module, products, unit };
        r.validate()?;
        Ok(r)
    }

    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Vector {
        let mut out = zero_vector(x.len());
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    add_scaled(&mut out, &(a * b), &self.products[i][j]);
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let g = &self.module.group;
        let k = g.num_generators();
        let bad = |s: &str| Err(Error::Invalid(format!("not a commutative ring with action: {s}")));
        if self.products.len() != k || self.products.iter().any(|r| r.len() != k || r.iter().any(|v| v.len() != k)) {
            return bad("structure constants have the wrong shape");
        }
        // Well defined on the presentation: relations multiply to zero.
        for rel in g.relations().row_iter() {
            for j in 0..k {
                if !g.is_zero(&self.mul(rel, &g.generator(j))) {
                    return bad("product does not respect relations");
                }
            }
        }
        let act = |x: &[BigInt]| self.module.action.apply(x);
        for i in 0..k {
            let x = g.generator(i);
            if !g.elements_equal(&self.mul(&self.unit, &x), &x) {
                return bad("unit");
            }
            for j in 0..k {
                let y = g.generator(j);
                if !g.elements_equal(&self.mul(&x, &y), &self.mul(&y, &x)) {
                    return bad("commutativity");
                }
                if !g.elements_equal(&act(&self.mul(&x, &y)), &self.mul(&act(&x), &act(&y))) {
                    return bad("action is not multiplicative");
                }
                for l in 0..k {
                    let z = g.generator(l);
                    if !g.elements_equal(&self.mul(&self.mul(&x, &y), &z), &self.mul(&x, &self.mul(&y, &z))) {
                        return bad("associativity");
                    }
                }
            }
        }
        if !g.elements_equal(&act(&self.unit), &self.unit) {
            return bad("action does not fix the unit");
        }
        Ok(())
    }

    /// `Z` with trivial action.
    pub fn integers() -> Self {
        Self::trivial_cyclic(0)
    }

    /// `Z/m` (or `Z` for `m = 0`) with trivial action.
    pub fn trivial_cyclic(m: u64) -> Self {
        let group = if m == 0 { FgAbGroup::free(1) } else { FgAbGroup::cyclic(m) };
        ActionRing { module: ActionModule::trivial(group), products: vec![vec![vector_from_i64(&[1])]], unit: vector_from_i64(&[1]) }
    }

    /// Functions on the `C_k`-set `C_k`: `Z^k` with idempotent basis, the
    /// generator shifting coordinates cyclically. For `k = 2` this is the swap.
    pub fn coinduced(k: usize) -> Self {
        let mut action = Matrix::zeros(k, k);
        for i in 0..k {
            action[(i, (i + 1) % k)] = BigInt::from(1);
        }
        let products = (0..k).map(|i| (0..k).map(|j| if i == j { crate::fgab::matrix::unit_vector(k, i) } else { zero_vector(k) }).collect()).collect();
        ActionRing { module: ActionModule::free(action).unwrap(), products, unit: vec![BigInt::from(1); k] }
    }

    /// Gaussian integers with complex conjugation.
    pub fn gaussian_conjugation() -> Self {
        let i = |v: &[i64]| vector_from_i64(v);
        ActionRing {
            module: ActionModule::free(Matrix::from_i64(2, 2, &[1, 0, 0, -1])).unwrap(),
            products: vec![vec![i(&[1, 0]), i(&[0, 1])], vec![i(&[0, 1]), i(&[-1, 0])]],
            unit: i(&[1, 0]),
        }
    }

    /// Dual numbers `Z[x]/x^2` with `x -> -x`.
    pub fn dual_numbers_sign() -> Self {
        let i = |v: &[i64]| vector_from_i64(v);
        ActionRing {
            module: ActionModule::free(Matrix::from_i64(2, 2, &[1, 0, 0, -1])).unwrap(),
            products: vec![vec![i(&[1, 0]), i(&[0, 1])], vec![i(&[0, 1]), i(&[0, 0])]],
            unit: i(&[1, 0]),
        }
    }
}

fn fixed_subgroups(ctx: GroupContext, module: &ActionModule) -> Result<Vec<(u64, Subgroup)>> {
    module.check_order(ctx.n())?;
    let g = &module.group;
    let id = Matrix::identity(g.num_generators());
    Ok(ctx
        .divisors()
        .into_iter()
        .map(|d| {
            let diff = AbHom::new_unchecked(g.clone(), g.clone(), module.power(ctx.n() / d).sub(&id));
            (d, diff.kernel())
        })
        .collect())
}

fn lift_rows(sub: &Subgroup, vectors: impl Iterator<Item = Vector>) -> Result<Matrix> {
    let rows = vectors.map(|v| sub.lift(&v).ok_or(Error::NotInSubgroup)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(sub.group.num_generators(), rows))
}

/// `M(d) = module^{C_d}` with inclusions as restrictions and orbit sums as transfers.
pub fn fixed_point_mackey(ctx: GroupContext, module: &ActionModule) -> Result<MackeyFunctor> {
    Ok(fixed_point_parts(ctx, module)?.0)
}

fn fixed_point_parts(ctx: GroupContext, module: &ActionModule) -> Result<(MackeyFunctor, Vec<(u64, Subgroup)>)> {
    let n = ctx.n();
    let subs = fixed_subgroups(ctx, module)?;
    let sub = |d: u64| &subs.iter().find(|(e, _)| *e == d).unwrap().1;
    let gens = |d: u64| {
        let s = sub(d);
        (0..s.group.num_generators()).map(move |i| s.inclusion.image_of_generator(i))
    };
    let mut failure = None;
    let mut record = |r: Result<Matrix>| match r {
        Ok(m) => m,
        Err(e) => {
            failure.get_or_insert(e);
            Matrix::zeros(0, 0)
        }
    };
    let mut res = std::collections::BTreeMap::new();
    let mut tr = std::collections::BTreeMap::new();
    let mut weyl = std::collections::BTreeMap::new();
    for (d, e) in ctx.prime_edges() {
        res.insert((d, e), record(lift_rows(sub(d), gens(e))));
        let powers: Vec<Matrix> = (0..e / d).map(|j| module.power((n / e) * j)).collect();
        let orbit_sum = |v: Vector| {
            let mut acc = zero_vector(v.len());
            for p in &powers {
                add_scaled(&mut acc, &BigInt::from(1), &p.apply(&v));
            }
            acc
        };
        tr.insert((d, e), record(lift_rows(sub(e), gens(d).map(orbit_sum))));
    }
    for d in ctx.divisors() {
        weyl.insert(d, record(lift_rows(sub(d), gens(d).map(|v| module.action.apply(&v)))));
    }
    if let Some(e) = failure {
        return Err(e);
    }
    let m = MackeyFunctor::from_fn(ctx, |d| (*sub(d).group).clone(), |d, e| res[&(d, e)].clone(), |d, e| tr[&(d, e)].clone(), |d| weyl[&d].clone())?;
    Ok((m, subs))
}

/// Fixed-point Green functor of a ring with `C_n` acting by ring maps.
pub fn fixed_point_green(ctx: GroupContext, ring: &ActionRing) -> Result<GreenFunctor> {
    let (m, subs) = fixed_point_parts(ctx, &ring.module)?;
    let sub = |d: u64| &subs.iter().find(|(e, _)| *e == d).unwrap().1;
    let product = |d: u64, i: usize, j: usize| {
        let s = sub(d);
        let x = s.inclusion.image_of_generator(i);
        let y = s.inclusion.image_of_generator(j);
        s.lift(&ring.mul(&x, &y)).expect("fixed points form a subring")
    };
    let unit = |d: u64| sub(d).lift(&ring.unit).expect("unit is fixed");
    GreenFunctor::from_product(Arc::new(m), product, unit)
}
