//! Standard isomorphisms out of box products.

use std::sync::Arc;

use num_traits::Zero;

use super::{box_product, BoxProduct};
use crate::arith::{divisors, gcd, lcm};
use crate::error::Result;
use crate::fgab::matrix::{add_scaled, zero_vector};
use crate::fgab::Vector;
use crate::mackey::{burnside, representable, GroupContext, MackeyFunctor, MackeyHom, Orbit};

/// `A [] M -> M`, sending `tr^d_e([C_e/C_c] (x) m)` to `tr^d_e tr^e_c res^e_c m`.
pub fn unit_isomorphism(m: &Arc<MackeyFunctor>) -> Result<(BoxProduct, MackeyHom)> {
    let a = burnside(m.ctx());
    let bp = box_product(a.mackey(), m)?;
    let hom = bp.hom_from_tags(m.clone(), |d, e, gens| {
        let coeffs = bp.factor_vector(0, e, gens[0]);
        let x = bp.factor_vector(1, e, gens[1]);
        let mut acc = zero_vector(m.num_generators(e));
        for (c, k) in divisors(e).into_iter().zip(&coeffs) {
            if !k.is_zero() {
                add_scaled(&mut acc, k, &m.apply_tr(c, e, &m.apply_res(c, e, &x)));
            }
        }
        m.level(d).reduce(&m.apply_tr(e, d, &acc))
    });
    Ok((bp, hom))
}

/// `M [] N -> N [] M`.
pub fn symmetry_isomorphism(m: &MackeyFunctor, n: &MackeyFunctor) -> Result<(BoxProduct, BoxProduct, MackeyHom)> {
    let mn = box_product(m, n)?;
    let nm = box_product(n, m)?;
    let hom = mn.hom_from_tags(nm.result().clone(), |d, e, gens| {
        let x = mn.factor_vector(0, e, gens[0]);
        let y = mn.factor_vector(1, e, gens[1]);
        nm.embed_original(d, e, &[y, x])
    });
    Ok((mn, nm, hom))
}

/// Orbits of `T1 x T2`, in the order used by [`representable_product_isomorphism`].
pub fn product_orbits(n: u64, t1: &[Orbit], t2: &[Orbit]) -> Vec<Orbit> {
    let mut out = Vec::new();
    for &Orbit(a) in t1 {
        for &Orbit(b) in t2 {
            for _ in 0..n / lcm(a, b) {
                out.push(Orbit(gcd(a, b)));
            }
        }
    }
    out
}

/// `A_{T1} [] A_{T2} -> A_{T1 x T2}`.
pub fn representable_product_isomorphism(ctx: GroupContext, t1: &[Orbit], t2: &[Orbit]) -> Result<(BoxProduct, Arc<MackeyFunctor>, MackeyHom)> {
    let n = ctx.n();
    let a1 = representable(ctx, t1)?;
    let a2 = representable(ctx, t2)?;
    let prod = product_orbits(n, t1, t2);
    let target = Arc::new(representable(ctx, &prod)?);
    // First orbit index of each block O_i x O_j.
    let mut first = Vec::new();
    let mut next = 0;
    for &Orbit(a) in t1 {
        let mut row = Vec::new();
        for &Orbit(b) in t2 {
            row.push(next);
            next += (n / lcm(a, b)) as usize;
        }
        first.push(row);
    }
    let cells = |d: u64, orbits: &[Orbit]| crate::mackey::representable_cells(n, orbits, d);
    let bp = box_product(&a1, &a2)?;
    let hom = bp.hom_from_tags(target.clone(), |d, e, gens| {
        let u = bp.factor_vector(0, e, gens[0]);
        let v = bp.factor_vector(1, e, gens[1]);
        let (c1s, c2s, cd) = (cells(e, t1), cells(e, t2), cells(d, &prod));
        let index = |cell: (usize, u64, u64)| cd.iter().position(|&c| c == cell).expect("cell of the product");
        let mut out: Vector = zero_vector(cd.len());
        for (p, cu) in u.iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            for (q, cv) in v.iter().enumerate() {
                if cv.is_zero() {
                    continue;
                }
                let (i1, s1, x1) = c1s[p];
                let (i2, s2, x2) = c2s[q];
                let (ta, tb) = (t1[i1].0, t2[i2].0);
                let (ma, mb) = (n / ta, n / tb);
                let t = gcd(ta, tb);
                let s = gcd(s1, s2);
                for z in 0..e / lcm(s1, s2) {
                    let x = x1 % ma;
                    let y = (x2 + z * (n / e)) % mb;
                    let span = n / lcm(ta, tb);
                    let k = (y + span - x % span) % span;
                    let w = (0..n / t).find(|w| w % ma == x && (w + k) % mb == y).expect("compatible residues");
                    let cell = (first[i1][i2] + k as usize, s, w % (n / lcm(d, t)));
                    out[index(cell)] += cu * cv;
                }
            }
        }
        out
    });
    Ok((bp, target, hom))
}
