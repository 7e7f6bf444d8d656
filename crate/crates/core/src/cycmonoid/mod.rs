//! Pointed monoids in `C_n`-sets, their monoid algebras, cyclic nerves and
//! cellular chains, and the splitting of `HC(R[M])`.
//!
//! Points of an orbit `C_n/C_t` are written `g^x m` for a chosen
//! representative `m`, matching the cells of [`representable`].

mod nerve;

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Deserialize;

use crate::arith::{gcd, lcm};
use crate::error::{Error, Result};
use crate::fgab::matrix::zero_vector;
use crate::fgab::{FgAbGroup, Matrix, Vector};
use crate::green::green_box;
use crate::mackey::{
    fixed_point_green, representable, representable_cells, ActionModule, ActionRing, GreenFunctor, GroupContext, MackeyFunctor, MackeyHom, Orbit, SpanCell,
};

pub use nerve::{cellular_chains, cyclic_nerve_monoid, splitting_check, Levels, SimplicialGSet, SplittingReport};

/// A finite pointed set with a `C_n`-action fixing the base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedGSet {
    pub n: u64,
    /// Image of each point under the generator.
    pub action: Vec<usize>,
    pub base: usize,
}

/// Orbits of the non-base points.
#[derive(Clone, Debug)]
pub struct OrbitData {
    pub reps: Vec<usize>,
    /// Orbit `i` is `C_n/C_{ts[i]}`.
    pub ts: Vec<u64>,
    /// `coord[p] = (i, x)` with `p = g^x reps[i]`; `None` at the base point.
    pub coord: Vec<Option<(usize, u64)>>,
}

impl PointedGSet {
    pub fn len(&self) -> usize {
        self.action.len()
    }

    pub fn is_empty(&self) -> bool {
        self.action.is_empty()
    }

    pub fn act(&self, p: usize, k: u64) -> usize {
        (0..k).fold(p, |q, _| self.action[q])
    }

    pub fn orbits(&self) -> OrbitData {
        let mut coord = vec![None; self.len()];
        let (mut reps, mut ts) = (Vec::new(), Vec::new());
        for p in 0..self.len() {
            if p == self.base || coord[p].is_some() {
                continue;
            }
            let i = reps.len();
            let mut q = p;
            let mut x = 0;
            loop {
                coord[q] = Some((i, x));
                q = self.action[q];
                x += 1;
                if q == p {
                    break;
                }
            }
            reps.push(p);
            ts.push(self.n / x);
        }
        OrbitData { reps, ts, coord }
    }
}

impl OrbitData {
    pub fn orbits(&self) -> Vec<Orbit> {
        self.ts.iter().map(|&t| Orbit(t)).collect()
    }
}

/// `A_X` for the non-base points of `X` with cell lookup tables.
#[derive(Clone, Debug)]
pub struct ReducedRepresentable {
    pub set: PointedGSet,
    pub orbits: OrbitData,
    pub functor: Arc<MackeyFunctor>,
    cells: HashMap<u64, HashMap<SpanCell, usize>>,
}

impl ReducedRepresentable {
    pub fn new(set: PointedGSet) -> Result<Self> {
        let ctx = GroupContext::new(set.n)?;
        let orbits = set.orbits();
        let functor = Arc::new(representable(ctx, &orbits.orbits())?);
        let cells = ctx
            .divisors()
            .into_iter()
            .map(|d| (d, representable_cells(set.n, &orbits.orbits(), d).into_iter().enumerate().map(|(k, c)| (c, k)).collect()))
            .collect();
        Ok(ReducedRepresentable { set, orbits, functor, cells })
    }

    pub fn cells(&self, d: u64) -> Vec<SpanCell> {
        representable_cells(self.set.n, &self.orbits.orbits(), d)
    }

    /// The point `g^x rep_i`.
    pub fn point(&self, i: usize, x: u64) -> usize {
        self.set.act(self.orbits.reps[i], x)
    }

    /// Index of the cell `C_d/C_c -> X` with base point going to `p`, or `None` at the base point.
    pub fn cell_of(&self, d: u64, c: u64, p: usize) -> Option<usize> {
        let (i, x) = self.orbits.coord[p]?;
        let y = x % (self.set.n / lcm(d, self.orbits.ts[i]));
        Some(self.cells[&d][&(i, c, y)])
    }

    /// The map induced by a pointed equivariant map `f` into `target`.
    pub fn pushforward(&self, target: &ReducedRepresentable, f: &[usize]) -> MackeyHom {
        MackeyHom::from_images(self.functor.clone(), target.functor.clone(), |d, k| {
            let (i, c, x) = self.cells(d)[k];
            let mut v = zero_vector(target.functor.num_generators(d));
            if let Some(j) = target.cell_of(d, c, f[self.point(i, x)]) {
                v[j] += 1;
            }
            v
        })
    }
}

/// A pointed monoid in `C_n`-sets: `0` absorbing, `1` a unit, the generator
/// acting by monoid maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedGMonoid {
    pub n: u64,
    pub names: Vec<String>,
    pub zero: usize,
    pub one: usize,
    pub table: Vec<Vec<usize>>,
    pub action: Vec<usize>,
}

#[derive(Deserialize)]
struct MonoidInput {
    elements: Vec<String>,
    zero: String,
    one: String,
    table: Vec<Vec<String>>,
    action: Vec<String>,
}

impl PointedGMonoid {
    pub fn new(n: u64, names: Vec<String>, zero: usize, one: usize, table: Vec<Vec<usize>>, action: Vec<usize>) -> Result<Self> {
        let m = PointedGMonoid { n, names, zero, one, table, action };
        m.validate()?;
        Ok(m)
    }

    /// Parse `{"elements", "zero", "one", "table", "action"}`.
    pub fn from_json(n: u64, text: &str) -> Result<Self> {
        let input: MonoidInput = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("monoid JSON: {e}")))?;
        let index: HashMap<&str, usize> = input.elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != input.elements.len() {
            return Err(Error::Invalid("repeated element names".into()));
        }
        let look = |s: &str| index.get(s).copied().ok_or_else(|| Error::Invalid(format!("unknown element {s}")));
        let table = input.table.iter().map(|row| row.iter().map(|s| look(s)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        let action = input.action.iter().map(|s| look(s)).collect::<Result<Vec<_>>>()?;
        Self::new(n, input.elements.clone(), look(&input.zero)?, look(&input.one)?, table, action)
    }

    fn validate(&self) -> Result<()> {
        let k = self.names.len();
        let bad = |s: String| Err(Error::Invalid(format!("not a pointed C_{}-monoid: {s}", self.n)));
        GroupContext::new(self.n)?;
        if self.zero >= k || self.one >= k || self.zero == self.one {
            return bad("zero and one must be distinct elements".into());
        }
        if self.table.len() != k || self.table.iter().any(|r| r.len() != k || r.iter().any(|&x| x >= k)) {
            return bad("multiplication table has the wrong shape".into());
        }
        let mut seen = vec![false; k];
        if self.action.len() != k || self.action.iter().any(|&x| x >= k || std::mem::replace(&mut seen[x], true)) {
            return bad("action is not a permutation".into());
        }
        if (0..k).any(|x| self.set().act(x, self.n) != x) {
            return bad(format!("action does not have order dividing {}", self.n));
        }
        if self.action[self.zero] != self.zero || self.action[self.one] != self.one {
            return bad("action must fix zero and one".into());
        }
        let t = &self.table;
        for a in 0..k {
            if t[a][self.one] != a || t[self.one][a] != a {
                return bad(format!("{} is not unital", self.names[a]));
            }
            if t[a][self.zero] != self.zero || t[self.zero][a] != self.zero {
                return bad(format!("zero does not absorb {}", self.names[a]));
            }
            for b in 0..k {
                if self.action[t[a][b]] != t[self.action[a]][self.action[b]] {
                    return bad(format!("action is not multiplicative on {} {}", self.names[a], self.names[b]));
                }
                for c in 0..k {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        return bad(format!("not associative on {} {} {}", self.names[a], self.names[b], self.names[c]));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.len()).all(|a| (0..self.len()).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn set(&self) -> PointedGSet {
        PointedGSet { n: self.n, action: self.action.clone(), base: self.zero }
    }

    /// `{0, 1}`.
    pub fn trivial(n: u64) -> Self {
        Self::new(n, names(&["0", "1"]), 0, 1, vec![vec![0, 0], vec![0, 1]], vec![0, 1]).expect("valid")
    }

    /// `{0, 1, x}` with `x^2 = 0` and trivial action.
    pub fn dual_numbers(n: u64) -> Self {
        Self::new(n, names(&["0", "1", "x"]), 0, 1, vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 0]], vec![0, 1, 2]).expect("valid")
    }

    /// `{0, 1, x, ..., x^k}` with `x^{k+1} = 0` and trivial action.
    pub fn truncated_power(n: u64, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("need at least one power of x".into()));
        }
        // Element 0 is zero, element i >= 1 is x^{i-1}.
        let names: Vec<String> = (0..=k + 1)
            .map(|i| {
                if i == 0 {
                    "0".into()
                } else if i == 1 {
                    "1".into()
                } else if i == 2 {
                    "x".into()
                } else {
                    format!("x^{}", i - 1)
                }
            })
            .collect();
        let table = (0..=k + 1).map(|a| (0..=k + 1).map(|b| if a == 0 || b == 0 || a + b - 2 > k { 0 } else { a + b - 1 }).collect()).collect();
        Self::new(n, names, 0, 1, table, (0..=k + 1).collect())
    }

    /// `{0, 1, x, y}` with all products of `x, y` zero and the generator swapping them.
    pub fn swapped_square_zero(n: u64) -> Result<Self> {
        let table = vec![vec![0, 0, 0, 0], vec![0, 1, 2, 3], vec![0, 2, 0, 0], vec![0, 3, 0, 0]];
        Self::new(n, names(&["0", "1", "x", "y"]), 0, 1, table, vec![0, 1, 3, 2])
    }
}

fn names(s: &[&str]) -> Vec<String> {
    s.iter().map(|x| x.to_string()).collect()
}

/// `A[M]`: the reduced representable on `M`, multiplied through `M`.
///
/// The product of cells `C_d/C_c -> M` and `C_d/C_c' -> M` decomposes the
/// product of the two orbits into `d/lcm(c, c')` copies of `C_d/C_gcd(c, c')`.
pub fn burnside_monoid_ring(m: &PointedGMonoid) -> Result<GreenFunctor> {
    let rep = ReducedRepresentable::new(m.set())?;
    let n = m.n;
    let product = |d: u64, a: usize, b: usize| -> Vector {
        let cells = rep.cells(d);
        let (i, c, x) = cells[a];
        let (j, c2, y) = cells[b];
        let mut v = zero_vector(cells.len());
        let (p, q) = (rep.point(i, x), rep.point(j, y));
        for k in 0..d / lcm(c, c2) {
            let r = m.mul(p, m.set().act(q, k * (n / d)));
            if let Some(idx) = rep.cell_of(d, gcd(c, c2), r) {
                v[idx] += 1;
            }
        }
        v
    };
    let unit = |d: u64| {
        let mut v = zero_vector(rep.functor.num_generators(d));
        v[rep.cell_of(d, d, m.one).expect("one is not the base point")] += BigInt::from(1);
        v
    };
    GreenFunctor::from_product(rep.functor.clone(), product, unit)
}

/// `R[M] = R [] A[M]`.
pub fn monoid_algebra(r: &GreenFunctor, m: &PointedGMonoid) -> Result<GreenFunctor> {
    if r.n() != m.n {
        return Err(Error::ContextMismatch("groups of the ring and the monoid".into()));
    }
    Ok(green_box(&[r, &burnside_monoid_ring(m)?])?.green)
}

/// `A[M]` for a ring `A` with action: the module `A` tensor `Z[M]/Z 0` with the
/// diagonal action, multiplied through `M`.
pub fn action_monoid_ring(a: &ActionRing, m: &PointedGMonoid) -> Result<ActionRing> {
    let pts: Vec<usize> = (0..m.len()).filter(|&p| p != m.zero).collect();
    let block: HashMap<usize, usize> = pts.iter().enumerate().map(|(b, &p)| (p, b)).collect();
    let g = &a.module.group;
    let k = g.num_generators();
    let sum = FgAbGroup::direct_sum(&vec![g.clone(); pts.len()]);
    let total = k * pts.len();
    let mut action = Matrix::zeros(total, total);
    for (b, &p) in pts.iter().enumerate() {
        let tb = block[&m.action[p]];
        for i in 0..k {
            for j in 0..k {
                action[(b * k + i, tb * k + j)] = a.module.action[(i, j)].clone();
            }
        }
    }
    let products = (0..total)
        .map(|u| {
            (0..total)
                .map(|w| {
                    let (bu, iu, bw, iw) = (u / k, u % k, w / k, w % k);
                    let mut v = zero_vector(total);
                    let r = m.mul(pts[bu], pts[bw]);
                    if r != m.zero {
                        let off = block[&r] * k;
                        for (t, c) in a.products[iu][iw].iter().enumerate() {
                            v[off + t] = c.clone();
                        }
                    }
                    v
                })
                .collect()
        })
        .collect();
    let mut unit = zero_vector(total);
    let off = block[&m.one] * k;
    unit[off..off + k].clone_from_slice(&a.unit);
    ActionRing::new(ActionModule::new((*sum.group).clone(), action)?, products, unit)
}

/// The direct construction of `R[M]` for a fixed-point functor `R`.
pub fn monoid_algebra_fixed(a: &ActionRing, m: &PointedGMonoid) -> Result<GreenFunctor> {
    fixed_point_green(GroupContext::new(m.n)?, &action_monoid_ring(a, m)?)
}

/// Orbit data of `M - {0}`: `(representative name, t)` for each orbit `C_n/C_t`.
pub fn monoid_orbits(m: &PointedGMonoid) -> Vec<(String, u64)> {
    let o = m.set().orbits();
    o.reps.iter().zip(&o.ts).map(|(&r, &t)| (m.names[r].clone(), t)).collect()
}

#[cfg(test)]
mod tests;
