use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hom::AbHom;
use super::matrix::{is_zero_vector, unit_vector, zero_vector, Matrix, Vector};
use super::smith::{smith, Tracking};

/// Isomorphism type of a finitely generated abelian group:
/// `Z/d_1 + ... + Z/d_k + Z^rank` with `d_i | d_{i+1}` and every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl CanonicalForm {
    pub fn zero() -> Self {
        CanonicalForm { invariant_factors: vec![], rank: 0 }
    }

    pub fn free(rank: usize) -> Self {
        CanonicalForm { invariant_factors: vec![], rank }
    }

    pub fn cyclic(m: u64) -> Self {
        match m {
            0 => Self::free(1),
            1 => Self::zero(),
            _ => CanonicalForm { invariant_factors: vec![BigInt::from(m)], rank: 0 },
        }
    }

    pub fn from_parts(factors: &[u64], rank: usize) -> Self {
        CanonicalForm { invariant_factors: factors.iter().map(|&d| BigInt::from(d)).collect(), rank }
    }

    pub fn is_zero(&self) -> bool {
        self.invariant_factors.is_empty() && self.rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.invariant_factors.iter().product())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Change of coordinates produced by a column Smith reduction of a relation matrix.
#[derive(Debug)]
struct Coordinates {
    v: Matrix,
    v_inv: Matrix,
    /// Modulus of each new coordinate: `1` dies, `0` is free.
    moduli: Vec<BigInt>,
}

/// A finitely generated abelian group `Z^g / rowspan(relations)`.
pub struct FgAbGroup {
    ngens: usize,
    relations: Matrix,
    coords: OnceLock<Coordinates>,
}

impl Clone for FgAbGroup {
    fn clone(&self) -> Self {
        FgAbGroup::new(self.ngens, self.relations.clone())
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({} gens, {} relations; {})", self.ngens, self.relations.rows(), self.canonical_form())
    }
}

impl FgAbGroup {
    pub fn new(ngens: usize, relations: Matrix) -> Self {
        assert_eq!(relations.cols(), ngens, "relation width must equal generator count");
        FgAbGroup { ngens, relations, coords: OnceLock::new() }
    }

    pub fn from_relations(ngens: usize, rows: Vec<Vector>) -> Self {
        FgAbGroup::new(ngens, Matrix::from_rows(ngens, rows))
    }

    pub fn zero() -> Self {
        FgAbGroup::new(0, Matrix::zeros(0, 0))
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup::new(rank, Matrix::zeros(0, rank))
    }

    /// `Z/m`, with `m = 0` meaning `Z`.
    pub fn cyclic(m: u64) -> Self {
        Self::diagonal(&[BigInt::from(m)])
    }

    /// Generators `e_i` with `orders[i] * e_i = 0` (`0` = free).
    pub fn diagonal(orders: &[BigInt]) -> Self {
        let rows = orders
            .iter()
            .enumerate()
            .filter(|(_, o)| !o.is_zero())
            .map(|(i, o)| {
                let mut r = zero_vector(orders.len());
                r[i] = o.abs();
                r
            })
            .collect();
        Self::from_relations(orders.len(), rows)
    }

    pub fn from_canonical(form: &CanonicalForm) -> Self {
        let mut orders = form.invariant_factors.clone();
        orders.extend(std::iter::repeat_n(BigInt::zero(), form.rank));
        Self::diagonal(&orders)
    }

    pub fn num_generators(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    fn coords(&self) -> &Coordinates {
        self.coords.get_or_init(|| {
            let s = smith(&self.relations, Tracking::COLUMNS);
            let mut moduli = vec![BigInt::zero(); self.ngens];
            for (i, d) in s.diag.iter().enumerate() {
                moduli[i] = d.clone();
            }
            Coordinates { v: s.v.unwrap(), v_inv: s.v_inv.unwrap(), moduli }
        })
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let c = self.coords();
        let invariant_factors = c.moduli.iter().filter(|d| *d > &BigInt::one()).cloned().collect();
        let rank = c.moduli.iter().filter(|d| d.is_zero()).count();
        CanonicalForm { invariant_factors, rank }
    }

    pub fn is_trivial(&self) -> bool {
        self.canonical_form().is_zero()
    }

    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.canonical_form().order()
    }

    /// Canonical coordinates of an element: one entry per surviving Smith
    /// coordinate, torsion entries reduced into `[0, d)`.
    pub fn normalize(&self, x: &[BigInt]) -> Vector {
        assert_eq!(x.len(), self.ngens, "element has wrong length");
        let c = self.coords();
        let y = c.v.apply(x);
        y.into_iter().zip(&c.moduli).filter(|(_, m)| !m.is_one()).map(|(v, m)| if m.is_zero() { v } else { v.mod_floor(m) }).collect()
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        is_zero_vector(&self.normalize(x))
    }

    pub fn elements_equal(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let d: Vector = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero(&d)
    }

    pub fn zero_element(&self) -> Vector {
        zero_vector(self.ngens)
    }

    pub fn generator(&self, i: usize) -> Vector {
        unit_vector(self.ngens, i)
    }

    /// Additive order of an element, `None` if infinite.
    pub fn element_order(&self, x: &[BigInt]) -> Option<BigInt> {
        let c = self.coords();
        let y = c.v.apply(x);
        let mut acc = BigInt::one();
        for (v, m) in y.iter().zip(&c.moduli) {
            if m.is_one() {
                continue;
            }
            if m.is_zero() {
                if !v.is_zero() {
                    return None;
                }
                continue;
            }
            let r = v.mod_floor(m);
            let ord = m / r.gcd(m);
            acc = acc.lcm(&ord);
        }
        Some(acc)
    }

    /// Whether every relation is a multiple of a single generator.
    pub fn is_diagonal(&self) -> bool {
        self.relations.row_iter().all(|r| r.iter().filter(|x| !x.is_zero()).count() <= 1)
    }

    /// Per-generator orders when the presentation is diagonal (`0` = free).
    pub fn diagonal_orders(&self) -> Option<Vec<BigInt>> {
        if !self.is_diagonal() {
            return None;
        }
        let mut orders = vec![BigInt::zero(); self.ngens];
        for r in self.relations.row_iter() {
            if let Some((i, x)) = r.iter().enumerate().find(|(_, x)| !x.is_zero()) {
                orders[i] = orders[i].gcd(x);
            }
        }
        Some(orders)
    }

    /// Isomorphic presentation on the Smith basis: one generator per
    /// invariant factor (ascending) followed by the free generators.
    pub fn simplify(self: &Arc<Self>) -> Simplified {
        let c = self.coords();
        let kept: Vec<usize> = (0..self.ngens).filter(|&i| !c.moduli[i].is_one()).collect();
        let orders: Vec<BigInt> = kept.iter().map(|&i| c.moduli[i].clone()).collect();
        let simple = Arc::new(FgAbGroup::diagonal(&orders));
        let mut to = c.v.select_columns(&kept);
        for i in 0..to.rows() {
            for (jj, m) in orders.iter().enumerate() {
                if !m.is_zero() {
                    to[(i, jj)] = to[(i, jj)].mod_floor(m);
                }
            }
        }
        let from = c.v_inv.select_rows(&kept);
        Simplified {
            to_simple: AbHom::new_unchecked(self.clone(), simple.clone(), to),
            from_simple: AbHom::new_unchecked(simple.clone(), self.clone(), from),
            group: simple,
        }
    }

    /// Reduce an element of a diagonal presentation into `[0, order)`.
    pub fn reduce(&self, x: &[BigInt]) -> Vector {
        match self.diagonal_orders() {
            Some(orders) => x.iter().zip(&orders).map(|(v, m)| if m.is_zero() { v.clone() } else { v.mod_floor(m) }).collect(),
            None => x.to_vec(),
        }
    }

    /// Whether the element lies in the subgroup generated by `rows` (plus relations).
    pub fn in_span(&self, rows: &Matrix, x: &[BigInt]) -> bool {
        let q = FgAbGroup::new(self.ngens, self.relations.vstack(rows));
        q.is_zero(x)
    }

    /// Direct sum with canonical injections and projections.
    pub fn direct_sum(groups: &[Arc<FgAbGroup>]) -> DirectSum {
        let total: usize = groups.iter().map(|g| g.ngens).sum();
        let mut rels = Vec::new();
        let mut offset = 0;
        let mut offsets = Vec::new();
        for g in groups {
            offsets.push(offset);
            for r in g.relations.row_iter() {
                let mut row = zero_vector(total);
                row[offset..offset + g.ngens].clone_from_slice(r);
                rels.push(row);
            }
            offset += g.ngens;
        }
        let sum = Arc::new(FgAbGroup::from_relations(total, rels));
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        for (g, &off) in groups.iter().zip(&offsets) {
            let mut inj = Matrix::zeros(g.ngens, total);
            let mut proj = Matrix::zeros(total, g.ngens);
            for i in 0..g.ngens {
                inj[(i, off + i)] = BigInt::one();
                proj[(off + i, i)] = BigInt::one();
            }
            injections.push(AbHom::new_unchecked(g.clone(), sum.clone(), inj));
            projections.push(AbHom::new_unchecked(sum.clone(), g.clone(), proj));
        }
        DirectSum { group: sum, injections, projections, offsets }
    }

    /// Tensor product, generators `a_i (x) b_j` at index `i * |b| + j`.
    pub fn tensor(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
        let (ga, gb) = (a.ngens, b.ngens);
        let mut rels = Vec::new();
        for r in a.relations.row_iter() {
            for j in 0..gb {
                let mut row = zero_vector(ga * gb);
                for (i, x) in r.iter().enumerate() {
                    row[i * gb + j] = x.clone();
                }
                rels.push(row);
            }
        }
        for r in b.relations.row_iter() {
            for i in 0..ga {
                let mut row = zero_vector(ga * gb);
                for (j, x) in r.iter().enumerate() {
                    row[i * gb + j] = x.clone();
                }
                rels.push(row);
            }
        }
        FgAbGroup::from_relations(ga * gb, rels)
    }

    /// Quotient by the subgroup generated by `rows`, on the same generators.
    pub fn quotient(&self, rows: &Matrix) -> FgAbGroup {
        FgAbGroup::new(self.ngens, self.relations.vstack(rows))
    }

    /// Enumerate every element of a finite group in canonical coordinates.
    pub fn enumerate(&self) -> Option<Vec<Vector>> {
        let simple = Arc::new(self.clone()).simplify();
        let orders = simple.group.diagonal_orders().unwrap();
        if orders.iter().any(Zero::is_zero) {
            return None;
        }
        let mut out: Vec<Vector> = vec![zero_vector(orders.len())];
        for (i, m) in orders.iter().enumerate() {
            let mut next = Vec::new();
            let mut k = BigInt::zero();
            while &k < m {
                for e in &out {
                    let mut e2 = e.clone();
                    e2[i] = k.clone();
                    next.push(e2);
                }
                k += 1;
            }
            out = next;
        }
        Some(out.into_iter().map(|x| simple.from_simple.apply(&x)).collect())
    }
}

pub struct Simplified {
    pub group: Arc<FgAbGroup>,
    pub to_simple: AbHom,
    pub from_simple: AbHom,
}

pub struct DirectSum {
    pub group: Arc<FgAbGroup>,
    pub injections: Vec<AbHom>,
    pub projections: Vec<AbHom>,
    pub offsets: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::matrix::vector_from_i64;

    #[test]
    fn canonical_forms() {
        let g = FgAbGroup::from_relations(2, vec![vector_from_i64(&[2, 0]), vector_from_i64(&[0, 3])]);
        assert_eq!(g.canonical_form(), CanonicalForm::from_parts(&[6], 0));
        let z = FgAbGroup::zero();
        assert!(z.is_trivial());
        assert_eq!(FgAbGroup::free(3).canonical_form(), CanonicalForm::free(3));
        assert_eq!(format!("{}", FgAbGroup::cyclic(4).canonical_form()), "Z/4");
    }

    #[test]
    fn tensor_of_cyclics() {
        let t = FgAbGroup::tensor(&FgAbGroup::cyclic(2), &FgAbGroup::cyclic(3));
        assert!(t.is_trivial());
        let t = FgAbGroup::tensor(&FgAbGroup::cyclic(4), &FgAbGroup::cyclic(6));
        assert_eq!(t.canonical_form(), CanonicalForm::cyclic(2));
        let a = FgAbGroup::from_relations(3, vec![vector_from_i64(&[2, 4, 0]), vector_from_i64(&[0, 0, 5])]);
        let t = FgAbGroup::tensor(&FgAbGroup::free(1), &a);
        assert_eq!(t.canonical_form(), a.canonical_form());
    }

    #[test]
    fn simplify_round_trip() {
        let g = Arc::new(FgAbGroup::from_relations(3, vec![vector_from_i64(&[2, 4, 6]), vector_from_i64(&[0, 3, 3]), vector_from_i64(&[1, 1, 1])]));
        let s = g.simplify();
        assert!(s.to_simple.compose(&s.from_simple).equals(&AbHom::identity(g.clone())));
        assert!(s.from_simple.compose(&s.to_simple).equals(&AbHom::identity(s.group.clone())));
        assert_eq!(s.group.canonical_form(), g.canonical_form());
    }

    #[test]
    fn element_orders() {
        let g = FgAbGroup::from_relations(2, vec![vector_from_i64(&[4, 0]), vector_from_i64(&[0, 6])]);
        assert_eq!(g.element_order(&vector_from_i64(&[1, 1])), Some(BigInt::from(12)));
        assert_eq!(g.element_order(&vector_from_i64(&[2, 3])), Some(BigInt::from(2)));
        assert_eq!(FgAbGroup::free(1).element_order(&vector_from_i64(&[1])), None);
        assert_eq!(g.enumerate().unwrap().len(), 24);
    }
}
