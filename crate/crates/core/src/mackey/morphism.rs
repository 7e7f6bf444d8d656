//! Morphisms of Mackey functors and the group of natural transformations.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::MackeyFunctor;
use crate::fgab::matrix::zero_vector;
use crate::fgab::{AbHom, FgAbGroup, Matrix, Vector};

/// A family of levelwise homomorphisms, not necessarily natural until checked.
#[derive(Clone)]
pub struct MackeyHom {
    source: Arc<MackeyFunctor>,
    target: Arc<MackeyFunctor>,
    maps: BTreeMap<u64, AbHom>,
}

impl std::fmt::Debug for MackeyHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MackeyHom({:?} -> {:?})", self.source, self.target)
    }
}

impl MackeyHom {
    pub fn new(source: Arc<MackeyFunctor>, target: Arc<MackeyFunctor>, maps: BTreeMap<u64, AbHom>) -> Self {
        let maps = maps
            .into_iter()
            .map(|(d, h)| {
                let h = h.reinterpret(source.level(d).clone(), target.level(d).clone());
                (d, h)
            })
            .collect();
        MackeyHom { source, target, maps }
    }

    pub fn from_matrices(source: Arc<MackeyFunctor>, target: Arc<MackeyFunctor>, matrix: impl Fn(u64) -> Matrix) -> Self {
        let maps = source.divisors().into_iter().map(|d| (d, AbHom::new_unchecked(source.level(d).clone(), target.level(d).clone(), matrix(d)))).collect();
        MackeyHom { source, target, maps }
    }

    /// Levelwise images of generators.
    pub fn from_images(source: Arc<MackeyFunctor>, target: Arc<MackeyFunctor>, image: impl Fn(u64, usize) -> Vector) -> Self {
        let t = target.clone();
        MackeyHom::from_matrices(source.clone(), target, |d| {
            let rows = (0..source.num_generators(d)).map(|i| image(d, i)).collect();
            Matrix::from_rows(t.num_generators(d), rows)
        })
    }

    pub fn identity(m: Arc<MackeyFunctor>) -> Self {
        MackeyHom::from_matrices(m.clone(), m.clone(), |d| Matrix::identity(m.num_generators(d)))
    }

    pub fn source(&self) -> &Arc<MackeyFunctor> {
        &self.source
    }

    pub fn target(&self) -> &Arc<MackeyFunctor> {
        &self.target
    }

    pub fn component(&self, d: u64) -> &AbHom {
        &self.maps[&d]
    }

    pub fn apply(&self, d: u64, x: &[BigInt]) -> Vector {
        self.maps[&d].apply(x)
    }

    /// `self` followed by `next`.
    pub fn compose(&self, next: &MackeyHom) -> MackeyHom {
        let maps = self.maps.iter().map(|(&d, h)| (d, h.compose(next.component(d)))).collect();
        MackeyHom { source: self.source.clone(), target: next.target.clone(), maps }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.values().all(AbHom::is_zero)
    }

    pub fn equals(&self, other: &MackeyHom) -> bool {
        self.maps.iter().all(|(d, h)| h.equals(other.component(*d)))
    }

    /// Every way in which this family fails to be a morphism of Mackey functors.
    pub fn naturality_failures(&self) -> Vec<String> {
        let (s, t) = (&self.source, &self.target);
        let mut out = Vec::new();
        if s.ctx() != t.ctx() {
            out.push("source and target live over different groups".to_string());
            return out;
        }
        for (&d, h) in &self.maps {
            if !h.is_well_defined() {
                out.push(format!("level {d}: not well defined"));
            }
            if !h.compose(t.weyl(d)).equals(&s.weyl(d).compose(h)) {
                out.push(format!("level {d}: does not commute with the Weyl action"));
            }
        }
        for (d, e) in s.ctx().prime_edges() {
            let (fd, fe) = (&self.maps[&d], &self.maps[&e]);
            if !fe.compose(t.res_edge(d, e)).equals(&s.res_edge(d, e).compose(fd)) {
                out.push(format!("edge {d}|{e}: does not commute with restriction"));
            }
            if !fd.compose(t.tr_edge(d, e)).equals(&s.tr_edge(d, e).compose(fe)) {
                out.push(format!("edge {d}|{e}: does not commute with transfer"));
            }
        }
        out
    }

    pub fn is_natural(&self) -> bool {
        self.naturality_failures().is_empty()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_natural() && self.maps.values().all(AbHom::is_isomorphism)
    }

    pub fn is_levelwise_isomorphism(&self) -> bool {
        self.maps.values().all(AbHom::is_isomorphism)
    }
}

/// The group of natural transformations `a -> m`, computed as a kernel.
pub fn hom_group(a: &MackeyFunctor, m: &MackeyFunctor) -> FgAbGroup {
    let divs = a.divisors();
    // Unknown X_d is a |A(d)| x |M(d)| matrix; variables are laid out level by level.
    let mut offset = BTreeMap::new();
    let mut nvars = 0;
    for &d in &divs {
        offset.insert(d, nvars);
        nvars += a.num_generators(d) * m.num_generators(d);
    }
    let var = |d: u64, i: usize, j: usize| offset[&d] + i * m.num_generators(d) + j;

    // Constraints: each is a linear functional family with values in some M(d).
    // A constraint is (level d of M, for each variable its contribution vector in M(d)).
    let mut blocks: Vec<(u64, Vec<Vector>)> = Vec::new();
    let mut push_constraint = |d: u64, coeffs: Vec<(usize, Vector)>| {
        let mut rows = vec![zero_vector(m.num_generators(d)); nvars];
        for (v, c) in coeffs {
            for (x, y) in rows[v].iter_mut().zip(&c) {
                *x += y;
            }
        }
        blocks.push((d, rows));
    };
    // x * X_d for x in Z^{A(d)}: contribution of variable (d, i, j) is x_i e_j.
    let times_x = |d: u64, x: &[BigInt], post: &dyn Fn(Vector) -> Vector| -> Vec<(usize, Vector)> {
        let mut out = Vec::new();
        for (i, xi) in x.iter().enumerate() {
            if xi == &BigInt::from(0) {
                continue;
            }
            for j in 0..m.num_generators(d) {
                let mut e = zero_vector(m.num_generators(d));
                e[j] = xi.clone();
                out.push((var(d, i, j), post(e)));
            }
        }
        out
    };
    let id = |v: Vector| v;
    for &d in &divs {
        for rel in a.level(d).relations().row_iter() {
            push_constraint(d, times_x(d, rel, &id));
        }
        let w = m.weyl(d).clone();
        for i in 0..a.num_generators(d) {
            let x = a.level(d).generator(i);
            // weyl_M(x X_d) - (weyl_A x) X_d
            let mut c = times_x(d, &x, &|v| w.apply(&v));
            let neg = |v: Vector| v.into_iter().map(|y| -y).collect::<Vector>();
            c.extend(times_x(d, &a.weyl(d).apply(&x), &neg));
            push_constraint(d, c);
        }
    }
    for (d, e) in a.ctx().prime_edges() {
        let neg = |v: Vector| v.into_iter().map(|y| -y).collect::<Vector>();
        for i in 0..a.num_generators(e) {
            let x = a.level(e).generator(i);
            let r = m.res_edge(d, e).clone();
            let mut c = times_x(e, &x, &|v| r.apply(&v));
            c.extend(times_x(d, &a.res_edge(d, e).apply(&x), &neg));
            push_constraint(d, c);
        }
        for i in 0..a.num_generators(d) {
            let x = a.level(d).generator(i);
            let t = m.tr_edge(d, e).clone();
            let mut c = times_x(d, &x, &|v| t.apply(&v));
            c.extend(times_x(e, &a.tr_edge(d, e).apply(&x), &neg));
            push_constraint(e, c);
        }
    }
    let targets: Vec<Arc<FgAbGroup>> = blocks.iter().map(|(d, _)| m.level(*d).clone()).collect();
    let sum = FgAbGroup::direct_sum(&targets);
    let cols = sum.group.num_generators();
    let mut phi = Matrix::zeros(nvars, cols);
    for ((_, rows), &off) in blocks.iter().zip(&sum.offsets) {
        for (v, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                phi[(v, off + j)] += x;
            }
        }
    }
    let free = Arc::new(FgAbGroup::free(nvars));
    let kernel = AbHom::new_unchecked(free, sum.group.clone(), phi).kernel();
    // Transformations whose every row vanishes in M are zero.
    let mut rels: Vec<Vector> = kernel.group.relations().row_iter().map(|r| r.to_vec()).collect();
    for &d in &divs {
        for i in 0..a.num_generators(d) {
            for rel in m.level(d).relations().row_iter() {
                let mut v = zero_vector(nvars);
                for (j, x) in rel.iter().enumerate() {
                    v[var(d, i, j)] = x.clone();
                }
                rels.push(kernel.lift(&v).expect("trivial transformations are natural"));
            }
        }
    }
    FgAbGroup::from_relations(kernel.group.num_generators(), rels)
}
