//! Truncated simplicial Mackey functors, restriction and edgewise subdivision.

use std::sync::Arc;

use num_bigint::BigInt;

use super::twisted_cyclic_nerve;
use crate::error::{Error, Result};
use crate::fgab::matrix::unit_vector;
use crate::fgab::{Matrix, Vector};
use crate::mackey::{restrict, AxiomReport, GroupContext, MackeyFunctor, MackeyHom};
use crate::norm::norm_trivial_ring;
use crate::wittcore::BaseRing;

/// Degrees `0..=max_degree` with faces `faces[j][i] : X_j -> X_{j-1}` and
/// degeneracies `degeneracies[j][i] : X_j -> X_{j+1}` (`j < max_degree`).
#[derive(Clone, Debug)]
pub struct SimplicialMackey {
    objects: Vec<Arc<MackeyFunctor>>,
    faces: Vec<Vec<MackeyHom>>,
    degeneracies: Vec<Vec<MackeyHom>>,
}

/// The same levelwise matrices between restricted functors.
pub fn restrict_hom(h: &MackeyHom, source: Arc<MackeyFunctor>, target: Arc<MackeyFunctor>) -> MackeyHom {
    MackeyHom::from_matrices(source, target, |d| h.component(d).matrix().clone())
}

impl SimplicialMackey {
    pub fn new(objects: Vec<Arc<MackeyFunctor>>, faces: Vec<Vec<MackeyHom>>, degeneracies: Vec<Vec<MackeyHom>>) -> Self {
        assert_eq!(faces.len(), objects.len());
        assert_eq!(degeneracies.len() + 1, objects.len());
        SimplicialMackey { objects, faces, degeneracies }
    }

    pub fn max_degree(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn object(&self, j: usize) -> &Arc<MackeyFunctor> {
        &self.objects[j]
    }

    pub fn face(&self, j: usize, i: usize) -> &MackeyHom {
        &self.faces[j][i]
    }

    pub fn degeneracy(&self, j: usize, i: usize) -> &MackeyHom {
        &self.degeneracies[j][i]
    }

    /// `sum_i (-1)^i d_i : X_j -> X_{j-1}`.
    pub fn boundary(&self, j: usize) -> MackeyHom {
        let (s, t) = (self.objects[j].clone(), self.objects[j - 1].clone());
        MackeyHom::from_matrices(s.clone(), t.clone(), |d| {
            let mut m = Matrix::zeros(s.num_generators(d), t.num_generators(d));
            for (i, f) in self.faces[j].iter().enumerate() {
                let sign = if i % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
                m = m.add(&f.component(d).matrix().scale(&sign));
            }
            m
        })
    }

    /// Simplicial identities, naturality of every map and `boundary^2 = 0`.
    pub fn check_identities(&self) -> AxiomReport {
        let mut r = AxiomReport::default();
        let top = self.max_degree();
        for j in 1..=top {
            for (i, f) in self.faces[j].iter().enumerate() {
                for e in f.naturality_failures() {
                    r.failures.push(format!("d_{i} in degree {j}: {e}"));
                }
            }
        }
        for j in 0..top {
            for (i, s) in self.degeneracies[j].iter().enumerate() {
                for e in s.naturality_failures() {
                    r.failures.push(format!("s_{i} in degree {j}: {e}"));
                }
            }
        }
        for j in 2..=top {
            for l in 1..=j {
                for i in 0..l {
                    let lhs = self.face(j, l).compose(self.face(j - 1, i));
                    let rhs = self.face(j, i).compose(self.face(j - 1, l - 1));
                    if !lhs.equals(&rhs) {
                        r.failures.push(format!("d_{i} d_{l} in degree {j}"));
                    }
                }
            }
        }
        for j in 0..top.saturating_sub(1) {
            for l in 0..=j {
                for i in 0..=l {
                    let lhs = self.degeneracy(j, l).compose(self.degeneracy(j + 1, i));
                    let rhs = self.degeneracy(j, i).compose(self.degeneracy(j + 1, l + 1));
                    if !lhs.equals(&rhs) {
                        r.failures.push(format!("s_{i} s_{l} in degree {j}"));
                    }
                }
            }
        }
        for j in 0..top {
            for l in 0..=j {
                let s = self.degeneracy(j, l);
                for i in 0..=j + 1 {
                    let lhs = s.compose(self.face(j + 1, i));
                    let ok = if i == l || i == l + 1 {
                        lhs.equals(&MackeyHom::identity(self.objects[j].clone()))
                    } else if i < l {
                        lhs.equals(&self.face(j, i).compose(self.degeneracy(j - 1, l - 1)))
                    } else {
                        lhs.equals(&self.face(j, i - 1).compose(self.degeneracy(j - 1, l)))
                    };
                    if !ok {
                        r.failures.push(format!("d_{i} s_{l} in degree {j}"));
                    }
                }
            }
        }
        for j in 2..=top {
            let sq = self.boundary(j).compose(&self.boundary(j - 1));
            if !sq.is_zero() {
                r.failures.push(format!("boundary squared is nonzero in degree {j}"));
            }
        }
        r
    }

    /// Levelwise restriction to `C_j`.
    pub fn restrict(&self, j: u64) -> Result<SimplicialMackey> {
        let objects: Vec<Arc<MackeyFunctor>> = self.objects.iter().map(|m| restrict(m, j).map(Arc::new)).collect::<Result<_>>()?;
        let faces =
            self.faces.iter().enumerate().map(|(q, fs)| fs.iter().map(|f| restrict_hom(f, objects[q].clone(), objects[q - 1].clone())).collect()).collect();
        let degeneracies = self
            .degeneracies
            .iter()
            .enumerate()
            .map(|(q, ss)| ss.iter().map(|s| restrict_hom(s, objects[q].clone(), objects[q + 1].clone())).collect())
            .collect();
        Ok(SimplicialMackey { objects, faces, degeneracies })
    }

    /// Edgewise subdivision `sd_r`, `(sd_r X)_q = X_{r(q+1)-1}`, up to degree `max_out`.
    pub fn subdivide(&self, r: usize, max_out: usize) -> Result<SimplicialMackey> {
        if r == 0 {
            return Err(Error::Invalid("subdivision factor must be positive".into()));
        }
        let needed = r * (max_out + 1) - 1;
        if needed > self.max_degree() {
            return Err(Error::TruncationTooShort { needed, available: self.max_degree() });
        }
        let deg = |q: usize| r * (q + 1) - 1;
        let objects = (0..=max_out).map(|q| self.objects[deg(q)].clone()).collect();
        let mut faces = vec![Vec::new()];
        for q in 1..=max_out {
            let fs = (0..=q)
                .map(|i| {
                    let mut h = MackeyHom::identity(self.objects[deg(q)].clone());
                    for b in (0..r).rev() {
                        let at = deg(q) - (r - 1 - b);
                        h = h.compose(self.face(at, i + b * (q + 1)));
                    }
                    h
                })
                .collect();
            faces.push(fs);
        }
        let mut degeneracies = Vec::new();
        for q in 0..max_out {
            let ss = (0..=q)
                .map(|i| {
                    let mut h = MackeyHom::identity(self.objects[deg(q)].clone());
                    for b in (0..r).rev() {
                        let at = deg(q) + (r - 1 - b);
                        h = h.compose(self.degeneracy(at, i + b * (q + 1)));
                    }
                    h
                })
                .collect();
            degeneracies.push(ss);
        }
        Ok(SimplicialMackey { objects, faces, degeneracies })
    }
}

/// Compare `i_{C_j}^* HC^{C_n}(N_e^{C_n} R)` with `sd_{n/j} HC^{C_j}(N_e^{C_j} R)`
/// in degrees `<= max_degree`, through the maps multiplying the factors
/// `x_i, x_{i+q+1}, ..., x_{i+(r-1)(q+1)}` together in degree `q`.
pub fn compare_restricted_nerve(ring: BaseRing, n: u64, j: u64, max_degree: usize) -> Result<AxiomReport> {
    GroupContext::new(n)?.check_divisor(j)?;
    if max_degree < 1 {
        return Err(Error::Invalid("comparison needs at least degree 1".into()));
    }
    let r = (n / j) as usize;
    let big = twisted_cyclic_nerve(norm_trivial_ring(ring, n)?.green(), max_degree)?;
    let small = twisted_cyclic_nerve(norm_trivial_ring(ring, j)?.green(), (r * (max_degree + 1) - 1).max(1))?;
    let restricted = big.simplicial.restrict(j)?;
    let sd = small.simplicial.subdivide(r, max_degree)?;
    let mut report = sd.check_identities();
    let maps: Vec<MackeyHom> = (0..=max_degree)
        .map(|q| {
            let src = &small.powers[r * (q + 1) - 1];
            let bp = &src.presentation;
            let target = &big.powers[q];
            bp.hom_from_tags(restricted.object(q).clone(), |d, e, gens| {
                let factor = |i: usize| -> Vector {
                    let x = unit_vector(bp.factor(i).num_generators(e), gens[i]);
                    big.to_ring.apply(e, &small.from_ring.apply(e, &x))
                };
                let ys: Vec<Vector> = (0..=q)
                    .map(|i| {
                        let mut y = factor(i);
                        for b in 1..r {
                            y = big.ring.mul(e, &y, &factor(i + b * (q + 1)));
                        }
                        y
                    })
                    .collect();
                target.presentation.embed(d, e, &ys)
            })
        })
        .collect();
    for (q, m) in maps.iter().enumerate() {
        if !m.is_isomorphism() {
            report.failures.push(format!("degree {q}: comparison is not an isomorphism"));
        }
    }
    for q in 1..=max_degree {
        for i in 0..=q {
            if !sd.face(q, i).compose(&maps[q - 1]).equals(&maps[q].compose(restricted.face(q, i))) {
                report.failures.push(format!("degree {q}: d_{i} does not commute with the comparison"));
            }
        }
    }
    for q in 0..max_degree {
        for i in 0..=q {
            if !sd.degeneracy(q, i).compose(&maps[q + 1]).equals(&maps[q].compose(restricted.degeneracy(q, i))) {
                report.failures.push(format!("degree {q}: s_{i} does not commute with the comparison"));
            }
        }
    }
    Ok(report)
}
