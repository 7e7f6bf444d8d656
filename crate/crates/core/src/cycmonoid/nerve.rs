//! Simplicial pointed `C_n`-sets, the cyclic nerve of a pointed monoid and
//! the Mackey extension of Bredon cellular chains.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{monoid_algebra, PointedGMonoid, PointedGSet, ReducedRepresentable};
use crate::error::{Error, Result};
use crate::fgab::CanonicalForm;
use crate::green::{box_many, BoxProduct};
use crate::hochschild::{hh, simplicial_homology, twisted_cyclic_nerve, SimplicialMackey};
use crate::mackey::{AxiomReport, GreenFunctor, MackeyFunctor};

/// A truncated simplicial pointed `C_n`-set given by point maps.
#[derive(Clone, Debug)]
pub struct SimplicialGSet {
    pub sets: Vec<PointedGSet>,
    /// `faces[j][i][p]`, for `j >= 1`.
    pub faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[j][i][p]`, for `j < max_degree`.
    pub degeneracies: Vec<Vec<Vec<usize>>>,
    /// The cyclic operator in each degree; stored, not used downstream.
    pub cyclic: Vec<Vec<usize>>,
    /// The tuple of monoid elements behind each point; empty at the base point.
    pub labels: Vec<Vec<Vec<usize>>>,
}

impl SimplicialGSet {
    pub fn max_degree(&self) -> usize {
        self.sets.len() - 1
    }

    /// Simplicial identities, equivariance and preservation of base points.
    pub fn check(&self) -> AxiomReport {
        let mut r = AxiomReport::default();
        let top = self.max_degree();
        let compose = |f: &[usize], g: &[usize]| -> Vec<usize> { f.iter().map(|&p| g[p]).collect() };
        let mut maps: Vec<(String, usize, usize, &Vec<usize>)> = Vec::new();
        for j in 1..=top {
            for (i, f) in self.faces[j].iter().enumerate() {
                maps.push((format!("d_{i} in degree {j}"), j, j - 1, f));
            }
        }
        for j in 0..top {
            for (i, s) in self.degeneracies[j].iter().enumerate() {
                maps.push((format!("s_{i} in degree {j}"), j, j + 1, s));
            }
        }
        for (name, a, b, f) in maps {
            let (x, y) = (&self.sets[a], &self.sets[b]);
            if f[x.base] != y.base || (0..x.len()).any(|p| f[x.action[p]] != y.action[f[p]]) {
                r.failures.push(format!("{name} is not a pointed equivariant map"));
            }
        }
        for j in 2..=top {
            for l in 1..=j {
                for i in 0..l {
                    if compose(&self.faces[j][i], &self.faces[j - 1][l - 1]) != compose(&self.faces[j][l], &self.faces[j - 1][i]) {
                        r.failures.push(format!("d_{i} d_{l} in degree {j}"));
                    }
                }
            }
        }
        for j in 0..top {
            for l in 0..=j {
                for i in 0..=j + 1 {
                    let lhs = compose(&self.degeneracies[j][l], &self.faces[j + 1][i]);
                    let ok = if i == l || i == l + 1 {
                        lhs.iter().enumerate().all(|(p, &q)| p == q)
                    } else if i < l {
                        lhs == compose(&self.faces[j][i], &self.degeneracies[j - 1][l - 1])
                    } else {
                        lhs == compose(&self.faces[j][i - 1], &self.degeneracies[j - 1][l])
                    };
                    if !ok {
                        r.failures.push(format!("d_{i} s_{l} in degree {j}"));
                    }
                }
            }
        }
        for j in 0..top.saturating_sub(1) {
            for l in 0..=j {
                for i in 0..=l {
                    let lhs = compose(&self.degeneracies[j][l], &self.degeneracies[j + 1][i]);
                    let rhs = compose(&self.degeneracies[j][i], &self.degeneracies[j + 1][l + 1]);
                    if lhs != rhs {
                        r.failures.push(format!("s_{i} s_{l} in degree {j}"));
                    }
                }
            }
        }
        r
    }
}

/// `N^cyc M`: degree `j` is the smash power `M^{(j+1)}`, the last face rotates,
/// applies the generator to the moved factor and multiplies.
pub fn cyclic_nerve_monoid(m: &PointedGMonoid, max_degree: usize) -> Result<SimplicialGSet> {
    if max_degree < 1 {
        return Err(Error::Invalid("the nerve needs at least degree 1".into()));
    }
    let nonzero: Vec<usize> = (0..m.len()).filter(|&x| x != m.zero).collect();
    let mut labels: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut index: Vec<HashMap<Vec<usize>, usize>> = Vec::new();
    for j in 0..=max_degree {
        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..=j {
            tuples = tuples.into_iter().flat_map(|t| nonzero.iter().map(move |&x| [t.clone(), vec![x]].concat())).collect();
        }
        let mut pts = vec![Vec::new()];
        pts.extend(tuples);
        index.push(pts.iter().enumerate().skip(1).map(|(k, t)| (t.clone(), k)).collect());
        labels.push(pts);
    }
    let locate = |j: usize, t: Vec<usize>| -> usize {
        if t.contains(&m.zero) {
            0
        } else {
            index[j][&t]
        }
    };
    let point_map = |j: usize, target: usize, f: &dyn Fn(&[usize]) -> Vec<usize>| -> Vec<usize> {
        labels[j].iter().enumerate().map(|(k, t)| if k == 0 { 0 } else { locate(target, f(t)) }).collect()
    };
    let sets = (0..=max_degree).map(|j| PointedGSet { n: m.n, action: point_map(j, j, &|t| t.iter().map(|&x| m.action[x]).collect()), base: 0 }).collect();
    let mut faces = vec![Vec::new()];
    for j in 1..=max_degree {
        let mut fs = Vec::new();
        for i in 0..j {
            fs.push(point_map(j, j - 1, &|t| {
                let mut u = t[..i].to_vec();
                u.push(m.mul(t[i], t[i + 1]));
                u.extend_from_slice(&t[i + 2..]);
                u
            }));
        }
        fs.push(point_map(j, j - 1, &|t| {
            let mut u = vec![m.mul(m.action[t[j]], t[0])];
            u.extend_from_slice(&t[1..j]);
            u
        }));
        faces.push(fs);
    }
    let degeneracies = (0..max_degree)
        .map(|j| {
            (0..=j)
                .map(|i| {
                    point_map(j, j + 1, &|t| {
                        let mut u = t.to_vec();
                        u.insert(i + 1, m.one);
                        u
                    })
                })
                .collect()
        })
        .collect();
    let cyclic = (0..=max_degree)
        .map(|j| {
            point_map(j, j, &|t| {
                let mut u = vec![m.action[t[j]]];
                u.extend_from_slice(&t[..j]);
                u
            })
        })
        .collect();
    Ok(SimplicialGSet { sets, faces, degeneracies, cyclic, labels })
}

/// `C^cell(X; A)`: degree `j` is the reduced representable on `X_j`, with the
/// pushforwards of the faces and degeneracies.
pub fn cellular_chains(x: &SimplicialGSet) -> Result<(SimplicialMackey, Vec<ReducedRepresentable>)> {
    let reps: Vec<ReducedRepresentable> = x.sets.iter().map(|s| ReducedRepresentable::new(s.clone())).collect::<Result<_>>()?;
    let top = x.max_degree();
    let mut faces = vec![Vec::new()];
    for j in 1..=top {
        faces.push(x.faces[j].iter().map(|f| reps[j].pushforward(&reps[j - 1], f)).collect());
    }
    let degeneracies = (0..top).map(|j| x.degeneracies[j].iter().map(|s| reps[j].pushforward(&reps[j + 1], s)).collect()).collect();
    let objects = reps.iter().map(|r| r.functor.clone()).collect();
    Ok((SimplicialMackey::new(objects, faces, degeneracies), reps))
}

/// Canonical forms of a homology functor by divisor.
pub type Levels = BTreeMap<u64, CanonicalForm>;

/// Homology of `HC(R[M])` against the levelwise box `HC(R) [] C^cell(N^cyc M; A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    /// `(degree, left levels, right levels)`.
    pub degrees: Vec<(usize, Levels, Levels)>,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|(_, a, b)| a == b)
    }
}

fn levelwise_box(x: &SimplicialMackey, y: &SimplicialMackey) -> Result<SimplicialMackey> {
    let top = x.max_degree().min(y.max_degree());
    let boxes: Vec<BoxProduct> = (0..=top).map(|j| box_many(&[x.object(j), y.object(j)])).collect::<Result<_>>()?;
    let mut faces = vec![Vec::new()];
    for j in 1..=top {
        faces.push((0..=j).map(|i| boxes[j].box_of_homs(&boxes[j - 1], &[x.face(j, i), y.face(j, i)])).collect());
    }
    let degeneracies = (0..top).map(|j| (0..=j).map(|i| boxes[j].box_of_homs(&boxes[j + 1], &[x.degeneracy(j, i), y.degeneracy(j, i)])).collect()).collect();
    let objects: Vec<Arc<MackeyFunctor>> = boxes.iter().map(|b| b.result().clone()).collect();
    Ok(SimplicialMackey::new(objects, faces, degeneracies))
}

pub fn splitting_check(r: &GreenFunctor, m: &PointedGMonoid, max_degree: usize) -> Result<SplittingReport> {
    if !m.is_commutative() {
        return Err(Error::Invalid("the monoid must be commutative".into()));
    }
    let left = twisted_cyclic_nerve(&monoid_algebra(r, m)?, max_degree + 1)?;
    let hc = twisted_cyclic_nerve(r, max_degree + 1)?;
    let (cells, _) = cellular_chains(&cyclic_nerve_monoid(m, max_degree + 1)?)?;
    let right = levelwise_box(&hc.simplicial, &cells)?;
    let degrees = (0..=max_degree)
        .map(|k| Ok((k, hh(&left, k)?.functor.canonical_forms(), simplicial_homology(&right, k)?.functor.canonical_forms())))
        .collect::<Result<_>>()?;
    Ok(SplittingReport { degrees })
}
