use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::group::FgAbGroup;
use super::matrix::{Matrix, Vector};
use super::smith::{left_kernel, row_lattice_basis, LeftSolver};
use crate::error::{Error, Result};

/// A homomorphism of presented groups. Row `i` of `matrix` is the image of
/// source generator `i` in target generator coordinates.
#[derive(Clone)]
pub struct AbHom {
    source: Arc<FgAbGroup>,
    target: Arc<FgAbGroup>,
    matrix: Matrix,
}

impl fmt::Debug for AbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbHom({:?} -> {:?}: {:?})", self.source, self.target, self.matrix)
    }
}

impl AbHom {
    /// Checked constructor: every source relation must map into the target relations.
    pub fn new(source: Arc<FgAbGroup>, target: Arc<FgAbGroup>, matrix: Matrix) -> Result<Self> {
        let h = Self::new_unchecked(source, target, matrix);
        if h.is_well_defined() {
            Ok(h)
        } else {
            Err(Error::IllDefinedHom)
        }
    }

    pub fn new_unchecked(source: Arc<FgAbGroup>, target: Arc<FgAbGroup>, matrix: Matrix) -> Self {
        assert_eq!(matrix.rows(), source.num_generators(), "hom matrix rows != source generators");
        assert_eq!(matrix.cols(), target.num_generators(), "hom matrix cols != target generators");
        AbHom { source, target, matrix }
    }

    pub fn from_images(source: Arc<FgAbGroup>, target: Arc<FgAbGroup>, images: Vec<Vector>) -> Self {
        let cols = target.num_generators();
        Self::new_unchecked(source, target, Matrix::from_rows(cols, images))
    }

    pub fn identity(g: Arc<FgAbGroup>) -> Self {
        let n = g.num_generators();
        Self::new_unchecked(g.clone(), g, Matrix::identity(n))
    }

    pub fn zero(source: Arc<FgAbGroup>, target: Arc<FgAbGroup>) -> Self {
        let m = Matrix::zeros(source.num_generators(), target.num_generators());
        Self::new_unchecked(source, target, m)
    }

    pub fn source(&self) -> &Arc<FgAbGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FgAbGroup> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vector {
        self.matrix.apply(x)
    }

    pub fn image_of_generator(&self, i: usize) -> Vector {
        self.matrix.row_vec(i)
    }

    pub fn is_well_defined(&self) -> bool {
        self.source.relations().row_iter().all(|r| self.target.is_zero(&self.matrix.apply(r)))
    }

    /// `self` followed by `next`.
    pub fn compose(&self, next: &AbHom) -> AbHom {
        assert_eq!(self.matrix.cols(), next.matrix.rows(), "composition of incompatible homs");
        AbHom::new_unchecked(self.source.clone(), next.target.clone(), self.matrix.mul(&next.matrix))
    }

    pub fn add(&self, other: &AbHom) -> AbHom {
        AbHom::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &AbHom) -> AbHom {
        AbHom::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.sub(&other.matrix))
    }

    pub fn scale(&self, c: &BigInt) -> AbHom {
        AbHom::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    /// Equality modulo the target relations.
    pub fn equals(&self, other: &AbHom) -> bool {
        let diff = self.matrix.sub(&other.matrix);
        let ok = diff.row_iter().all(|r| self.target.is_zero(r));
        ok
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.row_iter().all(|r| self.target.is_zero(r))
    }

    /// Replace source and target by other presentations on the same generators.
    pub fn reinterpret(&self, source: Arc<FgAbGroup>, target: Arc<FgAbGroup>) -> AbHom {
        AbHom::new_unchecked(source, target, self.matrix.clone())
    }

    /// Lattice of `x in Z^g` with `x * M` zero in the target: a `Z`-basis, as rows.
    fn kernel_lattice(&self) -> Matrix {
        let g = self.source.num_generators();
        // x * M + z * S = 0 where S are the target relations.
        let stacked = self.matrix.vstack(self.target.relations());
        let k = left_kernel(&stacked);
        let xs: Vec<Vector> = k.row_iter().map(|r| r[..g].to_vec()).collect();
        let gens = Matrix::from_rows(g, xs);
        if gens.rows() == 0 {
            return gens;
        }
        row_lattice_basis(&gens)
    }

    /// Kernel as a presented group together with its inclusion.
    pub fn kernel(&self) -> Subgroup {
        let basis = self.kernel_lattice();
        Subgroup::new(self.source.clone(), basis)
    }

    /// Cokernel on the target generators, with the projection.
    pub fn cokernel(&self) -> (Arc<FgAbGroup>, AbHom) {
        let q = Arc::new(self.target.quotient(&self.matrix));
        let n = self.target.num_generators();
        let proj = AbHom::new_unchecked(self.target.clone(), q.clone(), Matrix::identity(n));
        (q, proj)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Induced map `A (x) C -> B (x) D` on tensor presentations.
    pub fn tensor(f: &AbHom, g: &AbHom) -> AbHom {
        let src = Arc::new(FgAbGroup::tensor(&f.source, &g.source));
        let tgt = Arc::new(FgAbGroup::tensor(&f.target, &g.target));
        let (sa, sb) = (f.matrix.rows(), g.matrix.rows());
        let (ta, tb) = (f.matrix.cols(), g.matrix.cols());
        let mut m = Matrix::zeros(sa * sb, ta * tb);
        for i in 0..sa {
            for j in 0..sb {
                for k in 0..ta {
                    let a = &f.matrix[(i, k)];
                    if a.is_zero() {
                        continue;
                    }
                    for l in 0..tb {
                        let b = &g.matrix[(j, l)];
                        if !b.is_zero() {
                            m[(i * sb + j, k * tb + l)] = a * b;
                        }
                    }
                }
            }
        }
        AbHom::new_unchecked(src, tgt, m)
    }
}

/// A subgroup of a presented group, presented on its own generators.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: Arc<FgAbGroup>,
    pub inclusion: AbHom,
    solver: Arc<LeftSolver>,
    ngens: usize,
}

impl Subgroup {
    /// Subgroup of `ambient` generated by the rows of `gens`.
    pub fn new(ambient: Arc<FgAbGroup>, gens: Matrix) -> Self {
        let k = gens.rows();
        let stacked = gens.vstack(ambient.relations());
        // Relations among the new generators: y with y*gens in the ambient relations.
        let rel_lattice = left_kernel(&stacked);
        let rels: Vec<Vector> = rel_lattice.row_iter().map(|r| r[..k].to_vec()).collect();
        let group = Arc::new(FgAbGroup::from_relations(k, rels));
        let solver = Arc::new(LeftSolver::new(&stacked));
        let inclusion = AbHom::new_unchecked(group.clone(), ambient, gens);
        Subgroup { group, inclusion, solver, ngens: k }
    }

    /// Coordinates of an ambient element in the subgroup generators.
    pub fn lift(&self, x: &[BigInt]) -> Option<Vector> {
        self.solver.solve(x).map(|y| y[..self.ngens].to_vec())
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.lift(x).is_some()
    }

    /// Factor `f` (whose image lies in this subgroup) through the inclusion.
    pub fn factor(&self, f: &AbHom) -> Result<AbHom> {
        let images = (0..f.source().num_generators()).map(|i| self.lift(&f.image_of_generator(i)).ok_or(Error::NotInSubgroup)).collect::<Result<Vec<_>>>()?;
        Ok(AbHom::from_images(f.source().clone(), self.group.clone(), images))
    }
}

/// `ker(d_out) / im(d_in)` with the data needed to push cycles into it.
#[derive(Clone, Debug)]
pub struct Homology {
    pub group: Arc<FgAbGroup>,
    pub cycles: Subgroup,
}

impl Homology {
    /// Class of a cycle of the middle group.
    pub fn class_of(&self, z: &[BigInt]) -> Option<Vector> {
        self.cycles.lift(z)
    }

    /// Representative cycle of homology generator `i`.
    pub fn representative(&self, i: usize) -> Vector {
        self.cycles.inclusion.image_of_generator(i)
    }

    /// Map induced on homology by a chain-level map `f` between middle groups.
    pub fn induced(&self, f: &AbHom, target: &Homology) -> Result<AbHom> {
        let images = (0..self.group.num_generators())
            .map(|i| target.class_of(&f.apply(&self.representative(i))).ok_or(Error::NotInSubgroup))
            .collect::<Result<Vec<_>>>()?;
        Ok(AbHom::from_images(self.group.clone(), target.group.clone(), images))
    }
}

/// Homology of `A --d_in--> B --d_out--> C` at `B`.
pub fn homology(d_in: &AbHom, d_out: &AbHom) -> Result<Homology> {
    if !d_in.compose(d_out).is_zero() {
        return Err(Error::CompositeNonzero);
    }
    let cycles = d_out.kernel();
    let mut rels: Vec<Vector> = cycles.group.relations().row_iter().map(|r| r.to_vec()).collect();
    for i in 0..d_in.source().num_generators() {
        let b = d_in.image_of_generator(i);
        rels.push(cycles.lift(&b).ok_or(Error::CompositeNonzero)?);
    }
    let k = cycles.group.num_generators();
    let group = Arc::new(FgAbGroup::from_relations(k, rels));
    Ok(Homology { group, cycles })
}

/// The unique-up-to-relations preimage `x` with `f(x) = y`, if any.
pub fn preimage(f: &AbHom, y: &[BigInt]) -> Option<Vector> {
    let stacked = f.matrix().vstack(f.target().relations());
    let g = f.source().num_generators();
    LeftSolver::new(&stacked).solve(y).map(|x| x[..g].to_vec())
}

pub fn sum_of(homs: &[AbHom], source: Arc<FgAbGroup>, target: Arc<FgAbGroup>) -> AbHom {
    let mut m = Matrix::zeros(source.num_generators(), target.num_generators());
    for h in homs {
        m = m.add(h.matrix());
    }
    AbHom::new_unchecked(source, target, m)
}

pub fn scalar_hom(g: Arc<FgAbGroup>, c: i64) -> AbHom {
    AbHom::identity(g).scale(&BigInt::from(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::group::CanonicalForm;

    fn z() -> Arc<FgAbGroup> {
        Arc::new(FgAbGroup::free(1))
    }

    #[test]
    fn homology_of_times_two() {
        let zero = Arc::new(FgAbGroup::zero());
        let d_in = AbHom::new(z(), z(), Matrix::from_i64(1, 1, &[2])).unwrap();
        let d_out = AbHom::zero(z(), zero);
        let h = homology(&d_in, &d_out).unwrap();
        assert_eq!(h.group.canonical_form(), CanonicalForm::cyclic(2));
    }

    #[test]
    fn homology_zero_maps() {
        let z2 = Arc::new(FgAbGroup::free(2));
        let h = homology(&AbHom::zero(z2.clone(), z2.clone()), &AbHom::zero(z2.clone(), z2.clone())).unwrap();
        assert_eq!(h.group.canonical_form(), CanonicalForm::free(2));
    }

    #[test]
    fn homology_exact() {
        let zero = Arc::new(FgAbGroup::zero());
        let d_in = AbHom::identity(z());
        let h = homology(&d_in, &AbHom::zero(z(), zero)).unwrap();
        assert!(h.group.is_trivial());
    }

    #[test]
    fn homology_rejects_nonzero_composite() {
        let id = AbHom::identity(z());
        assert!(matches!(homology(&id, &id), Err(Error::CompositeNonzero)));
    }

    #[test]
    fn ill_defined_hom_rejected() {
        let z2 = Arc::new(FgAbGroup::cyclic(2));
        assert!(AbHom::new(z2.clone(), z(), Matrix::from_i64(1, 1, &[1])).is_err());
        assert!(AbHom::new(z(), z2, Matrix::from_i64(1, 1, &[1])).is_ok());
    }

    #[test]
    fn kernel_with_torsion_target() {
        // Z -> Z/6, 1 -> 2 has kernel 3Z.
        let z6 = Arc::new(FgAbGroup::cyclic(6));
        let f = AbHom::new(z(), z6, Matrix::from_i64(1, 1, &[2])).unwrap();
        let k = f.kernel();
        assert_eq!(k.group.canonical_form(), CanonicalForm::free(1));
        assert!(k.contains(&[BigInt::from(3)]));
        assert!(!k.contains(&[BigInt::from(2)]));
        let (c, _) = f.cokernel();
        assert_eq!(c.canonical_form(), CanonicalForm::cyclic(2));
    }

    #[test]
    fn equality_mod_relations() {
        let z4 = Arc::new(FgAbGroup::cyclic(4));
        let f = AbHom::new(z(), z4.clone(), Matrix::from_i64(1, 1, &[1])).unwrap();
        let g = AbHom::new(z(), z4, Matrix::from_i64(1, 1, &[5])).unwrap();
        assert!(f.equals(&g));
    }
}
