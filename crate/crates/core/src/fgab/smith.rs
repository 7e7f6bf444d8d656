//! Smith normal form over `Z`.
//!
//! Pivoting always moves the smallest nonzero absolute value of the active
//! block into the pivot position, then clears its row and column by
//! Euclidean reduction. Entry growth stays modest on the small presentations
//! produced by the Mackey machinery.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{zero_vector, Matrix, Vector};

/// Result of a Smith reduction `U * A * V = D`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Option<Matrix>,
    pub v: Option<Matrix>,
    pub v_inv: Option<Matrix>,
    pub d: Matrix,
    /// The first `rank` diagonal entries, all positive, each dividing the next.
    pub diag: Vec<BigInt>,
    pub rank: usize,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Tracking {
    pub u: bool,
    pub v: bool,
}

impl Tracking {
    pub const NONE: Tracking = Tracking { u: false, v: false };
    pub const ALL: Tracking = Tracking { u: true, v: true };
    pub const COLUMNS: Tracking = Tracking { u: false, v: true };
}

struct Reducer {
    a: Matrix,
    u: Option<Matrix>,
    v: Option<Matrix>,
    v_inv: Option<Matrix>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(i, j);
        }
        if let Some(w) = self.v_inv.as_mut() {
            w.swap_rows(i, j);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(dst, src, c);
        if let Some(u) = self.u.as_mut() {
            u.add_row_multiple(dst, src, c);
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(dst, src, c);
        if let Some(v) = self.v.as_mut() {
            v.add_col_multiple(dst, src, c);
        }
        if let Some(w) = self.v_inv.as_mut() {
            // (V E)^{-1} = E^{-1} V^{-1}; E adds c*col[src] to col[dst].
            w.add_row_multiple(src, dst, &-c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = self.u.as_mut() {
            u.negate_row(i);
        }
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                let better = match &best {
                    None => true,
                    Some((_, b)) => ax < *b,
                };
                if better {
                    let done = ax.is_one();
                    best = Some(((i, j), ax));
                    if done {
                        return best.map(|(p, _)| p);
                    }
                }
            }
        }
        best.map(|(p, _)| p)
    }

    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut pos = (t, t);
        let mut best = self.a[(t, t)].abs();
        for i in t + 1..self.a.rows() {
            let x = self.a[(i, t)].abs();
            if !x.is_zero() && (best.is_zero() || x < best) {
                best = x;
                pos = (i, t);
            }
        }
        for j in t + 1..self.a.cols() {
            let x = self.a[(t, j)].abs();
            if !x.is_zero() && (best.is_zero() || x < best) {
                best = x;
                pos = (t, j);
            }
        }
        pos
    }

    fn run(&mut self) -> usize {
        let (r, c) = (self.a.rows(), self.a.cols());
        let mut t = 0;
        while t < r.min(c) {
            let Some((pi, pj)) = self.min_in_block(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..r {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                    self.add_row(i, t, &-q);
                    if !self.a[(i, t)].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..c {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                    self.add_col(j, t, &-q);
                    if !self.a[(t, j)].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    let (pi, pj) = self.min_in_cross(t);
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                let pivot = self.a[(t, t)].clone();
                let mut offender = None;
                'scan: for i in t + 1..r {
                    for j in t + 1..c {
                        let x = &self.a[(i, j)];
                        if !x.is_zero() && !x.is_multiple_of(&pivot) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }
}

pub fn smith(m: &Matrix, tracking: Tracking) -> Smith {
    let (r, c) = (m.rows(), m.cols());
    let mut red = Reducer {
        a: m.clone(),
        u: tracking.u.then(|| Matrix::identity(r)),
        v: tracking.v.then(|| Matrix::identity(c)),
        v_inv: tracking.v.then(|| Matrix::identity(c)),
    };
    let rank = red.run();
    let diag = (0..rank).map(|i| red.a[(i, i)].clone()).collect();
    Smith { u: red.u, v: red.v, v_inv: red.v_inv, d: red.a, diag, rank }
}

/// Smith normal form with both transforms: returns `(U, D, V)` with `U*m*V = D`.
pub fn snf(m: &Matrix) -> (Matrix, Matrix, Matrix) {
    let s = smith(m, Tracking::ALL);
    (s.u.unwrap(), s.d, s.v.unwrap())
}

/// Basis (as rows) of the left kernel `{ y : y * m = 0 }`.
pub fn left_kernel(m: &Matrix) -> Matrix {
    let s = smith(m, Tracking { u: true, v: false });
    let u = s.u.unwrap();
    let rows: Vec<usize> = (s.rank..m.rows()).collect();
    u.select_rows(&rows)
}

/// A `Z`-basis of the row lattice of `m`, as the rows of the returned matrix.
pub fn row_lattice_basis(m: &Matrix) -> Matrix {
    let s = smith(m, Tracking::COLUMNS);
    let v_inv = s.v_inv.unwrap();
    let rows = (0..s.rank).map(|i| v_inv.row(i).iter().map(|x| x * &s.diag[i]).collect()).collect();
    Matrix::from_rows(m.cols(), rows)
}

/// Repeated solving of `y * A = b` over `Z` for a fixed `A`.
#[derive(Clone, Debug)]
pub struct LeftSolver {
    u: Matrix,
    v: Matrix,
    diag: Vec<BigInt>,
    rank: usize,
    rows: usize,
}

impl LeftSolver {
    pub fn new(a: &Matrix) -> Self {
        let s = smith(a, Tracking::ALL);
        LeftSolver { u: s.u.unwrap(), v: s.v.unwrap(), diag: s.diag, rank: s.rank, rows: a.rows() }
    }

    /// Some `y` with `y * A = b`, or `None` if `b` is outside the row lattice.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vector> {
        let bv = self.v.apply(b);
        let mut z = zero_vector(self.rows);
        for (i, x) in bv.iter().enumerate() {
            if i < self.rank {
                let (q, r) = x.div_rem(&self.diag[i]);
                if !r.is_zero() {
                    return None;
                }
                z[i] = q;
            } else if !x.is_zero() {
                return None;
            }
        }
        Some(self.u.apply(&z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &Matrix) -> Smith {
        let s = smith(m, Tracking::ALL);
        let u = s.u.clone().unwrap();
        let v = s.v.clone().unwrap();
        assert_eq!(u.mul(m).mul(&v), s.d);
        assert!(v.mul(s.v_inv.as_ref().unwrap()).is_identity());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        for w in s.diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn row_four_six() {
        let s = check(&Matrix::from_i64(1, 2, &[4, 6]));
        assert_eq!(s.d, Matrix::from_i64(1, 2, &[2, 0]));
    }

    #[test]
    fn identity_and_zero() {
        let s = check(&Matrix::identity(2));
        assert!(s.d.is_identity());
        let s = check(&Matrix::from_i64(1, 1, &[0]));
        assert_eq!(s.d, Matrix::from_i64(1, 1, &[0]));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn divisibility_repair() {
        let s = check(&Matrix::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(s.diag, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn solver_and_kernel() {
        let a = Matrix::from_i64(3, 2, &[2, 4, 1, 1, 3, 5]);
        let k = left_kernel(&a);
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&a).is_zero());
        let solver = LeftSolver::new(&a);
        let b = crate::fgab::matrix::vector_from_i64(&[1, 3]);
        let y = solver.solve(&b).expect("solvable");
        assert_eq!(a.transpose().transpose().apply(&y), b);
        let lattice = Matrix::from_i64(2, 2, &[2, 0, 0, 2]);
        assert!(LeftSolver::new(&lattice).solve(&crate::fgab::matrix::vector_from_i64(&[1, 0])).is_none());
    }

    #[test]
    fn lattice_basis_spans() {
        let a = Matrix::from_i64(3, 2, &[2, 4, 4, 8, 0, 6]);
        let b = row_lattice_basis(&a);
        assert_eq!(b.rows(), 2);
        let solver = LeftSolver::new(&b);
        for r in a.row_iter() {
            assert!(solver.solve(r).is_some());
        }
    }
}
