//! Dense exact matrices and Sylvester inertia by congruence
//! diagonalization. Complex Hermitian inputs are realified to symmetric
//! doubles; reported dimensions are halved.

use crate::error::{Error, Result};
use crate::scalar::{Gaussian, Rat};
use nalgebra::DMatrix;
use num::{Signed, Zero};
use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }
}

impl Mat<Gaussian> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |_, _| Gaussian::zero())
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |r, c| {
            if r == c {
                Gaussian::one()
            } else {
                Gaussian::zero()
            }
        })
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Gaussian) {
        let e = &mut self.data[r * self.cols + c];
        *e += v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Mat::from_fn(self.rows, other.cols, |r, c| {
            let mut s = Gaussian::zero();
            for k in 0..self.cols {
                s += &(self.get(r, k) * other.get(k, c));
            }
            s
        })
    }

    pub fn conj_transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|r| (r..self.cols).all(|c| *self.get(r, c) == self.get(c, r).conj()))
    }

    pub fn all_real(&self) -> bool {
        self.data.iter().all(|x| x.is_real())
    }

    pub fn to_complex64(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).to_complex64())
    }

    /// U A U^H for exact congruence experiments.
    pub fn congruence(&self, u: &Self) -> Self {
        u.mul(self).mul(&u.conj_transpose())
    }
}

/// Inertia (p, q, z): positive, negative, zero signature counts.
pub type Inertia = (usize, usize, usize);

/// Inertia of an exact symmetric rational matrix by symmetric Gaussian
/// congruence. The input is consumed.
pub fn symmetric_inertia(mut a: Vec<Vec<Rat>>) -> Result<Inertia> {
    let n = a.len();
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Dimension("inertia needs a square matrix".into()));
        }
        for j in 0..n {
            if a[i][j] != a[j][i] {
                return Err(Error::NotHermitian {
                    row: i,
                    col: j,
                    detail: "matrix is not symmetric".into(),
                });
            }
        }
    }
    let (mut p, mut q, mut z) = (0usize, 0usize, 0usize);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            // prefer a later nonzero diagonal entry
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // zero diagonal block: row/col addition makes 2*a[k][j] appear
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            } else {
                // row k (and column k) vanish entirely on the active block
                z += 1;
                k += 1;
                continue;
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            p += 1;
        } else {
            q += 1;
        }
        // row operations alone leave the trailing block symmetric; the
        // mirrored column operations would only clear row k, which is never
        // read again
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let factor = &a[r][k] / &pivot;
            for c in k..n {
                let sub = &factor * &a[k][c];
                a[r][c] -= sub;
            }
        }
        k += 1;
    }
    Ok((p, q, z))
}

/// Inertia of an exact Hermitian Q(i) matrix. Real matrices go straight to
/// the symmetric routine; genuinely complex ones are realified to the
/// symmetric double [[X, -Y], [Y, X]], whose inertia is exactly doubled.
pub fn hermitian_inertia(m: &Mat<Gaussian>) -> Result<Inertia> {
    if m.rows() != m.cols() {
        return Err(Error::Dimension("inertia needs a square matrix".into()));
    }
    let n = m.rows();
    for r in 0..n {
        for c in r..n {
            if *m.get(r, c) != m.get(c, r).conj() {
                return Err(Error::NotHermitian {
                    row: c,
                    col: r,
                    detail: format!("entry is {}, conjugate of ({r},{c}) is {}", m.get(c, r), m.get(r, c).conj()),
                });
            }
        }
    }
    if m.all_real() {
        let a: Vec<Vec<Rat>> = (0..n)
            .map(|r| (0..n).map(|c| m.get(r, c).re.clone()).collect())
            .collect();
        return symmetric_inertia(a);
    }
    let a: Vec<Vec<Rat>> = (0..2 * n)
        .map(|r| {
            (0..2 * n)
                .map(|c| {
                    let e = m.get(r % n, c % n);
                    match (r < n, c < n) {
                        (true, true) | (false, false) => e.re.clone(),
                        (true, false) => -e.im.clone(),
                        (false, true) => e.im.clone(),
                    }
                })
                .collect()
        })
        .collect();
    let (p, q, z) = symmetric_inertia(a)?;
    debug_assert!(p % 2 == 0 && q % 2 == 0 && z % 2 == 0);
    Ok((p / 2, q / 2, z / 2))
}

/// Float inertia of a Hermitian matrix with an epsilon band around zero:
/// (positive, negative, band) eigenvalue counts.
pub fn float_inertia(m: &DMatrix<Complex64>, eps: f64) -> Inertia {
    let n = m.nrows();
    if n == 0 {
        return (0, 0, 0);
    }
    // symmetrize away float fuzz before the eigensolve
    let h = (m + m.adjoint()).scale(0.5);
    let eig = nalgebra::SymmetricEigen::new(h);
    let (mut p, mut q, mut z) = (0, 0, 0);
    for ev in eig.eigenvalues.iter() {
        if *ev > eps {
            p += 1;
        } else if *ev < -eps {
            q += 1;
        } else {
            z += 1;
        }
    }
    (p, q, z)
}
