//! Dense linear algebra for small systems: a row-major matrix, LU with
//! partial pivoting, leading principal minors and a shifted power iteration
//! for the Perron root of nonnegative matrices.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n_cols) {
            return Err(Error::Dimension(format!(
                "row {i} has {} entries, expected {n_cols}",
                row.len()
            )));
        }
        Ok(Self {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(Scalar::magnitude)
            .fold(T::zero(), |acc, x| if x > acc { x } else { acc })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() - other.get(i, j).clone()
        })
    }

    pub fn scale(&self, factor: &T) -> Self {
        self.map(|x| x.clone() * factor.clone())
    }

    /// Multiplies row `i` by `factors[i]`, i.e. `diag(factors) * self`.
    pub fn scale_rows(&self, factors: &[T]) -> Self {
        assert_eq!(factors.len(), self.rows);
        Self::from_fn(self.rows, self.cols, |i, j| {
            factors[i].clone() * self.get(i, j).clone()
        })
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self.get(i, k).clone() * other.get(k, j).clone()
            })
        })
    }

    /// `self * x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| dot(self.row(i), x))
            .collect()
    }

    /// `x * self` for a row vector `x`.
    pub fn vec_mul(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                (0..self.rows).fold(T::zero(), |acc, i| {
                    acc + x[i].clone() * self.get(i, j).clone()
                })
            })
            .collect()
    }

    /// Leading `k x k` block.
    pub fn leading(&self, k: usize) -> Self {
        Self::from_fn(k, k, |i, j| self.get(i, j).clone())
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn max_abs_diff<T: Scalar>(a: &[T], b: &[T]) -> T {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.clone() - y.clone()).magnitude())
        .fold(T::zero(), |acc, d| if d > acc { d } else { acc })
}

/// LU factorization `P A = L U` with partial pivoting. `L` has a unit
/// diagonal and is stored below the diagonal of `lu`.
#[derive(Clone, Debug)]
pub struct Lu<T> {
    lu: Matrix<T>,
    perm: Vec<usize>,
    odd_swaps: bool,
}

impl<T: Scalar> Lu<T> {
    /// Factors `a`, failing when a pivot falls below
    /// `T::pivot_tolerance()` relative to the largest entry of `a`.
    pub fn factor(a: Matrix<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Dimension(format!(
                "cannot factor a {}x{} matrix",
                a.rows, a.cols
            )));
        }
        let n = a.rows;
        let threshold = T::pivot_tolerance() * a.max_abs();
        let mut lu = a;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd_swaps = false;

        for k in 0..n {
            let mut p = k;
            let mut best = lu.get(k, k).magnitude();
            for i in (k + 1)..n {
                let m = lu.get(i, k).magnitude();
                if m > best {
                    best = m;
                    p = i;
                }
            }
            if best.is_zero() || best <= threshold {
                return Err(Error::Singular {
                    column: k,
                    pivot: best.lossy_f64(),
                });
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                odd_swaps = !odd_swaps;
            }
            let pivot = lu.get(k, k).clone();
            for i in (k + 1)..n {
                let factor = lu.get(i, k).clone() / pivot.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in (k + 1)..n {
                    let v = lu.get(i, j).clone() - factor.clone() * lu.get(k, j).clone();
                    lu.set(i, j, v);
                }
                lu.set(i, k, factor);
            }
        }
        Ok(Self { lu, perm, odd_swaps })
    }

    pub fn order(&self) -> usize {
        self.lu.rows
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.order();
        assert_eq!(b.len(), n);
        let mut y: Vec<T> = self.perm.iter().map(|&p| b[p].clone()).collect();
        for i in 0..n {
            for k in 0..i {
                let v = y[i].clone() - self.lu.get(i, k).clone() * y[k].clone();
                y[i] = v;
            }
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                let v = y[i].clone() - self.lu.get(i, k).clone() * y[k].clone();
                y[i] = v;
            }
            y[i] = y[i].clone() / self.lu.get(i, i).clone();
        }
        y
    }

    /// Solves the row-vector system `x A = b`.
    pub fn solve_left(&self, b: &[T]) -> Vec<T> {
        let n = self.order();
        assert_eq!(b.len(), n);
        // A^T = U^T L^T P, so solve U^T z = b, then L^T y = z, then x = P^T y.
        let mut z = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                let v = z[i].clone() - self.lu.get(k, i).clone() * z[k].clone();
                z[i] = v;
            }
            z[i] = z[i].clone() / self.lu.get(i, i).clone();
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                let v = z[i].clone() - self.lu.get(k, i).clone() * z[k].clone();
                z[i] = v;
            }
        }
        let mut x = vec![T::zero(); n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = z[i].clone();
        }
        x
    }

    pub fn determinant(&self) -> T {
        let mut det = (0..self.order()).fold(T::one(), |acc, i| acc * self.lu.get(i, i).clone());
        if self.odd_swaps {
            det = -det;
        }
        det
    }
}

/// Determinant by Gaussian elimination; exactly singular matrices give zero.
pub fn determinant<T: Scalar>(a: &Matrix<T>) -> T {
    assert!(a.is_square());
    let n = a.rows;
    let mut m = a.clone();
    let mut det = T::one();
    for k in 0..n {
        let Some(p) = (k..n)
            .filter(|&i| !m.get(i, k).is_zero())
            .max_by(|&i, &j| {
                m.get(i, k)
                    .magnitude()
                    .partial_cmp(&m.get(j, k).magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
        else {
            return T::zero();
        };
        if p != k {
            for j in 0..n {
                m.data.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let pivot = m.get(k, k).clone();
        det = det * pivot.clone();
        for i in (k + 1)..n {
            let factor = m.get(i, k).clone() / pivot.clone();
            for j in (k + 1)..n {
                let v = m.get(i, j).clone() - factor.clone() * m.get(k, j).clone();
                m.set(i, j, v);
            }
        }
    }
    det
}

/// Determinants of the leading `1x1 .. nxn` blocks.
pub fn leading_principal_minors<T: Scalar>(a: &Matrix<T>) -> Vec<T> {
    (1..=a.rows).map(|k| determinant(&a.leading(k))).collect()
}

/// Perron root of a nonnegative square matrix.
///
/// Iterates on `A + I` from the uniform positive vector; the shift keeps the
/// iteration convergent for periodic (imprimitive) matrices whose peripheral
/// eigenvalues share the modulus of the Perron root. Stops when successive
/// estimates differ by less than `tol`.
pub fn perron_root<T: Real>(a: &Matrix<T>, tol: T, max_iter: usize) -> Result<T> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "eigenvalue of a {}x{} matrix",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    if a.is_zero() {
        return Ok(T::zero());
    }
    let shifted = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            *a.get(i, j) + T::one()
        } else {
            *a.get(i, j)
        }
    });
    let mut x = vec![T::one(); n];
    let mut estimate = T::one();
    for _ in 0..max_iter {
        let y = shifted.mul_vec(&x);
        let norm = y.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
        if norm.is_zero() {
            return Ok(T::zero());
        }
        let next: Vec<T> = y.iter().map(|v| *v / norm).collect();
        // x is normalized to unit max-norm, so ||(A + I) x|| estimates the root.
        let moved = max_abs_diff(&next, &x);
        x = next;
        let converged = (norm - estimate).abs() < tol && moved < tol.sqrt();
        estimate = norm;
        if converged {
            return Ok(estimate - T::one());
        }
    }
    Err(Error::NoConvergence(max_iter))
}

/// Whether a nonnegative square matrix has spectral radius below one.
///
/// `I - A` is then a nonsingular M-matrix, which holds exactly when Gaussian
/// elimination without pivoting meets only positive pivots.
pub fn spectral_radius_below_one<T: Real>(a: &Matrix<T>) -> bool {
    let n = a.rows;
    let mut m: Vec<T> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let id = if i == j { T::one() } else { T::zero() };
            id - *a.get(i, j)
        })
        .collect();
    for c in 0..n {
        let d = m[c * n + c];
        if !(d > T::zero()) {
            return false;
        }
        for row in c + 1..n {
            let f = m[row * n + c] / d;
            if !f.is_zero() {
                for col in c..n {
                    m[row * n + col] = m[row * n + col] - f * m[c * n + col];
                }
            }
        }
    }
    true
}
