//! Dense row-major matrices.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::Error;
use crate::scalar::Scalar;

/// Dense `rows × cols` matrix stored row-major.
///
/// Construction through [`Matrix::new`] validates that the entry count
/// matches the shape and that every entry is finite; the arithmetic below
/// preserves both invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    /// Builds a matrix from row-major entries, validating shape and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self, Error> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("matrix entries must be finite".into()));
        }
        Ok(Self { rows, cols, data })
    }

    /// Internal constructor for results of arithmetic on already-valid inputs.
    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<F>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_raw(rows, cols, vec![F::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_raw(rows, cols, data)
    }

    /// Rectangular diagonal embedding: places `values[i]` at `(i, i)`.
    pub fn diag(rows: usize, cols: usize, values: &[F]) -> Result<Self, Error> {
        if values.len() > rows.min(cols) {
            return Err(Error::shape(format!(
                "diagonal of length {} does not fit a {}x{} matrix",
                values.len(),
                rows,
                cols
            )));
        }
        let mut m = Self::zeros(rows, cols);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn min_dim(&self) -> usize {
        self.rows.min(self.cols)
    }

    #[inline]
    pub fn as_slice(&self) -> &[F] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [F] {
        &mut self.data
    }

    /// Row-major vectorization `vec(X)`; the inverse of [`Matrix::unvec`].
    pub fn vectorize(&self) -> Vec<F> {
        self.data.clone()
    }

    /// Rebuilds a matrix from its row-major vectorization.
    pub fn unvec(rows: usize, cols: usize, v: &[F]) -> Result<Self, Error> {
        Self::new(rows, cols, v.to_vec())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == F::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn scaled(&self, s: F) -> Self {
        Self::from_raw(self.rows, self.cols, self.data.iter().map(|&v| v * s).collect())
    }

    /// Frobenius inner product `⟨self, rhs⟩ = tr(selfᵀ rhs)`.
    pub fn frob_dot(&self, rhs: &Self) -> F {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "frob_dot shape mismatch");
        self.data.iter().zip(rhs.data.iter()).map(|(&a, &b)| a * b).sum()
    }

    pub fn frob_norm(&self) -> F {
        self.frob_dot(self).sqrt()
    }

    pub fn max_abs(&self) -> F {
        self.data.iter().fold(F::zero(), |acc, &v| acc.max(v.abs()))
    }

    /// `true` when every entry differs from `rhs` by at most `tol`.
    pub fn approx_eq(&self, rhs: &Self, tol: F) -> bool {
        (self.rows, self.cols) == (rhs.rows, rhs.cols)
            && self
                .data
                .iter()
                .zip(rhs.data.iter())
                .all(|(&a, &b)| (a - b).abs() <= tol)
    }

    /// Casts entrywise into another scalar type.
    pub fn cast<G: Scalar>(&self) -> Matrix<G> {
        Matrix::from_raw(
            self.rows,
            self.cols,
            self.data.iter().map(|&v| G::c(v.to_f64().unwrap())).collect(),
        )
    }
}

impl<F: Scalar> Index<(usize, usize)> for Matrix<F> {
    type Output = F;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F: Scalar> IndexMut<(usize, usize)> for Matrix<F> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Scalar> Add for &Matrix<F> {
    type Output = Matrix<F>;

    fn add(self, rhs: Self) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        Matrix::from_raw(
            self.rows,
            self.cols,
            self.data.iter().zip(rhs.data.iter()).map(|(&a, &b)| a + b).collect(),
        )
    }
}

impl<F: Scalar> Sub for &Matrix<F> {
    type Output = Matrix<F>;

    fn sub(self, rhs: Self) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        Matrix::from_raw(
            self.rows,
            self.cols,
            self.data.iter().zip(rhs.data.iter()).map(|(&a, &b)| a - b).collect(),
        )
    }
}

impl<F: Scalar> Mul for &Matrix<F> {
    type Output = Matrix<F>;

    fn mul(self, rhs: Self) -> Matrix<F> {
        self.matmul(rhs)
    }
}

impl<F: Scalar> Neg for &Matrix<F> {
    type Output = Matrix<F>;

    fn neg(self) -> Matrix<F> {
        self.scaled(-F::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_rejects_bad_shapes_and_values() {
        assert!(Matrix::<f64>::new(0, 3, vec![]).is_err());
        assert!(Matrix::<f64>::new(2, 2, vec![1.0, 2.0, 3.0]).is_err());
        assert!(Matrix::<f64>::new(1, 2, vec![1.0, f64::NAN]).is_err());
        assert!(Matrix::<f64>::new(1, 2, vec![1.0, f64::INFINITY]).is_err());
        assert!(Matrix::<f64>::new(2, 2, vec![1.0, 2.0, 3.0, 4.0]).is_ok());
    }

    #[test]
    fn vectorize_is_row_major_and_invertible() {
        let m = Matrix::new(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(m.vectorize(), vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(m[(1, 0)], 4.0);
        let back = Matrix::unvec(2, 3, &m.vectorize()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn matmul_matches_hand_example() {
        let a = Matrix::new(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let b = Matrix::new(3, 2, vec![7.0, 8.0, 9.0, 10.0, 11.0, 12.0]).unwrap();
        let c = &a * &b;
        assert_eq!(c.as_slice(), &[58.0, 64.0, 139.0, 154.0]);
    }

    #[test]
    fn transpose_involution() {
        let a = Matrix::new(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn frobenius_norm_and_dot() {
        let a = Matrix::<f64>::new(2, 2, vec![3.0, 0.0, 0.0, 4.0]).unwrap();
        assert!((a.frob_norm() - 5.0).abs() < 1e-15);
        let i = Matrix::<f64>::identity(2);
        assert!((a.frob_dot(&i) - 7.0).abs() < 1e-15);
    }

    #[test]
    fn diag_embedding() {
        let d = Matrix::diag(3, 2, &[5.0, 2.0]).unwrap();
        assert_eq!(d[(0, 0)], 5.0);
        assert_eq!(d[(1, 1)], 2.0);
        assert_eq!(d[(2, 0)], 0.0);
        assert!(Matrix::diag(2, 2, &[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let a = Matrix::<f32>::identity(3);
        assert!((a.frob_norm() - 3f32.sqrt()).abs() < 1e-6);
    }
}
