//! Full singular value decomposition via Golub–Kahan bidiagonalization and
//! implicit-shift QR.
//!
//! Both orthogonal factors are returned complete (`U` is `m×m`, `V` is
//! `n×n`): the proof-replay block decompositions in [`crate::certify`]
//! index the full bases, not just the leading `min(m,n)` columns.

use crate::error::Error;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Full SVD `A = U · D(sigma) · Vᵀ`.
///
/// `sigma` has length `min(m, n)`, is nonincreasing and nonnegative;
/// `u` and `v` are orthogonal.
#[derive(Debug, Clone)]
pub struct Svd<F> {
    pub u: Matrix<F>,
    pub sigma: Vec<F>,
    pub v: Matrix<F>,
}

impl<F: Scalar> Svd<F> {
    /// Rebuilds `U · D(sigma) · Vᵀ`, optionally with a modified spectrum.
    pub fn recompose_with(&self, sigma: &[F]) -> Matrix<F> {
        let m = self.u.rows();
        let n = self.v.rows();
        let t = m.min(n);
        assert!(sigma.len() <= t, "spectrum longer than min dimension");
        // U D Vᵀ touches only the first t columns of U and V.
        let mut out = Matrix::zeros(m, n);
        for (k, &s) in sigma.iter().enumerate() {
            if s == F::zero() {
                continue;
            }
            for i in 0..m {
                let us = self.u[(i, k)] * s;
                for j in 0..n {
                    out[(i, j)] += us * self.v[(j, k)];
                }
            }
        }
        out
    }

    pub fn recompose(&self) -> Matrix<F> {
        self.recompose_with(&self.sigma)
    }
}

/// Sweep budget multiplier for the implicit-shift QR loop.
const MAX_SWEEPS_PER_DIM: usize = 60;

/// Computes the full SVD of `a`.
pub fn svd<F: Scalar>(a: &Matrix<F>) -> Result<Svd<F>, Error> {
    if a.rows() >= a.cols() {
        svd_tall(a, true)
    } else {
        let s = svd_tall(&a.transpose(), true)?;
        Ok(Svd { u: s.v, sigma: s.sigma, v: s.u })
    }
}

/// Singular values only (no factor accumulation).
pub fn singular_values<F: Scalar>(a: &Matrix<F>) -> Result<Vec<F>, Error> {
    let s = if a.rows() >= a.cols() {
        svd_tall(a, false)?
    } else {
        svd_tall(&a.transpose(), false)?
    };
    Ok(s.sigma)
}

// ── Householder bidiagonalization ───────────────────────────────────

/// Reflector mapping `x` to `alpha·e₁`; returns `(alpha, v, beta)` with
/// `H = I − beta·v·vᵀ`, or `None` when `x` is already (numerically) aligned.
fn householder<F: Scalar>(x: &[F]) -> Option<(F, Vec<F>, F)> {
    let norm = x.iter().map(|&v| v * v).sum::<F>().sqrt();
    if norm == F::zero() {
        return None;
    }
    let tail = x[1..].iter().map(|&v| v * v).sum::<F>();
    if tail == F::zero() {
        // Already e₁-aligned; no reflection needed, alpha keeps the sign.
        return None;
    }
    let alpha = if x[0] >= F::zero() { -norm } else { norm };
    let mut v = x.to_vec();
    v[0] -= alpha;
    let vnorm2 = v.iter().map(|&w| w * w).sum::<F>();
    let beta = F::c(2.0) / vnorm2;
    Some((alpha, v, beta))
}

/// Reduces tall `a` (m ≥ n) to upper bidiagonal form, accumulating the
/// transforms into full `u` (m×m) and `v` (n×n) when `accumulate` is set.
fn bidiagonalize<F: Scalar>(
    a: &mut Matrix<F>,
    diag: &mut [F],
    off: &mut [F],
    u: &mut Matrix<F>,
    v: &mut Matrix<F>,
    accumulate: bool,
) {
    let m = a.rows();
    let n = a.cols();

    for k in 0..n {
        // Left reflector: zero a[k+1.., k].
        let col: Vec<F> = (k..m).map(|i| a[(i, k)]).collect();
        if let Some((alpha, hv, beta)) = householder(&col) {
            for j in k..n {
                let dot: F = (k..m).map(|i| hv[i - k] * a[(i, j)]).sum();
                let scale = beta * dot;
                for i in k..m {
                    a[(i, j)] -= scale * hv[i - k];
                }
            }
            if accumulate {
                for row in 0..m {
                    let dot: F = (k..m).map(|i| u[(row, i)] * hv[i - k]).sum();
                    let scale = beta * dot;
                    for i in k..m {
                        u[(row, i)] -= scale * hv[i - k];
                    }
                }
            }
            diag[k] = alpha;
        } else {
            diag[k] = a[(k, k)];
        }

        // Right reflector: zero a[k, k+2..].
        if k + 2 < n {
            let row: Vec<F> = (k + 1..n).map(|j| a[(k, j)]).collect();
            if let Some((alpha, hv, beta)) = householder(&row) {
                for i in k..m {
                    let dot: F = (k + 1..n).map(|j| hv[j - k - 1] * a[(i, j)]).sum();
                    let scale = beta * dot;
                    for j in k + 1..n {
                        a[(i, j)] -= scale * hv[j - k - 1];
                    }
                }
                if accumulate {
                    for r in 0..n {
                        let dot: F = (k + 1..n).map(|j| v[(r, j)] * hv[j - k - 1]).sum();
                        let scale = beta * dot;
                        for j in k + 1..n {
                            v[(r, j)] -= scale * hv[j - k - 1];
                        }
                    }
                }
                off[k] = alpha;
            } else {
                off[k] = a[(k, k + 1)];
            }
        } else if k + 1 < n {
            off[k] = a[(k, k + 1)];
        }
    }
}

// ── Implicit-shift QR on the bidiagonal ─────────────────────────────

/// Rotation `(c, s)` with `−s·f + c·g = 0` and `c·f + s·g = r`.
#[inline]
fn givens<F: Scalar>(f: F, g: F) -> (F, F) {
    if g == F::zero() {
        (F::one(), F::zero())
    } else if f == F::zero() {
        (F::zero(), F::one())
    } else {
        let r = f.hypot(g);
        (f / r, g / r)
    }
}

#[inline]
fn rotate_cols<F: Scalar>(m: &mut Matrix<F>, j1: usize, j2: usize, c: F, s: F) {
    for row in 0..m.rows() {
        let a = m[(row, j1)];
        let b = m[(row, j2)];
        m[(row, j1)] = c * a + s * b;
        m[(row, j2)] = c * b - s * a;
    }
}

fn bidiagonal_qr<F: Scalar>(
    diag: &mut [F],
    off: &mut [F],
    u: &mut Matrix<F>,
    v: &mut Matrix<F>,
    accumulate: bool,
) -> Result<(), Error> {
    let n = diag.len();
    if n == 0 {
        return Ok(());
    }
    let eps = F::epsilon();
    let max_iter = MAX_SWEEPS_PER_DIM * n.max(1);
    let mut iter = 0usize;
    let mut hi = n - 1;

    while hi > 0 {
        let threshold = eps * (diag[hi - 1].abs() + diag[hi].abs());
        if off[hi - 1].abs() <= threshold {
            off[hi - 1] = F::zero();
            hi -= 1;
            continue;
        }

        // Start of the unreduced block ending at hi.
        let mut lo = hi - 1;
        while lo > 0 {
            let threshold = eps * (diag[lo - 1].abs() + diag[lo].abs());
            if off[lo - 1].abs() <= threshold {
                off[lo - 1] = F::zero();
                break;
            }
            lo -= 1;
        }

        iter += 1;
        if iter > max_iter {
            return Err(Error::NumericalFailure(format!(
                "bidiagonal QR did not converge within {max_iter} sweeps"
            )));
        }

        // Magnitude of the active block, for the zero-diagonal test.
        let mut anorm = F::zero();
        for i in lo..=hi {
            let mut s = diag[i].abs();
            if i < hi {
                s = s + off[i].abs();
            }
            anorm = anorm.max(s);
        }

        // A vanishing diagonal breaks the shift; annihilate the trailing
        // off-diagonal of that row with left rotations and retry.
        let mut chased = false;
        for idx in lo..hi {
            if diag[idx].abs() <= eps * anorm {
                diag[idx] = F::zero();
                let mut z = off[idx];
                off[idx] = F::zero();
                for j in idx + 1..=hi {
                    let (c, s) = givens(diag[j], z);
                    diag[j] = c * diag[j] + s * z;
                    if j < hi {
                        z = -s * off[j];
                        off[j] = c * off[j];
                    }
                    if accumulate {
                        rotate_cols(u, j, idx, c, s);
                    }
                }
                chased = true;
                break;
            }
        }
        if chased {
            continue;
        }

        // Wilkinson shift from the trailing 2×2 of BᵀB.
        let d_hi = diag[hi];
        let d_hi1 = diag[hi - 1];
        let e_hi1 = off[hi - 1];
        let e_hi2 = if hi >= 2 && hi - 1 > lo { off[hi - 2] } else { F::zero() };
        let t11 = d_hi1 * d_hi1 + e_hi2 * e_hi2;
        let t12 = d_hi1 * e_hi1;
        let t22 = d_hi * d_hi + e_hi1 * e_hi1;
        let delta = (t11 - t22) * F::c(0.5);
        let mu = if t12 == F::zero() {
            t22
        } else {
            let sgn = if delta >= F::zero() { F::one() } else { -F::one() };
            t22 - t12 * t12 / (delta + sgn * (delta * delta + t12 * t12).sqrt())
        };

        // Bulge chase.
        let mut x = diag[lo] * diag[lo] - mu;
        let mut z = diag[lo] * off[lo];
        for k in lo..hi {
            let (c, s) = givens(x, z);
            if k > lo {
                off[k - 1] = c * x + s * z;
            }
            let dk = diag[k];
            let ek = off[k];
            let dk1 = diag[k + 1];
            diag[k] = c * dk + s * ek;
            off[k] = c * ek - s * dk;
            let bulge = s * dk1;
            diag[k + 1] = c * dk1;
            if accumulate {
                rotate_cols(v, k, k + 1, c, s);
            }

            let (c2, s2) = givens(diag[k], bulge);
            diag[k] = c2 * diag[k] + s2 * bulge;
            let old_ek = off[k];
            let old_dk1 = diag[k + 1];
            off[k] = c2 * old_ek + s2 * old_dk1;
            diag[k + 1] = c2 * old_dk1 - s2 * old_ek;
            if k + 1 < hi {
                let old_ek1 = off[k + 1];
                x = off[k];
                z = s2 * old_ek1;
                off[k + 1] = c2 * old_ek1;
            }
            if accumulate {
                rotate_cols(u, k, k + 1, c2, s2);
            }
        }
    }

    // Nonnegative spectrum: absorb signs into U.
    for i in 0..n {
        if diag[i] < F::zero() {
            diag[i] = -diag[i];
            if accumulate {
                for row in 0..u.rows() {
                    u[(row, i)] = -u[(row, i)];
                }
            }
        }
    }

    // Stable descending sort (strict comparison keeps tied values in
    // computed order), permuting the full factor columns alongside.
    for i in 0..n {
        let mut max_idx = i;
        for j in i + 1..n {
            if diag[j] > diag[max_idx] {
                max_idx = j;
            }
        }
        if max_idx != i {
            diag.swap(i, max_idx);
            if accumulate {
                for row in 0..u.rows() {
                    let tmp = u[(row, i)];
                    u[(row, i)] = u[(row, max_idx)];
                    u[(row, max_idx)] = tmp;
                }
                for row in 0..v.rows() {
                    let tmp = v[(row, i)];
                    v[(row, i)] = v[(row, max_idx)];
                    v[(row, max_idx)] = tmp;
                }
            }
        }
    }

    Ok(())
}

fn svd_tall<F: Scalar>(a: &Matrix<F>, accumulate: bool) -> Result<Svd<F>, Error> {
    let m = a.rows();
    let n = a.cols();
    debug_assert!(m >= n);

    let mut work = a.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);
    let mut diag = vec![F::zero(); n];
    let mut off = vec![F::zero(); n.saturating_sub(1)];

    bidiagonalize(&mut work, &mut diag, &mut off, &mut u, &mut v, accumulate);
    bidiagonal_qr(&mut diag, &mut off, &mut u, &mut v, accumulate)?;

    Ok(Svd { u, sigma: diag, v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> Matrix<f64> {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        Matrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0))
    }

    fn check_factors(a: &Matrix<f64>, s: &Svd<f64>) {
        let m = a.rows();
        let n = a.cols();
        let t = m.min(n);
        assert_eq!(s.u.rows(), m);
        assert_eq!(s.u.cols(), m);
        assert_eq!(s.v.rows(), n);
        assert_eq!(s.v.cols(), n);
        assert_eq!(s.sigma.len(), t);

        // Orthogonality of the full factors (Frobenius distance to I).
        let utu = &s.u.transpose() * &s.u;
        let vtv = &s.v.transpose() * &s.v;
        assert!((&utu - &Matrix::identity(m)).frob_norm() < 1e-10, "UᵀU far from I");
        assert!((&vtv - &Matrix::identity(n)).frob_norm() < 1e-10, "VᵀV far from I");

        // Nonincreasing nonnegative spectrum.
        for i in 0..t {
            assert!(s.sigma[i] >= 0.0);
            if i + 1 < t {
                assert!(s.sigma[i] >= s.sigma[i + 1]);
            }
        }

        // Reconstruction.
        let rebuilt = s.recompose();
        let denom = a.frob_norm().max(1e-300);
        assert!(
            (&rebuilt - a).frob_norm() / denom < 1e-9,
            "reconstruction error too large: {}",
            (&rebuilt - a).frob_norm() / denom
        );
    }

    #[test]
    fn identity_2x2() {
        let a = Matrix::<f64>::identity(2);
        let s = svd(&a).unwrap();
        assert!((s.sigma[0] - 1.0).abs() < 1e-12);
        assert!((s.sigma[1] - 1.0).abs() < 1e-12);
        check_factors(&a, &s);
    }

    #[test]
    fn diagonal_3x3_with_zero() {
        let a = Matrix::<f64>::diag(3, 3, &[3.0, 1.0, 0.0]).unwrap();
        let s = svd(&a).unwrap();
        assert!((s.sigma[0] - 3.0).abs() < 1e-12);
        assert!((s.sigma[1] - 1.0).abs() < 1e-12);
        assert!(s.sigma[2].abs() < 1e-12);
        check_factors(&a, &s);
    }

    #[test]
    fn reconstruction_random_5x3() {
        let a = random_matrix(5, 3, 42);
        let s = svd(&a).unwrap();
        check_factors(&a, &s);
    }

    #[test]
    fn wide_matrices_transpose_path() {
        let a = random_matrix(3, 7, 7);
        let s = svd(&a).unwrap();
        check_factors(&a, &s);
    }

    #[test]
    fn known_2x2_spectrum() {
        // AᵀA has eigenvalues 25 and 1.
        let a = Matrix::<f64>::new(2, 2, vec![3.0, 2.0, 2.0, 3.0]).unwrap();
        let s = svd(&a).unwrap();
        assert!((s.sigma[0] - 5.0).abs() < 1e-10);
        assert!((s.sigma[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rank_deficient() {
        // Rank-1 outer product.
        let u = [1.0f64, 2.0, 3.0];
        let v = [4.0, 5.0];
        let a = Matrix::from_fn(3, 2, |i, j| u[i] * v[j]);
        let s = svd(&a).unwrap();
        assert!(s.sigma[1].abs() < 1e-10);
        check_factors(&a, &s);
    }

    #[test]
    fn zero_matrix() {
        let a = Matrix::<f64>::zeros(4, 3);
        let s = svd(&a).unwrap();
        assert!(s.sigma.iter().all(|&x| x == 0.0));
        check_factors(&a, &s);
    }

    #[test]
    fn nilpotent_shift_block() {
        // Zero diagonal forces the row-annihilation path.
        let a = Matrix::<f64>::new(2, 2, vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        let s = svd(&a).unwrap();
        assert!((s.sigma[0] - 1.0).abs() < 1e-12);
        assert!(s.sigma[1].abs() < 1e-12);
        check_factors(&a, &s);
    }

    #[test]
    fn single_entry() {
        let a = Matrix::<f64>::new(1, 1, vec![-5.0]).unwrap();
        let s = svd(&a).unwrap();
        assert!((s.sigma[0] - 5.0).abs() < 1e-14);
        check_factors(&a, &s);
    }

    #[test]
    fn tall_thin_and_row_vector() {
        let a = random_matrix(6, 1, 3);
        check_factors(&a, &svd(&a).unwrap());
        let b = random_matrix(1, 6, 4);
        check_factors(&b, &svd(&b).unwrap());
    }

    #[test]
    fn random_sweep_many_shapes() {
        for (idx, &(m, n)) in [(2, 2), (3, 5), (8, 6), (6, 8), (10, 10), (12, 4)].iter().enumerate()
        {
            for rep in 0..20 {
                let a = random_matrix(m, n, 1000 + (idx * 100 + rep) as u64);
                let s = svd(&a).unwrap();
                check_factors(&a, &s);
            }
        }
    }

    #[test]
    fn values_only_matches_full() {
        let a = random_matrix(7, 5, 99);
        let s = svd(&a).unwrap();
        let vals = singular_values(&a).unwrap();
        for (x, y) in s.sigma.iter().zip(vals.iter()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn f32_instantiation() {
        let a = Matrix::<f32>::identity(3);
        let s = svd(&a).unwrap();
        assert!((s.sigma[0] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn repeated_singular_values_stay_orthogonal() {
        // Spectrum (2, 2, 1) exercises tie handling.
        let q = {
            // Hand-built orthogonal basis from a fixed rotation.
            let c = 0.6f64;
            let s = 0.8f64;
            Matrix::<f64>::new(3, 3, vec![c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0]).unwrap()
        };
        let d = Matrix::<f64>::diag(3, 3, &[2.0, 2.0, 1.0]).unwrap();
        let a = &(&q * &d) * &q.transpose();
        let s = svd(&a).unwrap();
        assert!((s.sigma[0] - 2.0).abs() < 1e-10);
        assert!((s.sigma[1] - 2.0).abs() < 1e-10);
        assert!((s.sigma[2] - 1.0).abs() < 1e-10);
        check_factors(&a, &s);
    }
}
