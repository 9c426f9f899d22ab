//! Spectral functionals: the nuclear-minus-Frobenius surrogate, best
//! rank-r truncation, singular value thresholding and the Frobenius
//! subgradient.

use crate::error::Error;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::svd::{self, Svd};

/// Relative cutoff defining the numerical rank: `σᵢ > RANK_REL_TOL · σ₁`.
pub const RANK_REL_TOL: f64 = 1e-9;

/// Value of `‖X‖_*`, `‖X‖_F` and their difference, all computed from one
/// spectrum so that `difference ≥ 0` holds to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LstarF<F> {
    pub nuclear: F,
    pub frobenius: F,
    pub difference: F,
}

/// Nuclear norm, Frobenius norm and the surrogate `‖X‖_* − ‖X‖_F`.
pub fn lstar_f<F: Scalar>(m: &Matrix<F>) -> Result<LstarF<F>, Error> {
    let sigma = svd::singular_values(m)?;
    Ok(lstar_f_of_sigma(&sigma))
}

/// Same as [`lstar_f`] but from an already-computed spectrum.
pub fn lstar_f_of_sigma<F: Scalar>(sigma: &[F]) -> LstarF<F> {
    let nuclear: F = sigma.iter().copied().sum();
    let frobenius = sigma.iter().map(|&s| s * s).sum::<F>().sqrt();
    LstarF { nuclear, frobenius, difference: nuclear - frobenius }
}

/// Number of singular values above the relative cutoff.
pub fn numerical_rank<F: Scalar>(sigma: &[F]) -> usize {
    if sigma.is_empty() {
        return 0;
    }
    let cutoff = F::c(RANK_REL_TOL) * sigma[0];
    sigma.iter().filter(|&&s| s > cutoff).count()
}

/// Best rank-`r` approximation (truncated SVD).
pub fn best_rank_r<F: Scalar>(m: &Matrix<F>, r: usize) -> Result<Matrix<F>, Error> {
    let t = m.min_dim();
    if r < 1 || r > t {
        return Err(Error::invalid(format!(
            "rank {r} out of range 1..={t} for a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let s = svd::svd(m)?;
    let mut sigma = s.sigma.clone();
    for v in sigma.iter_mut().skip(r) {
        *v = F::zero();
    }
    Ok(s.recompose_with(&sigma))
}

/// Proximal operator of `tau·‖·‖_*`: soft-thresholds the spectrum.
///
/// The result is the unique minimizer of `tau·‖Y‖_* + ½‖Y − m‖_F²`.
pub fn svt_prox<F: Scalar>(m: &Matrix<F>, tau: F) -> Result<Matrix<F>, Error> {
    if tau < F::zero() {
        return Err(Error::invalid("svt threshold must be nonnegative"));
    }
    if tau == F::zero() {
        return Ok(m.clone());
    }
    let s = svd::svd(m)?;
    let sigma: Vec<F> = s.sigma.iter().map(|&v| (v - tau).max(F::zero())).collect();
    Ok(s.recompose_with(&sigma))
}

/// Spectrum-thresholding variant returning the factors as well.
pub fn svt_prox_svd<F: Scalar>(m: &Matrix<F>, tau: F) -> Result<(Matrix<F>, Svd<F>), Error> {
    let s = svd::svd(m)?;
    let sigma: Vec<F> = s.sigma.iter().map(|&v| (v - tau).max(F::zero())).collect();
    Ok((s.recompose_with(&sigma), s))
}

/// Subgradient of `‖·‖_F`: `m/‖m‖_F`, or the zero matrix at the origin.
pub fn frob_subgrad<F: Scalar>(m: &Matrix<F>) -> Matrix<F> {
    let norm = m.frob_norm();
    if norm > F::zero() {
        m.scaled(F::one() / norm)
    } else {
        Matrix::zeros(m.rows(), m.cols())
    }
}
