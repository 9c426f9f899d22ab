//! Closed-form constants of the recovery theory.
//!
//! Everything here is scalar arithmetic: the min–max index of the block
//! decomposition, the constrained-recovery constants `β`, `α`, `ᾱ` and
//! their `k = 2r` specialization `α̂`, and the regularized-recovery chain
//! `θ_k, β₁, γ₁, β̂₁, γ̂₁, ξ₁, κ₁, C₁, C₂`.

use crate::error::Error;
use crate::scalar::Scalar;

/// `max{r + ⌈3k/2⌉, 2k}`: the smallest worst-case rank index reachable by
/// the block split, in closed form.
pub fn mn_min_max(r: usize, k: usize) -> usize {
    assert!(r >= 1 && k >= 1);
    let ceil_3k_2 = (3 * k).div_ceil(2);
    (r + ceil_3k_2).max(2 * k)
}

/// Exhaustive counterpart of [`mn_min_max`]: minimizes
/// `max{m₁+n₁+k, m₂+n₂+2k}` over nonnegative splits with
/// `m₁+m₂ = n₁+n₂ = r`.
pub fn mn_min_max_bruteforce(r: usize, k: usize) -> Result<usize, Error> {
    if r < 1 || k < 1 {
        return Err(Error::invalid("r and k must be at least 1"));
    }
    if r > 64 {
        return Err(Error::invalid("enumeration budget: r must be at most 64"));
    }
    let mut best = usize::MAX;
    for m1 in 0..=r {
        let m2 = r - m1;
        for n1 in 0..=r {
            let n2 = r - n1;
            let value = (m1 + n1 + k).max(m2 + n2 + 2 * k);
            best = best.min(value);
        }
    }
    Ok(best)
}

/// The block split `(m₁, m₂, n₁, n₂)` achieving [`mn_min_max`].
pub fn mn_min_max_split(r: usize, k: usize) -> (usize, usize, usize, usize) {
    assert!(r >= 1 && k >= 1);
    if k >= 2 * r {
        // The 2k branch: empty second blocks.
        return (r, 0, r, 0);
    }
    let m1 = if k % 2 == 1 {
        // ⌈r/2 + k/4 + 1/4⌉ = ⌈(2r + k + 1)/4⌉
        (2 * r + k + 1).div_ceil(4)
    } else {
        // ⌈r/2 + k/4⌉ = ⌈(2r + k)/4⌉
        (2 * r + k).div_ceil(4)
    };
    let half = k.div_ceil(2); // (k+1)/2 for odd k, k/2 for even k
    let m2 = r - m1;
    let n1 = r + half - m1;
    let n2 = m1 - half;
    debug_assert_eq!(m1 + m2, r);
    debug_assert_eq!(n1 + n2, r);
    debug_assert_eq!((m1 + n1 + k).max(m2 + n2 + 2 * k), mn_min_max(r, k));
    (m1, m2, n1, n2)
}

/// Constants of the constrained recovery bounds.
///
/// `alpha` and `alpha_bar` are only defined when the hypothesis `β < 1`
/// holds; otherwise they are reported as absent rather than divided by a
/// nonpositive `1 − β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstrainedConstants<F> {
    pub beta: F,
    pub alpha: Option<F>,
    pub alpha_bar: Option<F>,
    pub hypothesis_ok: bool,
}

/// Evaluates `β`, `α`, `ᾱ` for target rank `r`, block size `k ≥ 2`, and the
/// two isometry constants the bound consumes: `delta_2r_plus_k` at index
/// `2r + k` and `delta_big` at index `max{r+⌈3k/2⌉, 2k}`.
pub fn constrained_constants<F: Scalar>(
    r: usize,
    k: usize,
    delta_2r_plus_k: F,
    delta_big: F,
) -> Result<ConstrainedConstants<F>, Error> {
    if r < 1 {
        return Err(Error::invalid("target rank r must be at least 1"));
    }
    if k < 2 {
        return Err(Error::invalid("block size k must be at least 2 (√k − 1 > 0)"));
    }
    for (name, d) in [("delta_2r_plus_k", delta_2r_plus_k), ("delta_big", delta_big)] {
        if d < F::zero() || d >= F::one() {
            return Err(Error::invalid(format!("{name} must lie in [0,1)")));
        }
    }

    let sqrt2 = F::c(2.0).sqrt();
    let sqrt_k = F::cu(k).sqrt();
    let sqrt_2r = F::cu(2 * r).sqrt();
    let one = F::one();

    let beta = sqrt2 * delta_big * (sqrt_2r + one) / ((one - delta_2r_plus_k) * (sqrt_k - one));
    let hypothesis_ok = beta < one;
    let (alpha, alpha_bar) = if hypothesis_ok {
        let alpha = (F::c(2.0) * (sqrt_2r + one) + F::c(2.0) * beta * (sqrt_k - one))
            / ((sqrt_k - one) * (one - beta) * (sqrt_2r + one));
        let alpha_bar = F::c(2.0) * (sqrt_k + sqrt_2r) * (one + delta_2r_plus_k).sqrt()
            / ((sqrt_k - one) * (one - beta) * (one - delta_2r_plus_k));
        (Some(alpha), Some(alpha_bar))
    } else {
        (None, None)
    };

    Ok(ConstrainedConstants { beta, alpha, alpha_bar, hypothesis_ok })
}

/// Isometry threshold of the `k = 2r` specialization:
/// `(√(2r) − 1) / (√(2r) − 1 + √2(√(2r) + 1))`.
pub fn delta4r_threshold<F: Scalar>(r: usize) -> F {
    assert!(r >= 1);
    let sqrt_2r = F::cu(2 * r).sqrt();
    let sqrt2 = F::c(2.0).sqrt();
    (sqrt_2r - F::one()) / (sqrt_2r - F::one() + sqrt2 * (sqrt_2r + F::one()))
}

/// `α̂` of the `k = 2r` specialization, defined below the
/// [`delta4r_threshold`].
pub fn alpha_hat<F: Scalar>(r: usize, delta_4r: F) -> Option<F> {
    assert!(r >= 1);
    if delta_4r < F::zero() || delta_4r >= delta4r_threshold(r) {
        return None;
    }
    let sqrt_2r = F::cu(2 * r).sqrt();
    let sqrt2 = F::c(2.0).sqrt();
    let numer = F::c(2.0) + (F::c(2.0) * sqrt2 - F::c(2.0)) * delta_4r;
    let denom =
        (sqrt_2r - F::one()) - ((sqrt_2r - F::one()) + sqrt2 * (sqrt_2r + F::one())) * delta_4r;
    Some(numer / denom)
}

/// Constants of the regularized recovery bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizedConstants<F> {
    pub t: usize,
    pub k: usize,
    pub delta_tk: F,
    /// `η = ε/λ`.
    pub eta: F,
    pub theta_k: F,
    /// Admissible-isometry threshold `√((t−1)/(t+θ_k²−1))`.
    pub threshold: F,
    pub beta1: F,
    pub gamma1: F,
    pub beta1_hat: F,
    pub gamma1_hat: F,
    pub xi1: F,
    pub kappa1: F,
    pub c1: Option<F>,
    pub c2: Option<F>,
    pub hypothesis_ok: bool,
}

/// `θ_k = (√k + √2 − 1)/(√k − √2 − 1)`; requires `k ≥ 6` so the
/// denominator is positive.
pub fn theta_k<F: Scalar>(k: usize) -> Result<F, Error> {
    if k < 6 {
        return Err(Error::invalid("k must be at least 6 (√k > √2 + 1)"));
    }
    let sqrt_k = F::cu(k).sqrt();
    let sqrt2 = F::c(2.0).sqrt();
    Ok((sqrt_k + sqrt2 - F::one()) / (sqrt_k - sqrt2 - F::one()))
}

/// Evaluates the full regularized-bound constant chain.
pub fn regularized_constants<F: Scalar>(
    t: usize,
    k: usize,
    delta_tk: F,
    eta: F,
) -> Result<RegularizedConstants<F>, Error> {
    if t <= 1 {
        return Err(Error::invalid("t must be an integer greater than 1"));
    }
    if delta_tk < F::zero() || delta_tk >= F::one() {
        return Err(Error::invalid("delta_tk must lie in [0,1)"));
    }
    if eta < F::zero() {
        return Err(Error::invalid("eta = epsilon/lambda must be nonnegative"));
    }
    let theta = theta_k::<F>(k)?;

    let one = F::one();
    let sqrt2 = F::c(2.0).sqrt();
    let sqrt_k = F::cu(k).sqrt();
    let t_f = F::cu(t);

    let threshold = ((t_f - one) / (t_f + theta * theta - one)).sqrt();
    let beta1 = delta_tk / ((t_f - one) * (one - delta_tk * delta_tk)).sqrt();
    let gamma1 = F::c(2.0) / ((one - delta_tk) * (one + delta_tk).sqrt());
    let beta1_hat = (sqrt2 - one) * beta1 + one;
    let gamma1_hat = sqrt_k * gamma1 + eta;
    let xi1 = (F::c(2.0) * F::cu(k)).sqrt() * gamma1 + beta1_hat * eta;
    let kappa1 = one - (beta1_hat * gamma1_hat + xi1) / (sqrt_k * (one - beta1) * gamma1_hat);

    let hypothesis_ok = delta_tk < threshold && kappa1 > F::zero() && beta1 < one;
    let (c1, c2) = if hypothesis_ok {
        let c1 = F::c(2.0) * (beta1_hat * gamma1_hat + xi1)
            / (sqrt_k * (one - beta1) * gamma1_hat * kappa1);
        let c2 = F::c(2.0) * xi1 * gamma1_hat / (sqrt_k * (one - beta1) * kappa1);
        (Some(c1), Some(c2))
    } else {
        (None, None)
    };

    Ok(RegularizedConstants {
        t,
        k,
        delta_tk,
        eta,
        theta_k: theta,
        threshold,
        beta1,
        gamma1,
        beta1_hat,
        gamma1_hat,
        xi1,
        kappa1,
        c1,
        c2,
        hypothesis_ok,
    })
}
