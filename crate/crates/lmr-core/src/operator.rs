//! Linear measurement operators `A: R^{m×n} → R^l`.
//!
//! Operators are stored densely as an `l × (m·n)` matrix whose row `i` is
//! the row-major vectorization of the i-th sensing matrix. Desk-scale
//! problems make this affordable, and it gives exact adjoints plus a full
//! SVD oracle for the operator norm.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::Matrix;
use crate::seedstream;
use crate::DenseMatrix;

/// Operator family. Identity flavors carry a closed-form isometry constant.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorKind {
    /// `A(X) = vec(X)`; `δ_r = 0` for every `r`.
    Identity,
    /// `A(X) = √(1+a)·vec(X)` with `a ∈ [0,1)`; `δ_r = a` exactly.
    ScaledIdentity { factor: f64 },
    /// Entries i.i.d. `N(0, 1/l)`, so `E‖A(X)‖² = ‖X‖_F²`.
    Gaussian,
    /// Entry sampler over a duplicate-free index set Ω (row, col pairs).
    EntrySampling { omega: Vec<(usize, usize)> },
}

impl OperatorKind {
    pub fn name(&self) -> &'static str {
        match self {
            OperatorKind::Identity => "identity",
            OperatorKind::ScaledIdentity { .. } => "scaled-identity",
            OperatorKind::Gaussian => "gaussian",
            OperatorKind::EntrySampling { .. } => "entry-sampling",
        }
    }

    fn tag(&self) -> u64 {
        match self {
            OperatorKind::Identity => 1,
            OperatorKind::ScaledIdentity { .. } => 2,
            OperatorKind::Gaussian => 3,
            OperatorKind::EntrySampling { .. } => 4,
        }
    }
}

/// A concrete measurement operator with provenance metadata.
#[derive(Debug, Clone)]
pub struct LinearOperator {
    m: usize,
    n: usize,
    l: usize,
    kind: OperatorKind,
    seed: u64,
    dense: DenseMatrix,
}

impl LinearOperator {
    pub fn identity(m: usize, n: usize) -> Result<Self, Error> {
        check_dims(m, n, m * n)?;
        let dense = DenseMatrix::identity(m * n);
        Ok(Self { m, n, l: m * n, kind: OperatorKind::Identity, seed: 0, dense })
    }

    pub fn scaled_identity(m: usize, n: usize, factor: f64) -> Result<Self, Error> {
        check_dims(m, n, m * n)?;
        if !(0.0..1.0).contains(&factor) {
            return Err(Error::invalid(format!(
                "scaled-identity factor must lie in [0,1), got {factor}"
            )));
        }
        let dense = DenseMatrix::identity(m * n).scaled((1.0 + factor).sqrt());
        Ok(Self { m, n, l: m * n, kind: OperatorKind::ScaledIdentity { factor }, seed: 0, dense })
    }

    pub fn gaussian(m: usize, n: usize, l: usize, seed: u64) -> Result<Self, Error> {
        check_dims(m, n, l)?;
        let kind = OperatorKind::Gaussian;
        let mut rng = seedstream::stream("operator", &[kind.tag(), seed]);
        let std = (1.0 / l as f64).sqrt();
        let dense = DenseMatrix::from_fn(l, m * n, |_, _| {
            std * <rand_distr::StandardNormal as rand_distr::Distribution<f64>>::sample(
                &rand_distr::StandardNormal,
                &mut rng,
            )
        });
        Ok(Self { m, n, l, kind, seed, dense })
    }

    /// Entry sampler. With `omega: None`, draws `l` distinct positions from
    /// the seeded stream; an explicit Ω must have length `l`, in-range
    /// positions and no duplicates.
    pub fn entry_sampling(
        m: usize,
        n: usize,
        l: usize,
        omega: Option<Vec<(usize, usize)>>,
        seed: u64,
    ) -> Result<Self, Error> {
        check_dims(m, n, l)?;
        if l > m * n {
            return Err(Error::invalid(format!(
                "cannot sample {l} distinct entries from a {m}x{n} matrix"
            )));
        }
        let omega = match omega {
            Some(om) => {
                if om.len() != l {
                    return Err(Error::invalid(format!(
                        "index set has {} entries, expected l = {l}",
                        om.len()
                    )));
                }
                let mut seen = std::collections::HashSet::new();
                for &(i, j) in &om {
                    if i >= m || j >= n {
                        return Err(Error::invalid(format!("index ({i},{j}) out of {m}x{n} range")));
                    }
                    if !seen.insert((i, j)) {
                        return Err(Error::invalid(format!("duplicate index ({i},{j}) in omega")));
                    }
                }
                om
            }
            None => {
                // Fisher–Yates prefix over flattened positions.
                use rand::Rng;
                let mut rng = seedstream::stream("operator", &[4, seed]);
                let mut all: Vec<usize> = (0..m * n).collect();
                for i in 0..l {
                    let j = rng.gen_range(i..all.len());
                    all.swap(i, j);
                }
                all[..l].iter().map(|&p| (p / n, p % n)).collect()
            }
        };
        let mut dense = DenseMatrix::zeros(l, m * n);
        for (row, &(i, j)) in omega.iter().enumerate() {
            dense[(row, i * n + j)] = 1.0;
        }
        Ok(Self { m, n, l, kind: OperatorKind::EntrySampling { omega }, seed, dense })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn l(&self) -> usize {
        self.l
    }

    #[inline]
    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    #[inline]
    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[inline]
    pub fn dense(&self) -> &DenseMatrix {
        &self.dense
    }

    /// Closed-form isometry constant, when the construction fixes one.
    ///
    /// The value holds for every rank index `r`.
    pub fn exact_delta(&self) -> Option<f64> {
        match self.kind {
            OperatorKind::Identity => Some(0.0),
            OperatorKind::ScaledIdentity { factor } => Some(factor),
            _ => None,
        }
    }

    /// `A(x)`: the dense representation applied to `vec(x)`.
    pub fn apply(&self, x: &DenseMatrix) -> Vec<f64> {
        assert_eq!(
            (x.rows(), x.cols()),
            (self.m, self.n),
            "operator expects a {}x{} input",
            self.m,
            self.n
        );
        let v = x.as_slice();
        let mut out = vec![0.0; self.l];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (k, &vk) in v.iter().enumerate() {
                acc += self.dense[(i, k)] * vk;
            }
            *o = acc;
        }
        out
    }

    /// `A*(y)`: the transpose representation applied to `y`, reshaped.
    pub fn adjoint(&self, y: &[f64]) -> DenseMatrix {
        assert_eq!(y.len(), self.l, "adjoint expects a length-{} vector", self.l);
        let mut v = vec![0.0; self.m * self.n];
        for (i, &yi) in y.iter().enumerate() {
            if yi == 0.0 {
                continue;
            }
            for (k, vk) in v.iter_mut().enumerate() {
                *vk += self.dense[(i, k)] * yi;
            }
        }
        Matrix::from_raw(self.m, self.n, v)
    }

    /// Residual `A(x) − b`.
    pub fn residual_vec(&self, x: &DenseMatrix, b: &[f64]) -> Vec<f64> {
        let ax = self.apply(x);
        ax.iter().zip(b.iter()).map(|(a, bb)| a - bb).collect()
    }

    /// Operator norm `‖A‖ = σ₁(dense)` by power iteration on `A*A`,
    /// to relative accuracy `tol`. The zero operator returns 0.
    pub fn operator_norm(&self, tol: f64) -> f64 {
        assert!(tol > 0.0, "tolerance must be positive");
        let dim = self.m * self.n;
        // Deterministic start with a mild pseudorandom tilt so a structured
        // top singular vector cannot be orthogonal to it.
        let mut state = 0x243f_6a88_85a3_08d3u64;
        let mut v: Vec<f64> = (0..dim)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                1.0 + 0.25 * ((state >> 11) as f64 / (1u64 << 53) as f64 - 0.5)
            })
            .collect();
        let norm0 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in v.iter_mut() {
            *x /= norm0;
        }

        let mut lambda_prev = 0.0f64;
        for _ in 0..20_000 {
            let xm = Matrix::from_raw(self.m, self.n, v.clone());
            let w = self.apply(&xm);
            let lambda: f64 = w.iter().map(|x| x * x).sum();
            if lambda == 0.0 {
                return 0.0;
            }
            let back = self.adjoint(&w);
            let bn = back.frob_norm();
            if bn == 0.0 {
                return lambda.sqrt();
            }
            v = back.scaled(1.0 / bn).vectorize();
            if (lambda - lambda_prev).abs() <= tol * lambda {
                return lambda.sqrt();
            }
            lambda_prev = lambda;
        }
        lambda_prev.sqrt()
    }
}

fn check_dims(m: usize, n: usize, l: usize) -> Result<(), Error> {
    if m == 0 || n == 0 || l == 0 {
        return Err(Error::invalid("operator dimensions must be positive"));
    }
    Ok(())
}

/// JSON-serializable operator description: header plus a Matrix Market
/// file reference for the dense representation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperatorHeader {
    pub kind: String,
    pub m: usize,
    pub n: usize,
    pub l: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<(usize, usize)>>,
    pub matrix_file: String,
}

impl OperatorHeader {
    pub fn describe(op: &LinearOperator, matrix_file: impl Into<String>) -> Self {
        let (factor, omega) = match op.kind() {
            OperatorKind::ScaledIdentity { factor } => (Some(*factor), None),
            OperatorKind::EntrySampling { omega } => (None, Some(omega.clone())),
            _ => (None, None),
        };
        OperatorHeader {
            kind: op.kind().name().to_string(),
            m: op.m(),
            n: op.n(),
            l: op.l(),
            seed: op.seed(),
            factor,
            omega,
            matrix_file: matrix_file.into(),
        }
    }

    /// Rebuilds the operator the header describes.
    pub fn build(&self) -> Result<LinearOperator, Error> {
        match self.kind.as_str() {
            "identity" => {
                if self.l != self.m * self.n {
                    return Err(Error::invalid("identity operator requires l = m*n"));
                }
                LinearOperator::identity(self.m, self.n)
            }
            "scaled-identity" => {
                if self.l != self.m * self.n {
                    return Err(Error::invalid("scaled-identity operator requires l = m*n"));
                }
                let factor = self
                    .factor
                    .ok_or_else(|| Error::invalid("scaled-identity requires a factor"))?;
                LinearOperator::scaled_identity(self.m, self.n, factor)
            }
            "gaussian" => LinearOperator::gaussian(self.m, self.n, self.l, self.seed),
            "entry-sampling" => LinearOperator::entry_sampling(
                self.m,
                self.n,
                self.l,
                self.omega.clone(),
                self.seed,
            ),
            other => Err(Error::invalid(format!("unknown operator kind {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        Matrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0))
    }

    #[test]
    fn identity_is_vectorization_isometry() {
        let op = LinearOperator::identity(3, 3).unwrap();
        assert_eq!(op.exact_delta(), Some(0.0));
        for seed in 0..100 {
            let x = random_matrix(3, 3, seed);
            let y = op.apply(&x);
            assert_eq!(y, x.vectorize());
            let norm_y: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!((norm_y - x.frob_norm()).abs() <= 1e-12 * x.frob_norm().max(1.0));
        }
    }

    #[test]
    fn scaled_identity_scaling_law() {
        let op = LinearOperator::scaled_identity(3, 2, 0.2).unwrap();
        assert_eq!(op.exact_delta(), Some(0.2));
        for seed in 0..50 {
            let x = random_matrix(3, 2, seed);
            let y = op.apply(&x);
            let e: f64 = y.iter().map(|v| v * v).sum();
            let want = 1.2 * x.frob_norm().powi(2);
            assert!((e - want).abs() <= 1e-12 * want.max(1.0));
        }
        assert!(LinearOperator::scaled_identity(2, 2, 1.0).is_err());
        assert!(LinearOperator::scaled_identity(2, 2, -0.1).is_err());
    }

    #[test]
    fn gaussian_deterministic_per_seed() {
        let a = LinearOperator::gaussian(8, 8, 96, 7).unwrap();
        let b = LinearOperator::gaussian(8, 8, 96, 7).unwrap();
        assert_eq!(a.dense(), b.dense(), "same seed must rebuild bit-for-bit");
        let c = LinearOperator::gaussian(8, 8, 96, 8).unwrap();
        assert_ne!(a.dense(), c.dense());
    }

    #[test]
    fn adjoint_identity_holds() {
        let op = LinearOperator::gaussian(4, 5, 30, 3).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..50 {
            let x = Matrix::from_fn(4, 5, |_, _| rng.gen_range(-1.0..1.0));
            let y: Vec<f64> = (0..30).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let lhs: f64 = op.apply(&x).iter().zip(y.iter()).map(|(a, b)| a * b).sum();
            let rhs = x.frob_dot(&op.adjoint(&y));
            assert!((lhs - rhs).abs() < 1e-10, "adjoint identity violated: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn linearity() {
        let op = LinearOperator::gaussian(3, 4, 10, 5).unwrap();
        let x = random_matrix(3, 4, 0);
        let y = random_matrix(3, 4, 1);
        let z = &x.scaled(0.3) + &y.scaled(-1.7);
        let az = op.apply(&z);
        let combo: Vec<f64> = op
            .apply(&x)
            .iter()
            .zip(op.apply(&y).iter())
            .map(|(a, b)| 0.3 * a - 1.7 * b)
            .collect();
        for (u, v) in az.iter().zip(combo.iter()) {
            assert!((u - v).abs() < 1e-10);
        }
        let zero = DenseMatrix::zeros(3, 4);
        assert!(op.apply(&zero).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn operator_norm_closed_forms() {
        let id = LinearOperator::identity(3, 3).unwrap();
        assert!((id.operator_norm(1e-12) - 1.0).abs() < 1e-9);
        let sc = LinearOperator::scaled_identity(3, 3, 0.2).unwrap();
        assert!((sc.operator_norm(1e-12) - 1.2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn operator_norm_matches_full_svd() {
        let op = LinearOperator::gaussian(4, 4, 24, 9).unwrap();
        let sigma = crate::svd::singular_values(op.dense()).unwrap();
        let pn = op.operator_norm(1e-12);
        assert!(
            (pn - sigma[0]).abs() < 1e-6 * sigma[0].max(1.0),
            "power iteration {pn} vs svd {}",
            sigma[0]
        );
    }

    #[test]
    fn entry_sampling_validation() {
        assert!(LinearOperator::entry_sampling(2, 2, 2, Some(vec![(0, 0), (0, 0)]), 0).is_err());
        assert!(LinearOperator::entry_sampling(2, 2, 2, Some(vec![(0, 0), (2, 0)]), 0).is_err());
        assert!(LinearOperator::entry_sampling(2, 2, 3, Some(vec![(0, 0), (1, 1)]), 0).is_err());
        assert!(LinearOperator::entry_sampling(2, 2, 5, None, 0).is_err());

        let op = LinearOperator::entry_sampling(3, 3, 4, None, 42).unwrap();
        let x = random_matrix(3, 3, 2);
        let y = op.apply(&x);
        if let OperatorKind::EntrySampling { omega } = op.kind() {
            for (row, &(i, j)) in omega.iter().enumerate() {
                assert_eq!(y[row], x[(i, j)]);
            }
        } else {
            panic!("wrong kind");
        }
        // Deterministic omega for a fixed seed.
        let op2 = LinearOperator::entry_sampling(3, 3, 4, None, 42).unwrap();
        assert_eq!(op.dense(), op2.dense());
    }

    #[test]
    fn header_roundtrip_rebuilds() {
        let op = LinearOperator::gaussian(3, 4, 10, 77).unwrap();
        let header = OperatorHeader::describe(&op, "op.mtx");
        let rebuilt = header.build().unwrap();
        assert_eq!(op.dense(), rebuilt.dense());
        assert_eq!(header.kind, "gaussian");
    }

    #[test]
    fn identity_requires_full_l() {
        let header = OperatorHeader {
            kind: "identity".into(),
            m: 3,
            n: 3,
            l: 8,
            seed: 0,
            factor: None,
            omega: None,
            matrix_file: String::new(),
        };
        assert!(header.build().is_err());
    }
}
