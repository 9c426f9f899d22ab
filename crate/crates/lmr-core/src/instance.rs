//! Recovery problem instances `b = A(X°) + s`.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::Matrix;
use crate::operator::LinearOperator;
use crate::seedstream;
use crate::DenseMatrix;

/// Noise model for instance assembly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseKind {
    /// No perturbation; forces `epsilon = 0`, `s = 0`.
    None,
    /// Gaussian draw rescaled so `‖s‖₂ = epsilon` exactly.
    GaussianRescaled,
}

/// One recovery task: operator, observation, optional ground truth.
#[derive(Debug, Clone)]
pub struct ProblemInstance {
    pub operator: LinearOperator,
    pub b: Vec<f64>,
    pub x_true: Option<DenseMatrix>,
    pub epsilon: f64,
    pub s: Option<Vec<f64>>,
}

impl ProblemInstance {
    /// Assembles `b = A(x_true) + s` with the requested noise model.
    pub fn make(
        operator: LinearOperator,
        x_true: DenseMatrix,
        noise: NoiseKind,
        epsilon: f64,
        seed: u64,
    ) -> Result<Self, Error> {
        if epsilon < 0.0 {
            return Err(Error::invalid("noise level epsilon must be nonnegative"));
        }
        if (x_true.rows(), x_true.cols()) != (operator.m(), operator.n()) {
            return Err(Error::shape(format!(
                "ground truth is {}x{}, operator expects {}x{}",
                x_true.rows(),
                x_true.cols(),
                operator.m(),
                operator.n()
            )));
        }
        let (epsilon, s) = match noise {
            NoiseKind::None => (0.0, vec![0.0; operator.l()]),
            NoiseKind::GaussianRescaled => {
                let mut rng = seedstream::stream("noise", &[seed]);
                let mut s: Vec<f64> = (0..operator.l())
                    .map(|_| {
                        <rand_distr::StandardNormal as rand_distr::Distribution<f64>>::sample(
                            &rand_distr::StandardNormal,
                            &mut rng,
                        )
                    })
                    .collect();
                let norm: f64 = s.iter().map(|v| v * v).sum::<f64>().sqrt();
                if epsilon == 0.0 || norm == 0.0 {
                    s.iter_mut().for_each(|v| *v = 0.0);
                    (0.0, s)
                } else {
                    let scale = epsilon / norm;
                    s.iter_mut().for_each(|v| *v *= scale);
                    (epsilon, s)
                }
            }
        };
        let b: Vec<f64> = operator
            .apply(&x_true)
            .iter()
            .zip(s.iter())
            .map(|(a, n)| a + n)
            .collect();
        Ok(ProblemInstance { operator, b, x_true: Some(x_true), epsilon, s: Some(s) })
    }

    /// Wraps pre-existing data (e.g. deserialized) without re-deriving noise.
    pub fn from_parts(
        operator: LinearOperator,
        b: Vec<f64>,
        x_true: Option<DenseMatrix>,
        epsilon: f64,
        s: Option<Vec<f64>>,
    ) -> Result<Self, Error> {
        if b.len() != operator.l() {
            return Err(Error::shape(format!(
                "observation has length {}, operator produces {}",
                b.len(),
                operator.l()
            )));
        }
        if epsilon < 0.0 {
            return Err(Error::invalid("noise level epsilon must be nonnegative"));
        }
        let inst = ProblemInstance { operator, b, x_true, epsilon, s };
        inst.validate()?;
        Ok(inst)
    }

    /// Checks the assembly invariants when ground truth and noise are known:
    /// `b` must equal `A(X°) + s` as computed, and `‖s‖₂ ≤ ε + 1e-12`.
    pub fn validate(&self) -> Result<(), Error> {
        if let (Some(x), Some(s)) = (&self.x_true, &self.s) {
            if s.len() != self.operator.l() {
                return Err(Error::shape("noise vector length mismatch"));
            }
            let snorm: f64 = s.iter().map(|v| v * v).sum::<f64>().sqrt();
            if snorm > self.epsilon + 1e-12 {
                return Err(Error::invalid(format!(
                    "noise norm {snorm} exceeds epsilon {}",
                    self.epsilon
                )));
            }
            let expect: Vec<f64> = self
                .operator
                .apply(x)
                .iter()
                .zip(s.iter())
                .map(|(a, n)| a + n)
                .collect();
            if expect != self.b {
                return Err(Error::invalid("b does not equal A(x_true) + s as computed"));
            }
        }
        Ok(())
    }

    /// `‖A(x) − b‖₂`.
    pub fn residual_norm(&self, x: &DenseMatrix) -> f64 {
        self.operator
            .residual_vec(x, &self.b)
            .iter()
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }

    pub fn b_norm(&self) -> f64 {
        self.b.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Random rank-`r` ground truth with unit Frobenius norm: a product of two
/// Gaussian factors, normalized.
pub fn random_rank_r(m: usize, n: usize, r: usize, seed: u64) -> Result<DenseMatrix, Error> {
    if r < 1 || r > m.min(n) {
        return Err(Error::invalid(format!("rank {r} out of range for {m}x{n}")));
    }
    let mut rng = seedstream::stream("ground-truth", &[m as u64, n as u64, r as u64, seed]);
    let mut draw = || {
        <rand_distr::StandardNormal as rand_distr::Distribution<f64>>::sample(
            &rand_distr::StandardNormal,
            &mut rng,
        )
    };
    let left = Matrix::from_fn(m, r, |_, _| draw());
    let right = Matrix::from_fn(r, n, |_, _| draw());
    let prod = &left * &right;
    let norm = prod.frob_norm();
    if norm == 0.0 {
        return Err(Error::NumericalFailure("degenerate zero draw for ground truth".into()));
    }
    Ok(prod.scaled(1.0 / norm))
}

/// JSON-serializable instance: inline observation plus file references.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceHeader {
    pub operator_file: String,
    pub b: Vec<f64>,
    pub epsilon: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_true_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<f64>>,
}
