//! Low-rank matrix recovery toolkit built around the nuclear-minus-Frobenius
//! surrogate `‖X‖_* − ‖X‖_F`.
//!
//! The crate provides four layers:
//!
//! * dense linear algebra primitives ([`matrix`], [`svd`], [`spectral`]):
//!   full singular value decompositions, spectral norms, best rank-r
//!   truncation, singular value thresholding and the Frobenius subgradient;
//! * measurement modeling ([`operator`], [`instance`]): seeded construction
//!   of linear measurement maps `A: R^{m×n} → R^l` and of recovery problem
//!   instances `b = A(X°) + s`;
//! * solvers ([`solve`]): DC programming for the regularized objective
//!   `J(X) = ‖X‖_* − ‖X‖_F + ‖A(X) − b‖² / (2λ)`, a nuclear-norm baseline,
//!   a penalty path with `λ → 0`, and a discrepancy-principle wrapper;
//! * analysis ([`rip`], [`bounds`], [`certify`], [`bench`]): restricted
//!   isometry constant estimation, closed-form recovery constants, recovery
//!   certificates replaying the exact inequalities the theory relies on,
//!   and a reproducible experiment harness.
//!
//! Core numerics are generic over the scalar type (any [`scalar::Scalar`],
//! in practice `f32` or `f64`); the aliases at the crate root fix the `f64`
//! instantiation used by the solvers, file formats and the CLI.

pub mod bench;
pub mod bounds;
pub mod certify;
pub mod error;
pub mod instance;
pub mod matrix;
pub mod mmio;
pub mod operator;
pub mod polytope;
pub mod powersum;
pub mod rip;
pub mod scalar;
pub mod seedstream;
pub mod solve;
pub mod spectral;
pub mod svd;

pub use error::Error;

/// Scalar type used by the measurement, solver and reporting layers.
pub type Real = f64;

/// Dense row-major matrix of 64-bit floats, the universal value type.
pub type DenseMatrix = matrix::Matrix<Real>;

/// Full singular value decomposition of a [`DenseMatrix`].
pub type SvdFactors = svd::Svd<Real>;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
