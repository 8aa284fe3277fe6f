//! Central numeric tolerances.
//!
//! Every magic constant that decides convergence, rejection, or certification
//! lives here, so the accuracy story of the crate can be audited in one place.

/// Relative off-diagonal target for the Jacobi eigensolver.
///
/// A sweep pass stops once the off-diagonal Frobenius mass drops below this
/// multiple of the input's Frobenius norm. Eigenvalues of a Hermitian matrix
/// perturbed by `E` move by at most `‖E‖`, so this also bounds the eigenvalue
/// error of the returned spectrum.
pub const JACOBI_RELATIVE_TARGET: f64 = 1e-13;

/// Sweep budget for the Jacobi eigensolver. Cyclic Jacobi converges
/// quadratically once rotations are small; dense Hermitian matrices of the
/// sizes this crate meets (up to a few hundred) settle in well under ten
/// sweeps, so exhausting this budget signals broken input.
pub const JACOBI_SWEEP_BUDGET: usize = 100;

/// Relative Frobenius bound under which a matrix is accepted as Hermitian.
pub const HERMITICITY_BOUND: f64 = 1e-12;

/// Smallest singular value an operator-space basis may have before it is
/// rejected as linearly dependent.
pub const BASIS_INDEPENDENCE_FLOOR: f64 = 1e-10;

/// Relative Frobenius tolerance for verifying a factorization reconstructs
/// the element it factors.
pub const FACTORIZATION_RECONSTRUCTION_TOL: f64 = 1e-8;

/// Tolerance on `|O(y) - 1|` for the middle element of a factorization.
pub const FACTORIZATION_MIDDLE_TOL: f64 = 1e-8;

/// Default bracket-width target for the numerical radius.
pub const RADIUS_DEFAULT_TOL: f64 = 1e-8;

/// Largest absolute eigenvalue allowed in the Hermitian exponents that
/// parametrize positive factors during searches. Keeps every generated factor
/// within condition number `exp(2 * EXPONENT_CLAMP) < 1e10`.
pub const EXPONENT_CLAMP: f64 = 11.5;

/// Spectral norm defect tolerated on shift generators fed to `w_t_norm`.
pub const GENERATOR_NORM_SLACK: f64 = 1e-12;
