//! Fixed numeric tolerances, in one place so every module and test agrees on
//! what "equal" means. None of these are tunable at runtime; loosening one to
//! make a test pass is a bug by definition.

/// Convergence threshold for the cyclic Jacobi eigensolver: sweeps stop once
/// the off-diagonal Frobenius mass falls below this fraction of the total.
/// Jacobi converges quadratically, so the last sweep overshoots this by far.
pub const EIGEN_CONVERGENCE: f64 = 1e-12;

/// Absolute accuracy promised for spectral norms and eigenvalues at the matrix
/// sizes this crate works with (≤ 4096). Cross-checked against an independent
/// solver in the test suite.
pub const EIGEN_ACCURACY: f64 = 1e-10;

/// Largest acceptable ‖v‖₂ deviation from 1 for a state that claims to be
/// normalized.
pub const NORM_TOL: f64 = 1e-12;

/// Norm drift allowed across one simulation step (an oracle application plus
/// one unitary). Exact permutations and structured gates stay far inside this;
/// explicit matrices get checked against it.
pub const STEP_NORM_TOL: f64 = 1e-10;

/// Unitarity defect allowed for explicit matrices: max-abs entry of U†U − I.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Largest imaginary part tolerated when a quantity is real by symmetry
/// (the progress measure W^t is a sum of conjugate pairs).
pub const IMAG_TOL: f64 = 1e-10;

/// Default slack for floating-point assertions in tests and acceptance
/// checks: derived quantities must match frozen values this closely.
pub const ASSERT_TOL: f64 = 1e-9;
