//! Numerical tolerances shared by the oracle, the survey scans and the tests.
//!
//! None of these carry mathematical content; they only decide when two
//! floating-point numbers are treated as equal.

/// Jacobi stops once the off-diagonal Frobenius mass drops below this
/// fraction of the input's Frobenius norm.
pub const JACOBI_CONVERGENCE: f64 = 1e-12;

/// Tighter threshold used when re-checking a suspected integer eigenvalue.
pub const JACOBI_REFINED: f64 = 1e-15;

/// Sweep cap for the Jacobi iteration.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Largest matrix order accepted by the dense solver.
pub const DENSE_SOLVER_CAP: usize = 2000;

/// Per-entry agreement between two spectra, and the window used when
/// counting how many eigenvalues sit at an integer.
pub const COMPARISON: f64 = 1e-7;

/// Orthonormality of Jacobi eigenvectors, `max |VᵀV - I|`.
pub const ORTHONORMALITY: f64 = 1e-8;

/// Default tolerance for merging equal eigenvalues into groups.
pub const GROUPING: f64 = 1e-9;

/// Integer detection on path powers, where no closed form exists.
pub const PATH_INTEGER: f64 = 1e-6;

/// Integer confirmation after refinement.
pub const PATH_INTEGER_REFINED: f64 = 1e-9;

/// Below this value of `sin(r π / n)` the Dirichlet ratio is replaced by the
/// cosine sum.
pub const DIRICHLET_SMALL_DENOMINATOR: f64 = 1e-6;
