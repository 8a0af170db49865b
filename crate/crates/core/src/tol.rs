//! Numerical tolerances shared by every module.
//!
//! Acceptance thresholds in the test suites are pinned against these values;
//! change them here and nowhere else.

/// Entrywise bound on `|M[i][j] - conj(M[j][i])|` for a matrix to count as Hermitian.
pub const HERMITICITY: f64 = 1e-12;

/// Eigenvalues down to `-PSD_CLAMP` are treated as zero; below that a matrix is not PSD.
pub const PSD_CLAMP: f64 = 1e-10;

/// Reconstruction residual (Frobenius) for eigendecompositions and square roots.
pub const RESIDUAL: f64 = 1e-9;

/// Allowed deviation of a density matrix trace from one.
pub const TRACE: f64 = 1e-10;

/// Guard band for strict inequalities in separability criteria.
pub const FLAG_GUARD: f64 = 1e-12;

/// A partial transpose eigenvalue below `-PPT_GUARD` certifies entanglement.
pub const PPT_GUARD: f64 = 1e-10;

/// A bound is satisfied when `rhs - lhs >= -BOUND_SLACK`.
pub const BOUND_SLACK: f64 = 1e-9;

/// Purity deviation from one still accepted as a pure state.
pub const PURITY_PURE: f64 = 1e-8;

/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this (relative to the matrix norm).
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-14;

/// Hard cap on Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;
