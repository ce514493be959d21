//! Numerical tolerances shared across the crate.

/// Largest supported Hilbert-space dimension.
pub const MAX_DIM: usize = 64;

/// Relative symmetry tolerance: `|A - A^dag|_F <= HERMITIAN * max(1, |A|_F)`.
pub const HERMITIAN: f64 = 1e-10;

/// Jacobi stops once the off-diagonal Frobenius mass is below this fraction of `|A|_F`.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-13;

pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Default rank cutoff, relative to the largest eigenvalue.
pub const RANK: f64 = 1e-10;

/// Density operators: Hermiticity, eigenvalue floor and unit trace.
pub const STATE: f64 = 1e-10;

/// Kraus completeness `|sum E^dag E - I|_F`.
pub const COMPLETENESS: f64 = 1e-9;

/// Channel outputs may dip this far below zero before they count as invalid.
pub const OUTPUT_NEGATIVITY: f64 = 1e-9;

/// Test operators must have spectrum inside `[-TEST_SPECTRUM, 1 + TEST_SPECTRUM]`.
pub const TEST_SPECTRUM: f64 = 1e-9;

/// Acceptance constraint `tr(Q rho) >= 1 - eta` must hold to this accuracy.
pub const CONSTRAINT: f64 = 1e-10;

/// Upper bound on the Neyman-Pearson duality gap.
pub const DUAL_GAP: f64 = 1e-7;

/// Rounding slack before probabilities are clipped into `[0, 1]`.
pub const PROBABILITY_SLACK: f64 = 1e-12;

/// Audit verdicts: a value counts as over budget beyond this slack.
pub const BUDGET: f64 = 1e-9;
