//! Numeric tolerances used across the crate.
//!
//! Equality checks default to [`DEFAULT_EQ`]; operations that state a
//! different tolerance use one of the named constants below. Error budgets
//! scale with accumulation length, which is why the Varopoulos witness value
//! (a sum of ~n^3 complex products) gets a wider band than a single
//! inequality margin.

/// Default absolute tolerance for equality of computed reals.
pub const DEFAULT_EQ: f64 = 1e-9;

/// Slack added to the right-hand side of verified inequalities.
pub const INEQ_MARGIN: f64 = 1e-9;

/// Allowed excess over 1 for sampled contraction operator norms.
pub const CONTRACTION_NORM: f64 = 1e-12;

/// Allowed excess over 1 for Varopoulos witness matrix norms.
pub const WITNESS_MATRIX_NORM: f64 = 1e-10;

/// Bound on pairwise commutator norms of witness matrices.
pub const COMMUTATOR: f64 = 1e-10;

/// Absolute slack for the Varopoulos witness value against its closed form.
pub const WITNESS_VALUE: f64 = 1e-6;

/// Entrywise tolerance for tensor symmetry checks.
pub const SYMMETRY_ENTRYWISE: f64 = 1e-12;

/// Operator norms may exceed 1 by this much before a lift refuses its input.
pub const LIFT_INPUT_NORM: f64 = 1e-9;
