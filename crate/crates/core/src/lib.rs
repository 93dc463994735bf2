//! Trilinear tensor-norm gap toolkit.
//!
//! Builds arithmetic-progression trilinear forms over finite abelian groups,
//! evaluates scalar and matrix Gowers uniformity norms by exact enumeration,
//! and produces certified one-sided bounds showing that the symmetrized
//! completely bounded norm of such a form exceeds its jointly completely
//! bounded norm by a factor growing like `(p/2)^(1/8)`.
//!
//! Module map:
//! - [`group`]: products of cyclic groups, element arithmetic, flat indexing.
//! - [`linalg`]: dense complex matrices, operator norms, Kronecker products,
//!   seeded contraction sampling.
//! - [`gowers`]: scalar and matrix-valued `U^k` norms and witness functions.
//! - [`form`]: order-3 tensors, slices, permutation action, symmetrization,
//!   matrix lifts.
//! - [`certify`]: gap certificates, Varopoulos witnesses, and randomized
//!   inequality verifiers.

pub mod certify;
pub mod form;
pub mod gowers;
pub mod group;
pub mod linalg;

pub(crate) mod kahan;
pub mod tol;

/// Error type shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// An enumeration or dimension budget would be exceeded.
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    /// The input is structurally valid but degenerate for the requested
    /// operation (e.g. a zero tensor where a positive slice norm is needed).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    /// An internal consistency check failed; indicates a construction bug.
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Number of worker threads for enumeration loops.
///
/// Reads `GT_GAP_THREADS` when set (values below 1 are treated as 1),
/// otherwise uses the available parallelism. Results never depend on the
/// worker count: partial sums are always combined in index order.
pub(crate) fn worker_count() -> usize {
    match std::env::var("GT_GAP_THREADS") {
        Ok(v) => v.trim().parse::<usize>().unwrap_or(1).max(1),
        Err(_) => std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1),
    }
}
