//! Error type shared by every fallible kernel operation.
//!
//! Dimension mismatches between operands are programmer errors and panic via
//! debug-friendly assertions in the hot product kernels; everything that
//! depends on *data* (degenerate metrics, singular operators, frames that are
//! not orthonormal, malformed JSON) reports through [`GaError`] so callers can
//! map failures to diagnostics or exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GaError {
    /// Algebra dimension outside the supported 1..=12 range.
    #[error("dimension {0} out of range (supported: 1..=12)")]
    DimensionOutOfRange(usize),

    /// Two index lists that must have equal length do not.
    #[error("index lists have mismatched lengths ({upper} vs {lower})")]
    IndexLengthMismatch { upper: usize, lower: usize },

    /// Index outside 1..=n in a 1-based index list.
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    /// Symmetric-matrix input with an asymmetry above the admission gate.
    #[error("matrix is not symmetric: |G[{row}][{col}] - G[{col}][{row}]| = {asymmetry:.3e} exceeds 1e-12")]
    NotSymmetric {
        row: usize,
        col: usize,
        asymmetry: f64,
    },

    /// Metric whose determinant is too close to zero to invert safely.
    #[error("metric is degenerate: |det| = {det:.3e} <= 1e-10")]
    DegenerateMetric { det: f64 },

    /// Eigenvalue close enough to zero that a signature cannot be assigned.
    #[error("cannot classify signature: eigenvalue {value:.3e} is within 1e-10 of zero")]
    IndefiniteEigenvalue { value: f64 },

    /// Operator whose determinant fails the scale-aware invertibility gate.
    #[error("operator is singular: det = {det:.3e} (threshold {threshold:.3e})")]
    SingularOperator { det: f64, threshold: f64 },

    /// Jacobi sweep limit exhausted before the off-diagonal norm converged.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_diag:.3e})")]
    EigenNoConvergence { sweeps: usize, off_diag: f64 },

    /// Vector that must be unit length (Euclidean) is not.
    #[error("vector is not unit length: |v.v - 1| = {deviation:.3e} exceeds {tolerance:.1e}")]
    NotUnitVector { deviation: f64, tolerance: f64 },

    /// Frame that must be orthonormal (Euclidean) is not.
    #[error("frame is not orthonormal: max |b_j.b_k - delta_jk| = {deviation:.3e} exceeds {tolerance:.1e}")]
    NotOrthonormalFrame { deviation: f64, tolerance: f64 },

    /// Two metrics whose signatures must agree do not.
    #[error("signature mismatch: ({}, {}) vs ({}, {})", .left.0, .left.1, .right.0, .right.1)]
    SignatureMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    /// Structurally invalid multivector/metric/operator serialization.
    #[error("invalid serialized form: {0}")]
    InvalidForm(String),
}

pub type Result<T> = std::result::Result<T, GaError>;
