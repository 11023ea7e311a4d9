//! Geometric-algebra kernel over a real vector space of dimension 1..=12.
//!
//! Multivectors are dense 2^n coefficient arrays indexed by basis-blade
//! bitmask (bit i-1 set means factor e_i), always in canonical ascending
//! order. On top of that sit:
//!
//! - the fiducial (orthonormal) exterior and Clifford products,
//! - arbitrary symmetric nondegenerate metrics and their deformed products,
//! - (1,1)-extensor calculus: outermorphism extension, adjoints,
//!   generalization, determinants and inverses through the pseudoscalar,
//! - gauge operators factoring a metric over a flat one of equal signature,
//!   with the transport route that rebuilds every metric product,
//! - fiducial and metric Hodge duals with three mutually checking routes,
//! - seeded randomized identity suites for the verification harness.
//!
//! Numeric error handling: data-dependent failures (degenerate metrics,
//! singular operators, malformed JSON) return [`error::GaError`]; dimension
//! mismatches between operands are programmer errors and panic.

pub mod blade;
pub mod deform;
pub mod error;
pub mod euclidean;
pub mod extensor;
pub mod hodge;
pub mod linalg;
pub mod metric;
pub mod multivector;
pub mod verify;

pub use blade::{BladeMask, MAX_DIM};
pub use error::{GaError, Result};
pub use extensor::{GeneralExtensor, LinOp11};
pub use metric::{MetricExtensor, MetricTensor, ProductKind};
pub use multivector::{GradeSet, Multivector};
