//! Exact coefficient arithmetic and sparse exact linear algebra.
//!
//! Scalars live in the rationals, a prime field `F_p`, or a univariate
//! quotient ring `K[t]/(m)` over one of those. Elimination never uses
//! floating point.

pub mod bareiss;
pub mod error;
pub mod field;
pub mod probe;
pub mod small;
pub mod sparse;

pub use error::ExactError;
pub use field::{Field, Irreducibility, Scalar};
pub use small::{DenseEchelon, Reduction, SmallField};
pub use sparse::{Echelon, Insert, SparseMatrix, SparseVec};
