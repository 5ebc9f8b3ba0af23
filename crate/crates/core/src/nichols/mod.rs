//! Nichols algebras of braided vector spaces of rack type.

pub mod closed;
pub mod criterion;
pub mod cubic;
pub mod engine;
pub mod hilbert;
pub mod integral;
pub mod quotient;
pub mod symmetrizer;
pub mod words;

pub use engine::NicholsAlgebra;
pub use quotient::{DimMethod, GradedDims};

use crate::braiding::Cocycle;
use crate::error::NicholsError;

/// Exact graded dimensions of `𝔅(V)` up to `max_degree`, stopping early when
/// a component vanishes.
pub fn graded_dims(c: &Cocycle, max_degree: usize) -> Result<GradedDims, NicholsError> {
    let algebra = NicholsAlgebra::compute(c, max_degree)?;
    let dims = algebra.dims();
    Ok(GradedDims {
        field: c.field().to_string(),
        methods: vec![DimMethod::DerivationKernel; dims.len()],
        complete: algebra.is_finished(),
        dims,
    })
}
