//! Racks, Hurwitz orbits, orbit immunity, braided vector spaces of rack
//! type, and exact graded dimensions of their Nichols algebras.

pub mod braiding;
pub mod classify;
pub mod error;
pub mod hurwitz;
pub mod nichols;
pub mod percolate;
pub mod perm;
pub mod presets;
pub mod rack;
pub mod report;

pub use braidrack_exact as exact;
pub use error::{BraidingError, ClassifyError, HurwitzError, NicholsError, PercolateError, RackError};
pub use perm::{Perm, PermGroup};
pub use rack::{find_isomorphism, is_isomorphic, Rack, RackFile, RackInvariants};
