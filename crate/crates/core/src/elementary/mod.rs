//! The elementary core: Hermite reduction, the logarithmic part, and the
//! Risch differential equation `y' + b y = a`.

pub mod hermite;
pub mod rde;
pub mod residue;

pub use hermite::{hermite_reduce, HermiteResult};
pub use rde::{rde_reduce, rde_solve, RdeOutcome};
pub use residue::{residue_logpart, ResidueError};
