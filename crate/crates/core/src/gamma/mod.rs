//! Integration with special functions: answer types, the `Ei`/`Γ`
//! matchers, and the dispatcher over the tower.

pub mod answer;
pub mod integrate;
pub mod matchers;

pub use answer::{Answer, LogTerm, SpecialKind, SpecialTerm, Status};
pub use integrate::integrate;
