//! Symbolic integration over towers of exponential and logarithmic
//! extensions of `Q(x)`, with answers that may contain exponential integrals
//! and incomplete gamma functions.
//!
//! ```
//! let out = gammaint::api::integrate_text("exp(x)/x", "x", &[]).unwrap();
//! assert_eq!(out.text(), "Ei(x) + C");
//! ```

pub mod api;
pub mod cli;
pub mod decompose;
pub mod elementary;
pub mod gamma;
pub mod io;
pub mod kernel;
pub mod structure;
pub mod tower;
pub mod verify;
