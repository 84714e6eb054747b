//! Surface syntax: parsing, lowering into a tower, printing and JSON.

pub mod json;
pub mod lower;
pub mod parse;
pub mod print;

pub use lower::{lower, lower_over, LowerError};
pub use parse::{parse, Expr, ParseError};
