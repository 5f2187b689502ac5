//! Exact evaluation of trigonometric power sums and an independent
//! interval oracle to check them against.

pub mod closed_forms;
pub mod cotangent;
pub mod error;
pub mod exact;
pub mod genfunc;
pub mod oracle;
pub mod walks;

pub use closed_forms::{Ell5Variant, Family, SumSpec, Trig};
pub use error::{Error, Result};
pub use exact::Rational;
