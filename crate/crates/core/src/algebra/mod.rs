//! Exact scalars and exponential-differential polynomials.

mod monomial;
pub mod parse;
mod poly;
pub mod random;
mod scalar;
pub mod serial;

pub use monomial::{Generator, JetMonomial};
pub use parse::parse_poly;
pub use poly::{DiffPoly, WeightOf};
pub use scalar::{Scalar, Unit};

pub(crate) use poly::{big, from_r64};
