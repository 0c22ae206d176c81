//! Exact symbolic computation of conservation laws for the Tzitzeica equation
//! `u_{zz̄} = e^{−2u} − e^{u}` on its infinitely prolonged exterior differential system.

pub mod algebra;
pub mod cohomology;
pub mod error;
pub mod jet;
pub mod killing;
pub mod linsolve;
pub mod recursion;

pub use algebra::{DiffPoly, Generator, JetMonomial, Scalar};
pub use error::Error;
