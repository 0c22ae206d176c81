//! Exact linear algebra: ansatz enumeration, elimination, kernels and integration.

mod ansatz;
mod kernel;
mod sparse;

pub use ansatz::{enumerate_monomials, exp_window, Ansatz, VarClass};
pub use kernel::{integrate_auto, integrate_oneform, kernel_basis, kernel_in, NotExact};
pub use sparse::{echelonize, Infeasible, LinearSystem, Solution, SparseRow};
