//! Loop-algebra picture: the twisted `sl(3)` connection, Killing fields and `𝒟`.

mod chain;
mod connection;
mod eigen;
mod mat3;

pub use chain::{assemble_killing_field, component_equations_check, matrix_killing_residual, KillingChain};
pub use connection::{
    a_minus1, a_plus1, build_connection, flatness_residual, killing_form, Connection, D_operator, FormMatrix,
};
pub use eigen::{basis, coordinates, eigenspace_project, g0, g1, g2, g3, g4, g5, in_eigenspace};
pub use mat3::{LoopMatrix, Mat3};
