//! Conservation laws: representatives, closedness, triviality, normal forms,
//! the translation-invariant gauge and the finite-type rank test.

mod forms;
mod gauge;
mod normal_form;
mod rank;

pub use forms::{
    closed_mod_ideal, d_mod_ideal, phi_rep, phi_tilde, q_classical, triviality_test, CohomologyClassRep, Triviality,
};
pub use gauge::{translation_gauge, Gauge};
pub use normal_form::{b_coefficient, normal_form_Phi, psi_form, rho};
pub use rank::{
    finite_type_rank, format_complex, parse_complex, Certificate, RankReport, SampleRow, SampleTable, RANK_FLOOR,
};
