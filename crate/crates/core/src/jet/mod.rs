//! Calculus on the infinitely prolonged system.

mod derivations;
mod form;
mod params;

pub use derivations::{e_lin, e_minus1, e_minus1_pow, e_minus1bar};
pub use form::{d_coframe, d_form, d_function, du, tau, Coframe, Form, OneFormModI};
pub use params::SystemParams;

pub(crate) use params::binom;
