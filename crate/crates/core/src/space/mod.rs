//! The space of continuous F_q-linear functions on the unit ball, in the
//! monomial and Carlitz-coefficient representations, with the difference
//! and ladder operators, coherent states and norms.

mod coeffs;
mod coherent;
mod norm;
mod ops;

pub use crate::carlitz::LinearPoly;
pub use coeffs::{check_in_ring, CarlitzCoeffs};
pub use coherent::{coherent_closed_form, coherent_state};
pub use norm::{sampled_norm, sampled_norm_direct};
pub use ops::{
    a_minus, a_minus_linear, a_plus, a_plus_linear, commutator_defect, commutator_k_only, delta_coeffs, delta_linear,
    delta_n, delta_n_closed, delta_n_factor, number_op,
};
