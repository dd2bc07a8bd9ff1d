//! Brackets, Carlitz factorials and binomials, the basis polynomials
//! `e_i`, `f_i`, `h_j`, the interpolation basis `Q_j`, and the change of
//! basis between `h` and `Q`.

mod cache;
mod digits;
mod linear;
mod oracle;
mod prop2;
mod tpoly;

pub use cache::{bracket, CarlitzCache};
pub use digits::{m_seq, DigitExpansion};
pub use linear::LinearPoly;
pub use oracle::{e_product_flat, e_product_oracle, FLAT_BUDGET, ORACLE_BUDGET};
pub use prop2::{
    expand_h_in_q, gamma_j, h_poly, h_value, kappa, kappa_by_product, l_and_kappa, l_digits, p_poly, q_poly, BasisPoly,
    HExpansion,
};
pub use tpoly::TPoly;
