//! Exact ground arithmetic: GF(p^gamma), polynomials and rational functions
//! over it, and truncated ramified Laurent series.

mod absval;
mod field;
mod laurent;
mod poly;
mod ratfunc;
mod scalar;

pub use absval::AbsVal;
pub use field::{default_modulus, is_irreducible_mod_p, is_prime, Field, Fq, MAX_Q};
pub use laurent::LaurentSeries;
pub use poly::FqPoly;
pub use ratfunc::RatFunc;
pub use scalar::{min_prec, Scalar};
