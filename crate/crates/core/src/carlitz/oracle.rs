//! Brute-force expansion of `e_i(t) = prod_{deg m < i} (t - m)`.

use crate::algebra::{Field, FqPoly};
use crate::error::{Error, Result};

use super::digits::m_seq;
use super::linear::LinearPoly;
use super::tpoly::TPoly;

/// Largest number of linear factors the oracle will multiply.
pub const ORACLE_BUDGET: u64 = 4096;

/// Largest number of factors for the one-at-a-time product.
pub const FLAT_BUDGET: u64 = 256;

fn factor_count(field: &Field, i: usize, budget: u64) -> Result<u64> {
    (field.q() as u64)
        .checked_pow(i as u32)
        .filter(|&n| n <= budget)
        .ok_or_else(|| Error::Budget(format!("q^{i} linear factors exceed the oracle budget of {budget}")))
}

/// The full product over the `q^i` residues of degree below `i`, grouped by
/// leading coefficient: `P_0 = t`, `P_i(t) = prod_a P_(i-1)(t - a x^(i-1))`.
/// Every factor `t - m` appears exactly once; the grouping only orders the
/// multiplications.
pub fn e_product_oracle(field: &Field, i: usize) -> Result<LinearPoly> {
    factor_count(field, i, ORACLE_BUDGET)?;
    let mut p = TPoly::t(field);
    for k in 1..=i {
        let mut acc = TPoly::one(field);
        for a in field.enumerate() {
            let shift = FqPoly::monomial(field, a, k - 1).neg();
            acc = acc.mul(&p.shift_arg(&shift));
        }
        p = acc;
    }
    p.to_linear()
}

/// The same product taken one factor at a time.
pub fn e_product_flat(field: &Field, i: usize) -> Result<LinearPoly> {
    let n = factor_count(field, i, FLAT_BUDGET)?;
    let enumeration = field.enumerate();
    let mut acc = TPoly::one(field);
    for j in 0..n {
        acc = acc.mul(&TPoly::linear_factor(&m_seq(field, &enumeration, j)));
    }
    acc.to_linear()
}
