//! The difference operators and the ladder operators, each in two forms:
//! a rule on Carlitz coefficients and the pointwise definition on additive
//! polynomials.

use crate::algebra::{Field, Fq, FqPoly, Scalar};
use crate::carlitz::LinearPoly;
use crate::error::{Error, Result};

use super::coeffs::{bracket_any, CarlitzCoeffs};

/// `Delta phi (t) = phi(xt) - x phi(t)` by the monomial rule
/// `u_j t^(q^j) -> u_j [j] t^(q^j)`.
pub fn delta_linear(phi: &LinearPoly) -> Result<LinearPoly> {
    let field = phi.field();
    let coeffs = phi
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, u)| Ok(u.mul_poly(&bracket_any(field, j)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearPoly::from_coeffs(field, coeffs))
}

/// `Delta (sum c_i f_i) = (sum_{i>=1} c_i^(1/q) f_(i-1))^q`; returns the
/// inner coefficients.
pub fn delta_coeffs(c: &CarlitzCoeffs) -> Result<CarlitzCoeffs> {
    let inner = c.coeffs().iter().skip(1).map(Scalar::qth_root).collect::<Result<Vec<_>>>()?;
    Ok(CarlitzCoeffs::new(c.field(), inner))
}

/// `Delta^(n)` by its recursive definition
/// `Delta^(n) phi(t) = Delta^(n-1) phi(xt) - x^(q^(n-1)) Delta^(n-1) phi(t)`.
pub fn delta_n(phi: &LinearPoly, n: usize) -> LinearPoly {
    let field = phi.field();
    let q = field.q() as usize;
    let mut cur = phi.clone();
    for k in 0..n {
        let xk = Scalar::from(FqPoly::monomial(field, Fq::ONE, q.pow(k as u32)));
        cur = cur.scale_arg_x().sub(&cur.scale(&xk));
    }
    cur
}

/// `prod_{k<n} (x^(q^j) - x^(q^k))`, the factor `Delta^(n)` puts on `t^(q^j)`.
pub fn delta_n_factor(field: &Field, j: usize, n: usize) -> FqPoly {
    let q = field.q() as usize;
    let a = q.pow(j as u32);
    (0..n).fold(FqPoly::one(field), |acc, k| acc.mul(&FqPoly::binomial(field, a, q.pow(k as u32))))
}

/// `Delta^(n)` by the closed monomial rule.
pub fn delta_n_closed(phi: &LinearPoly, n: usize) -> LinearPoly {
    let field = phi.field();
    let coeffs = phi.coeffs().iter().enumerate().map(|(j, u)| u.mul_poly(&delta_n_factor(field, j, n))).collect();
    LinearPoly::from_coeffs(field, coeffs)
}

/// `a+ = R_q - I` on coefficients:
/// `d_i = c_(i-1)^q [i] + c_i^q - c_i`, one longer than the input.
pub fn a_plus(c: &CarlitzCoeffs) -> Result<CarlitzCoeffs> {
    let field = c.field();
    let m = c.len();
    let mut out = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let own = c.coeff(i);
        let mut d = own.frobenius().sub(&own);
        if i > 0 {
            d = d.add(&c.coeff(i - 1).frobenius().mul_poly(&bracket_any(field, i)?));
        }
        out.push(d);
    }
    Ok(CarlitzCoeffs::new(field, out))
}

/// `a+ phi = phi^q - phi` pointwise.
pub fn a_plus_linear(phi: &LinearPoly) -> LinearPoly {
    phi.frobenius().sub(phi)
}

/// `a- phi = (Delta phi)^(1/q)` on coefficients: `d_i = c_(i+1)^(1/q)`,
/// one shorter than the input.
pub fn a_minus(c: &CarlitzCoeffs) -> Result<CarlitzCoeffs> {
    delta_coeffs(c)
}

/// `a- phi = (Delta phi)^(1/q)` pointwise: the q-th root of an additive
/// polynomial without a linear term lowers every exponent one step.
pub fn a_minus_linear(phi: &LinearPoly) -> Result<LinearPoly> {
    let d = delta_linear(phi)?;
    if !d.coeff(0).is_zero() {
        return Err(Error::Inconsistent("Delta phi has a linear term".into()));
    }
    let coeffs = d.coeffs().iter().skip(1).map(Scalar::qth_root).collect::<Result<Vec<_>>>()?;
    Ok(LinearPoly::from_coeffs(phi.field(), coeffs))
}

/// The number operator `a+ a-`.
pub fn number_op(c: &CarlitzCoeffs) -> Result<CarlitzCoeffs> {
    a_plus(&a_minus(c)?)
}

/// `((a- a+ - a+ a-) c, [1]^(1/q) c)`.
pub fn commutator_defect(c: &CarlitzCoeffs) -> Result<(CarlitzCoeffs, CarlitzCoeffs)> {
    let field = c.field();
    let lhs = a_minus(&a_plus(c)?)?.sub(&number_op(c)?);
    let root = Scalar::from(bracket_any(field, 1)?).qth_root()?;
    Ok((lhs, c.scale(&root)))
}

/// The commutator identity raised to the q-th power, which stays inside
/// F_q((x)). With `b = a+ c`, the i-th coefficient of the left side to the
/// q-th power is `b_(i+1) - (c_i [i] + c_(i+1))^q + c_(i+1)`; the right side
/// is `[1] c_i^q`. Returns both columns.
pub fn commutator_k_only(c: &CarlitzCoeffs) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    let field = c.field();
    let b = a_plus(c)?;
    let b1 = Scalar::from(bracket_any(field, 1)?);
    let mut lhs = Vec::with_capacity(c.len());
    let mut rhs = Vec::with_capacity(c.len());
    for i in 0..c.len() {
        let inner = c.coeff(i).mul_poly(&bracket_any(field, i)?).add(&c.coeff(i + 1));
        lhs.push(b.coeff(i + 1).sub(&inner.frobenius()).add(&c.coeff(i + 1)));
        rhs.push(b1.mul(&c.coeff(i).frobenius()));
    }
    Ok((lhs, rhs))
}
