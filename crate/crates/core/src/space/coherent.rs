use num_rational::Ratio;

use crate::algebra::Scalar;
use crate::error::{Error, Result};

use super::coeffs::CarlitzCoeffs;

/// Eigenvectors of `a-`: `c_(n+1) = (lambda c_n)^q`, which is the relation
/// `c_(n+1)^(1/q) = lambda c_n` without taking roots. Requires
/// `|lambda|^(q/(q-1)) |c_0| < 1`, checked as `q v(lambda) + (q-1) v(c_0) > 0`.
pub fn coherent_state(lambda: &Scalar, c0: &Scalar, m: usize) -> Result<CarlitzCoeffs> {
    let field = lambda.field();
    let q = field.q() as i64;
    let Some(vl) = lambda.abs_val().exponent() else {
        return Err(Error::Domain("lambda must be nonzero".into()));
    };
    if let Some(vc) = c0.abs_val().exponent() {
        if vl * q + vc * (q - 1) <= Ratio::from_integer(0) {
            return Err(Error::Domain(format!(
                "|lambda|^(q/(q-1)) |c0| >= 1 (|lambda| = {}, |c0| = {})",
                lambda.abs_val(),
                c0.abs_val()
            )));
        }
    }
    let mut coeffs = Vec::with_capacity(m);
    let mut c = c0.clone();
    for _ in 0..m {
        coeffs.push(c.clone());
        c = lambda.mul(&c).frobenius();
    }
    Ok(CarlitzCoeffs::new(field, coeffs))
}

/// The closed form on the family `lambda = nu^(q-1)`: with `mu = nu^q`,
/// `c_n = mu^(-1) (c_0 mu)^(q^n)`.
pub fn coherent_closed_form(nu: &Scalar, c0: &Scalar, m: usize) -> Result<CarlitzCoeffs> {
    let field = nu.field();
    let mu = nu.frobenius();
    let mu_inv = mu.inv()?;
    let base = c0.mul(&mu);
    let coeffs = (0..m).map(|n| mu_inv.mul(&base.frobenius_pow(n as u32))).collect();
    Ok(CarlitzCoeffs::new(field, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, FqPoly};
    use crate::space::ops::a_minus;

    #[test]
    fn unit_eigenvalue_gives_frobenius_orbit() {
        let f = Field::new(2, 1).unwrap();
        let x = Scalar::from(FqPoly::x(&f));
        let u = coherent_state(&Scalar::one(&f), &x, 6).unwrap();
        for n in 0..6 {
            assert_eq!(u.coeff(n), x.frobenius_pow(n as u32));
        }
        let down = a_minus(&u).unwrap();
        assert!(down.agree(&u.resized(5)).0);
    }

    #[test]
    fn closed_form_matches_recursion() {
        let f = Field::new(3, 1).unwrap();
        let x = FqPoly::x(&f);
        let nu = Scalar::from(x.add(&FqPoly::one(&f)));
        let lambda = nu.pow(2);
        let c0 = Scalar::from(x.pow(2));
        let rec = coherent_state(&lambda, &c0, 4).unwrap();
        let closed = coherent_closed_form(&nu, &c0, 4).unwrap();
        assert_eq!(rec, closed);
    }

    #[test]
    fn divergent_parameters_rejected() {
        let f = Field::new(2, 1).unwrap();
        let one = Scalar::one(&f);
        assert!(matches!(coherent_state(&one, &one, 3), Err(Error::Domain(_))));
        assert!(coherent_state(&Scalar::zero(&f), &one, 3).is_err());
    }
}
