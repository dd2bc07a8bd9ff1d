use std::fmt;

use num_rational::Ratio;

use crate::algebra::{min_prec, AbsVal, Field, Fq, FqPoly, Scalar};
use crate::carlitz::{bracket, CarlitzCache, LinearPoly};
use crate::error::{Error, Result};

/// A function `sum_i c_i f_i` given by its first `M` Carlitz coefficients;
/// coefficients past the end are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct CarlitzCoeffs {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for CarlitzCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl CarlitzCoeffs {
    pub fn new(field: &Field, coeffs: Vec<Scalar>) -> CarlitzCoeffs {
        CarlitzCoeffs { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field, m: usize) -> CarlitzCoeffs {
        CarlitzCoeffs::new(field, vec![Scalar::zero(field); m])
    }

    /// `f_i` as a length-`m` sequence.
    pub fn unit(field: &Field, i: usize, m: usize) -> CarlitzCoeffs {
        let mut c = CarlitzCoeffs::zero(field, m.max(i + 1));
        c.coeffs[i] = Scalar::one(field);
        c
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Scalar::zero(&self.field))
    }

    /// Keep the first `m` coefficients, padding with zeros.
    pub fn resized(&self, m: usize) -> CarlitzCoeffs {
        CarlitzCoeffs::new(&self.field, (0..m).map(|i| self.coeff(i)).collect())
    }

    fn zip(&self, other: &CarlitzCoeffs, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> CarlitzCoeffs {
        let n = self.len().max(other.len());
        CarlitzCoeffs::new(&self.field, (0..n).map(|i| op(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn add(&self, other: &CarlitzCoeffs) -> CarlitzCoeffs {
        self.zip(other, Scalar::add)
    }

    pub fn sub(&self, other: &CarlitzCoeffs) -> CarlitzCoeffs {
        self.zip(other, Scalar::sub)
    }

    pub fn scale(&self, c: &Scalar) -> CarlitzCoeffs {
        CarlitzCoeffs::new(&self.field, self.coeffs.iter().map(|u| u.mul(c)).collect())
    }

    pub fn scale_fq(&self, c: Fq) -> CarlitzCoeffs {
        CarlitzCoeffs::new(&self.field, self.coeffs.iter().map(|u| u.scale(c)).collect())
    }

    /// Coefficientwise comparison over the longer length.
    pub fn agree(&self, other: &CarlitzCoeffs) -> (bool, Option<Ratio<i64>>) {
        let n = self.len().max(other.len());
        let mut ok = true;
        let mut prec = None;
        for i in 0..n {
            let (eq, p) = self.coeff(i).agree(&other.coeff(i));
            ok &= eq;
            prec = min_prec(prec, p);
        }
        (ok, prec)
    }

    /// `max_i |c_i|`.
    pub fn norm(&self) -> AbsVal {
        self.coeffs.iter().map(Scalar::abs_val).max().unwrap_or(AbsVal::Zero)
    }

    /// The same function as an additive polynomial, `sum_i c_i f_i`.
    pub fn to_linear(&self, cache: &CarlitzCache) -> Result<LinearPoly> {
        let mut acc = LinearPoly::zero(&self.field);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_exact() && c.is_zero() {
                continue;
            }
            acc = acc.add(&cache.f_poly(i)?.scale(c));
        }
        Ok(acc)
    }

    /// Triangular solve: `f_i` has top term `t^(q^i) / D_i`, so the top
    /// coefficient of what remains fixes `c_i = u_i D_i`.
    pub fn from_linear(cache: &CarlitzCache, phi: &LinearPoly) -> Result<CarlitzCoeffs> {
        let field = cache.field();
        let m = phi.len();
        let mut rest = phi.clone();
        let mut coeffs = vec![Scalar::zero(field); m];
        for i in (0..m).rev() {
            let c = rest.coeff(i).mul_poly(cache.d(i));
            rest = rest.sub(&cache.f_poly(i)?.scale(&c));
            coeffs[i] = c;
        }
        Ok(CarlitzCoeffs::new(field, coeffs))
    }

    /// `sum_i c_i f_i(t)` for `|t| <= 1`.
    pub fn eval(&self, cache: &CarlitzCache, t: &Scalar) -> Result<Scalar> {
        check_in_ring(t)?;
        let mut acc = Scalar::zero(&self.field);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_exact() && c.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul(&cache.f_value(i, t)?));
        }
        Ok(acc)
    }
}

/// Rejects arguments outside the unit ball.
pub fn check_in_ring(t: &Scalar) -> Result<()> {
    match t.abs_val().exponent() {
        Some(e) if e < Ratio::from_integer(0) => Err(Error::Domain(format!("|t| = {} > 1", t.abs_val()))),
        _ => Ok(()),
    }
}

/// `[i]` for any `i`, with `[0] = 0`.
pub(crate) fn bracket_any(field: &Field, i: usize) -> Result<FqPoly> {
    if i == 0 {
        Ok(FqPoly::zero(field))
    } else {
        bracket(field, i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_monomial_in_carlitz_basis() {
        // t^q = D_1 f_1 + f_0
        let f = Field::new(2, 1).unwrap();
        let cache = CarlitzCache::new(&f, 3).unwrap();
        let phi = LinearPoly::monomial(&f, 1, Scalar::one(&f));
        let c = CarlitzCoeffs::from_linear(&cache, &phi).unwrap();
        assert_eq!(c.coeffs(), &[Scalar::one(&f), Scalar::from(cache.d(1).clone())]);
        assert_eq!(c.to_linear(&cache).unwrap(), phi);
    }

    #[test]
    fn unit_round_trip() {
        let f = Field::new(3, 1).unwrap();
        let cache = CarlitzCache::new(&f, 3).unwrap();
        let u = CarlitzCoeffs::unit(&f, 3, 4);
        let phi = u.to_linear(&cache).unwrap();
        assert_eq!(phi, cache.f_poly(3).unwrap());
        assert_eq!(CarlitzCoeffs::from_linear(&cache, &phi).unwrap(), u);
    }

    #[test]
    fn eval_rejects_large_arguments() {
        let f = Field::new(2, 1).unwrap();
        let cache = CarlitzCache::new(&f, 2).unwrap();
        let u = CarlitzCoeffs::unit(&f, 1, 2);
        let x = Scalar::from(FqPoly::x(&f));
        assert_eq!(u.eval(&cache, &x).unwrap(), Scalar::one(&f));
        let big = Scalar::Exact(crate::algebra::RatFunc::recip_poly(&FqPoly::x(&f)).unwrap());
        assert!(matches!(u.eval(&cache, &big), Err(Error::Domain(_))));
    }
}
