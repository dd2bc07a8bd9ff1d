use std::fmt;

use super::absval::AbsVal;
use super::field::{Field, Fq};
use super::laurent::LaurentSeries;
use super::poly::FqPoly;
use crate::error::{Error, Result};

/// An element of F_q(x) in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: FqPoly,
    den: FqPoly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::ratfunc_to_string(self))
    }
}

impl RatFunc {
    pub fn new(num: FqPoly, den: FqPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::normalize(num, den))
    }

    fn normalize(num: FqPoly, den: FqPoly) -> RatFunc {
        let field = num.field().clone();
        if num.is_zero() {
            return RatFunc { num, den: FqPoly::one(&field) };
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
            }
        };
        let inv = field.inv(den.lead()).expect("nonzero denominator");
        RatFunc { num: num.scale(inv), den: den.scale(inv) }
    }

    pub fn from_poly(p: FqPoly) -> RatFunc {
        let one = FqPoly::one(p.field());
        RatFunc { num: p, den: one }
    }

    pub fn zero(field: &Field) -> RatFunc {
        RatFunc::from_poly(FqPoly::zero(field))
    }

    pub fn one(field: &Field) -> RatFunc {
        RatFunc::from_poly(FqPoly::one(field))
    }

    pub fn constant(field: &Field, c: Fq) -> RatFunc {
        RatFunc::from_poly(FqPoly::constant(field, c))
    }

    /// `1 / p`.
    pub fn recip_poly(p: &FqPoly) -> Result<RatFunc> {
        RatFunc::new(FqPoly::one(p.field()), p.clone())
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &FqPoly {
        &self.num
    }

    pub fn den(&self) -> &FqPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// x-adic valuation `v(num) - v(den)`; `None` for zero.
    pub fn x_order(&self) -> Option<i64> {
        let vn = self.num.x_order()? as i64;
        let vd = self.den.x_order().expect("nonzero denominator") as i64;
        Some(vn - vd)
    }

    pub fn abs_val(&self) -> AbsVal {
        match self.x_order() {
            None => AbsVal::Zero,
            Some(v) => AbsVal::from_val(v, 1),
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return RatFunc::normalize(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RatFunc::normalize(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero(self.field());
        }
        // Cross-cancel before multiplying; both inputs are already reduced.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = other.den.exact_div(&g1).expect("gcd divides");
        let n2 = other.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let inv = self.field().inv(den.lead()).expect("nonzero");
        RatFunc { num: num.scale(inv), den: den.scale(inv) }
    }

    pub fn mul_poly(&self, p: &FqPoly) -> RatFunc {
        self.mul(&RatFunc::from_poly(p.clone()))
    }

    pub fn scale(&self, c: Fq) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.field());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = self.field().inv(self.num.lead())?;
        Ok(RatFunc { num: self.den.scale(inv), den: self.num.scale(inv) })
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u64) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// `self^q`; stays reduced since Frobenius is an injective ring map.
    pub fn frobenius(&self) -> RatFunc {
        RatFunc { num: self.num.frobenius(), den: self.den.frobenius() }
    }

    pub fn frobenius_pow(&self, j: u32) -> RatFunc {
        RatFunc { num: self.num.frobenius_pow(j), den: self.den.frobenius_pow(j) }
    }

    /// Exact q-th root inside F_q(x), when it exists.
    pub fn qth_root(&self) -> Option<RatFunc> {
        Some(RatFunc { num: self.num.qth_root()?, den: self.den.qth_root()? })
    }

    /// Evaluate at a polynomial argument.
    pub fn compose(&self, arg: &FqPoly) -> Result<RatFunc> {
        RatFunc::new(self.num.compose(arg), self.den.compose(arg))
    }

    /// Laurent expansion at x = 0 modulo `x^prec`.
    pub fn to_laurent(&self, prec: i64) -> LaurentSeries {
        LaurentSeries::from_ratfunc(self, prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &Field, c: &[u32]) -> FqPoly {
        FqPoly::from_coeffs(f, c.iter().map(|&i| f.elem(i).unwrap()).collect())
    }

    #[test]
    fn normalizes_to_lowest_terms() {
        let f = Field::new(2, 1).unwrap();
        let r = RatFunc::new(poly(&f, &[0, 1, 1]), poly(&f, &[0, 1])).unwrap();
        assert!(r.is_poly());
        assert_eq!(r.num(), &poly(&f, &[1, 1]));
        assert_eq!(RatFunc::new(poly(&f, &[1]), FqPoly::zero(&f)), Err(Error::DivisionByZero));
    }

    #[test]
    fn field_operations() {
        let f = Field::new(3, 1).unwrap();
        let a = RatFunc::new(poly(&f, &[1, 1]), poly(&f, &[0, 2, 1])).unwrap();
        let b = RatFunc::new(poly(&f, &[2, 0, 1]), poly(&f, &[1, 1])).unwrap();
        assert_eq!(a.mul(&b).div(&b).unwrap(), a);
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&a.inv().unwrap()), RatFunc::one(&f));
        assert_eq!(a.frobenius(), a.pow(3));
        assert_eq!(a.frobenius().qth_root().unwrap(), a);
        assert_eq!(a.x_order(), Some(-1));
    }
}
