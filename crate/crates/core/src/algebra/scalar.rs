use std::fmt;

use num_rational::Ratio;

use super::absval::AbsVal;
use super::field::{Field, Fq};
use super::laurent::LaurentSeries;
use super::poly::FqPoly;
use super::ratfunc::RatFunc;
use crate::error::Result;

/// A coefficient scalar: exact while every input is exact, a truncated
/// series as soon as one input is. Promotion never goes back.
#[derive(Clone, PartialEq, Eq)]
pub enum Scalar {
    Exact(RatFunc),
    Series(LaurentSeries),
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r:?}"),
            Scalar::Series(s) => write!(f, "{s:?}"),
        }
    }
}

impl From<RatFunc> for Scalar {
    fn from(r: RatFunc) -> Scalar {
        Scalar::Exact(r)
    }
}

impl From<FqPoly> for Scalar {
    fn from(p: FqPoly) -> Scalar {
        Scalar::Exact(RatFunc::from_poly(p))
    }
}

impl From<LaurentSeries> for Scalar {
    fn from(s: LaurentSeries) -> Scalar {
        Scalar::Series(s)
    }
}

/// Expansion of `r` good to absolute precision at least `p`.
fn expand(r: &RatFunc, p: Ratio<i64>) -> LaurentSeries {
    LaurentSeries::from_ratfunc(r, p.ceil().to_integer())
}

impl Scalar {
    pub fn zero(field: &Field) -> Scalar {
        Scalar::Exact(RatFunc::zero(field))
    }

    pub fn one(field: &Field) -> Scalar {
        Scalar::Exact(RatFunc::one(field))
    }

    pub fn constant(field: &Field, c: Fq) -> Scalar {
        Scalar::Exact(RatFunc::constant(field, c))
    }

    pub fn field(&self) -> &Field {
        match self {
            Scalar::Exact(r) => r.field(),
            Scalar::Series(s) => s.field(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&RatFunc> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Series(_) => None,
        }
    }

    /// Zero exactly, or zero at the tracked precision.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Series(s) => s.is_zero(),
        }
    }

    pub fn abs_val(&self) -> AbsVal {
        match self {
            Scalar::Exact(r) => r.abs_val(),
            Scalar::Series(s) => s.abs_val(),
        }
    }

    /// Absolute precision; `None` for exact values.
    pub fn precision(&self) -> Option<Ratio<i64>> {
        match self {
            Scalar::Exact(_) => None,
            Scalar::Series(s) => Some(s.prec_abs()),
        }
    }

    /// Series form known to absolute precision `p` (or the series' own
    /// precision, whichever is smaller).
    pub fn to_series(&self, p: Ratio<i64>) -> LaurentSeries {
        match self {
            Scalar::Exact(r) => expand(r, p),
            Scalar::Series(s) => s.truncate_abs(p),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.add(b)),
            (Scalar::Exact(a), Scalar::Series(b)) | (Scalar::Series(b), Scalar::Exact(a)) => {
                if a.is_zero() {
                    return Scalar::Series(b.clone());
                }
                Scalar::Series(expand(a, b.prec_abs()).add(b))
            }
            (Scalar::Series(a), Scalar::Series(b)) => Scalar::Series(a.add(b)),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.neg()),
            Scalar::Series(s) => Scalar::Series(s.neg()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fq) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.scale(c)),
            Scalar::Series(s) => Scalar::Series(s.scale(c)),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.mul(b)),
            (Scalar::Exact(a), Scalar::Series(b)) | (Scalar::Series(b), Scalar::Exact(a)) => {
                let Some(va) = a.x_order() else {
                    return Scalar::Exact(RatFunc::zero(a.field()));
                };
                let va = Ratio::from_integer(va);
                let pb = b.prec_abs();
                // The exact factor must not be what limits the product.
                let need = match b.valuation() {
                    Some(vb) => va + pb - vb,
                    None => va + 1,
                };
                Scalar::Series(expand(a, need.max(va + 1)).mul(b))
            }
            (Scalar::Series(a), Scalar::Series(b)) => Scalar::Series(a.mul(b)),
        }
    }

    pub fn mul_poly(&self, p: &FqPoly) -> Scalar {
        self.mul(&Scalar::from(p.clone()))
    }

    pub fn inv(&self) -> Result<Scalar> {
        Ok(match self {
            Scalar::Exact(r) => Scalar::Exact(r.inv()?),
            Scalar::Series(s) => Scalar::Series(s.inv()?),
        })
    }

    pub fn pow(&self, e: u64) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.pow(e)),
            Scalar::Series(s) => Scalar::Series(s.pow(e)),
        }
    }

    pub fn frobenius(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.frobenius()),
            Scalar::Series(s) => Scalar::Series(s.frobenius()),
        }
    }

    pub fn frobenius_pow(&self, j: u32) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.frobenius_pow(j)),
            Scalar::Series(s) => Scalar::Series(s.frobenius_pow(j)),
        }
    }

    /// q-th root. Exact when the root lies in F_q(x); otherwise the value is
    /// expanded to the field's working precision and rooted as a series.
    pub fn qth_root(&self) -> Result<Scalar> {
        match self {
            Scalar::Exact(r) => match r.qth_root() {
                Some(w) => Ok(Scalar::Exact(w)),
                None => {
                    let prec = r.field().work_prec();
                    let s = LaurentSeries::from_ratfunc(r, prec);
                    Ok(Scalar::Series(s.qth_root()?))
                }
            },
            Scalar::Series(s) => Ok(Scalar::Series(s.qth_root()?)),
        }
    }

    /// Compare two scalars. Exact pairs compare exactly (precision `None`);
    /// otherwise the difference is tested at its tracked precision.
    pub fn agree(&self, other: &Scalar) -> (bool, Option<Ratio<i64>>) {
        match self.sub(other) {
            Scalar::Exact(d) => (d.is_zero(), None),
            Scalar::Series(d) => (d.is_zero(), Some(d.prec_abs())),
        }
    }
}

/// Smaller of two optional precisions, `None` meaning exact.
pub fn min_prec(a: Option<Ratio<i64>>, b: Option<Ratio<i64>>) -> Option<Ratio<i64>> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &Field, c: &[u32]) -> FqPoly {
        FqPoly::from_coeffs(f, c.iter().map(|&i| f.elem(i).unwrap()).collect())
    }

    #[test]
    fn promotion_keeps_precision_of_series() {
        let f = Field::new(2, 1).unwrap();
        let r = Scalar::Exact(RatFunc::recip_poly(&poly(&f, &[0, 1, 1])).unwrap());
        let s = Scalar::Series(LaurentSeries::from_poly(&poly(&f, &[0, 0, 1]), 10));
        let prod = r.mul(&s);
        // (1/(x^2+x)) * x^2 = x/(1+x), known to x^9
        let expected = LaurentSeries::from_ratfunc(&RatFunc::new(poly(&f, &[0, 1]), poly(&f, &[1, 1])).unwrap(), 9);
        assert_eq!(prod, Scalar::Series(expected));
        let sum = r.add(&s);
        assert_eq!(sum.precision(), Some(Ratio::from_integer(10)));
    }

    #[test]
    fn exact_root_or_series_root() {
        let f = Field::new(3, 1).unwrap().with_ram_cap(9);
        let a = Scalar::from(poly(&f, &[1, 0, 0, 2]));
        assert_eq!(a.qth_root().unwrap(), Scalar::from(poly(&f, &[1, 2])));
        let b = Scalar::from(poly(&f, &[0, 2, 0, 1]));
        let w = b.qth_root().unwrap();
        assert!(!w.is_exact());
        assert!(w.frobenius().agree(&b).0);
    }

    #[test]
    fn exact_zero_annihilates_series() {
        let f = Field::new(2, 1).unwrap();
        let s = Scalar::Series(LaurentSeries::from_poly(&poly(&f, &[1, 1]), 4));
        assert_eq!(Scalar::zero(&f).mul(&s), Scalar::zero(&f));
        assert_eq!(s.agree(&s), (true, Some(Ratio::from_integer(4))));
    }
}
