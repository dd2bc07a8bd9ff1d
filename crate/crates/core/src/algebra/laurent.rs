//! Truncated Laurent series in `x^(1/d)` over F_q with per-value precision.
//!
//! A series with denominator `d`, lowest index `val` and precision `prec`
//! stands for `sum_k coeffs[k] x^((val + k)/d) + O(x^(prec/d))`. Coefficients
//! are stored densely up to the precision, so `val + coeffs.len() == prec`.
//! A series whose stored coefficients are all zero is "zero at precision
//! `prec`"; it is kept with `val == prec` and no coefficients.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use super::absval::AbsVal;
use super::field::{Field, Fq};
use super::poly::FqPoly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: Field,
    denom: u64,
    val: i64,
    coeffs: Vec<Fq>,
    prec: i64,
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::laurent_to_string(self))
    }
}

impl LaurentSeries {
    /// Build from coefficients starting at index `start`, known modulo
    /// `x^(prec/denom)`. Coefficients at or beyond `prec` are dropped.
    pub fn from_terms(field: &Field, denom: u64, start: i64, coeffs: Vec<Fq>, prec: i64) -> LaurentSeries {
        assert!(denom >= 1, "denominator must be positive");
        let mut s = LaurentSeries { field: field.clone(), denom, val: start, coeffs, prec };
        s.normalize();
        s
    }

    /// Zero known modulo `x^prec` (denominator 1).
    pub fn zero(field: &Field, prec: i64) -> LaurentSeries {
        LaurentSeries { field: field.clone(), denom: 1, val: prec, coeffs: Vec::new(), prec }
    }

    /// `c * x^(e/denom) + O(x^(prec/denom))`.
    pub fn monomial(field: &Field, c: Fq, e: i64, denom: u64, prec: i64) -> LaurentSeries {
        LaurentSeries::from_terms(field, denom, e, vec![c], prec)
    }

    pub fn from_poly(p: &FqPoly, prec: i64) -> LaurentSeries {
        LaurentSeries::from_terms(p.field(), 1, 0, p.coeffs().to_vec(), prec)
    }

    /// Expansion of a rational function at x = 0 modulo `x^prec`.
    pub fn from_ratfunc(r: &RatFunc, prec: i64) -> LaurentSeries {
        let field = r.field();
        let Some(v) = r.x_order() else {
            return LaurentSeries::zero(field, prec);
        };
        if v >= prec {
            return LaurentSeries::zero(field, prec);
        }
        let n = (prec - v) as usize;
        let vn = r.num().x_order().unwrap();
        let vd = r.den().x_order().unwrap();
        let num: Vec<Fq> = r.num().coeffs()[vn..].iter().copied().take(n).collect();
        let den: Vec<Fq> = r.den().coeffs()[vd..].iter().copied().take(n).collect();
        let inv = unit_inverse(field, &den, n);
        let prod = FqPoly::from_coeffs(field, num).mul(&FqPoly::from_coeffs(field, inv));
        let coeffs: Vec<Fq> = prod.coeffs().iter().copied().take(n).collect();
        LaurentSeries::from_terms(field, 1, v, coeffs, prec)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(k) if self.val + (k as i64) < self.prec => {
                self.coeffs.drain(..k);
                self.val += k as i64;
                let len = (self.prec - self.val) as usize;
                self.coeffs.resize(len, Fq::ZERO);
            }
            _ => {
                self.coeffs.clear();
                self.val = self.prec;
            }
        }
        self.reduce_denom();
    }

    /// Lower the denominator while that loses nothing: every stored nonzero
    /// exponent and the precision must be divisible by q.
    fn reduce_denom(&mut self) {
        let q = self.field.q() as u64;
        while self.denom % q == 0 && self.denom > 1 {
            let qi = q as i64;
            let ok = self.prec % qi == 0
                && self.coeffs.iter().enumerate().all(|(k, c)| c.is_zero() || (self.val + k as i64) % qi == 0);
            if !ok {
                break;
            }
            if self.coeffs.is_empty() {
                self.val = self.prec / qi;
            } else {
                let coeffs: Vec<Fq> = self.coeffs.iter().step_by(q as usize).copied().collect();
                self.coeffs = coeffs;
                self.val /= qi;
            }
            self.prec /= qi;
            self.denom /= q;
            let len = (self.prec - self.val) as usize;
            self.coeffs.resize(len, Fq::ZERO);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn denom(&self) -> u64 {
        self.denom
    }
    /// Lowest stored index, in units of `x^(1/denom)`.
    pub fn val(&self) -> i64 {
        self.val
    }
    pub fn prec(&self) -> i64 {
        self.prec
    }
    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    /// Precision as an absolute exponent of x.
    pub fn prec_abs(&self) -> Ratio<i64> {
        Ratio::new(self.prec, self.denom as i64)
    }

    /// Lowest exponent as an absolute exponent of x; `None` when zero at
    /// its precision.
    pub fn valuation(&self) -> Option<Ratio<i64>> {
        if self.is_zero() {
            None
        } else {
            Some(Ratio::new(self.val, self.denom as i64))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `|z| = q^(-val/denom)`, or `AbsVal::Zero` when nothing is nonzero at
    /// the tracked precision.
    pub fn abs_val(&self) -> AbsVal {
        match self.valuation() {
            None => AbsVal::Zero,
            Some(v) => AbsVal::Exp(v),
        }
    }

    /// Coefficient of `x^(index/denom)`.
    pub fn coeff_at(&self, index: i64) -> Fq {
        if index < self.val || index >= self.prec {
            return Fq::ZERO;
        }
        self.coeffs[(index - self.val) as usize]
    }

    /// Nonzero terms as `(index, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Fq)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, &c)| (self.val + k as i64, c))
    }

    /// Re-express over denominator `d`, a multiple of the current one.
    pub fn with_denom(&self, d: u64) -> LaurentSeries {
        assert!(d % self.denom == 0, "denominator {d} is not a multiple of {}", self.denom);
        if d == self.denom {
            return self.clone();
        }
        let m = (d / self.denom) as i64;
        let mut coeffs = vec![Fq::ZERO; ((self.prec - self.val) * m) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * m as usize] = *c;
        }
        LaurentSeries { field: self.field.clone(), denom: d, val: self.val * m, coeffs, prec: self.prec * m }
    }

    /// Forget everything from `x^(prec/denom)` on.
    pub fn truncate(&self, prec: i64) -> LaurentSeries {
        if prec >= self.prec {
            return self.clone();
        }
        let keep: Vec<Fq> =
            if prec > self.val { self.coeffs[..(prec - self.val) as usize].to_vec() } else { Vec::new() };
        LaurentSeries::from_terms(&self.field, self.denom, self.val.min(prec), keep, prec)
    }

    /// Truncate to an absolute precision `x^p`, rounding down to this
    /// series' grid.
    pub fn truncate_abs(&self, p: Ratio<i64>) -> LaurentSeries {
        let idx = (p * Ratio::from_integer(self.denom as i64)).floor().to_integer();
        self.truncate(idx)
    }

    fn common_denom(&self, other: &LaurentSeries) -> u64 {
        self.denom.lcm(&other.denom)
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        let d = self.common_denom(other);
        let (a, b) = (self.with_denom(d), other.with_denom(d));
        let prec = a.prec.min(b.prec);
        let start = a.val.min(b.val).min(prec);
        let f = &self.field;
        let coeffs = (start..prec).map(|k| f.add(a.coeff_at(k), b.coeff_at(k))).collect();
        LaurentSeries::from_terms(f, d, start, coeffs, prec)
    }

    pub fn neg(&self) -> LaurentSeries {
        let f = &self.field;
        LaurentSeries { coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &LaurentSeries) -> LaurentSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fq) -> LaurentSeries {
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|&a| f.mul(a, c)).collect();
        LaurentSeries::from_terms(f, self.denom, self.val, coeffs, self.prec)
    }

    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        let d = self.common_denom(other);
        let (a, b) = (self.with_denom(d), other.with_denom(d));
        let prec = (a.val + b.prec).min(b.val + a.prec);
        let val = a.val + b.val;
        if a.is_zero() || b.is_zero() || val >= prec {
            return LaurentSeries::zero(&self.field, prec).with_denom_exact(d);
        }
        let n = (prec - val) as usize;
        let pa = FqPoly::from_coeffs(&self.field, a.coeffs.iter().copied().take(n).collect());
        let pb = FqPoly::from_coeffs(&self.field, b.coeffs.iter().copied().take(n).collect());
        let prod = pa.mul(&pb);
        let coeffs = prod.coeffs().iter().copied().take(n).collect();
        LaurentSeries::from_terms(&self.field, d, val, coeffs, prec)
    }

    // Zero-at-precision values carry their precision in the given units.
    fn with_denom_exact(mut self, d: u64) -> LaurentSeries {
        self.denom = d;
        self.reduce_denom();
        self
    }

    /// Multiplicative inverse; the relative precision is preserved.
    pub fn inv(&self) -> Result<LaurentSeries> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = (self.prec - self.val) as usize;
        let inv = unit_inverse(&self.field, &self.coeffs, n);
        Ok(LaurentSeries::from_terms(&self.field, self.denom, -self.val, inv, -self.val + n as i64))
    }

    pub fn div(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u64) -> LaurentSeries {
        if e == 0 {
            let rel = (self.prec - self.val).max(0);
            return LaurentSeries::monomial(&self.field, Fq::ONE, 0, self.denom, rel);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `z^q`: coefficients are fixed by the q-power map, so only exponents
    /// scale. A denominator divisible by q absorbs the factor exactly.
    pub fn frobenius(&self) -> LaurentSeries {
        let q = self.field.q() as u64;
        if self.denom % q == 0 {
            let mut s = self.clone();
            s.denom /= q;
            s.reduce_denom();
            return s;
        }
        let qi = q as i64;
        let mut coeffs = vec![Fq::ZERO; ((self.prec - self.val) * qi) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * q as usize] = *c;
        }
        LaurentSeries { field: self.field.clone(), denom: self.denom, val: self.val * qi, coeffs, prec: self.prec * qi }
    }

    pub fn frobenius_pow(&self, j: u32) -> LaurentSeries {
        (0..j).fold(self.clone(), |acc, _| acc.frobenius())
    }

    /// The unique `w` with `w^q = z`. Coefficients are fixed by the q-th
    /// root, so `x^(e/d)` maps to `x^(e/(dq))`. When `dq` would exceed the
    /// ramification cap but every exponent is a multiple of q, the root is
    /// taken on the coarser grid with the precision rounded down.
    pub fn qth_root(&self) -> Result<LaurentSeries> {
        let q = self.field.q() as u64;
        let cap = self.field.ram_cap();
        let new_denom = self.denom * q;
        if new_denom <= cap {
            let mut s = self.clone();
            s.denom = new_denom;
            s.reduce_denom();
            return Ok(s);
        }
        let qi = q as i64;
        if self.terms().all(|(k, _)| k % qi == 0) {
            let prec = self.prec.div_euclid(qi);
            let start = self.val.div_euclid(qi).min(prec);
            let mut coeffs = vec![Fq::ZERO; (prec - start) as usize];
            for (k, c) in self.terms() {
                if k / qi < prec {
                    coeffs[(k / qi - start) as usize] = c;
                }
            }
            return Ok(LaurentSeries::from_terms(&self.field, self.denom, start, coeffs, prec));
        }
        Err(Error::RamificationBudget { needed: new_denom, cap })
    }

    /// Compare on the common precision. Returns whether the two agree and the
    /// absolute precision at which the comparison was made.
    pub fn eq_at_prec(&self, other: &LaurentSeries) -> (bool, Ratio<i64>) {
        let d = self.common_denom(other);
        let (a, b) = (self.with_denom(d), other.with_denom(d));
        let prec = a.prec.min(b.prec);
        let lo = a.val.min(b.val);
        let equal = (lo..prec).all(|k| a.coeff_at(k) == b.coeff_at(k));
        (equal, Ratio::new(prec, d as i64))
    }

    /// Agreement on the common precision, which must reach at least `target`.
    pub fn agrees_to(&self, other: &LaurentSeries, target: Ratio<i64>) -> bool {
        let (eq, p) = self.eq_at_prec(other);
        eq && p >= target
    }
}

/// Inverse modulo `x^n` of a series with nonzero constant term.
fn unit_inverse(field: &Field, a: &[Fq], n: usize) -> Vec<Fq> {
    let a0_inv = field.inv(a[0]).expect("unit constant term");
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut s = if k == 0 { Fq::ONE } else { Fq::ZERO };
        for i in 1..=k.min(a.len().saturating_sub(1)) {
            s = field.sub(s, field.mul(a[i], out[k - i]));
        }
        out.push(field.mul(s, a0_inv));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &Field, c: &[u32]) -> FqPoly {
        FqPoly::from_coeffs(f, c.iter().map(|&i| f.elem(i).unwrap()).collect())
    }

    #[test]
    fn expand_recip_of_bracket() {
        // 1/(x^2 + x) = x^-1 (1 + x + x^2 + ...) in characteristic 2
        let f = Field::new(2, 1).unwrap();
        let r = RatFunc::recip_poly(&poly(&f, &[0, 1, 1])).unwrap();
        let s = LaurentSeries::from_ratfunc(&r, 3);
        assert_eq!(s.val(), -1);
        assert_eq!(s.prec(), 3);
        assert_eq!(s.coeffs(), &[Fq::ONE; 4]);
    }

    #[test]
    fn exact_cancellation_and_identity() {
        let f = Field::new(2, 1).unwrap();
        let r = RatFunc::new(poly(&f, &[0, 1, 1]), poly(&f, &[0, 1])).unwrap();
        let s = LaurentSeries::from_ratfunc(&r, 4);
        assert_eq!((s.val(), s.prec(), s.coeffs().len()), (0, 4, 4));
        assert_eq!(&s.coeffs()[..2], &[Fq::ONE, Fq::ONE]);
        let x = LaurentSeries::from_poly(&poly(&f, &[0, 1]), 5);
        assert_eq!(x.valuation(), Some(Ratio::from_integer(1)));
    }

    #[test]
    fn qth_root_of_bracket_is_ramified() {
        // (x^2 + x)^(1/2) = x^(1/2) + x over F_2
        let f = Field::new(2, 1).unwrap();
        let z = LaurentSeries::from_poly(&poly(&f, &[0, 1, 1]), 16);
        let w = z.qth_root().unwrap();
        assert_eq!(w.denom(), 2);
        assert_eq!(w.val(), 1);
        assert_eq!(w.coeff_at(1), Fq::ONE);
        assert_eq!(w.coeff_at(2), Fq::ONE);
        assert_eq!(w.coeff_at(3), Fq::ZERO);
        assert!(w.frobenius().eq_at_prec(&z).0);
        assert_eq!(w.mul(&w).eq_at_prec(&z), (true, Ratio::new(17, 2)));
    }

    #[test]
    fn perfect_square_root_stays_unramified() {
        let f = Field::new(2, 1).unwrap();
        let z = LaurentSeries::from_poly(&poly(&f, &[0, 0, 1]), 8);
        let w = z.qth_root().unwrap();
        assert_eq!((w.denom(), w.val(), w.prec()), (1, 1, 4));
    }

    #[test]
    fn frobenius_absorbs_denominator() {
        let f = Field::new(3, 1).unwrap();
        let z = LaurentSeries::monomial(&f, Fq::ONE, 1, 3, 30);
        let w = z.frobenius();
        assert_eq!((w.denom(), w.val()), (1, 1));
    }

    #[test]
    fn ramification_cap_is_enforced() {
        let f = Field::new(2, 1).unwrap().with_ram_cap(2);
        let z = LaurentSeries::from_poly(&poly(&f, &[0, 1]), 8);
        let w = z.qth_root().unwrap();
        assert_eq!(w.qth_root(), Err(Error::RamificationBudget { needed: 4, cap: 2 }));
    }

    #[test]
    fn precision_rules() {
        let f = Field::new(3, 1).unwrap();
        let a = LaurentSeries::from_terms(&f, 1, 1, vec![Fq::ONE; 4], 5);
        let b = LaurentSeries::from_terms(&f, 1, 2, vec![Fq::ONE; 8], 10);
        assert_eq!(a.add(&b).prec(), 5);
        assert_eq!(a.mul(&b).prec(), (1 + 10).min(2 + 5));
        let inv = b.inv().unwrap();
        assert!(inv.mul(&b).eq_at_prec(&LaurentSeries::monomial(&f, Fq::ONE, 0, 1, 100)).0);
    }
}
