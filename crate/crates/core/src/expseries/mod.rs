//! The Carlitz exponential, its formal inverse, and the expansion of
//! `w_z(t) = e_C(tz)` in the Carlitz basis.
//!
//! All truncation decisions are made by exponent arithmetic before any
//! summation: the term sizes are known exactly from valuations, so each
//! result carries the precision to which it is certified.

use std::ops::Deref;

use num_rational::Ratio;

use crate::algebra::{LaurentSeries, RatFunc, Scalar};
use crate::carlitz::{CarlitzCache, LinearPoly};
use crate::error::{Error, Result};
use crate::space::{delta_n, CarlitzCoeffs};

type Q = Ratio<i64>;

fn int(n: i64) -> Q {
    Q::from_integer(n)
}

/// A truncated series value and what is known about it.
#[derive(Clone, Debug)]
pub struct Certified {
    pub value: LaurentSeries,
    /// Index of the last term summed.
    pub terms: usize,
    /// Valuation of the first omitted term (`None` when every further term
    /// vanishes).
    pub tail: Option<Q>,
    /// Absolute precision at which `value` is correct.
    pub precision: Q,
}

/// Beyond this many terms the exponent arithmetic is not worth pursuing.
const MAX_TERMS: usize = 24;

fn unramified_val(z: &LaurentSeries) -> Result<Option<i64>> {
    if z.denom() != 1 {
        return Err(Error::Domain("argument must be an unramified series (denominator 1)".into()));
    }
    Ok(if z.is_zero() { None } else { Some(z.val()) })
}

fn domain_exp(q: i64, v: i64) -> Result<()> {
    // |z| < q^(-1/(q-1))  <=>  v (q - 1) > 1
    if v * (q - 1) <= 1 {
        return Err(Error::Domain(format!("|z| >= q^(-1/(q-1)) (valuation {v}, q = {q})")));
    }
    Ok(())
}

/// The given cache, or a deeper one when it is too shallow.
enum Depth<'a> {
    Borrowed(&'a CarlitzCache),
    Owned(Box<CarlitzCache>),
}

impl Deref for Depth<'_> {
    type Target = CarlitzCache;
    fn deref(&self) -> &CarlitzCache {
        match self {
            Depth::Borrowed(c) => c,
            Depth::Owned(c) => c,
        }
    }
}

fn cache_for(cache: &CarlitzCache, depth: usize) -> Result<Depth<'_>> {
    if depth <= cache.imax() {
        Ok(Depth::Borrowed(cache))
    } else {
        Ok(Depth::Owned(Box::new(CarlitzCache::new(cache.field(), depth)?)))
    }
}

/// `z^(q^j) * r` with `z` truncated first so the Frobenius stays cheap;
/// known to absolute precision at least `target` when possible.
fn frob_times(z: &LaurentSeries, j: usize, r: &RatFunc, target: Q) -> LaurentSeries {
    let qj = (z.field().q() as i64).pow(j as u32);
    let vr = r.x_order().unwrap_or(0);
    let keep = ((target - vr) / qj).ceil().to_integer() + 1;
    let zj = z.truncate(keep).frobenius_pow(j as u32);
    Scalar::Series(zj).mul(&Scalar::Exact(r.clone())).to_series(target)
}

/// `sum_j c_j z^(q^j)` for `j <= n`, the coefficients given as rational
/// functions; each term is computed to `target`.
fn sum_terms(z: &LaurentSeries, coeffs: &[RatFunc], target: Q) -> LaurentSeries {
    let mut acc = LaurentSeries::zero(z.field(), target.ceil().to_integer());
    // Highest terms first; the order is immaterial in exact arithmetic.
    for (j, c) in coeffs.iter().enumerate().rev() {
        acc = acc.add(&frob_times(z, j, c, target));
    }
    acc
}

/// Valuation of term `j` of `e_C(z)`: `q^j v - (q^j - 1)/(q - 1)`.
pub fn exp_term_val(q: i64, v: i64, j: usize) -> i64 {
    let qj = q.pow(j as u32);
    qj * v - (qj - 1) / (q - 1)
}

/// Valuation of term `n` of `rho(zeta)`: `q^n v - n`.
pub fn rho_term_val(q: i64, v: i64, n: usize) -> i64 {
    q.pow(n as u32) * v - n as i64
}

fn choose_terms(target: Q, term_val: impl Fn(usize) -> i64) -> Result<usize> {
    let mut n = 0;
    while int(term_val(n + 1)) < target {
        n += 1;
        if n >= MAX_TERMS {
            return Err(Error::PrecisionExhausted(format!("more than {MAX_TERMS} terms needed for x^{target}")));
        }
    }
    Ok(n)
}

/// `e_C(z) = sum z^(q^j) / D_j`, summed far enough that the first omitted
/// term lies at or beyond `x^target`.
pub fn carlitz_exp(cache: &CarlitzCache, z: &LaurentSeries, target: Q) -> Result<Certified> {
    let q = cache.field().q() as i64;
    let Some(v) = unramified_val(z)? else {
        let p = target.min(z.prec_abs());
        return Ok(Certified { value: z.truncate_abs(p), terms: 0, tail: None, precision: p });
    };
    domain_exp(q, v)?;
    let n = choose_terms(target, |j| exp_term_val(q, v, j))?;
    carlitz_exp_n(cache, z, n, target)
}

/// `e_C(z)` with exactly `n + 1` terms; refuses if those do not reach
/// `target`.
pub fn carlitz_exp_n(cache: &CarlitzCache, z: &LaurentSeries, n: usize, target: Q) -> Result<Certified> {
    let q = cache.field().q() as i64;
    let Some(v) = unramified_val(z)? else {
        let p = target.min(z.prec_abs());
        return Ok(Certified { value: z.truncate_abs(p), terms: n, tail: None, precision: p });
    };
    domain_exp(q, v)?;
    let tail = int(exp_term_val(q, v, n + 1));
    if tail < target {
        return Err(Error::PrecisionExhausted(format!(
            "{} terms of e_C reach only x^{tail}, short of x^{target}",
            n + 1
        )));
    }
    let cache = cache_for(cache, n)?;
    let coeffs: Vec<RatFunc> = (0..=n).map(|j| RatFunc::recip_poly(cache.d(j))).collect::<Result<_>>()?;
    let value = sum_terms(z, &coeffs, target);
    let precision = value.prec_abs().min(target);
    Ok(Certified { value: value.truncate_abs(precision), terms: n, tail: Some(tail), precision })
}

/// `rho(zeta) = sum (-1)^n zeta^(q^n) / L_n`. Also checks
/// `|rho(zeta)| <= max(|zeta|, q |zeta|^q)` and, on the domain of `e_C`,
/// `|rho(zeta)| < q^(-1/(q-1))`.
pub fn rho(cache: &CarlitzCache, zeta: &LaurentSeries, target: Q) -> Result<Certified> {
    let field = cache.field();
    let q = field.q() as i64;
    let Some(v) = unramified_val(zeta)? else {
        let p = target.min(zeta.prec_abs());
        return Ok(Certified { value: zeta.truncate_abs(p), terms: 0, tail: None, precision: p });
    };
    if v < 1 {
        return Err(Error::Domain(format!("|zeta| >= 1 (valuation {v})")));
    }
    let n = choose_terms(target, |k| rho_term_val(q, v, k))?;
    let cache = cache_for(cache, n)?;
    let coeffs: Vec<RatFunc> =
        (0..=n).map(|k| Ok(RatFunc::recip_poly(cache.l(k))?.scale(field.sign(k)))).collect::<Result<_>>()?;
    let value = sum_terms(zeta, &coeffs, target);
    let precision = value.prec_abs().min(target);
    let value = value.truncate_abs(precision);
    let bound = v.min(q * v - 1);
    if let Some(w) = value.valuation() {
        if w < int(bound) {
            return Err(Error::Inconsistent(format!("|rho(zeta)| = q^(-{w}) exceeds the bound q^(-{bound})")));
        }
        if v * (q - 1) > 1 && w * (q - 1) <= int(1) {
            return Err(Error::Inconsistent("rho(zeta) left the domain of e_C".into()));
        }
    } else if precision < int(bound) {
        return Err(Error::PrecisionExhausted("rho(zeta) vanishes below its bound".into()));
    }
    Ok(Certified { value, terms: n, tail: Some(int(rho_term_val(q, v, n + 1))), precision })
}

/// Outcome of `e_C(rho(zeta)) = zeta`.
#[derive(Clone, Debug)]
pub struct InverseReport {
    pub equal: bool,
    pub precision: Q,
    pub rho: Certified,
    pub exp: Certified,
}

pub fn verify_inverse(cache: &CarlitzCache, zeta: &LaurentSeries, target: Q) -> Result<InverseReport> {
    let q = cache.field().q() as i64;
    if let Some(v) = unramified_val(zeta)? {
        domain_exp(q, v)?;
    }
    let r = rho(cache, zeta, target)?;
    let e = carlitz_exp(cache, &r.value, target)?;
    let (equal, p) = e.value.eq_at_prec(zeta);
    let precision = p.min(target);
    Ok(InverseReport { equal: equal && precision >= target, precision, rho: r, exp: e })
}

/// `b_n = e_C(z)^(q^n)` for `n < m`, with `e_C(z)` certified to `target`.
pub fn wz_coeffs(cache: &CarlitzCache, z: &LaurentSeries, m: usize, target: Q) -> Result<CarlitzCoeffs> {
    let e = carlitz_exp(cache, z, target)?;
    let coeffs = (0..m).map(|n| Scalar::Series(e.value.frobenius_pow(n as u32))).collect();
    Ok(CarlitzCoeffs::new(cache.field(), coeffs))
}

/// Two-route check of the expansion at one point.
#[derive(Clone, Debug)]
pub struct WzCheck {
    pub agree: bool,
    /// Valuation bound for the omitted terms `n >= m`.
    pub tail: Option<Q>,
    /// Precision at which the two sides were compared.
    pub precision: Q,
    pub expansion: LaurentSeries,
    pub direct: LaurentSeries,
}

/// Compare `sum_{n<m} e_C(z)^(q^n) f_n(t)` with `e_C(tz)`.
pub fn wz_check(cache: &CarlitzCache, z: &LaurentSeries, t: &Scalar, m: usize, target: Q) -> Result<WzCheck> {
    let q = cache.field().q() as i64;
    let b = wz_coeffs(cache, z, m, target)?;
    let deep = cache_for(cache, m.saturating_sub(1))?;
    let lhs = b.eval(&deep, t)?.to_series(target);
    let tz = Scalar::Series(z.clone()).mul(t).to_series(target);
    let rhs = carlitz_exp(cache, &tz, target)?.value;
    let tail = z.valuation().map(|v| v * q.pow(m as u32));
    let mut precision = lhs.prec_abs().min(rhs.prec_abs());
    if let Some(tail) = tail {
        precision = precision.min(tail);
    }
    let agree = lhs.truncate_abs(precision).eq_at_prec(&rhs.truncate_abs(precision)).0;
    Ok(WzCheck { agree, tail, precision, expansion: lhs, direct: rhs })
}

/// `e_C^(N)(t) = sum_{j<=N} t^(q^j) / D_j` as an additive polynomial.
pub fn exp_partial(cache: &CarlitzCache, n: usize) -> Result<LinearPoly> {
    let cache = cache_for(cache, n)?;
    let coeffs = (0..=n).map(|j| Ok(Scalar::Exact(RatFunc::recip_poly(cache.d(j))?))).collect::<Result<_>>()?;
    Ok(LinearPoly::from_coeffs(cache.field(), coeffs))
}

/// `b_n^(N) = Delta^(n) e_C^(N)` for `n = 0..=N`, each paired with
/// `(e_C^(N-n))^(q^n)`; the two must coincide as additive polynomials.
pub fn wz_partial_coeffs(cache: &CarlitzCache, big_n: usize) -> Result<Vec<(LinearPoly, LinearPoly)>> {
    let full = exp_partial(cache, big_n)?;
    (0..=big_n)
        .map(|n| {
            let lhs = delta_n(&full, n);
            let rhs = exp_partial(cache, big_n - n)?.frobenius_pow(n as u32);
            Ok((lhs, rhs))
        })
        .collect()
}

/// Outcome of the pointwise check of a coherent state against the
/// exponential.
#[derive(Clone, Debug)]
pub struct CoherentCheck {
    pub agree: bool,
    pub precision: Q,
    pub tail: Q,
}

/// For `u = sum c_n f_n` with `c_n = mu^(-1) (c0 mu)^(q^n)`, compare `u(t)`
/// with `mu^(-1) e_C(t rho(c))` where `c = c0 mu`.
pub fn coherent_check(
    cache: &CarlitzCache,
    nu: &LaurentSeries,
    c0: &LaurentSeries,
    t: &Scalar,
    m: usize,
    target: Q,
) -> Result<CoherentCheck> {
    let field = cache.field();
    let q = field.q() as i64;
    let mu = nu.frobenius();
    let c = c0.mul(&mu);
    let Some(vc) = unramified_val(&c)? else {
        return Err(Error::Domain("c = c0 nu^q must be nonzero".into()));
    };
    if vc < 2 {
        return Err(Error::Domain(format!("|c| > q^(-2) (valuation {vc})")));
    }
    let vmu = mu.valuation().ok_or(Error::DivisionByZero)?;
    // Work to a precision that leaves `target` after dividing by mu.
    let inner = target + vmu;
    let state = crate::space::coherent_closed_form(&Scalar::Series(nu.clone()), &Scalar::Series(c0.clone()), m)?;
    // |f_n(t)| <= 1, so coefficients beyond x^target cannot matter.
    let state = CarlitzCoeffs::new(field, state.coeffs().iter().map(|c| Scalar::Series(c.to_series(target))).collect());
    let deep = cache_for(cache, m.saturating_sub(1))?;
    let lhs = state.eval(&deep, t)?.to_series(target);
    let z = rho(cache, &c, inner)?;
    let tz = Scalar::Series(z.value.clone()).mul(t).to_series(inner);
    let e = carlitz_exp(cache, &tz, inner)?;
    let rhs = e.value.div(&mu)?;
    let tail = -vmu + int(vc) * q.pow(m as u32);
    let precision = lhs.prec_abs().min(rhs.prec_abs()).min(tail).min(target);
    let agree = lhs.truncate_abs(precision).eq_at_prec(&rhs.truncate_abs(precision)).0;
    Ok(CoherentCheck { agree, precision, tail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Fq, FqPoly};

    fn series(f: &Field, c: &[u32], prec: i64) -> LaurentSeries {
        LaurentSeries::from_poly(&FqPoly::from_coeffs(f, c.iter().map(|&i| f.elem(i).unwrap()).collect()), prec)
    }

    #[test]
    fn exp_of_zero_and_leading_term() {
        let f = Field::new(3, 1).unwrap();
        let cache = CarlitzCache::new(&f, 4).unwrap();
        let zero = LaurentSeries::zero(&f, 20);
        assert!(carlitz_exp(&cache, &zero, int(16)).unwrap().value.is_zero());
        let z = series(&f, &[0, 1, 2], 40);
        let e = carlitz_exp(&cache, &z, int(27)).unwrap();
        assert_eq!(e.value.val(), 1);
        assert_eq!(e.precision, int(27));
        assert!(e.tail.unwrap() >= int(27));
    }

    #[test]
    fn boundary_argument_rejected_for_q2() {
        let f = Field::new(2, 1).unwrap();
        let cache = CarlitzCache::new(&f, 4).unwrap();
        let x = series(&f, &[0, 1], 40);
        assert!(matches!(carlitz_exp(&cache, &x, int(16)), Err(Error::Domain(_))));
        let x2 = series(&f, &[0, 0, 1], 40);
        assert!(carlitz_exp(&cache, &x2, int(16)).is_ok());
    }

    #[test]
    fn exp_reversed_order_is_identical() {
        let f = Field::new(2, 1).unwrap();
        let cache = CarlitzCache::new(&f, 6).unwrap();
        let z = series(&f, &[0, 0, 1, 1], 64);
        let e = carlitz_exp(&cache, &z, int(32)).unwrap();
        let mut acc = LaurentSeries::zero(&f, 32);
        for j in 0..=e.terms {
            let r = RatFunc::recip_poly(cache.d(j)).unwrap();
            acc = acc.add(&frob_times(&z, j, &r, int(32)));
        }
        assert_eq!(acc, e.value);
    }

    #[test]
    fn rho_inverts_exp() {
        for (p, g, target, zc) in [(2, 1, 32, vec![0, 0, 1, 0, 1]), (3, 1, 27, vec![0, 1, 1])] {
            let f = Field::new(p, g).unwrap();
            let cache = CarlitzCache::new(&f, 4).unwrap();
            let zeta = series(&f, &zc, 64);
            let r = verify_inverse(&cache, &zeta, int(target)).unwrap();
            assert!(r.equal, "q = {}", f.q());
            assert_eq!(r.precision, int(target));
        }
    }

    #[test]
    fn partial_identity_small() {
        let f = Field::new(2, 1).unwrap();
        let cache = CarlitzCache::new(&f, 3).unwrap();
        for (lhs, rhs) in wz_partial_coeffs(&cache, 3).unwrap() {
            assert_eq!(lhs, rhs);
        }
        // n = 1: coefficients [j] / D_j
        let pairs = wz_partial_coeffs(&cache, 3).unwrap();
        let c2 = pairs[1].0.coeff(2);
        let want = RatFunc::new(cache.bracket(2).clone(), cache.d(2).clone()).unwrap();
        assert_eq!(c2, Scalar::Exact(want));
        // n = N collapses to t^(q^N)
        assert_eq!(pairs[3].1, LinearPoly::monomial(&f, 3, Scalar::one(&f)));
    }

    #[test]
    fn wz_two_routes() {
        let f = Field::new(3, 1).unwrap();
        let cache = CarlitzCache::new(&f, 8).unwrap();
        let z = series(&f, &[0, 1], 64);
        let t = Scalar::from(FqPoly::from_coeffs(&f, vec![Fq::ONE, Fq::ONE]));
        let chk = wz_check(&cache, &z, &t, 8, int(40)).unwrap();
        assert!(chk.agree);
        assert_eq!(chk.precision, int(40));
    }
}
