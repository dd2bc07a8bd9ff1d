//! Sup-norm of `sum c_i f_i` over every residue of bounded degree.

use num_rational::Ratio;

use crate::algebra::{AbsVal, Fq, FqPoly, LaurentSeries, Scalar};
use crate::carlitz::{m_seq, CarlitzCache};
use crate::error::{Error, Result};

use super::coeffs::CarlitzCoeffs;

/// Largest window (in x-exponent units) the sampler will widen to before
/// giving up on finding a nonzero value.
const MAX_WINDOW: i64 = 1 << 12;

/// `max |phi(t)|` over all `t` in F_q[x] with `deg t < bound`.
///
/// `phi` is F_q-linear, so only `phi(x^k)` for `k < bound` is evaluated
/// exactly; every other value is assembled from those. The values are
/// compared as series modulo `x^K`, widening `K` until some value is
/// nonzero.
pub fn sampled_norm(cache: &CarlitzCache, c: &CarlitzCoeffs, bound: usize) -> Result<AbsVal> {
    let field = cache.field();
    let basis: Vec<Scalar> =
        (0..bound).map(|k| c.eval(cache, &Scalar::from(FqPoly::monomial(field, Fq::ONE, k)))).collect::<Result<_>>()?;
    let Some(floor) = basis.iter().filter_map(|v| v.abs_val().exponent()).min() else {
        return Ok(AbsVal::Zero);
    };
    let cap = basis.iter().filter_map(Scalar::precision).min();
    let mut width = Ratio::from_integer(1);
    loop {
        let mut k = floor + width;
        if let Some(cap) = cap {
            k = k.min(cap);
        }
        let series: Vec<LaurentSeries> = basis.iter().map(|v| v.to_series(k)).collect();
        if let Some(best) = max_over_combinations(field.enumerate().as_slice(), &series) {
            return Ok(best);
        }
        if cap.is_some_and(|cap| k >= cap) || width > Ratio::from_integer(MAX_WINDOW) {
            return Err(Error::PrecisionExhausted(format!("every sampled value vanishes modulo x^{k}")));
        }
        width *= 2;
    }
}

/// Largest absolute value among the nonzero `sum_k a_k s_k`, or `None` if
/// all of them vanish at the available precision. Walks the combinations
/// as an odometer so each step is a single series addition.
fn max_over_combinations(elems: &[Fq], s: &[LaurentSeries]) -> Option<AbsVal> {
    let field = s.first()?.field().clone();
    let q = elems.len();
    let n = s.len();
    let mut digits = vec![0usize; n];
    let mut acc = s[0].scale(Fq::ZERO);
    let mut best: Option<AbsVal> = None;
    let step: Vec<Vec<LaurentSeries>> = s
        .iter()
        .map(|v| {
            (0..q)
                .map(|d| {
                    let next = elems[(d + 1) % q];
                    v.scale(field.sub(next, elems[d]))
                })
                .collect()
        })
        .collect();
    loop {
        if !acc.is_zero() {
            let a = acc.abs_val();
            best = Some(best.map_or(a, |b| b.max(a)));
        }
        let mut k = 0;
        loop {
            if k == n {
                return best;
            }
            acc = acc.add(&step[k][digits[k]]);
            digits[k] = (digits[k] + 1) % q;
            if digits[k] != 0 {
                break;
            }
            k += 1;
        }
    }
}

/// The same supremum by evaluating `phi` at each residue separately.
pub fn sampled_norm_direct(cache: &CarlitzCache, c: &CarlitzCoeffs, bound: usize) -> Result<AbsVal> {
    let field = cache.field();
    let total = (field.q() as u64).pow(bound as u32);
    let enumeration = field.enumerate();
    let mut best = AbsVal::Zero;
    for j in 0..total {
        let v = c.eval(cache, &Scalar::from(m_seq(field, &enumeration, j)))?;
        if !v.is_exact() && v.is_zero() {
            return Err(Error::PrecisionExhausted(format!("value at residue {j} vanishes at its precision")));
        }
        best = best.max(v.abs_val());
    }
    Ok(best)
}
