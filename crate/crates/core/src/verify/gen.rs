//! Random inputs for the suites, with their serialized forms.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::algebra::{Field, Fq, FqPoly, LaurentSeries, RatFunc, Scalar};
use crate::carlitz::m_seq;
use crate::format::scalar_to_json;
use crate::space::CarlitzCoeffs;

pub fn fq(rng: &mut ChaCha8Rng, field: &Field) -> Fq {
    field.enumerate()[rng.gen_range(0..field.q() as usize)]
}

pub fn nonzero_fq(rng: &mut ChaCha8Rng, field: &Field) -> Fq {
    field.enumerate()[rng.gen_range(1..field.q() as usize)]
}

/// Uniform over polynomials of degree `< len`.
pub fn poly(rng: &mut ChaCha8Rng, field: &Field, len: usize) -> FqPoly {
    FqPoly::from_coeffs(field, (0..len).map(|_| fq(rng, field)).collect())
}

/// `x^v u` with `u` a random polynomial with nonzero constant term and
/// degree `< len`.
pub fn with_val(rng: &mut ChaCha8Rng, field: &Field, v: usize, len: usize) -> FqPoly {
    let mut c: Vec<Fq> = vec![Fq::ZERO; v];
    c.push(nonzero_fq(rng, field));
    c.extend((1..len.max(1)).map(|_| fq(rng, field)));
    FqPoly::from_coeffs(field, c)
}

/// A scalar with `|c| <= 1`: zero, a polynomial, or a polynomial over a
/// unit denominator `1 + x r`.
pub fn integral_scalar(rng: &mut ChaCha8Rng, field: &Field) -> Scalar {
    match rng.gen_range(0..6) {
        0 => Scalar::zero(field),
        1 => {
            let num = poly(rng, field, 4);
            let den = FqPoly::one(field).add(&poly(rng, field, 2).shift(1));
            Scalar::Exact(RatFunc::new(num, den).expect("unit denominator"))
        }
        _ => {
            let v = rng.gen_range(0..3);
            Scalar::from(with_val(rng, field, v, 3))
        }
    }
}

pub fn coeffs(rng: &mut ChaCha8Rng, field: &Field, m: usize) -> CarlitzCoeffs {
    CarlitzCoeffs::new(field, (0..m).map(|_| integral_scalar(rng, field)).collect())
}

/// A series with valuation `v`, known to `x^prec`, whose terms below
/// `x^prec` are random.
pub fn series_with_val(rng: &mut ChaCha8Rng, field: &Field, v: usize, prec: i64) -> LaurentSeries {
    let len = (prec as usize).saturating_sub(v).max(1);
    LaurentSeries::from_poly(&with_val(rng, field, v, len), prec)
}

pub fn coeffs_json(c: &CarlitzCoeffs) -> Value {
    Value::Array(c.coeffs().iter().map(scalar_to_json).collect())
}

/// The first `count` residues `m_0, m_1, ...`; these run through every
/// polynomial of degree `< k` when `count = q^k`.
pub fn residues(field: &Field, count: u64) -> Vec<FqPoly> {
    let e = field.enumerate();
    (0..count).map(|j| m_seq(field, &e, j)).collect()
}
