//! The digit basis `h_j`, the interpolation basis `Q_j`, and the change of
//! basis between them.

use crate::algebra::{Field, Fq, FqPoly, RatFunc, Scalar};
use crate::error::{Error, Result};

use super::cache::CarlitzCache;
use super::digits::{m_seq, DigitExpansion};
use super::tpoly::TPoly;

/// A polynomial in `t` written as `num(t) / den` with `den` in F_q[x].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisPoly {
    pub num: TPoly,
    pub den: FqPoly,
}

impl BasisPoly {
    pub fn degree(&self) -> Option<u64> {
        self.num.degree()
    }

    pub fn eval(&self, m: &FqPoly) -> Result<RatFunc> {
        RatFunc::new(self.num.eval(m), self.den.clone())
    }
}

fn digits_within(cache: &CarlitzCache, j: u64) -> Result<DigitExpansion> {
    let d = DigitExpansion::new(j, cache.field().q());
    if d.digits().len() > cache.imax() + 1 {
        return Err(Error::Domain(format!("{j} has more base-q digits than the cached depth allows")));
    }
    Ok(d)
}

/// `Gamma_j = prod D_i^(alpha_i)`.
pub fn gamma_j(cache: &CarlitzCache, j: u64) -> Result<FqPoly> {
    let d = digits_within(cache, j)?;
    let mut acc = FqPoly::one(cache.field());
    for (i, &a) in d.digits().iter().enumerate() {
        acc = acc.mul(&cache.d(i).pow(a as u64));
    }
    Ok(acc)
}

/// `h_j = G_j / Gamma_j` with `G_j = prod e_i^(alpha_i)`.
pub fn h_poly(cache: &CarlitzCache, j: u64) -> Result<BasisPoly> {
    let d = digits_within(cache, j)?;
    let mut g = TPoly::one(cache.field());
    for (i, &a) in d.digits().iter().enumerate() {
        if a > 0 {
            g = g.mul(&TPoly::from_linear(&cache.e_poly(i)?)?.pow(a as u64));
        }
    }
    Ok(BasisPoly { num: g, den: gamma_j(cache, j)? })
}

/// `h_n(m)` from the defining product, evaluating each `e_i` at `m`.
pub fn h_value(cache: &CarlitzCache, n: u64, m: &FqPoly) -> Result<RatFunc> {
    let d = digits_within(cache, n)?;
    let arg = Scalar::from(m.clone());
    let mut acc = RatFunc::one(cache.field());
    for (i, &a) in d.digits().iter().enumerate() {
        if a > 0 {
            let v = cache.e_poly(i)?.eval(&arg);
            let v = v.as_exact().expect("exact evaluation").clone();
            acc = acc.mul(&v.pow(a as u64));
        }
    }
    acc.div(&RatFunc::from_poly(gamma_j(cache, n)?))
}

/// `P_j(t) = prod_{k<j} (t - m_k)`.
pub fn p_poly(field: &Field, enumeration: &[Fq], j: u64) -> TPoly {
    (0..j).fold(TPoly::one(field), |acc, k| acc.mul(&TPoly::linear_factor(&m_seq(field, enumeration, k))))
}

/// `Q_j = P_j / P_j(m_j)`.
pub fn q_poly(field: &Field, enumeration: &[Fq], j: u64) -> Result<BasisPoly> {
    let p = p_poly(field, enumeration, j);
    let at = p.eval(&m_seq(field, enumeration, j));
    if at.is_zero() {
        return Err(Error::Inconsistent(format!("P_{j} vanishes at m_{j}")));
    }
    Ok(BasisPoly { num: p, den: at })
}

/// `l_n = sum_{k>=1} (1 + q + ... + q^(k-1)) alpha_k`.
pub fn l_digits(q: u32, n: u64) -> u64 {
    let d = DigitExpansion::new(n, q);
    let mut geom = 0u64;
    let mut acc = 0u64;
    for (k, &a) in d.digits().iter().enumerate().skip(1) {
        geom += (q as u64).pow(k as u32 - 1);
        acc += geom * a as u64;
    }
    acc
}

/// x-order of `P_n(m_n)`, summed factor by factor.
pub fn kappa(field: &Field, enumeration: &[Fq], n: u64) -> u64 {
    let mn = m_seq(field, enumeration, n);
    (0..n).map(|k| mn.sub(&m_seq(field, enumeration, k)).x_order().expect("distinct residues") as u64).sum()
}

/// x-order of `P_n(m_n)` from the multiplied-out product.
pub fn kappa_by_product(field: &Field, enumeration: &[Fq], n: u64) -> u64 {
    let mn = m_seq(field, enumeration, n);
    let prod = (0..n).fold(FqPoly::one(field), |acc, k| acc.mul(&mn.sub(&m_seq(field, enumeration, k))));
    prod.x_order().expect("distinct residues") as u64
}

pub fn l_and_kappa(field: &Field, enumeration: &[Fq], n: u64) -> (u64, u64) {
    (l_digits(field.q(), n), kappa(field, enumeration, n))
}

/// Coefficients of `h_n` in the basis `Q_0, ..., Q_n`.
#[derive(Clone, Debug)]
pub struct HExpansion {
    pub n: u64,
    pub coeffs: Vec<RatFunc>,
    /// `P_n(m_n) / Gamma_n`, the ratio of leading coefficients.
    pub leading_direct: RatFunc,
    /// Whether the expansion also reproduces `h_n` at a few residues past
    /// the interpolation nodes.
    pub extra_points_ok: bool,
}

const EXTRA_POINTS: u64 = 3;

/// Newton interpolation at `m_0, ..., m_n`: `c_0 = h_n(m_0)` and
/// `c_k = h_n(m_k) - sum_{i<k} c_i Q_i(m_k)`.
pub fn expand_h_in_q(cache: &CarlitzCache, enumeration: &[Fq], n: u64) -> Result<HExpansion> {
    let field = cache.field();
    let npts = n + 1 + EXTRA_POINTS;
    let ms: Vec<FqPoly> = (0..npts).map(|k| m_seq(field, enumeration, k)).collect();
    // pv[i][k] = P_i(m_k)
    let mut pv: Vec<Vec<FqPoly>> = vec![vec![FqPoly::one(field); npts as usize]];
    for i in 0..n as usize {
        let row = (0..npts as usize).map(|k| pv[i][k].mul(&ms[k].sub(&ms[i]))).collect();
        pv.push(row);
    }
    let q_at = |i: usize, k: usize| -> Result<RatFunc> { RatFunc::new(pv[i][k].clone(), pv[i][i].clone()) };
    let values: Vec<RatFunc> = ms.iter().map(|m| h_value(cache, n, m)).collect::<Result<_>>()?;

    let mut coeffs: Vec<RatFunc> = Vec::with_capacity(n as usize + 1);
    for k in 0..=n as usize {
        let mut c = values[k].clone();
        for (i, ci) in coeffs.iter().enumerate() {
            c = c.sub(&ci.mul(&q_at(i, k)?));
        }
        coeffs.push(c);
    }
    let mut extra_points_ok = true;
    for k in n as usize + 1..npts as usize {
        let mut acc = RatFunc::zero(field);
        for (i, ci) in coeffs.iter().enumerate() {
            acc = acc.add(&ci.mul(&q_at(i, k)?));
        }
        extra_points_ok &= acc == values[k];
    }
    let leading_direct = RatFunc::new(pv[n as usize][n as usize].clone(), gamma_j(cache, n)?)?;
    Ok(HExpansion { n, coeffs, leading_direct, extra_points_ok })
}
