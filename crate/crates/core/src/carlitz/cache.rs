use std::sync::OnceLock;

use crate::algebra::{Field, FqPoly, RatFunc, Scalar};
use crate::error::{Error, Result};

use super::linear::LinearPoly;

/// `[i] = x^(q^i) - x` for `i >= 1`.
pub fn bracket(field: &Field, i: usize) -> Result<FqPoly> {
    if i == 0 {
        return Err(Error::Domain("[i] is defined for i >= 1".into()));
    }
    Ok(FqPoly::binomial(field, q_pow(field, i)?, 1))
}

fn q_pow(field: &Field, i: usize) -> Result<usize> {
    (field.q() as usize)
        .checked_pow(i as u32)
        .filter(|&v| v <= 1 << 26)
        .ok_or_else(|| Error::Budget(format!("q^{i} is too large")))
}

/// Exponent pairs `(a, b)` with `D_j = prod (x^a - x^b)`.
fn d_factors(field: &Field, j: usize) -> Vec<(usize, usize)> {
    let q = field.q() as usize;
    let top = q.pow(j as u32);
    (1..=j).map(|k| (top, q.pow((j - k) as u32))).collect()
}

/// Exponent pairs with `L_m^(q^j) = prod (x^a - x^b)`.
fn l_frob_factors(field: &Field, m: usize, j: usize) -> Vec<(usize, usize)> {
    let q = field.q() as usize;
    (1..=m).map(|k| (q.pow((k + j) as u32), q.pow(j as u32))).collect()
}

/// Brackets, Carlitz factorials and the polynomials `e_i`, `f_i` up to a
/// fixed depth. Built once, then read-only; `e_i` and `f_i` are filled in on
/// first use.
pub struct CarlitzCache {
    field: Field,
    imax: usize,
    brackets: Vec<FqPoly>,
    d: Vec<FqPoly>,
    l: Vec<FqPoly>,
    e: Vec<OnceLock<Result<LinearPoly>>>,
    f: Vec<OnceLock<Result<LinearPoly>>>,
}

impl CarlitzCache {
    pub fn new(field: &Field, imax: usize) -> Result<CarlitzCache> {
        q_pow(field, imax + 1)?;
        let mut brackets = vec![FqPoly::zero(field)];
        let mut d = vec![FqPoly::one(field)];
        let mut l = vec![FqPoly::one(field)];
        for i in 1..=imax {
            let b = bracket(field, i)?;
            d.push(b.mul(&d[i - 1].frobenius()));
            l.push(b.mul(&l[i - 1]));
            brackets.push(b);
        }
        Ok(CarlitzCache {
            field: field.clone(),
            imax,
            brackets,
            d,
            l,
            e: (0..=imax).map(|_| OnceLock::new()).collect(),
            f: (0..=imax).map(|_| OnceLock::new()).collect(),
        })
    }

    /// A cache whose stored `D_i` is off by one. Only for exercising the
    /// failure paths of the verification suites.
    pub fn with_corrupted_d(field: &Field, imax: usize, i: usize) -> Result<CarlitzCache> {
        let mut cache = CarlitzCache::new(field, imax)?;
        if i > imax {
            return Err(Error::Domain(format!("cannot corrupt D_{i} beyond depth {imax}")));
        }
        cache.d[i] = cache.d[i].add(&FqPoly::one(field));
        Ok(cache)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn imax(&self) -> usize {
        self.imax
    }

    fn check(&self, i: usize) -> Result<()> {
        if i > self.imax {
            return Err(Error::Domain(format!("index {i} exceeds cached depth {}", self.imax)));
        }
        Ok(())
    }

    /// `[i]`, with `[0] = 0`.
    pub fn bracket(&self, i: usize) -> &FqPoly {
        &self.brackets[i]
    }

    pub fn d(&self, i: usize) -> &FqPoly {
        &self.d[i]
    }

    pub fn l(&self, i: usize) -> &FqPoly {
        &self.l[i]
    }

    /// `D_i = [i][i-1]^q ... [1]^(q^(i-1))`, multiplied out directly.
    pub fn d_closed(&self, i: usize) -> Result<FqPoly> {
        let mut acc = FqPoly::one(&self.field);
        for k in 1..=i {
            acc = acc.mul(&bracket(&self.field, k)?.frobenius_pow((i - k) as u32));
        }
        Ok(acc)
    }

    /// `L_i = [i][i-1] ... [1]`, multiplied out directly.
    pub fn l_closed(&self, i: usize) -> Result<FqPoly> {
        let mut acc = FqPoly::one(&self.field);
        for k in 1..=i {
            acc = acc.mul(&bracket(&self.field, k)?);
        }
        Ok(acc)
    }

    /// The Carlitz binomial `D_i / (D_j L_(i-j)^(q^j))`, by successive exact
    /// division of the stored `D_i` by the binomial factors of the
    /// denominator.
    pub fn binom(&self, i: usize, j: usize) -> Result<FqPoly> {
        self.check(i)?;
        if j > i {
            return Err(Error::Domain(format!("binomial [{i} over {j}] needs j <= i")));
        }
        let mut acc = self.d[i].clone();
        let factors = d_factors(&self.field, j).into_iter().chain(l_frob_factors(&self.field, i - j, j));
        for (a, b) in factors {
            acc = acc.exact_div(&FqPoly::binomial(&self.field, a, b)).map_err(|_| {
                Error::Inconsistent(format!("D_{i} is not divisible by x^{a} - x^{b} in binomial [{i} over {j}]"))
            })?;
        }
        Ok(acc)
    }

    /// `e_i(t) = sum_j (-1)^(i-j) [i over j] t^(q^j)`.
    pub fn e_poly(&self, i: usize) -> Result<LinearPoly> {
        self.check(i)?;
        self.e[i]
            .get_or_init(|| {
                let mut coeffs = Vec::with_capacity(i + 1);
                for j in 0..=i {
                    let b = self.binom(i, j)?.scale(self.field.sign(i - j));
                    coeffs.push(Scalar::from(b));
                }
                Ok(LinearPoly::from_coeffs(&self.field, coeffs))
            })
            .clone()
    }

    /// `f_i = e_i / D_i`. The coefficient `[i over j] / D_i` is stored as
    /// `1 / (D_i / [i over j])`, the quotient checked to be exact.
    pub fn f_poly(&self, i: usize) -> Result<LinearPoly> {
        self.check(i)?;
        self.f[i]
            .get_or_init(|| {
                let e = self.e_poly(i)?;
                let mut coeffs = Vec::with_capacity(i + 1);
                for (j, u) in e.coeffs().iter().enumerate() {
                    let b = u.as_exact().expect("exact coefficient").num();
                    let den = self.d[i]
                        .exact_div(b)
                        .map_err(|_| Error::Inconsistent(format!("binomial [{i} over {j}] does not divide D_{i}")))?;
                    let r = RatFunc::recip_poly(&den)?;
                    coeffs.push(Scalar::Exact(r));
                }
                Ok(LinearPoly::from_coeffs(&self.field, coeffs))
            })
            .clone()
    }

    /// `f_i(t)` computed as `e_i(t) / D_i`. For `t` in F_q[x] the division
    /// is exact and cheap; for a series argument `1/D_i` is expanded only as
    /// far as the argument's precision requires.
    pub fn f_value(&self, i: usize, t: &Scalar) -> Result<Scalar> {
        let e = self.e_poly(i)?.eval(t);
        Ok(e.mul(&Scalar::Exact(RatFunc::recip_poly(&self.d[i])?)))
    }

    /// `e_i` via the ladder recurrence `e_i = e_(i-1)^q - D_(i-1)^(q-1) e_(i-1)`.
    pub fn e_by_recurrence(&self, i: usize) -> Result<LinearPoly> {
        self.check(i)?;
        let mut e = LinearPoly::identity(&self.field);
        for k in 1..=i {
            let factor = Scalar::from(self.d[k - 1].pow(self.field.q() as u64 - 1));
            e = e.frobenius().sub(&e.scale(&factor));
        }
        Ok(e)
    }
}
