use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Field, Fq, FqPoly, Scalar};
use crate::error::{Error, Result};

use super::linear::LinearPoly;

/// A sparse polynomial in `t` with coefficients in F_q[x]. Used for the
/// general (non-additive) polynomials: products over residues, `G_j`, `P_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct TPoly {
    field: Field,
    terms: BTreeMap<u64, FqPoly>,
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.terms.iter().rev().map(|(k, c)| format!("({})*t^{k}", crate::format::poly_to_string(c))).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Base-p digits of `n`, least significant first.
fn base_digits(mut n: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % p);
        n /= p;
    }
    out
}

fn small_binom_mod(n: u64, k: u64, p: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    // den is a unit mod p since k < p
    let mut inv = 1u64;
    for _ in 0..p - 2 {
        inv = inv * den % p;
    }
    num * inv % p
}

/// All `(l, C(k, l) mod p)` with nonzero binomial, by Lucas' theorem.
fn lucas_row(k: u64, p: u64) -> Vec<(u64, u64)> {
    let digits = base_digits(k, p);
    let mut out = vec![(0u64, 1u64)];
    let mut place = 1u64;
    for &d in &digits {
        let mut next = Vec::with_capacity(out.len() * (d as usize + 1));
        for &(l, c) in &out {
            for e in 0..=d {
                let b = small_binom_mod(d, e, p);
                if b != 0 {
                    next.push((l + e * place, c * b % p));
                }
            }
        }
        out = next;
        place *= p;
    }
    out
}

impl TPoly {
    pub fn zero(field: &Field) -> TPoly {
        TPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: FqPoly) -> TPoly {
        let mut out = TPoly::zero(c.field());
        out.insert(0, c);
        out
    }

    pub fn one(field: &Field) -> TPoly {
        TPoly::constant(FqPoly::one(field))
    }

    /// `t`
    pub fn t(field: &Field) -> TPoly {
        TPoly::monomial(FqPoly::one(field), 1)
    }

    /// `c * t^k`
    pub fn monomial(c: FqPoly, k: u64) -> TPoly {
        let mut out = TPoly::zero(c.field());
        out.insert(k, c);
        out
    }

    /// `t - c`
    pub fn linear_factor(c: &FqPoly) -> TPoly {
        TPoly::t(c.field()).sub(&TPoly::constant(c.clone()))
    }

    fn insert(&mut self, k: u64, c: FqPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, k: u64) -> FqPoly {
        self.terms.get(&k).cloned().unwrap_or_else(|| FqPoly::zero(&self.field))
    }

    pub fn lead(&self) -> FqPoly {
        self.terms.values().next_back().cloned().unwrap_or_else(|| FqPoly::zero(&self.field))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &FqPoly)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.insert(k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> TPoly {
        TPoly { field: self.field.clone(), terms: self.terms.iter().map(|(&k, c)| (k, c.neg())).collect() }
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FqPoly) -> TPoly {
        let mut out = TPoly::zero(&self.field);
        for (&k, a) in &self.terms {
            out.insert(k, a.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        let mut out = TPoly::zero(&self.field);
        for (&i, a) in &self.terms {
            for (&j, b) in &other.terms {
                out.insert(i + j, a.mul(b));
            }
        }
        out
    }

    pub fn pow(&self, e: u64) -> TPoly {
        (0..e).fold(TPoly::one(&self.field), |acc, _| acc.mul(self))
    }

    /// `self(t + c)`, expanding every `(t + c)^k` by the binomial theorem
    /// with coefficients reduced mod p.
    pub fn shift_arg(&self, c: &FqPoly) -> TPoly {
        let f = &self.field;
        let p = f.p() as u64;
        let mut out = TPoly::zero(f);
        for (&k, a) in &self.terms {
            for (l, b) in lucas_row(k, p) {
                let coeff = a.mul(&c.pow(k - l)).scale(f.from_int(b as i64));
                out.insert(l, coeff);
            }
        }
        out
    }

    /// Evaluate at `t = m`.
    pub fn eval(&self, m: &FqPoly) -> FqPoly {
        let mut acc = FqPoly::zero(&self.field);
        let mut power = FqPoly::one(&self.field);
        let mut at = 0u64;
        for (&k, a) in &self.terms {
            power = power.mul(&m.pow(k - at));
            at = k;
            acc = acc.add(&a.mul(&power));
        }
        acc
    }

    /// Reinterpret as an additive polynomial; fails if some exponent is not a
    /// power of q.
    pub fn to_linear(&self) -> Result<LinearPoly> {
        let q = self.field.q() as u64;
        let mut coeffs: Vec<Scalar> = Vec::new();
        for (&k, c) in &self.terms {
            let mut j = 0usize;
            let mut pw = 1u64;
            while pw < k {
                pw *= q;
                j += 1;
            }
            if pw != k {
                return Err(Error::Inconsistent(format!("exponent {k} of t is not a power of {q}")));
            }
            if coeffs.len() <= j {
                coeffs.resize(j + 1, Scalar::zero(&self.field));
            }
            coeffs[j] = Scalar::from(c.clone());
        }
        Ok(LinearPoly::from_coeffs(&self.field, coeffs))
    }

    /// The additive polynomial `phi` as a general polynomial; `phi` must have
    /// polynomial coefficients.
    pub fn from_linear(phi: &LinearPoly) -> Result<TPoly> {
        let q = phi.field().q() as u64;
        let mut out = TPoly::zero(phi.field());
        for (j, u) in phi.coeffs().iter().enumerate() {
            let r = u
                .as_exact()
                .filter(|r| r.is_poly())
                .ok_or_else(|| Error::Domain(format!("coefficient of t^(q^{j}) is not a polynomial in x")))?;
            out.insert(q.pow(j as u32), r.num().clone());
        }
        Ok(out)
    }

    pub fn scale_fq(&self, c: Fq) -> TPoly {
        let mut out = TPoly::zero(&self.field);
        for (&k, a) in &self.terms {
            out.insert(k, a.scale(c));
        }
        out
    }
}
