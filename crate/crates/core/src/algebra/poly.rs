//! Dense univariate polynomials over F_q in the indeterminate `x`.

use std::fmt;

use num_bigint::BigUint;

use super::field::{Field, Fq};
use crate::error::{Error, Result};

/// A polynomial in `x` over F_q, low degree first with no trailing zeros.
#[derive(Clone)]
pub struct FqPoly {
    field: Field,
    coeffs: Vec<Fq>,
}

impl PartialEq for FqPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for FqPoly {}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::poly_to_string(self))
    }
}

// Below this many term products the schoolbook loop beats packing.
const KRONECKER_THRESHOLD: usize = 4096;

impl FqPoly {
    pub fn from_coeffs(field: &Field, mut coeffs: Vec<Fq>) -> FqPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> FqPoly {
        FqPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> FqPoly {
        FqPoly::constant(field, Fq::ONE)
    }

    pub fn constant(field: &Field, c: Fq) -> FqPoly {
        FqPoly::from_coeffs(field, vec![c])
    }

    /// `x`
    pub fn x(field: &Field) -> FqPoly {
        FqPoly::monomial(field, Fq::ONE, 1)
    }

    /// `c * x^k`
    pub fn monomial(field: &Field, c: Fq, k: usize) -> FqPoly {
        if c.is_zero() {
            return FqPoly::zero(field);
        }
        let mut coeffs = vec![Fq::ZERO; k + 1];
        coeffs[k] = c;
        FqPoly { field: field.clone(), coeffs }
    }

    /// `x^a - x^b`
    pub fn binomial(field: &Field, a: usize, b: usize) -> FqPoly {
        let mut coeffs = vec![Fq::ZERO; a.max(b) + 1];
        coeffs[a] = field.add(coeffs[a], Fq::ONE);
        coeffs[b] = field.sub(coeffs[b], Fq::ONE);
        FqPoly::from_coeffs(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Fq {
        self.coeffs.get(k).copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fq::ONE
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// The x-adic valuation; `None` for zero.
    pub fn x_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn terms(&self) -> impl Iterator<Item = (usize, Fq)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (i, c))
    }

    pub fn add(&self, other: &FqPoly) -> FqPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| f.add(self.coeff(k), other.coeff(k))).collect();
        FqPoly::from_coeffs(f, coeffs)
    }

    pub fn sub(&self, other: &FqPoly) -> FqPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| f.sub(self.coeff(k), other.coeff(k))).collect();
        FqPoly::from_coeffs(f, coeffs)
    }

    pub fn neg(&self) -> FqPoly {
        let f = &self.field;
        FqPoly { field: f.clone(), coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn scale(&self, c: Fq) -> FqPoly {
        let f = &self.field;
        FqPoly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> FqPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fq::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        FqPoly { field: self.field.clone(), coeffs }
    }

    /// Reduce modulo `x^n`.
    pub fn truncate(&self, n: usize) -> FqPoly {
        let n = n.min(self.coeffs.len());
        FqPoly::from_coeffs(&self.field, self.coeffs[..n].to_vec())
    }

    pub fn mul(&self, other: &FqPoly) -> FqPoly {
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero(&self.field);
        }
        let (wa, wb) = (self.weight(), other.weight());
        if wa.saturating_mul(wb) <= KRONECKER_THRESHOLD || wa.min(wb) < 24 {
            self.mul_schoolbook(other)
        } else {
            kronecker_mul(self, other)
        }
    }

    fn mul_schoolbook(&self, other: &FqPoly) -> FqPoly {
        let f = &self.field;
        let mut out = vec![Fq::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        let b_terms: Vec<(usize, Fq)> = other.terms().collect();
        for (i, a) in self.terms() {
            for &(j, b) in &b_terms {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        FqPoly::from_coeffs(f, out)
    }

    pub fn pow(&self, mut e: u64) -> FqPoly {
        let mut acc = FqPoly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^q`, which in characteristic p only rescales exponents because
    /// every coefficient is fixed by the q-power map.
    pub fn frobenius(&self) -> FqPoly {
        self.frobenius_pow(1)
    }

    /// `self^(q^j)`.
    pub fn frobenius_pow(&self, j: u32) -> FqPoly {
        if self.is_zero() || j == 0 {
            return self.clone();
        }
        let step = (self.field.q() as usize).pow(j);
        let mut coeffs = vec![Fq::ZERO; (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.terms() {
            coeffs[k * step] = c;
        }
        FqPoly { field: self.field.clone(), coeffs }
    }

    /// Exact q-th root when every exponent is a multiple of q.
    pub fn qth_root(&self) -> Option<FqPoly> {
        let q = self.field.q() as usize;
        if self.terms().any(|(k, _)| k % q != 0) {
            return None;
        }
        let coeffs = self.coeffs.iter().step_by(q).copied().collect();
        Some(FqPoly::from_coeffs(&self.field, coeffs))
    }

    /// Quotient and remainder; the loop touches only nonzero divisor terms.
    pub fn divrem(&self, divisor: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        let f = &self.field;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() <= db {
            return Ok((FqPoly::zero(f), self.clone()));
        }
        let lead_inv = f.inv(divisor.lead())?;
        let lower: Vec<(usize, Fq)> = divisor.terms().filter(|&(k, _)| k < db).collect();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fq::ZERO; self.coeffs.len() - db];
        for top in (db..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let qc = f.mul(c, lead_inv);
            let shift = top - db;
            quot[shift] = qc;
            rem[top] = Fq::ZERO;
            for &(k, b) in &lower {
                rem[shift + k] = f.sub(rem[shift + k], f.mul(qc, b));
            }
        }
        rem.truncate(db);
        Ok((FqPoly::from_coeffs(f, quot), FqPoly::from_coeffs(f, rem)))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, divisor: &FqPoly) -> Result<FqPoly> {
        let (q, r) = self.divrem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Inexact(format!(
                "degree {} polynomial is not divisible by degree {} polynomial",
                self.degree().map_or(-1, |d| d as i64),
                divisor.degree().map_or(-1, |d| d as i64)
            )))
        }
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &FqPoly) -> FqPoly {
        // Pull out the common power of x first; it is free and the x-power
        // part of Carlitz factorials is large.
        let (Some(va), Some(vb)) = (self.x_order(), other.x_order()) else {
            let nz = if self.is_zero() { other } else { self };
            return nz.monic();
        };
        let v = va.min(vb);
        let mut a = FqPoly::from_coeffs(&self.field, self.coeffs[va..].to_vec());
        let mut b = FqPoly::from_coeffs(&self.field, other.coeffs[vb..].to_vec());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic().shift(v)
    }

    pub fn monic(&self) -> FqPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero lead");
        self.scale(inv)
    }

    pub fn eval_fq(&self, a: Fq) -> Fq {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Fq::ZERO, |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// Substitute a polynomial for `x`.
    pub fn compose(&self, arg: &FqPoly) -> FqPoly {
        let mut acc = FqPoly::zero(&self.field);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(arg).add(&FqPoly::constant(&self.field, c));
        }
        acc
    }
}

/// Kronecker substitution: pack both operands into big integers with slots
/// wide enough that no carries cross, multiply, and unpack. For gamma > 1
/// each coefficient's F_p coordinates occupy `2*gamma - 1` consecutive slots
/// so the product's y-degree never spills into the next x-slot.
fn kronecker_mul(a: &FqPoly, b: &FqPoly) -> FqPoly {
    let f = &a.field;
    let p = f.p() as u64;
    let g = f.gamma() as usize;
    let stride = 2 * g - 1;
    let shorter = a.coeffs.len().min(b.coeffs.len()) as u64;
    let bound = shorter * g as u64 * (p - 1) * (p - 1);
    let bits = (64 - bound.leading_zeros()) as usize + 1;

    let coords: Vec<Vec<u32>> = (0..f.q()).map(|i| f.coords(Fq(i as u8))).collect();
    let pack = |poly: &FqPoly| -> BigUint {
        let slots = poly.coeffs.len() * stride;
        let mut words = vec![0u32; (slots * bits).div_ceil(32) + 1];
        for (k, c) in poly.terms() {
            for (l, &d) in coords[c.index()].iter().enumerate() {
                if d == 0 {
                    continue;
                }
                let pos = (k * stride + l) * bits;
                let (w, off) = (pos / 32, pos % 32);
                let v = (d as u64) << off;
                words[w] |= v as u32;
                words[w + 1] |= (v >> 32) as u32;
            }
        }
        BigUint::new(words)
    };
    let prod = pack(a) * pack(b);
    let words = prod.to_u32_digits();

    // y^l mod modulus for l < 2*gamma - 1, as field elements.
    let ypow: Vec<Fq> = (0..stride).map(|l| if g == 1 { Fq::ONE } else { f.pow(Fq(p as u8), l as u64) }).collect();
    let mask = if bits >= 64 { u64::MAX } else { (1u64 << bits) - 1 };
    let read = |pos: usize| -> u64 {
        let (w, off) = (pos / 32, pos % 32);
        let mut v = 0u128;
        for i in 0..3 {
            if let Some(&x) = words.get(w + i) {
                v |= (x as u128) << (32 * i);
            }
        }
        ((v >> off) as u64) & mask
    };
    let n = a.coeffs.len() + b.coeffs.len() - 1;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = Fq::ZERO;
        for (l, &yl) in ypow.iter().enumerate() {
            let c = read((k * stride + l) * bits) % p;
            if c != 0 {
                acc = f.add(acc, f.mul(Fq(c as u8), yl));
            }
        }
        out.push(acc);
    }
    FqPoly::from_coeffs(f, out)
}
