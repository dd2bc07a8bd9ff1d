//! The residue field GF(p^gamma), realised as F_p[y]/(modulus).
//!
//! Elements are packed as `sum coords[k] * p^k`, so the natural integer order
//! of the packed index is the enumeration order: `0` is the zero, `1` is the
//! identity and the rest follow lexicographically with the highest coordinate
//! most significant.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order; element tables are `q * q` bytes.
pub const MAX_Q: u32 = 256;

/// An element of F_q, stored as its packed coordinate index.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fq(pub(crate) u8);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldInner {
    p: u32,
    gamma: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    ram_cap: u64,
    work_prec: i64,
}

/// Shared handle to a finite field together with the arithmetic settings that
/// travel with it (ramification cap for q-th roots, default series precision).
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.gamma, self.0.modulus)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Small dense polynomials over F_p, low degree first, used only while
// validating and tabulating the modulus.
fn fp_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = fp_trim(a.to_vec());
    let b = fp_trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = fp_inv(b[db], p);
    while r.len() > db {
        let k = r.len() - 1;
        let c = r[k] * lead_inv % p;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let idx = k - db + i;
                r[idx] = (r[idx] + p * p - c * bi % p) % p;
            }
        }
        r = fp_trim(r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| a * b % p == 1).expect("nonzero residue")
}

/// Trial division against every monic polynomial of degree 1..=deg/2.
pub fn is_irreducible_mod_p(poly: &[u32], p: u32) -> bool {
    let poly = fp_trim(poly.to_vec());
    if poly.len() < 2 {
        return false;
    }
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                div.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            div.push(1);
            if fp_rem(&poly, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically first monic irreducible of degree `gamma`, comparing
/// coefficient tuples from the constant term upward.
pub fn default_modulus(p: u32, gamma: u32) -> Vec<u32> {
    let gamma = gamma as usize;
    let total = (p as u64).pow(gamma as u32);
    // Enumerate tuples (c0, .., c_{gamma-1}) with c0 most significant.
    for idx in 0..total {
        let mut tuple = vec![0u32; gamma];
        let mut rest = idx;
        for k in (0..gamma).rev() {
            tuple[k] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        tuple.push(1);
        if is_irreducible_mod_p(&tuple, p) {
            return tuple;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// GF(p^gamma) with the default modulus.
    pub fn new(p: u32, gamma: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("p = {p} is not prime")));
        }
        if gamma == 0 {
            return Err(Error::InvalidField("gamma must be positive".into()));
        }
        check_order(p, gamma)?;
        Field::with_modulus(p, gamma, &default_modulus(p, gamma))
    }

    /// GF(p^gamma) with an explicit modulus given as `gamma + 1` residues,
    /// constant term first.
    pub fn with_modulus(p: u32, gamma: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("p = {p} is not prime")));
        }
        if gamma == 0 {
            return Err(Error::InvalidField("gamma must be positive".into()));
        }
        let q = check_order(p, gamma)?;
        if modulus.len() != gamma as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus must have {} coefficients, got {}",
                gamma + 1,
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficients must lie in [0, p)".into()));
        }
        if modulus[gamma as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if !is_irreducible_mod_p(modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over F_{p}")));
        }

        let qs = q as usize;
        let g = gamma as usize;
        let coords = |a: usize| -> Vec<u32> {
            let mut v = Vec::with_capacity(g);
            let mut rest = a as u32;
            for _ in 0..g {
                v.push(rest % p);
                rest /= p;
            }
            v
        };
        let pack = |v: &[u32]| -> u8 {
            let mut idx = 0u32;
            for &c in v.iter().rev() {
                idx = idx * p + c;
            }
            idx as u8
        };
        let all: Vec<Vec<u32>> = (0..qs).map(coords).collect();
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        let mut neg = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = pack(&all[a].iter().map(|&c| (p - c) % p).collect::<Vec<_>>());
            for b in 0..qs {
                let s: Vec<u32> = all[a].iter().zip(&all[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = pack(&s);
                let mut prod = vec![0u32; 2 * g - 1];
                for i in 0..g {
                    for j in 0..g {
                        prod[i + j] = (prod[i + j] + all[a][i] * all[b][j]) % p;
                    }
                }
                let mut r = fp_rem(&prod, modulus, p);
                r.resize(g, 0);
                mul[a * qs + b] = pack(&r);
            }
        }
        let mut inv = vec![0u8; qs];
        for a in 1..qs {
            inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).expect("field") as u8;
        }
        Ok(Field(Arc::new(FieldInner {
            p,
            gamma,
            q,
            modulus: modulus.to_vec(),
            add,
            mul,
            neg,
            inv,
            ram_cap: (q as u64) * (q as u64),
            work_prec: 64,
        })))
    }

    /// Same field with a different ramification cap for q-th roots.
    pub fn with_ram_cap(&self, cap: u64) -> Field {
        let mut inner = self.clone_inner();
        inner.ram_cap = cap.max(1);
        Field(Arc::new(inner))
    }

    /// Same field with a different default precision used when an exact
    /// scalar has to be expanded as a series.
    pub fn with_work_prec(&self, prec: i64) -> Field {
        let mut inner = self.clone_inner();
        inner.work_prec = prec;
        Field(Arc::new(inner))
    }

    fn clone_inner(&self) -> FieldInner {
        let i = &self.0;
        FieldInner {
            p: i.p,
            gamma: i.gamma,
            q: i.q,
            modulus: i.modulus.clone(),
            add: i.add.clone(),
            mul: i.mul.clone(),
            neg: i.neg.clone(),
            inv: i.inv.clone(),
            ram_cap: i.ram_cap,
            work_prec: i.work_prec,
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }
    #[inline]
    pub fn gamma(&self) -> u32 {
        self.0.gamma
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }
    pub fn ram_cap(&self) -> u64 {
        self.0.ram_cap
    }
    pub fn work_prec(&self) -> i64 {
        self.0.work_prec
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.0.add[a.index() * self.0.q as usize + b.index()])
    }
    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.0.neg[a.index()])
    }
    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.0.mul[a.index() * self.0.q as usize + b.index()])
    }
    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Fq(self.0.inv[a.index()]))
        }
    }
    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The element with packed index `i`.
    pub fn elem(&self, i: u32) -> Result<Fq> {
        if i < self.0.q {
            Ok(Fq(i as u8))
        } else {
            Err(Error::InvalidField(format!("element index {i} out of range for q = {}", self.0.q)))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.0.p as i64) as u8)
    }

    /// `(-1)^k`.
    pub fn sign(&self, k: usize) -> Fq {
        if k % 2 == 0 {
            Fq::ONE
        } else {
            self.neg(Fq::ONE)
        }
    }

    pub fn coords(&self, a: Fq) -> Vec<u32> {
        let p = self.0.p;
        let mut rest = a.0 as u32;
        (0..self.0.gamma)
            .map(|_| {
                let c = rest % p;
                rest /= p;
                c
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Fq> {
        if coords.len() != self.0.gamma as usize || coords.iter().any(|&c| c >= self.0.p) {
            return Err(Error::Parse(format!("bad coordinate list {coords:?}")));
        }
        let mut idx = 0u32;
        for &c in coords.iter().rev() {
            idx = idx * self.0.p + c;
        }
        Ok(Fq(idx as u8))
    }

    /// All q elements in enumeration order: zero, one, then the rest.
    pub fn enumerate(&self) -> Vec<Fq> {
        (0..self.0.q).map(|i| Fq(i as u8)).collect()
    }

    /// Enumeration with the elements past `a_1` permuted by rotating them
    /// `shift` places. Used to show results do not depend on the order.
    pub fn enumerate_rotated(&self, shift: usize) -> Vec<Fq> {
        let mut all = self.enumerate();
        let n = all.len();
        if n > 3 {
            all[2..].rotate_left(shift % (n - 2));
        }
        all
    }
}

fn check_order(p: u32, gamma: u32) -> Result<u32> {
    let q = (p as u64).checked_pow(gamma).unwrap_or(u64::MAX);
    if q > MAX_Q as u64 {
        return Err(Error::InvalidField(format!("q = {p}^{gamma} exceeds the supported maximum {MAX_Q}")));
    }
    Ok(q as u32)
}
