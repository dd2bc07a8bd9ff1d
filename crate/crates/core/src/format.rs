//! Text and JSON forms of field elements, polynomials, rational functions and
//! Laurent series, plus a small expression parser for command-line values.
//!
//! Text grammar: an F_q element prints as its integer residue when gamma = 1
//! and as a coordinate list `[d0,d1,...]` otherwise. Polynomials print as a
//! sparse sum of `c*x^k` terms in descending k, dropping `1*`. Series print
//! as `x^(v/d)*(...) + O(x^(p/d))` with the inner terms relative to the
//! leading exponent.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::algebra::{Field, Fq, FqPoly, LaurentSeries, RatFunc, Scalar};
use crate::carlitz::{LinearPoly, TPoly};
use crate::error::{Error, Result};

pub fn fq_to_string(field: &Field, c: Fq) -> String {
    if field.gamma() == 1 {
        c.index().to_string()
    } else {
        let coords: Vec<String> = field.coords(c).iter().map(|d| d.to_string()).collect();
        format!("[{}]", coords.join(","))
    }
}

pub fn fq_to_json(field: &Field, c: Fq) -> Value {
    if field.gamma() == 1 {
        json!(c.index())
    } else {
        json!(field.coords(c))
    }
}

pub fn fq_from_json(field: &Field, v: &Value) -> Result<Fq> {
    match v {
        Value::Number(n) => {
            let i = n.as_u64().ok_or_else(|| Error::Parse(format!("bad element {v}")))?;
            if field.gamma() != 1 || i >= field.p() as u64 {
                return Err(Error::Parse(format!("element {i} out of range")));
            }
            field.elem(i as u32)
        }
        Value::Array(items) => {
            let coords: Option<Vec<u32>> = items.iter().map(|d| d.as_u64().map(|d| d as u32)).collect();
            field.from_coords(&coords.ok_or_else(|| Error::Parse(format!("bad element {v}")))?)
        }
        _ => Err(Error::Parse(format!("bad element {v}"))),
    }
}

fn exp_to_string(e: Ratio<i64>) -> Option<String> {
    if e == Ratio::from_integer(0) {
        None
    } else if e == Ratio::from_integer(1) {
        Some("x".to_string())
    } else if e.is_integer() && *e.numer() > 0 {
        Some(format!("x^{}", e.numer()))
    } else if e.is_integer() {
        Some(format!("x^({})", e.numer()))
    } else {
        Some(format!("x^({}/{})", e.numer(), e.denom()))
    }
}

fn term_to_string(field: &Field, c: Fq, e: Ratio<i64>) -> String {
    let cs = fq_to_string(field, c);
    match exp_to_string(e) {
        None => cs,
        Some(xs) if c == Fq::ONE => xs,
        Some(xs) => format!("{cs}*{xs}"),
    }
}

pub fn poly_to_string(p: &FqPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let f = p.field();
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, &c)| term_to_string(f, c, Ratio::from_integer(k as i64)))
        .collect();
    terms.join(" + ")
}

pub fn ratfunc_to_string(r: &RatFunc) -> String {
    if r.is_poly() {
        poly_to_string(r.num())
    } else {
        let wrap = |s: String| if s.contains(' ') { format!("({s})") } else { s };
        format!("{}/{}", wrap(poly_to_string(r.num())), wrap(poly_to_string(r.den())))
    }
}

pub fn laurent_to_string(s: &LaurentSeries) -> String {
    let d = s.denom() as i64;
    let order = format!("O({})", exp_to_string(Ratio::new(s.prec(), d)).unwrap_or_else(|| "1".into()));
    if s.is_zero() {
        return order;
    }
    let f = s.field();
    let inner: Vec<String> = s.terms().map(|(k, c)| term_to_string(f, c, Ratio::new(k - s.val(), d))).collect();
    let inner = inner.join(" + ");
    match exp_to_string(Ratio::new(s.val(), d)) {
        None => format!("({inner}) + {order}"),
        Some(lead) => format!("{lead}*({inner}) + {order}"),
    }
}

pub fn laurent_to_json(s: &LaurentSeries) -> Value {
    let f = s.field();
    json!({
        "denom": s.denom(),
        "val": s.val(),
        "coeffs": s.coeffs().iter().map(|&c| fq_to_json(f, c)).collect::<Vec<_>>(),
        "prec": s.prec(),
    })
}

pub fn laurent_from_json(field: &Field, v: &Value) -> Result<LaurentSeries> {
    let get = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing field `{k}`")));
    let denom = get("denom")?.as_u64().filter(|&d| d >= 1).ok_or_else(|| Error::Parse("bad denom".into()))?;
    let val = get("val")?.as_i64().ok_or_else(|| Error::Parse("bad val".into()))?;
    let prec = get("prec")?.as_i64().ok_or_else(|| Error::Parse("bad prec".into()))?;
    let coeffs = get("coeffs")?
        .as_array()
        .ok_or_else(|| Error::Parse("bad coeffs".into()))?
        .iter()
        .map(|c| fq_from_json(field, c))
        .collect::<Result<Vec<_>>>()?;
    if val + coeffs.len() as i64 > prec {
        return Err(Error::Parse("coefficients extend past the precision".into()));
    }
    Ok(LaurentSeries::from_terms(field, denom, val, coeffs, prec))
}

pub fn ratfunc_to_json(r: &RatFunc) -> Value {
    json!({ "num": poly_to_string(r.num()), "den": poly_to_string(r.den()) })
}

pub fn scalar_to_string(s: &Scalar) -> String {
    match s {
        Scalar::Exact(r) => ratfunc_to_string(r),
        Scalar::Series(l) => laurent_to_string(l),
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Exact(r) => ratfunc_to_json(r),
        Scalar::Series(l) => laurent_to_json(l),
    }
}

/// Either form written by [`scalar_to_json`].
pub fn scalar_from_json(field: &Field, v: &Value) -> Result<Scalar> {
    if v.get("denom").is_some() {
        laurent_from_json(field, v).map(Scalar::Series)
    } else {
        ratfunc_from_json(field, v).map(Scalar::Exact)
    }
}

fn t_term(coeff: String, k: u64) -> String {
    let t = match k {
        0 => return coeff,
        1 => "t".to_string(),
        _ => format!("t^{k}"),
    };
    if coeff == "1" {
        t
    } else if coeff.contains([' ', '/']) {
        format!("({coeff})*{t}")
    } else {
        format!("{coeff}*{t}")
    }
}

/// `sum_j u_j t^(q^j)`, highest power first.
pub fn linear_to_string(phi: &LinearPoly) -> String {
    let q = phi.field().q() as u64;
    let terms: Vec<String> = phi
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, u)| !u.is_zero())
        .map(|(j, u)| t_term(scalar_to_string(u), q.pow(j as u32)))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// `[{"exp": q^j, "coeff": u_j}, ...]` over the nonzero terms.
pub fn linear_to_json(phi: &LinearPoly) -> Value {
    let q = phi.field().q() as u64;
    let terms: Vec<Value> = phi
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, u)| !u.is_zero())
        .map(|(j, u)| json!({ "exp": q.pow(j as u32), "coeff": scalar_to_json(u) }))
        .collect();
    Value::Array(terms)
}

pub fn tpoly_to_string(p: &TPoly) -> String {
    let terms: Vec<String> =
        p.terms().collect::<Vec<_>>().into_iter().rev().map(|(k, c)| t_term(poly_to_string(c), k)).collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

pub fn tpoly_to_json(p: &TPoly) -> Value {
    Value::Array(p.terms().map(|(k, c)| json!({ "exp": k, "coeff": poly_to_string(c) })).collect())
}

/// `exact` for `None`, otherwise the power of x the value is known modulo.
pub fn precision_to_string(p: Option<Ratio<i64>>) -> String {
    match p {
        None => "exact".to_string(),
        Some(p) => exp_to_string(p).unwrap_or_else(|| "1".into()),
    }
}

pub fn ratfunc_from_json(field: &Field, v: &Value) -> Result<RatFunc> {
    let part = |k: &str| -> Result<FqPoly> {
        let s = v.get(k).and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("missing `{k}`")))?;
        parse_value(field, s)?.to_poly()
    };
    RatFunc::new(part("num")?, part("den")?)
}

/// A finite sum of `c * x^e` with rational exponents, optionally with an
/// `O(x^e)` bound, as produced by [`parse_value`].
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedValue {
    field: Field,
    pub terms: BTreeMap<Ratio<i64>, Fq>,
    pub order: Option<Ratio<i64>>,
}

impl ParsedValue {
    fn constant(field: &Field, c: Fq) -> ParsedValue {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Ratio::from_integer(0), c);
        }
        ParsedValue { field: field.clone(), terms, order: None }
    }

    fn add(mut self, other: ParsedValue, negate: bool) -> ParsedValue {
        let f = self.field.clone();
        for (e, c) in other.terms {
            let c = if negate { f.neg(c) } else { c };
            let sum = f.add(self.terms.get(&e).copied().unwrap_or(Fq::ZERO), c);
            if sum.is_zero() {
                self.terms.remove(&e);
            } else {
                self.terms.insert(e, sum);
            }
        }
        self.order = match (self.order, other.order) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.drop_beyond_order();
        self
    }

    fn mul(self, other: ParsedValue) -> ParsedValue {
        let f = self.field.clone();
        let mut out = ParsedValue { field: f.clone(), terms: BTreeMap::new(), order: None };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                let s = f.add(out.terms.get(&e).copied().unwrap_or(Fq::ZERO), f.mul(*ca, *cb));
                if s.is_zero() {
                    out.terms.remove(&e);
                } else {
                    out.terms.insert(e, s);
                }
            }
        }
        let low = |v: &ParsedValue| v.terms.keys().next().copied();
        let mut order = None;
        if let Some(oa) = self.order {
            order = Some(low(&other).map_or(oa, |l| oa + l));
        }
        if let Some(ob) = other.order {
            let o = low(&self).map_or(ob, |l| ob + l);
            order = Some(order.map_or(o, |x: Ratio<i64>| x.min(o)));
        }
        out.order = order;
        out.drop_beyond_order();
        out
    }

    fn drop_beyond_order(&mut self) {
        if let Some(o) = self.order {
            self.terms.retain(|e, _| *e < o);
        }
    }

    /// The value as a polynomial; fails on fractional or negative exponents
    /// or an explicit order term.
    pub fn to_poly(&self) -> Result<FqPoly> {
        if self.order.is_some() {
            return Err(Error::Parse("expected a polynomial, found an O(...) term".into()));
        }
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            if !e.is_integer() || *e.numer() < 0 {
                return Err(Error::Parse(format!("exponent {e} is not a natural number")));
            }
            let k = *e.numer() as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Fq::ZERO);
            }
            coeffs[k] = *c;
        }
        Ok(FqPoly::from_coeffs(&self.field, coeffs))
    }

    /// The value as a series; without an explicit order term it is known
    /// modulo `x^default_prec`.
    pub fn to_series(&self, default_prec: i64) -> Result<LaurentSeries> {
        let denom = self.terms.keys().chain(self.order.iter()).fold(1i64, |acc, e| acc.lcm(e.denom()));
        let q = self.field.q() as i64;
        let mut d = 1i64;
        while d < denom {
            d *= q;
        }
        if d != denom {
            return Err(Error::Parse(format!("exponent denominator {denom} is not a power of q = {q}")));
        }
        if d as u64 > self.field.ram_cap() {
            return Err(Error::RamificationBudget { needed: d as u64, cap: self.field.ram_cap() });
        }
        let prec = match self.order {
            Some(o) => (o * d).to_integer(),
            None => default_prec * d,
        };
        let start = self.terms.keys().next().map_or(prec, |e| (e * d).to_integer()).min(prec);
        let mut coeffs = vec![Fq::ZERO; (prec - start).max(0) as usize];
        for (e, c) in &self.terms {
            let k = (e * d).to_integer();
            if k < prec {
                coeffs[(k - start) as usize] = *c;
            }
        }
        Ok(LaurentSeries::from_terms(&self.field, d as u64, start, coeffs, prec))
    }
}

impl ParsedValue {
    /// An exact rational function when the value is a finite sum of
    /// integral powers, otherwise a series known modulo `x^default_prec`.
    pub fn to_scalar(&self, default_prec: i64) -> Result<Scalar> {
        let integral = self.terms.keys().all(|e| e.is_integer());
        if self.order.is_some() || !integral {
            return self.to_series(default_prec).map(Scalar::Series);
        }
        let low = self.terms.keys().next().map_or(0, |e| e.to_integer()).min(0);
        let shifted = ParsedValue {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (e - low, *c)).collect(),
            order: None,
        };
        let den = FqPoly::monomial(&self.field, Fq::ONE, (-low) as usize);
        RatFunc::new(shifted.to_poly()?, den).map(Scalar::Exact)
    }
}

/// Parse an expression such as `x^2 + 2*x + 1`, `x^(1/2)`, `[0,1]*x^3`,
/// `x^(-1)*(1 + x) + O(x^4)`.
pub fn parse_value(field: &Field, text: &str) -> Result<ParsedValue> {
    let mut p = Parser { field, s: text.as_bytes(), pos: 0 };
    let v = p.sum()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(Error::Parse(format!("unexpected input at column {} in `{text}`", p.pos + 1)));
    }
    Ok(v)
}

struct Parser<'a> {
    field: &'a Field,
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{}` at column {}", c as char, self.pos + 1)))
        }
    }

    fn sum(&mut self) -> Result<ParsedValue> {
        let negate_first = self.eat(b'-');
        let mut acc = ParsedValue::constant(self.field, Fq::ZERO).add(self.product()?, negate_first);
        loop {
            if self.eat(b'+') {
                acc = acc.add(self.product()?, false);
            } else if self.eat(b'-') {
                acc = acc.add(self.product()?, true);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<ParsedValue> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(self.factor()?);
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<i64> {
        self.ws();
        let neg = self.eat(b'-');
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected an integer at column {}", self.pos + 1)));
        }
        let n: i64 =
            std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|e| Error::Parse(format!("{e}")))?;
        Ok(if neg { -n } else { n })
    }

    fn exponent(&mut self) -> Result<Ratio<i64>> {
        if self.eat(b'(') {
            let n = self.integer()?;
            let d = if self.eat(b'/') { self.integer()? } else { 1 };
            self.expect(b')')?;
            if d <= 0 {
                return Err(Error::Parse("exponent denominator must be positive".into()));
            }
            Ok(Ratio::new(n, d))
        } else {
            Ok(Ratio::from_integer(self.integer()?))
        }
    }

    fn x_power(&mut self) -> Result<Ratio<i64>> {
        if self.eat(b'^') {
            self.exponent()
        } else {
            Ok(Ratio::from_integer(1))
        }
    }

    fn factor(&mut self) -> Result<ParsedValue> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let e = self.x_power()?;
                let mut v = ParsedValue::constant(self.field, Fq::ZERO);
                v.terms.insert(e, Fq::ONE);
                Ok(v)
            }
            Some(b'O') => {
                self.pos += 1;
                self.expect(b'(')?;
                let e = if self.eat(b'1') {
                    Ratio::from_integer(0)
                } else {
                    self.expect(b'x')?;
                    self.x_power()?
                };
                self.expect(b')')?;
                let mut v = ParsedValue::constant(self.field, Fq::ZERO);
                v.order = Some(e);
                Ok(v)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut coords = Vec::new();
                if !self.eat(b']') {
                    loop {
                        coords.push(self.integer()? as u32);
                        if self.eat(b']') {
                            break;
                        }
                        self.expect(b',')?;
                    }
                }
                Ok(ParsedValue::constant(self.field, self.field.from_coords(&coords)?))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(ParsedValue::constant(self.field, self.field.from_int(n)))
            }
            _ => Err(Error::Parse(format!("unexpected input at column {}", self.pos + 1))),
        }
    }
}
