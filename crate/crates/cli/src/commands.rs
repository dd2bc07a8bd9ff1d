use std::fmt::Write as _;

use carlitz_core::algebra::{Field, LaurentSeries, Scalar};
use carlitz_core::carlitz::{expand_h_in_q, h_poly, l_and_kappa, q_poly, BasisPoly, CarlitzCache, DigitExpansion};
use carlitz_core::exec::ExecMode;
use carlitz_core::expseries::{carlitz_exp, rho, wz_check, Certified};
use carlitz_core::format::{
    laurent_to_json, laurent_to_string, linear_to_json, linear_to_string, parse_value, poly_to_string,
    precision_to_string, ratfunc_to_json, ratfunc_to_string, scalar_to_json, scalar_to_string, tpoly_to_json,
    tpoly_to_string,
};
use carlitz_core::space::{a_minus, check_in_ring, coherent_state, CarlitzCoeffs};
use carlitz_core::verify::{exit_status, run_suite, Suite, SuiteParams, SuiteReport};
use carlitz_core::{Error, Result};
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::config::RunConfig;

/// What a command prints, in both formats, and the exit status it implies.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub status: i32,
    /// Printed to stderr.
    pub note: Option<String>,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, status: 0, note: None }
    }

    /// Exit 3 when the certified precision falls short of the request.
    fn short_of(mut self, got: Ratio<i64>, want: Ratio<i64>) -> Output {
        if got < want {
            self.status = self.status.max(3);
            let (got, want) = (precision_to_string(Some(got)), precision_to_string(Some(want)));
            self.note = Some(format!("precision exhausted: certified to {got}, requested {want}"));
        }
        self
    }
}

/// Largest `j` listed for `h_j` and `Q_j` in the table.
const TABLE_BASIS_MAX: u64 = 15;

fn scalar_arg(field: &Field, cfg: &RunConfig, flag: &str, text: &str) -> Result<Scalar> {
    let parsed = parse_value(field, text).map_err(|e| Error::Parse(format!("--{flag}: {e}")))?;
    parsed.to_scalar(cfg.prec)
}

fn series_arg(field: &Field, cfg: &RunConfig, flag: &str, text: &str) -> Result<LaurentSeries> {
    let parsed = parse_value(field, text).map_err(|e| Error::Parse(format!("--{flag}: {e}")))?;
    parsed.to_series(cfg.prec)
}

fn header(field: &Field) -> Value {
    json!({ "p": field.p(), "gamma": field.gamma(), "q": field.q(), "modulus": field.modulus() })
}

fn basis_poly_to_string(b: &BasisPoly) -> String {
    let num = tpoly_to_string(&b.num);
    if b.den.is_one() {
        num
    } else {
        format!("({num})/({})", poly_to_string(&b.den))
    }
}

fn basis_poly_to_json(b: &BasisPoly) -> Value {
    json!({ "num": tpoly_to_json(&b.num), "den": poly_to_string(&b.den) })
}

pub fn table(cfg: &RunConfig) -> Result<Output> {
    let field = cfg.field()?;
    let cache = CarlitzCache::new(&field, cfg.imax)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    writeln!(text, "q = {}, imax = {}", field.q(), cfg.imax).unwrap();
    for i in 0..=cfg.imax {
        let e = cache.e_poly(i)?;
        let f = cache.f_poly(i)?;
        let (b, d, l) = (cache.bracket(i), cache.d(i), cache.l(i));
        writeln!(text, "i = {i}").unwrap();
        writeln!(text, "  [i] = {}", poly_to_string(b)).unwrap();
        writeln!(text, "  D = {}", poly_to_string(d)).unwrap();
        writeln!(text, "  L = {}", poly_to_string(l)).unwrap();
        writeln!(text, "  e = {}", linear_to_string(&e)).unwrap();
        writeln!(text, "  f = {}", linear_to_string(&f)).unwrap();
        rows.push(json!({
            "i": i,
            "bracket": poly_to_string(b),
            "D": poly_to_string(d),
            "L": poly_to_string(l),
            "e": linear_to_json(&e),
            "f": linear_to_json(&f),
        }));
    }
    // h_j needs the base-q digits of j to fit the cached depth.
    let q = field.q() as u64;
    let jmax = q.saturating_pow(cfg.imax as u32 + 1).saturating_sub(1).min(TABLE_BASIS_MAX);
    let enumeration = field.enumerate();
    let mut basis = Vec::new();
    for j in 0..=jmax {
        let h = h_poly(&cache, j)?;
        let qj = q_poly(&field, &enumeration, j)?;
        writeln!(text, "h_{j} = {}", basis_poly_to_string(&h)).unwrap();
        writeln!(text, "Q_{j} = {}", basis_poly_to_string(&qj)).unwrap();
        basis.push(json!({ "j": j, "h": basis_poly_to_json(&h), "Q": basis_poly_to_json(&qj) }));
    }
    let json = json!({ "field": header(&field), "imax": cfg.imax, "rows": rows, "basis": basis });
    Ok(Output::ok(text, json))
}

pub struct VerifyArgs {
    pub suites: Vec<Suite>,
    pub timing: bool,
    pub sequential: bool,
    pub corrupt_d: Option<usize>,
}

pub fn verify(cfg: &RunConfig, args: &VerifyArgs) -> Result<Output> {
    let field = cfg.field()?;
    let params = SuiteParams {
        field: field.clone(),
        imax: cfg.imax,
        m: cfg.m,
        prec: cfg.prec,
        seed: cfg.seed,
        exec: if args.sequential { ExecMode::Sequential } else { ExecMode::Auto },
        corrupt_d: args.corrupt_d,
        timing: args.timing,
    };
    let reports: Vec<SuiteReport> = args.suites.iter().map(|&s| run_suite(s, &params)).collect();
    let status = exit_status(&reports);
    let verdict = match status {
        0 => "pass",
        3 => "precision-exhausted",
        _ => "fail",
    };
    let mut text = String::new();
    for r in &reports {
        write_report(&mut text, r);
    }
    writeln!(text, "result: {verdict}").unwrap();
    let json = json!({
        "field": header(&field),
        "imax": cfg.imax,
        "M": cfg.m,
        "prec": cfg.prec,
        "seed": cfg.seed,
        "result": verdict,
        "suites": reports,
    });
    Ok(Output { text, json, status, note: None })
}

fn write_report(out: &mut String, r: &SuiteReport) {
    write!(out, "{} (q = {}, seed = {}): {}/{} passed", r.suite, r.q, r.seed, r.passed, r.run).unwrap();
    if r.exhausted > 0 {
        write!(out, ", {} precision exhausted", r.exhausted).unwrap();
    }
    if let Some(ms) = r.wall_time_ms {
        write!(out, " in {ms} ms").unwrap();
    }
    out.push('\n');
    for c in &r.checks {
        let prec = c.precision.as_deref().unwrap_or("-");
        writeln!(out, "  {}: {}/{} [{prec}]", c.name, c.passed, c.run).unwrap();
    }
    if let Some(c) = &r.counterexample {
        let kind = serde_json::to_value(&c.kind).unwrap_or(Value::Null);
        writeln!(out, "  counterexample: {} case {} ({})", c.check, c.case, kind.as_str().unwrap_or("?")).unwrap();
        writeln!(out, "    inputs: {}", c.inputs).unwrap();
        writeln!(out, "    detail: {}", c.detail).unwrap();
    }
}

/// `f_0(t), ..., f_imax(t)`, or `phi(t)` for the given coefficients.
pub fn eval(cfg: &RunConfig, t: &str, coeffs: &[String]) -> Result<Output> {
    let field = cfg.field()?;
    let t = scalar_arg(&field, cfg, "t", t)?;
    check_in_ring(&t)?;
    let mut text = String::new();
    if coeffs.is_empty() {
        let cache = CarlitzCache::new(&field, cfg.imax)?;
        let mut values = Vec::new();
        for i in 0..=cfg.imax {
            let v = cache.f_value(i, &t)?;
            writeln!(text, "f_{i}(t) = {}", scalar_to_string(&v)).unwrap();
            values
                .push(json!({ "i": i, "value": scalar_to_json(&v), "precision": precision_to_string(v.precision()) }));
        }
        return Ok(Output::ok(text, json!({ "t": scalar_to_json(&t), "f": values })));
    }
    let cs = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| scalar_arg(&field, cfg, &format!("c (entry {i})"), c))
        .collect::<Result<Vec<_>>>()?;
    let phi = CarlitzCoeffs::new(&field, cs);
    let cache = CarlitzCache::new(&field, phi.len() - 1)?;
    let v = phi.eval(&cache, &t)?;
    let precision = precision_to_string(v.precision());
    writeln!(text, "phi(t) = {}", scalar_to_string(&v)).unwrap();
    writeln!(text, "precision: {precision}").unwrap();
    Ok(Output::ok(text, json!({ "t": scalar_to_json(&t), "value": scalar_to_json(&v), "precision": precision })))
}

fn certified(name: &str, arg: &str, input: &LaurentSeries, c: &Certified) -> Output {
    let value = c.value.truncate_abs(c.precision);
    let precision = precision_to_string(Some(c.precision));
    let text = format!("{name} = {}\nprecision: {precision}\nterms: {}\n", laurent_to_string(&value), c.terms + 1);
    let json = json!({
        arg: laurent_to_json(input),
        "value": laurent_to_json(&value),
        "precision": precision,
        "terms": c.terms + 1,
    });
    Output::ok(text, json)
}

/// Both series are F_q-linear, so an exact zero maps to an exact zero.
fn exact_zero(field: &Field, name: &str, arg: &str, text: &str) -> Option<Output> {
    let zero = parse_value(field, text).ok()?;
    if !zero.terms.is_empty() || zero.order.is_some() {
        return None;
    }
    let zero = scalar_to_json(&Scalar::zero(field));
    let json = json!({ arg: zero, "value": zero, "precision": "exact", "terms": 0 });
    Some(Output::ok(format!("{name} = 0\nprecision: exact\nterms: 0\n"), json))
}

fn target(cfg: &RunConfig, s: &LaurentSeries) -> Ratio<i64> {
    Ratio::new(cfg.prec, s.denom() as i64)
}

pub fn exp(cfg: &RunConfig, z: &str) -> Result<Output> {
    let field = cfg.field()?;
    if let Some(out) = exact_zero(&field, "e_C(z)", "z", z) {
        return Ok(out);
    }
    let z = series_arg(&field, cfg, "z", z)?;
    let cache = CarlitzCache::new(&field, 1)?;
    let want = target(cfg, &z);
    let c = carlitz_exp(&cache, &z, want)?;
    Ok(certified("e_C(z)", "z", &z, &c).short_of(c.precision, want))
}

pub fn rho_cmd(cfg: &RunConfig, zeta: &str) -> Result<Output> {
    let field = cfg.field()?;
    if let Some(out) = exact_zero(&field, "rho(zeta)", "zeta", zeta) {
        return Ok(out);
    }
    let zeta = series_arg(&field, cfg, "zeta", zeta)?;
    let cache = CarlitzCache::new(&field, 1)?;
    let want = target(cfg, &zeta);
    let c = rho(&cache, &zeta, want)?;
    Ok(certified("rho(zeta)", "zeta", &zeta, &c).short_of(c.precision, want))
}

/// `sum_{n<M} e_C(z)^(q^n) f_n(t)` against `e_C(tz)`.
pub fn wz(cfg: &RunConfig, z: &str, t: &str) -> Result<Output> {
    let field = cfg.field()?;
    let z = series_arg(&field, cfg, "z", z)?;
    let t = scalar_arg(&field, cfg, "t", t)?;
    let cache = CarlitzCache::new(&field, 1)?;
    let want = target(cfg, &z);
    let w = wz_check(&cache, &z, &t, cfg.m, want)?;
    let precision = precision_to_string(Some(w.precision));
    let tail = w.tail.map_or("none".to_string(), |v| precision_to_string(Some(v)));
    let expansion = w.expansion.truncate_abs(w.precision);
    let direct = w.direct.truncate_abs(w.precision);
    let mut text = String::new();
    writeln!(text, "expansion = {}", laurent_to_string(&expansion)).unwrap();
    writeln!(text, "e_C(tz) = {}", laurent_to_string(&direct)).unwrap();
    writeln!(text, "tail: {tail}").unwrap();
    writeln!(text, "precision: {precision}").unwrap();
    writeln!(text, "agree: {}", w.agree).unwrap();
    let json = json!({
        "z": laurent_to_json(&z),
        "t": scalar_to_json(&t),
        "M": cfg.m,
        "expansion": laurent_to_json(&expansion),
        "direct": laurent_to_json(&direct),
        "tail": tail,
        "precision": precision,
        "agree": w.agree,
    });
    Ok(Output { text, json, status: if w.agree { 0 } else { 1 }, note: None }.short_of(w.precision, want))
}

/// The eigenvector of `a-` with eigenvalue `lambda` starting at `c0`, and
/// the residual `a- u - lambda u` on the first `M - 1` coefficients.
pub fn coherent(cfg: &RunConfig, lambda: &str, c0: &str) -> Result<Output> {
    let field = cfg.field()?;
    let lambda = scalar_arg(&field, cfg, "lambda", lambda)?;
    let c0 = scalar_arg(&field, cfg, "c0", c0)?;
    let m = cfg.m;
    let u = coherent_state(&lambda, &c0, m)?;
    let down = a_minus(&u)?;
    let want = u.resized(m - 1).scale(&lambda);
    let residual: Vec<Scalar> = (0..m - 1).map(|i| down.coeff(i).sub(&want.coeff(i))).collect();
    let (zero, prec) = down.agree(&want);
    let precision = precision_to_string(prec);
    let mut text = String::new();
    for (n, c) in u.coeffs().iter().enumerate() {
        writeln!(text, "c_{n} = {}", scalar_to_string(c)).unwrap();
    }
    if zero {
        writeln!(text, "residual: 0 [{precision}]").unwrap();
    } else {
        for (n, r) in residual.iter().enumerate() {
            writeln!(text, "residual_{n} = {}", scalar_to_string(r)).unwrap();
        }
    }
    let json = json!({
        "lambda": scalar_to_json(&lambda),
        "c0": scalar_to_json(&c0),
        "M": m,
        "coeffs": u.coeffs().iter().map(scalar_to_json).collect::<Vec<_>>(),
        "residual": residual.iter().map(scalar_to_json).collect::<Vec<_>>(),
        "residual_zero": zero,
        "precision": precision,
    });
    Ok(Output { text, json, status: if zero { 0 } else { 1 }, note: None })
}

/// `h_n = sum_i c_ni Q_i` with the size of the diagonal coefficient.
pub fn expand_h(cfg: &RunConfig, n: u64) -> Result<Output> {
    let field = cfg.field()?;
    let depth = DigitExpansion::new(n, field.q()).digits().len().saturating_sub(1);
    let cache = CarlitzCache::new(&field, depth)?;
    let enumeration = field.enumerate();
    let h = expand_h_in_q(&cache, &enumeration, n)?;
    let (l, kappa) = l_and_kappa(&field, &enumeration, n);
    let diag = h.coeffs.last().map(|c| c.abs_val().to_string()).unwrap_or_default();
    let mut text = String::new();
    for (i, c) in h.coeffs.iter().enumerate() {
        writeln!(text, "c_{n},{i} = {}", ratfunc_to_string(c)).unwrap();
    }
    writeln!(text, "|c_{n},{n}| = {diag}").unwrap();
    writeln!(text, "l_{n} = {l}, kappa_{n} = {kappa}").unwrap();
    let json = json!({
        "field": header(&field),
        "n": n,
        "coeffs": h.coeffs.iter().map(ratfunc_to_json).collect::<Vec<_>>(),
        "diagonal_abs": diag,
        "l": l,
        "kappa": kappa,
    });
    Ok(Output::ok(text, json))
}
