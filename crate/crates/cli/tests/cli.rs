use std::io::Write;
use std::process::{Command, Output};

use carlitz_core::algebra::Field;
use carlitz_core::format::{
    laurent_from_json, laurent_to_json, parse_value, poly_to_string, scalar_from_json, scalar_to_json,
};
use serde_json::Value;

fn carlitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carlitz")).args(args).env_remove("CARLITZ_DEFAULTS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = carlitz(&full);
    (serde_json::from_slice(&o.stdout).unwrap_or(Value::Null), o.status.code().unwrap())
}

// GF(2)[x] as bit masks, bit k = coefficient of x^k.

fn clmul(a: u128, b: u128) -> u128 {
    (0..128).filter(|k| b >> k & 1 == 1).fold(0, |acc, k| acc ^ (a << k))
}

fn mask_to_string(m: u128) -> String {
    let terms: Vec<String> = (0..128)
        .rev()
        .filter(|k| m >> k & 1 == 1)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// `D_i` and `L_i` over F_2 from `D_i = [i] D_(i-1)^2`, `L_i = [i] L_(i-1)`.
fn factorials_gf2(i: usize) -> (u128, u128) {
    let (mut d, mut l) = (1u128, 1u128);
    for k in 1..=i {
        let b = (1u128 << (1 << k)) | 2;
        d = clmul(b, clmul(d, d));
        l = clmul(b, l);
    }
    (d, l)
}

/// Inverse of a unit power series mod x^n.
fn inv_series(u: u128, n: usize) -> u128 {
    assert_eq!(u & 1, 1);
    let mut inv = 1u128;
    for k in 1..n {
        // coefficient k of u * inv must vanish
        let prod = clmul(u, inv);
        if prod >> k & 1 == 1 {
            inv |= 1 << k;
        }
    }
    inv & ((1u128 << n) - 1)
}

/// `e_C(x^a) mod x^n` over F_2 as a bit mask.
fn exp_gf2(a: usize, n: usize) -> u128 {
    let mut acc = 0u128;
    for j in 0.. {
        let (d, _) = factorials_gf2(j);
        let v = d.trailing_zeros() as usize;
        let shift = a * (1 << j) - v;
        if shift >= n {
            break;
        }
        acc ^= inv_series(d >> v, n - shift) << shift;
    }
    acc
}

fn row<'a>(doc: &'a Value, i: usize) -> &'a Value {
    &doc["rows"][i]
}

#[test]
fn table_factorials_match_bracket_products() {
    let (doc, code) = json(&["table", "--p", "2", "--gamma", "1", "--imax", "2"]);
    assert_eq!(code, 0);
    let (d2, l2) = factorials_gf2(2);
    assert_eq!(row(&doc, 2)["D"], mask_to_string(d2));
    assert_eq!(row(&doc, 2)["L"], mask_to_string(l2));
    assert_eq!(row(&doc, 2)["D"], "x^8 + x^6 + x^5 + x^3");
}

#[test]
fn table_row_zero() {
    let (doc, _) = json(&["table", "--imax", "1"]);
    assert_eq!(row(&doc, 0)["D"], "1");
    assert_eq!(row(&doc, 0)["L"], "1");
    let text = stdout(&carlitz(&["table", "--imax", "1"]));
    assert!(text.contains("i = 0\n  [i] = 0\n  D = 1\n  L = 1\n"), "{text}");
}

fn is_linear(v: &Value) -> bool {
    v.as_array().is_some_and(|terms| {
        terms.iter().all(|t| t["exp"].is_u64() && (t["coeff"].is_object() || t["coeff"].is_string()))
    })
}

fn is_basis_poly(v: &Value) -> bool {
    v["den"].is_string()
        && v["num"].as_array().is_some_and(|t| t.iter().all(|t| t["exp"].is_u64() && t["coeff"].is_string()))
}

#[test]
fn table_json_has_the_documented_shape() {
    for args in [["--p", "2", "--imax", "3"], ["--p", "3", "--imax", "2"]] {
        let mut full = vec!["table"];
        full.extend_from_slice(&args);
        let (doc, code) = json(&full);
        assert_eq!(code, 0);
        assert!(doc["field"]["q"].is_u64() && doc["field"]["modulus"].is_array());
        let imax = doc["imax"].as_u64().unwrap() as usize;
        let rows = doc["rows"].as_array().unwrap();
        assert_eq!(rows.len(), imax + 1);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r["i"], i);
            for k in ["bracket", "D", "L"] {
                assert!(r[k].is_string(), "row {i} {k}");
            }
            assert!(is_linear(&r["e"]) && is_linear(&r["f"]), "row {i}");
        }
        for (j, b) in doc["basis"].as_array().unwrap().iter().enumerate() {
            assert_eq!(b["j"], j);
            assert!(is_basis_poly(&b["h"]) && is_basis_poly(&b["Q"]), "basis {j}");
        }
    }
}

#[test]
fn table_values_reparse() {
    let (doc, _) = json(&["table", "--p", "3", "--imax", "3"]);
    let field = Field::new(3, 1).unwrap();
    for r in doc["rows"].as_array().unwrap() {
        for k in ["bracket", "D", "L"] {
            let s = r[k].as_str().unwrap();
            assert_eq!(poly_to_string(&parse_value(&field, s).unwrap().to_poly().unwrap()), s);
        }
        for t in r["f"].as_array().unwrap() {
            let c = scalar_from_json(&field, &t["coeff"]).unwrap();
            assert_eq!(scalar_to_json(&c), t["coeff"]);
        }
    }
}

fn check<'a>(doc: &'a Value, suite: &str, name: &str) -> &'a Value {
    let s = doc["suites"].as_array().unwrap().iter().find(|s| s["suite"] == suite).unwrap();
    s["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()
}

#[test]
fn verify_basis_passes() {
    let (doc, code) = json(&["verify", "basis", "--imax", "5"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"], "pass");
    for name in ["product-equals-sum", "difference-lowers-f"] {
        let c = check(&doc, "basis", name);
        assert!(c["run"].as_u64().unwrap() > 0);
        assert_eq!(c["run"], c["passed"]);
        assert_eq!(c["precision"], "exact");
    }
}

#[test]
fn verify_prop2_covers_the_stated_ranges() {
    let (doc, code) = json(&["verify", "--suite", "prop2", "--imax", "5"]);
    assert_eq!(code, 0);
    let kappa = check(&doc, "prop2", "kappa-equals-digit-sum");
    assert_eq!((kappa["run"].as_u64(), kappa["passed"].as_u64()), (Some(512), Some(512)));
    let h = check(&doc, "prop2", "h-expansion");
    assert_eq!((h["run"].as_u64(), h["passed"].as_u64()), (Some(32), Some(32)));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "all", "--seed", "7", "--imax", "4", "--M", "4"];
    let (a, b) = (carlitz(&args), carlitz(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("ms"));
}

#[test]
fn verify_sequential_matches_parallel() {
    let args = ["--format", "json", "verify", "oscillator", "--imax", "4", "--seed", "3"];
    let mut seq = args.to_vec();
    seq.push("--sequential");
    assert_eq!(carlitz(&args).stdout, carlitz(&seq).stdout);
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = carlitz(&["verify", "ladder"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
}

#[test]
fn exp_matches_series_oracle() {
    let (doc, code) = json(&["exp", "--z", "x^2", "--prec", "16"]);
    assert_eq!(code, 0);
    assert_eq!(doc["precision"], "x^16");
    let field = Field::new(2, 1).unwrap();
    let value = laurent_from_json(&field, &doc["value"]).unwrap();
    assert_eq!(laurent_to_json(&value), doc["value"]);
    let want = exp_gf2(2, 16);
    let got = value.terms().fold(0u128, |acc, (k, c)| if c.is_zero() { acc } else { acc | 1 << k });
    assert_eq!(value.prec(), 16);
    assert_eq!(got, want, "{} vs {}", mask_to_string(got), mask_to_string(want));
    assert!(stdout(&carlitz(&["exp", "--z", "x^2", "--prec", "16"])).starts_with("e_C(z) = x^2*(1 + x + "));
}

#[test]
fn exp_outside_the_disc_names_the_inequality() {
    let o = carlitz(&["exp", "--z", "x", "--prec", "16"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("|z| >= q^(-1/(q-1))"));
}

#[test]
fn exp_at_q3_starts_with_z() {
    let o = carlitz(&["--p", "3", "exp", "--z", "x", "--prec", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("e_C(z) = x*(1 + ") && text.contains("precision: x^12"), "{text}");
}

#[test]
fn exp_short_of_the_requested_precision_exits_3() {
    let o = carlitz(&["exp", "--z", "x^2 + O(x^5)"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("precision: x^5"));
}

#[test]
fn rho_of_zero() {
    let o = carlitz(&["rho", "--zeta", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("rho(zeta) = 0\n"));
}

#[test]
fn rho_then_exp_round_trips() {
    let (r, code) = json(&["--p", "3", "rho", "--zeta", "x + x^3", "--prec", "27"]);
    assert_eq!(code, 0);
    let field = Field::new(3, 1).unwrap();
    let value = laurent_from_json(&field, &r["value"]).unwrap();
    assert_eq!(value.val(), 1);
}

#[test]
fn coherent_unit_eigenvalue() {
    let (doc, code) = json(&["coherent", "--lambda", "1", "--c0", "x", "--M", "6"]);
    assert_eq!(code, 0);
    let field = Field::new(2, 1).unwrap();
    let coeffs = doc["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 6);
    for (n, c) in coeffs.iter().enumerate() {
        let want = format!("x^{}", 1u64 << n);
        let want = if n == 0 { "x".to_string() } else { want };
        assert_eq!(c["num"], want);
        assert_eq!(c["den"], "1");
        assert_eq!(&scalar_to_json(&scalar_from_json(&field, c).unwrap()), c);
    }
    assert_eq!(doc["residual_zero"], true);
    let text = stdout(&carlitz(&["coherent", "--lambda", "1", "--c0", "x", "--M", "6"]));
    assert!(text.contains("c_5 = x^32\nresidual: 0 [exact]"), "{text}");
}

#[test]
fn coherent_outside_the_domain() {
    let o = carlitz(&["coherent", "--lambda", "x^-2", "--c0", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn wz_routes_agree() {
    let (doc, code) = json(&["wz", "--z", "x^2", "--t", "x + 1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["agree"], true);
    assert_eq!(doc["expansion"], doc["direct"]);
}

#[test]
fn eval_basis_at_a_residue() {
    // f_i(x) = e_i(x) / D_i and e_i vanishes on polynomials of degree < i.
    let (doc, code) = json(&["eval", "--t", "x", "--imax", "3"]);
    assert_eq!(code, 0);
    let f = doc["f"].as_array().unwrap();
    assert_eq!(f[0]["value"]["num"], "x");
    assert_eq!(f[1]["value"]["num"], "1");
    assert_eq!(f[2]["value"]["num"], "0");
    assert_eq!(f[3]["value"]["num"], "0");
}

#[test]
fn eval_rejects_t_outside_the_ring() {
    assert_eq!(carlitz(&["eval", "--t", "x^-1"]).status.code(), Some(2));
}

#[test]
fn expand_h_diagonal_is_a_unit() {
    let (doc, code) = json(&["--p", "3", "expand-h", "--n", "7"]);
    assert_eq!(code, 0);
    assert_eq!(doc["coeffs"].as_array().unwrap().len(), 8);
    assert_eq!(doc["l"], doc["kappa"]);
}

#[test]
fn bad_fields_are_usage_errors() {
    for args in [
        vec!["--p", "4", "table"],
        vec!["--p", "2", "--gamma", "2", "--modulus", "1,1,0", "table"],
        vec!["--p", "2", "--gamma", "2", "--modulus", "0,0,1", "table"],
        vec!["--ram-cap", "6", "table"],
        vec!["--M", "0", "table"],
    ] {
        assert_eq!(carlitz(&args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(
        carlitz(&["--p", "2", "--gamma", "2", "--modulus", "1,1,1", "table", "--imax", "1"]).status.code(),
        Some(0)
    );
}

#[test]
fn defaults_file_then_flags() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"p": 3, "imax": 1}}"#).unwrap();
    let run = |extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_carlitz"));
        cmd.env("CARLITZ_DEFAULTS", f.path()).arg("table").args(extra);
        cmd.output().unwrap()
    };
    assert!(stdout(&run(&[])).starts_with("q = 3, imax = 1\n"));
    assert!(stdout(&run(&["--imax", "2"])).starts_with("q = 3, imax = 2\n"));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, r#"{{"depth": 3}}"#).unwrap();
    let o =
        Command::new(env!("CARGO_BIN_EXE_carlitz")).env("CARLITZ_DEFAULTS", bad.path()).arg("table").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn text_output_is_ascii() {
    for args in [
        vec!["table", "--imax", "2"],
        vec!["--p", "3", "exp", "--z", "x"],
        vec!["verify", "coherent"],
        vec!["eval", "--t", "x^(1/2)", "--imax", "2"],
    ] {
        assert!(carlitz(&args).stdout.is_ascii(), "{args:?}");
    }
}
