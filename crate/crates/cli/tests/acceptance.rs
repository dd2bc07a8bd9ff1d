//! The ten acceptance criteria. Each prints one PASS/FAIL line; the test
//! fails if any criterion does.

use std::process::Command;
use std::time::{Duration, Instant};

use carlitz_core::algebra::{Field, Scalar};
use carlitz_core::carlitz::{e_product_oracle, CarlitzCache};
use carlitz_core::space::{commutator_defect, CarlitzCoeffs};
use carlitz_core::verify::{run_factorials, run_ladder, run_suite, CheckReport, Suite, SuiteParams, SuiteReport};
use serde_json::Value;

type Outcome = Result<String, String>;

/// (p, gamma, imax) for the q = 2, 3, 4 runs.
const LADDER: [(u32, u32, usize); 3] = [(2, 1, 8), (3, 1, 5), (2, 2, 4)];

fn params(p: u32, gamma: u32, imax: usize) -> SuiteParams {
    let field = Field::new(p, gamma).unwrap();
    SuiteParams { imax, ..SuiteParams::new(&field) }
}

fn suite(s: Suite, p: u32, gamma: u32, imax: usize) -> SuiteReport {
    run_suite(s, &params(p, gamma, imax))
}

fn find<'a>(r: &'a SuiteReport, name: &str) -> std::result::Result<&'a CheckReport, String> {
    r.checks.iter().find(|c| c.name == name).ok_or_else(|| format!("q={}: no check {name}", r.q))
}

/// All cases of the named check passed, at least `min_run` of them, and
/// `exact` when asked.
fn passed(r: &SuiteReport, name: &str, min_run: usize, exact: bool) -> std::result::Result<String, String> {
    let c = find(r, name)?;
    let prec = c.precision.clone().unwrap_or_default();
    if c.run < min_run || c.passed != c.run || (exact && prec != "exact") {
        return Err(format!(
            "q={} {name}: {}/{} (need >= {min_run}) [{prec}]; counterexample {:?}",
            r.q, c.passed, c.run, r.counterexample
        ));
    }
    Ok(format!("q={} {name} {}/{} [{prec}]", r.q, c.passed, c.run))
}

fn join(parts: Vec<std::result::Result<String, String>>) -> Outcome {
    let mut ok = Vec::new();
    for p in parts {
        ok.push(p?);
    }
    Ok(ok.join("; "))
}

fn basis_equivalence() -> Outcome {
    let mut parts = Vec::new();
    for (p, gamma, imax) in [(2, 1, 10), (3, 1, 7), (2, 2, 5)] {
        let field = Field::new(p, gamma).unwrap();
        let cache = CarlitzCache::new(&field, imax).map_err(|e| e.to_string())?;
        for i in 0..=imax {
            let prod = e_product_oracle(&field, i).map_err(|e| e.to_string())?;
            if prod != cache.e_poly(i).map_err(|e| e.to_string())? {
                return Err(format!("q={} e_{i}: product and sum differ", field.q()));
            }
        }
        parts.push(format!("q={} i<={imax}", field.q()));
    }
    Ok(parts.join(", "))
}

fn factorial_laws() -> Outcome {
    let mut parts = Vec::new();
    for (p, g, imax) in LADDER {
        let r = run_factorials(&params(p, g, imax));
        parts.push(passed(&r, "factorial-recurrence-equals-product", imax + 1, true));
        parts.push(passed(&r, "factorial-orders", imax + 1, true));
    }
    join(parts)
}

fn ladder() -> Outcome {
    let mut parts = Vec::new();
    for (p, g, imax) in LADDER {
        let r = run_ladder(&params(p, g, imax));
        parts.push(passed(&r, "difference-lowers-f", imax, true));
        parts.push(passed(&r, "raising", imax, true));
        parts.push(passed(&r, "lowering", imax, true));
        parts.push(passed(&r, "lowering-kills-f0", 1, true));
        parts.push(passed(&r, "number-operator", imax + 1, true));
    }
    join(parts)
}

fn commutator() -> Outcome {
    let mut parts = Vec::new();
    for (p, g, imax) in LADDER {
        let r = suite(Suite::Oscillator, p, g, imax);
        parts.push(passed(&r, "commutator", 100, false));
        parts.push(passed(&r, "commutator-q-th-power", 100, true));
        // [1]^(1/q) needs the denominator q.
        let field = Field::new(p, g).unwrap();
        let (_, rhs) = commutator_defect(&CarlitzCoeffs::unit(&field, 0, 1)).map_err(|e| e.to_string())?;
        match rhs.coeff(0) {
            Scalar::Series(s) if s.denom() == field.q() as u64 => {}
            other => return Err(format!("q={}: [1]^(1/q) came out as {other:?}", field.q())),
        }
    }
    join(parts)
}

fn composition() -> Outcome {
    let mut parts = Vec::new();
    for (p, g, imax, want) in [(2, 1, 8, "x^32"), (3, 1, 5, "x^27")] {
        let r = suite(Suite::Exp, p, g, imax);
        let c = find(&r, "exp-of-rho")?;
        if c.precision.as_deref() != Some(want) {
            return Err(format!("q={}: certified {:?}, need {want}", r.q, c.precision));
        }
        parts.push(passed(&r, "exp-of-rho", 50, false));
    }
    join(parts)
}

fn expansion() -> Outcome {
    let mut parts = Vec::new();
    for (p, g, imax) in LADDER {
        let r = suite(Suite::Exp, p, g, imax);
        parts.push(passed(&r, "partial-expansion-identity", 6, true));
        parts.push(passed(&r, "expansion-two-routes", 12, false));
    }
    join(parts)
}

fn orthonormality() -> Outcome {
    let mut parts = Vec::new();
    for (p, g, imax) in [(2, 1, 8), (3, 1, 5)] {
        let r = suite(Suite::Orthonormal, p, g, imax);
        parts.push(passed(&r, "sampled-norm-equals-sup", 100, true));
    }
    join(parts)
}

fn digit_basis() -> Outcome {
    let mut parts = Vec::new();
    for (p, g, imax, n) in [(2, 1, 8, 32), (3, 1, 5, 27), (2, 2, 4, 64)] {
        let r = suite(Suite::Prop2, p, g, imax);
        parts.push(passed(&r, "kappa-equals-digit-sum", 512, true));
        parts.push(passed(&r, "h-expansion", n, true));
        if r.q >= 4 {
            parts.push(passed(&r, "kappa-equals-digit-sum-rotated", 512, true));
            parts.push(passed(&r, "h-expansion-rotated", n, true));
        }
        if !r.ok() {
            parts.push(Err(format!("q={}: {}/{} prop2 cases", r.q, r.passed, r.run)));
        }
    }
    join(parts)
}

fn coherent() -> Outcome {
    let mut parts = Vec::new();
    for (p, g, imax) in LADDER {
        let r = suite(Suite::Coherent, p, g, imax);
        parts.push(passed(&r, "eigen-relation", 20, true));
        parts.push(passed(&r, "closed-form", 1, false));
        parts.push(passed(&r, "exp-two-routes", 1, false));
    }
    join(parts)
}

fn carlitz(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_carlitz")).args(args).env_remove("CARLITZ_DEFAULTS").output().unwrap()
}

fn cli() -> Outcome {
    let clean = carlitz(&["verify", "all"]);
    if clean.status.code() != Some(0) {
        return Err(format!("verify all exited {:?}", clean.status.code()));
    }
    let faulty = carlitz(&["--format", "json", "verify", "all", "--inject-fault", "d2"]);
    if faulty.status.code() != Some(1) {
        return Err(format!("corrupted D_2: exit {:?}", faulty.status.code()));
    }
    let doc: Value = serde_json::from_slice(&faulty.stdout).map_err(|e| e.to_string())?;
    let suites = doc["suites"].as_array().ok_or("no suites in report")?;
    for s in suites.iter().take(3) {
        let ce = &s["counterexample"];
        if s["passed"] == s["run"] || ce.get("inputs").is_none() || ce["kind"] != "failure" {
            return Err(format!("suite {} did not fail with a counterexample", s["suite"]));
        }
    }
    let seeded = ["verify", "all", "--seed", "7"];
    let (a, b) = (carlitz(&seeded), carlitz(&seeded));
    if a.stdout != b.stdout {
        return Err("two runs with --seed 7 differ".into());
    }
    let names: Vec<_> = suites.iter().take(3).map(|s| s["suite"].as_str().unwrap_or("?").to_string()).collect();
    Ok(format!("clean exit 0; corrupted D_2 fails {} with exit 1; seeded reruns identical", names.join(", ")))
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("basis equivalence", 10, basis_equivalence),
        ("factorial laws", 1, factorial_laws),
        ("ladder operators", 1, ladder),
        ("commutator", 5, commutator),
        ("composition identity", 10, composition),
        ("basis expansion of the exponential", 5, expansion),
        ("orthonormality", 30, orthonormality),
        ("digit basis", 30, digit_basis),
        ("coherent states", 10, coherent),
        ("command line", 60, cli),
    ];
    let mut failed = Vec::new();
    for (n, (title, budget, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > Duration::from_secs(budget) => Err(format!("over the {budget} s budget; {d}")),
            o => o,
        };
        let secs = elapsed.as_secs_f64();
        match &outcome {
            Ok(detail) => println!("criterion {:>2} PASS {title} ({secs:.2} s): {detail}", n + 1),
            Err(detail) => {
                println!("criterion {:>2} FAIL {title} ({secs:.2} s): {detail}", n + 1);
                failed.push(n + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
