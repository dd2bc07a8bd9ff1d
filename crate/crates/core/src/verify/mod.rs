//! Identity suites. Each suite is a list of named checks; each check runs a
//! list of cases, possibly in parallel, and the results are merged in case
//! order so that a report depends only on its parameters and seed.

mod basis;
mod coherent;
mod exp;
mod gen;
mod orthonormal;
mod oscillator;
mod prop2;

use std::time::Instant;

use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::algebra::{min_prec, Field};
use crate::carlitz::CarlitzCache;
use crate::error::{Error, Result};
use crate::exec::{map_cases, ExecMode};
use crate::format::precision_to_string;

type Q = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Basis,
    Orthonormal,
    Prop2,
    Exp,
    Oscillator,
    Coherent,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Basis, Suite::Orthonormal, Suite::Prop2, Suite::Exp, Suite::Oscillator, Suite::Coherent];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Basis => "basis",
            Suite::Orthonormal => "orthonormal",
            Suite::Prop2 => "prop2",
            Suite::Exp => "exp",
            Suite::Oscillator => "oscillator",
            Suite::Coherent => "coherent",
        }
    }

    /// A suite name, or `all` for every suite.
    pub fn parse_selection(s: &str) -> Option<Vec<Suite>> {
        if s == "all" {
            return Some(Suite::ALL.to_vec());
        }
        Suite::ALL.iter().copied().find(|x| x.name() == s).map(|x| vec![x])
    }

    fn stream(self) -> u64 {
        Suite::ALL.iter().position(|&x| x == self).unwrap_or(0) as u64
    }
}

/// Everything a suite run depends on.
#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub field: Field,
    pub imax: usize,
    pub m: usize,
    /// Working precision in x-exponent units; analytic checks certify to
    /// at most this.
    pub prec: i64,
    pub seed: u64,
    pub exec: ExecMode,
    /// Replace `D_i` by `D_i + 1`. Only for exercising the failure path.
    pub corrupt_d: Option<usize>,
    pub timing: bool,
}

impl SuiteParams {
    pub fn new(field: &Field) -> SuiteParams {
        SuiteParams {
            field: field.clone(),
            imax: 8,
            m: 8,
            prec: 64,
            seed: 0,
            exec: ExecMode::Auto,
            corrupt_d: None,
            timing: false,
        }
    }

    pub(crate) fn cache(&self, depth: usize) -> Result<CarlitzCache> {
        match self.corrupt_d {
            Some(i) if i <= depth => CarlitzCache::with_corrupted_d(&self.field, depth, i),
            _ => CarlitzCache::new(&self.field, depth),
        }
    }

    /// Precision the series checks aim for: the first power of q at or
    /// above 27, within the working precision.
    pub fn analytic_target(&self) -> i64 {
        let q = self.field.q() as i64;
        let mut t = q;
        while t < 27 {
            t *= q;
        }
        t.min(self.prec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Failure,
    PrecisionExhausted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub case: usize,
    pub kind: Kind,
    pub inputs: Value,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub run: usize,
    pub passed: usize,
    pub exhausted: usize,
    /// Worst certified precision over the passing cases: `exact`, or the
    /// power of x the comparison was made modulo. Absent when nothing ran.
    pub precision: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub q: u32,
    pub seed: u64,
    pub run: usize,
    pub passed: usize,
    pub exhausted: usize,
    pub counterexample: Option<Counterexample>,
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.passed == self.run
    }

    fn push(&mut self, check: CheckOutcome) {
        self.run += check.report.run;
        self.passed += check.report.passed;
        self.exhausted += check.report.exhausted;
        let replace = match (&self.counterexample, &check.counterexample) {
            (None, Some(_)) => true,
            (Some(a), Some(b)) => a.kind == Kind::PrecisionExhausted && b.kind == Kind::Failure,
            _ => false,
        };
        if replace {
            self.counterexample = check.counterexample;
        }
        self.checks.push(check.report);
    }
}

/// Result of one case: `Ok(Some(p))` passed at precision `p`, `Ok(None)`
/// passed exactly.
pub(crate) enum Verdict {
    Pass(Option<Q>),
    Fail(String),
}

impl Verdict {
    pub(crate) fn exact(ok: bool, detail: impl FnOnce() -> String) -> Verdict {
        if ok {
            Verdict::Pass(None)
        } else {
            Verdict::Fail(detail())
        }
    }

    /// From a `(equal, precision)` comparison.
    pub(crate) fn agree(cmp: (bool, Option<Q>), detail: impl FnOnce() -> String) -> Verdict {
        if cmp.0 {
            Verdict::Pass(cmp.1)
        } else {
            Verdict::Fail(detail())
        }
    }

    /// A pass that only holds modulo `x^p`.
    pub(crate) fn and_prec(self, p: Q) -> Verdict {
        self.and(Verdict::Pass(Some(p)))
    }

    fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Pass(a), Verdict::Pass(b)) => Verdict::Pass(min_prec(a, b)),
            (Verdict::Fail(d), _) | (_, Verdict::Fail(d)) => Verdict::Fail(d),
        }
    }
}

/// Combine verdicts, keeping the first failure.
pub(crate) fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    verdicts.into_iter().fold(Verdict::Pass(None), Verdict::and)
}

struct CheckOutcome {
    report: CheckReport,
    counterexample: Option<Counterexample>,
}

/// Shared state for the checks of one suite.
pub(crate) struct Ctx<'a> {
    pub params: &'a SuiteParams,
    suite: Suite,
    report: SuiteReport,
}

impl Ctx<'_> {
    pub fn field(&self) -> &Field {
        &self.params.field
    }

    pub fn q(&self) -> u64 {
        self.params.field.q() as u64
    }

    /// A generator for check number `stream` of this suite.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.params.seed);
        rng.set_stream((self.suite.stream() << 16) | stream);
        rng
    }

    pub fn check<T, F>(&mut self, name: &str, cases: Vec<(Value, T)>, f: F)
    where
        T: Send + Sync,
        F: Fn(&T) -> Result<Verdict> + Sync + Send,
    {
        let run = cases.len();
        let outcomes = map_cases(self.params.exec, cases, |(inputs, data)| (inputs, f(&data)));
        let mut report = CheckReport { name: name.to_string(), run, passed: 0, exhausted: 0, precision: None };
        let mut counterexample: Option<Counterexample> = None;
        let mut prec: Option<Option<Q>> = None;
        for (case, (inputs, outcome)) in outcomes.into_iter().enumerate() {
            let failure = match outcome {
                Ok(Verdict::Pass(p)) => {
                    report.passed += 1;
                    prec = Some(match prec {
                        None => p,
                        Some(old) => min_prec(old, p),
                    });
                    None
                }
                Ok(Verdict::Fail(detail)) => Some((Kind::Failure, detail)),
                Err(Error::PrecisionExhausted(detail)) => {
                    report.exhausted += 1;
                    Some((Kind::PrecisionExhausted, detail))
                }
                Err(e) => Some((Kind::Failure, e.to_string())),
            };
            if let Some((kind, detail)) = failure {
                let better = match &counterexample {
                    None => true,
                    Some(c) => c.kind == Kind::PrecisionExhausted && kind == Kind::Failure,
                };
                if better {
                    let detail = brief(detail);
                    counterexample = Some(Counterexample { check: name.to_string(), case, kind, inputs, detail });
                }
            }
        }
        report.precision = prec.map(precision_to_string);
        self.report.push(CheckOutcome { report, counterexample });
    }

    /// Records a setup error (such as a cache that cannot be built) as a
    /// single failed case.
    pub fn setup_failed(&mut self, name: &str, e: Error) {
        self.check(name, vec![(Value::Null, ())], |_| Err(e.clone()));
    }
}

/// Details can quote large polynomials; keep the head.
fn brief(mut s: String) -> String {
    const LIMIT: usize = 400;
    if s.len() > LIMIT {
        let mut cut = LIMIT;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        s.truncate(cut);
        s.push_str("...");
    }
    s
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> SuiteReport {
    run_with(suite, params, |ctx| match suite {
        Suite::Basis => basis::run(ctx),
        Suite::Orthonormal => orthonormal::run(ctx),
        Suite::Prop2 => prop2::run(ctx),
        Suite::Exp => exp::run(ctx),
        Suite::Oscillator => oscillator::run(ctx),
        Suite::Coherent => coherent::run(ctx),
    })
}

/// Only the factorial checks of the basis suite.
pub fn run_factorials(params: &SuiteParams) -> SuiteReport {
    run_with(Suite::Basis, params, basis::run_factorials)
}

/// Only the basis-level ladder checks of the oscillator suite (difference,
/// raising, lowering, number operator), without the random-function cases.
pub fn run_ladder(params: &SuiteParams) -> SuiteReport {
    run_with(Suite::Oscillator, params, oscillator::run_ladder)
}

fn run_with(suite: Suite, params: &SuiteParams, body: impl FnOnce(&mut Ctx)) -> SuiteReport {
    let start = Instant::now();
    let report = SuiteReport {
        suite: suite.name().to_string(),
        q: params.field.q(),
        seed: params.seed,
        run: 0,
        passed: 0,
        exhausted: 0,
        counterexample: None,
        checks: Vec::new(),
        wall_time_ms: None,
    };
    let mut ctx = Ctx { params, suite, report };
    body(&mut ctx);
    let mut report = ctx.report;
    if params.timing {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    report
}

/// The process exit status for a set of reports: 0 when everything
/// passed, 1 on any failure, 3 when the only shortfall is exhausted
/// precision.
pub fn exit_status(reports: &[SuiteReport]) -> i32 {
    let failed = reports.iter().any(|r| r.passed + r.exhausted < r.run);
    let exhausted = reports.iter().any(|r| r.exhausted > 0);
    if failed {
        1
    } else if exhausted {
        3
    } else {
        0
    }
}
