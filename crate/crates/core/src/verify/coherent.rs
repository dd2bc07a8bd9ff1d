//! Eigenvectors of the lowering operator.

use num_rational::Ratio;
use rand::Rng;
use serde_json::json;

use crate::algebra::{FqPoly, LaurentSeries, RatFunc, Scalar};
use crate::expseries::coherent_check;
use crate::format::{laurent_to_json, scalar_to_json};
use crate::space::{a_minus, coherent_closed_form, coherent_state};

use super::gen::{coeffs_json, series_with_val, with_val};
use super::{Ctx, Verdict};

const CASES: usize = 20;
const EXP_PAIRS: usize = 8;

pub(super) fn run(ctx: &mut Ctx) {
    let m = ctx.params.m.max(2);
    let cache = match ctx.params.cache(m - 1) {
        Ok(c) => c,
        Err(e) => return ctx.setup_failed("cache", e),
    };
    let field = ctx.field().clone();
    let q = ctx.q() as i64;

    // x^a u with u a unit; a = -1 gives |lambda| > 1.
    let scaled = |rng: &mut rand_chacha::ChaCha8Rng, a: i64| -> Scalar {
        let u = with_val(rng, &field, 0, 2);
        if a >= 0 {
            Scalar::from(u.shift(a as usize))
        } else {
            Scalar::Exact(RatFunc::new(u, with_val(rng, &field, 0, 1).shift((-a) as usize)).expect("nonzero"))
        }
    };

    // Eigenvalue pairs with q v(lambda) + (q-1) v(c0) > 0.
    let mut rng = ctx.rng(0);
    let pairs: Vec<_> = (0..CASES)
        .map(|_| {
            let a = rng.gen_range(-1..=1i64);
            let lambda = scaled(&mut rng, a);
            let v = (-q * a).div_euclid(q - 1) + 1 + rng.gen_range(0..2);
            let c0 = scaled(&mut rng, v);
            (json!({ "lambda": scalar_to_json(&lambda), "c0": scalar_to_json(&c0), "M": m }), (lambda, c0))
        })
        .collect();
    ctx.check("eigen-relation", pairs.clone(), |(lambda, c0)| {
        let u = coherent_state(lambda, c0, m)?;
        let down = a_minus(&u)?;
        let want = u.resized(m - 1).scale(lambda);
        Ok(Verdict::exact(down == want, || format!("a- u = {down:?}, lambda u = {want:?}")))
    });
    ctx.check("coefficients-decay", pairs, |(lambda, c0)| {
        let u = coherent_state(lambda, c0, m)?;
        let sizes: Vec<_> = u.coeffs().iter().map(Scalar::abs_val).collect();
        let ok = sizes.windows(2).all(|w| w[1] < w[0]);
        Ok(Verdict::exact(ok, || format!("|c_n| = {sizes:?} for u = {}", coeffs_json(&u))))
    });

    // lambda = nu^(q-1): the closed form needs q v(nu) + v(c0) > 0.
    let mut rng = ctx.rng(1);
    let pairs: Vec<_> = (0..CASES)
        .map(|_| {
            let a = rng.gen_range(-1..=1i64);
            let nu = scaled(&mut rng, a);
            let v = 1 - q * a + rng.gen_range(0..2);
            let c0 = scaled(&mut rng, v);
            (json!({ "nu": scalar_to_json(&nu), "c0": scalar_to_json(&c0), "M": m }), (nu, c0))
        })
        .collect();
    ctx.check("closed-form", pairs, |(nu, c0)| {
        let rec = coherent_state(&nu.pow(q as u64 - 1), c0, m)?;
        let closed = coherent_closed_form(nu, c0, m)?;
        Ok(Verdict::exact(rec == closed, || format!("recursion {rec:?}, closed form {closed:?}")))
    });

    // Pointwise against the exponential, with |c0 nu^q| <= q^(-2).
    let target = ctx.params.analytic_target();
    let prec = target + 8;
    let mut rng = ctx.rng(2);
    let x = FqPoly::x(&field);
    let one = FqPoly::one(&field);
    let ts: Vec<Scalar> = [one.clone(), x.clone(), x.add(&one), x.pow(2)].into_iter().map(Scalar::from).collect();
    let mut cases = Vec::new();
    for _ in 0..EXP_PAIRS {
        let a = rng.gen_range(0..=1i64);
        let u = with_val(&mut rng, &field, 0, 3);
        let nu = LaurentSeries::from_terms(&field, 1, a, u.coeffs().to_vec(), prec + a);
        let vc0 = (2 - q * a).max(0) as usize + rng.gen_range(0..2);
        let c0 = series_with_val(&mut rng, &field, vc0, prec);
        for t in &ts {
            let inputs = json!({
                "nu": laurent_to_json(&nu), "c0": laurent_to_json(&c0), "t": scalar_to_json(t),
                "M": m, "target": target,
            });
            cases.push((inputs, (nu.clone(), c0.clone(), t.clone())));
        }
    }
    ctx.check("exp-two-routes", cases, |(nu, c0, t)| {
        let r = coherent_check(&cache, nu, c0, t, m, Ratio::from_integer(target))?;
        Ok(Verdict::exact(r.agree, || format!("routes differ below x^{}", r.precision)).and_prec(r.precision))
    });
}
