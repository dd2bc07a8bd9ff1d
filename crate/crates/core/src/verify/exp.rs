//! The exponential, its inverse, and the expansion of `e_C(tz)`.

use num_rational::Ratio;
use serde_json::json;

use crate::algebra::{FqPoly, LaurentSeries, Scalar};
use crate::expseries::{carlitz_exp, exp_partial, rho, verify_inverse, wz_check, wz_partial_coeffs};
use crate::format::{laurent_to_json, poly_to_string};

use super::gen::series_with_val;
use super::{all, Ctx, Verdict};

const COMPOSITION_CASES: usize = 50;
const PARTIAL_MAX: usize = 5;

pub(super) fn run(ctx: &mut Ctx) {
    let cache = match ctx.params.cache(PARTIAL_MAX.max(ctx.params.m)) {
        Ok(c) => c,
        Err(e) => return ctx.setup_failed("cache", e),
    };
    let field = ctx.field().clone();
    let q = ctx.q() as i64;
    let target = ctx.params.analytic_target();
    let t = Ratio::from_integer(target);
    // Smallest valuation inside the disc of convergence of e_C.
    let vmin = if q == 2 { 2 } else { 1 };

    let mut rng = ctx.rng(0);
    let zetas: Vec<_> = (0..COMPOSITION_CASES)
        .map(|i| {
            let v = vmin + i % 2;
            let z = series_with_val(&mut rng, &field, v, target + 8);
            (json!({ "zeta": laurent_to_json(&z), "target": target }), z)
        })
        .collect();

    ctx.check("exp-of-rho", zetas.clone(), |z| {
        let r = verify_inverse(&cache, z, t)?;
        Ok(Verdict::exact(r.equal, || format!("e_C(rho(zeta)) = {:?} at x^{}", r.exp.value, r.precision))
            .and_prec(r.precision))
    });

    ctx.check("rho-valuation-bound", zetas.clone(), |z| {
        let v = z.val();
        let bound = v.min(q * v - 1);
        let r = rho(&cache, z, t)?;
        let got = r.value.valuation();
        Ok(Verdict::exact(got.is_none_or(|g| g >= Ratio::from_integer(bound)), || {
            format!("v(rho(zeta)) = {got:?} below min(v, qv - 1) = {bound}")
        })
        .and_prec(r.precision))
    });

    // The certified sum against the plain partial sum of the series.
    ctx.check("exp-equals-partial-sum", zetas, |z| {
        let e = carlitz_exp(&cache, z, t)?;
        let plain = exp_partial(&cache, e.terms)?.eval(&Scalar::Series(z.clone()));
        Ok(Verdict::agree(Scalar::Series(e.value.clone()).agree(&plain), || {
            format!("certified {:?}, partial sum {plain:?}", e.value)
        }))
    });

    let ns: Vec<_> = (0..=PARTIAL_MAX).map(|n| (json!({ "N": n }), n)).collect();
    ctx.check("partial-expansion-identity", ns, |&big_n| {
        let pairs = wz_partial_coeffs(&cache, big_n)?;
        Ok(all(pairs
            .into_iter()
            .enumerate()
            .map(|(n, (lhs, rhs))| Verdict::exact(lhs == rhs, || format!("N = {big_n}, n = {n}: {lhs:?} != {rhs:?}")))))
    });

    // Two routes to e_C(tz): the basis expansion and the direct series.
    let zs: Vec<FqPoly> = if q == 2 {
        vec![monomials(&field, &[2]), monomials(&field, &[3]), monomials(&field, &[2, 3])]
    } else {
        vec![monomials(&field, &[1]), monomials(&field, &[2]), monomials(&field, &[1, 2])]
    };
    let ts = [monomials(&field, &[0]), monomials(&field, &[1]), monomials(&field, &[0, 1]), monomials(&field, &[2])];
    let m = ctx.params.m;
    let grid: Vec<_> = zs
        .iter()
        .flat_map(|z| ts.iter().map(move |t| (z.clone(), t.clone())))
        .map(|(z, t)| (json!({ "z": poly_to_string(&z), "t": poly_to_string(&t), "M": m, "target": target }), (z, t)))
        .collect();
    ctx.check("expansion-two-routes", grid, |(z, tt)| {
        let zs = LaurentSeries::from_poly(z, target + 8);
        let w = wz_check(&cache, &zs, &Scalar::from(tt.clone()), m, t)?;
        Ok(Verdict::exact(w.agree, || format!("expansion {:?}, direct {:?}", w.expansion, w.direct))
            .and_prec(w.precision))
    });
}

fn monomials(field: &crate::algebra::Field, exps: &[usize]) -> FqPoly {
    exps.iter().fold(FqPoly::zero(field), |acc, &k| acc.add(&FqPoly::x(field).pow(k as u64)))
}
