//! Ladder operators on the basis, and on random functions by two routes.

use num_rational::Ratio;
use serde_json::json;

use crate::algebra::{min_prec, AbsVal, FqPoly, Scalar};
use crate::carlitz::{bracket as bracket_poly, CarlitzCache};
use crate::error::Result;
use crate::format::fq_to_json;
use crate::space::{
    a_minus, a_minus_linear, a_plus, a_plus_linear, commutator_defect, commutator_k_only, delta_coeffs, delta_linear,
    delta_n, delta_n_closed, number_op, CarlitzCoeffs,
};

use super::basis::delta_step;
use super::gen::{coeffs, coeffs_json, fq, residues};
use super::{all, Ctx, Verdict};

const COMMUTATOR_CASES: usize = 100;
const ROUTE_CASES: usize = 20;

pub(super) fn run_ladder(ctx: &mut Ctx) {
    ladder(ctx);
}

/// Ladder relations on the basis itself. Returns the cache for the rest of
/// the suite, or `None` when it could not be built.
fn ladder(ctx: &mut Ctx) -> Option<CarlitzCache> {
    let imax = ctx.params.imax;
    let cache = match ctx.params.cache(imax) {
        Ok(c) => c,
        Err(e) => {
            ctx.setup_failed("cache", e);
            return None;
        }
    };
    let field = ctx.field().clone();
    let idx = |r: std::ops::RangeInclusive<usize>| r.map(|i| (json!({ "i": i }), i)).collect::<Vec<_>>();
    let unit = |i: usize| CarlitzCoeffs::unit(&field, i, i + 1);
    // [0] = 0 makes f_0 an eigenvector of the number operator too.
    let bracket = |i: usize| if i == 0 { Ok(Scalar::zero(&field)) } else { bracket_poly(&field, i).map(Scalar::from) };

    ctx.check("difference-lowers-f", idx(1..=imax), |&i| delta_step(&cache, i));

    ctx.check("raising", idx(1..=imax), |&i| {
        let lin = a_plus_linear(&cache.f_poly(i - 1)?);
        let want = cache.f_poly(i)?.scale(&bracket(i)?);
        let coef = a_plus(&CarlitzCoeffs::unit(&field, i - 1, i))?;
        let coef_want = unit(i).scale(&bracket(i)?);
        Ok(all([
            Verdict::exact(lin == want, || format!("a+ f_{} = {lin:?}, [{i}] f_{i} = {want:?}", i - 1)),
            Verdict::exact(coef == coef_want, || format!("coefficient rule gives {coef:?}")),
        ]))
    });

    ctx.check("lowering", idx(1..=imax), |&i| {
        let lin = a_minus_linear(&cache.f_poly(i)?)?;
        let want = cache.f_poly(i - 1)?;
        let coef = a_minus(&unit(i))?;
        Ok(all([
            Verdict::exact(lin == want, || format!("a- f_{i} = {lin:?}, f_{} = {want:?}", i - 1)),
            Verdict::exact(coef == CarlitzCoeffs::unit(&field, i - 1, i), || {
                format!("coefficient rule gives {coef:?}")
            }),
        ]))
    });

    ctx.check("lowering-kills-f0", vec![(json!({ "i": 0 }), 0usize)], |_| {
        let lin = a_minus_linear(&cache.f_poly(0)?)?;
        let coef = a_minus(&unit(0))?;
        Ok(Verdict::exact(lin.is_zero() && coef.coeffs().iter().all(Scalar::is_zero), || {
            format!("a- f_0 = {lin:?}, coefficient rule {coef:?}")
        }))
    });

    ctx.check("number-operator", idx(0..=imax), |&i| {
        let f = cache.f_poly(i)?;
        let lin = a_plus_linear(&a_minus_linear(&f)?);
        let want = f.scale(&bracket(i)?);
        let coef = number_op(&unit(i))?;
        let coef_want = unit(i).scale(&bracket(i)?);
        Ok(all([
            Verdict::exact(lin == want, || format!("a+ a- f_{i} = {lin:?}, [{i}] f_{i} = {want:?}")),
            Verdict::agree(coef.agree(&coef_want), || format!("coefficient rule gives {coef:?}")),
        ]))
    });
    Some(cache)
}

pub(super) fn run(ctx: &mut Ctx) {
    let Some(cache) = ladder(ctx) else { return };
    let imax = ctx.params.imax;
    let field = ctx.field().clone();
    let q = ctx.q();
    let idx = |r: std::ops::RangeInclusive<usize>| r.map(|i| (json!({ "i": i }), i)).collect::<Vec<_>>();

    ctx.check("iterated-difference", idx(0..=imax), |&i| {
        let f = cache.f_poly(i)?;
        let one = Scalar::one(&field);
        let mut checks = Vec::new();
        for n in 0..=i {
            let (rec, closed) = (delta_n(&f, n), delta_n_closed(&f, n));
            checks.push(Verdict::exact(rec == closed, || format!("Delta^({n}) f_{i}: {rec:?} != {closed:?}")));
        }
        let at_one = delta_n(&f, i).eval(&one);
        checks.push(Verdict::exact(at_one == one, || format!("Delta^({i}) f_{i}(1) = {at_one:?}")));
        Ok(all(checks))
    });

    let m = ctx.params.m.min(imax).clamp(1, 6);
    let sample = residues(&field, q.pow(3));

    let mut rng = ctx.rng(0);
    let cases: Vec<_> = (0..ROUTE_CASES)
        .map(|_| {
            let c = coeffs(&mut rng, &field, m);
            (json!({ "c": coeffs_json(&c) }), c)
        })
        .collect();
    ctx.check("raising-two-routes", cases.clone(), |c| {
        let coef = a_plus(c)?;
        let lin = a_plus_linear(&c.to_linear(&cache)?);
        let mut checks = vec![Verdict::exact(coef.to_linear(&cache)? == lin, || {
            format!("coefficient rule {coef:?} differs from phi^q - phi as a polynomial")
        })];
        for t in &sample {
            let t = Scalar::from(t.clone());
            let v = c.eval(&cache, &t)?;
            let direct = v.frobenius().sub(&v);
            let via = coef.eval(&cache, &t)?;
            checks.push(Verdict::agree(via.agree(&direct), || format!("at t = {t:?}: {via:?} != {direct:?}")));
        }
        Ok(all(checks))
    });

    ctx.check("lowering-two-routes", cases.clone(), |c| lowering_routes(&cache, c, &sample));

    let mut rng = ctx.rng(1);
    let triples: Vec<_> = (0..ROUTE_CASES)
        .map(|_| {
            let (u, v, b) = (coeffs(&mut rng, &field, m), coeffs(&mut rng, &field, m), fq(&mut rng, &field));
            (json!({ "u": coeffs_json(&u), "v": coeffs_json(&v), "beta": fq_to_json(&field, b) }), (u, v, b))
        })
        .collect();
    ctx.check("fq-linearity", triples, |(u, v, b)| {
        type Op = fn(&CarlitzCoeffs) -> Result<CarlitzCoeffs>;
        let ops: [(&str, Op); 4] = [("a+", a_plus), ("a-", a_minus), ("Delta", delta_coeffs), ("a+ a-", number_op)];
        let mut checks = Vec::new();
        for (name, op) in ops {
            let sum = op(&u.add(v))?;
            let split = op(u)?.add(&op(v)?);
            let scaled = op(&u.scale_fq(*b))?;
            let outer = op(u)?.scale_fq(*b);
            checks.push(Verdict::agree(sum.agree(&split), || format!("{name} is not additive")));
            checks.push(Verdict::agree(scaled.agree(&outer), || format!("{name} is not F_q-homogeneous")));
        }
        Ok(all(checks))
    });

    // |a- phi| = sup_(i>=1) |c_i|^(1/q), which exceeds |phi| when |phi| < 1;
    // the bound that holds is max(|phi|, |phi|^(1/q)).
    ctx.check("lowering-norm", cases, |c| {
        let down = a_minus(c)?.norm();
        let root = Ratio::new(1, q as i64);
        let want = c.coeffs().iter().skip(1).map(Scalar::abs_val).max().unwrap_or(AbsVal::Zero).pow(root);
        let n = c.norm();
        let bound = n.max(n.pow(root));
        Ok(Verdict::exact(down == want && down <= bound, || {
            format!("|a- phi| = {down}, sup |c_i|^(1/q) = {want}, |phi| = {n}")
        }))
    });

    let mut rng = ctx.rng(2);
    let cases: Vec<_> = (0..COMMUTATOR_CASES)
        .map(|_| {
            let c = coeffs(&mut rng, &field, m);
            (json!({ "c": coeffs_json(&c) }), c)
        })
        .collect();
    ctx.check("commutator", cases.clone(), |c| {
        let (lhs, rhs) = commutator_defect(c)?;
        Ok(Verdict::agree(lhs.agree(&rhs), || format!("(a- a+ - a+ a-) c = {lhs:?}, [1]^(1/q) c = {rhs:?}")))
    });
    ctx.check("commutator-q-th-power", cases, |c| {
        let (lhs, rhs) = commutator_k_only(c)?;
        Ok(Verdict::exact(lhs == rhs, || format!("{lhs:?} != {rhs:?}")))
    });
}

/// `a- c` and `Delta c` on coefficients against `phi(xt) - x phi(t)` and
/// its q-th root, at each sample point and as polynomials.
fn lowering_routes(cache: &CarlitzCache, c: &CarlitzCoeffs, sample: &[FqPoly]) -> Result<Verdict> {
    let field = cache.field();
    let down = a_minus(c)?;
    let phi = c.to_linear(cache)?;
    let x = Scalar::from(FqPoly::x(field));
    let mut checks = vec![
        Verdict::agree(down.to_linear(cache)?.agree(&a_minus_linear(&phi)?), || {
            format!("coefficient rule {down:?} differs from (Delta phi)^(1/q)")
        }),
        Verdict::agree(down.to_linear(cache)?.frobenius().agree(&delta_linear(&phi)?), || {
            "(a- phi)^q differs from Delta phi".to_string()
        }),
    ];
    let mut prec = None;
    for t in sample {
        let t = Scalar::from(t.clone());
        let delta = c.eval(cache, &x.mul(&t))?.sub(&x.mul(&c.eval(cache, &t)?));
        let via = down.eval(cache, &t)?;
        let (ok, p) = via.frobenius().agree(&delta);
        prec = min_prec(prec, p);
        checks
            .push(Verdict::exact(ok, || format!("at t = {t:?}: (a- phi)(t)^q = {via:?}^q, Delta phi(t) = {delta:?}")));
        let root = delta.qth_root()?;
        checks.push(Verdict::agree(via.agree(&root), || format!("at t = {t:?}: {via:?} != {root:?}")));
    }
    Ok(match prec {
        Some(p) => all(checks).and_prec(p),
        None => all(checks),
    })
}
