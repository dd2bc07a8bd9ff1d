//! The digit basis against the interpolation basis.

use serde_json::json;

use crate::algebra::{AbsVal, Field, Fq, RatFunc, Scalar};
use crate::carlitz::{expand_h_in_q, h_poly, kappa, kappa_by_product, l_digits, m_seq, q_poly, CarlitzCache};
use crate::error::Result;

use super::{all, Ctx, Verdict};

const KAPPA_BOUND: u64 = 512;
const PRODUCT_BOUND: u64 = 128;

pub(super) fn run(ctx: &mut Ctx) {
    let q = ctx.q();
    // Residues below q^k have at most k digits, which need e_0 .. e_(k-1).
    let mut k = 1u32;
    while q.pow(k) < 27 && (k as usize) <= ctx.params.imax {
        k += 1;
    }
    let bound = q.pow(k);
    let cache = match ctx.params.cache(k as usize - 1) {
        Ok(c) => c,
        Err(e) => return ctx.setup_failed("cache", e),
    };
    let field = ctx.field().clone();
    let standard = field.enumerate();
    let ns = |n: u64| (0..n).map(|n| (json!({ "n": n }), n)).collect::<Vec<_>>();

    ctx.check("kappa-equals-digit-sum", ns(KAPPA_BOUND), |&n| Ok(kappa_verdict(&field, &standard, n)));
    ctx.check("kappa-by-product", ns(PRODUCT_BOUND), |&n| {
        let (a, b) = (kappa(&field, &standard, n), kappa_by_product(&field, &standard, n));
        Ok(Verdict::exact(a == b, || format!("n = {n}: factorwise {a}, product {b}")))
    });
    ctx.check("h-expansion", ns(bound), |&n| expansion_verdict(&cache, &standard, n));
    ctx.check("h-degree", ns(bound), |&j| {
        let d = h_poly(&cache, j)?.degree();
        Ok(Verdict::exact(d == Some(j), || format!("deg h_{j} = {d:?}")))
    });

    let tops: Vec<_> = (0..k as usize).map(|i| (json!({ "i": i }), i)).collect();
    ctx.check("h-top-equals-f", tops, |&i| {
        let h = h_poly(&cache, q.pow(i as u32))?;
        let lin = h.num.to_linear()?.scale(&Scalar::Exact(RatFunc::recip_poly(&h.den)?));
        let f = cache.f_poly(i)?;
        Ok(Verdict::exact(lin == f, || format!("h_(q^{i}) = {lin:?}, f_{i} = {f:?}")))
    });

    ctx.check("q-interpolates", ns(bound), |&j| {
        let qj = q_poly(&field, &standard, j)?;
        let checks = (0..=j).map(|i| {
            let v = qj.eval(&m_seq(&field, &standard, i))?;
            let want = if i == j { RatFunc::one(&field) } else { RatFunc::zero(&field) };
            Ok(Verdict::exact(v == want, || format!("Q_{j}(m_{i}) = {v:?}")))
        });
        Ok(all(checks.collect::<Result<Vec<_>>>()?))
    });

    // Only a_0 = 0 and a_1 = 1 are pinned; with q >= 4 the rest can move.
    let alt: Vec<Fq> = field.enumerate_rotated(1);
    let (kappa_cases, exp_cases) = if alt != standard { (ns(KAPPA_BOUND), ns(bound)) } else { (vec![], vec![]) };
    ctx.check("kappa-equals-digit-sum-rotated", kappa_cases, |&n| Ok(kappa_verdict(&field, &alt, n)));
    ctx.check("h-expansion-rotated", exp_cases, |&n| expansion_verdict(&cache, &alt, n));
}

fn kappa_verdict(field: &Field, enumeration: &[Fq], n: u64) -> Verdict {
    let (l, k) = (l_digits(field.q(), n), kappa(field, enumeration, n));
    Verdict::exact(l == k, || format!("n = {n}: l_n = {l}, kappa_n = {k}"))
}

fn expansion_verdict(cache: &CarlitzCache, enumeration: &[Fq], n: u64) -> Result<Verdict> {
    let h = expand_h_in_q(cache, enumeration, n)?;
    let top = &h.coeffs[n as usize];
    let over = h.coeffs.iter().position(|c| c.abs_val() > AbsVal::one());
    Ok(all([
        Verdict::exact(top.abs_val() == AbsVal::one(), || format!("n = {n}: |c_nn| = {}", top.abs_val())),
        Verdict::exact(over.is_none(), || format!("n = {n}: |c_n{}| > 1", over.unwrap_or(0))),
        Verdict::exact(*top == h.leading_direct, || {
            format!("n = {n}: c_nn = {top:?}, P_n(m_n)/Gamma_n = {:?}", h.leading_direct)
        }),
        Verdict::exact(h.extra_points_ok, || format!("n = {n}: expansion misses h_n past the nodes")),
    ]))
}
