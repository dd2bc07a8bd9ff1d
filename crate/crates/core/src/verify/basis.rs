//! The Carlitz polynomials: product formula against the sum formula,
//! factorials, binomials, roots, and the difference ladder.

use serde_json::json;

use crate::algebra::Scalar;
use crate::carlitz::{e_product_flat, e_product_oracle, CarlitzCache, FLAT_BUDGET, ORACLE_BUDGET};
use crate::space::delta_linear;

use super::gen::residues;
use super::{all, Ctx, Verdict};

pub(super) fn run_factorials(ctx: &mut Ctx) {
    match ctx.params.cache(ctx.params.imax) {
        Ok(cache) => factorials(ctx, &cache),
        Err(e) => ctx.setup_failed("cache", e),
    }
}

/// D and L from the recurrences against their closed products, and their
/// x-orders.
fn factorials(ctx: &mut Ctx, cache: &CarlitzCache) {
    let imax = ctx.params.imax;
    let q = ctx.q();
    let idx = |r: std::ops::RangeInclusive<usize>| r.map(|i| (json!({ "i": i }), i)).collect::<Vec<_>>();

    ctx.check("factorial-recurrence-equals-product", idx(0..=imax), |&i| {
        let d = cache.d_closed(i)?;
        let l = cache.l_closed(i)?;
        Ok(all([
            Verdict::exact(&d == cache.d(i), || format!("D_{i} = {:?}, product gives {d:?}", cache.d(i))),
            Verdict::exact(&l == cache.l(i), || format!("L_{i} = {:?}, product gives {l:?}", cache.l(i))),
        ]))
    });

    ctx.check("factorial-orders", idx(0..=imax), |&i| {
        let want_d = (q.pow(i as u32) - 1) / (q - 1);
        let got_d = cache.d(i).x_order().map(|v| v as u64);
        let got_l = cache.l(i).x_order().map(|v| v as u64);
        Ok(all([
            Verdict::exact(got_d == Some(want_d), || format!("ord D_{i} = {got_d:?}, expected {want_d}")),
            Verdict::exact(got_l == Some(i as u64), || format!("ord L_{i} = {got_l:?}, expected {i}")),
        ]))
    });
}

pub(super) fn run(ctx: &mut Ctx) {
    let imax = ctx.params.imax;
    let cache = match ctx.params.cache(imax) {
        Ok(c) => c,
        Err(e) => return ctx.setup_failed("cache", e),
    };
    let q = ctx.q();
    let field = ctx.field().clone();
    let within = |budget: u64| (0..=imax).filter(move |&i| q.checked_pow(i as u32).is_some_and(|v| v <= budget));
    let idx = |it: &mut dyn Iterator<Item = usize>| it.map(|i| (json!({ "i": i }), i)).collect::<Vec<_>>();

    ctx.check("product-equals-sum", idx(&mut within(ORACLE_BUDGET)), |&i| {
        let prod = e_product_oracle(&field, i)?;
        let sum = cache.e_poly(i)?;
        Ok(Verdict::exact(prod == sum, || format!("e_{i}: product {prod:?} != sum {sum:?}")))
    });

    ctx.check("flat-product-equals-grouped", idx(&mut within(FLAT_BUDGET)), |&i| {
        let flat = e_product_flat(&field, i)?;
        let grouped = e_product_oracle(&field, i)?;
        Ok(Verdict::exact(flat == grouped, || format!("e_{i}: flat {flat:?} != grouped {grouped:?}")))
    });

    factorials(ctx, &cache);

    let pairs: Vec<_> = (0..=imax).flat_map(|i| (0..=i).map(move |j| (json!({ "i": i, "j": j }), (i, j)))).collect();
    ctx.check("binomials-are-polynomials", pairs, |&(i, j)| cache.binom(i, j).map(|_| Verdict::Pass(None)));

    // Every m of degree < i is a root of e_i; q^i evaluations each.
    ctx.check("roots-of-e", idx(&mut within(FLAT_BUDGET)), |&i| {
        let e = cache.e_poly(i)?;
        for m in residues(&field, q.pow(i as u32)) {
            let v = e.eval(&Scalar::from(m.clone()));
            if !v.is_zero() {
                return Ok(Verdict::Fail(format!("e_{i}({m:?}) = {v:?}")));
            }
        }
        Ok(Verdict::Pass(None))
    });

    ctx.check("ladder-recurrence", idx(&mut (1..=imax)), |&i| {
        let rec = cache.e_by_recurrence(i)?;
        let sum = cache.e_poly(i)?;
        Ok(Verdict::exact(rec == sum, || format!("e_{i}: recurrence {rec:?} != sum {sum:?}")))
    });

    ctx.check("difference-lowers-f", idx(&mut (1..=imax)), |&i| delta_step(&cache, i));
}

/// `Delta f_i = f_(i-1)^q`.
pub(super) fn delta_step(cache: &CarlitzCache, i: usize) -> crate::Result<Verdict> {
    let lhs = delta_linear(&cache.f_poly(i)?)?;
    let rhs = cache.f_poly(i - 1)?.frobenius();
    Ok(Verdict::exact(lhs == rhs, || format!("Delta f_{i} = {lhs:?}, f_{}^q = {rhs:?}", i - 1)))
}
