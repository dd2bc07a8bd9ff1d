//! The sup-norm over sampled residues against the coefficient norm.

use serde_json::json;

use crate::algebra::AbsVal;
use crate::space::{sampled_norm, sampled_norm_direct, CarlitzCoeffs};

use super::gen::{coeffs, coeffs_json};
use super::{Ctx, Verdict};

const CASES: usize = 100;
/// Direct sampling evaluates every residue; keep it to a few hundred.
const DIRECT_BUDGET: u64 = 256;

pub(super) fn run(ctx: &mut Ctx) {
    let m = ctx.params.m.clamp(1, 6);
    let cache = match ctx.params.cache(m) {
        Ok(c) => c,
        Err(e) => return ctx.setup_failed("cache", e),
    };
    let field = ctx.field().clone();
    let q = ctx.q();

    let units: Vec<_> = (0..m).map(|i| (json!({ "i": i }), i)).collect();
    ctx.check("unit-vectors", units, |&i| {
        let u = CarlitzCoeffs::unit(&field, i, m);
        let s = sampled_norm(&cache, &u, i + 1)?;
        Ok(Verdict::exact(u.norm() == AbsVal::one() && s == AbsVal::one(), || {
            format!("f_{i}: norm {}, sampled {s}", u.norm())
        }))
    });

    let mut rng = ctx.rng(0);
    let bound = m + 2;
    let cases: Vec<_> = (0..CASES)
        .map(|_| {
            let c = coeffs(&mut rng, &field, m);
            (json!({ "c": coeffs_json(&c), "bound": bound }), c)
        })
        .collect();
    ctx.check("sampled-norm-equals-sup", cases, |c| {
        let s = sampled_norm(&cache, c, bound)?;
        Ok(Verdict::exact(s == c.norm(), || format!("sampled {s}, sup of coefficients {}", c.norm())))
    });

    // The fast sampler against one evaluation per residue.
    let mut direct_bound = bound;
    while q.pow(direct_bound as u32) > DIRECT_BUDGET {
        direct_bound -= 1;
    }
    let mut rng = ctx.rng(1);
    let cases: Vec<_> = (0..10)
        .map(|_| {
            let c = coeffs(&mut rng, &field, m);
            (json!({ "c": coeffs_json(&c), "bound": direct_bound }), c)
        })
        .collect();
    ctx.check("sampler-equals-direct", cases, |c| {
        let fast = sampled_norm(&cache, c, direct_bound)?;
        let slow = sampled_norm_direct(&cache, c, direct_bound)?;
        Ok(Verdict::exact(fast == slow && slow <= c.norm(), || {
            format!("assembled {fast}, direct {slow}, coefficients {}", c.norm())
        }))
    });
}
