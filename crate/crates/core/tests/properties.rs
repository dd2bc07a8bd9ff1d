use proptest::prelude::*;

use carlitz_core::algebra::{Field, FqPoly, LaurentSeries, RatFunc, Scalar};
use carlitz_core::carlitz::CarlitzCache;
use carlitz_core::exec::ExecMode;
use carlitz_core::expseries::{carlitz_exp, rho};
use carlitz_core::format::{
    laurent_from_json, laurent_to_json, laurent_to_string, parse_value, poly_to_string, scalar_from_json,
    scalar_to_json,
};
use carlitz_core::space::{a_minus, a_plus, coherent_state, commutator_defect, commutator_k_only, CarlitzCoeffs};
use carlitz_core::verify::{run_suite, Suite, SuiteParams};
use num_rational::Ratio;

const FIELDS: [(u32, u32); 4] = [(2, 1), (3, 1), (2, 2), (5, 1)];

fn field(k: usize) -> Field {
    let (p, g) = FIELDS[k % FIELDS.len()];
    Field::new(p, g).unwrap()
}

fn poly(f: &Field, digits: &[u32]) -> FqPoly {
    let q = f.q();
    FqPoly::from_coeffs(f, digits.iter().map(|&d| f.elem(d % q).unwrap()).collect())
}

fn digits(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..25, 0..max_len)
}

fn nonzero(f: &Field, d: &[u32]) -> FqPoly {
    let p = poly(f, d);
    if p.is_zero() {
        FqPoly::one(f)
    } else {
        p
    }
}

/// `x^v * (unit)` as a series known to `x^prec`.
fn series(f: &Field, v: i64, d: &[u32], prec: i64) -> LaurentSeries {
    let mut coeffs: Vec<_> = d.iter().map(|&c| f.elem(c % f.q()).unwrap()).collect();
    if coeffs.is_empty() || coeffs[0].is_zero() {
        coeffs.insert(0, f.elem(1).unwrap());
    }
    coeffs.truncate((prec - v).max(0) as usize);
    LaurentSeries::from_terms(f, 1, v, coeffs, prec)
}

#[test]
fn field_axioms_hold_exhaustively() {
    for (p, g) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)] {
        let f = Field::new(p, g).unwrap();
        let els = f.enumerate();
        let (zero, one) = (f.elem(0).unwrap(), f.elem(1).unwrap());
        for &a in &els {
            assert_eq!(f.add(a, f.neg(a)), zero);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), one);
            }
            assert_eq!(f.pow(a, f.q() as u64), a);
            for &b in &els {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(k in 0usize..4, a in digits(12), b in digits(12), c in digits(12)) {
        let f = field(k);
        let (a, b, c) = (poly(&f, &a), poly(&f, &b), poly(&f, &c));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.add(&b).frobenius(), a.frobenius().add(&b.frobenius()));
        prop_assert_eq!(a.frobenius(), a.pow(f.q() as u64));
    }

    #[test]
    fn division_with_remainder(k in 0usize..4, a in digits(16), b in digits(8)) {
        let f = field(k);
        let (a, b) = (poly(&f, &a), nonzero(&f, &b));
        let (quo, rem) = a.divrem(&b).unwrap();
        prop_assert_eq!(quo.mul(&b).add(&rem), a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_and_is_maximal(k in 0usize..4, a in digits(8), b in digits(8), c in digits(5)) {
        let f = field(k);
        let (a, b, c) = (nonzero(&f, &a), nonzero(&f, &b), nonzero(&f, &c));
        let g = a.mul(&c).gcd(&b.mul(&c));
        prop_assert!(a.mul(&c).divrem(&g).unwrap().1.is_zero());
        prop_assert!(b.mul(&c).divrem(&g).unwrap().1.is_zero());
        prop_assert!(g.divrem(&c.monic()).unwrap().1.is_zero());
    }

    #[test]
    fn rational_functions_form_a_field(k in 0usize..4, a in digits(6), b in digits(6), c in digits(6)) {
        let f = field(k);
        let r = RatFunc::new(nonzero(&f, &a), nonzero(&f, &b)).unwrap();
        let s = RatFunc::new(poly(&f, &c), nonzero(&f, &a)).unwrap();
        prop_assert_eq!(r.mul(&r.inv().unwrap()), RatFunc::one(&f));
        prop_assert_eq!(r.add(&s).sub(&s), r.clone());
        prop_assert!(r.num().gcd(r.den()).is_one());
    }

    #[test]
    fn absolute_value_is_ultrametric_and_multiplicative(
        k in 0usize..4, v in -3i64..4, w in -3i64..4, a in digits(10), b in digits(10),
    ) {
        let f = field(k);
        let (s, t) = (series(&f, v, &a, 24), series(&f, w, &b, 24));
        prop_assert!(s.add(&t).abs_val() <= s.abs_val().max(t.abs_val()));
        prop_assert_eq!(s.mul(&t).abs_val(), s.abs_val().mul(t.abs_val()));
        if v != w {
            prop_assert_eq!(s.add(&t).abs_val(), s.abs_val().max(t.abs_val()));
        }
    }

    #[test]
    fn series_inverse(k in 0usize..4, v in -3i64..4, a in digits(10)) {
        let f = field(k);
        let s = series(&f, v, &a, 20);
        let prod = s.mul(&s.inv().unwrap());
        let one = LaurentSeries::from_poly(&FqPoly::one(&f), prod.prec());
        prop_assert!(prod.eq_at_prec(&one).0);
    }

    #[test]
    fn series_embedding_is_a_ring_map(k in 0usize..4, a in digits(8), b in digits(8)) {
        let f = field(k);
        let (a, b) = (poly(&f, &a), poly(&f, &b));
        let prec = 20;
        let lhs = LaurentSeries::from_poly(&a.mul(&b), prec);
        let rhs = LaurentSeries::from_poly(&a, prec).mul(&LaurentSeries::from_poly(&b, prec));
        prop_assert!(lhs.eq_at_prec(&rhs).0);
    }

    #[test]
    fn qth_root_inverts_frobenius(k in 0usize..4, v in 0i64..4, a in digits(10)) {
        let f = field(k);
        let s = Scalar::Series(series(&f, v, &a, 24));
        let root = s.qth_root().unwrap();
        prop_assert!(root.frobenius().agree(&s).0);
        let exact = Scalar::from(poly(&f, &a));
        prop_assert!(exact.qth_root().unwrap().frobenius().agree(&exact).0);
    }

    #[test]
    fn text_and_json_round_trip(k in 0usize..4, v in -3i64..4, a in digits(10)) {
        let f = field(k);
        let p = poly(&f, &a);
        prop_assert_eq!(parse_value(&f, &poly_to_string(&p)).unwrap().to_poly().unwrap(), p.clone());
        let s = series(&f, v, &a, 16);
        prop_assert_eq!(laurent_from_json(&f, &laurent_to_json(&s)).unwrap(), s.clone());
        let reparsed = parse_value(&f, &laurent_to_string(&s)).unwrap().to_series(16).unwrap();
        prop_assert!(reparsed.eq_at_prec(&s).0);
        prop_assert_eq!(reparsed.prec_abs(), s.prec_abs());
        let r = Scalar::Exact(RatFunc::new(p, nonzero(&f, &a[..a.len() / 2])).unwrap());
        prop_assert_eq!(scalar_from_json(&f, &scalar_to_json(&r)).unwrap(), r);
    }

    #[test]
    fn basis_polynomials_are_fq_linear(k in 0usize..3, i in 0usize..4, a in digits(5), b in digits(5), c in 0u32..9) {
        let f = field(k);
        let cache = CarlitzCache::new(&f, 3).unwrap();
        let e = cache.e_poly(i).unwrap();
        let (a, b) = (Scalar::from(poly(&f, &a)), Scalar::from(poly(&f, &b)));
        let c = f.elem(c % f.q()).unwrap();
        prop_assert_eq!(e.eval(&a.add(&b)), e.eval(&a).add(&e.eval(&b)));
        prop_assert_eq!(e.eval(&a.scale(c)), e.eval(&a).scale(c));
    }

    #[test]
    fn basis_polynomials_vanish_below_their_degree(k in 0usize..3, i in 1usize..4, a in digits(3)) {
        let f = field(k);
        let cache = CarlitzCache::new(&f, 3).unwrap();
        let m = poly(&f, &a[..a.len().min(i)]);
        prop_assert!(cache.e_poly(i).unwrap().eval(&Scalar::from(m)).is_zero());
        let xi = Scalar::from(FqPoly::x(&f).pow(i as u64));
        prop_assert_eq!(cache.e_poly(i).unwrap().eval(&xi), Scalar::from(cache.d(i).clone()));
        prop_assert_eq!(cache.f_value(i, &xi).unwrap(), Scalar::one(&f));
    }
}

fn coeffs(f: &Field, entries: &[Vec<u32>]) -> CarlitzCoeffs {
    CarlitzCoeffs::new(f, entries.iter().map(|d| Scalar::from(poly(f, d))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coefficients_and_polynomials_correspond(k in 0usize..3, c in prop::collection::vec(digits(4), 1..5)) {
        let f = field(k);
        let cache = CarlitzCache::new(&f, c.len()).unwrap();
        let c = coeffs(&f, &c);
        let back = CarlitzCoeffs::from_linear(&cache, &c.to_linear(&cache).unwrap()).unwrap();
        prop_assert!(back.resized(c.len()).agree(&c).0);
    }

    #[test]
    fn ladder_operators_are_fq_linear(
        k in 0usize..3, u in prop::collection::vec(digits(4), 1..5), v in prop::collection::vec(digits(4), 1..5),
        b in 0u32..9,
    ) {
        let f = field(k);
        let n = u.len().max(v.len());
        let (u, v) = (coeffs(&f, &u).resized(n), coeffs(&f, &v).resized(n));
        let b = f.elem(b % f.q()).unwrap();
        for op in [a_plus, a_minus] {
            prop_assert!(op(&u.add(&v)).unwrap().agree(&op(&u).unwrap().add(&op(&v).unwrap())).0);
            prop_assert!(op(&u.scale_fq(b)).unwrap().agree(&op(&u).unwrap().scale_fq(b)).0);
        }
    }

    #[test]
    fn commutator_is_a_scalar(k in 0usize..3, c in prop::collection::vec(digits(4), 1..5)) {
        let f = field(k);
        let c = coeffs(&f, &c);
        let (lhs, rhs) = commutator_defect(&c).unwrap();
        prop_assert!(lhs.agree(&rhs).0);
        let (lhs, rhs) = commutator_k_only(&c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coherent_states_are_eigenvectors(k in 0usize..3, a in -1i64..2, lam in digits(3), c0 in digits(3)) {
        let f = field(k);
        let q = f.q() as i64;
        let lambda = Scalar::Series(series(&f, a, &lam, 40));
        // q v(lambda) + (q-1) v(c0) > 0
        let v0 = (-q * a).div_euclid(q - 1) + 1;
        let c0 = Scalar::Series(series(&f, v0, &c0, 40));
        let u = coherent_state(&lambda, &c0, 4).unwrap();
        let down = a_minus(&u).unwrap();
        prop_assert!(down.agree(&u.resized(3).scale(&lambda)).0);
    }

    #[test]
    fn exponential_is_additive_and_inverted_by_rho(k in 0usize..3, a in digits(6), b in digits(6)) {
        let f = field(k);
        let q = f.q() as i64;
        let v = if q == 2 { 2 } else { 1 };
        let cache = CarlitzCache::new(&f, 4).unwrap();
        let target = Ratio::from_integer(24);
        let (z, w) = (series(&f, v, &a, 32), series(&f, v + 1, &b, 32));
        let ez = carlitz_exp(&cache, &z, target).unwrap().value;
        let ew = carlitz_exp(&cache, &w, target).unwrap().value;
        let esum = carlitz_exp(&cache, &z.add(&w), target).unwrap().value;
        prop_assert!(esum.agrees_to(&ez.add(&ew), target));
        let back = rho(&cache, &ez, target).unwrap().value;
        prop_assert!(back.agrees_to(&z, target));
    }
}

#[test]
fn sequential_and_parallel_reports_match() {
    let f = Field::new(3, 1).unwrap();
    for suite in Suite::ALL {
        let seq = SuiteParams { imax: 3, m: 4, seed: 11, exec: ExecMode::Sequential, ..SuiteParams::new(&f) };
        let par = SuiteParams { exec: ExecMode::Auto, ..seq.clone() };
        assert_eq!(run_suite(suite, &seq), run_suite(suite, &par), "{}", suite.name());
    }
}

#[test]
fn reports_are_reproducible_per_seed() {
    let f = Field::new(2, 1).unwrap();
    let a = SuiteParams { imax: 4, seed: 1, ..SuiteParams::new(&f) };
    let b = SuiteParams { seed: 2, ..a.clone() };
    let (ra, rb) = (run_suite(Suite::Oscillator, &a), run_suite(Suite::Oscillator, &b));
    assert!(ra.ok() && rb.ok());
    assert_eq!(run_suite(Suite::Oscillator, &a), ra);
}
