use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use qpr_core::asymptotics::{classify, evaluate, VerifyOptions};
use qpr_core::diophantine::{
    convergents, floor_frac, witness_search, DeclaredReal, QuadraticSurd,
};
use qpr_core::numerics::{expm1_complex, lp_pow_int, sum_rescaled, LogPolarComplex};
use qpr_core::qlaguerre::{
    normalized_laguerre, scale_point, split_sums, laguerre_log_polar, PochTable, ScalingParameter,
};
use qpr_core::qseries::{
    b_function, pochhammer, q_binomial, ramanujan_a, remainder_r1, remainder_r2, PochhammerOrder,
    QContext,
};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn poch_inf(a: f64, q: f64) -> f64 {
    pochhammer(c(a), q, PochhammerOrder::Infinite).unwrap().re
}

fn in_phase_range(p: f64) -> bool {
    p > -PI && p <= PI
}

fn lp() -> impl Strategy<Value = LogPolarComplex> {
    (-50.0..50.0f64, -PI..PI).prop_map(|(m, p)| LogPolarComplex::new(m, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn phase_normalized_after_ops(a in lp(), b in lp(), k in -64i64..=64) {
        prop_assert!(in_phase_range((a * b).phase));
        prop_assert!(in_phase_range((a / b).phase));
        prop_assert!(in_phase_range((-a).phase));
        prop_assert!(in_phase_range(a.conj().phase));
        prop_assert!(in_phase_range(lp_pow_int(a, k).unwrap().phase));
    }

    #[test]
    fn round_trip_through_complex(m in -690.0..690.0f64, p in -PI..PI) {
        let x = LogPolarComplex::new(m, p);
        let back = LogPolarComplex::from_complex(x.to_complex());
        prop_assert!((back.log_mag - m).abs() <= 4.0 * f64::EPSILON * (1.0 + m.abs()));
    }

    #[test]
    fn pow_matches_repeated_product(b in lp(), k in -64i64..=64) {
        let b = LogPolarComplex::new(b.log_mag / 64.0, b.phase);
        let single = lp_pow_int(b, k).unwrap();
        let step = if k >= 0 { b } else { b.recip().unwrap() };
        let mut acc = LogPolarComplex::from_real(1.0);
        for _ in 0..k.unsigned_abs() {
            acc = acc * step;
        }
        prop_assert!((acc.log_mag - single.log_mag).abs() <= 1e-12 * (1.0 + single.log_mag.abs()));
        let dp = (acc.phase - single.phase).abs();
        prop_assert!(dp.min(2.0 * PI - dp) <= 1e-12 * (1.0 + k.abs() as f64));
    }

    #[test]
    fn sum_is_permutation_stable(
        terms in prop::collection::vec((0.0..1.0f64, 0.0..(PI / 4.0)), 1..200),
        seed in any::<u64>(),
    ) {
        // phases within a quarter turn keep the condition number below 2
        let ts: Vec<LogPolarComplex> =
            terms.iter().map(|&(m, p)| LogPolarComplex::new(m, p)).collect();
        let mut shuffled = ts.clone();
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        let a = sum_rescaled(&ts).to_complex();
        let b = sum_rescaled(&shuffled).to_complex();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm());
    }

    #[test]
    fn summation_finite_for_finite_terms(
        terms in prop::collection::vec((-1e4..1e4f64, -PI..PI), 1..50),
    ) {
        let ts: Vec<LogPolarComplex> =
            terms.iter().map(|&(m, p)| LogPolarComplex::new(m, p)).collect();
        let r = sum_rescaled(&ts);
        prop_assert!(r.value.re.is_finite() && r.value.im.is_finite());
        prop_assert_eq!(r.term_count, ts.len());
    }

    #[test]
    fn expm1_inequality(r in 0.0..5.0f64, p in -PI..PI) {
        let w = Complex64::from_polar(r, p);
        let lhs = expm1_complex(w.re, w.im).norm();
        prop_assert!(lhs <= r * r.exp() * (1.0 + 1e-14) + 1e-300);
    }

    #[test]
    fn q_binomial_symmetry(n in 0i64..40, k in 0i64..40, q in 0.05..0.95f64) {
        prop_assume!(k <= n);
        let a = q_binomial(n, k, q).unwrap();
        let b = q_binomial(n, n - k, q).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn q_binomial_theorem(a in -0.9..0.9f64, q in 0.05..0.9f64, r in 0.0..0.9f64, p in -PI..PI) {
        let z = Complex64::from_polar(r, p);
        let lhs = pochhammer(z * a, q, PochhammerOrder::Infinite).unwrap()
            / pochhammer(z, q, PochhammerOrder::Infinite).unwrap();
        let mut rhs = c(0.0);
        let mut abs_sum = 0.0;
        let mut coef = c(1.0);
        for k in 0..2000 {
            rhs += coef;
            abs_sum += coef.norm();
            coef *= z * (1.0 - a * q.powi(k)) / (1.0 - q.powi(k + 1));
            if coef.norm() < 1e-18 * rhs.norm() {
                break;
            }
        }
        // the plain series loses digits to cancellation on the negative axis
        prop_assert!((lhs - rhs).norm() <= 1e-12 * abs_sum);
    }

    #[test]
    fn pochhammer_inequalities(a in 0.0..0.999f64, b in 0.0..5.0f64, q in 0.05..0.95f64, n in 0i64..60) {
        let pa = pochhammer(c(a), q, PochhammerOrder::Finite(n)).unwrap().re;
        prop_assert!(pa > 0.0 && pa <= 1.0);
        let pb = pochhammer(c(-b), q, PochhammerOrder::Finite(n)).unwrap().re;
        prop_assert!(pb >= 1.0);
    }

    #[test]
    fn a_q_below_b_q(q in 0.1..0.9f64, r in 0.0..10.0f64, p in -PI..PI) {
        let a = ramanujan_a(q, Complex64::from_polar(r, p)).unwrap();
        let b = b_function(q, c(r)).unwrap().re;
        prop_assert!(a.norm() <= b * (1.0 + 1e-13));
    }

    #[test]
    fn remainders_within_bounds(a in 0.01..1.5f64, q in 0.1..0.9f64, n in 1i64..30) {
        let (v, bound) = remainder_r1(a, n, q).unwrap();
        prop_assert!(v.abs() <= bound);
        if a * q < 1.0 {
            let (v, bound) = remainder_r2(a, n, q).unwrap();
            prop_assert!(v.abs() <= bound);
        }
    }

    #[test]
    fn floor_frac_reconstructs(x in -1e6..1e6f64) {
        let (fl, fr) = floor_frac(x);
        prop_assert!((0.0..1.0).contains(&fr));
        let back = fl as f64 + fr;
        prop_assert!((back - x).abs() <= f64::EPSILON * x.abs().max(1.0));
    }

    #[test]
    fn surd_floor_agrees_with_float(d in 2i64..200, k in -100_000i64..100_000) {
        prop_assume!(((d as f64).sqrt() as i64).pow(2) != d);
        let s = QuadraticSurd::sqrt(d).unwrap();
        let fl = s.floor_mul(k);
        let off = s.offset(k, fl);
        prop_assert!((0.0..1.0).contains(&off));
        let x = k as f64 * (d as f64).sqrt();
        prop_assert!((x - fl as f64 - off).abs() <= 1e-9 * x.abs().max(1.0));
    }

    #[test]
    fn decomposition_identity(d in 2i64..50, n in 1usize..10_000, bn in 0i64..10) {
        prop_assume!(((d as f64).sqrt() as i64).pow(2) != d);
        let theta = DeclaredReal::sqrt(d).unwrap();
        let beta = DeclaredReal::rational(bn, 10).unwrap();
        let w = qpr_core::diophantine::decompose(&theta, &beta, n, 1.0);
        let lhs = n as f64 * theta.value();
        prop_assert!((lhs - w.m as f64 - beta.value() - w.residual).abs() <= 1e-9 * lhs);
    }

    #[test]
    fn witnesses_strictly_below_threshold(d in 2i64..50, rho in 0.3..1.0f64) {
        prop_assume!(((d as f64).sqrt() as i64).pow(2) != d);
        let theta = DeclaredReal::sqrt(d).unwrap();
        for w in witness_search(&theta, &DeclaredReal::integer(0), rho, 2000).unwrap() {
            prop_assert!(w.residual.abs() < (w.n as f64).powf(-rho));
        }
    }

    #[test]
    fn rational_orbit_progression(p in 1i64..20, qd in 2i64..20, j in 0i64..20, rho in 0.0..10.0f64) {
        prop_assume!(num_integer::gcd(p, qd) == 1 && j < qd);
        let theta = DeclaredReal::rational(p, qd).unwrap();
        let beta = DeclaredReal::rational(j, qd).unwrap();
        let ws = witness_search(&theta, &beta, rho, 200).unwrap();
        let expect: Vec<usize> = (1..=200usize).filter(|&n| (n as i64 * p - j).rem_euclid(qd) == 0).collect();
        prop_assert_eq!(ws.iter().map(|w| w.n).collect::<Vec<_>>(), expect);
        prop_assert!(ws.iter().all(|w| w.residual == 0.0));
    }

    #[test]
    fn convergents_approximate(d in 2i64..500) {
        prop_assume!(((d as f64).sqrt() as i64).pow(2) != d);
        let theta = DeclaredReal::sqrt(d).unwrap();
        for (p, q) in convergents(&theta, 12) {
            if q > 1_000_000 {
                break;
            }
            let err = (theta.value() - p as f64 / q as f64).abs();
            prop_assert!(err < 1.0 / (q as f64 * q as f64));
        }
    }

    #[test]
    fn ratio_factor_in_unit_interval(q in 0.05..0.9f64, alpha in 0.0..3.0f64, n in 1usize..120, k in 0usize..120) {
        prop_assume!(k <= n);
        let ctx = QContext::new(q, alpha, c(1.0)).unwrap();
        let t = PochTable::new(&ctx, n).unwrap();
        let v = t.log_ratio(n, k).exp();
        prop_assert!(v > 0.0 && v <= 1.0 + 1e-15);
    }

    #[test]
    fn ratio_factor_near_one(q in 0.05..0.9f64, alpha in 0.0..3.0f64, n in 2usize..200, kf in 0.0..1.0f64) {
        let top = n / 2;
        prop_assume!(top >= 1);
        let k = ((top - 1) as f64 * kf) as usize;
        let ctx = QContext::new(q, alpha, c(1.0)).unwrap();
        let t = PochTable::new(&ctx, n).unwrap();
        let dev = t.log_ratio(n, k).exp_m1().abs();
        let bound = 7.0 * poch_inf(-q * q, q).powi(2) * q.powf(n as f64 / 2.0)
            / ((1.0 - q).powi(3) * poch_inf(q, q));
        prop_assert!(dev <= bound);
    }

    #[test]
    fn split_factor_e_near_one(q in 0.05..0.9f64, alpha in 0.0..3.0f64, n in 4usize..200, mf in 0.2..1.8f64, kf in 0.0..1.0f64) {
        let m = (mf * n as f64) as usize;
        let h = m / 2;
        let nu = (h.min(n - h) / 2) as u64;
        prop_assume!(nu >= 1);
        let k = ((nu - 1) as f64 * kf) as usize;
        let ctx = QContext::new(q, alpha, c(1.0)).unwrap();
        let t = PochTable::new(&ctx, n).unwrap();
        let e = t.log_factor_e(k, n, h);
        prop_assert!(e <= 1e-15);
        let bound = 15.0 * poch_inf(-q * q, q).powi(3) * q.powi(nu as i32 + 1)
            / ((1.0 - q).powi(4) * poch_inf(q, q));
        prop_assert!(e.exp_m1().abs() <= bound);
        if k >= 1 {
            let f = t.log_factor_f(k, n, h);
            prop_assert!(f <= 1e-15);
            prop_assert!(f.exp_m1().abs() <= bound);
        }
    }

    #[test]
    fn split_matches_reversed(q in 0.2..0.8f64, alpha in 0.0..2.0f64, r in 0.5..2.0f64, p in -PI..PI,
                              tn in 1i64..8, td in 1i64..8, theta in 0i64..12, n in 1usize..12) {
        prop_assume!(tn < 2 * td);
        let ctx = QContext::new(q, alpha, Complex64::from_polar(r, p)).unwrap();
        let sp = ScalingParameter::new(
            DeclaredReal::rational(-tn, td).unwrap(),
            DeclaredReal::rational(theta, 12).unwrap(),
        );
        let split = split_sums(&ctx, &sp, n).unwrap().laguerre().to_complex();
        let direct = laguerre_log_polar(&ctx, n, scale_point(&ctx, &sp, n)).unwrap().to_complex();
        prop_assert!((split - direct).norm() <= 1e-9 * direct.norm());
    }

    #[test]
    fn normalized_matches_direct(q in 0.2..0.8f64, alpha in 0.0..2.0f64, r in 0.5..2.0f64, p in -PI..PI,
                                 tn in 0i64..8, theta in 0i64..12, n in 1usize..12) {
        let ctx = QContext::new(q, alpha, Complex64::from_polar(r, p)).unwrap();
        let sp = ScalingParameter::new(
            DeclaredReal::rational(tn, 4).unwrap(),
            DeclaredReal::rational(theta, 12).unwrap(),
        );
        let v = normalized_laguerre(&ctx, &sp, n).unwrap();
        let nz = qpr_core::qlaguerre::normalizer(&ctx, &sp, n);
        let direct = laguerre_log_polar(&ctx, n, scale_point(&ctx, &sp, n)).unwrap().to_complex();
        prop_assert!(((v * nz).to_complex() - direct).norm() <= 1e-9 * direct.norm());
    }

    #[test]
    fn dispatch_is_total(tn in -199i64..300, td in 1i64..100, theta_kind in 0u8..3) {
        let tau = DeclaredReal::rational(tn, td * 100).unwrap();
        let theta = match theta_kind {
            0 => DeclaredReal::rational(1, 3).unwrap(),
            1 => DeclaredReal::sqrt(2).unwrap(),
            _ => DeclaredReal::golden_ratio(),
        };
        let case = classify(&ScalingParameter::new(tau.clone(), theta)).unwrap();
        let expect = match tn.signum() {
            1 => 1,
            0 => if theta_kind == 0 { 2 } else { 3 },
            _ => if theta_kind == 0 { 4 } else { 5 },
        };
        prop_assert_eq!(case, expect);
    }

    #[test]
    fn reports_have_nonnegative_bounds(q in 0.2..0.8f64, case in prop::sample::select(vec![1u8, 2, 4]), n in 2usize..60) {
        let (tau, theta) = match case {
            1 => ("1/2", "1/3"),
            2 => ("0", "1/3"),
            _ => ("-1", "1/4"),
        };
        let ctx = QContext::new(q, 0.0, c(1.5)).unwrap();
        let sp = ScalingParameter::new(
            DeclaredReal::parse_exact(tau).unwrap(),
            DeclaredReal::parse_exact(theta).unwrap(),
        );
        let r = evaluate(&ctx, &sp, case, n, &VerifyOptions::default()).unwrap().unwrap();
        prop_assert!(r.bound >= 0.0 && r.observed_error >= 0.0);
        if case == 4 && r.eligible {
            prop_assert!(r.observed_error <= r.bound);
        }
    }
}
