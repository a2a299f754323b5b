use hyperstab::arithstat::*;
use hyperstab::ffcurves::FqContext;
use hyperstab::partition::{partitions_of, Partition};
use hyperstab::rational::{q_frac, q_int};
use hyperstab::Q;
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn ctx(q: u64) -> FqContext {
    FqContext::new(q).unwrap()
}

#[test]
fn zn_trivial_coefficient_counts_squarefree() {
    for (q, n) in [(3, 2), (3, 4), (3, 5), (5, 3)] {
        let z = zn_coefficients(&ctx(q), n, 2).unwrap();
        assert_eq!(z[&Partition::empty()], Q::one() - q_frac(1, q as i64), "q = {q}, n = {n}");
    }
}

#[test]
fn zn_odd_weight_vanishes_for_odd_n() {
    for n in [3, 5] {
        let z = zn_coefficients(&ctx(3), n, 3).unwrap();
        for (lam, c) in &z {
            if lam.weight() % 2 == 1 {
                assert!(c.is_zero(), "n = {n}, λ = {lam}: {c}");
            }
        }
    }
}

#[test]
fn quintic_coefficient_near_its_limit() {
    let z = zn_coefficients(&ctx(3), 5, 2).unwrap();
    let gf = stable_trace_genfunc(3, 2);
    for lam in partitions_of(2).iter() {
        let diff = &z[lam] - stable_coefficient(&gf, lam);
        assert!(error_bound(3, BoundKind::Zn { weight: 2, n: 5 }).covers(&diff), "λ = {lam}");
    }
}

#[test]
fn genfunc_examples() {
    let gf = stable_trace_genfunc(3, 6);
    assert_eq!(gf.coeff(&Partition::empty()), q_frac(2, 3));
    assert_eq!(gf.coeff(&p(&[2])), q_frac(3, 2));
    assert!(gf.coeff(&p(&[1, 1])).is_zero());
    // odd arities never appear
    assert!(gf.terms().keys().all(|l| l.weight() % 2 == 0));
}

#[test]
fn necklaces_count_irreducibles() {
    for q in [3u64, 5] {
        let irr = irreducibles(&ctx(q), 4).unwrap();
        for n in 1..=4 {
            let got = irr.iter().filter(|f| f.degree() == n as i64).count();
            assert_eq!(necklace_count(q, n), BigInt::from(got), "q = {q}, n = {n}");
        }
    }
}

#[test]
fn stable_t_values() {
    for q in [3u64, 5, 7] {
        assert_eq!(stable_trace_t_at(&Partition::empty(), q, 4), Q::one() - q_frac(1, q as i64));
        for w in [1, 3] {
            for lam in partitions_of(w).iter() {
                assert!(stable_trace_t_at(lam, q, 4).is_zero());
            }
        }
    }
    assert_eq!(stable_trace_t_at(&p(&[1, 1]), 3, 4), q_frac(-1, 6));
}

#[test]
fn tr_lambda_examples() {
    let c = ctx(3);
    for g in 1..=2 {
        let t = tr_lambda_g(&c, &Partition::empty(), g).unwrap();
        assert!(t.is_rational());
        assert_eq!(t.a, q_frac(2, 3));
        for lam in [p(&[1]), p(&[2, 1]), p(&[1, 1, 1])] {
            assert!(tr_lambda_g(&c, &lam, g).unwrap().is_zero(), "g = {g}, λ = {lam}");
        }
    }
    // the g = 1 value at (1,1) is within the stability bound of T₁₁
    let t = tr_lambda_g(&c, &p(&[1, 1]), 1).unwrap();
    assert!(t.is_rational());
    let diff = &t.a - stable_trace_t_at(&p(&[1, 1]), 3, 4);
    assert!(error_bound(3, BoundKind::Zn { weight: 2, n: 3 }).covers(&diff), "{diff}");
}

#[test]
fn moment_examples() {
    let c = ctx(3);
    let m0 = moment_sum(&c, 1, 0, 4).unwrap();
    assert_eq!(m0.moment.a, q_frac(2, 3));
    let m = moment_sum(&c, 1, 1, 8).unwrap();
    assert!(m.identity_holds());
    assert_eq!(m.moment.a, q_frac(4, 3));
    // (2/3)·2 comes from λ = ∅ with dim V_{(1)} = 2; tr₁ vanishes
    let tr1 = tr_lambda_g(&c, &p(&[1]), 1).unwrap();
    assert_eq!(m.moment.a, q_frac(2, 3) * q_int(2) + &tr1.a);
    assert!(m.within_bound());
    let m22 = moment_sum(&c, 2, 2, 4).unwrap();
    assert!(m22.identity_holds());
    assert_eq!(m22.moment.a, q_frac(5560, 729));
}

#[test]
fn prediction_with_no_moments_is_the_density() {
    for q in [3u64, 5] {
        for g in 1..=3 {
            let pr = q1_prediction(q, g, 0, 6).unwrap();
            assert_eq!(pr.value, Q::one() - q_frac(1, q as i64));
        }
    }
}

#[test]
fn prediction_reports_a_finite_tail() {
    let pr = q1_prediction(3, 1, 1, 8).unwrap();
    assert!(pr.tail_bound.is_finite() && pr.tail_bound >= 0.0);
    assert!(pr.decay_constant > 0.0);
}

#[test]
fn mainterm_examples() {
    let c = ctx(3);
    assert_eq!(mainterm_oracle(&c, &[1, 1]).unwrap(), q_frac(3, 2));
    assert_eq!(mainterm_oracle(&c, &[2]).unwrap(), q_frac(3, 2));
    for comp in [vec![1], vec![2, 1], vec![3], vec![1, 1, 1]] {
        assert!(mainterm_oracle(&c, &comp).unwrap().is_zero(), "{comp:?}");
    }
}

#[test]
fn mainterm_agrees_with_genfunc_monomials_q5() {
    let c = ctx(5);
    let gf = stable_trace_genfunc(5, 4);
    for comp in [vec![2], vec![1, 1], vec![4], vec![2, 2], vec![3, 1], vec![1, 1, 1, 1]] {
        assert_eq!(mainterm_oracle(&c, &comp).unwrap(), genfunc_monomial(&gf, &comp), "{comp:?}");
    }
}

#[test]
fn bound_instances() {
    assert_eq!(error_bound(3, BoundKind::Zn { weight: 2, n: 8 }).to_rational(), Some(q_frac(25, 9)));
    let c = error_bound(3, BoundKind::ThmC { g: 2, r: 1 });
    assert_eq!(c.exp, q_frac(-2, 3));
    assert_eq!(c.coeff, q_int(256));
    assert_eq!(theta(5), q_frac(16, 12));
    assert_eq!(error_bound(3, BoundKind::Fuks { n: 5, k: 2, dim: 1 }).to_rational(), Some(q_int(6)));
}

#[test]
fn scaled_power_strings_round_trip() {
    for sp in [
        ScaledPower::rational(q_frac(25, 9)),
        ScaledPower::new(q_int(50), 3, q_frac(-5, 2)),
        ScaledPower::new(q_int(256), 3, q_frac(-2, 3)),
    ] {
        let s = sp.to_string();
        assert_eq!(s.parse::<ScaledPower>().unwrap(), sp, "{s}");
        let json = serde_json::to_string(&sp).unwrap();
        assert_eq!(serde_json::from_str::<ScaledPower>(&json).unwrap(), sp);
    }
}

#[test]
fn scaled_power_compares_exactly() {
    // 3^{-1/2} lies strictly between 577/1000 and 578/1000
    let b = ScaledPower::new(Q::one(), 3, q_frac(-1, 2));
    assert!(b.covers(&q_frac(577, 1000)));
    assert!(!b.covers(&q_frac(578, 1000)));
    assert!(b.covers(&q_frac(-577, 1000)));
}

#[test]
fn reports_round_trip_through_json() {
    let c = ctx(3);
    let t = trace_report(&c, 5, 4, 2).unwrap();
    assert!(t.all_pass());
    let json = serde_json::to_string(&t).unwrap();
    assert_eq!(serde_json::from_str::<TraceReport>(&json).unwrap(), t);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["rows"][0]["brute"].is_string());

    let m = moment_sum(&c, 1, 2, 4).unwrap();
    let json = serde_json::to_string(&m).unwrap();
    assert!(json.contains("thmC_bound"));
    let back: MomentReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back.moment, m.moment);
    assert_eq!(back.identity_rhs, m.identity_rhs);
    assert_eq!(back.prediction, m.prediction);
    assert_eq!(back.thm_c_bound, m.thm_c_bound);
}
