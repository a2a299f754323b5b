//! Acceptance suite. Every test prints one `criterion N: PASS|FAIL` line and
//! then asserts. Expected values are produced here, independently of the code
//! under test: Jacobi–Trudi determinants for Schur averages, L-functions from
//! the Frobenius side for central values, closed forms where they exist.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use hyperstab::arithstat::{
    genfunc_monomial, mainterm_oracle, moment_sum, stable_coefficient, stable_trace_genfunc, stable_trace_t,
    zn_coefficients,
};
use hyperstab::ffcurves::{
    check_functional_equation, enumerate_squarefree, frobenius_data, lfunction_charsum, rh_deviation, CurveData,
    FqContext,
};
use hyperstab::partition::{compositions_of, partitions_of, partitions_up_to, Partition};
use hyperstab::repchar::{dimension_identity_lhs, jimbo_miwa_check};
use hyperstab::series::{
    braid_series, coefficient_series, fit_rational, product_form_series, vanishing_report, CoefficientBasis, Family,
    Fit,
};
use hyperstab::symfunc::{Basis, GradedElement, SymFunc, Window};
use hyperstab::Q;
use hyperstab_oracles::{central_from_frobenius, h_from_l, mul_sqrt, qi, qpow, schur_jt};

fn report(n: u32, what: &str, ok: bool, detail: impl AsRef<str>) {
    println!("criterion {n} ({what}): {} [{}]", if ok { "PASS" } else { "FAIL" }, detail.as_ref());
}

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

// ---------------------------------------------------------------- criterion 1

#[test]
fn criterion_01_plethystic_identities() {
    let t = Instant::now();
    let (a, zmax) = (10usize, 10i64);
    let w = Window::new(0, zmax, a);
    let at = |f: SymFunc, k| GradedElement::from_symfunc_at(&f, k, w);
    let z = |k| GradedElement::z_power(k, w);
    let elements = [
        z(1),
        at(SymFunc::h(1, a), 0),
        at(SymFunc::h(1, a), 1).add(&at(SymFunc::e(2, a), 0)).sub(&z(2)),
        at(SymFunc::p(3, a), 1).scale(&qf(1, 2)).add(&at(SymFunc::s(p(&[2, 1]), a), 2)),
        at(SymFunc::e(2, a), 0).neg().add(&z(3).scale(&qi(2))),
    ];
    let mut failures = Vec::new();
    for (i, x) in elements.iter().enumerate() {
        if !x.pleth_exp().unwrap().pleth_log().unwrap().same_element(x) {
            failures.push(format!("Log Exp x{i}"));
        }
        let one_plus = GradedElement::one(w).add(x);
        if !one_plus.pleth_log().unwrap().pleth_exp().unwrap().same_element(&one_plus) {
            failures.push(format!("Exp Log (1 + x{i})"));
        }
        for (j, y) in elements.iter().enumerate().skip(i + 1) {
            let lhs = x.add(y).pleth_exp().unwrap();
            let rhs = x.pleth_exp().unwrap().mul(&y.pleth_exp().unwrap());
            if !lhs.same_element(&rhs) {
                failures.push(format!("Exp additivity x{i}, x{j}"));
            }
        }
        let (f, g) = (SymFunc::h(2, a), SymFunc::p(2, a).add(&SymFunc::e(3, a)));
        let lhs = x.plethysm_by(&f.plethysm(&g).unwrap()).unwrap();
        let rhs = x.plethysm_by(&g).unwrap().plethysm_by(&f).unwrap();
        if !lhs.same_element(&rhs) {
            failures.push(format!("associativity on x{i}"));
        }
    }
    // (E − 1) ∘ L = h₁: Exp(Log(1 + h₁)) − 1 = h₁
    let h1 = at(SymFunc::h(1, a), 0);
    let round = GradedElement::one(w).add(&h1).pleth_log().unwrap().pleth_exp().unwrap().sub(&GradedElement::one(w));
    if !round.same_element(&h1) {
        failures.push("(E - 1) o L = h1".into());
    }
    // closed form: Exp(h₁) = Σ_n h_n, Exp(z) = 1/(1 − z)
    let expected = GradedElement::from_terms(Basis::Complete, w, (0..=a as u32).map(|n| (0, Partition::single(n), Q::one())));
    if !h1.pleth_exp().unwrap().same_element(&expected) {
        failures.push("Exp(h1) = sum h_n".into());
    }
    let geometric = GradedElement::from_terms(Basis::Schur, w, (0..=zmax).map(|k| (k, Partition::empty(), Q::one())));
    if !z(1).pleth_exp().unwrap().same_element(&geometric) {
        failures.push("Exp(z) = 1/(1 - z)".into());
    }
    let el = t.elapsed();
    let ok = failures.is_empty() && el < Duration::from_secs(60);
    report(1, "plethystic identities", ok, format!("arity {a}, z <= {zmax}, {el:.1?}, failures {failures:?}"));
    assert!(ok);
}

// ---------------------------------------------------------------- criterion 2

#[test]
fn criterion_02_arity_zero_is_arnold() {
    let s = braid_series(CoefficientBasis::Schur, 4, 10).unwrap();
    let got: Vec<Q> = s.series_of(&Partition::empty()).into_iter().map(|(_, c)| c).collect();
    // Arnold: H*(Br_n; Q) is Q in degrees 0 and 1, with the (−1)^k sign of the series
    let want: Vec<Q> = (0..=10).map(|k| qi([1, -1].get(k).copied().unwrap_or(0))).collect();
    let ok = got == want;
    report(2, "arity-0 equals 1 - z", ok, format!("{} coefficients", got.len()));
    assert!(ok);
}

// ---------------------------------------------------------------- criterion 3

#[test]
fn criterion_03_product_form() {
    let t = Instant::now();
    let lhs = product_form_series(12, 12).unwrap();
    let rhs = braid_series(CoefficientBasis::Schur, 12, 12).unwrap();
    let el = t.elapsed();
    let ok = lhs.same_element(&rhs) && el < Duration::from_secs(600);
    report(3, "product form equals braid series", ok, format!("arity 12, z <= 12, {} terms, {el:.1?}", rhs.len()));
    assert!(ok);
}

// ---------------------------------------------------------------- criterion 4

#[test]
fn criterion_04_vanishing() {
    let s = braid_series(CoefficientBasis::Symplectic, 10, 10).unwrap().convert_basis(Basis::Schur);
    let mut bad = Vec::new();
    for (k, mu, c) in s.terms() {
        if c.is_zero() {
            continue;
        }
        let n = mu.weight() as i64;
        let ok = 4 * k >= n && 2 * k >= mu.first() as i64 && 2 * mu.length() as i64 <= n && n % 2 == 0;
        if !ok {
            bad.push((k, mu.clone()));
        }
    }
    let lib = vanishing_report(&s);
    let ok = bad.is_empty() && lib.is_empty();
    report(4, "vanishing certificates", ok, format!("{} terms, arity 10, z <= 10, violations {}", s.len(), bad.len()));
    assert!(ok);
}

// ---------------------------------------------------------------- criterion 5

#[test]
fn criterion_05_rational_fit() {
    let s = braid_series(CoefficientBasis::Schur, 2, 20).unwrap();
    let c11 = coefficient_series(Family::BraidSchur, &s, &p(&[1, 1]));
    let c2 = coefficient_series(Family::BraidSchur, &s, &p(&[2]));
    // (1 − z)/(1 + z) = 1 − 2z + 2z² − …
    let closed: Vec<Q> = (0..c11.len()).map(|k| if k == 0 { qi(1) } else { qi(2 * if k % 2 == 0 { 1 } else { -1 }) }).collect();
    let f11 = fit_rational(&c11, 6).unwrap();
    let f2 = fit_rational(&c2, 6).unwrap();
    let ok11 = matches!(&f11, Fit::Found(r) if r.numerator == vec![qi(1), qi(-1)] && r.denominator == vec![qi(1), qi(1)]);
    let ok2 = matches!(&f2, Fit::Found(r) if r.is_zero());
    let ok = c11 == closed && ok11 && ok2 && c2.iter().all(Zero::is_zero);
    let show = |f: &Fit| match f {
        Fit::Found(r) => r.to_string(),
        Fit::Inconclusive => "inconclusive".to_string(),
    };
    report(5, "rational fits", ok, format!("guard 6: (1,1) -> {}; (2) -> {}", show(&f11), show(&f2)));
    assert!(ok);
}

// ------------------------------------------------------------ criteria 6 and 7

struct Enumerated {
    q: u64,
    d: hyperstab::ffcurves::FqPoly,
    cd: CurveData,
}

fn all_curves() -> &'static (Vec<Enumerated>, Duration) {
    static CELL: OnceLock<(Vec<Enumerated>, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = Instant::now();
        let mut out = Vec::new();
        for q in [3u64, 5] {
            let ctx = FqContext::new(q).unwrap();
            for n in 1..=6 {
                for d in enumerate_squarefree(&ctx, n).unwrap() {
                    let cd = frobenius_data(&ctx, &d).unwrap();
                    out.push(Enumerated { q, d, cd });
                }
            }
        }
        (out, t.elapsed())
    })
}

#[test]
fn criterion_06_dual_method() {
    let t = Instant::now();
    let (curves, _) = all_curves();
    let mut ctxs = std::collections::HashMap::new();
    let mut mismatches = 0;
    for c in curves {
        let ctx = ctxs.entry(c.q).or_insert_with(|| FqContext::new(c.q).unwrap());
        if lfunction_charsum(ctx, &c.d).unwrap() != c.cd.lfunction() {
            mismatches += 1;
        }
    }
    // #𝒫_n = q for n = 1 and qⁿ − qⁿ⁻¹ otherwise
    let expected: usize = [3usize, 5].iter().map(|&q| q + (2..=6).map(|n| q.pow(n) - q.pow(n - 1)).sum::<usize>()).sum();
    let el = t.elapsed();
    let ok = mismatches == 0 && curves.len() == expected && el < Duration::from_secs(300);
    report(6, "dual-method L-functions", ok, format!("{} curves, q in {{3, 5}}, deg <= 6, {mismatches} mismatches, {el:.1?}", curves.len()));
    assert!(ok);
}

#[test]
fn criterion_07_rh_and_functional_equation() {
    let (curves, _) = all_curves();
    let mut ctxs = std::collections::HashMap::new();
    let (mut rh_bad, mut fe_bad, mut sym_bad) = (0, 0, 0);
    let mut worst: f64 = 0.0;
    for c in curves {
        let ctx = ctxs.entry(c.q).or_insert_with(|| FqContext::new(c.q).unwrap());
        let dev = rh_deviation(&c.cd);
        worst = worst.max(dev);
        rh_bad += (dev > 1e-9) as usize;
        fe_bad += !check_functional_equation(ctx, &c.cd).unwrap() as usize;
        // c_{2g−i} = q^{g−i} c_i
        let (g, q) = (c.cd.genus, c.q as i64);
        let cp = &c.cd.charpoly;
        sym_bad += !(0..=2 * g).all(|i| {
            let (lo, hi) = (i.min(2 * g - i), i.max(2 * g - i));
            cp[hi] == q.pow((g - lo) as u32) * cp[lo]
        }) as usize;
    }
    let ok = rh_bad == 0 && fe_bad == 0 && sym_bad == 0;
    report(7, "RH and functional equation", ok, format!("{} curves, max | |ω|/√q - 1 | = {worst:.2e}, failures {rh_bad}/{fe_bad}/{sym_bad}", curves.len()));
    assert!(ok);
}

// ---------------------------------------------------------------- criterion 8

#[test]
fn criterion_08_zn_vs_stable() {
    let t = Instant::now();
    let q = 3u64;
    let ctx = FqContext::new(q).unwrap();
    let gf = stable_trace_genfunc(q, 4);
    let lambdas = partitions_up_to(4);
    let mut failures = Vec::new();
    let mut oracle_mismatch = Vec::new();
    let mut tightest = (f64::INFINITY, 0usize, Partition::empty());
    for n in 5..=9 {
        let mut sums = vec![0i128; lambdas.len()];
        for d in enumerate_squarefree(&ctx, n).unwrap() {
            let h = h_from_l(&frobenius_data(&ctx, &d).unwrap().lfunction(), 4);
            for (s, lam) in sums.iter_mut().zip(&lambdas) {
                *s += schur_jt(lam, &h);
            }
        }
        let lib = zn_coefficients(&ctx, n, 4).unwrap();
        for (s, lam) in sums.iter().zip(&lambdas) {
            let brute = Q::from_integer(BigInt::from(*s)) * qpow(q, -(n as i64));
            if lib[lam] != brute {
                oracle_mismatch.push((n, lam.clone()));
            }
            let diff = (&brute - stable_coefficient(&gf, lam)).abs();
            // |diff| ≤ 2·5^w·3^{w − n/2}  ⇔  diff² ≤ 4·25^w·3^{2w − n}
            let w = lam.weight() as i64;
            let rhs2 = qi(4) * qpow(25, w) * qpow(q, 2 * w - n as i64);
            if &diff * &diff > rhs2 {
                failures.push((n, lam.clone()));
            }
            let ratio = crate_f64(&diff) / (2.0 * 5f64.powi(w as i32) * 3f64.powf(w as f64 - n as f64 / 2.0));
            if ratio > 0.0 && ratio.recip() < tightest.0 {
                tightest = (ratio.recip(), n, lam.clone());
            }
        }
    }
    // the bound at n = 9, |λ| = 2 against the size Deligne's bound alone allows for
    // that coefficient: (1 − 1/q)·dim S^λ(C^8)·q^{|λ|/2} (28 for (1,1), 36 for (2))
    let bound = 2.0 * 25.0 * 3f64.powf(2.0 - 4.5);
    let scale_11 = (2.0 / 3.0) * 28.0 * 3.0;
    let scale_2 = (2.0 / 3.0) * 36.0 * 3.0;
    let not_vacuous = bound < scale_11 && bound < scale_2;
    let el = t.elapsed();
    let ok = failures.is_empty() && oracle_mismatch.is_empty() && not_vacuous && el < Duration::from_secs(1200);
    report(
        8,
        "Z_n against stable traces",
        ok,
        format!(
            "q = 3, n in 5..=9, |λ| <= 4; failures {failures:?}; oracle mismatches {oracle_mismatch:?}; \
             n = 9 |λ| = 2 bound {bound:.3} vs scale {scale_11:.0}/{scale_2:.0}; tightest slack x{:.1} at n = {} λ = {}; {el:.1?}",
            tightest.0, tightest.1, tightest.2
        ),
    );
    assert!(ok);
}

fn crate_f64(x: &Q) -> f64 {
    hyperstab::rational::to_f64(x)
}

// ---------------------------------------------------------------- criterion 9

#[test]
fn criterion_09_moment_identity() {
    let q = 3u64;
    let ctx = FqContext::new(q).unwrap();
    let mut bad = Vec::new();
    let mut shown = Vec::new();
    for g in 1..=2 {
        let curves: Vec<CurveData> =
            enumerate_squarefree(&ctx, 2 * g + 1).unwrap().map(|d| frobenius_data(&ctx, &d).unwrap()).collect();
        for r in 1..=3u32 {
            let mut total = (Q::zero(), Q::zero());
            for cd in &curves {
                let v = central_from_frobenius(q, &cd.lfunction());
                let mut pw = (Q::one(), Q::zero());
                for _ in 0..r {
                    pw = mul_sqrt(&pw, &v, q);
                }
                total = (total.0 + pw.0, total.1 + pw.1);
            }
            let norm = qpow(q, -(2 * g as i64 + 1));
            let oracle = (total.0 * &norm, total.1 * &norm);
            let m = moment_sum(&ctx, g, r as usize, 4).unwrap();
            let ok = m.moment.a == oracle.0
                && m.moment.b == oracle.1
                && m.identity_rhs == m.moment
                && m.moment.b.is_zero()
                && m.identity_rhs.b.is_zero();
            if !ok {
                bad.push((g, r));
            }
            shown.push(format!("g{g}r{r}={}", m.moment));
        }
    }
    let ok = bad.is_empty();
    report(9, "moment identity", ok, format!("q = 3: {}; failures {bad:?}", shown.join(" ")));
    assert!(ok);
}

// --------------------------------------------------------------- criterion 10

#[test]
fn criterion_10_dimension_and_jimbo_miwa() {
    let mut bad = Vec::new();
    for g in 1..=4 {
        for r in 1..=4 {
            if dimension_identity_lhs(g, r) != BigInt::from(4).pow((g * r) as u32) {
                bad.push(format!("dim g{g} r{r}"));
            }
        }
    }
    for g in 1..=2 {
        for r in 1..=2 {
            if !jimbo_miwa_check(g, r) {
                bad.push(format!("Jimbo-Miwa g{g} r{r}"));
            }
        }
    }
    let ok = bad.is_empty();
    report(10, "dimension identity and Jimbo-Miwa", ok, format!("failures {bad:?}"));
    assert!(ok);
}

// --------------------------------------------------------------- criterion 11

#[test]
fn criterion_11_mainterm_oracle() {
    let mut bad = Vec::new();
    let mut count = 0;
    for q in [3u64, 5] {
        let ctx = FqContext::new(q).unwrap();
        let gf = stable_trace_genfunc(q, 4);
        for w in 0..=4 {
            for comp in compositions_of(w) {
                count += 1;
                let o = mainterm_oracle(&ctx, &comp).unwrap();
                if o != genfunc_monomial(&gf, &comp) {
                    bad.push((q, comp.clone()));
                }
                if w % 2 == 1 && !o.is_zero() {
                    bad.push((q, comp));
                }
            }
        }
        // composition (1,1): q(q − 1)/(q + 1)
        let q = q as i64;
        if mainterm_oracle(&ctx, &[1, 1]).unwrap() != qf(q * (q - 1), q + 1) {
            bad.push((q as u64, vec![1, 1]));
        }
    }
    let ok = bad.is_empty();
    report(11, "main-term oracle", ok, format!("{count} compositions over q in {{3, 5}}; mismatches {bad:?}"));
    assert!(ok);
}

// --------------------------------------------------------------- criterion 12

fn even_weight_maxima(q: u64) -> Vec<(usize, Q)> {
    let gf = stable_trace_genfunc(q, 8);
    (2..=8)
        .step_by(2)
        .map(|w| (w, partitions_of(w).iter().map(|l| stable_trace_t(l, q, &gf).abs()).max().unwrap()))
        .collect()
}

/// T_λ is the limit of the finite-genus traces; the bound |T_λ| ≤ 1 holds and
/// the maxima decrease from weight 4 on.
#[test]
fn criterion_12_decay_bounded_and_beyond_weight_2() {
    let mut notes = Vec::new();
    let mut ok = true;
    for q in [3u64, 5] {
        let m = even_weight_maxima(q);
        ok &= m.iter().all(|(_, v)| *v <= Q::one());
        ok &= m[1..].windows(2).all(|w| w[1].1 <= w[0].1);
        let shown: Vec<String> = m.iter().map(|(w, v)| format!("w{w}:{:.4}", crate_f64(v))).collect();
        notes.push(format!("q = {q}: {}", shown.join(" ")));
    }
    report(12, "T_λ bounded by 1, maxima nonincreasing for weight >= 4", ok, notes.join("; "));
    assert!(ok);
}

/// The decay criterion as stated: at q = 3, |T_λ| ≤ 1 for 2 ≤ |λ| ≤ 8 and the
/// per-weight maxima are nonincreasing from weight 2. The maxima rise from 1/6
/// at weight 2 to 7/40 at weight 4, so this fails.
#[test]
fn criterion_12_literal_nonincreasing_from_weight_2() {
    let m = even_weight_maxima(3);
    let bounded = m.iter().all(|(_, v)| *v <= Q::one());
    let nonincreasing = m.windows(2).all(|w| w[1].1 <= w[0].1);
    let ok = bounded && nonincreasing;
    let shown: Vec<String> = m.iter().map(|(w, v)| format!("w{w}:{}", v)).collect();
    report(12, "T_λ bounded by 1, maxima nonincreasing from weight 2", ok, format!("q = 3: {}; bounded {bounded}, nonincreasing {nonincreasing}", shown.join(" ")));
    assert!(ok, "max |T_λ| by weight at q = 3: {}", shown.join(" "));
}

/// T_λ as used above agrees with the finite-genus traces: tr_λ(g) approaches it.
#[test]
fn criterion_12_t_is_the_genus_limit() {
    let q = 3u64;
    let ctx = FqContext::new(q).unwrap();
    let gf = stable_trace_genfunc(q, 4);
    let mut ok = true;
    let mut notes = Vec::new();
    for lam in [p(&[1, 1]), p(&[2, 2]), p(&[2, 1, 1])] {
        let t = stable_trace_t(&lam, q, &gf);
        let errs: Vec<f64> = (2..=4)
            .map(|g| {
                let tr = hyperstab::arithstat::tr_lambda_g(&ctx, &lam, g).unwrap();
                (tr.to_f64() - crate_f64(&t)).abs()
            })
            .collect();
        ok &= errs.windows(2).all(|w| w[1] <= w[0]) && errs[2] < 0.01;
        notes.push(format!("{lam}: T = {t}, |tr - T| at g = 2,3,4: {:.4} {:.4} {:.4}", errs[0], errs[1], errs[2]));
    }
    report(12, "T_λ is the limit of tr_λ(g)", ok, notes.join("; "));
    assert!(ok);
}
