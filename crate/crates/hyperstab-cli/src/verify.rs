//! Invariant suites behind `hyperstab verify`.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use hyperstab::arithstat::{self, genfunc_monomial, mainterm_oracle, moment_sum, stable_trace_genfunc, trace_report};
use hyperstab::ffcurves::{
    check_functional_equation, enumerate_squarefree, frobenius_data, lfunction_charsum, rh_deviation, FqContext,
};
use hyperstab::partition::{compositions_of, Partition};
use hyperstab::rational::{self, q_frac, q_int, Q};
use hyperstab::repchar::{dimension_identity_lhs, jimbo_miwa_check, symplectic_cauchy_failures};
use hyperstab::series::{
    braid_series, fit_rational, product_form_series, vanishing_report, CoefficientBasis, Family, Fit,
};
use hyperstab::symfunc::{GradedElement, SymFunc, Window};
use hyperstab::{exec, Error};

use crate::config::Profile;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub module: String,
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub profile: String,
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

struct Scale {
    arity: usize,
    qs: &'static [u64],
    trace_n: &'static [(u64, usize)],
}

fn scale(p: Profile) -> Scale {
    match p {
        Profile::Quick => Scale { arity: 8, qs: &[3], trace_n: &[(3, 7)] },
        Profile::Full => Scale { arity: 12, qs: &[3, 5], trace_n: &[(3, 9), (5, 9)] },
    }
}

type Outcome = Result<(bool, String), Error>;

fn row(module: &str, check: &str, f: impl FnOnce() -> Outcome) -> CheckRow {
    let t = Instant::now();
    let (pass, detail) = match f() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    eprintln!("[{:>7.2}s] {module}/{check}: {}", t.elapsed().as_secs_f64(), if pass { "pass" } else { "FAIL" });
    CheckRow { module: module.into(), check: check.into(), pass, detail }
}

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).expect("literal partition")
}

/// A fixed element with terms in several arities and z-degrees.
fn sample(w: Window, a: usize) -> GradedElement {
    let at = |f: SymFunc, k| GradedElement::from_symfunc_at(&f, k, w);
    GradedElement::z_power(1, w)
        .add(&at(SymFunc::h(1, a), 1))
        .add(&at(SymFunc::e(2, a).scale(&q_int(2)), 0))
        .sub(&at(SymFunc::p(3, a), 2))
        .add(&at(SymFunc::s(p(&[2, 1]), a).scale(&q_frac(1, 3)), 1))
}

fn symfunc_rows(a: usize) -> Vec<CheckRow> {
    let a = a.min(10);
    let w = Window::new(0, a as i64, a);
    let x = sample(w, a);
    let y = GradedElement::from_symfunc_at(&SymFunc::h(2, a), 1, w).sub(&GradedElement::z_power(2, w));
    vec![
        row("symfunc", "log-exp", || {
            let back = x.pleth_exp()?.pleth_log()?;
            Ok((back.same_element(&x), format!("arity {a}, z <= {a}")))
        }),
        row("symfunc", "exp-log", || {
            let one_plus = GradedElement::one(w).add(&x);
            let back = one_plus.pleth_log()?.pleth_exp()?;
            Ok((back.same_element(&one_plus), format!("arity {a}, z <= {a}")))
        }),
        row("symfunc", "exp-additive", || {
            let lhs = x.add(&y).pleth_exp()?;
            let rhs = x.pleth_exp()?.mul(&y.pleth_exp()?);
            Ok((lhs.same_element(&rhs), "Exp(x + y) = Exp(x) Exp(y)".into()))
        }),
        row("symfunc", "plethysm-associative", || {
            let (f, g) = (SymFunc::h(2, a), SymFunc::e(2, a));
            let lhs = x.plethysm_by(&f.plethysm(&g)?)?;
            let rhs = x.plethysm_by(&g)?.plethysm_by(&f)?;
            Ok((lhs.same_element(&rhs), "(h2 o e2) o x = h2 o (e2 o x)".into()))
        }),
    ]
}

fn show_fit(f: &Fit) -> String {
    match f {
        Fit::Found(r) => r.to_string(),
        Fit::Inconclusive => "inconclusive".into(),
    }
}

fn series_rows(a: usize) -> Vec<CheckRow> {
    let z = a as i64;
    vec![
        row("series", "arity-zero", || {
            let s = braid_series(CoefficientBasis::Schur, a, z)?;
            let got: Vec<Q> = s.series_of(&Partition::empty()).into_iter().map(|(_, c)| c).collect();
            let want: Vec<Q> = (0..=z).map(|k| q_int([1, -1].get(k as usize).copied().unwrap_or(0))).collect();
            let shown: Vec<String> = got.iter().map(rational::to_string).collect();
            Ok((got == want, format!("coefficients {}", shown.join(" "))))
        }),
        row("series", "product-form", || {
            let lhs = product_form_series(a, z)?;
            let rhs = braid_series(CoefficientBasis::Schur, a, z)?;
            Ok((lhs.same_element(&rhs), format!("arity {a}, z <= {z}")))
        }),
        row("series", "vanishing", || {
            let s = braid_series(CoefficientBasis::Symplectic, a, z)?;
            let v = vanishing_report(&s);
            Ok((v.is_empty(), format!("{} violations", v.len())))
        }),
        row("series", "rational-fit", || {
            let s = braid_series(CoefficientBasis::Schur, a.max(2), 16)?;
            let c11 = hyperstab::series::coefficient_series(Family::BraidSchur, &s, &p(&[1, 1]));
            let c2 = hyperstab::series::coefficient_series(Family::BraidSchur, &s, &p(&[2]));
            let f11 = fit_rational(&c11, 6)?;
            let f2 = fit_rational(&c2, 6)?;
            let ok11 = matches!(&f11, Fit::Found(r) if r.to_string() == "(1 - z)/(1 + z)");
            let ok2 = matches!(&f2, Fit::Found(r) if r.is_zero());
            Ok((ok11 && ok2, format!("(1,1): {}; (2): {}", show_fit(&f11), show_fit(&f2))))
        }),
        row("series", "betti-nonnegative", || {
            let lambdas = hyperstab::partition::partitions_up_to(4);
            for fam in Family::ALL {
                hyperstab::series::betti_table(fam, &lambdas, 6)?;
            }
            Ok((true, format!("{} families, |λ| <= 4, k <= 6", Family::ALL.len())))
        }),
    ]
}

fn repchar_rows(p: Profile) -> Vec<CheckRow> {
    let jm = if p == Profile::Full { 2 } else { 1 };
    vec![
        row("repchar", "dimension-identity", || {
            let mut bad = Vec::new();
            for g in 1..=4 {
                for r in 1..=4 {
                    let want = num_bigint::BigInt::from(4).pow((g * r) as u32);
                    if dimension_identity_lhs(g, r) != want {
                        bad.push((g, r));
                    }
                }
            }
            Ok((bad.is_empty(), format!("g, r <= 4; mismatches {bad:?}")))
        }),
        row("repchar", "jimbo-miwa", || {
            let ok = (1..=jm).all(|g| (1..=jm).all(|r| jimbo_miwa_check(g, r)));
            Ok((ok, format!("g, r <= {jm}")))
        }),
        row("repchar", "symplectic-cauchy", || {
            let bad = symplectic_cauchy_failures(6);
            Ok((bad.is_empty(), format!("|ν| <= 6; failures {bad:?}")))
        }),
    ]
}

fn ffcurve_rows(qs: &[u64]) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    for &q in qs {
        rows.push(row("ffcurves", &format!("dual-method-q{q}"), || {
            let ctx = FqContext::new(q)?;
            let (mut total, mut bad, mut bad_rh, mut bad_fe) = (0usize, 0usize, 0usize, 0usize);
            for n in 1..=6 {
                let polys: Vec<_> = enumerate_squarefree(&ctx, n)?.collect();
                let res = exec::map(&polys, |d| -> Result<(bool, bool, bool), Error> {
                    let cd = frobenius_data(&ctx, d)?;
                    Ok((
                        lfunction_charsum(&ctx, d)? == cd.lfunction(),
                        rh_deviation(&cd) <= 1e-9,
                        check_functional_equation(&ctx, &cd)?,
                    ))
                });
                for r in res {
                    let (l, rh, fe) = r?;
                    total += 1;
                    bad += !l as usize;
                    bad_rh += !rh as usize;
                    bad_fe += !fe as usize;
                }
            }
            let ok = bad == 0 && bad_rh == 0 && bad_fe == 0;
            Ok((ok, format!("{total} curves, deg <= 6: L mismatches {bad}, RH {bad_rh}, functional eq {bad_fe}")))
        }));
    }
    rows
}

fn arithstat_rows(s: &Scale) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    for &(q, n_max) in s.trace_n {
        rows.push(row("arithstat", &format!("traces-q{q}"), || {
            let ctx = FqContext::new(q)?;
            let mut fails = Vec::new();
            for n in 5..=n_max {
                let rep = trace_report(&ctx, n, 4, 2)?;
                fails.extend(rep.rows.iter().filter(|r| !r.pass).map(|r| format!("n={n} λ={}", r.lambda)));
            }
            Ok((fails.is_empty(), format!("n in 5..={n_max}, |λ| <= 4; failures {fails:?}")))
        }));
    }
    rows.push(row("arithstat", "moment-identity-q3", || {
        let ctx = FqContext::new(3)?;
        let mut bad = Vec::new();
        for g in 1..=2 {
            for r in 1..=3 {
                if !moment_sum(&ctx, g, r, 4)?.identity_holds() {
                    bad.push((g, r));
                }
            }
        }
        Ok((bad.is_empty(), format!("g <= 2, r <= 3; failures {bad:?}")))
    }));
    for &q in s.qs {
        rows.push(row("arithstat", &format!("mainterm-oracle-q{q}"), || {
            let ctx = FqContext::new(q)?;
            let gf = stable_trace_genfunc(q, 4);
            let mut checked = 0;
            let mut bad = Vec::new();
            for w in 0..=4 {
                for comp in compositions_of(w) {
                    checked += 1;
                    if mainterm_oracle(&ctx, &comp)? != genfunc_monomial(&gf, &comp) {
                        bad.push(comp);
                    }
                }
            }
            Ok((bad.is_empty(), format!("{checked} compositions; mismatches {bad:?}")))
        }));
        rows.push(row("arithstat", &format!("trace-decay-q{q}"), || {
            let maxima = arithstat::t_maxima(q, 8);
            let even: Vec<&Q> = maxima.iter().step_by(2).skip(1).collect();
            let bounded = even.iter().all(|m| **m <= Q::from_integer(1.into()));
            let nonincreasing = even[1..].windows(2).all(|w| w[1] <= w[0]);
            let shown: Vec<String> = even.iter().map(|m| format!("{:.4}", rational::to_f64(m))).collect();
            Ok((
                bounded && nonincreasing,
                format!("max |T| at weights 2,4,6,8: {}; bounded {bounded}, nonincreasing beyond 2 {nonincreasing}", shown.join(", ")),
            ))
        }));
    }
    rows
}

pub fn run_verify(profile: Profile) -> VerifyReport {
    let s = scale(profile);
    let mut rows = symfunc_rows(s.arity);
    rows.extend(series_rows(s.arity));
    rows.extend(repchar_rows(profile));
    rows.extend(ffcurve_rows(s.qs));
    rows.extend(arithstat_rows(&s));
    let name = match profile {
        Profile::Quick => "quick",
        Profile::Full => "full",
    };
    VerifyReport { profile: name.into(), rows }
}
