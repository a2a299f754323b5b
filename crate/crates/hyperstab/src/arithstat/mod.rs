//! Averages of symmetric functions of Frobenius over hyperelliptic families,
//! their stable limits, moments of quadratic L-functions at the central point,
//! and the explicit bounds relating them.

pub mod bounds;
mod oracle;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use bounds::{error_bound, theta, zn_bound, BoundKind, ScaledPower};
pub use oracle::{irreducibles, mainterm_oracle};

use crate::error::{Error, Result};
use crate::ffcurves::{self, frobenius_data, CurveData, FqContext};
use crate::partition::{partitions_of, partitions_up_to, Partition};
use crate::qsqrt::QAdjSqrt;
use crate::rational::{self, q_big, q_frac, q_int, Q};
use crate::repchar::{lambda_dagger, signed_dim, sn_character, symplectic_to_schur, weyl_poly_sp};
use crate::symfunc::{necklace_terms, Basis, SymFunc};

/// S_ρ = Σ_d p_ρ(Θ_d) over a family, for every |ρ| ≤ max_weight. Every
/// Schur-type average over the family is a linear combination of these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumMoments {
    pub q: u32,
    pub n: usize,
    pub max_weight: usize,
    pub curves: u64,
    pub sums: BTreeMap<Partition, i128>,
}

impl PowerSumMoments {
    pub fn new(q: u32, n: usize, max_weight: usize) -> Self {
        let sums = partitions_up_to(max_weight).into_iter().map(|p| (p, 0)).collect();
        PowerSumMoments { q, n, max_weight, curves: 0, sums }
    }

    pub fn add_curve(&mut self, cd: &CurveData) {
        let p = cd.theta_powersums(self.max_weight);
        for (rho, s) in self.sums.iter_mut() {
            *s += rho.parts().iter().map(|&k| p[k as usize - 1]).product::<i128>();
        }
        self.curves += 1;
    }

    pub fn merge(mut self, other: Self) -> Self {
        for (rho, s) in other.sums {
            *self.sums.get_mut(&rho).expect("same shape") += s;
        }
        self.curves += other.curves;
        self
    }

    /// Runs over every monic squarefree d of degree n.
    pub fn collect(ctx: &FqContext, n: usize, max_weight: usize) -> Result<Self> {
        let q = ctx.q();
        ffcurves::fold_squarefree(
            ctx,
            n,
            || Ok(PowerSumMoments::new(q, n, max_weight)),
            |acc: &mut Result<PowerSumMoments>, d| {
                if let Ok(m) = acc {
                    match frobenius_data(ctx, d) {
                        Ok(cd) => m.add_curve(&cd),
                        Err(e) => *acc = Err(e),
                    }
                }
            },
            |a, b| Ok(a?.merge(b?)),
        )?
    }

    pub fn from_curves(q: u32, n: usize, max_weight: usize, curves: &[CurveData]) -> Self {
        let mut m = PowerSumMoments::new(q, n, max_weight);
        for c in curves {
            m.add_curve(c);
        }
        m
    }

    fn sum(&self, rho: &Partition) -> Result<Q> {
        self.sums
            .get(rho)
            .map(|s| q_big(BigInt::from(*s)))
            .ok_or_else(|| Error::InvalidInput(format!("weight {} exceeds the collected {}", rho.weight(), self.max_weight)))
    }

    fn q_pow(&self, e: i64) -> Q {
        rational::pow_i(&q_int(self.q as i64), e)
    }

    /// q^{−n} Σ_d s_λ(Θ_d), the coefficient of s_{λ'} in Z_n.
    pub fn schur_average(&self, lambda: &Partition) -> Result<Q> {
        let mut acc = Q::zero();
        for rho in partitions_of(lambda.weight()).iter() {
            let chi = sn_character(lambda, rho)?;
            if chi != 0 {
                acc += self.sum(rho)? * q_int(chi) / q_big(rho.z());
            }
        }
        Ok(acc * self.q_pow(-(self.n as i64)))
    }

    /// q^{−n} Σ_d s_⟨λ⟩(q^{−1/2}Θ_d).
    pub fn symplectic_average(&self, lambda: &Partition) -> Result<QAdjSqrt> {
        let f = symplectic_to_schur(lambda, lambda.weight()).convert_basis(Basis::PowerSum);
        let q = self.q as u64;
        let mut acc = QAdjSqrt::new(Q::zero(), Q::zero(), q);
        for (rho, c) in f.terms() {
            let s = self.sum(rho)?;
            acc += &QAdjSqrt::q_half_power(q, -(rho.weight() as i64)).scale(&(c * s));
        }
        let mut out = acc.scale(&self.q_pow(-(self.n as i64)));
        out.q = q;
        Ok(out)
    }
}

/// Coefficients of Z_n: λ ↦ q^{−n} Σ_{d ∈ 𝒫_n} s_λ(Θ_d), the s_{λ'} slot.
pub fn zn_coefficients(ctx: &FqContext, n: usize, max_weight: usize) -> Result<BTreeMap<Partition, Q>> {
    let m = PowerSumMoments::collect(ctx, n, max_weight)?;
    partitions_up_to(max_weight).into_iter().map(|l| Ok((l.clone(), m.schur_average(&l)?))).collect()
}

/// i_n(q) = (1/n) Σ_{d|n} μ(n/d) q^d.
pub fn necklace_count(q: u64, n: u64) -> BigInt {
    let v: Q = necklace_terms(n).into_iter().map(|(d, c)| c * q_big(BigInt::from(q).pow(d as u32))).sum();
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// (1 − q⁻¹) Π_{n ≤ A/2} (1 + (1 + q⁻ⁿ)⁻¹ Σ_{k>0} ψ_n(h_{2k}))^{i_n(q)} in the
/// Schur basis, truncated to arity A. The coefficient of s_{λ'} is the limit of
/// the corresponding Z_n coefficient.
pub fn stable_trace_genfunc(q: u64, max_arity: usize) -> SymFunc {
    let a = max_arity;
    let qq = q_int(q as i64);
    let factors: Vec<SymFunc> = crate::exec::map_range(a / 2, |i| {
        let n = i + 1;
        let mut x = SymFunc::zero(Basis::PowerSum, a);
        let mut k = 1;
        while 2 * k * n <= a {
            x = x.add(&SymFunc::h(2 * k as u32, a).adams(n as u32).convert_basis(Basis::PowerSum));
            k += 1;
        }
        let damp = Q::one() / (Q::one() + rational::pow_i(&qq, -(n as i64)));
        let x = x.scale(&damp);
        // (1 + X)^N = Σ_m binom(N, m) X^m, finite since X has no arity-0 part
        let big_n = q_big(necklace_count(q, n as u64));
        let mut out = SymFunc::one(a);
        let mut xm = SymFunc::one(a);
        let mut binom = Q::one();
        for m in 1..=a / (2 * n) {
            xm = xm.multiply(&x);
            binom = binom * (&big_n - q_int(m as i64 - 1)) / q_int(m as i64);
            out = out.add(&xm.scale(&binom));
        }
        out
    });
    let mut g = SymFunc::constant(Q::one() - qq.recip(), a);
    for f in factors {
        g = g.multiply(&f);
    }
    g.convert_basis(Basis::Schur)
}

/// The s_{λ'} coefficient of the stable generating function.
pub fn stable_coefficient(genfunc: &SymFunc, lambda: &Partition) -> Q {
    genfunc.convert_basis(Basis::Schur).coeff(&lambda.conjugate())
}

/// Limit of tr_λ(g): each Schur constituent s_μ of s_⟨λ⟩ contributes
/// q^{−|μ|/2} times its stable coefficient.
pub fn stable_trace_t(lambda: &Partition, q: u64, genfunc: &SymFunc) -> Q {
    if lambda.weight() % 2 == 1 {
        return Q::zero();
    }
    let q = q_int(q as i64);
    let sp = symplectic_to_schur(lambda, lambda.weight());
    let mut acc = Q::zero();
    for (mu, c) in sp.terms() {
        let e = mu.weight() as i64 / 2;
        acc += c * stable_coefficient(genfunc, mu) * rational::pow_i(&q, -e);
    }
    acc
}

pub fn stable_trace_t_at(lambda: &Partition, q: u64, max_arity: usize) -> Q {
    stable_trace_t(lambda, q, &stable_trace_genfunc(q, max_arity.max(lambda.weight())))
}

/// q^{−(2g+1)} Σ_{d ∈ 𝒫_{2g+1}} s_⟨λ⟩(Θ̄_d).
pub fn tr_lambda_g(ctx: &FqContext, lambda: &Partition, g: usize) -> Result<QAdjSqrt> {
    PowerSumMoments::collect(ctx, 2 * g + 1, lambda.weight())?.symplectic_average(lambda)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub lambda: Partition,
    #[serde(with = "rational::serde_q")]
    pub brute: Q,
    #[serde(with = "rational::serde_q")]
    pub stable: Q,
    pub bound: ScaledPower,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub q: u32,
    pub n: usize,
    pub rows: Vec<TraceRow>,
}

impl TraceReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

pub fn trace_report_from(m: &PowerSumMoments, genfunc: &SymFunc, slack: u32) -> Result<TraceReport> {
    let mut rows = Vec::new();
    for lam in partitions_up_to(m.max_weight) {
        let brute = m.schur_average(&lam)?;
        let stable = stable_coefficient(genfunc, &lam);
        let bound = zn_bound(m.q as u64, lam.weight(), m.n, slack);
        let pass = bound.covers(&(&brute - &stable));
        rows.push(TraceRow { lambda: lam, brute, stable, bound, pass });
    }
    Ok(TraceReport { q: m.q, n: m.n, rows })
}

/// Z_n against the stable limit for every |λ| ≤ max_weight.
pub fn trace_report(ctx: &FqContext, n: usize, max_weight: usize, slack: u32) -> Result<TraceReport> {
    let m = PowerSumMoments::collect(ctx, n, max_weight)?;
    trace_report_from(&m, &stable_trace_genfunc(ctx.q() as u64, max_weight.max(2)), slack)
}

/// (1 − 1/q) · dim S^λ(C^{n−1}) · q^{|λ|/2}: the size of the Z_n coefficient
/// allowed by Deligne's bound alone.
pub fn trivial_scale(q: u64, n: usize, lambda: &Partition) -> ScaledPower {
    let ones = vec![q_int(n as i64 - 1); lambda.weight().max(1)];
    let dim = crate::repchar::schur_eval(lambda, &ones).expect("power sums supplied");
    ScaledPower::new((Q::one() - q_frac(1, q as i64)) * dim, q, q_frac(lambda.weight() as i64, 2))
}

/// A prediction from the stable traces with a reported tail estimate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Q1Prediction {
    #[serde(with = "rational::serde_q")]
    pub value: Q,
    pub cutoff: usize,
    /// max |T_λ| q^{|λ|/5} over 2 ≤ |λ| ≤ cutoff.
    pub decay_constant: f64,
    pub tail_bound: f64,
}

/// Partitions with at most r parts of weight w, as r-vectors padded with zeros.
fn at_most_r_parts(w: usize, r: usize) -> Vec<Vec<u32>> {
    fn go(rem: usize, max: usize, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if rem > max * slots {
            return;
        }
        for part in (0..=rem.min(max)).rev() {
            cur.push(part as u32);
            go(rem - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(w, w, r, &mut Vec::new(), &mut out);
    out
}

/// Σ_{λ₁ ≤ r, |λ| ≤ cutoff} T_λ · (signed dim of λ†(g)).
pub fn q1_prediction(q: u64, g: usize, r: usize, cutoff: usize) -> Result<Q1Prediction> {
    let genfunc = stable_trace_genfunc(q, cutoff.max(2));
    let mut value = Q::zero();
    let mut decay: f64 = 0.0;
    let qf = q as f64;
    for w in 0..=cutoff {
        for conj in at_most_r_parts(w, r) {
            let lam = Partition::from_unsorted(conj).conjugate();
            let t = stable_trace_t(&lam, q, &genfunc);
            if w >= 2 {
                decay = decay.max(rational::to_f64(&t).abs() * qf.powf(w as f64 / 5.0));
            }
            if t.is_zero() {
                continue;
            }
            let sw = lambda_dagger(&lam, g, r)?;
            value += t * q_big(signed_dim(&sw, r));
        }
    }
    // Σ_{w > cutoff} C q^{−w/5} Σ_{|λ|=w} |dim λ†|, summed until the terms are negligible
    let mut tail = 0.0;
    let mut w = cutoff + 1;
    let ratio = qf.powf(-0.2);
    while w <= cutoff + 2000 {
        let mut dims = 0.0;
        for conj in at_most_r_parts(w, r) {
            let weight: Vec<i64> = (0..r).map(|i| g as i64 - conj[r - 1 - i] as i64).collect();
            dims += rational::to_f64(&weyl_poly_sp(&weight)).abs();
        }
        let term = decay * ratio.powi(w as i32) * dims;
        tail += term;
        if w > cutoff + 20 && term < 1e-12 * tail.max(1e-300) {
            break;
        }
        w += 1;
    }
    Ok(Q1Prediction { value, cutoff, decay_constant: decay, tail_bound: tail })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub q: u32,
    pub g: usize,
    pub r: usize,
    pub moment: QAdjSqrt,
    pub identity_rhs: QAdjSqrt,
    #[serde(with = "rational::serde_q")]
    pub prediction: Q,
    pub prediction_tail: f64,
    #[serde(rename = "thmC_bound")]
    pub thm_c_bound: ScaledPower,
}

impl MomentReport {
    pub fn identity_holds(&self) -> bool {
        self.moment == self.identity_rhs && self.moment.is_rational()
    }

    /// |moment − prediction| within the Theorem C bound, tail included.
    pub fn within_bound(&self) -> bool {
        let diff = (self.moment.to_f64() - rational::to_f64(&self.prediction)).abs();
        diff <= self.thm_c_bound.to_f64() + self.prediction_tail
    }
}

/// q^{−(2g+1)} Σ_d L(1/2, χ_d)^r against Σ_{λ ⊆ (r^g)} tr_λ(g) · dim V_{λ†}.
pub fn moment_sum(ctx: &FqContext, g: usize, r: usize, cutoff: usize) -> Result<MomentReport> {
    let n = 2 * g + 1;
    let q = ctx.q();
    let qs = q as u64;
    let zero = || Ok(QAdjSqrt::new(Q::zero(), Q::zero(), qs));
    let total = ffcurves::fold_squarefree(
        ctx,
        n,
        zero,
        |acc: &mut Result<QAdjSqrt>, d| {
            if let Ok(s) = acc {
                match ffcurves::lfunction_charsum(ctx, d) {
                    Ok(l) => *s += &ffcurves::central_value_from(q, &l, r as u32),
                    Err(e) => *acc = Err(e),
                }
            }
        },
        |a, b| Ok(a? + b?),
    )??;
    let mut moment = total.scale(&rational::pow_i(&q_int(q as i64), -(n as i64)));
    moment.q = qs;
    let m = PowerSumMoments::collect(ctx, n, g * r)?;
    let mut rhs = QAdjSqrt::new(Q::zero(), Q::zero(), qs);
    for lam in Partition::in_box(g, r as u32) {
        let tr = m.symplectic_average(&lam)?;
        let dim = signed_dim(&lambda_dagger(&lam, g, r)?, r);
        rhs += &tr.scale(&q_big(dim));
    }
    rhs.q = qs;
    let pred = q1_prediction(qs, g, r, cutoff)?;
    Ok(MomentReport {
        q,
        g,
        r,
        moment,
        identity_rhs: rhs,
        prediction: pred.value,
        prediction_tail: pred.tail_bound,
        thm_c_bound: error_bound(qs, BoundKind::ThmC { g, r }),
    })
}

/// max |T_λ| over |λ| = w for w = 0..=max_weight.
pub fn t_maxima(q: u64, max_weight: usize) -> Vec<Q> {
    let genfunc = stable_trace_genfunc(q, max_weight.max(2));
    (0..=max_weight)
        .map(|w| partitions_of(w).iter().map(|l| stable_trace_t(l, q, &genfunc).abs()).max().unwrap_or_else(Q::zero))
        .collect()
}

/// The coefficient of the monomial t^μ in the stable generating function.
pub fn genfunc_monomial(genfunc: &SymFunc, composition: &[u32]) -> Q {
    let mu = Partition::from_unsorted(composition.iter().copied().filter(|&x| x > 0).collect());
    genfunc.convert_basis(Basis::Monomial).coeff(&mu)
}
