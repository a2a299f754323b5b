//! Hyperelliptic curves y² = d(x) over small finite fields: point counts,
//! Frobenius characteristic polynomials, and quadratic L-functions computed
//! both from character sums and from the zeta function.

pub mod cache;
pub mod field;
pub mod poly;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use field::Field;
pub use poly::{inject_reciprocity_fault, is_squarefree, jacobi_symbol, FqPoly, JacobiScratch};

use crate::error::{Error, Result};
use crate::qsqrt::QAdjSqrt;
use crate::rational::{q_int, Q};

/// F_{q^k} together with the embedding of F_q.
#[derive(Debug)]
pub struct Extension {
    pub field: Field,
    pub embed: Vec<u32>,
}

#[derive(Debug)]
pub struct FqContext {
    p: u32,
    e: u32,
    base: Arc<Field>,
    extensions: Mutex<HashMap<u32, Arc<Extension>>>,
}

impl FqContext {
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = field::odd_prime_power(q).ok_or_else(|| Error::UnsupportedField(format!("q = {q} is not an odd prime power")))?;
        if q > 1 << 20 {
            return Err(Error::UnsupportedField(format!("q = {q} is beyond the supported range")));
        }
        let base = Arc::new(Field::new(p as u32, e)?);
        Ok(FqContext { p: p as u32, e, base, extensions: Mutex::new(HashMap::new()) })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.base.size()
    }

    pub fn field(&self) -> &Field {
        &self.base
    }

    pub fn modulus(&self) -> &[u32] {
        self.base.modulus()
    }

    /// F_{q^k}, built as a degree e·k extension of F_p. F_q embeds by sending
    /// its generator to the smallest root of its modulus.
    pub fn extension(&self, k: u32) -> Result<Arc<Extension>> {
        if let Some(x) = self.extensions.lock().unwrap().get(&k) {
            return Ok(x.clone());
        }
        let big = Field::new(self.p, self.e * k)?;
        let embed = if self.e == 1 {
            (0..self.p).collect()
        } else {
            let m = self.base.modulus();
            let root = (0..big.size())
                .find(|&t| big.eval_prime_poly(m, t) == 0)
                .ok_or_else(|| Error::Consistency("no root of the base modulus in the extension".into()))?;
            let mut powers = vec![1u32];
            for _ in 1..self.e {
                powers.push(big.mul(*powers.last().unwrap(), root));
            }
            (0..self.q())
                .map(|a| {
                    self.base
                        .digits(a)
                        .iter()
                        .zip(&powers)
                        .fold(0, |acc, (&c, &pw)| big.add(acc, big.mul(big.from_prime(c), pw)))
                })
                .collect()
        };
        let ext = Arc::new(Extension { field: big, embed });
        self.extensions.lock().unwrap().insert(k, ext.clone());
        Ok(ext)
    }
}

/// Number of monic polynomials of degree n.
pub fn monic_count(q: u32, n: usize) -> Result<u64> {
    (q as u64).checked_pow(n as u32).ok_or(Error::Overflow("q^n"))
}

/// The monic squarefree polynomials of degree n in lexicographic index order.
pub fn enumerate_squarefree(ctx: &FqContext, n: usize) -> Result<impl Iterator<Item = FqPoly> + '_> {
    let total = monic_count(ctx.q(), n)?;
    Ok((0..total).map(move |i| FqPoly::monic_from_index(ctx.q(), n, i)).filter(|d| is_squarefree(d, ctx.field())))
}

/// Folds over all monic squarefree d of degree n, split into blocks by the
/// coefficients just below the leading one. Merging must be associative and
/// commutative for the result to be schedule-independent.
pub fn fold_squarefree<A, Id, F, R>(ctx: &FqContext, n: usize, identity: Id, fold: F, merge: R) -> Result<A>
where
    A: Send,
    Id: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &FqPoly) + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    let q = ctx.q() as u64;
    let total = monic_count(ctx.q(), n)?;
    let top = n.min(2);
    let blocks = q.pow(top as u32);
    let per = total / blocks;
    Ok(crate::exec::fold_range(
        blocks as usize,
        identity,
        |acc, b| {
            // block b fixes the top `top` lower coefficients
            for low in 0..per {
                let d = FqPoly::monic_from_index(ctx.q(), n, b as u64 * per + low);
                if is_squarefree(&d, ctx.field()) {
                    fold(acc, &d);
                }
            }
        },
        merge,
    ))
}

fn check_curve(ctx: &FqContext, d: &FqPoly) -> Result<()> {
    if d.degree() < 1 {
        return Err(Error::InvalidInput(format!("curve polynomial {d} must have positive degree")));
    }
    if !d.is_monic() {
        return Err(Error::InvalidInput(format!("curve polynomial {d} must be monic")));
    }
    if !is_squarefree(d, ctx.field()) {
        return Err(Error::NotSquarefree);
    }
    Ok(())
}

/// #C(F_{q^k}) for the smooth projective model of y² = d(x), k = 1..=k_max.
pub fn curve_point_counts(ctx: &FqContext, d: &FqPoly, k_max: u32) -> Result<Vec<i64>> {
    check_curve(ctx, d)?;
    let infinity = if d.degree() % 2 == 1 { 1 } else { 2 };
    (1..=k_max)
        .map(|k| {
            let ext = ctx.extension(k)?;
            let f = &ext.field;
            let coeffs = d.map_coeffs(&ext.embed);
            let mut n = 0i64;
            for x in 0..f.size() {
                let v = coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c));
                n += 1 + f.chi(v) as i64;
            }
            Ok(n + infinity)
        })
        .collect()
}

/// Frobenius data for y² = d(x).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveData {
    pub q: u32,
    pub d: FqPoly,
    pub genus: usize,
    /// N_1..N_g.
    pub counts: Vec<i64>,
    /// c_0..c_{2g} of P(t) = ∏(1 − ωt).
    pub charpoly: Vec<i64>,
}

impl CurveData {
    pub fn degree(&self) -> usize {
        self.d.degree() as usize
    }

    /// p_k(Θ_d) for k = 1..=k_max, where Θ_d is the Frobenius eigenvalues
    /// together with an extra 1 when deg d is even.
    pub fn theta_powersums(&self, k_max: usize) -> Vec<i128> {
        let extra = if self.degree() % 2 == 0 { 1 } else { 0 };
        frobenius_powersums(&self.charpoly, k_max).into_iter().map(|s| s + extra).collect()
    }

    /// Coefficients of 𝓛(t) = (1 − t)^δ P(t).
    pub fn lfunction(&self) -> Vec<i64> {
        if self.degree() % 2 == 1 {
            return self.charpoly.clone();
        }
        let mut out = self.charpoly.clone();
        out.push(0);
        for i in (1..out.len()).rev() {
            out[i] -= out[i - 1];
        }
        out
    }
}

/// Newton: Σ ω^k from c_0..c_{2g}.
pub fn frobenius_powersums(c: &[i64], k_max: usize) -> Vec<i128> {
    let mut s: Vec<i128> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let ck = c.get(k).copied().unwrap_or(0) as i128;
        let mut v = -(k as i128) * ck;
        for j in 1..k {
            v -= c.get(j).copied().unwrap_or(0) as i128 * s[k - j - 1];
        }
        s.push(v);
    }
    s
}

/// First `count` coefficients of ∏(1 − ωt) from the power sums a_k = Σω^k.
fn newton_coefficients(a: &[i64], count: usize) -> Result<Vec<i64>> {
    let mut c = vec![1i64];
    for i in 1..count {
        let mut acc: i128 = 0;
        for j in 1..=i {
            acc += a[j - 1] as i128 * c[i - j] as i128;
        }
        if acc % i as i128 != 0 {
            return Err(Error::Consistency(format!("Newton step {i} is not integral")));
        }
        c.push(i64::try_from(-acc / i as i128).map_err(|_| Error::Overflow("charpoly coefficient"))?);
    }
    Ok(c)
}

/// Point counts up to the genus, then Newton and the functional equation.
pub fn frobenius_data(ctx: &FqContext, d: &FqPoly) -> Result<CurveData> {
    check_curve(ctx, d)?;
    let n = d.degree() as usize;
    let g = (n - 1) / 2;
    let q = ctx.q() as i64;
    let counts = curve_point_counts(ctx, d, g as u32)?;
    let a: Vec<i64> = counts.iter().enumerate().map(|(i, &nk)| q.pow(i as u32 + 1) + 1 - nk).collect();
    let mut c = newton_coefficients(&a, g + 1)?;
    for i in (0..g).rev() {
        let v = (q as i128).pow((g - i) as u32) * c[i] as i128;
        c.push(i64::try_from(v).map_err(|_| Error::Overflow("charpoly coefficient"))?);
    }
    Ok(CurveData { q: ctx.q(), d: d.clone(), genus: g, counts, charpoly: c })
}

/// Recomputes P(t) from point counts over F_{q^k} for all k ≤ 2g and compares
/// with the symmetric completion stored in `cd`.
pub fn check_functional_equation(ctx: &FqContext, cd: &CurveData) -> Result<bool> {
    let g = cd.genus;
    let q = ctx.q() as i64;
    let counts = curve_point_counts(ctx, &cd.d, 2 * g as u32)?;
    let a: Vec<i64> = counts.iter().enumerate().map(|(i, &nk)| q.pow(i as u32 + 1) + 1 - nk).collect();
    Ok(newton_coefficients(&a, 2 * g + 1)? == cd.charpoly)
}

/// Coefficients of 𝓛(t, χ_d) = Σ_m χ_d(m) t^{deg m} over monic m, with
/// χ_d(m) the residue symbol (d/m).
pub fn lfunction_charsum(ctx: &FqContext, d: &FqPoly) -> Result<Vec<i64>> {
    check_curve(ctx, d)?;
    let n = d.degree() as usize;
    let f = ctx.field();
    let mut scratch = JacobiScratch::default();
    let mut out = vec![1i64];
    for i in 1..n {
        let mut s = 0i64;
        for idx in 0..monic_count(ctx.q(), i)? {
            let m = FqPoly::monic_from_index(ctx.q(), i, idx);
            s += scratch.symbol(d.coeffs(), m.coeffs(), f)? as i64;
        }
        out.push(s);
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    Ok(out)
}

/// 𝓛(q^{−1/2})^r in Q(√q).
pub fn central_value_from(q: u32, lcoeffs: &[i64], r: u32) -> QAdjSqrt {
    let mut v = QAdjSqrt::rational(Q::zero());
    for (i, &c) in lcoeffs.iter().enumerate() {
        if c != 0 {
            v = &v + &QAdjSqrt::q_half_power(q as u64, -(i as i64)).scale(&q_int(c));
        }
    }
    let mut out = v.pow(r);
    out.q = q as u64;
    out
}

pub fn central_value(ctx: &FqContext, d: &FqPoly, r: u32) -> Result<QAdjSqrt> {
    Ok(central_value_from(ctx.q(), &lfunction_charsum(ctx, d)?, r))
}

/// c^{−n} d(cx). For odd n and nonsquare c this is the quadratic twist of the
/// curve; for even n it is isomorphic to the original.
pub fn twist(ctx: &FqContext, d: &FqPoly, c: u32) -> FqPoly {
    let f = ctx.field();
    let n = d.degree() as u64;
    let ci = f.inv(c);
    FqPoly::new(
        d.coeffs()
            .iter()
            .enumerate()
            .map(|(i, &a)| f.mul(a, f.mul(f.pow(c, i as u64), f.pow(ci, n))))
            .collect(),
    )
}

// ---- Riemann hypothesis check ----

fn qpoly_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let c = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn qpoly_div(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut quo = vec![Q::zero(); a.len() - db];
    for top in (db..a.len()).rev() {
        let c = &r[top] / b.last().unwrap();
        for (j, bj) in b.iter().enumerate() {
            r[top - db + j] -= &c * bj;
        }
        quo[top - db] = c;
    }
    quo
}

fn squarefree_part(h: &[Q]) -> Vec<Q> {
    let dh: Vec<Q> = h.iter().enumerate().skip(1).map(|(i, c)| c * q_int(i as i64)).collect();
    if dh.is_empty() {
        return h.to_vec();
    }
    let (mut a, mut b) = (h.to_vec(), dh);
    while !b.is_empty() {
        let r = qpoly_rem(&a, &b);
        a = b;
        b = r;
    }
    if a.len() <= 1 {
        return h.to_vec();
    }
    qpoly_div(h, &a)
}

/// Roots of a polynomial with complex coefficients (Durand–Kerner).
fn poly_roots(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::zero(), |acc, &a| acc * z + a);
    let bound = 1.0 + monic[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32) * bound).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut den = Complex64::one();
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * bound {
            break;
        }
    }
    // polish with Newton
    let deriv: Vec<Complex64> = monic.iter().enumerate().skip(1).map(|(i, a)| a * i as f64).collect();
    let deval = |z: Complex64| deriv.iter().rev().fold(Complex64::zero(), |acc, &a| acc * z + a);
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = deval(*zi);
            if d.norm() > 0.0 {
                *zi -= eval(*zi) / d;
            }
        }
    }
    z
}

/// max |ω|/√q − 1 over the Frobenius eigenvalues, via the real Weil polynomial
/// h(T) = ∏(T − (ω + q/ω)).
pub fn rh_deviation(cd: &CurveData) -> f64 {
    let g = cd.genus;
    if g == 0 {
        return 0.0;
    }
    let q = q_int(cd.q as i64);
    // D_0 = 2, D_1 = T, D_{k+1} = T·D_k − q·D_{k−1}
    let mut dk: Vec<Vec<Q>> = vec![vec![q_int(2)], vec![Q::zero(), Q::one()]];
    for k in 1..g {
        let mut next = vec![Q::zero(); k + 2];
        for (i, c) in dk[k].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in dk[k - 1].iter().enumerate() {
            next[i] -= c * &q;
        }
        dk.push(next);
    }
    let mut h = vec![Q::zero(); g + 1];
    h[0] = q_int(cd.charpoly[g]);
    for k in 1..=g {
        let c = q_int(cd.charpoly[g - k]);
        for (i, x) in dk[k].iter().enumerate() {
            h[i] += x * &c;
        }
    }
    let sf = squarefree_part(&h);
    let coeffs: Vec<Complex64> = sf.iter().map(|c| Complex64::new(crate::rational::to_f64(c), 0.0)).collect();
    let qf = cd.q as f64;
    let sq = qf.sqrt();
    let mut worst: f64 = 0.0;
    for beta in poly_roots(&coeffs) {
        let mut disc = beta * beta - 4.0 * qf;
        if disc.re > 0.0 && disc.re < 1e-9 * qf && disc.im.abs() < 1e-9 * qf {
            disc = Complex64::zero();
        }
        let s = disc.sqrt();
        for w in [(beta + s) / 2.0, (beta - s) / 2.0] {
            worst = worst.max((w.norm() / sq - 1.0).abs());
        }
    }
    worst
}
