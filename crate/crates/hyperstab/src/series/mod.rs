//! Stable homology generating series, their Betti tables, vanishing checks and
//! rational-function fits.

mod fit;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use fit::{cyclotomic, fit_rational, Fit, RationalFunction};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::{q_frac, q_int, Q};
use crate::symfunc::{mobius, Basis, GradedElement, SymFunc, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    BraidSchur,
    BraidSymplectic,
    HyperellipticClosed,
    McgOpen,
    McgClosed,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::BraidSchur, Family::BraidSymplectic, Family::HyperellipticClosed, Family::McgOpen, Family::McgClosed];

    pub fn name(self) -> &'static str {
        match self {
            Family::BraidSchur => "braid-schur",
            Family::BraidSymplectic => "braid-symplectic",
            Family::HyperellipticClosed => "hyperelliptic-closed",
            Family::McgOpen => "mcg-open",
            Family::McgClosed => "mcg-closed",
        }
    }

    /// The Schur slot holding the coefficient system indexed by λ.
    pub fn slot(self, lambda: &Partition) -> Partition {
        match self {
            Family::McgOpen => lambda.clone(),
            _ => lambda.conjugate(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}` (expected one of braid-schur, braid-symplectic, hyperelliptic-closed, mcg-open, mcg-closed)")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRequest {
    pub family: Family,
    pub max_arity: usize,
    pub z_max: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientBasis {
    Schur,
    Symplectic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McgVariant {
    Open,
    Closed,
}

fn check_window(max_arity: usize, z_max: i64) -> Result<()> {
    if max_arity < 2 {
        return Err(Error::WindowTooSmall(format!("max_arity = {max_arity} < 2")));
    }
    if z_max < 0 {
        return Err(Error::WindowTooSmall(format!("z_max = {z_max} < 0")));
    }
    Ok(())
}

/// Σ_{j≥1, 2j ≤ A} z^j h_{2j} in power sums.
fn even_h_tail(w: Window) -> GradedElement {
    let mut acc = GradedElement::zero(Basis::PowerSum, w);
    let mut j = 1;
    while 2 * j <= w.max_arity && j as i64 <= w.z_max {
        let h = SymFunc::h(2 * j as u32, w.max_arity).convert_basis(Basis::PowerSum);
        acc = acc.add(&GradedElement::from_symfunc_at(&h, j as i64, w));
        j += 1;
    }
    acc
}

/// z⁻¹ Log(z + Σ_{j≥0} z^j h_{2j}) − 1 on the output window.
fn braid_inner(max_arity: usize, z_max: i64) -> Result<GradedElement> {
    let wide = Window::new(0, z_max + 1, max_arity);
    let arg = GradedElement::one(wide).add(&GradedElement::z_power(1, wide)).add(&even_h_tail(wide));
    let log = arg.pleth_log()?;
    let shifted = log.shift_z(-1).assert_z_min(0)?;
    let w = Window::new(0, z_max, max_arity);
    Ok(shifted.sub(&GradedElement::one(w)).restrict(w))
}

/// Exp(z⁻¹Log(z + Σ_{j≥0} h_{2j}z^j) − 1), with −h₂ added inside Exp for the
/// symplectic coefficient basis. Returned in the Schur basis; the coefficient of
/// z^k s_μ is (−1)^k dim H_k with coefficients indexed by μ'.
pub fn braid_series(basis: CoefficientBasis, max_arity: usize, z_max: i64) -> Result<GradedElement> {
    check_window(max_arity, z_max)?;
    let mut inner = braid_inner(max_arity, z_max)?;
    if basis == CoefficientBasis::Symplectic {
        let w = inner.window();
        inner = inner.sub(&GradedElement::from_symfunc_at(&SymFunc::h(2, max_arity), 0, w));
    }
    Ok(inner.pleth_exp()?.convert_basis(Basis::Schur))
}

/// (z + Σ_{j≥0} z^j h_{2j})/(1 − z²) · braid_series(Symplectic).
pub fn closed_series(max_arity: usize, z_max: i64) -> Result<GradedElement> {
    check_window(max_arity, z_max)?;
    let w = Window::new(0, z_max, max_arity);
    let numer = GradedElement::one(w).add(&GradedElement::z_power(1, w)).add(&even_h_tail(w));
    let geom: Vec<(i64, Q)> = (0..=z_max / 2).map(|i| (2 * i, Q::one())).collect();
    let prefactor = numer.mul_z_laurent(&geom).restrict(w);
    let sym = braid_series(CoefficientBasis::Symplectic, max_arity, z_max)?;
    Ok(prefactor.mul(&sym).restrict(w).convert_basis(Basis::Schur))
}

/// Exp(−e₂ + z⁻²(Exp(z² − zh₁) − 1 − z² + zh₁)), plus zh₁ inside the outer Exp
/// for the closed variant.
pub fn mcg_series(variant: McgVariant, max_arity: usize, z_max: i64) -> Result<GradedElement> {
    check_window(max_arity, z_max)?;
    let wide = Window::new(0, z_max + 2, max_arity);
    let z2 = GradedElement::z_power(2, wide);
    let zh1 = GradedElement::from_symfunc_at(&SymFunc::p(1, max_arity), 1, wide);
    let inner = z2.sub(&zh1).pleth_exp()?;
    let bracket = inner.sub(&GradedElement::one(wide)).sub(&z2).add(&zh1);
    let w = Window::new(0, z_max, max_arity);
    let mut arg = bracket.shift_z(-2).assert_z_min(0)?.restrict(w);
    arg = arg.sub(&GradedElement::from_symfunc_at(&SymFunc::e(2, max_arity), 0, w));
    if variant == McgVariant::Closed {
        arg = arg.add(&GradedElement::from_symfunc_at(&SymFunc::p(1, max_arity), 1, w));
    }
    Ok(arg.pleth_exp()?.convert_basis(Basis::Schur))
}

type Laurent = BTreeMap<i64, Q>;

fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert_with(Q::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// binom(e, m) for m = 0..=max as Laurent polynomials.
fn laurent_binomials(e: &Laurent, max: usize) -> Vec<Laurent> {
    let mut out = vec![Laurent::from([(0, Q::one())])];
    for m in 1..=max {
        let mut shifted = e.clone();
        *shifted.entry(0).or_insert_with(Q::zero) -= q_int(m as i64 - 1);
        let next = laurent_mul(&out[m - 1], &shifted);
        out.push(next.into_iter().map(|(k, c)| (k, c / q_int(m as i64))).collect());
    }
    out
}

/// i_n(z⁻¹) = (1/n) Σ_{d|n} μ(n/d) z^{−d}.
fn necklace_laurent(n: u64) -> Laurent {
    (1..=n)
        .filter(|d| n % d == 0)
        .filter_map(|d| {
            let mu = mobius(n / d);
            (mu != 0).then(|| (-(d as i64), q_frac(mu, n as i64)))
        })
        .collect()
}

/// (1 − z)·Π_n (1 + (1/(1+zⁿ)) Σ_k z^{nk} ψ_n(h_{2k}))^{i_n(z⁻¹)}, each factor
/// expanded as a binomial series in a Laurent-polynomial exponent.
pub fn product_form_series(max_arity: usize, z_max: i64) -> Result<GradedElement> {
    check_window(max_arity, z_max)?;
    let w = Window::new(0, z_max, max_arity);
    let mut acc = GradedElement::one(w).sub(&GradedElement::z_power(1, w));
    let factors: Vec<GradedElement> = crate::exec::map_range(max_arity / 2, |i| product_factor(i as u64 + 1, w));
    for f in factors {
        acc = acc.mul(&f).restrict(w);
    }
    Ok(acc.convert_basis(Basis::Schur))
}

fn product_factor(n: u64, w: Window) -> GradedElement {
    let a = w.max_arity;
    let m_max = a / (2 * n as usize);
    let zw = w.z_max + n as i64 * m_max as i64;
    let ww = Window::new(0, zw, a);
    let mut sum = GradedElement::zero(Basis::PowerSum, ww);
    let mut k = 1u64;
    while 2 * n * k <= a as u64 && (n * k) as i64 <= zw {
        let psi = SymFunc::h(2 * k as u32, a).adams(n as u32).convert_basis(Basis::PowerSum);
        sum = sum.add(&GradedElement::from_symfunc_at(&psi, (n * k) as i64, ww));
        k += 1;
    }
    let geom: Vec<(i64, Q)> =
        (0..=zw / n as i64).map(|i| (i * n as i64, if i % 2 == 0 { Q::one() } else { -Q::one() })).collect();
    let u = sum.mul_z_laurent(&geom).restrict(ww);
    let binoms = laurent_binomials(&necklace_laurent(n), m_max);
    let mut factor = GradedElement::one(w);
    let mut power = GradedElement::one(ww);
    for (m, b) in binoms.iter().enumerate().skip(1) {
        power = power.mul(&u).restrict(ww);
        let poly: Vec<(i64, Q)> = b.iter().map(|(e, c)| (*e, c.clone())).collect();
        let term = power.mul_z_laurent(&poly);
        debug_assert!(term.window().z_max >= w.z_max, "factor {n}, m = {m}: precision lost");
        factor = factor.add(&term.assert_z_min(0).expect("binomial term has no negative z").restrict(w));
    }
    factor
}

/// Dispatches on the family.
pub fn series(req: &SeriesRequest) -> Result<GradedElement> {
    match req.family {
        Family::BraidSchur => braid_series(CoefficientBasis::Schur, req.max_arity, req.z_max),
        Family::BraidSymplectic => braid_series(CoefficientBasis::Symplectic, req.max_arity, req.z_max),
        Family::HyperellipticClosed => closed_series(req.max_arity, req.z_max),
        Family::McgOpen => mcg_series(McgVariant::Open, req.max_arity, req.z_max),
        Family::McgClosed => mcg_series(McgVariant::Closed, req.max_arity, req.z_max),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub family: Family,
    pub max_arity: usize,
    pub k_max: i64,
    /// dims[λ][k] = dim H_k with coefficients indexed by λ.
    pub entries: BTreeMap<Partition, Vec<u64>>,
}

impl BettiTable {
    pub fn get(&self, lambda: &Partition, k: i64) -> Option<u64> {
        self.entries.get(lambda).and_then(|v| v.get(k as usize)).copied()
    }
}

/// Reads off dim H_k from a Schur-basis series, resolving sign and transpose.
pub fn betti_from_series(family: Family, series: &GradedElement, lambda: &Partition, k_max: i64) -> Result<Vec<u64>> {
    let slot = family.slot(lambda);
    let s = series.convert_basis(Basis::Schur);
    (0..=k_max)
        .map(|k| {
            let c = s.coeff(k, &slot);
            let d = if k % 2 == 0 { c } else { -c };
            if d.is_negative() || !d.denom().is_one() {
                return Err(Error::NegativeCoefficient { lambda: lambda.clone(), k, value: d.to_string() });
            }
            Ok(num_traits::ToPrimitive::to_u64(&d.to_integer()).ok_or(Error::Overflow("Betti number"))?)
        })
        .collect()
}

pub fn betti_table(family: Family, partitions: &[Partition], k_max: i64) -> Result<BettiTable> {
    let max_arity = partitions.iter().map(|p| p.weight()).max().unwrap_or(0).max(2);
    let s = series(&SeriesRequest { family, max_arity, z_max: k_max })?;
    let mut entries = BTreeMap::new();
    for lam in partitions {
        entries.insert(lam.clone(), betti_from_series(family, &s, lam, k_max)?);
    }
    Ok(BettiTable { family, max_arity, k_max, entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub z: i64,
    pub slot: Partition,
    pub rule: String,
}

/// Checks k ≥ |μ|/4, k ≥ μ₁/2, ℓ(μ) ≤ |μ|/2 and |μ| even for every nonzero z^k s_μ.
pub fn vanishing_report(series: &GradedElement) -> Vec<Violation> {
    let s = series.convert_basis(Basis::Schur);
    let mut out = Vec::new();
    for (k, mu, _) in s.terms() {
        let n = mu.weight() as i64;
        let mut push = |rule: &str| out.push(Violation { z: k, slot: mu.clone(), rule: rule.to_string() });
        if 4 * k < n {
            push("k >= |mu|/4");
        }
        if 2 * k < mu.first() as i64 {
            push("k >= mu_1/2");
        }
        if 2 * mu.length() as i64 > n {
            push("l(mu) <= |mu|/2");
        }
        if n % 2 != 0 {
            push("|mu| even");
        }
    }
    out
}

/// Signed coefficient series Σ_k c_k z^k of one coefficient system.
pub fn coefficient_series(family: Family, series: &GradedElement, lambda: &Partition) -> Vec<Q> {
    let slot = family.slot(lambda);
    let s = series.convert_basis(Basis::Schur);
    (0..=s.window().z_max).map(|k| s.coeff(k, &slot)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareEntry {
    pub k: i64,
    pub dim: u64,
}

/// One row of CLI output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub family: Family,
    pub lambda: Partition,
    pub poincare: Vec<PoincareEntry>,
    pub rational_fit: String,
}

/// Builds report rows for the requested coefficient systems.
pub fn series_reports(family: Family, lambdas: &[Partition], z_max: i64, max_arity: usize, guard: usize) -> Result<Vec<SeriesReport>> {
    let arity = lambdas.iter().map(|l| l.weight()).max().unwrap_or(0).max(max_arity).max(2);
    let s = series(&SeriesRequest { family, max_arity: arity, z_max })?;
    let mut cache: HashMap<Partition, SeriesReport> = HashMap::new();
    let mut out = Vec::new();
    for lam in lambdas {
        if let Some(r) = cache.get(lam) {
            out.push(r.clone());
            continue;
        }
        let dims = betti_from_series(family, &s, lam, z_max)?;
        let fit = match fit_rational(&coefficient_series(family, &s, lam), guard) {
            Ok(Fit::Found(r)) => r.to_string(),
            Ok(Fit::Inconclusive) => "inconclusive".to_string(),
            Err(_) => "insufficient data".to_string(),
        };
        let rep = SeriesReport {
            family,
            lambda: lam.clone(),
            poincare: dims.iter().enumerate().map(|(k, d)| PoincareEntry { k: k as i64, dim: *d }).collect(),
            rational_fit: fit,
        };
        cache.insert(lam.clone(), rep.clone());
        out.push(rep);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn braid_schur_small_coefficients() {
        let s = braid_series(CoefficientBasis::Schur, 4, 6).unwrap();
        let arity0: Vec<Q> = (0..=6).map(|k| s.coeff(k, &Partition::empty())).collect();
        let mut expect = vec![Q::zero(); 7];
        expect[0] = Q::one();
        expect[1] = -Q::one();
        assert_eq!(arity0, expect);
        // (1 − z)/(1 + z) in the s₂ slot
        let s2: Vec<Q> = (0..=6).map(|k| s.coeff(k, &p(&[2]))).collect();
        let want: Vec<Q> = (0..=6).map(|k| if k == 0 { q_int(1) } else if k % 2 == 1 { q_int(-2) } else { q_int(2) }).collect();
        assert_eq!(s2, want);
        assert!((0..=6).all(|k| s.coeff(k, &p(&[1, 1])).is_zero()));
    }

    #[test]
    fn window_errors() {
        assert!(braid_series(CoefficientBasis::Schur, 1, 3).is_err());
        assert!(closed_series(0, 3).is_err());
    }

    #[test]
    fn closed_arity_zero_is_one() {
        let s = closed_series(4, 6).unwrap();
        let a0: Vec<Q> = (0..=6).map(|k| s.coeff(k, &Partition::empty())).collect();
        assert_eq!(a0[0], Q::one());
        assert!(a0[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn mcg_arity_zero() {
        let open = mcg_series(McgVariant::Open, 2, 8).unwrap();
        let closed = mcg_series(McgVariant::Closed, 2, 8).unwrap();
        // Π_k 1/(1 − z^{2k}): partitions of k/2 into parts
        let counts = [1, 0, 1, 0, 2, 0, 3, 0, 5];
        for (k, c) in counts.iter().enumerate() {
            assert_eq!(open.coeff(k as i64, &Partition::empty()), q_int(*c));
            assert_eq!(closed.coeff(k as i64, &Partition::empty()), q_int(*c));
        }
        // H_1 with coefficients in H is one-dimensional with a boundary and vanishes without
        assert_eq!(open.coeff(1, &p(&[1])), q_int(-1));
        assert!(closed.coeff(1, &p(&[1])).is_zero());
    }

    #[test]
    fn betti_examples() {
        let t = betti_table(Family::BraidSchur, &[p(&[1, 1]), p(&[2])], 4).unwrap();
        assert_eq!(t.get(&p(&[1, 1]), 0), Some(1));
        assert_eq!(t.get(&p(&[1, 1]), 3), Some(2));
        assert!(t.entries[&p(&[2])].iter().all(|&d| d == 0));
    }

    #[test]
    fn vanishing_negative_control() {
        let w = Window::new(0, 2, 4);
        let bad = GradedElement::from_symfunc(&SymFunc::s(p(&[4]), 4)).restrict(w);
        let v = vanishing_report(&bad);
        assert!(!v.is_empty());
        assert!(v.iter().all(|x| x.z == 0 && x.slot == p(&[4])));
    }

    #[test]
    fn n1_factor_at_arity_two() {
        // (1 + z h₂/(1+z))^{z⁻¹} = 1 + z⁻¹ · z h₂/(1+z) = 1 + h₂/(1+z) at arity ≤ 2
        let w = Window::new(0, 5, 2);
        let f = product_factor(1, w).convert_basis(Basis::Schur);
        for k in 0..=5 {
            let want = if k % 2 == 0 { Q::one() } else { -Q::one() };
            assert_eq!(f.coeff(k, &p(&[2])), want);
            assert!(f.coeff(k, &p(&[1, 1])).is_zero());
        }
    }
}
