//! The ring Λ of symmetric functions over Q, truncated by arity, and its
//! graded extension Λ((z)). Everything is computed in the power-sum basis.

mod graded;
pub mod transition;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use graded::{GradedElement, Window};

use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::rational::{self, q_big, q_frac, q_int, Q};
use transition::transition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    PowerSum,
    Schur,
    Complete,
    Elementary,
    Monomial,
}

impl Basis {
    pub fn symbol(self) -> &'static str {
        match self {
            Basis::PowerSum => "p",
            Basis::Schur => "s",
            Basis::Complete => "h",
            Basis::Elementary => "e",
            Basis::Monomial => "m",
        }
    }
}

/// A finite Q-linear combination of basis elements of arity ≤ `max_arity`,
/// read as an element of Λ modulo everything of larger arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    max_arity: usize,
    terms: BTreeMap<Partition, Q>,
}

pub(crate) type Terms = BTreeMap<Partition, Q>;

pub(crate) fn add_term(t: &mut Terms, k: Partition, c: Q) {
    if c.is_zero() {
        return;
    }
    match t.entry(k) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Converts homogeneous-or-not terms between bases, degree by degree.
pub(crate) fn convert_terms(terms: &Terms, from: Basis, to: Basis) -> Terms {
    if from == to {
        return terms.clone();
    }
    let mut by_deg: BTreeMap<usize, Vec<(&Partition, &Q)>> = BTreeMap::new();
    for (k, c) in terms {
        by_deg.entry(k.weight()).or_default().push((k, c));
    }
    let mut out = Terms::new();
    for (n, items) in by_deg {
        let parts = partitions_of(n);
        let tf = transition(from, n);
        let tt = transition(to, n);
        let mut power = vec![Q::zero(); parts.len()];
        for (k, c) in items {
            let i = crate::partition::partition_index(k);
            for (j, m) in &tf.to_power[i] {
                power[*j] += c * m;
            }
        }
        let mut target = vec![Q::zero(); parts.len()];
        for (j, c) in power.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (l, m) in &tt.from_power[j] {
                target[*l] += c * m;
            }
        }
        for (l, c) in target.into_iter().enumerate() {
            if !c.is_zero() {
                out.insert(parts[l].clone(), c);
            }
        }
    }
    out
}

/// Power-sum product, dropping everything above `cap`.
pub(crate) fn mul_power(a: &Terms, b: &Terms, cap: usize) -> Terms {
    let mut acc: HashMap<Partition, Q> = HashMap::new();
    for (ka, ca) in a {
        let wa = ka.weight();
        if wa > cap {
            continue;
        }
        for (kb, cb) in b {
            if wa + kb.weight() > cap {
                continue;
            }
            *acc.entry(ka.union(kb)).or_insert_with(Q::zero) += ca * cb;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl SymFunc {
    pub fn zero(basis: Basis, max_arity: usize) -> Self {
        SymFunc { basis, max_arity, terms: Terms::new() }
    }

    pub fn one(max_arity: usize) -> Self {
        Self::from_terms(Basis::PowerSum, max_arity, [(Partition::empty(), Q::one())])
    }

    pub fn constant(c: Q, max_arity: usize) -> Self {
        Self::from_terms(Basis::PowerSum, max_arity, [(Partition::empty(), c)])
    }

    /// Builds an element, merging duplicates and discarding zero coefficients
    /// and terms above `max_arity`.
    pub fn from_terms(basis: Basis, max_arity: usize, terms: impl IntoIterator<Item = (Partition, Q)>) -> Self {
        let mut t = Terms::new();
        for (k, c) in terms {
            if k.weight() <= max_arity {
                add_term(&mut t, k, c);
            }
        }
        SymFunc { basis, max_arity, terms: t }
    }

    pub fn basis_element(basis: Basis, lambda: Partition, max_arity: usize) -> Self {
        Self::from_terms(basis, max_arity, [(lambda, Q::one())])
    }

    pub fn p(n: u32, max_arity: usize) -> Self {
        Self::basis_element(Basis::PowerSum, Partition::single(n), max_arity)
    }

    pub fn h(n: u32, max_arity: usize) -> Self {
        Self::basis_element(Basis::Complete, Partition::single(n), max_arity)
    }

    pub fn e(n: u32, max_arity: usize) -> Self {
        Self::basis_element(Basis::Elementary, Partition::single(n), max_arity)
    }

    pub fn s(lambda: Partition, max_arity: usize) -> Self {
        Self::basis_element(Basis::Schur, lambda, max_arity)
    }

    /// E = Σ_{r ≥ 0} h_r truncated, in power sums.
    pub fn exp_series(max_arity: usize) -> Self {
        let terms = (0..=max_arity).flat_map(|n| {
            partitions_of(n).iter().map(|r| (r.clone(), Q::one() / q_big(r.z()))).collect::<Vec<_>>()
        });
        Self::from_terms(Basis::PowerSum, max_arity, terms)
    }

    /// L = Σ_k μ(k)/k · log(1 + p_k) truncated, in power sums.
    pub fn log_series(max_arity: usize) -> Self {
        let mut t = Terms::new();
        for k in 1..=max_arity {
            let mu = mobius(k as u64);
            if mu == 0 {
                continue;
            }
            for m in 1..=(max_arity / k) {
                let sign = if m % 2 == 1 { 1 } else { -1 };
                let c = q_frac(mu * sign, (k * m) as i64);
                add_term(&mut t, Partition::new(vec![k as u32; m]).unwrap(), c);
            }
        }
        SymFunc { basis: Basis::PowerSum, max_arity, terms: t }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Q> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> Q {
        self.terms.get(lambda).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Partition::empty())
    }

    /// Drops everything above `max_arity` (never raises the cap).
    pub fn truncate(&self, max_arity: usize) -> Self {
        let cap = max_arity.min(self.max_arity);
        SymFunc {
            basis: self.basis,
            max_arity: cap,
            terms: self.terms.iter().filter(|(k, _)| k.weight() <= cap).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// The same element in another basis.
    pub fn convert_basis(&self, target: Basis) -> Self {
        SymFunc { basis: target, max_arity: self.max_arity, terms: convert_terms(&self.terms, self.basis, target) }
    }

    pub(crate) fn power_terms(&self) -> Terms {
        convert_terms(&self.terms, self.basis, Basis::PowerSum)
    }

    /// Arity-`n` component.
    pub fn homogeneous(&self, n: usize) -> Self {
        SymFunc {
            basis: self.basis,
            max_arity: self.max_arity,
            terms: self.terms.iter().filter(|(k, _)| k.weight() == n).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// Equality as elements of Λ modulo arity > min of the two caps.
    pub fn same_element(&self, other: &Self) -> bool {
        let cap = self.max_arity.min(other.max_arity);
        self.truncate(cap).power_terms() == other.truncate(cap).power_terms()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.lin_comb(other, &Q::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.lin_comb(other, &-Q::one())
    }

    fn lin_comb(&self, other: &Self, c: &Q) -> Self {
        let cap = self.max_arity.min(other.max_arity);
        let o = if other.basis == self.basis { other.terms.clone() } else { convert_terms(&other.terms, other.basis, self.basis) };
        let mut t: Terms = self.terms.iter().filter(|(k, _)| k.weight() <= cap).map(|(k, v)| (k.clone(), v.clone())).collect();
        for (k, v) in o {
            if k.weight() <= cap {
                add_term(&mut t, k, v * c);
            }
        }
        SymFunc { basis: self.basis, max_arity: cap, terms: t }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return SymFunc::zero(self.basis, self.max_arity);
        }
        SymFunc { basis: self.basis, max_arity: self.max_arity, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Product, computed in power sums and returned in the basis of `self`.
    pub fn multiply(&self, other: &Self) -> Self {
        let cap = self.max_arity.min(other.max_arity);
        let t = mul_power(&self.power_terms(), &other.power_terms(), cap);
        SymFunc { basis: Basis::PowerSum, max_arity: cap, terms: t }.convert_basis(self.basis)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = SymFunc::one(self.max_arity);
        for _ in 0..e {
            acc = acc.multiply(self);
        }
        acc.convert_basis(self.basis)
    }

    /// ω: p_ρ ↦ (−1)^{|ρ|−ℓ(ρ)} p_ρ.
    pub fn omega(&self) -> Self {
        let t = self.power_terms().into_iter().map(|(k, c)| {
            let s = k.sign();
            (k, if s < 0 { -c } else { c })
        });
        SymFunc::from_terms(Basis::PowerSum, self.max_arity, t).convert_basis(self.basis)
    }

    /// Hall inner product: ⟨p_ρ, p_σ⟩ = z_ρ δ_ρσ.
    pub fn inner_product(&self, other: &Self) -> Q {
        let a = self.power_terms();
        let b = other.power_terms();
        let mut acc = Q::zero();
        for (k, c) in &a {
            if let Some(d) = b.get(k) {
                acc += c * d * q_big(k.z());
            }
        }
        acc
    }

    /// Adams operation ψ_n = p_n ∘ (−).
    pub fn adams(&self, n: u32) -> Self {
        assert!(n >= 1, "Adams operation needs n ≥ 1");
        let t = self.power_terms().into_iter().map(|(k, c)| (k.scale(n), c));
        SymFunc::from_terms(Basis::PowerSum, self.max_arity, t).convert_basis(self.basis)
    }

    /// g^⊥ applied to self, where g is read as an exact polynomial.
    /// p_n^⊥ acts as n ∂/∂p_n.
    pub fn adjoint_mul(&self, g: &Self) -> Self {
        let f = self.power_terms();
        let gp = g.power_terms();
        let top = gp.keys().map(|k| k.weight()).max().unwrap_or(0);
        let cap = self.max_arity.saturating_sub(top);
        let mut out = Terms::new();
        for (rho, d) in &gp {
            for (sigma, c) in &f {
                if let Some(rest) = sigma.remove_parts(rho) {
                    // Π_i ρ_i · (multiplicity falling factorial)
                    let mut coef = c * d;
                    let mut mult = sigma.multiplicities();
                    for &part in rho.parts() {
                        let m = &mut mult[part as usize];
                        coef *= q_int((part as usize * *m) as i64);
                        *m -= 1;
                    }
                    if rest.weight() <= cap {
                        add_term(&mut out, rest, coef);
                    }
                }
            }
        }
        SymFunc { basis: Basis::PowerSum, max_arity: cap, terms: out }.convert_basis(self.basis)
    }

    /// s_μ^⊥ applied to self.
    pub fn skew(&self, by: &Partition) -> Self {
        self.adjoint_mul(&SymFunc::s(by.clone(), by.weight()))
    }

    /// f ∘ g. `g` must have zero constant term.
    pub fn plethysm(&self, g: &SymFunc) -> Result<SymFunc> {
        let gg = GradedElement::from_symfunc(&g.truncate(self.max_arity));
        let out = gg.plethysm_by(self)?;
        Ok(out.z_coefficient(0).convert_basis(g.basis))
    }

    pub fn to_graded(&self) -> GradedElement {
        GradedElement::from_symfunc(self)
    }

    /// Evaluates at an alphabet given by its power sums p_1, p_2, ….
    pub fn eval_powersums<S: crate::scalar::Scalar>(&self, p: &[S]) -> Result<S> {
        let mut memo: HashMap<Partition, S> = HashMap::new();
        memo.insert(Partition::empty(), S::one());
        let mut acc = S::zero();
        for (k, c) in self.power_terms() {
            let v = eval_power_product(&k, p, &mut memo)?;
            acc = acc.add_ref(&S::from_q(&c).mul_ref(&v));
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SerialElement::from_symfunc(self)).unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let s: SerialElement = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        s.into_symfunc()
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.basis, self.terms.iter().map(|(k, c)| (0i64, k, c)))
    }
}

pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    basis: Basis,
    terms: impl Iterator<Item = (i64, &'a Partition, &'a Q)>,
) -> fmt::Result {
    let mut first = true;
    for (z, k, c) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let mut pieces = Vec::new();
        if !mag.is_one() {
            pieces.push(if mag.denom().is_one() { mag.numer().to_string() } else { format!("({mag})") });
        }
        match z {
            0 => {}
            1 => pieces.push("z".into()),
            _ => pieces.push(format!("z^{z}")),
        }
        if !k.is_empty() {
            let idx: Vec<String> = k.parts().iter().map(|p| p.to_string()).collect();
            pieces.push(format!("{}[{}]", basis.symbol(), idx.join(",")));
        }
        if pieces.is_empty() {
            write!(f, "1")?;
        } else {
            write!(f, "{}", pieces.join("*"))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Stable JSON shape shared by SymFunc and GradedElement.
#[derive(Serialize, Deserialize)]
pub(crate) struct SerialElement {
    basis: Basis,
    window: Window,
    terms: Vec<SerialTerm>,
}

#[derive(Serialize, Deserialize)]
struct SerialTerm {
    z: i64,
    partition: Partition,
    num: String,
    den: String,
}

impl SerialElement {
    fn from_iter<'a>(basis: Basis, window: Window, it: impl Iterator<Item = (i64, &'a Partition, &'a Q)>) -> Self {
        SerialElement {
            basis,
            window,
            terms: it
                .map(|(z, k, c)| SerialTerm { z, partition: k.clone(), num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        }
    }

    fn from_symfunc(f: &SymFunc) -> Self {
        Self::from_iter(f.basis, Window::new(0, 0, f.max_arity), f.terms.iter().map(|(k, c)| (0, k, c)))
    }

    fn parsed_terms(&self) -> Result<Vec<(i64, Partition, Q)>> {
        self.terms
            .iter()
            .map(|t| Ok((t.z, t.partition.clone(), rational::parse(&format!("{}/{}", t.num, t.den))?)))
            .collect()
    }

    fn into_symfunc(self) -> Result<SymFunc> {
        let terms = self.parsed_terms()?;
        if terms.iter().any(|t| t.0 != 0) {
            return Err(Error::Parse("symmetric function with nonzero z exponent".into()));
        }
        Ok(SymFunc::from_terms(self.basis, self.window.max_arity, terms.into_iter().map(|(_, k, c)| (k, c))))
    }
}

fn eval_power_product<S: crate::scalar::Scalar>(k: &Partition, p: &[S], memo: &mut HashMap<Partition, S>) -> Result<S> {
    if let Some(v) = memo.get(k) {
        return Ok(v.clone());
    }
    let first = k.parts()[0] as usize;
    let pf = p.get(first - 1).ok_or(Error::MissingPowerSum(first))?;
    let rest = Partition::from_unsorted(k.parts()[1..].to_vec());
    let v = eval_power_product(&rest, p, memo)?.mul_ref(pf);
    memo.insert(k.clone(), v.clone());
    Ok(v)
}

/// Möbius function.
pub fn mobius(mut n: u64) -> i64 {
    assert!(n >= 1);
    let mut r = 1i64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            r = -r;
        }
        d += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

/// Necklace polynomial i_n(x) = (1/n) Σ_{d|n} μ(n/d) x^d as a list of (d, coefficient).
pub fn necklace_terms(n: u64) -> Vec<(u64, Q)> {
    (1..=n).filter(|d| n % d == 0).filter_map(|d| {
        let m = mobius(n / d);
        (m != 0).then(|| (d, q_frac(m, n as i64)))
    }).collect()
}
