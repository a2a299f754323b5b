//! Truncated elements of Λ((z)).
//!
//! A window (z_min, z_max, max_arity) says: no term sits below z_min, and the
//! element is known exactly for z ≤ z_max and arity ≤ max_arity. Binary
//! operations only ever shrink the known region.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{convert_terms, mobius, write_terms, Basis, SerialElement, SymFunc, Terms};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::{q_frac, q_int, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub z_min: i64,
    pub z_max: i64,
    pub max_arity: usize,
}

impl Window {
    pub fn new(z_min: i64, z_max: i64, max_arity: usize) -> Self {
        Window { z_min, z_max, max_arity }
    }

    pub fn contains(&self, z: i64, arity: usize) -> bool {
        z >= self.z_min && z <= self.z_max && arity <= self.max_arity
    }
}

type Key = (i64, Partition);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    basis: Basis,
    window: Window,
    terms: BTreeMap<Key, Q>,
}

fn insert(t: &mut BTreeMap<Key, Q>, k: Key, c: Q) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match t.entry(k) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn collect_hash(h: HashMap<Key, Q>) -> BTreeMap<Key, Q> {
    h.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl GradedElement {
    pub fn zero(basis: Basis, window: Window) -> Self {
        GradedElement { basis, window, terms: BTreeMap::new() }
    }

    pub fn one(window: Window) -> Self {
        Self::monomial(0, Partition::empty(), Q::one(), Basis::PowerSum, window)
    }

    /// Builds an element; terms outside the window are dropped.
    pub fn from_terms(basis: Basis, window: Window, terms: impl IntoIterator<Item = (i64, Partition, Q)>) -> Self {
        let mut t = BTreeMap::new();
        for (z, k, c) in terms {
            if window.contains(z, k.weight()) {
                insert(&mut t, (z, k), c);
            }
        }
        GradedElement { basis, window, terms: t }
    }

    pub fn monomial(z: i64, lambda: Partition, c: Q, basis: Basis, window: Window) -> Self {
        Self::from_terms(basis, window, [(z, lambda, c)])
    }

    /// z^k.
    pub fn z_power(k: i64, window: Window) -> Self {
        Self::monomial(k, Partition::empty(), Q::one(), Basis::PowerSum, window)
    }

    /// z^k f.
    pub fn from_symfunc_at(f: &SymFunc, k: i64, window: Window) -> Self {
        Self::from_terms(f.basis(), window, f.terms().iter().map(|(p, c)| (k, p.clone(), c.clone())))
    }

    pub fn from_symfunc(f: &SymFunc) -> Self {
        Self::from_symfunc_at(f, 0, Window::new(0, 0, f.max_arity()))
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Partition, &Q)> {
        self.terms.iter().map(|((z, k), c)| (*z, k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, z: i64, lambda: &Partition) -> Q {
        self.terms.get(&(z, lambda.clone())).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficient of z^k as a symmetric function (in this element's basis).
    pub fn z_coefficient(&self, k: i64) -> SymFunc {
        SymFunc::from_terms(
            self.basis,
            self.window.max_arity,
            self.terms.range((k, Partition::empty())..).take_while(|((z, _), _)| *z == k).map(|((_, p), c)| (p.clone(), c.clone())),
        )
    }

    /// Arity-n part.
    pub fn arity_part(&self, n: usize) -> Self {
        GradedElement {
            basis: self.basis,
            window: self.window,
            terms: self.terms.iter().filter(|((_, k), _)| k.weight() == n).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// Coefficient series Σ_k c_k z^k of one basis element over the window.
    pub fn series_of(&self, lambda: &Partition) -> Vec<(i64, Q)> {
        (self.window.z_min..=self.window.z_max).map(|z| (z, self.coeff(z, lambda))).collect()
    }

    pub fn convert_basis(&self, target: Basis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let mut by_z: BTreeMap<i64, Terms> = BTreeMap::new();
        for ((z, k), c) in &self.terms {
            by_z.entry(*z).or_default().insert(k.clone(), c.clone());
        }
        let mut t = BTreeMap::new();
        for (z, terms) in by_z {
            for (k, c) in convert_terms(&terms, self.basis, target) {
                t.insert((z, k), c);
            }
        }
        GradedElement { basis: target, window: self.window, terms: t }
    }

    fn power(&self) -> std::borrow::Cow<'_, GradedElement> {
        if self.basis == Basis::PowerSum {
            std::borrow::Cow::Borrowed(self)
        } else {
            std::borrow::Cow::Owned(self.convert_basis(Basis::PowerSum))
        }
    }

    /// Equal as elements on the common known region.
    pub fn same_element(&self, other: &Self) -> bool {
        let w = Window::new(
            self.window.z_min.min(other.window.z_min),
            self.window.z_max.min(other.window.z_max),
            self.window.max_arity.min(other.window.max_arity),
        );
        let a = self.power().restrict(w);
        let b = other.power().restrict(w);
        a.terms == b.terms
    }

    /// Drops everything outside `w` ∩ own window (the window never grows).
    pub fn restrict(&self, w: Window) -> Self {
        let nw = Window::new(
            self.window.z_min.max(w.z_min),
            self.window.z_max.min(w.z_max),
            self.window.max_arity.min(w.max_arity),
        );
        GradedElement {
            basis: self.basis,
            window: nw,
            terms: self.terms.iter().filter(|((z, k), _)| nw.contains(*z, k.weight())).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// Raises z_min after checking nothing lives below it.
    pub fn assert_z_min(&self, z_min: i64) -> Result<Self> {
        if let Some(((z, k), c)) = self.terms.iter().find(|((z, _), _)| *z < z_min) {
            return Err(Error::Consistency(format!("surviving term {c}·z^{z}·{k} below z^{z_min}")));
        }
        let mut out = self.clone();
        out.window.z_min = out.window.z_min.max(z_min);
        Ok(out)
    }

    fn lin_comb(&self, other: &Self, c: &Q) -> Self {
        let w = Window::new(
            self.window.z_min.min(other.window.z_min),
            self.window.z_max.min(other.window.z_max),
            self.window.max_arity.min(other.window.max_arity),
        );
        let o = if other.basis == self.basis { std::borrow::Cow::Borrowed(other) } else { std::borrow::Cow::Owned(other.convert_basis(self.basis)) };
        let mut t: BTreeMap<Key, Q> =
            self.terms.iter().filter(|((z, k), _)| w.contains(*z, k.weight())).map(|(k, v)| (k.clone(), v.clone())).collect();
        for ((z, k), v) in &o.terms {
            if w.contains(*z, k.weight()) {
                insert(&mut t, (*z, k.clone()), v * c);
            }
        }
        GradedElement { basis: self.basis, window: w, terms: t }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.lin_comb(other, &Q::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.lin_comb(other, &-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = GradedElement::zero(self.basis, self.window);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    /// Product in power sums.
    pub fn mul(&self, other: &Self) -> Self {
        let (a1, b1) = (self.window.z_min, self.window.z_max);
        let (a2, b2) = (other.window.z_min, other.window.z_max);
        let w = Window::new(
            (a1 + a2).min(a1.max(a2)),
            b1.min(b2).min(b1 + a2).min(b2 + a1),
            self.window.max_arity.min(other.window.max_arity),
        );
        let x = self.power();
        let y = other.power();
        // bucket the right factor by arity so the inner loop can stop early
        let mut rhs: Vec<(usize, i64, &Partition, &Q)> = y.terms.iter().map(|((z, k), c)| (k.weight(), *z, k, c)).collect();
        rhs.sort_by_key(|t| t.0);
        let mut acc: HashMap<Key, Q> = HashMap::new();
        for ((z1, k1), c1) in &x.terms {
            let w1 = k1.weight();
            for &(w2, z2, k2, c2) in &rhs {
                if w1 + w2 > w.max_arity {
                    break;
                }
                let z = z1 + z2;
                if z > w.z_max || z < w.z_min {
                    continue;
                }
                *acc.entry((z, k1.union(k2))).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        GradedElement { basis: Basis::PowerSum, window: w, terms: collect_hash(acc) }
    }

    /// Multiplies by z^s.
    pub fn shift_z(&self, s: i64) -> Self {
        GradedElement {
            basis: self.basis,
            window: Window::new(self.window.z_min + s, self.window.z_max + s, self.window.max_arity),
            terms: self.terms.iter().map(|((z, k), c)| ((z + s, k.clone()), c.clone())).collect(),
        }
    }

    /// Multiplies by an exact Laurent polynomial in z given as (exponent, coefficient).
    pub fn mul_z_laurent(&self, poly: &[(i64, Q)]) -> Self {
        let lo = poly.iter().filter(|(_, c)| !c.is_zero()).map(|(e, _)| *e).min().unwrap_or(0);
        let w = Window::new(self.window.z_min + lo, self.window.z_max + lo, self.window.max_arity);
        let mut t = BTreeMap::new();
        for ((z, k), c) in &self.terms {
            for (e, d) in poly {
                let nz = z + e;
                if nz <= w.z_max {
                    insert(&mut t, (nz, k.clone()), c * d);
                }
            }
        }
        GradedElement { basis: self.basis, window: w, terms: t }
    }

    /// ψ_n: z ↦ z^n, p_k ↦ p_{nk}.
    pub fn adams(&self, n: u32) -> Self {
        assert!(n >= 1, "Adams operation needs n ≥ 1");
        let x = self.power();
        let ni = n as i64;
        let w = Window::new(
            if self.window.z_min < 0 { ni * self.window.z_min } else { self.window.z_min },
            if self.window.z_max < 0 { ni * self.window.z_max } else { self.window.z_max },
            self.window.max_arity,
        );
        let t = x.terms.iter().map(|((z, k), c)| (z * ni, k.scale(n), c.clone()));
        GradedElement::from_terms(Basis::PowerSum, w, t)
    }

    /// The plethysm domain: every monomial z^k s_λ has k ≥ 0 and k + |λ| ≥ 1.
    pub fn check_domain(&self) -> Result<()> {
        for ((z, k), c) in &self.terms {
            if *z < 0 || *z + k.weight() as i64 == 0 {
                return Err(Error::PlethysmDomain(format!("term {c}·z^{z}·{}{}", self.basis.symbol(), k)));
            }
        }
        Ok(())
    }

    /// f ∘ self.
    pub fn plethysm_by(&self, f: &SymFunc) -> Result<Self> {
        self.check_domain()?;
        let g = self.power().into_owned();
        let a = g.window.max_arity;
        let mut zmax = g.window.z_max;
        // outputs of weight z + arity only see components of f of arity ≤ that weight
        let need = (zmax.max(0) as usize) + a;
        if f.max_arity() < need {
            let lim = f.max_arity() as i64 - a as i64;
            if lim < 0 {
                return Err(Error::WindowTooSmall(format!("outer function known to arity {} only", f.max_arity())));
            }
            zmax = zmax.min(lim);
        }
        let w = Window::new(0, zmax, a);
        let g = g.restrict(Window::new(i64::MIN, zmax, a));
        let top = zmax.max(0) as usize + a;
        let mut adams_cache: HashMap<u32, GradedElement> = HashMap::new();
        let mut memo: HashMap<Partition, GradedElement> = HashMap::new();
        memo.insert(Partition::empty(), GradedElement::one(w));
        let mut out = GradedElement::zero(Basis::PowerSum, w);
        for (rho, c) in f.power_terms() {
            if rho.weight() > top {
                continue;
            }
            let val = pleth_power(&rho, &g, w, &mut adams_cache, &mut memo);
            out = out.add(&val.scale(&c));
        }
        Ok(out.restrict(w))
    }

    /// Plethystic exponential E ∘ x.
    pub fn pleth_exp(&self) -> Result<Self> {
        self.check_domain()?;
        let x = self.power();
        let (zmax, a) = (x.window.z_max, x.window.max_arity);
        if zmax < 0 {
            return Err(Error::WindowTooSmall("Exp needs z_max ≥ 0".into()));
        }
        let top = zmax as usize + a;
        // y = Σ_k ψ_k(x)/k bucketed by weight
        let mut y: Vec<Vec<(i64, Partition, Q)>> = vec![Vec::new(); top + 1];
        for k in 1..=top as u32 {
            let inv = q_frac(1, k as i64);
            for ((z, lam), c) in &x.terms {
                let nz = z * k as i64;
                let nl = lam.weight() * k as usize;
                if nz > zmax || nl > a {
                    continue;
                }
                y[nz as usize + nl].push((nz, lam.scale(k), c * &inv));
            }
        }
        let mut f: Vec<Vec<(i64, Partition, Q)>> = vec![Vec::new(); top + 1];
        f[0].push((0, Partition::empty(), Q::one()));
        for wgt in 1..=top {
            let mut acc: HashMap<Key, Q> = HashMap::new();
            for j in 1..=wgt {
                if y[j].is_empty() || f[wgt - j].is_empty() {
                    continue;
                }
                let jq = q_int(j as i64);
                for (z1, l1, c1) in &y[j] {
                    let jc = c1 * &jq;
                    for (z2, l2, c2) in &f[wgt - j] {
                        if z1 + z2 > zmax || l1.weight() + l2.weight() > a {
                            continue;
                        }
                        *acc.entry((z1 + z2, l1.union(l2))).or_insert_with(Q::zero) += &jc * c2;
                    }
                }
            }
            let inv = q_frac(1, wgt as i64);
            f[wgt] = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((z, l), c)| (z, l, c * &inv)).collect();
        }
        let w = Window::new(0, zmax, a);
        Ok(GradedElement::from_terms(Basis::PowerSum, w, f.into_iter().flatten()))
    }

    /// Plethystic logarithm of 1 + x; the constant term must be 1.
    pub fn pleth_log(&self) -> Result<Self> {
        let y = self.power();
        let c0 = y.coeff(0, &Partition::empty());
        if !c0.is_one() {
            return Err(Error::PlethysmDomain(format!("constant term {c0} ≠ 1")));
        }
        let x = y.sub(&GradedElement::one(y.window));
        x.check_domain()?;
        let (zmax, a) = (x.window.z_max, x.window.max_arity);
        if zmax < 0 {
            return Err(Error::WindowTooSmall("Log needs z_max ≥ 0".into()));
        }
        let top = zmax as usize + a;
        let mut u: Vec<Vec<(i64, Partition, Q)>> = vec![Vec::new(); top + 1];
        for ((z, lam), c) in &x.terms {
            u[*z as usize + lam.weight()].push((*z, lam.clone(), c.clone()));
        }
        // ordinary log: w G_w = w u_w − Σ_{j<w} j G_j u_{w−j}
        let mut g: Vec<Vec<(i64, Partition, Q)>> = vec![Vec::new(); top + 1];
        for wgt in 1..=top {
            let mut acc: HashMap<Key, Q> = HashMap::new();
            for (z, l, c) in &u[wgt] {
                *acc.entry((*z, l.clone())).or_insert_with(Q::zero) += c * q_int(wgt as i64);
            }
            for j in 1..wgt {
                let jq = q_int(j as i64);
                for (z1, l1, c1) in &g[j] {
                    let jc = c1 * &jq;
                    for (z2, l2, c2) in &u[wgt - j] {
                        if z1 + z2 > zmax || l1.weight() + l2.weight() > a {
                            continue;
                        }
                        *acc.entry((z1 + z2, l1.union(l2))).or_insert_with(Q::zero) -= &jc * c2;
                    }
                }
            }
            let inv = q_frac(1, wgt as i64);
            g[wgt] = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((z, l), c)| (z, l, c * &inv)).collect();
        }
        // Log = Σ_k μ(k)/k ψ_k(G)
        let w = Window::new(0, zmax, a);
        let mut t = BTreeMap::new();
        for k in 1..=top as u32 {
            let mu = mobius(k as u64);
            if mu == 0 {
                continue;
            }
            let f = q_frac(mu, k as i64);
            for (z, l, c) in g.iter().flatten() {
                let nz = z * k as i64;
                if nz > zmax || l.weight() * k as usize > a {
                    continue;
                }
                insert(&mut t, (nz, l.scale(k)), c * &f);
            }
        }
        Ok(GradedElement { basis: Basis::PowerSum, window: w, terms: t })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SerialElement::from_iter(self.basis, self.window, self.terms())).unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let s: SerialElement = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let terms = s.parsed_terms()?;
        if terms.iter().any(|(z, k, _)| !s.window.contains(*z, k.weight())) {
            return Err(Error::Parse("term outside the declared window".into()));
        }
        Ok(GradedElement::from_terms(s.basis, s.window, terms))
    }
}

fn pleth_power(
    rho: &Partition,
    g: &GradedElement,
    w: Window,
    adams_cache: &mut HashMap<u32, GradedElement>,
    memo: &mut HashMap<Partition, GradedElement>,
) -> GradedElement {
    if let Some(v) = memo.get(rho) {
        return v.clone();
    }
    let first = rho.parts()[0];
    let rest = Partition::from_unsorted(rho.parts()[1..].to_vec());
    let tail = pleth_power(&rest, g, w, adams_cache, memo);
    let psi = adams_cache.entry(first).or_insert_with(|| g.adams(first).restrict(w)).clone();
    let val = psi.mul(&tail).restrict(w);
    memo.insert(rho.clone(), val.clone());
    val
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.basis, self.terms())?;
        write!(f, " + O(z^{}, arity {})", self.window.z_max + 1, self.window.max_arity + 1)
    }
}
