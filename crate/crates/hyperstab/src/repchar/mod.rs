//! Characters of symmetric groups, symplectic Schur functions, the λ† weight
//! correspondence and symplectic Weyl dimensions.

pub mod characters;
pub mod laurent;

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

pub use characters::sn_character;
pub use laurent::LaurentPoly;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::{q_big, Q};
use crate::scalar::Scalar;
use crate::symfunc::{Basis, GradedElement, SymFunc};

/// s_λ at the alphabet whose power sums are p_1, p_2, …: Σ_ρ χ^λ(ρ) p_ρ / z_ρ.
pub fn schur_eval<S: Scalar>(lambda: &Partition, powersums: &[S]) -> Result<S> {
    if powersums.len() < lambda.weight() {
        return Err(Error::MissingPowerSum(powersums.len() + 1));
    }
    SymFunc::s(lambda.clone(), lambda.weight()).eval_powersums(powersums)
}

static SYMPLECTIC: Lazy<RwLock<HashMap<Partition, SymFunc>>> = Lazy::new(Default::default);

/// s_⟨λ⟩ in the Schur basis. It is the unique solution of the triangular system
/// s_λ = Σ_μ ⟨Exp(e₂)s_μ, s_λ⟩ s_⟨μ⟩, obtained here as Exp(−e₂)^⊥ s_λ.
pub fn symplectic_to_schur(lambda: &Partition, max_weight: usize) -> SymFunc {
    assert!(lambda.weight() <= max_weight, "|λ| exceeds max_weight");
    let cached = SYMPLECTIC.read().unwrap().get(lambda).cloned();
    let base = match cached {
        Some(f) => f,
        None => {
            let n = lambda.weight();
            let e2 = GradedElement::from_symfunc(&SymFunc::e(2, n));
            let inv = e2.neg().pleth_exp().expect("−e₂ lies in the plethysm domain").z_coefficient(0);
            // s_λ is exact, so give it enough room for the adjoint to see every term
            let s = SymFunc::s(lambda.clone(), 2 * n);
            let f = s.adjoint_mul(&inv).convert_basis(Basis::Schur);
            let f = SymFunc::from_terms(Basis::Schur, n, f.terms().iter().map(|(k, c)| (k.clone(), c.clone())));
            SYMPLECTIC.write().unwrap().insert(lambda.clone(), f.clone());
            f
        }
    };
    SymFunc::from_terms(Basis::Schur, max_weight, base.terms().iter().map(|(k, c)| (k.clone(), c.clone())))
}

/// s_⟨λ⟩ at an alphabet {x_1^±, …, x_g^±} given by its power sums.
pub fn symplectic_eval<S: Scalar>(lambda: &Partition, powersums: &[S]) -> Result<S> {
    if powersums.len() < lambda.weight() {
        return Err(Error::MissingPowerSum(powersums.len() + 1));
    }
    symplectic_to_schur(lambda, lambda.weight()).eval_powersums(powersums)
}

/// Power sums p_1..p_n of {x_1^±, …, x_g^±} for numeric x.
pub fn symplectic_powersums(xs: &[Complex64], n: usize) -> Vec<Complex64> {
    (1..=n as i32).map(|k| xs.iter().map(|x| x.powi(k) + x.powi(-k)).sum()).collect()
}

/// Weyl character formula as a ratio of determinants, for cross-checking.
pub fn symplectic_bialternant(lambda: &Partition, xs: &[Complex64]) -> Complex64 {
    let g = xs.len();
    let matrix = |shift: &dyn Fn(usize) -> i32| -> Vec<Vec<Complex64>> {
        (0..g).map(|i| (0..g).map(|j| xs[j].powi(shift(i)) - xs[j].powi(-shift(i))).collect()).collect()
    };
    let num = det(matrix(&|i| lambda.part(i) as i32 + (g - i) as i32));
    let den = det(matrix(&|i| (g - i) as i32));
    num / den
}

fn det(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut d = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let piv = (c..n).max_by(|&x, &y| a[x][c].norm().partial_cmp(&a[y][c].norm()).unwrap()).unwrap();
        if a[piv][c].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != c {
            a.swap(piv, c);
            d = -d;
        }
        d *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                let t = a[c][k] * f;
                a[r][k] -= t;
            }
        }
    }
    d
}

/// A possibly non-dominant Sp(2r) weight, reflected into the dominant cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedWeight {
    pub weight: Vec<i64>,
    pub sign: i32,
    pub dominant: Option<Partition>,
}

/// λ†(g) = (g − λ'_r, …, g − λ'_1), moved into the dominant chamber by the
/// ρ-shifted action of the hyperoctahedral group.
pub fn lambda_dagger(lambda: &Partition, g: usize, r: usize) -> Result<SignedWeight> {
    if lambda.first() as usize > r {
        return Err(Error::ShapeTooWide(lambda.clone(), r));
    }
    let conj = lambda.conjugate();
    let weight: Vec<i64> = (0..r).map(|i| g as i64 - conj.part(r - 1 - i) as i64).collect();
    Ok(dominate(&weight))
}

/// ρ-shifted reflection of an arbitrary Sp(2r) weight.
pub fn dominate(weight: &[i64]) -> SignedWeight {
    let r = weight.len();
    let shifted: Vec<i64> = weight.iter().enumerate().map(|(i, w)| w + (r - i) as i64).collect();
    let mut abs: Vec<i64> = shifted.iter().map(|x| x.abs()).collect();
    let negs = shifted.iter().filter(|&&x| x < 0).count();
    let mut seen = abs.clone();
    seen.sort_unstable();
    if seen.contains(&0) || seen.windows(2).any(|w| w[0] == w[1]) {
        return SignedWeight { weight: weight.to_vec(), sign: 0, dominant: None };
    }
    // parity of the sorting permutation by counting inversions
    let mut inv = 0;
    for i in 0..r {
        for j in i + 1..r {
            if abs[i] < abs[j] {
                inv += 1;
            }
        }
    }
    abs.sort_unstable_by(|a, b| b.cmp(a));
    let dom: Vec<u32> = abs.iter().enumerate().map(|(i, a)| (a - (r - i) as i64) as u32).collect();
    let sign = if (inv + negs) % 2 == 0 { 1 } else { -1 };
    SignedWeight { weight: weight.to_vec(), sign, dominant: Some(Partition::from_unsorted(dom)) }
}

/// Weyl's product Π_{i<j}(l_i² − l_j²) Π_i l_i at shifted coordinates l.
fn weyl_product(l: &[i64]) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..l.len() {
        acc *= BigInt::from(l[i]);
        for j in i + 1..l.len() {
            acc *= BigInt::from(l[i] * l[i] - l[j] * l[j]);
        }
    }
    acc
}

/// The Weyl dimension polynomial of Sp(2r) at an arbitrary integral weight.
pub fn weyl_poly_sp(weight: &[i64]) -> Q {
    let r = weight.len();
    let l: Vec<i64> = weight.iter().enumerate().map(|(i, w)| w + (r - i) as i64).collect();
    let l0: Vec<i64> = (0..r).map(|i| (r - i) as i64).collect();
    q_big(weyl_product(&l)) / q_big(weyl_product(&l0))
}

/// dim V_λ for Sp(2r).
pub fn weyl_dim_sp(lambda: &Partition, r: usize) -> Result<BigInt> {
    if lambda.length() > r {
        return Err(Error::ShapeTooLong(lambda.clone(), r));
    }
    let w: Vec<i64> = (0..r).map(|i| lambda.part(i) as i64).collect();
    let d = weyl_poly_sp(&w);
    debug_assert!(d.denom().is_one());
    Ok(d.to_integer())
}

/// sign · dim of the dominant representative, 0 on a wall.
pub fn signed_dim(sw: &SignedWeight, r: usize) -> BigInt {
    match &sw.dominant {
        Some(d) if sw.sign != 0 => weyl_dim_sp(d, r).expect("dominant weight has ≤ r parts") * sw.sign,
        _ => BigInt::zero(),
    }
}

/// s_⟨λ⟩(x_1^±, …) as a Laurent polynomial in the given variables.
pub fn symplectic_laurent(lambda: &Partition, vars: &[usize]) -> LaurentPoly {
    let ps: Vec<LaurentPoly> =
        (1..=lambda.weight().max(1) as i32).map(|k| LaurentPoly::symplectic_power_sum(vars, k)).collect();
    symplectic_eval(lambda, &ps).expect("power sums supplied up to |λ|")
}

/// Jimbo–Miwa: Π_{i≤g, j≤r}(x_i + x_i⁻¹ + t_j + t_j⁻¹) = Σ_{λ⊆(r^g)} s_⟨λ⟩(x^±) s_⟨λ†⟩(t^±).
pub fn jimbo_miwa_check(g: usize, r: usize) -> bool {
    let xs: Vec<usize> = (0..g).collect();
    let ts: Vec<usize> = (g..g + r).collect();
    let mut lhs = LaurentPoly::one();
    for &x in &xs {
        for &t in &ts {
            let f = &(&LaurentPoly::monomial(x, 1) + &LaurentPoly::monomial(x, -1))
                + &(&LaurentPoly::monomial(t, 1) + &LaurentPoly::monomial(t, -1));
            lhs = &lhs * &f;
        }
    }
    let mut rhs = LaurentPoly::zero();
    for lam in Partition::in_box(g, r as u32) {
        let dag = lambda_dagger(&lam, g, r).expect("λ inside the box");
        let dom = dag.dominant.expect("λ ⊆ (r^g) gives a dominant λ†");
        rhs = &rhs + &(&symplectic_laurent(&lam, &xs) * &symplectic_laurent(&dom, &ts));
    }
    lhs == rhs
}

/// Σ_{λ⊆(r^g)} dim_{Sp(2g)} V_λ · dim_{Sp(2r)} V_{λ†}.
pub fn dimension_identity_lhs(g: usize, r: usize) -> BigInt {
    Partition::in_box(g, r as u32)
        .iter()
        .map(|lam| {
            let dag = lambda_dagger(lam, g, r).unwrap();
            weyl_dim_sp(lam, g).unwrap() * signed_dim(&dag, r)
        })
        .sum()
}

/// The all-ones alphabet of size 2r: p_k = 2r for every k.
pub fn all_ones_powersums(r: usize, n: usize) -> Vec<Q> {
    vec![Q::from_integer(BigInt::from(2 * r)); n.max(1)]
}

/// Exp(e₂) · Σ_λ s_⟨λ⟩ s_λ versus Σ_ν s_ν s_ν, compared coefficientwise on s_ν for |ν| ≤ n.
/// Returns the partitions ν where Σ_λ ⟨Exp(e₂)s_λ, s_ν⟩ s_⟨λ⟩ ≠ s_ν.
pub fn symplectic_cauchy_failures(n: usize) -> Vec<Partition> {
    let e2 = GradedElement::from_symfunc(&SymFunc::e(2, n));
    let exp_e2 = e2.pleth_exp().unwrap().z_coefficient(0);
    let mut bad = Vec::new();
    let all = crate::partition::partitions_up_to(n);
    let mut products: HashMap<Partition, SymFunc> = HashMap::new();
    for lam in &all {
        products.insert(lam.clone(), exp_e2.multiply(&SymFunc::s(lam.clone(), n)).convert_basis(Basis::Schur));
    }
    for nu in &all {
        let mut acc = SymFunc::zero(Basis::Schur, n);
        for lam in &all {
            let c = products[lam].coeff(nu);
            if !c.is_zero() {
                acc = acc.add(&symplectic_to_schur(lam, n).scale(&c));
            }
        }
        if acc != SymFunc::s(nu.clone(), n) {
            bad.push(nu.clone());
        }
    }
    bad
}
