//! Sparse multivariate Laurent polynomials with rational coefficients.

use std::collections::HashMap;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::rational::Q;
use crate::scalar::Scalar;

/// Exponent vectors are stored with trailing zeros trimmed, so polynomials in
/// different numbers of variables combine freely.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: HashMap<Vec<i32>, Q>,
}

fn trim(mut v: Vec<i32>) -> Vec<i32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl LaurentPoly {
    pub fn constant(c: Q) -> Self {
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        LaurentPoly { terms }
    }

    /// x_var^exp.
    pub fn monomial(var: usize, exp: i32) -> Self {
        let mut v = vec![0; var + 1];
        v[var] = exp;
        let mut terms = HashMap::new();
        terms.insert(trim(v), Q::one());
        LaurentPoly { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i32]) -> Q {
        self.terms.get(&trim(exps.to_vec())).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Q)> {
        self.terms.iter()
    }

    /// Σ_i x_i^k + x_i^{−k} over the given variables.
    pub fn symplectic_power_sum(vars: &[usize], k: i32) -> Self {
        let mut acc = LaurentPoly::zero();
        for &v in vars {
            acc = &acc + &LaurentPoly::monomial(v, k);
            acc = &acc + &LaurentPoly::monomial(v, -k);
        }
        acc
    }

    /// Σ_i x_i^k over the given variables.
    pub fn power_sum(vars: &[usize], k: i32) -> Self {
        let mut acc = LaurentPoly::zero();
        for &v in vars {
            acc = &acc + &LaurentPoly::monomial(v, k);
        }
        acc
    }

    /// Drops every term whose total degree in `vars` exceeds `deg`.
    pub fn truncate_degree(&self, vars: &[usize], deg: i32) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| vars.iter().map(|&v| e.get(v).copied().unwrap_or(0)).sum::<i32>() <= deg)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Q::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        LaurentPoly { terms }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: LaurentPoly) -> LaurentPoly {
        &self + &o
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut terms: HashMap<Vec<i32>, Q> = HashMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let n = e1.len().max(e2.len());
                let e: Vec<i32> = (0..n).map(|i| e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0)).collect();
                *terms.entry(trim(e)).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        &self * &o
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly { terms: HashMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::constant(Q::one())
    }
}

impl Scalar for LaurentPoly {
    fn from_q(x: &Q) -> Self {
        LaurentPoly::constant(x.clone())
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
}
