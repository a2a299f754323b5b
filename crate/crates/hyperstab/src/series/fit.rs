//! Rational functions in z whose denominators are products of cyclotomic
//! polynomials, recovered from a finite prefix of their Taylor coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::rational::{q_int, Q};

/// Largest total denominator degree searched.
pub const MAX_DENOM_DEGREE: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    /// Ascending coefficients.
    pub numerator: Vec<Q>,
    pub denominator: Vec<Q>,
    /// Orders m of the factors Φ_m, with repetition, ascending.
    pub cyclotomic: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fit {
    Found(RationalFunction),
    Inconclusive,
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials (divisor monic up to sign).
fn poly_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db];
    let mut q = vec![0; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] / lead;
        q[i] = c;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    q
}

/// Φ_m for m = 1, 2, ... with φ(m) ≤ MAX_DENOM_DEGREE, in ascending order of m.
static CYCLOTOMIC: Lazy<Vec<(u32, Vec<i64>)>> = Lazy::new(|| {
    let mut all: BTreeMap<u32, Vec<i64>> = BTreeMap::new();
    let mut out = Vec::new();
    // φ(m) ≥ √(m/2), so m ≤ 2·12² covers everything
    for m in 1..=2 * (MAX_DENOM_DEGREE * MAX_DENOM_DEGREE) as u32 {
        let mut num = vec![0i64; m as usize + 1];
        num[0] = -1;
        num[m as usize] = 1;
        for d in (1..m).filter(|d| m % d == 0) {
            num = poly_div(&num, &all[&d]);
        }
        if num.len() - 1 <= MAX_DENOM_DEGREE {
            // 1 − z rather than z − 1 so every denominator has constant term 1
            out.push((m, if m == 1 { vec![1, -1] } else { num.clone() }));
        }
        all.insert(m, num);
    }
    out
});

pub fn cyclotomic(m: u32) -> Option<&'static [i64]> {
    CYCLOTOMIC.iter().find(|(k, _)| *k == m).map(|(_, p)| p.as_slice())
}

struct Search<'a> {
    coeffs: &'a [Q],
    guard: usize,
    max_d: usize,
    best: Option<(usize, usize, Vec<u32>, Vec<Q>, Vec<i64>)>,
}

impl Search<'_> {
    /// `prod` holds Q·C truncated to the data length, `den` the denominator.
    fn visit(&mut self, start: usize, chosen: &mut Vec<u32>, den: &[i64], prod: &[Q]) {
        let d = den.len() - 1;
        let l = self.coeffs.len();
        let deg_p = prod.iter().rposition(|c| !c.is_zero());
        let np = deg_p.map_or(0, |x| x + 1);
        if np + d + self.guard <= l {
            let key = (d + np.saturating_sub(1), d);
            let better = match &self.best {
                None => true,
                Some((s, dd, ..)) => key < (*s, *dd),
            };
            if better {
                self.best = Some((key.0, key.1, chosen.clone(), prod[..np].to_vec(), den.to_vec()));
            }
        }
        for idx in start..CYCLOTOMIC.len() {
            let (m, phi) = &CYCLOTOMIC[idx];
            let nd = d + phi.len() - 1;
            if nd > self.max_d || self.best.as_ref().is_some_and(|b| nd > b.0) {
                continue;
            }
            let next: Vec<Q> = (0..l)
                .map(|j| {
                    let mut s = Q::zero();
                    for (i, c) in phi.iter().enumerate() {
                        if *c != 0 && i <= j {
                            s += &prod[j - i] * q_int(*c);
                        }
                    }
                    s
                })
                .collect();
            chosen.push(*m);
            self.visit(idx, chosen, &poly_mul(den, phi), &next);
            chosen.pop();
        }
    }
}

/// Finds the simplest P/Q, Q a product of cyclotomic polynomials of total degree
/// at most 12, whose expansion agrees with every supplied coefficient while
/// leaving at least `guard` of them unused by the fit.
pub fn fit_rational(coeffs: &[Q], guard: usize) -> Result<Fit> {
    let l = coeffs.len();
    if l <= guard {
        return Err(Error::InsufficientData(format!("{l} coefficients with guard {guard}")));
    }
    let max_d = MAX_DENOM_DEGREE.min(l - guard - 1);
    let mut s = Search { coeffs, guard, max_d, best: None };
    s.visit(0, &mut Vec::new(), &[1], coeffs);
    Ok(match s.best {
        Some((_, _, cyc, num, den)) => Fit::Found(RationalFunction {
            numerator: num,
            denominator: den.into_iter().map(q_int).collect(),
            cyclotomic: cyc,
        }),
        None => Fit::Inconclusive,
    })
}

impl RationalFunction {
    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Order of the worst pole on the unit circle; coefficients then grow like
    /// a polynomial of degree one less.
    pub fn max_pole_order(&self) -> usize {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for m in &self.cyclotomic {
            *counts.entry(*m).or_default() += 1;
        }
        counts.values().copied().max().unwrap_or(0)
    }

    /// Taylor coefficients 0..n.
    pub fn expand(&self, n: usize) -> Vec<Q> {
        let mut out: Vec<Q> = Vec::with_capacity(n);
        let d0 = &self.denominator[0];
        for j in 0..n {
            let mut s = self.numerator.get(j).cloned().unwrap_or_else(Q::zero);
            for (i, di) in self.denominator.iter().enumerate().skip(1) {
                if i <= j {
                    s -= di * &out[j - i];
                }
            }
            out.push(s / d0);
        }
        out
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &[Q]) -> fmt::Result {
    let mut first = true;
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        let coef = if mag.is_integer() { mag.to_integer().to_string() } else { format!("{}/{}", mag.numer(), mag.denom()) };
        match i {
            0 => f.write_str(&coef)?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{coef}*")?;
                }
                if i == 1 {
                    f.write_str("z")?;
                } else {
                    write!(f, "z^{i}")?;
                }
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

fn is_monomial(p: &[Q]) -> bool {
    p.iter().filter(|c| !c.is_zero()).count() <= 1
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den_trivial = self.denominator.len() == 1 && self.denominator[0].is_one();
        if self.is_zero() {
            return f.write_str("0");
        }
        if den_trivial {
            return write_poly(f, &self.numerator);
        }
        if is_monomial(&self.numerator) {
            write_poly(f, &self.numerator)?;
        } else {
            f.write_str("(")?;
            write_poly(f, &self.numerator)?;
            f.write_str(")")?;
        }
        f.write_str("/(")?;
        write_poly(f, &self.denominator)?;
        f.write_str(")")
    }
}
