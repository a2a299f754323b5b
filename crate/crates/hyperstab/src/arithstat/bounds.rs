//! Explicit error bounds. Most involve q^{e} with half-integral or twelfth
//! exponents, so they are kept as c·q^{e} with rational c and e and compared
//! exactly against rationals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, q_big, q_frac, q_int, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledPower {
    pub coeff: Q,
    pub base: u64,
    pub exp: Q,
}

impl ScaledPower {
    /// Integral exponents are folded into the coefficient, so equal values with
    /// rational exponents compare equal structurally.
    pub fn new(coeff: Q, base: u64, exp: Q) -> Self {
        let sp = ScaledPower { coeff, base, exp };
        match sp.to_rational() {
            Some(v) => ScaledPower::rational(v),
            None => sp,
        }
    }

    pub fn rational(x: Q) -> Self {
        ScaledPower { coeff: x, base: 1, exp: Q::zero() }
    }

    /// The exact value when the exponent is an integer.
    pub fn to_rational(&self) -> Option<Q> {
        if self.base == 1 || self.exp.is_zero() {
            return Some(self.coeff.clone());
        }
        self.exp.is_integer().then(|| {
            let e = self.exp.to_integer().to_i64().expect("small exponent");
            &self.coeff * rational::pow_i(&q_int(self.base as i64), e)
        })
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.coeff) * (self.base as f64).powf(rational::to_f64(&self.exp))
    }

    pub fn scale(&self, c: &Q) -> Self {
        ScaledPower::new(&self.coeff * c, self.base, self.exp.clone())
    }

    /// Exact comparison of a nonnegative bound with a rational.
    pub fn cmp_rational(&self, x: &Q) -> Ordering {
        assert!(!self.coeff.is_negative(), "bounds are nonnegative");
        if let Some(v) = self.to_rational() {
            return v.cmp(x);
        }
        if x.is_negative() || (x.is_zero() && !self.coeff.is_zero()) {
            return Ordering::Greater;
        }
        if self.coeff.is_zero() {
            return Q::zero().cmp(x);
        }
        // c·B^{a/b} vs x  ⇔  c^b·B^a vs x^b
        let a = self.exp.numer().to_i64().expect("small exponent");
        let b = self.exp.denom().to_u32().expect("small exponent");
        let base = q_int(self.base as i64);
        let lhs = rational::pow_i(&self.coeff, b as i64) * rational::pow_i(&base, a);
        lhs.cmp(&rational::pow_i(x, b as i64))
    }

    /// bound ≥ |x|
    pub fn covers(&self, x: &Q) -> bool {
        self.cmp_rational(&x.abs()) != Ordering::Less
    }
}

impl fmt::Display for ScaledPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(v) => f.write_str(&rational::to_string(&v)),
            None => write!(f, "{}*{}^({})", rational::to_string(&self.coeff), self.base, self.exp),
        }
    }
}

impl Serialize for ScaledPower {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ScaledPower {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for ScaledPower {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('*') {
            None => Ok(ScaledPower::rational(rational::parse(s)?)),
            Some((c, rest)) => {
                let (b, e) = rest.split_once("^(").ok_or_else(|| Error::Parse(format!("bad bound `{s}`")))?;
                let e = e.strip_suffix(')').ok_or_else(|| Error::Parse(format!("bad bound `{s}`")))?;
                Ok(ScaledPower::new(
                    rational::parse(c)?,
                    b.parse().map_err(|_| Error::Parse(format!("bad base in `{s}`")))?,
                    rational::parse(e)?,
                ))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// 5^w · q^{w − n/2} for a weight-w coefficient of Z_n.
    Zn { weight: usize, n: usize },
    /// 4^{g(r+1)} · q^{−θ(2g+1)/2}, θ(n) = (n + 11)/12.
    ThmC { g: usize, r: usize },
    /// binom(n − 1, k) · dim.
    Fuks { n: usize, k: usize, dim: u64 },
}

pub fn theta(n: usize) -> Q {
    q_frac(n as i64 + 11, 12)
}

pub fn error_bound(q: u64, kind: BoundKind) -> ScaledPower {
    match kind {
        BoundKind::Zn { weight, n } => ScaledPower::new(
            q_big(BigInt::from(5).pow(weight as u32)),
            q,
            q_int(weight as i64) - q_frac(n as i64, 2),
        ),
        BoundKind::ThmC { g, r } => {
            ScaledPower::new(q_big(BigInt::from(4).pow((g * (r + 1)) as u32)), q, -theta(2 * g + 1) / q_int(2))
        }
        BoundKind::Fuks { n, k, dim } => {
            let b = if n == 0 { BigInt::zero() } else { binomial(BigInt::from(n - 1), BigInt::from(k)) };
            ScaledPower::rational(q_big(b * BigInt::from(dim)))
        }
    }
}

/// The Z_n comparison bound with the acceptance slack.
pub fn zn_bound(q: u64, weight: usize, n: usize, slack: u32) -> ScaledPower {
    error_bound(q, BoundKind::Zn { weight, n }).scale(&q_int(slack as i64))
}
