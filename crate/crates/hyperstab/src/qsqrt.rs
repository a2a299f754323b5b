//! Numbers a + b·√q with rational a, b.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::rational::{self, Q};

/// Element of Q(√q). `q` is not required to be a non-square, but every value
/// combined in one computation must share it. q = 0 marks a plain rational
/// that adopts the radicand of whatever it is combined with.
#[derive(Clone, Debug)]
pub struct QAdjSqrt {
    pub a: Q,
    pub b: Q,
    pub q: u64,
}

impl QAdjSqrt {
    pub fn new(a: Q, b: Q, q: u64) -> Self {
        QAdjSqrt { a, b, q }
    }

    pub fn rational(a: Q) -> Self {
        QAdjSqrt { a, b: Q::zero(), q: 0 }
    }

    pub fn sqrt_q(q: u64) -> Self {
        QAdjSqrt { a: Q::zero(), b: Q::one(), q }
    }

    /// q^{e/2} for any integer e.
    pub fn q_half_power(q: u64, e: i64) -> Self {
        let qq = rational::q_int(q as i64);
        if e.rem_euclid(2) == 0 {
            QAdjSqrt { a: rational::pow_i(&qq, e / 2), b: Q::zero(), q }
        } else {
            // q^{e/2} = q^{(e-1)/2} √q
            QAdjSqrt { a: Q::zero(), b: rational::pow_i(&qq, (e - 1).div_euclid(2)), q }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn radicand(&self, other: &Self) -> u64 {
        match (self.q, other.q) {
            (0, q) | (q, 0) => q,
            (x, y) if x == y => x,
            (x, y) => {
                if self.b.is_zero() {
                    y
                } else if other.b.is_zero() {
                    x
                } else {
                    panic!("QAdjSqrt radicand mismatch: {x} vs {y}")
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QAdjSqrt { a: Q::one(), b: Q::zero(), q: self.q };
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &Q) -> Self {
        QAdjSqrt { a: &self.a * c, b: &self.b * c, q: self.q }
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.a) + rational::to_f64(&self.b) * (self.q as f64).sqrt()
    }

    /// Exact comparison |self| ≤ |other| is not needed; this compares self ≤ x for rational x.
    pub fn le_rational(&self, x: &Q) -> bool {
        // a + b√q ≤ x  ⟺  b√q ≤ x − a
        let rhs = x - &self.a;
        if self.b.is_zero() {
            return !rhs.is_negative();
        }
        let lhs2 = &self.b * &self.b * rational::q_int(self.q as i64);
        if self.b.is_positive() {
            !rhs.is_negative() && lhs2 <= &rhs * &rhs
        } else {
            !rhs.is_negative() || &rhs * &rhs <= lhs2
        }
    }
}

impl PartialEq for QAdjSqrt {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.q == o.q)
    }
}

impl Eq for QAdjSqrt {}

impl std::hash::Hash for QAdjSqrt {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.a.hash(h);
        self.b.hash(h);
        if !self.b.is_zero() {
            self.q.hash(h);
        }
    }
}

impl Zero for QAdjSqrt {
    fn zero() -> Self {
        QAdjSqrt::rational(Q::zero())
    }
    fn is_zero(&self) -> bool {
        QAdjSqrt::is_zero(self)
    }
}

impl One for QAdjSqrt {
    fn one() -> Self {
        QAdjSqrt::rational(Q::one())
    }
}

impl<'a> Add<&'a QAdjSqrt> for &'a QAdjSqrt {
    type Output = QAdjSqrt;
    fn add(self, o: &QAdjSqrt) -> QAdjSqrt {
        QAdjSqrt { a: &self.a + &o.a, b: &self.b + &o.b, q: self.radicand(o) }
    }
}

impl Add for QAdjSqrt {
    type Output = QAdjSqrt;
    fn add(self, o: QAdjSqrt) -> QAdjSqrt {
        &self + &o
    }
}

impl AddAssign<&QAdjSqrt> for QAdjSqrt {
    fn add_assign(&mut self, o: &QAdjSqrt) {
        self.q = self.radicand(o);
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl<'a> Sub<&'a QAdjSqrt> for &'a QAdjSqrt {
    type Output = QAdjSqrt;
    fn sub(self, o: &QAdjSqrt) -> QAdjSqrt {
        QAdjSqrt { a: &self.a - &o.a, b: &self.b - &o.b, q: self.radicand(o) }
    }
}

impl Sub for QAdjSqrt {
    type Output = QAdjSqrt;
    fn sub(self, o: QAdjSqrt) -> QAdjSqrt {
        &self - &o
    }
}

impl<'a> Mul<&'a QAdjSqrt> for &'a QAdjSqrt {
    type Output = QAdjSqrt;
    fn mul(self, o: &QAdjSqrt) -> QAdjSqrt {
        let q = self.radicand(o);
        let qq = Q::from_integer(BigInt::from(q));
        QAdjSqrt {
            a: &self.a * &o.a + &self.b * &o.b * qq,
            b: &self.a * &o.b + &self.b * &o.a,
            q,
        }
    }
}

impl Mul for QAdjSqrt {
    type Output = QAdjSqrt;
    fn mul(self, o: QAdjSqrt) -> QAdjSqrt {
        &self * &o
    }
}

impl Neg for QAdjSqrt {
    type Output = QAdjSqrt;
    fn neg(self) -> QAdjSqrt {
        QAdjSqrt { a: -self.a, b: -self.b, q: self.q }
    }
}

impl fmt::Display for QAdjSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", rational::to_string(&self.a))
        } else {
            write!(f, "{}+{}*sqrt({})", rational::to_string(&self.a), rational::to_string(&self.b), self.q)
        }
    }
}

impl FromStr for QAdjSqrt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        match s.find("*sqrt(") {
            None => Ok(QAdjSqrt::rational(rational::parse(s)?)),
            Some(pos) => {
                let head = &s[..pos];
                let q: u64 = s[pos + 6..]
                    .trim_end_matches(')')
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad radicand in `{s}`")))?;
                // head = "a/b+c/d", split at the '+' that follows the first rational
                let split = head[1..]
                    .find('+')
                    .map(|i| i + 1)
                    .ok_or_else(|| Error::Parse(format!("bad Q(√q) value `{s}`")))?;
                let a = rational::parse(&head[..split])?;
                let b = rational::parse(&head[split + 1..])?;
                Ok(QAdjSqrt { a, b, q })
            }
        }
    }
}

impl Serialize for QAdjSqrt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QAdjSqrt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    #[test]
    fn sqrt_squares_to_q() {
        let r = QAdjSqrt::sqrt_q(3);
        assert_eq!(&r * &r, QAdjSqrt::rational(rational::q_int(3)));
    }

    #[test]
    fn half_powers() {
        assert_eq!(QAdjSqrt::q_half_power(3, -1).b, q_frac(1, 3));
        assert_eq!(QAdjSqrt::q_half_power(3, -2).a, q_frac(1, 3));
        assert_eq!(QAdjSqrt::q_half_power(3, 3).b, rational::q_int(3));
    }

    #[test]
    fn string_roundtrip() {
        let x = QAdjSqrt::new(q_frac(-1, 2), q_frac(-7, 3), 5);
        assert_eq!(x.to_string().parse::<QAdjSqrt>().unwrap(), x);
        let y = QAdjSqrt::rational(q_frac(2, 3));
        assert_eq!(y.to_string().parse::<QAdjSqrt>().unwrap(), y);
    }

    #[test]
    fn comparison() {
        // 1 - √3/3 ≈ 0.42
        let x = QAdjSqrt::new(rational::q_int(1), q_frac(-1, 3), 3);
        assert!(x.le_rational(&q_frac(1, 2)));
        assert!(!x.le_rational(&q_frac(2, 5)));
    }
}
