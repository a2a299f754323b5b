//! Polynomials over F_q and the quadratic residue symbol.

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};

use serde::{Deserialize, Serialize};

use super::field::Field;
use crate::error::{Error, Result};

/// Coefficients ascending, as field-element indices; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FqPoly {
    coeffs: Vec<u32>,
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl FqPoly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        trim(&mut coeffs);
        FqPoly { coeffs }
    }

    pub fn zero() -> Self {
        FqPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: u32) -> Self {
        FqPoly::new(vec![c])
    }

    pub fn x() -> Self {
        FqPoly { coeffs: vec![0, 1] }
    }

    /// The monic polynomial of degree n whose lower coefficients are the base-q
    /// digits of `index`.
    pub fn monic_from_index(q: u32, n: usize, mut index: u64) -> Self {
        let mut c = Vec::with_capacity(n + 1);
        for _ in 0..n {
            c.push((index % q as u64) as u32);
            index /= q as u64;
        }
        c.push(1);
        FqPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with −1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, o: &Self, f: &Field) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| f.add(self.coeffs.get(i).copied().unwrap_or(0), o.coeffs.get(i).copied().unwrap_or(0)))
            .collect();
        FqPoly::new(c)
    }

    pub fn sub(&self, o: &Self, f: &Field) -> Self {
        self.add(&o.scale(f.neg(1), f), f)
    }

    pub fn scale(&self, c: u32, f: &Field) -> Self {
        FqPoly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, o: &Self, f: &Field) -> Self {
        if self.is_zero() || o.is_zero() {
            return FqPoly::zero();
        }
        let mut c = vec![0u32; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        FqPoly::new(c)
    }

    /// (quotient, remainder). Panics on division by zero.
    pub fn divrem(&self, m: &Self, f: &Field) -> (Self, Self) {
        assert!(!m.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dm = m.coeffs.len() - 1;
        if r.len() <= dm {
            return (FqPoly::zero(), self.clone());
        }
        let li = f.inv(m.leading());
        let mut q = vec![0u32; r.len() - dm];
        for top in (dm..r.len()).rev() {
            let c = f.mul(r[top], li);
            if c == 0 {
                continue;
            }
            q[top - dm] = c;
            let nc = f.neg(c);
            for (j, &mj) in m.coeffs.iter().enumerate() {
                let k = top - dm + j;
                r[k] = f.add(r[k], f.mul(nc, mj));
            }
        }
        (FqPoly::new(q), FqPoly::new(r))
    }

    pub fn rem(&self, m: &Self, f: &Field) -> Self {
        self.divrem(m, f).1
    }

    pub fn monic(&self, f: &Field) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(f.inv(self.leading()), f)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self, f: &Field) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &Field) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(a, f.from_prime(i as u64)))
            .collect();
        FqPoly::new(c)
    }

    pub fn eval(&self, x: u32, f: &Field) -> u32 {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Coefficients mapped through `embed` into a larger field.
    pub fn map_coeffs(&self, embed: &[u32]) -> Vec<u32> {
        self.coeffs.iter().map(|&c| embed[c as usize]).collect()
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Gcd with the derivative is a unit. Valid in odd characteristic.
pub fn is_squarefree(d: &FqPoly, f: &Field) -> bool {
    if d.is_zero() {
        return false;
    }
    d.gcd(&d.derivative(f), f).degree() == 0
}

static FLIP_RECIPROCITY: AtomicBool = AtomicBool::new(false);

/// Fault injection for negative-control runs: inverts the reciprocity sign.
#[doc(hidden)]
pub fn inject_reciprocity_fault(on: bool) {
    FLIP_RECIPROCITY.store(on, Ordering::SeqCst);
}

/// Reusable buffers for repeated symbol evaluations.
#[derive(Default)]
pub struct JacobiScratch {
    a: Vec<u32>,
    b: Vec<u32>,
}

/// In place: a ← a mod b with b monic.
fn reduce(a: &mut Vec<u32>, b: &[u32], f: &Field) {
    let db = b.len() - 1;
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top];
        if c != 0 {
            let nc = f.neg(c);
            let base = top - db;
            for (j, &bj) in b.iter().enumerate().take(db) {
                if bj != 0 {
                    a[base + j] = f.add(a[base + j], f.mul(nc, bj));
                }
            }
        }
        a.pop();
        trim(a);
    }
}

impl JacobiScratch {
    /// The symbol (d/m) for nonconstant m; non-monic m is replaced by its monic
    /// associate.
    pub fn symbol(&mut self, d: &[u32], m: &[u32], f: &Field) -> Result<i32> {
        let flip_sign = FLIP_RECIPROCITY.load(Ordering::Relaxed);
        let q_half_odd = (f.size() as u64 - 1) / 2 % 2 == 1;
        self.a.clear();
        self.a.extend_from_slice(d);
        trim(&mut self.a);
        self.b.clear();
        self.b.extend_from_slice(m);
        trim(&mut self.b);
        if self.b.len() < 2 {
            return Err(Error::ConstantModulus);
        }
        let lb = *self.b.last().unwrap();
        if lb != 1 {
            let inv = f.inv(lb);
            for c in self.b.iter_mut() {
                *c = f.mul(*c, inv);
            }
        }
        let mut res = 1i32;
        loop {
            reduce(&mut self.a, &self.b, f);
            if self.a.is_empty() {
                return Ok(0);
            }
            let deg_b = self.b.len() - 1;
            let la = *self.a.last().unwrap();
            // (c/P) = c^{((q−1)/2)·deg P}
            if deg_b % 2 == 1 {
                res *= f.chi(la);
            }
            let deg_a = self.a.len() - 1;
            if deg_a == 0 {
                return Ok(res);
            }
            if la != 1 {
                let inv = f.inv(la);
                for c in self.a.iter_mut() {
                    *c = f.mul(*c, inv);
                }
            }
            // (a/b) = (−1)^{((q−1)/2)·deg a·deg b} (b/a) for monic a, b
            let mut neg = q_half_odd && deg_a % 2 == 1 && deg_b % 2 == 1;
            if flip_sign {
                neg = !neg;
            }
            if neg {
                res = -res;
            }
            std::mem::swap(&mut self.a, &mut self.b);
        }
    }
}

pub fn jacobi_symbol(d: &FqPoly, m: &FqPoly, f: &Field) -> Result<i32> {
    JacobiScratch::default().symbol(d.coeffs(), m.coeffs(), f)
}
