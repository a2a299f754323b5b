//! Finite fields F_{p^k} of odd characteristic.
//!
//! An element is stored as the index Σ a_i p^i of its coordinate vector in the
//! basis 1, t, …, t^{k−1}, where t is a root of the field's modulus. Small fields
//! get full addition/multiplication tables, medium ones log/antilog tables.

use crate::error::{Error, Result};

const FULL_TABLES: u64 = 256;
const LOG_TABLES: u64 = 1 << 16;

/// Polynomials over F_p with coefficients in 0..p, ascending.
mod fp {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1 % p;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let li = inv(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * li % p;
            let shift = top - dm;
            for (j, mj) in m.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * mj % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// Ben-Or: f is irreducible iff gcd(f, x^{p^i} − x) = 1 for i ≤ deg f / 2.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let n = f.len() - 1;
        if n == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut xp = x.clone();
        for _ in 0..n / 2 {
            // xp ← xp^p mod f
            let mut acc = vec![1u64];
            let mut base = xp.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, f, p);
                }
                base = mulmod(&base, &base, f, p);
                e >>= 1;
            }
            xp = acc;
            let mut diff = xp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            if gcd(f, &diff, p).len() != 1 {
                return false;
            }
        }
        true
    }
}

pub fn odd_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 3 || q % 2 == 0 {
        return None;
    }
    let mut p = 3;
    while p * p <= q && q % p != 0 {
        p += 2;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Debug)]
pub struct Field {
    p: u32,
    degree: u32,
    size: u32,
    modulus: Vec<u32>,
    add_t: Vec<u32>,
    mul_t: Vec<u32>,
    log: Vec<u32>,
    /// exp[i] = g^i for i < 2(size − 1)
    exp: Vec<u32>,
}

impl Field {
    /// F_{p^k} with the smallest monic irreducible modulus (ordered by the index
    /// of its lower coefficients).
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        if p < 3 || odd_prime_power(p as u64) != Some((p as u64, 1)) {
            return Err(Error::UnsupportedField(format!("{p} is not an odd prime")));
        }
        let size = (p as u64).checked_pow(degree).filter(|s| *s < 1 << 32 && degree >= 1);
        let Some(size) = size else {
            return Err(Error::UnsupportedField(format!("{p}^{degree} is out of range")));
        };
        let pp = p as u64;
        let mut modulus = None;
        for idx in 0..size {
            let mut f: Vec<u64> = (0..degree).map(|i| idx / pp.pow(i) % pp).collect();
            f.push(1);
            if fp::is_irreducible(&f, pp) {
                modulus = Some(f.into_iter().map(|c| c as u32).collect::<Vec<u32>>());
                break;
            }
        }
        let mut field = Field {
            p,
            degree,
            size: size as u32,
            modulus: modulus.expect("irreducible polynomials exist in every degree"),
            add_t: Vec::new(),
            mul_t: Vec::new(),
            log: Vec::new(),
            exp: Vec::new(),
        };
        if size <= LOG_TABLES {
            field.build_log_tables();
        }
        if size <= FULL_TABLES {
            let n = size as usize;
            let (mut at, mut mt) = (vec![0; n * n], vec![0; n * n]);
            for a in 0..n {
                for b in 0..n {
                    at[a * n + b] = field.add_slow(a as u32, b as u32);
                    mt[a * n + b] = field.mul(a as u32, b as u32);
                }
            }
            field.add_t = at;
            field.mul_t = mt;
        }
        Ok(field)
    }

    fn build_log_tables(&mut self) {
        let order = self.size as u64 - 1;
        let factors = prime_factors(order);
        let g = (2..self.size)
            .find(|&g| factors.iter().all(|r| self.pow_slow(g, order / r) != 1))
            .unwrap_or(1);
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut log = vec![0u32; self.size as usize];
        let mut x = 1u32;
        for i in 0..order as u32 {
            exp.push(x);
            log[x as usize] = i;
            x = self.mul_slow(x, g);
        }
        exp.extend_from_within(..);
        self.exp = exp;
        self.log = log;
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn digits(&self, a: u32) -> Vec<u64> {
        let p = self.p as u64;
        let mut a = a as u64;
        let mut out = Vec::with_capacity(self.degree as usize);
        for _ in 0..self.degree {
            out.push(a % p);
            a /= p;
        }
        out
    }

    pub fn from_digits(&self, d: &[u64]) -> u32 {
        let p = self.p as u64;
        d.iter().rev().fold(0u64, |acc, &x| acc * p + x % p) as u32
    }

    /// Image of the prime-field element c.
    pub fn from_prime(&self, c: u64) -> u32 {
        (c % self.p as u64) as u32
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.degree {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let m: Vec<u64> = self.modulus.iter().map(|&c| c as u64).collect();
        let mut da = self.digits(a);
        let mut db = self.digits(b);
        fp::trim(&mut da);
        fp::trim(&mut db);
        self.from_digits(&fp::mulmod(&da, &db, &m, self.p as u64))
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let (mut r, mut b) = (1u32, a);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_slow(r, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        r
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if !self.add_t.is_empty() {
            return self.add_t[(a * self.size + b) as usize];
        }
        if self.degree == 1 {
            return (a + b) % self.p;
        }
        self.add_slow(a, b)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.degree == 1 {
            return (self.p - a) % self.p;
        }
        let d: Vec<u64> = self.digits(a).into_iter().map(|x| (self.p as u64 - x) % self.p as u64).collect();
        self.from_digits(&d)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if !self.mul_t.is_empty() {
            return self.mul_t[(a * self.size + b) as usize];
        }
        if a == 0 || b == 0 {
            return 0;
        }
        if self.degree == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        if !self.log.is_empty() {
            return self.exp[(self.log[a as usize] + self.log[b as usize]) as usize];
        }
        self.mul_slow(a, b)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut r, mut b) = (1u32, a);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        if !self.log.is_empty() {
            let n = self.size - 1;
            return self.exp[((n - self.log[a as usize]) % n) as usize];
        }
        self.pow(a, self.size as u64 - 2)
    }

    /// Quadratic character: 0, 1 or −1.
    #[inline]
    pub fn chi(&self, a: u32) -> i32 {
        if a == 0 {
            return 0;
        }
        if !self.log.is_empty() {
            return if self.log[a as usize] % 2 == 0 { 1 } else { -1 };
        }
        if self.pow(a, (self.size as u64 - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// Evaluates a polynomial over F_p (prime-field coefficients) at x.
    pub fn eval_prime_poly(&self, f: &[u32], x: u32) -> u32 {
        f.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), self.from_prime(c as u64)))
    }
}
