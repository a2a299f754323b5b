//! Reference computations for the acceptance suite. They only take the
//! L-polynomial of a curve and plain rationals as input, so they do not share
//! any code path with the power-sum and character machinery they check.

use num_bigint::BigInt;
use num_traits::Zero;

use hyperstab::{Partition, Q};

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// q^e for any integer e.
pub fn qpow(q: u64, e: i64) -> Q {
    let b = Q::from_integer(BigInt::from(q));
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        num_traits::pow(b.recip(), (-e) as usize)
    }
}

/// h_k(Θ_d) for k ≤ m from Σ h_k t^k = 1/𝓛(t).
pub fn h_from_l(l: &[i64], m: usize) -> Vec<i128> {
    let mut h = vec![0i128; m + 1];
    h[0] = 1;
    for k in 1..=m {
        h[k] = -(1..=k.min(l.len() - 1)).map(|i| l[i] as i128 * h[k - i]).sum::<i128>();
    }
    h
}

/// Cofactor expansion, fine for the 4×4 matrices used here.
pub fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Jacobi–Trudi: s_λ = det(h_{λ_i − i + j}).
pub fn schur_jt(lambda: &Partition, h: &[i128]) -> i128 {
    let l = lambda.length();
    let m: Vec<Vec<i128>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let k = lambda.part(i) as i64 - i as i64 + j as i64;
                    if k < 0 {
                        0
                    } else {
                        h[k as usize]
                    }
                })
                .collect()
        })
        .collect();
    det(&m)
}

/// (a, b) with a + b√q = 𝓛(q^{−1/2}).
pub fn central_from_frobenius(q: u64, l: &[i64]) -> (Q, Q) {
    let (mut a, mut b) = (Q::zero(), Q::zero());
    for (i, &c) in l.iter().enumerate() {
        let i = i as i64;
        if i % 2 == 0 {
            a += qi(c) * qpow(q, -i / 2);
        } else {
            b += qi(c) * qpow(q, -(i + 1) / 2);
        }
    }
    (a, b)
}

/// Product in Q(√q) on (rational, √q) pairs.
pub fn mul_sqrt(x: &(Q, Q), y: &(Q, Q), q: u64) -> (Q, Q) {
    (&x.0 * &y.0 + &x.1 * &y.1 * qi(q as i64), &x.0 * &y.1 + &x.1 * &y.0)
}
