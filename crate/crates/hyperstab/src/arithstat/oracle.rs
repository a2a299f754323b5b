//! Brute-force main term: a direct sum over tuples of monic polynomials whose
//! product is a square, weighted by the local densities of squarefree d.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ffcurves::{monic_count, FqContext, FqPoly};
use crate::rational::{pow_i, q_int, Q};

/// Monic irreducibles over F_q of degree 1..=max_deg, by sieving.
pub fn irreducibles(ctx: &FqContext, max_deg: usize) -> Result<Vec<FqPoly>> {
    let f = ctx.field();
    let mut out: Vec<FqPoly> = Vec::new();
    for n in 1..=max_deg {
        for idx in 0..monic_count(ctx.q(), n)? {
            let c = FqPoly::monic_from_index(ctx.q(), n, idx);
            let composite =
                out.iter().take_while(|p| 2 * p.degree() <= n as i64).any(|p| c.rem(p, f).is_zero());
            if !composite {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Σ over tuples (f_1, …, f_k) of monic f_i with deg f_i = μ_i and Π f_i a
/// square, of (1 − 1/q) Π_{P | Π f_i} (1 + q^{−deg P})⁻¹.
pub fn mainterm_oracle(ctx: &FqContext, composition: &[u32]) -> Result<Q> {
    let q = ctx.q();
    let f = ctx.field();
    let total: usize = composition.iter().map(|&m| m as usize).sum();
    if total > 12 {
        return Err(Error::InvalidInput(format!("composition of weight {total} is too large to enumerate")));
    }
    let irr = irreducibles(ctx, total.max(1))?;
    let counts: Vec<u64> = composition.iter().map(|&m| monic_count(q, m as usize)).collect::<Result<_>>()?;
    let n_tuples: u64 = counts.iter().product();
    let qq = q_int(q as i64);
    let mut acc = Q::zero();
    for mut t in 0..n_tuples {
        let mut prod = FqPoly::constant(1);
        for (&m, &c) in composition.iter().zip(&counts) {
            prod = prod.mul(&FqPoly::monic_from_index(q, m as usize, t % c), f);
            t /= c;
        }
        let mut weight = Q::one();
        let mut square = true;
        for p in &irr {
            if prod.degree() == 0 {
                break;
            }
            let mut e = 0;
            loop {
                let (quo, r) = prod.divrem(p, f);
                if !r.is_zero() {
                    break;
                }
                prod = quo;
                e += 1;
            }
            if e % 2 == 1 {
                square = false;
                break;
            }
            if e > 0 {
                weight /= Q::one() + pow_i(&qq, -p.degree());
            }
        }
        if square {
            acc += weight;
        }
    }
    Ok(acc * (Q::one() - qq.recip()))
}
