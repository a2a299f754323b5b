//! Change-of-basis matrices between the power sums and the other bases, one
//! homogeneous degree at a time.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use super::Basis;
use crate::partition::{partition_index, partitions_of, Partition};
use crate::rational::{q_big, q_int, Q};
use crate::repchar::characters::character;

/// Rows of `to_power` give basis elements in power sums; rows of `from_power`
/// give power sums in the basis. Both are indexed by `partitions_of(n)`.
pub struct Transition {
    pub to_power: Vec<Vec<(usize, Q)>>,
    pub from_power: Vec<Vec<(usize, Q)>>,
}

static CACHE: Lazy<RwLock<HashMap<(Basis, usize), Arc<Transition>>>> = Lazy::new(Default::default);

pub fn transition(basis: Basis, n: usize) -> Arc<Transition> {
    if let Some(t) = CACHE.read().unwrap().get(&(basis, n)) {
        return t.clone();
    }
    let t = Arc::new(build(basis, n));
    CACHE.write().unwrap().insert((basis, n), t.clone());
    t
}

fn sparse(rows: Vec<Vec<Q>>) -> Vec<Vec<(usize, Q)>> {
    rows.into_iter()
        .map(|r| r.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
        .collect()
}

fn build(basis: Basis, n: usize) -> Transition {
    let parts = partitions_of(n);
    let k = parts.len();
    match basis {
        Basis::PowerSum => {
            let id: Vec<Vec<Q>> =
                (0..k).map(|i| (0..k).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
            Transition { to_power: sparse(id.clone()), from_power: sparse(id) }
        }
        Basis::Schur => {
            let z: Vec<Q> = parts.iter().map(|r| q_big(r.z())).collect();
            let mut to = vec![vec![Q::zero(); k]; k];
            let mut from = vec![vec![Q::zero(); k]; k];
            for (i, lam) in parts.iter().enumerate() {
                for (j, rho) in parts.iter().enumerate() {
                    let c = q_int(character(lam, rho));
                    to[i][j] = &c / &z[j];
                    from[j][i] = c;
                }
            }
            Transition { to_power: sparse(to), from_power: sparse(from) }
        }
        Basis::Complete | Basis::Elementary => {
            let to: Vec<Vec<Q>> = parts
                .iter()
                .map(|lam| {
                    let mut acc: HashMap<Partition, Q> = HashMap::from([(Partition::empty(), Q::one())]);
                    for &part in lam.parts() {
                        let factor = single_in_power(basis, part as usize);
                        let mut next = HashMap::new();
                        for (a, ca) in &acc {
                            for (b, cb) in &factor {
                                *next.entry(a.union(b)).or_insert_with(Q::zero) += ca * cb;
                            }
                        }
                        acc = next;
                    }
                    let mut row = vec![Q::zero(); k];
                    for (rho, c) in acc {
                        row[partition_index(&rho)] = c;
                    }
                    row
                })
                .collect();
            let from = invert(&to);
            Transition { to_power: sparse(to), from_power: sparse(from) }
        }
        Basis::Monomial => {
            // p_ρ = Σ_λ R[ρ][λ] m_λ, R[ρ][λ] = # ways to distribute the parts of ρ into
            // the rows of λ so that each row is filled exactly
            let from: Vec<Vec<Q>> = parts
                .iter()
                .map(|rho| parts.iter().map(|lam| q_int(distribute(rho.parts(), lam.parts()))).collect())
                .collect();
            let to = invert(&from);
            Transition { to_power: sparse(to), from_power: sparse(from) }
        }
    }
}

/// h_n or e_n in the power-sum basis: Σ_ρ (±1) p_ρ / z_ρ.
fn single_in_power(basis: Basis, n: usize) -> Vec<(Partition, Q)> {
    partitions_of(n)
        .iter()
        .map(|rho| {
            let mut c = Q::one() / q_big(rho.z());
            if basis == Basis::Elementary && rho.sign() < 0 {
                c = -c;
            }
            (rho.clone(), c)
        })
        .collect()
}

fn distribute(rho: &[u32], lam: &[u32]) -> i64 {
    fn rec(rho: &[u32], room: &mut Vec<u32>) -> i64 {
        match rho.split_first() {
            None => room.iter().all(|&r| r == 0) as i64,
            Some((&first, rest)) => {
                let mut total = 0;
                for i in 0..room.len() {
                    if room[i] >= first {
                        room[i] -= first;
                        total += rec(rest, room);
                        room[i] += first;
                    }
                }
                total
            }
        }
    }
    rec(rho, &mut lam.to_vec())
}

/// Gauss–Jordan inverse of an invertible rational matrix.
pub fn invert(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut inv: Vec<Vec<Q>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular transition matrix");
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    inv
}
