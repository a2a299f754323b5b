//! Symmetric group characters by the Murnaghan–Nakayama rule on beta-numbers.

use std::collections::HashMap;
use std::sync::RwLock;

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::partition::Partition;

static CACHE: Lazy<RwLock<HashMap<(Partition, Partition), i64>>> = Lazy::new(Default::default);

/// χ^λ(ρ).
pub fn sn_character(lambda: &Partition, rho: &Partition) -> Result<i64> {
    if lambda.weight() != rho.weight() {
        return Err(Error::SizeMismatch(lambda.weight(), rho.weight()));
    }
    Ok(character(lambda, rho))
}

pub(crate) fn character(lambda: &Partition, rho: &Partition) -> i64 {
    if rho.is_empty() {
        return 1;
    }
    if lambda.length() <= 1 {
        return 1;
    }
    let key = (lambda.clone(), rho.clone());
    if let Some(&v) = CACHE.read().unwrap().get(&key) {
        return v;
    }
    // strip the largest cycle; the rest of ρ stays sorted
    let k = rho.parts()[0];
    let rest = Partition::from_unsorted(rho.parts()[1..].to_vec());
    let l = lambda.length();
    let beta: Vec<i64> = (0..l).map(|i| lambda.parts()[i] as i64 + (l - 1 - i) as i64).collect();
    let mut total = 0i64;
    for i in 0..l {
        let nb = beta[i] - k as i64;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        // rim hook height = number of beta-numbers strictly between nb and beta[i]
        let between = beta.iter().filter(|&&b| b > nb && b < beta[i]).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nbeta = beta.clone();
        nbeta[i] = nb;
        nbeta.sort_unstable_by(|a, b| b.cmp(a));
        let m = nbeta.len();
        let parts: Vec<u32> = nbeta.iter().enumerate().map(|(j, &b)| (b - (m - 1 - j) as i64) as u32).collect();
        let mu = Partition::from_unsorted(parts);
        total += sign * character(&mu, &rest);
    }
    CACHE.write().unwrap().insert(key, total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(sn_character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(sn_character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert_eq!(sn_character(&p(&[2, 1]), &p(&[2, 1])).unwrap(), 0);
        assert_eq!(sn_character(&p(&[4]), &p(&[2, 1, 1])).unwrap(), 1);
        assert_eq!(sn_character(&p(&[1, 1, 1]), &p(&[2, 1])).unwrap(), -1);
        assert_eq!(sn_character(&p(&[3, 2]), &p(&[1, 1, 1, 1, 1])).unwrap(), 5);
        assert!(sn_character(&p(&[2]), &p(&[1])).is_err());
    }
}
