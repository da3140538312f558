//! Congruences for N̄(r,t;n) checked against exact residue tables.
//!
//! Nothing here proves anything: [`verify_claim`] checks a claim up to a
//! bound and [`scan_progressions`] searches for progressions that survive
//! such a check, labelling every hit [`Status::Empirical`].
//!
//! ```
//! use congruence_lab::{twist_restrict, legendre};
//!
//! let seq: Vec<i64> = (0..10).collect();
//! assert_eq!(twist_restrict(&seq, 5), vec![0, 0, 2, 3, 0, 0, 0, 7, 8, 0]);
//! assert_eq!(legendre(-2, 5), -1);
//! ```

mod claims;
mod deficiency;

pub use claims::{
    decomposition_holds, scan_progressions, verify_claim, verify_prime_template, ClaimReport, CongruenceClaim,
    Counterexample, PrimeTemplateReport, Status,
};
pub use deficiency::{deficiency_series, rank_difference, RankDifferenceSeries};

use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CongruenceError {
    #[error("table covers n ≤ {have} but n = {wanted} is needed")]
    InsufficientTable { wanted: usize, have: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Legendre symbol (a/p) for an odd prime p, by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> i8 {
    assert!(p > 2 && is_prime(p), "{p} is not an odd prime");
    let p = p as u128;
    let a = (a as i128).rem_euclid(p as i128) as u128;
    if a == 0 {
        return 0;
    }
    let (mut base, mut e, mut acc) = (a, (p - 1) / 2, 1u128);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// Keep a(n) only where (−n/ℓ) = −1; every other coefficient becomes zero.
pub fn twist_restrict<C: Clone + Zero>(seq: &[C], ell: u64) -> Vec<C> {
    seq.iter()
        .enumerate()
        .map(|(n, a)| if legendre(-(n as i64), ell) == -1 { a.clone() } else { C::zero() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_small() {
        let qr7: Vec<i8> = (0..7).map(|a| legendre(a, 7)).collect();
        assert_eq!(qr7, [0, 1, 1, -1, 1, -1, -1]);
        assert!(is_prime(101) && !is_prime(91) && !is_prime(1));
    }
}
