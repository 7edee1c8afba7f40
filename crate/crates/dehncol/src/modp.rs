//! Arithmetic helpers for the small odd primes this crate works with.

use crate::error::{Error, Result};

/// Primes small enough for the exhaustive cocycle verification suite.
pub const VERIFY_PRIMES: [u64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_odd_prime(p: u64) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::NotAnOddPrime(p))
    }
}

/// (a * b) mod m without overflow for m up to 2^64-1.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    debug_assert!(m > 1);
    base %= m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of a mod p, p prime, a not divisible by p.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Canonical residue of a signed value.
pub fn residue(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

pub fn floor_log2(p: u64) -> u32 {
    63 - p.leading_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_primes() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_odd_prime(n)).collect();
        assert_eq!(primes, vec![3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(!is_odd_prime(2));
    }

    #[test]
    fn pow_and_inv() {
        assert_eq!(pow_mod(3, 7, 49), 31); // 3^7 = 2187 = 44*49 + 31
        for p in VERIFY_PRIMES {
            for a in 1..p {
                assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
            }
        }
    }

    #[test]
    fn pow_matches_naive() {
        for m in [7u64, 49, 31, 961] {
            for b in 0..m.min(40) {
                let mut naive = 1u64;
                for _ in 0..13 {
                    naive = mul_mod(naive, b, m);
                }
                assert_eq!(pow_mod(b, 13, m), naive);
            }
        }
    }

    #[test]
    fn log2_floors() {
        let expect = [
            (3, 1),
            (5, 2),
            (7, 2),
            (11, 3),
            (13, 3),
            (17, 4),
            (31, 4),
            (32, 5),
        ];
        for (p, e) in expect {
            assert_eq!(floor_log2(p), e);
        }
    }

    #[test]
    fn residues() {
        assert_eq!(residue(-1, 7), 6);
        assert_eq!(residue(-14, 7), 0);
        assert_eq!(residue(15, 7), 1);
    }
}
