use crate::error::{Error, Result};

/// Deterministic primality by trial division; inputs are desk-scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_odd_prime(p: u64) -> Result<()> {
    if p > 2 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo the prime `p`, by Fermat.
pub fn mod_inv(a: u64, p: u64) -> Result<u64> {
    if a % p == 0 {
        return Err(Error::NotInvertible(p));
    }
    Ok(mod_pow(a, p - 2, p))
}

pub fn reduce(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

/// `(a/p)` by Euler's criterion `a^((p−1)/2) mod p`.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i8> {
    check_odd_prime(p)?;
    Ok(legendre_unchecked(reduce(a, p), p))
}

pub(crate) fn legendre_unchecked(a: u64, p: u64) -> i8 {
    match mod_pow(a % p, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}
