//! Exact p-adic valuation arithmetic.
//!
//! Every quantity that feeds a bound is a small integer (a multiple of the
//! rank at most), so plain `u64` is enough. Inputs above [`MAX_INPUT`] are
//! rejected with a panic: they indicate a caller bug, not a user error, since
//! the parser and CLI refuse such values up front.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper limit on every integer argument accepted by this module.
pub const MAX_INPUT: u64 = 1_000_000_000;

/// An odd prime `p`, the prime at which all spaces are localized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_INPUT {
            return Err(Error::PrimeTooLarge { p, max: MAX_INPUT });
        }
        if p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(OddPrime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// The α₁ dimension gap `2p - 2`.
    #[inline]
    pub fn q(self) -> u64 {
        2 * self.0 - 2
    }
}

impl TryFrom<u64> for OddPrime {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        OddPrime::new(p)
    }
}

impl From<OddPrime> for u64 {
    fn from(p: OddPrime) -> u64 {
        p.0
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// All odd primes `p` with `p <= limit`, ascending.
pub fn odd_primes_up_to(limit: u64) -> Vec<OddPrime> {
    (3..=limit)
        .step_by(2)
        .filter(|&n| is_prime(n))
        .map(OddPrime)
        .collect()
}

/// The exponent of `p` in `n`.
pub fn nu(p: OddPrime, n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::ZeroValuation);
    }
    let mut n = n;
    let mut e = 0;
    while n.is_multiple_of(p.0) {
        n /= p.0;
        e += 1;
    }
    Ok(e)
}

/// `ν_p(m!)` by Legendre's formula `Σ ⌊m/pⁱ⌋`.
pub fn nu_factorial(p: OddPrime, m: u64) -> u64 {
    assert!(m <= MAX_INPUT, "nu_factorial argument {m} out of range");
    let mut sum = 0;
    let mut pk = p.0;
    while pk <= m {
        sum += m / pk;
        pk = match pk.checked_mul(p.0) {
            Some(next) => next,
            None => break,
        };
    }
    sum
}

/// `a(a-1)/2`, clamped to 0 for `a < 2`.
pub fn choose2(a: i64) -> u64 {
    if a < 2 {
        0
    } else {
        let a = a as u64;
        a * (a - 1) / 2
    }
}
