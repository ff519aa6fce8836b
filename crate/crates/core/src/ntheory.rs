//! Exact modular arithmetic and prime utilities.
//!
//! Everything here is plain 64-bit signed integer arithmetic. Moduli in this
//! crate are small (pattern sizes up to a few thousand), so intermediate
//! products stay far below the `i64` range and all results are exact.

use crate::error::{Error, Result};

/// A validated modulus (pattern size `M`, or a prime `P`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Modulus(i64);

impl Modulus {
    /// Wraps `m`, requiring `m >= 2`.
    pub fn new(m: i64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Self(m))
    }

    /// Wraps `m`, additionally requiring it to be prime.
    pub fn new_prime(m: i64) -> Result<Self> {
        if !is_prime(m) {
            return Err(Error::NotPrime(m));
        }
        Self::new(m)
    }

    pub fn get(self) -> i64 {
        self.0
    }
}

/// Mathematical modulo: result is in `[0, m)` even for negative `a`.
pub fn mod_reduce(a: i64, m: Modulus) -> i64 {
    a.rem_euclid(m.get())
}

/// Multiplicative inverse of `a` modulo `m`, via the extended Euclidean
/// algorithm. Fails for zero or non-coprime residues so that composite
/// moduli misused as primes are caught loudly.
pub fn inv_mod(a: i64, m: Modulus) -> Result<i64> {
    let modulus = m.get();
    let a0 = mod_reduce(a, m);
    if a0 == 0 {
        return Err(Error::ZeroOrNonInvertible { value: a, modulus });
    }
    // Invariant: old_r = old_s * a0 (mod modulus)
    let (mut old_r, mut r) = (a0, modulus);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::ZeroOrNonInvertible { value: a, modulus });
    }
    Ok(mod_reduce(old_s, m))
}

/// Trial-division primality test.
pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut i = 5;
    while i * i <= n {
        if n % i == 0 || n % (i + 2) == 0 {
            return false;
        }
        i += 6;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn smallest_prime_above(n: i64) -> i64 {
    let mut candidate = n.max(1) + 1;
    while !is_prime(candidate) {
        candidate += 1;
    }
    candidate
}

/// Maps a residue `v` in `[0, m)` to the signed representative in
/// `[-(m-1)/2, (m-1)/2]`. Requires odd `m`.
pub fn center_signed(v: i64, m: Modulus) -> i64 {
    let modulus = m.get();
    assert!(modulus % 2 == 1, "center_signed requires an odd modulus");
    assert!(
        (0..modulus).contains(&v),
        "residue {v} out of [0, {modulus})"
    );
    if v > (modulus - 1) / 2 {
        v - modulus
    } else {
        v
    }
}
