//! Counting and enumeration of binary necklaces, bracelets, aperiodic
//! necklaces and Lyndon words.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Euler's totient, by trial division.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut phi = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// The Möbius function: 0 on non-squarefree numbers, otherwise
/// `(-1)^(number of prime factors)`.
pub fn moebius(mut n: u64) -> i8 {
    if n == 0 {
        return 0;
    }
    let mut factors = 0u32;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            factors += 1;
        }
        p += 1;
    }
    if n > 1 {
        factors += 1;
    }
    if factors.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

fn require_positive(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::Parse("counting requires n >= 1".into()))
    } else {
        Ok(())
    }
}

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

/// MacMahon's count of binary necklaces of length `n`:
/// `(1/n) sum_{d|n} phi(d) 2^{n/d}`. The equivalent gcd form
/// `(1/n) sum_j 2^{gcd(j,n)}` is evaluated as well and the two are checked
/// against each other.
pub fn necklace_count(n: u64) -> Result<BigUint> {
    require_positive(n)?;
    let mut by_phi = BigUint::zero();
    for d in divisors(n) {
        by_phi += BigUint::from(euler_phi(d)) * pow2(n / d);
    }
    let (q, r) = num_integer::div_rem(by_phi, BigUint::from(n));
    assert!(r.is_zero(), "necklace count must divide evenly");

    let mut by_gcd = BigUint::zero();
    for j in 1..=n {
        by_gcd += pow2(num_integer::gcd(j, n));
    }
    assert_eq!(&by_gcd, &(&q * n), "the two necklace formulas disagree");
    Ok(q)
}

/// Bracelets of length `n`: `N(n)/2 + 3/4 * 2^{n/2}` for even `n` and
/// `N(n)/2 + 1/2 * 2^{(n+1)/2}` for odd `n`.
pub fn bracelet_count(n: u64) -> Result<BigUint> {
    let necklaces = necklace_count(n)?;
    // scaled by 8 to stay integral: 8B = 4N + 6*2^{n/2} (even), 4N + 4*2^{(n+1)/2} (odd)
    let correction = if n.is_multiple_of(2) {
        BigUint::from(3u8) * pow2(n / 2 + 1)
    } else {
        pow2(n.div_ceil(2) + 2)
    };
    let (q, r) = num_integer::div_rem(BigUint::from(4u8) * necklaces + correction, 8u8.into());
    assert!(r.is_zero(), "bracelet count must divide evenly");
    Ok(q)
}

/// Aperiodic necklaces (equivalently Lyndon words) of length `n`:
/// `(1/n) sum_{d|n} mu(d) 2^{n/d}`.
pub fn aperiodic_count(n: u64) -> Result<BigUint> {
    require_positive(n)?;
    let mut plus = BigUint::zero();
    let mut minus = BigUint::zero();
    for d in divisors(n) {
        match moebius(d) {
            1 => plus += pow2(n / d),
            -1 => minus += pow2(n / d),
            _ => {}
        }
    }
    let (q, r) = num_integer::div_rem(plus - minus, BigUint::from(n));
    assert!(r.is_zero(), "aperiodic count must divide evenly");
    Ok(q)
}

/// Duval's generator: all binary Lyndon words of length at most `max_len`,
/// in lexicographic order, with constant memory per step.
pub struct LyndonWords {
    current: Vec<u8>,
    max_len: usize,
    started: bool,
}

pub fn lyndon_words(max_len: usize) -> LyndonWords {
    LyndonWords {
        current: Vec::new(),
        max_len,
        started: false,
    }
}

impl Iterator for LyndonWords {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.max_len == 0 {
            return None;
        }
        if !self.started {
            self.started = true;
            self.current = vec![0];
            return Some(self.current.clone());
        }
        // repeat the current word up to the length bound, then increment
        // the last non-maximal symbol
        let m = self.current.len();
        let mut next = Vec::with_capacity(self.max_len);
        for i in 0..self.max_len {
            next.push(self.current[i % m]);
        }
        while next.last() == Some(&1) {
            next.pop();
        }
        let last = next.last_mut()?;
        *last = 1;
        self.current = next;
        Some(self.current.clone())
    }
}

/// Collected Duval output; prefer the iterator for large bounds.
pub fn lyndon_enumerate(max_len: usize) -> Vec<Vec<u8>> {
    lyndon_words(max_len).collect()
}
