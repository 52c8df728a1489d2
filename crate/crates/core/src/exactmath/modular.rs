//! Word-sized modular arithmetic used for sieving and for exact-but-cheap
//! polynomial fingerprints.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::rational::Rational;

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `None` for zero.
pub fn invmod(a: u64, p: u64) -> Option<u64> {
    (a % p != 0).then(|| powmod(a, p - 2, p))
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes up to and including `bound` (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// A prime `p` together with a square root of -1 modulo `p` when one exists.
///
/// Reducing Q(i) modulo `p` needs the image of `i`; for `p ≡ 1 (mod 4)`
/// that image is a square root of -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Residue {
    pub p: u64,
    pub sqrt_minus_one: Option<u64>,
}

impl Residue {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime_u64(p));
        let sqrt_minus_one = (p % 4 == 1).then(|| {
            let mut g = 2;
            while powmod(g, (p - 1) / 2, p) != p - 1 {
                g += 1;
            }
            powmod(g, (p - 1) / 4, p)
        });
        Self { p, sqrt_minus_one }
    }

    pub fn int(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().unwrap_or(0)
    }

    pub fn rational(&self, v: &Rational) -> Option<u64> {
        let den = invmod(self.int(v.denom()), self.p)?;
        Some(mulmod(self.int(v.numer()), den, self.p))
    }
}

/// Fixed 61-bit primes congruent to 1 mod 4, largest first.
pub fn fingerprint_primes() -> &'static [Residue] {
    static PRIMES: OnceLock<Vec<Residue>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::new();
        let mut n = (1u64 << 61) - 3;
        while out.len() < 6 {
            if n % 4 == 1 && is_prime_u64(n) {
                out.push(Residue::new(n));
            }
            n -= 2;
        }
        out
    })
}
