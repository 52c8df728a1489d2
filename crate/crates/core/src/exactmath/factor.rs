use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modular::{is_prime_u64, primes_up_to};
use crate::error::{Error, Result};

/// Work limits for [`factor_bounded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorEffort {
    /// Trial division by every prime up to this bound.
    pub trial_bound: u64,
    /// Iteration cap per Pollard-rho attempt.
    pub rho_iterations: u64,
    /// Number of rho attempts (polynomials `x^2 + c`, `c = 1, 2, ...`).
    pub rho_attempts: u32,
}

impl Default for FactorEffort {
    fn default() -> Self {
        Self { trial_bound: 1_000_000, rho_iterations: 200_000, rho_attempts: 8 }
    }
}

/// `±∏ p^e` with every `p` passing [`is_probable_prime`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Factorization {
    pub negative: bool,
    /// Sorted by prime.
    pub primes: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn value(&self) -> BigInt {
        let v: BigInt = self.primes.iter().map(|(p, e)| num_traits::pow(p.clone(), *e as usize)).product();
        if self.negative { -v } else { v }
    }
}

/// Outcome of a bounded factorization attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factored {
    Complete(Factorization),
    /// `n = known.value() * cofactor`; the cofactor is composite and could
    /// not be split within the effort budget.
    Partial { known: Factorization, cofactor: BigInt },
}

impl Factored {
    pub fn is_complete(&self) -> bool {
        matches!(self, Factored::Complete(_))
    }
}

/// Factors `n` within `effort`: trial division, then Brent's variant of
/// Pollard rho with deterministic starting values.
pub fn factor_bounded(n: &BigInt, effort: &FactorEffort) -> Result<Factored> {
    if n.is_zero() {
        return Err(Error::ZeroValue(0));
    }
    let negative = n.is_negative();
    let mut rest = n.abs();
    let mut found: Vec<BigInt> = Vec::new();

    if rest.bits() <= 64 && effort.trial_bound >= 2 {
        // Square root bound makes the sieve cheap for small inputs.
        let r = rest.sqrt().to_u64().unwrap_or(u64::MAX).min(effort.trial_bound);
        trial_divide(&mut rest, &primes_up_to(r), &mut found);
    } else {
        trial_divide(&mut rest, &primes_up_to(effort.trial_bound), &mut found);
    }

    let mut stack = vec![rest];
    let mut stubborn = BigInt::one();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            found.push(m);
            continue;
        }
        if let Some(r) = perfect_power(&m) {
            stack.extend(std::iter::repeat(r.0).take(r.1 as usize));
            continue;
        }
        match (1..=effort.rho_attempts as u64).find_map(|c| brent_rho(&m, c, effort.rho_iterations)) {
            Some(d) => {
                let q = &m / &d;
                stack.push(d);
                stack.push(q);
            }
            None => stubborn *= m,
        }
    }

    found.sort();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    for p in found {
        match primes.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => primes.push((p, 1)),
        }
    }
    let known = Factorization { negative, primes };
    Ok(if stubborn.is_one() {
        Factored::Complete(known)
    } else {
        Factored::Partial { known, cofactor: stubborn }
    })
}

fn trial_divide(rest: &mut BigInt, primes: &[u64], found: &mut Vec<BigInt>) {
    for &p in primes {
        if rest.is_one() {
            break;
        }
        if rest.bits() <= 64 && p.checked_mul(p).is_some_and(|sq| BigInt::from(sq) > *rest) {
            break;
        }
        let bp = BigInt::from(p);
        while (&*rest % p).is_zero() {
            *rest /= &bp;
            found.push(bp.clone());
        }
    }
}

/// `(r, k)` with `r^k = m`, `k ≥ 2` maximal among small exponents tried.
fn perfect_power(m: &BigInt) -> Option<(BigInt, u32)> {
    let max_k = m.bits() as u32;
    (2..=max_k.min(64)).rev().find_map(|k| {
        let r = m.nth_root(k);
        (num_traits::pow(r.clone(), k as usize) == *m && r > BigInt::one()).then_some((r, k))
    })
}

fn brent_rho(n: &BigInt, c: u64, cap: u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let c = BigInt::from(c);
    let step = |x: &BigInt| (x * x + &c) % n;
    let mut y = BigInt::from(2);
    let mut x;
    let mut ys;
    let mut q = BigInt::one();
    let mut g;
    let mut r: u64 = 1;
    let batch: u64 = 128;
    let mut iters: u64 = 0;
    loop {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        loop {
            ys = y.clone();
            for _ in 0..batch.min(r - k) {
                y = step(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += batch;
            iters += batch;
            if k >= r || !g.is_one() || iters > cap {
                break;
            }
        }
        r *= 2;
        if !g.is_one() || iters > cap {
            break;
        }
    }
    if g == *n {
        // Backtrack one step at a time from the last saved point.
        loop {
            ys = step(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (!g.is_one() && g != *n).then_some(g)
}

/// Primality test: deterministic Miller-Rabin below 2^64, Baillie-PSW
/// (Miller-Rabin base 2 plus a strong Lucas test) above.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n.sign() != num_bigint::Sign::Plus {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for p in primes_up_to(1000) {
        if (n % p).is_zero() {
            return false;
        }
    }
    miller_rabin(n, &BigInt::from(2)) && strong_lucas(n)
}

fn miller_rabin(n: &BigInt, a: &BigInt) -> bool {
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() { t } else { 0 }
}

fn strong_lucas(n: &BigInt) -> bool {
    let r = n.sqrt();
    if &r * &r == *n {
        return false;
    }
    // Selfridge: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    let mut d: i64 = 5;
    loop {
        match jacobi(&BigInt::from(d), n) {
            -1 => break,
            0 if BigInt::from(d.abs()) != *n => return false,
            _ => d = if d > 0 { -(d + 2) } else { -d + 2 },
        }
    }
    let dd = BigInt::from(d);
    let q = BigInt::from((1 - d) / 4);
    let half = |v: BigInt| -> BigInt {
        let v = v.mod_floor(n);
        if v.is_even() { v >> 1 } else { (v + n) >> 1 }
    };
    let np1 = n + 1u32;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;
    let (mut u, mut v, mut qk) = (BigInt::one(), BigInt::one(), q.mod_floor(n));
    for i in (0..k.bits() - 1).rev() {
        u = (&u * &v).mod_floor(n);
        v = (&v * &v - &qk * 2u32).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if k.bit(i) {
            let nu = half(&u + &v);
            let nv = half(&dd * &u + &v);
            u = nu;
            v = nv;
            qk = (&qk * &q).mod_floor(n);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * 2u32).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if v.is_zero() {
            return true;
        }
    }
    false
}
