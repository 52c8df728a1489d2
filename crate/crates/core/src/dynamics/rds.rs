use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::modular::primes_up_to;
use crate::poly::QPoly;

/// Outcome of a divisibility-sequence check; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityCheck {
    /// First `(m, n)` with `m | n` but `a_m ∤ a_n`.
    pub violation: Option<(usize, usize)>,
}

impl DivisibilityCheck {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// A prime whose valuation differs between two terms it divides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidViolation {
    pub p: u64,
    /// `(index, valuation)` of the first term `p` divides.
    pub first: (usize, u32),
    /// `(index, valuation)` of the first term disagreeing with it.
    pub conflict: (usize, u32),
}

/// Per-prime exponents `s_p` for the primes up to the bound that divide
/// some term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidCheck {
    pub exponents: BTreeMap<u64, u32>,
    pub violation: Option<RigidViolation>,
}

impl RigidCheck {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

fn nonzero_terms(a: &[BigInt]) -> Result<()> {
    match a.iter().position(Zero::is_zero) {
        Some(i) => Err(Error::ZeroValue(i + 1)),
        None => Ok(()),
    }
}

/// Checks `a_m | a_n` for every `m | n` in range.
///
/// ```
/// use arithdyn::dynamics::check_divisibility_sequence;
/// let a: Vec<_> = [2, 4, 7].iter().map(|&v| v.into()).collect();
/// assert_eq!(check_divisibility_sequence(&a).unwrap().violation, Some((1, 3)));
/// ```
pub fn check_divisibility_sequence(a: &[BigInt]) -> Result<DivisibilityCheck> {
    nonzero_terms(a)?;
    let violation = divisor_pairs(a.len()).find(|&(m, n)| !(&a[n - 1] % &a[m - 1]).is_zero());
    Ok(DivisibilityCheck { violation })
}

/// `(m, n)` with `m | n`, `m < n ≤ len`, ordered by `n` then `m`.
fn divisor_pairs(len: usize) -> impl Iterator<Item = (usize, usize)> {
    (2..=len).flat_map(|n| (1..n).filter(move |m| n % m == 0).map(move |m| (m, n)))
}

/// Checks that every prime `p ≤ prime_bound` has one valuation across all
/// terms it divides.
pub fn check_rigid(a: &[BigInt], prime_bound: u64) -> Result<RigidCheck> {
    nonzero_terms(a)?;
    let mut rows = Vec::new();
    for p in primes_up_to(prime_bound) {
        let vals: Vec<u32> = a.iter().map(|v| valuation(v, p)).collect();
        rows.push((p, vals));
    }
    Ok(rigid_from_valuations(rows))
}

fn valuation(v: &BigInt, p: u64) -> u32 {
    if (v % p).is_zero() {
        let mut v = v / p;
        let mut e = 1;
        while (&v % p).is_zero() {
            v /= p;
            e += 1;
        }
        e
    } else {
        0
    }
}

fn rigid_from_valuations(rows: impl IntoIterator<Item = (u64, Vec<u32>)>) -> RigidCheck {
    let mut exponents = BTreeMap::new();
    let mut violation = None;
    for (p, vals) in rows {
        let mut divided = vals.iter().enumerate().filter(|(_, &e)| e > 0);
        let Some((i0, &e0)) = divided.next() else { continue };
        exponents.insert(p, e0);
        if violation.is_none() {
            if let Some((i, &e)) = divided.find(|(_, &e)| e != e0) {
                violation = Some(RigidViolation { p, first: (i0 + 1, e0), conflict: (i + 1, e) });
            }
        }
    }
    RigidCheck { exponents, violation }
}

fn integer_coeffs(f: &QPoly) -> Result<Vec<BigInt>> {
    f.coeffs()
        .iter()
        .map(|c| {
            c.is_integer()
                .then(|| c.to_integer())
                .ok_or_else(|| Error::Precondition("orbit checks need integer coefficients".into()))
        })
        .collect()
}

fn eval_mod(coeffs: &[BigInt], x: &BigInt, modulus: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(modulus))
}

fn eval_exact(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Exact terms of the orbit while they stay small, and whether some term
/// up to `n` is zero.
///
/// Once `|v| > 1 + Σ|c_i|` the orbit of a monic-or-not integer polynomial
/// of degree at least two grows strictly in absolute value, so no later
/// term can vanish.
fn zero_term(coeffs: &[BigInt], x0: &BigInt, n: usize) -> Option<usize> {
    let escape: BigInt = coeffs.iter().map(|c| c.abs()).sum::<BigInt>() + 1;
    let mut v = x0.clone();
    for m in 1..=n {
        v = eval_exact(coeffs, &v);
        if v.is_zero() {
            return Some(m);
        }
        if v.abs() > escape {
            return None;
        }
    }
    None
}

/// [`check_divisibility_sequence`] for the orbit of `x0` under an integer
/// polynomial, without expanding the large terms: each `a_m` with
/// `2m ≤ n` is computed exactly and the orbit is reduced modulo it.
pub fn check_orbit_divisibility(f: &QPoly, x0: &BigInt, n: usize) -> Result<DivisibilityCheck> {
    let coeffs = integer_coeffs(f)?;
    if f.deg() < 2 {
        return Err(Error::Precondition("orbit needs deg f ≥ 2".into()));
    }
    if let Some(m) = zero_term(&coeffs, x0, n) {
        return Err(Error::ZeroValue(m));
    }
    let mut exact = x0.clone();
    let mut violation: Option<(usize, usize)> = None;
    for m in 1..=n / 2 {
        exact = eval_exact(&coeffs, &exact);
        let modulus = exact.abs();
        let mut v = x0.clone();
        for k in 1..=n {
            v = eval_mod(&coeffs, &v, &modulus);
            if k > m && k % m == 0 && !v.is_zero() {
                if violation.is_none_or(|(bm, bk)| (k, m) < (bk, bm)) {
                    violation = Some((m, k));
                }
                break;
            }
        }
    }
    Ok(DivisibilityCheck { violation })
}

/// [`check_rigid`] for the orbit of `x0` under an integer polynomial,
/// computed prime by prime on residues: the orbit modulo `p` finds the
/// terms `p` divides, and the orbit modulo `p^K` (with `K` raised until
/// the residue is nonzero) gives their valuations.
pub fn check_orbit_rigid(f: &QPoly, x0: &BigInt, n: usize, prime_bound: u64) -> Result<RigidCheck> {
    let coeffs = integer_coeffs(f)?;
    if f.deg() < 2 {
        return Err(Error::Precondition("orbit needs deg f ≥ 2".into()));
    }
    if let Some(m) = zero_term(&coeffs, x0, n) {
        return Err(Error::ZeroValue(m));
    }
    let rows = primes_up_to(prime_bound).into_iter().map(|p| (p, orbit_valuations(&coeffs, x0, n, p)));
    Ok(rigid_from_valuations(rows.collect::<Vec<_>>()))
}

fn orbit_valuations(coeffs: &[BigInt], x0: &BigInt, n: usize, p: u64) -> Vec<u32> {
    let pb = BigInt::from(p);
    let small: Vec<u64> = coeffs.iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced")).collect();
    let mut v = x0.mod_floor(&pb).to_u64().expect("reduced");
    let mut hits = Vec::new();
    for m in 1..=n {
        v = small.iter().rev().fold(0u64, |acc, &c| ((acc as u128 * v as u128 + c as u128) % p as u128) as u64);
        if v == 0 {
            hits.push(m);
        }
    }
    let mut vals = vec![0u32; n];
    if hits.is_empty() {
        return vals;
    }
    let mut k = (64 / (64 - p.leading_zeros())).max(2);
    loop {
        let modulus = num_traits::pow(pb.clone(), k as usize);
        let mut v = x0.mod_floor(&modulus);
        let mut residues = vec![BigInt::zero(); n];
        for slot in residues.iter_mut() {
            v = eval_mod(coeffs, &v, &modulus);
            *slot = v.clone();
        }
        if hits.iter().all(|&m| !residues[m - 1].is_zero()) {
            for &m in &hits {
                vals[m - 1] = valuation(&residues[m - 1], p);
            }
            return vals;
        }
        k *= 2;
    }
}
