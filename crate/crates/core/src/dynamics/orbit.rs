use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::{factor_bounded, FactorEffort, Factored, Rational};
use crate::poly::QPoly;

/// Default cap on the bit size of any orbit value.
pub const DEFAULT_MAX_BITS: u64 = 1 << 21;

/// Exact forward orbit `f(x0), f^2(x0), …, f^N(x0)`.
#[derive(Debug)]
pub struct OrbitTable {
    f: QPoly,
    x0: Rational,
    values: Vec<Rational>,
    preperiodic: Option<(usize, usize)>,
    stripped: OnceLock<Result<Vec<BigInt>>>,
}

fn height_bits(v: &Rational) -> u64 {
    v.numer().bits().max(v.denom().bits())
}

/// Upper bound on the bits of `f(v)`'s numerator and denominator.
fn next_bits_estimate(f: &QPoly, coeff_bits: u64, v: &Rational) -> u64 {
    let d = f.deg() as u64;
    d * height_bits(v) + coeff_bits + 64 - (d + 1).leading_zeros() as u64 + 1
}

impl OrbitTable {
    /// Iterates `f` from `x0` for `n ≥ 1` steps, refusing before any value
    /// would exceed `max_bits`. Linear and constant `f` are rejected.
    ///
    /// ```
    /// use arithdyn::dynamics::{OrbitTable, DEFAULT_MAX_BITS};
    /// use arithdyn::exactmath::Rational;
    /// let t = OrbitTable::new(&"X^2+2".parse().unwrap(), &Rational::from_integer(0.into()), 4, DEFAULT_MAX_BITS).unwrap();
    /// let v: Vec<String> = t.values().iter().map(|v| v.to_string()).collect();
    /// assert_eq!(v, ["2", "6", "38", "1446"]);
    /// ```
    pub fn new(f: &QPoly, x0: &Rational, n: usize, max_bits: u64) -> Result<Self> {
        if f.deg() < 2 {
            return Err(Error::Precondition("orbit needs deg f ≥ 2".into()));
        }
        if n == 0 {
            return Err(Error::Precondition("orbit length must be at least 1".into()));
        }
        let den = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeff_bits =
            den.bits() + f.coeffs().iter().map(|c| (c.numer() * (&den / c.denom())).bits()).max().unwrap_or(0);
        let mut values = Vec::with_capacity(n);
        let mut seen = HashMap::from([(x0.clone(), 0usize)]);
        let mut preperiodic = None;
        let mut current = x0.clone();
        for m in 1..=n {
            if next_bits_estimate(f, coeff_bits, &current) > max_bits {
                return Err(Error::SizeCap { index: m, cap_bits: max_bits });
            }
            current = f.eval(&current);
            if preperiodic.is_none() {
                if let Some(&k) = seen.get(&current) {
                    preperiodic = Some((k, m));
                } else {
                    seen.insert(current.clone(), m);
                }
            }
            values.push(current.clone());
        }
        Ok(OrbitTable { f: f.clone(), x0: x0.clone(), values, preperiodic, stripped: OnceLock::new() })
    }

    pub fn f(&self) -> &QPoly {
        &self.f
    }

    pub fn x0(&self) -> &Rational {
        &self.x0
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `values()[m - 1] = f^m(x0)`.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `f^m(x0)` for `1 ≤ m ≤ N`.
    pub fn value(&self, m: usize) -> &Rational {
        &self.values[m - 1]
    }

    /// `(k, m)` with `k < m` when `f^m(x0) = f^k(x0)` was observed
    /// (`k = 0` is `x0` itself).
    pub fn preperiodic(&self) -> Option<(usize, usize)> {
        self.preperiodic
    }

    /// Integer orbit values, or an error naming the first non-integer.
    pub fn integer_values(&self) -> Result<Vec<BigInt>> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if v.is_integer() {
                    Ok(v.to_integer())
                } else {
                    Err(Error::Precondition(format!("orbit value {} = {v} is not an integer", i + 1)))
                }
            })
            .collect()
    }

    /// `|f^m(x0)|` with every prime shared with an earlier term removed,
    /// by repeated gcds. Greater than one exactly when the term has a
    /// primitive prime divisor.
    ///
    /// ```
    /// use arithdyn::dynamics::{OrbitTable, DEFAULT_MAX_BITS};
    /// use arithdyn::exactmath::Rational;
    /// let t = OrbitTable::new(&"X^2+2".parse().unwrap(), &Rational::from_integer(0.into()), 4, DEFAULT_MAX_BITS).unwrap();
    /// assert_eq!(t.primitive_part(3).unwrap(), 19.into());
    /// assert_eq!(t.primitive_part(4).unwrap(), 241.into());
    /// ```
    pub fn primitive_part(&self, m: usize) -> Result<BigInt> {
        if m == 0 || m > self.len() {
            return Err(Error::Precondition(format!("index {m} outside 1..={}", self.len())));
        }
        match self.stripped.get_or_init(|| self.strip_all()) {
            Ok(parts) => Ok(parts[m - 1].clone()),
            Err(e) => Err(e.clone()),
        }
    }

    fn strip_all(&self) -> Result<Vec<BigInt>> {
        let ints = self.integer_values()?;
        if let Some(i) = ints.iter().position(Zero::is_zero) {
            return Err(Error::ZeroValue(i + 1));
        }
        Ok((0..ints.len())
            .into_par_iter()
            .map(|m| {
                let mut a = ints[m].abs();
                for earlier in &ints[..m] {
                    loop {
                        let g = a.gcd(earlier);
                        if g.is_one() {
                            break;
                        }
                        a /= g;
                    }
                }
                debug_assert!((&ints[m] % &a).is_zero());
                debug_assert!(ints[..m].iter().all(|e| a.gcd(e).is_one()));
                a
            })
            .collect())
    }
}

/// Product of the distinct primes dividing `v`, or what could be found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquarefreeFactor {
    Complete(BigInt),
    /// `known` is the product of the distinct primes found; `cofactor` was
    /// left unfactored.
    Partial { known: BigInt, cofactor: BigInt },
}

/// Largest squarefree divisor of `v` (its radical), via bounded factoring.
pub fn largest_squarefree_factor(v: &BigInt, effort: &FactorEffort) -> Result<SquarefreeFactor> {
    let radical = |primes: &[(BigInt, u32)]| primes.iter().fold(BigInt::one(), |acc, (p, _)| acc * p);
    Ok(match factor_bounded(v, effort)? {
        Factored::Complete(f) => SquarefreeFactor::Complete(radical(&f.primes)),
        Factored::Partial { known, cofactor } => {
            SquarefreeFactor::Partial { known: radical(&known.primes), cofactor }
        }
    })
}
