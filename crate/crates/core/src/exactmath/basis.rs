use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Pairwise-coprime integers `> 1` over which a list of inputs factors
/// exactly: `input[i] = ±∏ elements[j]^exponents[i][j]`.
///
/// Pairwise-coprime elements are multiplicatively independent, so an
/// exponent row over the basis determines its input up to sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoprimeBasis {
    /// Sorted ascending.
    pub elements: Vec<BigInt>,
    /// One row per input, one column per element.
    pub exponents: Vec<Vec<i64>>,
    /// `true` iff the corresponding input is negative.
    pub signs: Vec<bool>,
}

/// Refines nonzero integers into a coprime basis using gcds only.
pub fn factor_refine(values: &[BigInt]) -> Result<CoprimeBasis> {
    if let Some(i) = values.iter().position(Zero::is_zero) {
        return Err(Error::ZeroValue(i));
    }
    let elements = refine(values.iter().map(|v| v.abs()).collect());
    let exponents = values.iter().map(|v| exponent_row(&v.abs(), &elements)).collect();
    Ok(CoprimeBasis { elements, exponents, signs: values.iter().map(Signed::is_negative).collect() })
}

impl CoprimeBasis {
    /// Coprime basis for nonzero rationals; each row is the exponent vector
    /// of the numerator minus that of the denominator.
    pub fn from_rationals(values: &[Rational]) -> Result<Self> {
        if let Some(i) = values.iter().position(Zero::is_zero) {
            return Err(Error::ZeroValue(i));
        }
        let pool = values
            .iter()
            .flat_map(|v| [v.numer().abs(), v.denom().clone()])
            .collect();
        let elements = refine(pool);
        let exponents = values
            .iter()
            .map(|v| {
                let num = exponent_row(&v.numer().abs(), &elements);
                let den = exponent_row(v.denom(), &elements);
                num.iter().zip(&den).map(|(a, b)| a - b).collect()
            })
            .collect();
        Ok(CoprimeBasis { elements, exponents, signs: values.iter().map(Signed::is_negative).collect() })
    }

    /// Recomputes input `i` from its row and sign.
    pub fn reconstruct(&self, i: usize) -> Rational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (b, &e) in self.elements.iter().zip(&self.exponents[i]) {
            let p = num_traits::pow(b.clone(), e.unsigned_abs() as usize);
            if e >= 0 {
                num *= p;
            } else {
                den *= p;
            }
        }
        if self.signs[i] {
            num = -num;
        }
        Rational::new(num, den)
    }
}

fn refine(pool: Vec<BigInt>) -> Vec<BigInt> {
    let mut done: Vec<BigInt> = Vec::new();
    let mut todo: Vec<BigInt> = pool.into_iter().filter(|v| !v.is_one()).collect();
    // Each split replaces d, x by g, d/g, x/g; the product of all pending
    // values drops by g > 1 every time, so this terminates.
    while let Some(mut x) = todo.pop() {
        let mut i = 0;
        while i < done.len() {
            let g = x.gcd(&done[i]);
            if g.is_one() {
                i += 1;
                continue;
            }
            let d = done.swap_remove(i);
            let rest = &d / &g;
            if !rest.is_one() {
                todo.push(rest);
            }
            x /= &g;
            todo.push(g);
            if x.is_one() {
                break;
            }
        }
        if !x.is_one() {
            done.push(x);
        }
    }
    done.sort();
    done
}

fn exponent_row(v: &BigInt, elements: &[BigInt]) -> Vec<i64> {
    let mut rest = v.clone();
    let row = elements
        .iter()
        .map(|b| {
            let mut e = 0;
            loop {
                let (q, r) = rest.div_rem(b);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            e
        })
        .collect();
    assert!(rest.is_one(), "coprime basis does not generate {v}");
    row
}
