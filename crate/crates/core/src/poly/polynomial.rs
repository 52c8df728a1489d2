use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::exactmath::modular::{mulmod, Residue};
use crate::exactmath::{GaussianRational, Rational};

/// Dense univariate polynomial; `coeffs[k]` is the coefficient of `X^k`.
/// Trailing zeros are always trimmed, so equality is coefficient equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<F> {
    coeffs: Vec<F>,
}

/// Polynomial over Q.
pub type QPoly = Polynomial<Rational>;
/// Polynomial over Q(i).
pub type QiPoly = Polynomial<GaussianRational>;

impl<F: Scalar> Polynomial<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(F::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// From integer coefficients, lowest degree first.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `X - r`.
    pub fn linear_root(r: F) -> Self {
        Self::new(vec![-r, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial counted as degree 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(F::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_linear(&self) -> bool {
        self.coeffs.len() == 2
    }

    /// `a X^d` with `a != 0` (constants included).
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    /// Multiplicity of 0 as a root.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff().inv() {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(X))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// `n`-fold composition; `n = 0` is rejected.
    pub fn iterate(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("iterate needs n >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc);
        }
        Ok(acc)
    }

    /// `self(X^l)`.
    pub fn spread(&self, l: usize) -> Self {
        assert!(l >= 1);
        let mut coeffs = vec![F::zero(); self.deg() * l + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * l] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let inv = d.leading_coeff().inv().ok_or(Error::DivisionByZero)?;
        let dd = d.deg();
        if self.coeffs.len() < d.coeffs.len() {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient of an exact division; `None` if the remainder is nonzero.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd (Euclid); `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_gaussian(&self) -> QiPoly {
        self.map(F::to_gaussian)
    }

    /// Converts into another domain, failing if a coefficient does not fit.
    pub fn convert<G: Scalar>(&self) -> Option<Polynomial<G>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| G::from_gaussian(&c.to_gaussian()))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial::new(coeffs))
    }

    /// Coefficients reduced modulo `r.p`, or `None` if a denominator vanishes.
    pub fn residues(&self, r: &Residue) -> Option<Vec<u64>> {
        self.coeffs.iter().map(|c| c.residue(r)).collect()
    }

    /// `self(x) mod p`.
    pub fn eval_mod(&self, x: u64, r: &Residue) -> Option<u64> {
        let res = self.residues(r)?;
        Some(eval_residues(&res, x, r.p))
    }
}

pub(crate) fn eval_residues(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

impl<F: Scalar> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, o: &Polynomial<F>) -> Polynomial<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k).add_ref(&o.coeff(k))).collect())
    }
}

impl<F: Scalar> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, o: &Polynomial<F>) -> Polynomial<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k).sub_ref(&o.coeff(k))).collect())
    }
}

impl<F: Scalar> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, o: &Polynomial<F>) -> Polynomial<F> {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::new(F::mul_coeffs(&self.coeffs, &o.coeffs))
    }
}

impl<F: Scalar> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<F: Scalar> $tr for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, o: Polynomial<F>) -> Polynomial<F> {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<F: Scalar> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}
