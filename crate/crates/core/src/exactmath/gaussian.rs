use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{int_nth_root, Rational};

/// Element of Q(i), stored as a pair of reduced rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

/// Largest `|z|` scanned when extracting exact roots of non-real Gaussian
/// values.
const ROOT_SEARCH_LIMIT: u64 = 1_000_000;

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Exact `n`-th root in Q(i), if one exists.
    ///
    /// Writes `self = P/q` with `P` a Gaussian integer and `q` a positive
    /// integer, so a root is `z/q` with `z^n = P q^(n-1)` and `z` a Gaussian
    /// integer of norm `N(P q^(n-1))^(1/n)`. Candidates are found by
    /// enumerating sums of two squares; values with `|z|` beyond an internal
    /// search limit report `None`.
    pub fn nth_root(&self, n: u32) -> Option<Self> {
        if n == 0 {
            return None;
        }
        if n == 1 || self.is_zero() {
            return Some(self.clone());
        }
        let q = self.re.denom().lcm(self.im.denom());
        let scale = num_traits::pow(q.clone(), (n - 1) as usize);
        let a = (self.re.numer() * (&q / self.re.denom())) * &scale;
        let b = (self.im.numer() * (&q / self.im.denom())) * &scale;
        let target = (a.clone(), b.clone());
        let norm = &a * &a + &b * &b;
        let m = int_nth_root(&norm, n)?;
        let limit = m.sqrt();
        if limit > BigInt::from(ROOT_SEARCH_LIMIT) {
            return None;
        }
        let limit = limit.to_string().parse::<u64>().ok()?;
        let qr = Rational::from_integer(q);
        for x in 0..=limit {
            let x = BigInt::from(x);
            let rest = &m - &x * &x;
            if rest.is_negative() {
                break;
            }
            let Some(y) = int_nth_root(&rest, 2) else { continue };
            for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let z = (&x * sx, &y * sy);
                if gauss_int_pow(&z, n) == target {
                    let root = Self::new(
                        Rational::from_integer(z.0) / &qr,
                        Rational::from_integer(z.1) / &qr,
                    );
                    return Some(root);
                }
            }
        }
        None
    }
}

fn gauss_int_pow(z: &(BigInt, BigInt), n: u32) -> (BigInt, BigInt) {
    let mut acc = (BigInt::one(), BigInt::zero());
    for _ in 0..n {
        acc = (&acc.0 * &z.0 - &acc.1 * &z.1, &acc.0 * &z.1 + &acc.1 * &z.0);
    }
    acc
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        Self::real(re)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, v: &Rational| {
            if v.abs().is_one() {
                write!(f, "i")
            } else {
                write!(f, "{}*i", v.abs())
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-")?;
                }
                imag(f, &self.im)
            }
            (false, false) => {
                write!(f, "{}{}", self.re, if self.im.is_negative() { "-" } else { "+" })?;
                imag(f, &self.im)
            }
        }
    }
}
