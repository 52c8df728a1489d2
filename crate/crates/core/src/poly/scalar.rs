use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactmath::modular::{mulmod, Residue};
use crate::exactmath::rational::{add_q, mul_q, reduced, sub_q};
use crate::exactmath::{rational_nth_root, GaussianRational, Rational};

/// Coefficient domain of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// The rationals.
    Q,
    /// The Gaussian rationals Q(i).
    Qi,
}

/// Exact field element usable as a polynomial coefficient.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const DOMAIN: Domain;

    fn inv(&self) -> Option<Self>;

    fn from_rational(r: Rational) -> Self;

    /// Embeds a Gaussian rational, failing when it lies outside the domain.
    fn from_gaussian(g: &GaussianRational) -> Option<Self>;

    fn to_gaussian(&self) -> GaussianRational;

    /// Roots of unity contained in the domain.
    fn roots_of_unity() -> Vec<Self>;

    /// Exact `n`-th root inside the domain.
    fn nth_root(&self, n: u32) -> Option<Self>;

    /// Image in `F_p`, when the reduction is defined.
    fn residue(&self, r: &Residue) -> Option<u64>;

    /// Sign and magnitude text for printing: `(negative, magnitude)`.
    /// Compound magnitudes come back parenthesized.
    fn signed_text(&self) -> (bool, String);

    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(v.into()))
    }

    fn is_root_of_unity(&self) -> bool {
        Self::roots_of_unity().contains(self)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn add_ref(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }

    fn sub_ref(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }

    fn mul_ref(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }

    /// Product of coefficient vectors (ascending degree, both nonempty).
    fn mul_coeffs(a: &[Self], b: &[Self]) -> Vec<Self> {
        schoolbook(a, b)
    }
}

pub(crate) fn schoolbook<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
            }
        }
    }
    out
}

impl Scalar for Rational {
    const DOMAIN: Domain = Domain::Q;

    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn from_gaussian(g: &GaussianRational) -> Option<Self> {
        g.is_real().then(|| g.re.clone())
    }

    fn to_gaussian(&self) -> GaussianRational {
        GaussianRational::real(self.clone())
    }

    fn roots_of_unity() -> Vec<Self> {
        vec![Self::one(), -Self::one()]
    }

    fn nth_root(&self, n: u32) -> Option<Self> {
        rational_nth_root(self, n)
    }

    fn residue(&self, r: &Residue) -> Option<u64> {
        r.rational(self)
    }

    fn signed_text(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }

    fn add_ref(&self, o: &Self) -> Self {
        add_q(self, o)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        sub_q(self, o)
    }

    fn mul_ref(&self, o: &Self) -> Self {
        mul_q(self, o)
    }

    fn mul_coeffs(a: &[Self], b: &[Self]) -> Vec<Self> {
        if a.len().min(b.len()) < 6 {
            return schoolbook(a, b);
        }
        let (ia, da) = clear_denominators(a);
        let (ib, db) = clear_denominators(b);
        let den = da * db;
        kronecker(&ia, &ib).into_iter().map(|c| reduced(c, den.clone())).collect()
    }
}

impl Scalar for GaussianRational {
    const DOMAIN: Domain = Domain::Qi;

    fn inv(&self) -> Option<Self> {
        GaussianRational::inv(self)
    }

    fn from_rational(r: Rational) -> Self {
        GaussianRational::real(r)
    }

    fn from_gaussian(g: &GaussianRational) -> Option<Self> {
        Some(g.clone())
    }

    fn to_gaussian(&self) -> GaussianRational {
        self.clone()
    }

    fn roots_of_unity() -> Vec<Self> {
        vec![Self::from_ints(1, 0), Self::from_ints(-1, 0), Self::from_ints(0, 1), Self::from_ints(0, -1)]
    }

    fn nth_root(&self, n: u32) -> Option<Self> {
        GaussianRational::nth_root(self, n)
    }

    fn residue(&self, r: &Residue) -> Option<u64> {
        let re = r.rational(&self.re)?;
        if self.im.is_zero() {
            return Some(re);
        }
        let im = r.rational(&self.im)?;
        Some((re + mulmod(im, r.sqrt_minus_one?, r.p)) % r.p)
    }

    fn signed_text(&self) -> (bool, String) {
        if self.im.is_zero() {
            return self.re.signed_text();
        }
        if self.re.is_zero() {
            let mag = if self.im.abs().is_one() { "i".to_string() } else { format!("{}*i", self.im.abs()) };
            return (self.im.is_negative(), mag);
        }
        (false, format!("({self})"))
    }
}

fn clear_denominators(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = v.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (ints, den)
}

/// Integer polynomial product by Kronecker substitution: pack both
/// operands into single integers at a bit stride wide enough for every
/// product coefficient, multiply once, unpack with signed digits.
pub(crate) fn kronecker(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let bits_of = |v: &[BigInt]| v.iter().map(|c| c.bits()).max().unwrap_or(0);
    let len_bits = (a.len().min(b.len()) as u64).next_power_of_two().trailing_zeros() as u64 + 1;
    let stride = bits_of(a) + bits_of(b) + len_bits + 2;
    let prod = pack(a, stride) * pack(b, stride);
    let negative = prod.is_negative();
    let digits = prod.magnitude().to_u64_digits();
    let n = a.len() + b.len() - 1;
    let half = BigInt::one() << (stride - 1);
    let full = BigInt::one() << stride;
    let mut carry = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let t = BigInt::from(extract(&digits, i as u64 * stride, stride)) + &carry;
        let c = if t >= half {
            carry = BigInt::one();
            t - &full
        } else {
            carry = BigInt::zero();
            t
        };
        out.push(if negative { -c } else { c });
    }
    out
}

fn pack(v: &[BigInt], stride: u64) -> BigInt {
    let total = (v.len() as u64 * stride).div_ceil(64) as usize + 1;
    let mut pos = vec![0u64; total];
    let mut neg = vec![0u64; total];
    for (i, c) in v.iter().enumerate() {
        let buf = if c.is_negative() { &mut neg } else { &mut pos };
        let off = i as u64 * stride;
        let (w, s) = ((off / 64) as usize, off % 64);
        for (j, d) in c.magnitude().to_u64_digits().into_iter().enumerate() {
            buf[w + j] |= d << s;
            if s > 0 {
                buf[w + j + 1] |= d >> (64 - s);
            }
        }
    }
    let to_int = |words: Vec<u64>| {
        let u32s: Vec<u32> = words.iter().flat_map(|&d| [d as u32, (d >> 32) as u32]).collect();
        BigInt::from_biguint(Sign::Plus, BigUint::new(u32s))
    };
    to_int(pos) - to_int(neg)
}

fn extract(digits: &[u64], off: u64, width: u64) -> BigUint {
    let (w, s) = ((off / 64) as usize, off % 64);
    let nwords = (width + s).div_ceil(64) as usize;
    let word = |k: usize| digits.get(k).copied().unwrap_or(0);
    let mut out: Vec<u32> = Vec::with_capacity(2 * nwords);
    for j in 0..nwords {
        let lo = word(w + j) >> s;
        let hi = if s > 0 { word(w + j + 1) << (64 - s) } else { 0 };
        let d = lo | hi;
        out.push(d as u32);
        out.push((d >> 32) as u32);
    }
    let v = BigUint::new(out);
    v & ((BigUint::one() << width) - 1u32)
}
