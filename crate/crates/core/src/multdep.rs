//! Multiplicative dependence of tuples of nonzero rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{is_unit, left_kernel, CoprimeBasis, IntegerMatrix, Rational};

/// Largest tuple length accepted by [`mult_rank`].
pub const MAX_RANK_ARITY: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Dependent,
    Independent,
    Undefined,
}

/// Nonzero exponent vector `k` with `∏ ν_i^{k_i} = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultRelation {
    pub k: Vec<i64>,
}

impl MultRelation {
    /// Exact check of `∏ ν_i^{k_i} = 1`, comparing the positive-exponent
    /// product with the negative-exponent one.
    pub fn verify(&self, values: &[Rational]) -> bool {
        if self.k.len() != values.len() || self.k.iter().all(|&k| k == 0) {
            return false;
        }
        let mut lhs = Rational::one();
        let mut rhs = Rational::one();
        for (v, &k) in values.iter().zip(&self.k) {
            if v.is_zero() {
                return false;
            }
            let e = BigInt::from(k.unsigned_abs());
            if k > 0 {
                lhs *= Pow::pow(v, e);
            } else if k < 0 {
                rhs *= Pow::pow(v, e);
            }
        }
        lhs == rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependenceVerdict {
    pub status: Status,
    pub relation: Option<MultRelation>,
    /// Multiplicative rank, when the tuple is small enough to compute it.
    pub rank: Option<usize>,
}

/// Decide dependence of `values`.
///
/// The certificate is the first vector of the exponent kernel in Hermite
/// form, doubled when the signs would otherwise leave `-1`. It is always
/// re-verified by exact evaluation before being returned.
///
/// ```
/// use arithdyn::exactmath::Rational;
/// use arithdyn::multdep::{test_dependence, Status};
/// let v: Vec<Rational> = [4, 8].iter().map(|&x| Rational::from_integer(x.into())).collect();
/// let verdict = test_dependence(&v);
/// assert_eq!(verdict.status, Status::Dependent);
/// assert_eq!(verdict.relation.unwrap().k, vec![3, -2]);
/// ```
pub fn test_dependence(values: &[Rational]) -> DependenceVerdict {
    if values.iter().any(Zero::is_zero) {
        return DependenceVerdict { status: Status::Undefined, relation: None, rank: None };
    }
    let basis = CoprimeBasis::from_rationals(values).expect("nonzero values");
    let relation = relation_from_rows(&basis.exponents, &basis.signs);
    if let Some(r) = &relation {
        assert!(r.verify(values), "certificate {:?} failed exact verification", r.k);
    }
    let rank = (values.len() <= MAX_RANK_ARITY).then(|| rank_from_rows(values, &basis.exponents));
    let status = if relation.is_some() { Status::Dependent } else { Status::Independent };
    DependenceVerdict { status, relation, rank }
}

/// Certificate from exponent rows over a coprime basis, or `None` when the
/// rows are independent. Does not verify.
pub(crate) fn relation_from_rows(rows: &[Vec<i64>], signs: &[bool]) -> Option<MultRelation> {
    let cols = rows.first().map_or(0, Vec::len);
    let m = IntegerMatrix::from_i64_rows(rows, cols).expect("rectangular exponent rows");
    let first = left_kernel(&m).into_iter().next()?;
    let odd = first
        .iter()
        .zip(signs)
        .filter(|(_, &neg)| neg)
        .fold(BigInt::zero(), |acc, (k, _)| acc + k)
        .is_odd();
    let factor = BigInt::from(if odd { 2 } else { 1 });
    let k = first
        .iter()
        .map(|k| (k * &factor).to_i64().expect("certificate entry exceeds i64"))
        .collect();
    Some(MultRelation { k })
}

/// Multiplicative rank: `0` if a coordinate is `±1`, otherwise one less
/// than the size of the smallest dependent sub-tuple (`n` if independent).
///
/// Tuples with a zero coordinate are refused rather than assigned a rank.
pub fn mult_rank(values: &[Rational]) -> Result<usize> {
    if let Some(i) = values.iter().position(Zero::is_zero) {
        return Err(Error::ZeroValue(i));
    }
    if values.len() > MAX_RANK_ARITY {
        return Err(Error::Precondition(format!(
            "rank needs at most {MAX_RANK_ARITY} coordinates, got {}",
            values.len()
        )));
    }
    let basis = CoprimeBasis::from_rationals(values)?;
    Ok(rank_from_rows(values, &basis.exponents))
}

fn rank_from_rows(values: &[Rational], rows: &[Vec<i64>]) -> usize {
    if values.iter().any(is_unit) {
        return 0;
    }
    let n = values.len();
    let cols = rows.first().map_or(0, Vec::len);
    for size in 2..=n {
        let dependent = (0u32..1 << n).into_par_iter().filter(|m| m.count_ones() as usize == size).any(|mask| {
            let sub: Vec<Vec<i64>> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| rows[i].clone()).collect();
            IntegerMatrix::from_i64_rows(&sub, cols).expect("rectangular").rank() < size
        });
        if dependent {
            return size - 1;
        }
    }
    n
}

/// A dependent pair `z^k = ζ·w^ℓ` with `k > 0`, `gcd(k, ℓ) = 1`, `ζ = ±1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOnePair {
    pub k: i64,
    pub l: i64,
    /// `+1` or `-1`.
    pub zeta: i64,
    /// `ℓ < 0`, i.e. the exponents have different signs in `z^k w^{-ℓ} = ζ`.
    pub mixed_sign: bool,
}

/// Reduced exponents relating `z` and `w` when the pair is dependent.
///
/// ```
/// use arithdyn::exactmath::Rational;
/// use arithdyn::multdep::is_rank_one_pair;
/// let p = is_rank_one_pair(&Rational::from_integer(4.into()), &Rational::from_integer(8.into()))
///     .unwrap()
///     .unwrap();
/// assert_eq!((p.k, p.l, p.mixed_sign), (3, 2, false));
/// ```
pub fn is_rank_one_pair(z: &Rational, w: &Rational) -> Result<Option<RankOnePair>> {
    for (name, v) in [("z", z), ("w", w)] {
        if v.is_zero() || is_unit(v) {
            return Err(Error::Precondition(format!("{name} must be nonzero and not ±1, got {v}")));
        }
    }
    let pair = [z.clone(), w.clone()];
    let basis = CoprimeBasis::from_rationals(&pair)?;
    let cols = basis.elements.len();
    let m = IntegerMatrix::from_i64_rows(&basis.exponents, cols)?;
    let Some(gen) = left_kernel(&m).into_iter().next() else { return Ok(None) };
    let k = gen[0].to_i64().ok_or_else(|| Error::Overflow("exponent k".into()))?;
    let l = (-&gen[1]).to_i64().ok_or_else(|| Error::Overflow("exponent l".into()))?;
    assert!(k > 0, "kernel generator of two non-units has positive lead");
    let lhs = Pow::pow(z, BigInt::from(k));
    let rhs = Pow::pow(w, BigInt::from(l));
    let zeta = if lhs == rhs {
        1
    } else {
        assert_eq!(lhs, -rhs, "kernel generator must give z^k = ±w^l");
        -1
    };
    Ok(Some(RankOnePair { k, l, zeta, mixed_sign: l.is_negative() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn dependence_fixtures() {
        let v = test_dependence(&q(&[4, 8]));
        assert_eq!(v.status, Status::Dependent);
        assert_eq!(v.relation.unwrap().k, vec![3, -2]);
        assert_eq!(v.rank, Some(1));

        let v = test_dependence(&q(&[2, 3]));
        assert_eq!((v.status, v.relation, v.rank), (Status::Independent, None, Some(2)));

        let v = test_dependence(&q(&[5, 0]));
        assert_eq!((v.status, v.relation, v.rank), (Status::Undefined, None, None));
    }

    #[test]
    fn sign_parity_doubles() {
        // -2 and 2: (-2)^1 · 2^-1 = -1, so the certificate must be doubled.
        let v = test_dependence(&q(&[-2, 2]));
        assert_eq!(v.relation.unwrap().k, vec![2, -2]);
        let v = test_dependence(&q(&[-1]));
        assert_eq!(v.relation.unwrap().k, vec![2]);
        assert_eq!(v.rank, Some(0));
        let v = test_dependence(&q(&[-8, 4]));
        assert_eq!(v.relation.unwrap().k, vec![2, -3]);
    }

    #[test]
    fn rank_fixtures() {
        assert_eq!(mult_rank(&q(&[1, 5])).unwrap(), 0);
        assert_eq!(mult_rank(&q(&[-1, 5])).unwrap(), 0);
        assert_eq!(mult_rank(&q(&[2, 4])).unwrap(), 1);
        assert_eq!(mult_rank(&q(&[2, 3, 6])).unwrap(), 2);
        assert_eq!(mult_rank(&q(&[2, 3, 5])).unwrap(), 3);
        assert_eq!(mult_rank(&[r(2, 3), r(3, 2), r(5, 1)]).unwrap(), 1);
        assert_eq!(mult_rank(&q(&[7, 7])).unwrap(), 1);
        assert!(matches!(mult_rank(&q(&[3, 0])), Err(Error::ZeroValue(1))));
        assert!(mult_rank(&q(&[2; 13])).is_err());
    }

    #[test]
    fn rank_one_pairs() {
        let p = is_rank_one_pair(&r(4, 1), &r(8, 1)).unwrap().unwrap();
        assert_eq!((p.k, p.l, p.zeta, p.mixed_sign), (3, 2, 1, false));
        assert_eq!(is_rank_one_pair(&r(2, 1), &r(3, 1)).unwrap(), None);
        let p = is_rank_one_pair(&r(9, 1), &r(1, 3)).unwrap().unwrap();
        assert_eq!((p.k, p.l, p.zeta, p.mixed_sign), (1, -2, 1, true));
        let p = is_rank_one_pair(&r(-2, 1), &r(8, 1)).unwrap().unwrap();
        assert_eq!((p.k, p.l, p.zeta), (3, 1, -1));
        assert!(is_rank_one_pair(&r(-1, 1), &r(8, 1)).is_err());
        assert!(is_rank_one_pair(&r(0, 1), &r(8, 1)).is_err());
    }

    /// Exhaustive search for a relation with |k_i| ≤ bound.
    fn brute_dependent(values: &[Rational], bound: i64) -> bool {
        let n = values.len();
        let mut k = vec![-bound; n];
        loop {
            let rel = MultRelation { k: k.clone() };
            if rel.verify(values) {
                return true;
            }
            let mut i = 0;
            while i < n && k[i] == bound {
                k[i] = -bound;
                i += 1;
            }
            if i == n {
                return false;
            }
            k[i] += 1;
        }
    }

    fn smooth() -> impl Strategy<Value = Rational> {
        (prop::collection::vec(-3i32..=3, 4), any::<bool>()).prop_map(|(e, neg)| {
            let mut v = Rational::one();
            for (p, e) in [2, 3, 5, 7].iter().zip(e) {
                v *= Pow::pow(&Rational::from_integer((*p).into()), e);
            }
            if neg {
                -v
            } else {
                v
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn agrees_with_exhaustive_search(vals in prop::collection::vec(smooth(), 1..=3)) {
            let v = test_dependence(&vals);
            prop_assert_eq!(v.status == Status::Dependent, brute_dependent(&vals, 8));
            if let Some(rel) = &v.relation {
                prop_assert!(rel.verify(&vals));
            }
            prop_assert_eq!(v.rank == Some(vals.len()), v.status == Status::Independent);
        }

        #[test]
        fn rank_monotone_under_append(vals in prop::collection::vec(smooth(), 1..=4), extra in smooth()) {
            let r0 = mult_rank(&vals).unwrap();
            let mut more = vals.clone();
            more.push(extra);
            let r1 = mult_rank(&more).unwrap();
            prop_assert!(r1 <= r0 + 1);
        }
    }
}
