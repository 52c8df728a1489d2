use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::poly::{squarefree_decompose, Polynomial, Scalar};

/// Reduced multiplicities `m_i = m / gcd(m, e_i)` of the distinct roots,
/// grouped as `(m_i, count)` in descending order of `m_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeVequeProfile {
    pub m: u64,
    pub tuple: Vec<(u64, usize)>,
}

impl LeVequeProfile {
    /// The sorted tuple `m_1 ≥ m_2 ≥ …` with repetitions.
    pub fn expanded(&self) -> Vec<u64> {
        self.tuple.iter().flat_map(|&(mi, c)| std::iter::repeat_n(mi, c)).collect()
    }

    /// `m_1 ≥ 3, m_2 ≥ 2` or `m_1 = m_2 = m_3 = 2`.
    pub fn satisfies(&self) -> bool {
        let t = self.expanded();
        (t.len() >= 2 && t[0] >= 3 && t[1] >= 2) || (t.len() >= 3 && t[..3] == [2, 2, 2])
    }
}

fn check_exponent(m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::Precondition(format!("exponent must be at least 2, got {m}")));
    }
    Ok(())
}

fn nonconstant<F: Scalar>(f: &Polynomial<F>) -> Result<()> {
    if f.deg() == 0 {
        return Err(Error::Precondition("polynomial must be nonconstant".into()));
    }
    Ok(())
}

fn multiplicities<F: Scalar>(f: &Polynomial<F>) -> Result<Vec<(u64, usize)>> {
    let sq = squarefree_decompose(f)?;
    Ok(sq.parts.iter().map(|(g, e)| (u64::from(*e), g.deg())).collect())
}

fn profile_from(m: u64, mults: &[(u64, usize)]) -> LeVequeProfile {
    let mut grouped: BTreeMap<u64, usize> = BTreeMap::new();
    for &(e, count) in mults {
        *grouped.entry(m / m.gcd(&e)).or_default() += count;
    }
    LeVequeProfile { m, tuple: grouped.into_iter().rev().collect() }
}

/// LeVeque profile of `(f, m)` from the squarefree decomposition of `f`.
///
/// ```
/// use arithdyn::poly::QPoly;
/// use arithdyn::structure::leveque_profile;
/// let f: QPoly = "X^2*(X-1)^3*(X-2)".parse().unwrap();
/// assert_eq!(leveque_profile(&f, 3).unwrap().expanded(), vec![3, 3, 1]);
/// ```
pub fn leveque_profile<F: Scalar>(f: &Polynomial<F>, m: u64) -> Result<LeVequeProfile> {
    check_exponent(m)?;
    nonconstant(f)?;
    Ok(profile_from(m, &multiplicities(f)?))
}

pub fn satisfies_leveque<F: Scalar>(f: &Polynomial<F>, m: u64) -> Result<bool> {
    Ok(leveque_profile(f, m)?.satisfies())
}

/// `f = c · X^s · p(X)^m` with `p` monic and `p(0) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalForm<F> {
    pub s: usize,
    pub p: Polynomial<F>,
    pub c: F,
    pub m: u64,
    /// Whether `c` is an `m`-th power in the working domain.
    pub c_is_power: bool,
}

impl<F: Scalar> ExceptionalForm<F> {
    pub fn reconstruct(&self) -> Polynomial<F> {
        let m = u32::try_from(self.m).expect("exponent fits u32");
        Polynomial::monomial(self.c.clone(), self.s) * self.p.pow(m)
    }
}

/// Writes `f` as `c · X^s · p(X)^m` when every nonzero root has
/// multiplicity divisible by `m`.
pub fn exceptional_form<F: Scalar>(f: &Polynomial<F>, m: u64) -> Result<Option<ExceptionalForm<F>>> {
    check_exponent(m)?;
    nonconstant(f)?;
    let s = f.valuation();
    let rest = Polynomial::new(f.coeffs()[s..].to_vec());
    let sq = squarefree_decompose(&rest)?;
    if sq.parts.iter().any(|(_, e)| u64::from(*e) % m != 0) {
        return Ok(None);
    }
    let p = sq
        .parts
        .iter()
        .fold(Polynomial::one(), |acc, (g, e)| acc * g.pow(u32::try_from(u64::from(*e) / m).expect("small")));
    let c_is_power = u32::try_from(m).ok().and_then(|m| sq.content.nth_root(m)).is_some();
    let form = ExceptionalForm { s, p, c: sq.content, m, c_is_power };
    debug_assert_eq!(form.reconstruct(), *f);
    Ok(Some(form))
}

/// Outcome of the iterate trichotomy for `(f, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeVequeCase<F> {
    /// `f` itself is `c · X^s · p^m`.
    ExceptionalForm(ExceptionalForm<F>),
    /// `m = 2` and the second iterate is `c · X^s · p^2`.
    SquareIterateExceptional { square: Polynomial<F>, form: ExceptionalForm<F> },
    /// `(f^j, m)` satisfies the LeVeque condition; `j` is the first such.
    LeVequeIterate { j: usize, profile: LeVequeProfile },
}

/// Largest iterate the trichotomy ever needs.
pub const MAX_LEVEQUE_ITERATE: usize = 6;

/// Classifies `(f, m)`: exceptional form, then (for `m = 2`) exceptional
/// second iterate, then the first `j ≤ 6` with `(f^j, m)` LeVeque.
///
/// ```
/// use arithdyn::poly::QiPoly;
/// use arithdyn::structure::{classify_leveque_case, LeVequeCase};
/// let f: QiPoly = "X^3 - 6*i*X^2 - 9*X + 4*i".parse().unwrap();
/// let case = classify_leveque_case(&f, 2).unwrap();
/// assert!(matches!(case, LeVequeCase::SquareIterateExceptional { .. }));
/// ```
pub fn classify_leveque_case<F: Scalar>(f: &Polynomial<F>, m: u64) -> Result<LeVequeCase<F>> {
    check_exponent(m)?;
    if f.deg() <= 1 || f.is_monomial() {
        return Err(Error::Precondition("classifier needs f neither linear nor a monomial".into()));
    }
    if let Some(form) = exceptional_form(f, m)? {
        return Ok(LeVequeCase::ExceptionalForm(form));
    }
    let mut iterates = vec![f.clone()];
    if m == 2 {
        let square = f.compose(f);
        if let Some(form) = exceptional_form(&square, m)? {
            return Ok(LeVequeCase::SquareIterateExceptional { square, form });
        }
        iterates.push(square);
    }
    for j in 1..=MAX_LEVEQUE_ITERATE {
        if iterates.len() < j {
            let next = f.compose(iterates.last().expect("nonempty"));
            iterates.push(next);
        }
        let profile = leveque_profile(&iterates[j - 1], m)?;
        if profile.satisfies() {
            return Ok(LeVequeCase::LeVequeIterate { j, profile });
        }
    }
    Err(Error::IdentityFailed(format!(
        "no iterate up to {MAX_LEVEQUE_ITERATE} satisfies the LeVeque condition for m = {m}"
    )))
}

/// `E(f) = {1} ∪ {ℓ ≥ 2 : (f, ℓ) fails the LeVeque condition}`.
///
/// Beyond `ℓ = 2·max e` every `m_i = ℓ / gcd(ℓ, e_i) ≥ ℓ / e_i > 2`, so with
/// two or more distinct roots the condition holds and the scan can stop.
pub fn exceptional_exponents<F: Scalar>(f: &Polynomial<F>) -> Result<BTreeSet<u64>> {
    nonconstant(f)?;
    let mults = multiplicities(f)?;
    let roots: usize = mults.iter().map(|m| m.1).sum();
    if roots < 2 {
        return Err(Error::Precondition("E(f) needs at least two distinct roots".into()));
    }
    let max_e = mults.iter().map(|m| m.0).max().expect("nonempty");
    let mut out = BTreeSet::from([1]);
    for l in 2..=2 * max_e {
        if !profile_from(l, &mults).satisfies() {
            out.insert(l);
        }
    }
    for l in 2 * max_e + 1..=2 * max_e + 4 {
        let p = profile_from(l, &mults);
        assert!(p.tuple.iter().all(|&(mi, _)| mi >= 3) && p.satisfies(), "search bound violated at {l}");
    }
    Ok(out)
}

/// `E(f, g) = {(k, ℓ) : k ∈ E(g), ℓ ∈ E(f), gcd(k, ℓ) = 1}`.
pub fn exceptional_pairs<F: Scalar>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<BTreeSet<(u64, u64)>> {
    Ok(exceptional_pairs_from_sets(&exceptional_exponents(f)?, &exceptional_exponents(g)?))
}

pub fn exceptional_pairs_from_sets(ef: &BTreeSet<u64>, eg: &BTreeSet<u64>) -> BTreeSet<(u64, u64)> {
    eg.iter()
        .flat_map(|&k| ef.iter().map(move |&l| (k, l)))
        .filter(|(k, l)| k.gcd(l) == 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{QPoly, QiPoly};

    fn q(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn profiles() {
        let f = q("X^2*(X-1)^3*(X-2)");
        assert_eq!(leveque_profile(&f, 2).unwrap().expanded(), vec![2, 2, 1]);
        assert_eq!(leveque_profile(&f, 3).unwrap().expanded(), vec![3, 3, 1]);
        assert_eq!(leveque_profile(&q("X^2-1"), 2).unwrap().tuple, vec![(2, 2)]);
        assert!(!satisfies_leveque(&f, 2).unwrap());
        assert!(satisfies_leveque(&f, 3).unwrap());
        assert!(satisfies_leveque(&q("(X-1)(X-2)(X-3)"), 2).unwrap());
        assert!(leveque_profile(&q("7"), 2).is_err());
        assert!(leveque_profile(&f, 1).is_err());
        // Irreducible quadratic: two conjugate roots.
        assert_eq!(leveque_profile(&q("X^2+1"), 3).unwrap().expanded(), vec![3, 3]);
    }

    #[test]
    fn exceptional_forms() {
        let form = exceptional_form(&q("X(X-1)^2"), 2).unwrap().unwrap();
        assert_eq!((form.s, form.p.clone(), form.c.clone()), (1, q("X-1"), q("1").coeff(0)));
        assert!(form.c_is_power);
        assert_eq!(exceptional_form(&q("X^2(X-1)^3"), 2).unwrap(), None);
        let form = exceptional_form(&q("X^5"), 2).unwrap().unwrap();
        assert_eq!((form.s, form.p), (5, QPoly::one()));
        let form = exceptional_form(&q("3*X*(X^2+1)^2"), 2).unwrap().unwrap();
        assert!(!form.c_is_power);
        assert_eq!(form.reconstruct(), q("3*X*(X^2+1)^2"));
    }

    #[test]
    fn classifier_fixtures() {
        let f: QiPoly = "X^3-6*i*X^2-9*X+4*i".parse().unwrap();
        match classify_leveque_case(&f, 2).unwrap() {
            LeVequeCase::SquareIterateExceptional { square, form } => {
                assert_eq!(square, "X*(X^4-9*i*X^3-27*X^2+30*i*X+9)^2".parse().unwrap());
                assert_eq!(form.s, 1);
                assert_eq!(form.p, "X^4-9*i*X^3-27*X^2+30*i*X+9".parse().unwrap());
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            classify_leveque_case(&q("X(X-1)^2"), 2).unwrap(),
            LeVequeCase::ExceptionalForm(ExceptionalForm { s: 1, .. })
        ));
        match classify_leveque_case(&q("(X-1)(X-2)(X-3)"), 5).unwrap() {
            LeVequeCase::LeVequeIterate { j, profile } => {
                assert_eq!(j, 1);
                assert_eq!(profile.expanded(), vec![5, 5, 5]);
            }
            other => panic!("{other:?}"),
        }
        // Two simple roots with m = 2 fail at j = 1 but not at j = 2.
        assert!(matches!(
            classify_leveque_case(&q("X^2-3"), 2).unwrap(),
            LeVequeCase::LeVequeIterate { j: 2, .. }
        ));
        assert!(classify_leveque_case(&q("X+1"), 2).is_err());
        assert!(classify_leveque_case(&q("4*X^3"), 2).is_err());
    }

    #[test]
    fn exponent_sets() {
        let set = |v: &[u64]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(exceptional_exponents(&q("X^2*(X-1)^3*(X-2)")).unwrap(), set(&[1, 2]));
        assert_eq!(exceptional_exponents(&q("(X-1)(X-2)")).unwrap(), set(&[1, 2]));
        assert_eq!(exceptional_exponents(&q("(X-1)(X-2)(X-3)(X-4)")).unwrap(), set(&[1]));
        assert!(exceptional_exponents(&q("(X-1)^4")).is_err());

        let pairs = |v: &[(u64, u64)]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(exceptional_pairs_from_sets(&set(&[1, 2]), &set(&[1, 2])), pairs(&[(1, 1), (1, 2), (2, 1)]));
        assert_eq!(exceptional_pairs_from_sets(&set(&[1]), &set(&[1])), pairs(&[(1, 1)]));
        assert_eq!(
            exceptional_pairs_from_sets(&set(&[1, 2, 3]), &set(&[1, 2])),
            pairs(&[(1, 1), (1, 2), (1, 3), (2, 1), (2, 3)])
        );
        assert_eq!(
            exceptional_pairs(&q("(X-1)(X-2)"), &q("(X-1)(X-2)(X-3)(X-4)")).unwrap(),
            pairs(&[(1, 1), (1, 2)])
        );
    }

    #[test]
    fn exceptional_exponents_match_leveque() {
        for f in ["X^2*(X-1)^3*(X-2)", "(X-1)^4*(X+1)^6", "X^3*(X^2+1)^2", "(X-1)^5*(X-2)^3*(X-3)^2"] {
            let f = q(f);
            let set = exceptional_exponents(&f).unwrap();
            for l in 2..40u64 {
                assert_eq!(set.contains(&l), !satisfies_leveque(&f, l).unwrap(), "{f} at {l}");
            }
        }
    }
}
