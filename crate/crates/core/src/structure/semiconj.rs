use num_traits::{One, Zero};

use super::leveque::ExceptionalForm;
use crate::error::{Error, Result};
use crate::exactmath::modular::fingerprint_primes;
use crate::exactmath::Rational;
use crate::multdep::{mult_rank, test_dependence, Status};
use crate::poly::{Polynomial, QPoly, Scalar};

/// `f̂(X) = X^s · f̃(X^ℓ)` with `f̃ = c^{1/ℓ} · p`, for `f = c·X^s·p^ℓ`.
///
/// Fails when `c` has no `ℓ`-th root in the working domain.
///
/// ```
/// use arithdyn::poly::QPoly;
/// use arithdyn::structure::{build_hat, exceptional_form};
/// let f: QPoly = "4*X*(X-1)^2".parse().unwrap();
/// let form = exceptional_form(&f, 2).unwrap().unwrap();
/// assert_eq!(build_hat(&form).unwrap().to_string(), "2*X^3 - 2*X");
/// ```
pub fn build_hat<F: Scalar>(form: &ExceptionalForm<F>) -> Result<Polynomial<F>> {
    let l = u32::try_from(form.m).map_err(|_| Error::Overflow("exponent".into()))?;
    let root = form.c.nth_root(l).ok_or_else(|| {
        Error::Constraint(format!("content {} is not a {l}-th power in {:?}", form.c, F::DOMAIN))
    })?;
    let tilde = form.p.scale(&root);
    Ok(Polynomial::monomial(F::one(), form.s) * tilde.spread(l as usize))
}

/// Exact check of `f^N(X^ℓ) = f̂^N(X)^ℓ`.
pub fn verify_semiconjugacy<F: Scalar>(f: &Polynomial<F>, hat: &Polynomial<F>, l: u32, n: usize) -> Result<bool> {
    if n == 0 || l == 0 {
        return Err(Error::Precondition("N and ℓ must be positive".into()));
    }
    if f.deg() != hat.deg() {
        return Ok(false);
    }
    let lhs = f.iterate(n)?.spread(l as usize);
    let rhs = hat.iterate(n)?.pow(l);
    Ok(lhs == rhs)
}

/// Default degree bound for [`common_iterate_search`].
pub const DEFAULT_COMMON_ITERATE_MAXDEG: u64 = 1_000_000;

/// Largest degree at which candidate iterates are compared coefficientwise.
pub const EXACT_COMPARE_DEGREE: u64 = 1 << 14;

/// Smallest `(n, m)` with `f^n = g^m` and `deg f^n ≤ maxdeg`.
///
/// Only index pairs with `(deg f)^n = (deg g)^m` are candidates. Each is
/// screened by evaluating both iterates at a few points modulo word-size
/// primes; survivors are compared exactly. A survivor too large to expand
/// is reported as [`Error::BudgetExceeded`] rather than guessed.
pub fn common_iterate_search<F: Scalar>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    maxdeg: u64,
) -> Result<Option<(usize, usize)>> {
    let (a, b) = (f.deg() as u64, g.deg() as u64);
    if a < 2 || b < 2 {
        return Err(Error::Precondition("common iterate search needs degrees at least 2".into()));
    }
    let mut dn = a;
    let mut n = 1;
    while dn <= maxdeg {
        let (mut dm, mut m) = (b, 1);
        while dm < dn {
            dm *= b;
            m += 1;
        }
        if dm == dn && fingerprints_agree(f, n, g, m) {
            if dn > EXACT_COMPARE_DEGREE {
                return Err(Error::BudgetExceeded { largest_feasible: n });
            }
            if f.iterate(n)? == g.iterate(m)? {
                return Ok(Some((n, m)));
            }
        }
        n += 1;
        dn = match dn.checked_mul(a) {
            Some(d) => d,
            None => break,
        };
    }
    Ok(None)
}

fn fingerprints_agree<F: Scalar>(f: &Polynomial<F>, n: usize, g: &Polynomial<F>, m: usize) -> bool {
    let iterate_mod = |h: &Polynomial<F>, times: usize, x: u64, r| {
        let mut v = x;
        for _ in 0..times {
            v = h.eval_mod(v, r)?;
        }
        Some(v)
    };
    for r in fingerprint_primes() {
        for x in [2u64, 3, 5, 7] {
            if let (Some(u), Some(v)) = (iterate_mod(f, n, x, r), iterate_mod(g, m, x, r)) {
                if u != v {
                    return false;
                }
            }
        }
    }
    true
}

/// Inputs for [`dependent_family`]: `f^i = X^s f̃^ℓ`, `g^j = X^t g̃^k`, the
/// hats built from them, and a common iterate `f̂^n = ĝ^m`.
#[derive(Clone, Debug)]
pub struct FamilyData {
    pub i: usize,
    pub j: usize,
    pub l: u32,
    pub k: u32,
    pub f_hat: QPoly,
    pub g_hat: QPoly,
    pub n: usize,
    pub m: usize,
}

/// One emitted pair `(z, w) = (f^{inr}(u^ℓ), g^{jmr}(u^k))` with `z^k = w^ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub r: usize,
    pub z: Rational,
    pub w: Rational,
}

fn orbit_point(f: &QPoly, times: usize, x: &Rational) -> Rational {
    (0..times).fold(x.clone(), |v, _| f.eval(&v))
}

/// The rank-one dependent pairs produced by the semiconjugacies and the
/// common iterate, over Q with trivial root of unity and `x = u^ℓ`.
///
/// At every `r` the chain `f^{inr}(u^ℓ) = f̂^{nr}(u)^ℓ`,
/// `f̂^{nr}(u) = ĝ^{mr}(u)`, `ĝ^{mr}(u)^k = g^{jmr}(u^k)` is checked exactly
/// and the pair is re-tested for dependence of rank one.
pub fn dependent_family(
    f: &QPoly,
    g: &QPoly,
    data: &FamilyData,
    u: &Rational,
    count: usize,
) -> Result<Vec<FamilyMember>> {
    if data.k == 1 && data.l == 1 {
        return Err(Error::Precondition("k = ℓ = 1 gives no nontrivial relation".into()));
    }
    if data.i == 0 || data.j == 0 || data.n == 0 || data.m == 0 {
        return Err(Error::Precondition("iterate indices must be positive".into()));
    }
    let fi = f.iterate(data.i)?;
    let gj = g.iterate(data.j)?;
    if !verify_semiconjugacy(&fi, &data.f_hat, data.l, 1)? {
        return Err(Error::IdentityFailed("f^i(X^ℓ) ≠ f̂(X)^ℓ".into()));
    }
    if !verify_semiconjugacy(&gj, &data.g_hat, data.k, 1)? {
        return Err(Error::IdentityFailed("g^j(X^k) ≠ ĝ(X)^k".into()));
    }
    if data.f_hat.iterate(data.n)? != data.g_hat.iterate(data.m)? {
        return Err(Error::IdentityFailed("f̂^n ≠ ĝ^m".into()));
    }
    let x = num_traits::Pow::pow(u, data.l);
    let yk = num_traits::Pow::pow(u, data.k);
    let mut out = Vec::with_capacity(count);
    for r in 1..=count {
        let fail = |what: &str| Error::IdentityFailed(format!("{what} at r = {r}"));
        let z = orbit_point(&fi, data.n * r, &x);
        let w = orbit_point(&gj, data.m * r, &yk);
        let fh = orbit_point(&data.f_hat, data.n * r, u);
        let gh = orbit_point(&data.g_hat, data.m * r, u);
        if z != num_traits::Pow::pow(&fh, data.l) {
            return Err(fail("f^{inr}(u^ℓ) = f̂^{nr}(u)^ℓ"));
        }
        if fh != gh {
            return Err(fail("f̂^{nr}(u) = ĝ^{mr}(u)"));
        }
        if w != num_traits::Pow::pow(&gh, data.k) {
            return Err(fail("ĝ^{mr}(u)^k = g^{jmr}(u^k)"));
        }
        if num_traits::Pow::pow(&z, data.k) != num_traits::Pow::pow(&w, data.l) {
            return Err(fail("z^k = w^ℓ"));
        }
        if z.is_zero() || w.is_zero() {
            return Err(fail("nonzero orbit values"));
        }
        let pair = [z.clone(), w.clone()];
        if test_dependence(&pair).status != Status::Dependent || mult_rank(&pair)? != 1 {
            return Err(fail("dependence of rank one"));
        }
        out.push(FamilyMember { r, z, w });
    }
    debug_assert!(out.iter().all(|p| !p.z.is_one()));
    Ok(out)
}
