use super::polynomial::Polynomial;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Default degree cap for [`decompose_functional`].
pub const DEFAULT_DECOMPOSE_MAX_DEGREE: usize = 24;

/// All decompositions `f = g ∘ h` with `deg g, deg h ≥ 2`, one per inner
/// degree, up to linear equivalence.
///
/// Each `h` is normalized monic with `h(0) = 0`, which makes it unique for
/// its degree in characteristic zero. The top coefficients of `f` then fix
/// `h` as an approximate `r`-th root, and `g` is read off from the
/// `h`-adic expansion of `f`.
pub fn decompose_functional<F: Scalar>(
    f: &Polynomial<F>,
    max_degree: usize,
) -> Result<Vec<(Polynomial<F>, Polynomial<F>)>> {
    let n = f.deg();
    if n > max_degree {
        return Err(Error::Precondition(format!("degree {n} exceeds decomposition cap {max_degree}")));
    }
    if n < 4 {
        return Ok(Vec::new());
    }
    let lead = f.leading_coeff();
    let monic = f.monic();
    let mut out = Vec::new();
    for s in (2..=n / 2).filter(|s| n % s == 0) {
        if let Some((g, h)) = decompose_with_inner_degree(&monic, n / s, s) {
            out.push((g.scale(&lead), h));
        }
    }
    Ok(out)
}

fn decompose_with_inner_degree<F: Scalar>(
    f: &Polynomial<F>,
    r: usize,
    s: usize,
) -> Option<(Polynomial<F>, Polynomial<F>)> {
    let n = r * s;
    let r_inv = F::from_i64(r as i64).inv()?;
    let mut h = vec![F::zero(); s + 1];
    h[s] = F::one();
    for k in 1..s {
        let power = Polynomial::new(h.clone()).pow(r as u32);
        let delta = f.coeff(n - k) - power.coeff(n - k);
        h[s - k] = h[s - k].clone() + delta * r_inv.clone();
    }
    let h = Polynomial::new(h);

    let mut outer = Vec::with_capacity(r + 1);
    let mut rest = f.clone();
    while rest.deg() >= s {
        let (q, rem) = rest.div_rem(&h).ok()?;
        if rem.deg() > 0 {
            return None;
        }
        outer.push(rem.coeff(0));
        rest = q;
    }
    if rest.deg() > 0 {
        return None;
    }
    outer.push(rest.coeff(0));
    let g = Polynomial::new(outer);
    (g.compose(&h) == *f).then_some((g, h))
}

/// Whether `(g1, h1)` and `(g2, h2)` differ by a linear change of variable
/// in the middle: `h1 = λ ∘ h2` and `g2 = g1 ∘ λ` for some linear `λ`.
pub fn linearly_equivalent<F: Scalar>(
    a: &(Polynomial<F>, Polynomial<F>),
    b: &(Polynomial<F>, Polynomial<F>),
) -> bool {
    let ((g1, h1), (g2, h2)) = (a, b);
    if h1.deg() != h2.deg() || h2.is_zero() {
        return false;
    }
    let Some(inv) = h2.leading_coeff().inv() else { return false };
    let scale = h1.leading_coeff() * inv;
    let shift = h1.coeff(0) - scale.clone() * h2.coeff(0);
    let lambda = Polynomial::new(vec![shift, scale]);
    *h1 == lambda.compose(h2) && *g2 == g1.compose(&lambda)
}
