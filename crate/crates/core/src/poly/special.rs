use super::polynomial::Polynomial;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dickson polynomial `D_m(X, a)`, characterized by
/// `D_m(z + a/z, a) = z^m + (a/z)^m`.
///
/// Built from `D_0 = 2`, `D_1 = X`, `D_m = X·D_{m-1} - a·D_{m-2}`.
pub fn dickson<F: Scalar>(m: usize, a: &F) -> Polynomial<F> {
    let mut prev = Polynomial::constant(F::from_i64(2));
    if m == 0 {
        return prev;
    }
    let mut cur = Polynomial::x();
    for _ in 1..m {
        let next = &(&Polynomial::x() * &cur) - &prev.scale(a);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// The twist `α·f(α⁻¹X)`, i.e. the conjugate of `f` by `X ↦ αX`.
pub fn twist<F: Scalar>(f: &Polynomial<F>, alpha: &F) -> Result<Polynomial<F>> {
    let inv = alpha.inv().ok_or_else(|| Error::Precondition("twist by zero".into()))?;
    // coefficient c_k picks up α^(1-k)
    let mut factor = alpha.clone();
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| {
            let out = c.clone() * factor.clone();
            factor = factor.clone() * inv.clone();
            out
        })
        .collect();
    Ok(Polynomial::new(coeffs))
}
