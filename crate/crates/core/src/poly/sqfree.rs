use super::polynomial::Polynomial;
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::exactmath::modular::{fingerprint_primes, invmod, mulmod};

/// `content · ∏ part^mult`, parts monic, squarefree and pairwise coprime,
/// multiplicities strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition<F> {
    pub content: F,
    pub parts: Vec<(Polynomial<F>, u32)>,
}

impl<F: Scalar> SquarefreeDecomposition<F> {
    pub fn reconstruct(&self) -> Polynomial<F> {
        self.parts
            .iter()
            .fold(Polynomial::constant(self.content.clone()), |acc, (g, e)| &acc * &g.pow(*e))
    }

    /// Largest multiplicity of any root (0 for constants).
    pub fn max_multiplicity(&self) -> u32 {
        self.parts.last().map_or(0, |p| p.1)
    }

    /// Number of distinct roots over the algebraic closure.
    pub fn distinct_roots(&self) -> usize {
        self.parts.iter().map(|(g, _)| g.deg()).sum()
    }
}

/// Yun's squarefree decomposition (characteristic zero).
pub fn squarefree_decompose<F: Scalar>(f: &Polynomial<F>) -> Result<SquarefreeDecomposition<F>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let content = f.leading_coeff();
    let f = f.monic();
    if f.deg() == 0 {
        return Ok(SquarefreeDecomposition { content, parts: vec![] });
    }
    if certainly_squarefree(&f) {
        return Ok(SquarefreeDecomposition { content, parts: vec![(f, 1)] });
    }
    let df = f.derivative();
    let a = f.gcd(&df);
    let mut b = f.exact_div(&a).expect("gcd divides f");
    let mut c = df.exact_div(&a).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut parts = Vec::new();
    let mut mult = 1;
    while b.deg() > 0 {
        let y = b.gcd(&d);
        if y.deg() > 0 {
            parts.push((y.clone(), mult));
        }
        b = b.exact_div(&y).expect("y divides b");
        c = d.exact_div(&y).expect("y divides d");
        d = &c - &b.derivative();
        mult += 1;
    }
    Ok(SquarefreeDecomposition { content, parts })
}

/// Product of the distinct monic irreducible factors.
pub fn radical<F: Scalar>(f: &Polynomial<F>) -> Result<Polynomial<F>> {
    let sq = squarefree_decompose(f)?;
    Ok(sq.parts.iter().fold(Polynomial::one(), |acc, (g, _)| &acc * g))
}

/// Both sides of the polynomial ABC inequality for `A + B + C = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbcReport {
    pub rad_degree: usize,
    pub max_degree: usize,
}

impl AbcReport {
    /// `deg rad(ABC) ≥ max deg + 1`.
    pub fn holds(&self) -> bool {
        self.rad_degree > self.max_degree
    }
}

/// Evaluates `deg rad(ABC)` against `max(deg A, deg B, deg C) + 1` with
/// `C = -(A + B)`.
///
/// Requires `A, B` nonzero and coprime (then so are all three pairs), and
/// not all three with vanishing derivative.
pub fn abc_check<F: Scalar>(a: &Polynomial<F>, b: &Polynomial<F>) -> Result<AbcReport> {
    let c = -(a + b);
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a.gcd(b).deg() > 0 {
        return Err(Error::Precondition("A and B must be coprime".into()));
    }
    if a.deg() == 0 && b.deg() == 0 {
        return Err(Error::Precondition("A, B, C all have vanishing derivative".into()));
    }
    let rad_degree = [a, b, &c].iter().map(|p| radical(p).map(|r| r.deg())).sum::<Result<usize>>()?;
    let max_degree = a.deg().max(b.deg()).max(c.deg());
    Ok(AbcReport { rad_degree, max_degree })
}

/// Sound one-sided test: `true` only when `f` is provably squarefree.
///
/// If `f` reduces modulo a prime without losing its leading coefficient and
/// `gcd(f mod p, f' mod p)` is constant, then `gcd(f, f')` is constant
/// over the field too (its reduction would divide both).
fn certainly_squarefree<F: Scalar>(f: &Polynomial<F>) -> bool {
    fingerprint_primes().iter().take(3).any(|r| {
        let Some(fr) = f.residues(r) else { return false };
        if fr.last().is_none_or(|&c| c == 0) {
            return false;
        }
        let dfr: Vec<u64> = fr.iter().enumerate().skip(1).map(|(k, &c)| mulmod(c, k as u64 % r.p, r.p)).collect();
        gcd_degree_mod(fr, dfr, r.p) == Some(0)
    })
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of `gcd(a, b)` over `F_p`; `None` when both vanish.
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Option<usize> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = invmod(*b.last().unwrap(), p).unwrap();
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let c = mulmod(*a.last().unwrap(), inv, p);
            for (j, &bc) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + p - mulmod(c, bc, p)) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().checked_sub(1)
}
