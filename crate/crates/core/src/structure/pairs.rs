use std::collections::HashMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::poly::{dickson, Polynomial, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairKind {
    FirstKind,
    SecondKind,
    ThirdKind,
    FourthKind,
    FifthKind,
    Specific,
}

/// Parameters of a standard or specific pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairParams<F> {
    /// `(X^m, a X^r p(X)^m)`, `0 ≤ r ≤ m`, `gcd(r, m) = 1`, `r + deg p > 0`.
    First { m: u32, r: u32, a: F, p: Polynomial<F> },
    /// `(X^2, (a X^2 + b) p(X)^2)`.
    Second { a: F, b: F, p: Polynomial<F> },
    /// `(D_m(X, a^n), D_n(X, a^m))`, `gcd(m, n) = 1`.
    Third { m: u32, n: u32, a: F },
    /// `(a^{-m/2} D_m(X, a), -b^{n/2} D_n(X, b))`, `gcd(m, n) = 2`.
    Fourth { m: u32, n: u32, a: F, b: F },
    /// `((a X^2 - 1)^3, 3X^4 - 4X^3)`.
    Fifth { a: F },
    /// `(D_m(X, a^{n/d}), -D_n(X cos(π/d), a^{m/d}))`, `d = gcd(m, n) ≥ 3`.
    Specific { m: u32, n: u32, a: F },
}

impl<F> PairParams<F> {
    pub fn kind(&self) -> PairKind {
        match self {
            PairParams::First { .. } => PairKind::FirstKind,
            PairParams::Second { .. } => PairKind::SecondKind,
            PairParams::Third { .. } => PairKind::ThirdKind,
            PairParams::Fourth { .. } => PairKind::FourthKind,
            PairParams::Fifth { .. } => PairKind::FifthKind,
            PairParams::Specific { .. } => PairKind::Specific,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardPair<F> {
    pub params: PairParams<F>,
    pub switched: bool,
    pub f1: Polynomial<F>,
    pub g1: Polynomial<F>,
}

impl<F> StandardPair<F> {
    pub fn kind(&self) -> PairKind {
        self.params.kind()
    }
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Constraint(what.to_string()))
    }
}

fn nonzero<F: Scalar>(v: &F, name: &str) -> Result<()> {
    require(!v.is_zero(), &format!("{name} ≠ 0"))
}

/// Builds the pair, validating the constraints of its kind.
///
/// ```
/// use arithdyn::exactmath::Rational;
/// use arithdyn::poly::QPoly;
/// use arithdyn::structure::{make_standard_pair, PairParams};
/// let a = Rational::from_integer(1.into());
/// let pair = make_standard_pair(PairParams::Third { m: 2, n: 3, a }, false).unwrap();
/// assert_eq!(pair.f1.to_string(), "X^2 - 2");
/// assert_eq!(pair.g1.to_string(), "X^3 - 3*X");
/// ```
pub fn make_standard_pair<F: Scalar>(params: PairParams<F>, switched: bool) -> Result<StandardPair<F>> {
    let x = Polynomial::<F>::x;
    let (f1, g1) = match &params {
        PairParams::First { m, r, a, p } => {
            require(*m >= 1, "m ≥ 1")?;
            require(r <= m, "0 ≤ r ≤ m")?;
            require(r.gcd(m) == 1, "gcd(r, m) = 1")?;
            nonzero(a, "a")?;
            require(!p.is_zero(), "p ≠ 0")?;
            require(*r as usize + p.deg() > 0, "r + deg p > 0")?;
            let g = Polynomial::monomial(a.clone(), *r as usize) * p.pow(*m);
            (x().pow(*m), g)
        }
        PairParams::Second { a, b, p } => {
            nonzero(a, "a")?;
            nonzero(b, "b")?;
            require(!p.is_zero(), "p ≠ 0")?;
            let quad = Polynomial::new(vec![b.clone(), F::zero(), a.clone()]);
            (x().pow(2), quad * p.pow(2))
        }
        PairParams::Third { m, n, a } => {
            require(*m >= 1 && *n >= 1, "m, n ≥ 1")?;
            require(m.gcd(n) == 1, "gcd(m, n) = 1")?;
            nonzero(a, "a")?;
            (dickson(*m as usize, &a.pow(*n)), dickson(*n as usize, &a.pow(*m)))
        }
        PairParams::Fourth { m, n, a, b } => {
            require(m.gcd(n) == 2, "gcd(m, n) = 2")?;
            nonzero(a, "a")?;
            nonzero(b, "b")?;
            let a_inv = a.pow(m / 2).inv().expect("nonzero");
            let f1 = dickson(*m as usize, a).scale(&a_inv);
            let g1 = dickson(*n as usize, b).scale(&-b.pow(n / 2));
            (f1, g1)
        }
        PairParams::Fifth { a } => {
            nonzero(a, "a")?;
            let inner = Polynomial::new(vec![-F::one(), F::zero(), a.clone()]);
            (inner.pow(3), Polynomial::from_i64s(&[0, 0, 0, -4, 3]))
        }
        PairParams::Specific { m, n, a } => {
            let d = m.gcd(n);
            require(d >= 3, "d = gcd(m, n) ≥ 3")?;
            nonzero(a, "a")?;
            let cos = cos_pi_over(d)?;
            let f1 = dickson(*m as usize, &a.pow(n / d));
            let inner = Polynomial::monomial(F::from_rational(cos), 1);
            let g1 = -dickson(*n as usize, &a.pow(m / d)).compose(&inner);
            (f1, g1)
        }
    };
    let (f1, g1) = if switched { (g1, f1) } else { (f1, g1) };
    Ok(StandardPair { params, switched, f1, g1 })
}

/// `cos(π/d)` when it is rational.
///
/// The membership condition asks for `cos(2π/d)` in the field, which over
/// Q allows `d ∈ {3, 4, 6}`; the formula itself uses `cos(π/d)`, which is
/// rational only for `d = 3`. The formula is applied as written.
fn cos_pi_over(d: u32) -> Result<Rational> {
    match d {
        3 => Ok(Rational::new(1.into(), 2.into())),
        4 | 6 => Err(Error::Constraint(format!(
            "cos(π/{d}) is irrational although cos(2π/{d}) is rational; pair not constructible over Q or Q(i)"
        ))),
        _ => Err(Error::Constraint(format!("cos(2π/{d}) ∉ Q(i); d must be 3, 4 or 6"))),
    }
}

/// All integer `(x, y)` with `|x|, |y| ≤ h` and `f(x) = g(y)`, sorted.
///
/// ```
/// use arithdyn::poly::QPoly;
/// use arithdyn::structure::scan_separated_solutions;
/// let sols = scan_separated_solutions(&"X^2".parse::<QPoly>().unwrap(), &"2X^2-1".parse().unwrap(), 50).unwrap();
/// assert!(sols.contains(&(7, 5)) && sols.contains(&(41, 29)));
/// ```
pub fn scan_separated_solutions<F: Scalar>(f: &Polynomial<F>, g: &Polynomial<F>, h: i64) -> Result<Vec<(i64, i64)>> {
    if h < 1 {
        return Err(Error::Precondition("height bound must be at least 1".into()));
    }
    let mut by_value: HashMap<F, Vec<i64>> = HashMap::new();
    for y in -h..=h {
        by_value.entry(g.eval(&F::from_i64(y))).or_default().push(y);
    }
    let mut out = Vec::new();
    for x in -h..=h {
        if let Some(ys) = by_value.get(&f.eval(&F::from_i64(x))) {
            out.extend(ys.iter().map(|&y| (x, y)));
        }
    }
    Ok(out)
}

/// A claimed shape `f^k = φ∘f1∘λ`, `ζ g^ℓ = φ∘g1∘μ`.
#[derive(Clone, Debug)]
pub struct BtShape<F> {
    pub phi: Polynomial<F>,
    pub f1: Polynomial<F>,
    pub g1: Polynomial<F>,
    pub lambda: Polynomial<F>,
    pub mu: Polynomial<F>,
    pub k: u32,
    pub l: u32,
    pub zeta: F,
}

/// Checks both composition identities exactly.
pub fn verify_bt_shape<F: Scalar>(f: &Polynomial<F>, g: &Polynomial<F>, shape: &BtShape<F>) -> Result<bool> {
    if !shape.lambda.is_linear() || !shape.mu.is_linear() {
        return Err(Error::Precondition("λ and μ must be linear".into()));
    }
    if !shape.zeta.is_root_of_unity() {
        return Err(Error::Precondition(format!("ζ = {} is not a root of unity", shape.zeta)));
    }
    let left = f.pow(shape.k) == shape.phi.compose(&shape.f1.compose(&shape.lambda));
    let right = g.pow(shape.l).scale(&shape.zeta) == shape.phi.compose(&shape.g1.compose(&shape.mu));
    Ok(left && right)
}
