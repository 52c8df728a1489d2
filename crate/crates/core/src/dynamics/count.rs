use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::orbit::{OrbitTable, DEFAULT_MAX_BITS};
use crate::error::{Error, Result};
use crate::exactmath::{is_unit, CoprimeBasis, Rational};
use crate::multdep::{relation_from_rows, MultRelation};
use crate::poly::QPoly;

/// Limits for [`count_multdep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountConfig {
    /// Largest accepted `n · N^n`.
    pub budget: u64,
    pub max_bits: u64,
    /// Skip tuples with a coordinate `±1` (rank-zero relations).
    pub rank_filter: bool,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for CountConfig {
    fn default() -> Self {
        Self { budget: 2_000_000, max_bits: DEFAULT_MAX_BITS, rank_filter: false, threads: None }
    }
}

/// Dependent index tuples of `(f_1^{m_1}(x_1), …, f_n^{m_n}(x_n))` over
/// `[1, N]^n`, with a verified certificate for each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub big_n: usize,
    pub n: usize,
    pub count: u64,
    /// `(m_1, …, m_n)` and its relation, in lexicographic index order.
    pub certificates: Vec<(Vec<usize>, MultRelation)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountSummary {
    #[serde(rename = "N")]
    pub big_n: usize,
    pub n: usize,
    pub count: u64,
    /// `count / N^{n-1}`.
    pub ratio_polynomial: f64,
    /// `count · log N / N^n`.
    pub ratio_log: f64,
}

impl CountReport {
    pub fn summary(&self) -> CountSummary {
        let big_n = self.big_n as f64;
        let count = self.count as f64;
        CountSummary {
            big_n: self.big_n,
            n: self.n,
            count: self.count,
            ratio_polynomial: count / big_n.powi(self.n as i32 - 1),
            ratio_log: count * big_n.ln() / big_n.powi(self.n as i32),
        }
    }

    /// One row per certificate: `m_1,…,m_n,k_1,…,k_n`, with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> =
            (1..=self.n).map(|i| format!("m_{i}")).chain((1..=self.n).map(|i| format!("k_{i}"))).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for (idx, rel) in &self.certificates {
            let row: Vec<String> = idx.iter().map(ToString::to_string).chain(rel.k.iter().map(ToString::to_string)).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Largest `N` with `n · N^n ≤ budget`.
fn largest_feasible(n: usize, budget: u64) -> usize {
    let mut big_n = 0usize;
    while tuple_cost(n, big_n + 1).is_some_and(|c| c <= budget) {
        big_n += 1;
    }
    big_n
}

fn tuple_cost(n: usize, big_n: usize) -> Option<u64> {
    (big_n as u64).checked_pow(n as u32)?.checked_mul(n as u64)
}

/// Counts multiplicatively dependent orbit tuples over `[1, N]^n`.
///
/// All orbit values share one coprime basis; each tuple's dependence is the
/// integer kernel of its exponent rows, so no value is ever factored.
///
/// ```
/// use arithdyn::dynamics::{count_multdep, CountConfig};
/// use arithdyn::exactmath::Rational;
/// use arithdyn::poly::QPoly;
/// let f: QPoly = "X^2+2".parse().unwrap();
/// let zero = Rational::from_integer(0.into());
/// let r = count_multdep(&[f.clone(), f], &[zero.clone(), zero], 3, &CountConfig::default()).unwrap();
/// assert_eq!(r.count, 3);
/// ```
pub fn count_multdep(fs: &[QPoly], xs: &[Rational], big_n: usize, config: &CountConfig) -> Result<CountReport> {
    let n = fs.len();
    if n == 0 || xs.len() != n {
        return Err(Error::Precondition("need equally many polynomials and starting points".into()));
    }
    if big_n == 0 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    for (i, f) in fs.iter().enumerate() {
        if f.deg() < 2 || f.is_monomial() {
            return Err(Error::Precondition(format!("f_{} must be neither linear nor a monomial", i + 1)));
        }
    }
    if !tuple_cost(n, big_n).is_some_and(|c| c <= config.budget) {
        return Err(Error::BudgetExceeded { largest_feasible: largest_feasible(n, config.budget) });
    }
    let run = || count_inner(fs, xs, big_n, config);
    match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

fn count_inner(fs: &[QPoly], xs: &[Rational], big_n: usize, config: &CountConfig) -> Result<CountReport> {
    let n = fs.len();
    let mut tables: Vec<OrbitTable> = Vec::new();
    let mut which = Vec::with_capacity(n);
    for (f, x) in fs.iter().zip(xs) {
        match tables.iter().position(|t| t.f() == f && t.x0() == x) {
            Some(i) => which.push(i),
            None => {
                which.push(tables.len());
                tables.push(OrbitTable::new(f, x, big_n, config.max_bits)?);
            }
        }
    }

    let mut distinct: Vec<Rational> = Vec::new();
    let mut slot: HashMap<&Rational, usize> = HashMap::new();
    for t in &tables {
        for v in t.values().iter().filter(|v| !v.is_zero()) {
            slot.entry(v).or_insert_with(|| {
                distinct.push(v.clone());
                distinct.len() - 1
            });
        }
    }
    let basis = CoprimeBasis::from_rationals(&distinct)?;
    let row_of = |t: usize, m: usize| -> Option<usize> { slot.get(tables[t].value(m)).copied() };

    let total = big_n.pow(n as u32);
    let results: Vec<Option<(Vec<usize>, MultRelation)>> = (0..total)
        .into_par_iter()
        .map(|code| {
            let mut idx = vec![0; n];
            let mut c = code;
            for slot in idx.iter_mut().rev() {
                *slot = c % big_n + 1;
                c /= big_n;
            }
            let rows: Option<Vec<usize>> = idx.iter().zip(&which).map(|(&m, &t)| row_of(t, m)).collect();
            let rows = rows?;
            if config.rank_filter && rows.iter().any(|&r| is_unit(&distinct[r])) {
                return None;
            }
            let exps: Vec<Vec<i64>> = rows.iter().map(|&r| basis.exponents[r].clone()).collect();
            let signs: Vec<bool> = rows.iter().map(|&r| basis.signs[r]).collect();
            let rel = relation_from_rows(&exps, &signs)?;
            let values: Vec<Rational> = rows.iter().map(|&r| distinct[r].clone()).collect();
            assert!(rel.verify(&values), "certificate for {idx:?} failed exact verification");
            Some((idx, rel))
        })
        .collect();
    let certificates: Vec<_> = results.into_iter().flatten().collect();
    Ok(CountReport { big_n, n, count: certificates.len() as u64, certificates })
}
