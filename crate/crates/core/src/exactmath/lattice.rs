use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense rectangular matrix of big integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MalformedMatrix(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from rows; `cols` is needed so that zero-row
    /// matrices still have a width.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::MalformedMatrix(format!("row {bad} has length {}, expected {cols}", rows[bad].len())));
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| v.into()).collect()).collect(), cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        echelon(&mut rows, self.cols).len()
    }

    /// `k · M` for a row vector `k`.
    pub fn left_mul(&self, k: &[BigInt]) -> Vec<BigInt> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| &k[r] * self.get(r, c)).sum())
            .collect()
    }
}

/// Unimodular row reduction of the first `width` columns into echelon form.
/// Returns the pivot columns; the first `pivots.len()` rows carry them.
fn echelon(rows: &mut [Vec<BigInt>], width: usize) -> Vec<usize> {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        if top == n {
            break;
        }
        loop {
            let smallest = (top..n)
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(p) = smallest else { break };
            rows.swap(top, p);
            let mut cleared = true;
            for i in top + 1..n {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[top][col]);
                let (head, tail) = rows.split_at_mut(i);
                axpy(&mut tail[0], &q, &head[top]);
                cleared &= tail[0][col].is_zero();
            }
            if cleared {
                pivots.push(col);
                top += 1;
                break;
            }
        }
    }
    pivots
}

/// `row -= q * pivot`.
fn axpy(row: &mut [BigInt], q: &BigInt, pivot: &[BigInt]) {
    for (a, b) in row.iter_mut().zip(pivot) {
        if !b.is_zero() {
            *a -= q * b;
        }
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: echelon,
/// positive pivots, entries above each pivot reduced into `[0, pivot)`.
/// Zero rows are dropped, so the output is a canonical basis.
pub fn hermite_form(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let Some(width) = rows.first().map(Vec::len) else {
        return rows;
    };
    let pivots = echelon(&mut rows, width);
    rows.truncate(pivots.len());
    for (r, &c) in pivots.iter().enumerate() {
        if rows[r][c].is_negative() {
            for v in rows[r].iter_mut() {
                *v = -&*v;
            }
        }
        for above in 0..r {
            let q = rows[above][c].div_floor(&rows[r][c]);
            if !q.is_zero() {
                let (head, tail) = rows.split_at_mut(r);
                axpy(&mut head[above], &q, &tail[0]);
            }
        }
    }
    rows
}

/// Basis of the integer left kernel `{k : k·M = 0}`, in Hermite form.
///
/// The rows of `[M | I]` are reduced by unimodular operations; rows whose
/// `M`-part vanishes carry kernel vectors in their identity part, and
/// together they span the whole kernel lattice.
pub fn left_kernel(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let (n, c) = (m.rows(), m.cols());
    let mut aug: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let rank = echelon(&mut aug, c).len();
    let kernel: Vec<Vec<BigInt>> = aug.into_iter().skip(rank).map(|r| r[c..].to_vec()).collect();
    hermite_form(kernel)
}
