//! Row-sum statistics of off-diagonal entries.

use crate::error::{Error, Result};
use crate::linalg::RealSymMatrix;

/// Per-row sums of positive and negative off-diagonal entries and the
/// shifted diagonals `m_i^+ = m_ii + r_i^+`, `m_i^- = m_ii - r_i^-`.
#[derive(Debug, Clone, PartialEq)]
pub struct RowStats {
    pub diag: Vec<f64>,
    pub r_plus: Vec<f64>,
    pub r_minus: Vec<f64>,
    pub m_plus: Vec<f64>,
    pub m_minus: Vec<f64>,
}

impl RowStats {
    pub fn n(&self) -> usize {
        self.diag.len()
    }
}

pub fn row_stats(m: &RealSymMatrix) -> RowStats {
    let n = m.n();
    let mut r_plus = vec![0.0; n];
    let mut r_minus = vec![0.0; n];
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let v = m.get(i, j);
            if v > 0.0 {
                r_plus[i] += v;
            } else if v < 0.0 {
                r_minus[i] -= v;
            }
        }
    }
    let diag: Vec<f64> = (0..n).map(|i| m.diag(i)).collect();
    let m_plus = diag.iter().zip(&r_plus).map(|(d, r)| d + r).collect();
    let m_minus = diag.iter().zip(&r_minus).map(|(d, r)| d - r).collect();
    RowStats {
        diag,
        r_plus,
        r_minus,
        m_plus,
        m_minus,
    }
}

/// Two-row quantities for one unordered pair `{i, j}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairEntry {
    pub a_ij_plus: f64,
    pub a_ij_minus: f64,
    pub b_ij_plus: f64,
    pub b_ij_minus: f64,
    pub s_ij_plus: f64,
    pub s_ij_minus: f64,
}

/// Two-row statistics of a pair `(A, B)` over all unordered row pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct PairStats {
    n: usize,
    pub a: RowStats,
    pub b: RowStats,
    entries: Vec<PairEntry>,
}

/// `m_ii m_jj - r_i r_j` for the chosen sign of row sum.
fn two_row_product(s: &RowStats, i: usize, j: usize, plus: bool) -> f64 {
    let r = if plus { &s.r_plus } else { &s.r_minus };
    s.diag[i] * s.diag[j] - r[i] * r[j]
}

impl PairStats {
    pub fn n(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        // Row-major index of (i, j) in the strict upper triangle.
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    /// Quantities for rows `i ≠ j`; symmetric in `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> PairEntry {
        assert!(i != j && i < self.n && j < self.n, "invalid row pair ({i}, {j})");
        self.entries[self.slot(i, j)]
    }

    /// All unordered pairs `(i, j)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| (i, j)))
    }
}

pub fn pair_stats(a: &RealSymMatrix, b: &RealSymMatrix) -> Result<PairStats> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let n = a.n();
    if n < 2 {
        return Err(Error::InvalidDimension { n, min: 2 });
    }
    let sa = row_stats(a);
    let sb = row_stats(b);
    let mut entries = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let cross = sa.diag[i] * sb.diag[j] + sa.diag[j] * sb.diag[i];
            entries.push(PairEntry {
                a_ij_plus: two_row_product(&sa, i, j, true),
                a_ij_minus: two_row_product(&sa, i, j, false),
                b_ij_plus: two_row_product(&sb, i, j, true),
                b_ij_minus: two_row_product(&sb, i, j, false),
                s_ij_plus: cross + sa.r_plus[i] * sb.r_minus[j] + sa.r_plus[j] * sb.r_minus[i],
                s_ij_minus: cross + sa.r_minus[i] * sb.r_plus[j] + sa.r_minus[j] * sb.r_plus[i],
            });
        }
    }
    Ok(PairStats {
        n,
        a: sa,
        b: sb,
        entries,
    })
}
