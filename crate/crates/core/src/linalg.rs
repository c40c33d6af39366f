//! Dense symmetric linear algebra for small matrices.
//!
//! Everything here works on row-major `Vec<f64>` storage and targets the desk
//! scale this crate is built for (a few dozen rows at most).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative asymmetry accepted (and averaged away) by [`RealSymMatrix::new`].
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Sweep limit for the cyclic Jacobi solver.
pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Dense real symmetric matrix.
///
/// The stored entries are exactly symmetric: constructors average `m_ij` and
/// `m_ji` after checking that they agree within the requested tolerance.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct RealSymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl fmt::Debug for RealSymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl TryFrom<Vec<Vec<f64>>> for RealSymMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(&rows)
    }
}

impl From<RealSymMatrix> for Vec<Vec<f64>> {
    fn from(m: RealSymMatrix) -> Self {
        m.rows()
    }
}

impl RealSymMatrix {
    /// Builds a matrix from row-major entries, rejecting asymmetry beyond
    /// `SYMMETRY_TOL * (1 + max|m_ij|)`.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        Self::with_symmetry_tol(n, entries, SYMMETRY_TOL)
    }

    pub fn with_symmetry_tol(n: usize, mut entries: Vec<f64>, rel_tol: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidDimension { n, min: 1 });
        }
        if entries.len() != n * n {
            return Err(Error::EntryCount {
                n,
                expected: n * n,
                got: entries.len(),
            });
        }
        if let Some(k) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { i: k / n, j: k % n });
        }
        let scale = 1.0 + entries.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (entries[i * n + j], entries[j * n + i]);
                let diff = (a - b).abs();
                if diff > rel_tol * scale {
                    return Err(Error::Asymmetric { i, j, diff });
                }
                if a != b {
                    let avg = 0.5 * (a + b);
                    entries[i * n + j] = avg;
                    entries[j * n + i] = avg;
                }
            }
        }
        Ok(RealSymMatrix { n, data: entries })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows_with_tol(rows, SYMMETRY_TOL)
    }

    pub fn from_rows_with_tol<R: AsRef<[f64]>>(rows: &[R], rel_tol: f64) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::EntryCount {
                    n,
                    expected: n,
                    got: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::with_symmetry_tol(n, entries, rel_tol)
    }

    /// Builds a symmetric matrix from a closure evaluated on the upper triangle.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidDimension { n, min: 1 });
        }
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Self::new(n, data)
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n.max(1)])
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let n = diag.len().max(1);
        let mut data = vec![0.0; n * n];
        for (i, d) in diag.iter().enumerate() {
            data[i * n + i] = *d;
        }
        RealSymMatrix { n, data }
    }

    /// The all-ones matrix `E = e eᵀ`.
    pub fn all_ones(n: usize) -> Self {
        let n = n.max(1);
        RealSymMatrix {
            n,
            data: vec![1.0; n * n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn diag(&self, i: usize) -> f64 {
        self.data[i * self.n + i]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.data
            .chunks(self.n)
            .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diag(&self) -> f64 {
        (0..self.n).map(|i| self.diag(i).abs()).fold(0.0, f64::max)
    }

    pub fn is_entrywise_nonnegative(&self) -> bool {
        self.data.iter().all(|&v| v >= 0.0)
    }

    /// Returns `self + s * other`.
    pub fn add_scaled(&self, other: &RealSymMatrix, s: f64) -> Result<Self> {
        check_same_dim(self, other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + s * b)
            .collect();
        Ok(RealSymMatrix { n: self.n, data })
    }

    pub fn scaled(&self, s: f64) -> Self {
        RealSymMatrix {
            n: self.n,
            data: self.data.iter().map(|v| s * v).collect(),
        }
    }

    /// Principal submatrix on the given (sorted, distinct) indices.
    pub fn principal(&self, idx: &[usize]) -> Self {
        let k = idx.len();
        let mut data = Vec::with_capacity(k * k);
        for &i in idx {
            for &j in idx {
                data.push(self.get(i, j));
            }
        }
        RealSymMatrix { n: k.max(1), data }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        self.data
            .chunks(self.n)
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `xᵀ M x`.
    pub fn quad_form(&self, x: &[f64]) -> f64 {
        self.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Infinity norm of the commutator `AB - BA`.
    pub fn commutator_norm(&self, other: &RealSymMatrix) -> Result<f64> {
        check_same_dim(self, other)?;
        let n = self.n;
        let mut worst = 0.0_f64;
        for i in 0..n {
            let mut row = 0.0;
            for j in 0..n {
                let mut ab = 0.0;
                let mut ba = 0.0;
                for k in 0..n {
                    ab += self.get(i, k) * other.get(k, j);
                    ba += other.get(i, k) * self.get(k, j);
                }
                row += (ab - ba).abs();
            }
            worst = worst.max(row);
        }
        Ok(worst)
    }
}

pub(crate) fn check_same_dim(a: &RealSymMatrix, b: &RealSymMatrix) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(())
}

/// Lower-triangular Cholesky factor `L` with `M = L Lᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.l[i * self.n + j]
    }

    /// Solves `L z = b`.
    pub fn solve_lower(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut z = b.to_vec();
        for i in 0..n {
            let mut s = z[i];
            for k in 0..i {
                s -= self.get(i, k) * z[k];
            }
            z[i] = s / self.get(i, i);
        }
        z
    }

    /// Solves `Lᵀ z = b`.
    pub fn solve_upper(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut z = b.to_vec();
        for i in (0..n).rev() {
            let mut s = z[i];
            for k in (i + 1)..n {
                s -= self.get(k, i) * z[k];
            }
            z[i] = s / self.get(i, i);
        }
        z
    }

    /// `L Lᵀ` as a row-major array.
    pub fn reconstruct(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = (0..=i.min(j)).map(|k| self.get(i, k) * self.get(j, k)).sum();
            }
        }
        out
    }
}

/// Cholesky factorization. Fails when a pivot drops to
/// `1e-12 * (1 + max diagonal)` or below.
pub fn cholesky(m: &RealSymMatrix) -> Result<Cholesky> {
    let n = m.n();
    let pivot_tol = 1e-12 * (1.0 + (0..n).map(|i| m.diag(i)).fold(0.0, f64::max));
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let mut d = m.get(j, j);
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if d <= pivot_tol || !d.is_finite() {
            return Err(Error::NotPositiveDefinite { index: j, pivot: d });
        }
        let ljj = d.sqrt();
        l[j * n + j] = ljj;
        for i in (j + 1)..n {
            let mut s = m.get(i, j);
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / ljj;
        }
    }
    Ok(Cholesky { n, l })
}

/// Eigenvalues sorted ascending with their eigenvectors (`vectors[k]` pairs
/// with `values[k]`).
///
/// For [`sym_eig`] the vectors are orthonormal. For [`generalized_eig`] they
/// are `B`-orthonormal instead.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl EigenDecomposition {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

pub fn sym_eig(m: &RealSymMatrix) -> Result<EigenDecomposition> {
    sym_eig_with_sweeps(m, DEFAULT_MAX_SWEEPS)
}

/// Cyclic Jacobi rotations on a working copy of `m`.
pub fn sym_eig_with_sweeps(m: &RealSymMatrix, max_sweeps: usize) -> Result<EigenDecomposition> {
    let n = m.n();
    let mut a = m.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let total: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();

    let mut converged = false;
    for _ in 0..=max_sweeps {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| 2.0 * a[p * n + q] * a[p * n + q])
            .sum::<f64>()
            .sqrt();
        if off == 0.0 || off <= 1e-15 * total {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.is_finite() {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                } else {
                    0.0
                };
                if t == 0.0 {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // A <- A J
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                // A <- Jᵀ A
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NonConvergence { sweeps: max_sweeps });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&k| a[k * n + k]).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[i * n + k]).collect())
        .collect();
    Ok(EigenDecomposition { values, vectors })
}

/// Generalized eigenpairs `A x = μ B x` for symmetric `A` and positive
/// definite `B`, through the congruence `C = L⁻¹ A L⁻ᵀ` with `B = L Lᵀ`.
pub fn generalized_eig(a: &RealSymMatrix, b: &RealSymMatrix) -> Result<EigenDecomposition> {
    check_same_dim(a, b)?;
    let chol = cholesky(b)?;
    let n = a.n();

    // W = L⁻¹ A, one column at a time; since A is symmetric, C = L⁻¹ Wᵀ.
    let mut w = vec![0.0; n * n];
    for j in 0..n {
        let col: Vec<f64> = (0..n).map(|i| a.get(i, j)).collect();
        for (i, v) in chol.solve_lower(&col).into_iter().enumerate() {
            w[i * n + j] = v;
        }
    }
    let mut c = vec![0.0; n * n];
    for j in 0..n {
        let col: Vec<f64> = (0..n).map(|i| w[j * n + i]).collect();
        for (i, v) in chol.solve_lower(&col).into_iter().enumerate() {
            c[i * n + j] = v;
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (c[i * n + j] + c[j * n + i]);
            c[i * n + j] = avg;
            c[j * n + i] = avg;
        }
    }
    let reduced = RealSymMatrix { n, data: c };
    let eig = sym_eig(&reduced)?;
    let vectors = eig.vectors.iter().map(|y| chol.solve_upper(y)).collect();
    Ok(EigenDecomposition {
        values: eig.values,
        vectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn worked_example_a() -> RealSymMatrix {
        RealSymMatrix::from_rows(&[[14.0, 1.0, 1.0], [1.0, 11.0, -2.0], [1.0, -2.0, 13.0]])
            .unwrap()
    }

    fn worked_example_b() -> RealSymMatrix {
        RealSymMatrix::from_rows(&[[6.0, 0.0, 0.0], [0.0, 10.0, 2.0], [0.0, 2.0, 10.0]]).unwrap()
    }

    fn inf_norm_diff(a: &[f64], b: &[f64], n: usize) -> f64 {
        a.chunks(n)
            .zip(b.chunks(n))
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    #[test]
    fn rejects_asymmetric_and_bad_shapes() {
        assert!(matches!(
            RealSymMatrix::from_rows(&[[1.0, 2.0], [2.1, 1.0]]),
            Err(Error::Asymmetric { i: 0, j: 1, .. })
        ));
        assert!(matches!(
            RealSymMatrix::new(2, vec![1.0; 3]),
            Err(Error::EntryCount { .. })
        ));
        assert!(matches!(
            RealSymMatrix::new(0, vec![]),
            Err(Error::InvalidDimension { .. })
        ));
        assert!(matches!(
            RealSymMatrix::new(1, vec![f64::NAN]),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn tiny_asymmetry_is_averaged() {
        let m = RealSymMatrix::from_rows(&[[1.0, 2.0], [2.0 + 1e-14, 1.0]]).unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0));
    }

    #[test]
    fn cholesky_identity() {
        let l = cholesky(&RealSymMatrix::identity(3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l.get(i, j), if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn cholesky_worked_example_b_reconstructs() {
        let b = worked_example_b();
        let l = cholesky(&b).unwrap();
        let err = inf_norm_diff(&l.reconstruct(), b.as_slice(), 3);
        assert!(err <= 1e-9 * (1.0 + b.norm_inf()));
        assert!((0..3).all(|i| l.get(i, i) > 0.0));
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let m = RealSymMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert!(matches!(cholesky(&m), Err(Error::NotPositiveDefinite { index: 0, .. })));
        let m = RealSymMatrix::diagonal(&[1.0, -1.0]);
        assert!(matches!(cholesky(&m), Err(Error::NotPositiveDefinite { index: 1, .. })));
    }

    #[test]
    fn eig_of_diagonal() {
        let e = sym_eig(&RealSymMatrix::diagonal(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        assert_abs_diff_eq!(e.vectors[0][1].abs(), 1.0);
    }

    #[test]
    fn eig_of_all_ones() {
        let e = sym_eig(&RealSymMatrix::all_ones(3)).unwrap();
        assert_abs_diff_eq!(e.values[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.values[1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.values[2], 3.0, epsilon = 1e-12);
    }

    /// Roots of det(A - λI) for a 3x3 symmetric matrix via the trigonometric
    /// cubic formula, independent of the Jacobi solver.
    fn cubic_eigenvalues(m: &RealSymMatrix) -> [f64; 3] {
        let tr = m.diag(0) + m.diag(1) + m.diag(2);
        let minors = m.diag(0) * m.diag(1) - m.get(0, 1).powi(2)
            + m.diag(0) * m.diag(2) - m.get(0, 2).powi(2)
            + m.diag(1) * m.diag(2) - m.get(1, 2).powi(2);
        let det = m.diag(0) * (m.diag(1) * m.diag(2) - m.get(1, 2).powi(2))
            - m.get(0, 1) * (m.get(0, 1) * m.diag(2) - m.get(1, 2) * m.get(0, 2))
            + m.get(0, 2) * (m.get(0, 1) * m.get(1, 2) - m.diag(1) * m.get(0, 2));
        // λ³ - tr λ² + minors λ - det = 0; substitute λ = t + tr/3.
        let p = minors - tr * tr / 3.0;
        let q = -2.0 * tr.powi(3) / 27.0 + tr * minors / 3.0 - det;
        let r = 2.0 * (-p / 3.0).sqrt();
        let phi = (3.0 * q / (p * r)).clamp(-1.0, 1.0).acos() / 3.0;
        let mut out = [0.0; 3];
        for (k, o) in out.iter_mut().enumerate() {
            *o = r * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() + tr / 3.0;
        }
        out.sort_by(f64::total_cmp);
        out
    }

    #[test]
    fn eig_of_worked_example_a_matches_cubic_roots() {
        let a = worked_example_a();
        let want = cubic_eigenvalues(&a);
        let got = sym_eig(&a).unwrap();
        for (g, w) in got.values.iter().zip(want) {
            assert_abs_diff_eq!(*g, w, epsilon = 1e-10);
        }
        // 14 is an exact eigenvalue: (0, 1, 1) direction.
        assert_abs_diff_eq!(got.values[1], 14.0, epsilon = 1e-10);
    }

    #[test]
    fn residual_and_orthonormality() {
        let a = worked_example_a();
        let e = sym_eig(&a).unwrap();
        for (k, v) in e.vectors.iter().enumerate() {
            let av = a.mul_vec(v);
            let res = av
                .iter()
                .zip(v)
                .map(|(x, y)| (x - e.values[k] * y).abs())
                .fold(0.0, f64::max);
            assert!(res <= 1e-8 * (1.0 + a.norm_inf()));
            for (l, w) in e.vectors.iter().enumerate() {
                let dot: f64 = v.iter().zip(w).map(|(x, y)| x * y).sum();
                let want = if k == l { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(dot, want, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn generalized_with_identity_is_standard() {
        let a = worked_example_a();
        let g = generalized_eig(&a, &RealSymMatrix::identity(3)).unwrap();
        let s = sym_eig(&a).unwrap();
        for (x, y) in g.values.iter().zip(&s.values) {
            assert_abs_diff_eq!(*x, *y, epsilon = 1e-9);
        }
    }

    #[test]
    fn generalized_worked_example() {
        let (a, b) = (worked_example_a(), worked_example_b());
        let g = generalized_eig(&a, &b).unwrap();
        assert_abs_diff_eq!(g.min(), 0.804, epsilon = 5e-3);
        assert_abs_diff_eq!(g.max(), 2.352, epsilon = 5e-3);
        let tol = 1e-8 * (1.0 + a.norm_inf() + b.norm_inf());
        for (mu, x) in g.values.iter().zip(&g.vectors) {
            let ax = a.mul_vec(x);
            let bx = b.mul_vec(x);
            let res = ax.iter().zip(&bx).map(|(p, q)| (p - mu * q).abs()).fold(0.0, f64::max);
            assert!(res <= tol, "residual {res}");
        }
    }

    #[test]
    fn generalized_scalar_multiple() {
        let b = worked_example_b();
        let a = b.scaled(2.5);
        let g = generalized_eig(&a, &b).unwrap();
        for v in g.values {
            assert_abs_diff_eq!(v, 2.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn generalized_propagates_not_pd() {
        let a = worked_example_a();
        let b = RealSymMatrix::diagonal(&[1.0, -1.0, 1.0]);
        assert!(matches!(generalized_eig(&a, &b), Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn zero_sweeps_on_full_matrix_is_nonconvergence() {
        let a = worked_example_a();
        assert_eq!(
            sym_eig_with_sweeps(&a, 0),
            Err(Error::NonConvergence { sweeps: 0 })
        );
    }
}
