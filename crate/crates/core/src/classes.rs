//! Matrix-class certificates (diagonal dominance, definiteness, copositivity)
//! and the spectral shift `A -> A + μB`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Hypothesis, Result};
use crate::linalg::{check_same_dim, cholesky, generalized_eig, RealSymMatrix};

/// Largest dimension handled by exact copositivity enumeration by default.
pub const DEFAULT_MAX_EXACT_N: usize = 12;

/// Outcome of a copositivity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Copositivity {
    /// Certified by exact minimization over the simplex.
    Copositive,
    /// Sufficient condition: every entry is nonnegative.
    SufficientNonnegative,
    /// Sufficient condition: the matrix is positive definite.
    SufficientPositiveDefinite,
    NotCopositive,
    /// No sufficient condition fired and the dimension exceeded the exact cap.
    /// Only ever stored in a [`ClassCertificate`]; [`check_copositive`]
    /// returns an error instead.
    Undecided,
}

impl Copositivity {
    pub fn is_copositive(self) -> bool {
        matches!(
            self,
            Copositivity::Copositive
                | Copositivity::SufficientNonnegative
                | Copositivity::SufficientPositiveDefinite
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CopositivityVerdict {
    pub verdict: Copositivity,
    /// Minimum of `xᵀMx` over the unit simplex when the exact path ran.
    pub simplex_min: Option<f64>,
    /// `x ≥ 0` with `xᵀMx < 0`, present iff the verdict is `NotCopositive`.
    pub witness: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassCertificate {
    pub is_sdd: bool,
    pub is_dd: bool,
    pub is_pd: bool,
    pub copositivity: Copositivity,
    pub witness: Option<Vec<f64>>,
}

impl ClassCertificate {
    pub fn compute(m: &RealSymMatrix, max_exact_n: usize) -> Self {
        let dd = check_sdd(m);
        let is_pd = check_pd(m);
        let (copositivity, witness) = match check_copositive(m, max_exact_n) {
            Ok(v) => (v.verdict, v.witness),
            Err(_) => (Copositivity::Undecided, None),
        };
        ClassCertificate {
            is_sdd: dd.strict,
            is_dd: dd.weak,
            is_pd,
            copositivity,
            witness,
        }
    }

    pub fn is_copositive(&self) -> bool {
        self.copositivity.is_copositive()
    }
}

/// Result of a diagonal-dominance test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dominance {
    /// `|m_ii| > Σ_{j≠i} |m_ij|` for every row.
    pub strict: bool,
    /// `|m_ii| ≥ Σ_{j≠i} |m_ij|` for every row.
    pub weak: bool,
}

pub fn check_sdd(m: &RealSymMatrix) -> Dominance {
    let n = m.n();
    let mut strict = true;
    let mut weak = true;
    for i in 0..n {
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| m.get(i, j).abs()).sum();
        let d = m.diag(i).abs();
        strict &= d > off;
        weak &= d >= off;
    }
    Dominance { strict, weak }
}

pub fn check_pd(m: &RealSymMatrix) -> bool {
    cholesky(m).is_ok()
}

/// Copositivity test.
///
/// Nonnegative and positive definite matrices are accepted without search.
/// Otherwise, for `n ≤ max_exact_n`, `xᵀMx` is minimized over the unit
/// simplex by solving the stationarity system `M_SS x_S = t e, eᵀx_S = 1` on
/// every support `S`.
pub fn check_copositive(m: &RealSymMatrix, max_exact_n: usize) -> Result<CopositivityVerdict> {
    if m.is_entrywise_nonnegative() {
        return Ok(CopositivityVerdict {
            verdict: Copositivity::SufficientNonnegative,
            simplex_min: None,
            witness: None,
        });
    }
    if check_pd(m) {
        return Ok(CopositivityVerdict {
            verdict: Copositivity::SufficientPositiveDefinite,
            simplex_min: None,
            witness: None,
        });
    }
    let n = m.n();
    if n > max_exact_n {
        return Err(Error::DimensionTooLarge { n, max: max_exact_n });
    }
    let (min, argmin) = simplex_minimum(m);
    let cop_tol = 1e-10 * (1.0 + m.norm_inf());
    if min >= -cop_tol {
        Ok(CopositivityVerdict {
            verdict: Copositivity::Copositive,
            simplex_min: Some(min),
            witness: None,
        })
    } else {
        Ok(CopositivityVerdict {
            verdict: Copositivity::NotCopositive,
            simplex_min: Some(min),
            witness: Some(argmin),
        })
    }
}

/// Global minimum of `xᵀMx` over `{x ≥ 0, eᵀx = 1}` together with a minimizer.
pub fn simplex_minimum(m: &RealSymMatrix) -> (f64, Vec<f64>) {
    let n = m.n();
    let feas_tol = 1e-10;
    let mut best = f64::INFINITY;
    let mut best_x = vec![0.0; n];

    for i in 0..n {
        if m.diag(i) < best {
            best = m.diag(i);
            best_x = vec![0.0; n];
            best_x[i] = 1.0;
        }
    }

    for mask in 1u64..(1u64 << n) {
        let support: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if support.len() < 2 {
            continue;
        }
        let Some(xs) = stationary_point(m, &support) else {
            continue;
        };
        if xs.iter().any(|&v| v < -feas_tol) {
            continue;
        }
        let mut x = vec![0.0; n];
        for (&i, &v) in support.iter().zip(&xs) {
            x[i] = v.max(0.0);
        }
        let s: f64 = x.iter().sum();
        if s <= 0.0 {
            continue;
        }
        x.iter_mut().for_each(|v| *v /= s);
        let val = m.quad_form(&x);
        if val < best {
            best = val;
            best_x = x;
        }
    }
    (best, best_x)
}

/// Solves the bordered system `[M_SS -e; eᵀ 0] [x; t] = [0; 1]` by Gaussian
/// elimination with partial pivoting. `None` when the system is singular.
fn stationary_point(m: &RealSymMatrix, support: &[usize]) -> Option<Vec<f64>> {
    let k = support.len();
    let dim = k + 1;
    let mut sys = vec![0.0; dim * (dim + 1)];
    let w = dim + 1;
    for (r, &i) in support.iter().enumerate() {
        for (c, &j) in support.iter().enumerate() {
            sys[r * w + c] = m.get(i, j);
        }
        sys[r * w + k] = -1.0;
        sys[r * w + dim] = 0.0;
    }
    for c in 0..k {
        sys[k * w + c] = 1.0;
    }
    sys[k * w + dim] = 1.0;

    let scale = 1.0 + m.norm_inf();
    for col in 0..dim {
        let piv = (col..dim)
            .max_by(|&a, &b| sys[a * w + col].abs().total_cmp(&sys[b * w + col].abs()))
            .unwrap();
        if sys[piv * w + col].abs() <= 1e-12 * scale {
            return None;
        }
        if piv != col {
            for c in 0..w {
                sys.swap(piv * w + c, col * w + c);
            }
        }
        for r in (col + 1)..dim {
            let f = sys[r * w + col] / sys[col * w + col];
            if f != 0.0 {
                for c in col..w {
                    sys[r * w + c] -= f * sys[col * w + c];
                }
            }
        }
    }
    let mut sol = vec![0.0; dim];
    for r in (0..dim).rev() {
        let mut s = sys[r * w + dim];
        for c in (r + 1)..dim {
            s -= sys[r * w + c] * sol[c];
        }
        sol[r] = s / sys[r * w + r];
    }
    sol.truncate(k);
    Some(sol)
}

/// A validated pair `(A, B)` with cached class certificates.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPair {
    a: RealSymMatrix,
    b: RealSymMatrix,
    cert_a: ClassCertificate,
    cert_b: ClassCertificate,
}

impl MatrixPair {
    pub fn new(a: RealSymMatrix, b: RealSymMatrix) -> Result<Self> {
        Self::with_max_exact_n(a, b, DEFAULT_MAX_EXACT_N)
    }

    pub fn with_max_exact_n(a: RealSymMatrix, b: RealSymMatrix, max_exact_n: usize) -> Result<Self> {
        check_same_dim(&a, &b)?;
        let cert_a = ClassCertificate::compute(&a, max_exact_n);
        let cert_b = ClassCertificate::compute(&b, max_exact_n);
        Ok(MatrixPair { a, b, cert_a, cert_b })
    }

    /// The Pareto case `B = I`.
    pub fn pareto(a: RealSymMatrix) -> Self {
        let b = RealSymMatrix::identity(a.n());
        Self::new(a, b).expect("identity has matching dimension")
    }

    pub fn a(&self) -> &RealSymMatrix {
        &self.a
    }

    pub fn b(&self) -> &RealSymMatrix {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn cert_a(&self) -> &ClassCertificate {
        &self.cert_a
    }

    pub fn cert_b(&self) -> &ClassCertificate {
        &self.cert_b
    }

    /// Hypotheses of the one-row set: `B` positive definite and SDD.
    pub fn require_b_sdd_pd(&self) -> Result<()> {
        if !self.cert_b.is_pd {
            return Err(Error::HypothesisViolation(Hypothesis::BPositiveDefinite));
        }
        if !self.cert_b.is_sdd {
            return Err(Error::HypothesisViolation(Hypothesis::BStrictlyDiagonallyDominant));
        }
        Ok(())
    }

    /// Hypotheses of the copositive one-row set and the two-row set.
    pub fn require_two_row(&self) -> Result<()> {
        self.require_b_sdd_pd()?;
        if !self.cert_a.is_copositive() {
            return Err(Error::HypothesisViolation(Hypothesis::ACopositive));
        }
        Ok(())
    }

    pub fn require_b_pd(&self) -> Result<()> {
        if !self.cert_b.is_pd {
            return Err(Error::HypothesisViolation(Hypothesis::BPositiveDefinite));
        }
        Ok(())
    }
}

/// `(A + μB, B)` with recomputed certificates.
pub fn shift_pair(pair: &MatrixPair, mu: f64) -> Result<MatrixPair> {
    if !(mu >= 0.0) {
        return Err(Error::NegativeShift(mu));
    }
    if mu == 0.0 {
        return Ok(pair.clone());
    }
    let a = pair.a().add_scaled(pair.b(), mu)?;
    MatrixPair::new(a, pair.b().clone())
}

/// A shift `μ ≥ 0` for which `A + μB` is positive definite (hence copositive).
///
/// Returns `max(0, -μ_min(A,B)) + 1e-6 (1 + |μ_min|)`; sufficient, not minimal.
pub fn suggest_shift(pair: &MatrixPair) -> Result<f64> {
    let mu_min = generalized_eig(pair.a(), pair.b())?.min();
    let margin = 1e-6 * (1.0 + mu_min.abs());
    Ok((-mu_min).max(0.0) + margin)
}
