//! Exact complementarity spectrum by support enumeration, and verification of
//! candidate eigenpairs.
//!
//! For every nonempty support `S`, the generalized eigenpairs of
//! `(A_SS, B_SS)` with a strictly positive eigenvector are embedded into `Rⁿ`
//! and kept when the off-support rows of `(A − λB)x` are nonnegative.

use serde::{Deserialize, Serialize};

use crate::classes::MatrixPair;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg::generalized_eig;
use crate::localization::{localize, LocalizationReport};

/// Default dimension cap for enumeration (`2ⁿ − 1` supports).
pub const DEFAULT_N_MAX: usize = 15;

/// Slack used when testing membership of eigenvalues in localization sets.
pub const MEMBERSHIP_TOL: f64 = 1e-7;

/// Slack used when testing containment between localization sets.
pub const SET_CONTAINMENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnumOptions {
    pub n_max: usize,
    /// Components on the support must exceed `support_tol · ‖y‖∞`.
    pub support_tol: f64,
    /// Relative tolerance for the mixed-sign test on eigenvectors.
    pub sign_tol: f64,
    /// Absolute feasibility tolerance; `None` selects `1e-8 (1 + ‖A‖∞ + ‖B‖∞)`.
    pub feas_tol: Option<f64>,
    /// Eigenvalues closer than `dedup_rel (1 + |λ|)` are merged.
    pub dedup_rel: f64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            n_max: DEFAULT_N_MAX,
            support_tol: 1e-9,
            sign_tol: 1e-9,
            feas_tol: None,
            dedup_rel: 1e-7,
        }
    }
}

impl EnumOptions {
    pub fn effective_feas_tol(&self, pair: &MatrixPair) -> f64 {
        self.feas_tol
            .unwrap_or_else(|| default_feas_tol(pair))
    }
}

pub fn default_feas_tol(pair: &MatrixPair) -> f64 {
    1e-8 * (1.0 + pair.a().norm_inf() + pair.b().norm_inf())
}

/// A complementarity eigenpair normalized to `eᵀx = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EicpSolution {
    pub lambda: f64,
    pub x: Vec<f64>,
    /// Zero-based indices of the positive components of `x`.
    pub support: Vec<usize>,
    /// `(A − λB) x`.
    pub w: Vec<f64>,
}

/// The complementarity spectrum of a pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Every accepted eigenpair, sorted by `(λ, support)`.
    pub solutions: Vec<EicpSolution>,
    /// Distinct eigenvalues, ascending.
    pub values: Vec<f64>,
    /// Supports whose principal subproblem had a repeated generalized
    /// eigenvalue. Only solver-returned basis vectors of such eigenspaces
    /// were tested, so nonnegative combinations inside them may be missed.
    pub degenerate_supports: Vec<Vec<usize>>,
}

impl Spectrum {
    /// One representative solution per distinct value.
    pub fn witnesses(&self) -> Vec<&EicpSolution> {
        self.values
            .iter()
            .filter_map(|&v| {
                self.solutions
                    .iter()
                    .min_by(|a, b| (a.lambda - v).abs().total_cmp(&(b.lambda - v).abs()))
            })
            .collect()
    }
}

/// Which condition of the complementarity system a candidate violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `w = (A − λB)x ≥ 0`.
    DualFeasibility,
    /// `x ≥ 0`.
    PrimalFeasibility,
    /// `xᵀw = 0`.
    Complementarity,
    /// `eᵀx = 1`.
    Normalization,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub ok: bool,
    pub failed: Vec<Condition>,
    /// Rows with `w_i < −feas_tol`.
    pub dual_violations: Vec<usize>,
    pub w: Vec<f64>,
}

/// Checks `(x, λ)` against the complementarity system at `feas_tol`.
pub fn verify_solution(pair: &MatrixPair, x: &[f64], lambda: f64, feas_tol: f64) -> Result<Verification> {
    let n = pair.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: x.len(),
        });
    }
    let ax = pair.a().mul_vec(x);
    let bx = pair.b().mul_vec(x);
    let w: Vec<f64> = ax.iter().zip(&bx).map(|(a, b)| a - lambda * b).collect();
    let scale = 1.0 + pair.a().norm_inf() + pair.b().norm_inf();

    let mut failed = Vec::new();
    let dual_violations: Vec<usize> = (0..n).filter(|&i| w[i] < -feas_tol).collect();
    if !dual_violations.is_empty() {
        failed.push(Condition::DualFeasibility);
    }
    if x.iter().any(|&v| v < -feas_tol) {
        failed.push(Condition::PrimalFeasibility);
    }
    let xw: f64 = x.iter().zip(&w).map(|(a, b)| a * b).sum();
    if xw.abs() > feas_tol * scale {
        failed.push(Condition::Complementarity);
    }
    let sum: f64 = x.iter().sum();
    if (sum - 1.0).abs() > feas_tol {
        failed.push(Condition::Normalization);
    }
    Ok(Verification {
        ok: failed.is_empty(),
        failed,
        dual_violations,
        w,
    })
}

/// Enumerates every complementarity eigenpair with a strictly positive
/// restriction to its support.
pub fn enumerate_spectrum(pair: &MatrixPair, opts: &EnumOptions) -> Result<Spectrum> {
    let n = pair.n();
    if n > opts.n_max || n >= 64 {
        return Err(Error::DimensionTooLarge { n, max: opts.n_max.min(63) });
    }
    pair.require_b_pd()?;
    let feas_tol = opts.effective_feas_tol(pair);
    let (a, b) = (pair.a(), pair.b());

    let mut solutions = Vec::new();
    let mut degenerate_supports = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let support: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let candidates: Vec<(f64, Vec<f64>)> = if let [p] = support[..] {
            vec![(a.diag(p) / b.diag(p), vec![1.0])]
        } else {
            let eig = generalized_eig(&a.principal(&support), &b.principal(&support))?;
            if eig
                .values
                .windows(2)
                .any(|w| w[1] - w[0] <= opts.dedup_rel * (1.0 + w[0].abs()))
            {
                degenerate_supports.push(support.clone());
            }
            eig.values.into_iter().zip(eig.vectors).collect()
        };

        for (mu, mut y) in candidates {
            let ymax = y.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            if ymax == 0.0 {
                continue;
            }
            let sign_tol = opts.sign_tol * ymax;
            let has_pos = y.iter().any(|&v| v > sign_tol);
            let has_neg = y.iter().any(|&v| v < -sign_tol);
            if has_pos && has_neg {
                continue;
            }
            if y.iter().sum::<f64>() < 0.0 {
                y.iter_mut().for_each(|v| *v = -*v);
            }
            if y.iter().any(|&v| v <= opts.support_tol * ymax) {
                continue;
            }
            let total: f64 = y.iter().sum();
            let mut x = vec![0.0; n];
            for (&i, &v) in support.iter().zip(&y) {
                x[i] = v / total;
            }
            let ax = a.mul_vec(&x);
            let bx = b.mul_vec(&x);
            let w: Vec<f64> = ax.iter().zip(&bx).map(|(p, q)| p - mu * q).collect();
            let off_ok = (0..n)
                .filter(|i| mask >> i & 1 == 0)
                .all(|i| w[i] >= -feas_tol);
            if off_ok {
                solutions.push(EicpSolution {
                    lambda: mu,
                    x,
                    support: support.clone(),
                    w,
                });
            }
        }
    }

    solutions.sort_by(|s, t| s.lambda.total_cmp(&t.lambda).then_with(|| s.support.cmp(&t.support)));
    let mut values: Vec<f64> = Vec::new();
    for s in &solutions {
        match values.last() {
            Some(&last) if s.lambda - last <= opts.dedup_rel * (1.0 + last.abs()) => {}
            _ => values.push(s.lambda),
        }
    }
    Ok(Spectrum {
        solutions,
        values,
        degenerate_supports,
    })
}

/// Containment checks between the spectrum and the localization sets.
/// `None` marks a set that was not built because its hypotheses failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentVerdicts {
    pub pi_in_k1: bool,
    pub pi_in_k1_cop: Option<bool>,
    pub pi_in_k2: Option<bool>,
    pub pi_in_gamma: bool,
    /// `K2 ⊆ K1'` as sets, i.e. each member of the normalized `K2` lies in
    /// a member of the normalized `K1'`.
    pub k2_in_k1_cop: Option<bool>,
    /// `conv(K2) ⊆ conv(K1')`.
    pub hull_k2_in_hull_k1_cop: Option<bool>,
    /// Every copositive one-row interval lies inside the one-row interval of
    /// the same row.
    pub k1_cop_in_k1: Option<bool>,
}

impl ContainmentVerdicts {
    pub fn compute(loc: &LocalizationReport, values: &[f64]) -> Self {
        let in_union = |u: &crate::interval::IntervalUnion| {
            values.iter().all(|&v| u.contains(v, MEMBERSHIP_TOL))
        };
        let k2_in_k1_cop = match (&loc.k2, &loc.k1_cop) {
            (Some(k2), Some(cop)) => Some(cop.contains_each(k2, SET_CONTAINMENT_TOL)),
            _ => None,
        };
        let hull_k2_in_hull_k1_cop = match (&loc.hull_k2, loc.k1_cop.as_ref().and_then(|u| u.hull())) {
            (Some(h2), Some(h1)) => Some(h1.contains_interval(h2, SET_CONTAINMENT_TOL)),
            _ => None,
        };
        let k1_cop_in_k1 = loc.k1_cop_raw.as_ref().map(|cop| {
            cop.iter()
                .zip(&loc.k1_raw)
                .all(|(c, k)| k.contains_interval(c, SET_CONTAINMENT_TOL))
        });
        let gamma: Interval = loc.gamma.widened(MEMBERSHIP_TOL);
        ContainmentVerdicts {
            pi_in_k1: in_union(&loc.k1),
            pi_in_k1_cop: loc.k1_cop.as_ref().map(in_union),
            pi_in_k2: loc.k2.as_ref().map(in_union),
            pi_in_gamma: values.iter().all(|&v| gamma.contains(v, 0.0)),
            k2_in_k1_cop,
            hull_k2_in_hull_k1_cop,
            k1_cop_in_k1,
        }
    }

    /// All verdicts that were computed hold.
    pub fn all_hold(&self) -> bool {
        self.pi_in_k1
            && self.pi_in_gamma
            && [
                self.pi_in_k1_cop,
                self.pi_in_k2,
                self.k2_in_k1_cop,
                self.hull_k2_in_hull_k1_cop,
                self.k1_cop_in_k1,
            ]
            .iter()
            .all(|v| v.unwrap_or(true))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub localization: LocalizationReport,
    pub spectrum: Spectrum,
    pub verdicts: ContainmentVerdicts,
}

pub fn spectrum_report(pair: &MatrixPair, opts: &EnumOptions) -> Result<SpectrumReport> {
    let spectrum = enumerate_spectrum(pair, opts)?;
    let localization = localize(pair)?;
    let verdicts = ContainmentVerdicts::compute(&localization, &spectrum.values);
    Ok(SpectrumReport {
        localization,
        spectrum,
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RealSymMatrix;
    use approx::assert_abs_diff_eq;

    fn worked_example() -> MatrixPair {
        let a = RealSymMatrix::from_rows(&[[14.0, 1.0, 1.0], [1.0, 11.0, -2.0], [1.0, -2.0, 13.0]])
            .unwrap();
        let b = RealSymMatrix::from_rows(&[[6.0, 0.0, 0.0], [0.0, 10.0, 2.0], [0.0, 2.0, 10.0]])
            .unwrap();
        MatrixPair::new(a, b).unwrap()
    }

    #[test]
    fn verify_singleton_solution() {
        let p = worked_example();
        let v = verify_solution(&p, &[1.0, 0.0, 0.0], 14.0 / 6.0, 1e-8).unwrap();
        assert!(v.ok, "{:?}", v.failed);
    }

    #[test]
    fn verify_detects_dual_violation() {
        let p = worked_example();
        for q in 0..3 {
            let mut x = vec![0.0; 3];
            x[q] = 1.0;
            let lambda = p.a().diag(q) / p.b().diag(q) + 1.0;
            let v = verify_solution(&p, &x, lambda, 1e-8).unwrap();
            assert!(!v.ok);
            assert!(v.failed.contains(&Condition::DualFeasibility));
            assert!(v.dual_violations.contains(&q));
            assert_abs_diff_eq!(v.w[q], -p.b().diag(q), epsilon = 1e-12);
        }
    }

    #[test]
    fn verify_zero_vector_fails_normalization() {
        let v = verify_solution(&worked_example(), &[0.0; 3], 1.0, 1e-8).unwrap();
        assert_eq!(v.failed, vec![Condition::Normalization]);
    }

    #[test]
    fn worked_example_spectrum() {
        let s = enumerate_spectrum(&worked_example(), &EnumOptions::default()).unwrap();
        let want = [0.822, 2.333, 2.347, 2.349, 2.352];
        assert_eq!(s.values.len(), 5);
        for (v, w) in s.values.iter().zip(want) {
            assert_abs_diff_eq!(*v, w, epsilon = 1e-3);
        }
        let supports: Vec<Vec<usize>> = s.solutions.iter().map(|x| x.support.clone()).collect();
        assert_eq!(
            supports,
            vec![vec![1, 2], vec![0], vec![0, 1], vec![0, 2], vec![0, 1, 2]]
        );
        assert_eq!(s.values[1], 14.0 / 6.0);
    }

    #[test]
    fn diagonal_spectrum_is_ratios() {
        let a = RealSymMatrix::diagonal(&[1.0, 4.0, 9.0]);
        let b = RealSymMatrix::diagonal(&[2.0, 2.0, 3.0]);
        let s = enumerate_spectrum(&MatrixPair::new(a, b).unwrap(), &EnumOptions::default()).unwrap();
        assert_eq!(s.values, vec![0.5, 2.0, 3.0]);
    }

    #[test]
    fn size_gate() {
        let p = MatrixPair::pareto(RealSymMatrix::identity(4));
        let opts = EnumOptions {
            n_max: 3,
            ..EnumOptions::default()
        };
        assert_eq!(
            enumerate_spectrum(&p, &opts).unwrap_err(),
            Error::DimensionTooLarge { n: 4, max: 3 }
        );
    }

    #[test]
    fn worked_example_report_verdicts() {
        let r = spectrum_report(&worked_example(), &EnumOptions::default()).unwrap();
        let v = r.verdicts;
        assert!(v.pi_in_k1 && v.pi_in_gamma);
        assert_eq!(v.pi_in_k1_cop, Some(true));
        assert_eq!(v.pi_in_k2, Some(true));
        assert_eq!(v.k1_cop_in_k1, Some(true));
        assert_eq!(v.hull_k2_in_hull_k1_cop, Some(true));
        // The row pair (1, 2) covers the gap (1.4, 7/3) between the one-row
        // intervals, so the set inclusion fails here.
        assert_eq!(v.k2_in_k1_cop, Some(false));
        assert!(!v.all_hold());
    }

    #[test]
    fn scalar_multiple_pair_flags_degenerate_supports() {
        let b = RealSymMatrix::from_rows(&[[2.0, 0.5], [0.5, 2.0]]).unwrap();
        let p = MatrixPair::new(b.scaled(3.0), b).unwrap();
        let s = enumerate_spectrum(&p, &EnumOptions::default()).unwrap();
        assert_eq!(s.values.len(), 1);
        assert_abs_diff_eq!(s.values[0], 3.0, epsilon = 1e-12);
        assert_eq!(s.degenerate_supports, vec![vec![0, 1]]);
    }
}
