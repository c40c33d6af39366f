//! Parametric instance families with closed-form localization sets.

use serde::{Deserialize, Serialize};

use crate::classes::MatrixPair;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg::{cholesky, generalized_eig, sym_eig, RealSymMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyParams {
    /// `A = E + εI`, `B = (n − 1 + ε)I − E`.
    OnesShift { n: usize, eps: f64 },
    /// `B = βI + ρ(E − I)` with `ρ = R/(n − 1)`, `A = cB`.
    ScaledPair { n: usize, beta: f64, r: f64, c: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyInstance {
    pub pair: MatrixPair,
    pub expected_hull_k1: Interval,
    pub expected_hull_k2: Interval,
    pub expected_gamma: Interval,
    pub params: FamilyParams,
}

/// Family where both Gershgorin-type sets are strictly tighter than `Γ` from
/// below and coincide with it from above.
pub fn ones_shift_instance(n: usize, eps: f64) -> Result<FamilyInstance> {
    if n < 2 {
        return Err(Error::ParamOutOfRange(format!("n must be at least 2, got {n}")));
    }
    if !(eps > 1.0) || !eps.is_finite() {
        return Err(Error::ParamOutOfRange(format!("eps must be > 1, got {eps}")));
    }
    let nf = n as f64;
    let ones = RealSymMatrix::all_ones(n);
    let a = ones.add_scaled(&RealSymMatrix::identity(n), eps)?;
    let b = RealSymMatrix::identity(n)
        .scaled(nf - 1.0 + eps)
        .add_scaled(&ones, -1.0)?;
    let k = Interval::new((1.0 + eps) / (nf - 2.0 + eps), (nf + eps) / (eps - 1.0))?;
    let gamma = Interval::new(eps / (nf - 1.0 + eps), (nf + eps) / (eps - 1.0))?;
    Ok(FamilyInstance {
        pair: MatrixPair::new(a, b)?,
        expected_hull_k1: k,
        expected_hull_k2: k,
        expected_gamma: gamma,
        params: FamilyParams::OnesShift { n, eps },
    })
}

/// Family where `Γ` collapses to the point `{c}` strictly inside both sets.
pub fn scaled_pair_instance(n: usize, beta: f64, r: f64, c: f64) -> Result<FamilyInstance> {
    if n < 2 {
        return Err(Error::ParamOutOfRange(format!("n must be at least 2, got {n}")));
    }
    if !(r > 0.0 && beta > r && beta.is_finite()) {
        return Err(Error::ParamOutOfRange(format!(
            "need beta > R > 0, got beta = {beta}, R = {r}"
        )));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::ParamOutOfRange(format!("c must be > 0, got {c}")));
    }
    let rho = r / (n as f64 - 1.0);
    let b = RealSymMatrix::from_fn(n, |i, j| if i == j { beta } else { rho })?;
    let a = b.scaled(c);
    let k = Interval::new(c * beta / (beta + r), c * (beta + r) / beta)?;
    Ok(FamilyInstance {
        pair: MatrixPair::new(a, b)?,
        expected_hull_k1: k,
        expected_hull_k2: k,
        expected_gamma: Interval::point(c),
        params: FamilyParams::ScaledPair { n, beta, r, c },
    })
}

/// For commuting `A`, `B` (with `B` positive definite), checks that the
/// generalized eigenvalues are the ratios `μ_i^A / μ_i^B` along a common
/// eigenbasis.
///
/// The common basis is built by diagonalizing `B`, then diagonalizing `A`
/// restricted to each eigenspace of `B`.
pub fn commuting_ratio_check(a: &RealSymMatrix, b: &RealSymMatrix) -> Result<bool> {
    let comm = a.commutator_norm(b)?;
    if comm > 1e-9 * (1.0 + a.norm_inf() * b.norm_inf()) {
        return Err(Error::NotCommuting(comm));
    }
    cholesky(b)?;
    let n = a.n();
    let eb = sym_eig(b)?;
    let cluster_tol = 1e-8 * (1.0 + b.norm_inf());

    let mut ratios = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eb.values[end] - eb.values[end - 1] <= cluster_tol {
            end += 1;
        }
        let basis = &eb.vectors[start..end];
        let mu_b = eb.values[start..end].iter().sum::<f64>() / (end - start) as f64;
        // Vᵀ A V on this eigenspace.
        let k = end - start;
        let av: Vec<Vec<f64>> = basis.iter().map(|v| a.mul_vec(v)).collect();
        let restricted = RealSymMatrix::from_fn(k, |p, q| {
            basis[p].iter().zip(&av[q]).map(|(x, y)| x * y).sum()
        })?;
        for mu_a in sym_eig(&restricted)?.values {
            ratios.push(mu_a / mu_b);
        }
        start = end;
    }
    ratios.sort_by(f64::total_cmp);

    let gen = generalized_eig(a, b)?;
    Ok(gen
        .values
        .iter()
        .zip(&ratios)
        .all(|(g, r)| (g - r).abs() <= 1e-7 * (1.0 + g.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{check_copositive, check_sdd};
    use crate::stats::row_stats;

    #[test]
    fn ones_shift_small_values() {
        let f = ones_shift_instance(3, 2.0).unwrap();
        assert_eq!(f.expected_hull_k1, Interval::new(1.0, 5.0).unwrap());
        assert_eq!(f.expected_gamma, Interval::new(0.5, 5.0).unwrap());
        assert!(f.pair.cert_b().is_sdd && f.pair.cert_b().is_pd);
        assert!(f.pair.cert_a().is_copositive());
        let a = f.pair.a();
        assert_eq!(a.row(0), &[3.0, 1.0, 1.0]);
        assert_eq!(f.pair.b().row(0), &[3.0, -1.0, -1.0]);
    }

    #[test]
    fn ones_shift_gap_and_upper_bound() {
        for n in 2..7 {
            for eps in [1.5, 2.0, 5.0, 10.0] {
                let f = ones_shift_instance(n, eps).unwrap();
                assert!(f.expected_gamma.lo() < f.expected_hull_k1.lo());
                assert_eq!(f.expected_gamma.hi(), f.expected_hull_k1.hi());
                let nf = n as f64;
                let gap = (nf - 1.0 + 2.0 * eps) / ((nf - 2.0 + eps) * (nf - 1.0 + eps));
                let got = f.expected_hull_k1.lo() - f.expected_gamma.lo();
                assert!((got - gap).abs() <= 1e-12 * (1.0 + gap));
            }
        }
    }

    #[test]
    fn ones_shift_rejects_eps_one() {
        assert!(matches!(ones_shift_instance(3, 1.0), Err(Error::ParamOutOfRange(_))));
        assert!(matches!(ones_shift_instance(1, 2.0), Err(Error::ParamOutOfRange(_))));
    }

    #[test]
    fn scaled_pair_small_values() {
        let f = scaled_pair_instance(3, 2.0, 1.0, 1.0).unwrap();
        assert_eq!(f.expected_hull_k1, Interval::new(2.0 / 3.0, 1.5).unwrap());
        assert_eq!(f.expected_gamma, Interval::point(1.0));
        let b = f.pair.b();
        assert_eq!(b.row(1), &[0.5, 2.0, 0.5]);
        assert_eq!(f.pair.a(), b);
        let s = row_stats(b);
        assert!(s.r_plus.iter().all(|&r| r == 1.0));
        assert!(check_sdd(b).strict);
        assert!(check_copositive(f.pair.a(), 12).unwrap().verdict.is_copositive());
    }

    #[test]
    fn scaled_pair_strict_interior_and_ranges() {
        let f = scaled_pair_instance(4, 3.0, 2.5, 0.7).unwrap();
        assert!(f.expected_hull_k1.lo() < 0.7 && 0.7 < f.expected_hull_k1.hi());
        assert!(scaled_pair_instance(3, 1.0, 1.0, 1.0).is_err());
        assert!(scaled_pair_instance(3, 2.0, 0.0, 1.0).is_err());
        assert!(scaled_pair_instance(3, 2.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn commuting_checks() {
        let f = ones_shift_instance(4, 2.0).unwrap();
        assert!(commuting_ratio_check(f.pair.a(), f.pair.b()).unwrap());
        let g = scaled_pair_instance(4, 2.0, 1.0, 1.7).unwrap();
        assert!(commuting_ratio_check(g.pair.a(), g.pair.b()).unwrap());
        let gen = generalized_eig(g.pair.a(), g.pair.b()).unwrap();
        assert!(gen.values.iter().all(|v| (v - 1.7).abs() < 1e-12));
        let a = RealSymMatrix::diagonal(&[1.0, 2.0]);
        let b = RealSymMatrix::diagonal(&[2.0, 4.0]);
        assert!(commuting_ratio_check(&a, &b).unwrap());
    }

    #[test]
    fn non_commuting_is_rejected() {
        let a = RealSymMatrix::from_rows(&[[1.0, 1.0], [1.0, 0.0]]).unwrap();
        let b = RealSymMatrix::diagonal(&[1.0, 2.0]);
        assert!(matches!(commuting_ratio_check(&a, &b), Err(Error::NotCommuting(_))));
    }
}
