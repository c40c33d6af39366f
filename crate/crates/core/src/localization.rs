//! Gershgorin-type localization sets for complementarity eigenvalues.
//!
//! * `K1`: one-row set, needs `B` positive definite and strictly diagonally
//!   dominant.
//! * `K1'`: the one-row set refined by copositivity of `A`.
//! * `K2`: two-row set built from the extreme roots of the convex quadratics
//!   `P_low` and `P_up` of every row pair; same hypotheses as `K1'`.
//! * `Γ`: the interval between the extreme generalized eigenvalues.

use serde::{Deserialize, Serialize};

use crate::classes::MatrixPair;
use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalUnion};
use crate::linalg::generalized_eig;
use crate::stats::{pair_stats, PairStats, RowStats};

/// `a2·y² − a1·y + a0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticPoly {
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
}

impl QuadraticPoly {
    pub fn new(a2: f64, a1: f64, a0: f64) -> Self {
        QuadraticPoly { a2, a1, a0 }
    }

    pub fn eval(&self, y: f64) -> f64 {
        (self.a2 * y - self.a1) * y + self.a0
    }

    pub fn discriminant(&self) -> f64 {
        self.a1 * self.a1 - 4.0 * self.a2 * self.a0
    }

    pub fn vertex(&self) -> f64 {
        self.a1 / (2.0 * self.a2)
    }

    pub fn disc_tol(&self) -> f64 {
        1e-9 * (1.0 + self.a1 * self.a1)
    }
}

/// Real roots `(lo, hi)` of a strictly convex quadratic.
///
/// Discriminants in `[-disc_tol, 0)` are treated as a double root.
pub fn quad_roots(p: &QuadraticPoly) -> Result<(f64, f64)> {
    if !(p.a2 > 0.0) {
        return Err(Error::NotConvex(p.a2));
    }
    let disc = p.discriminant();
    if disc < -p.disc_tol() {
        return Err(Error::NegativeDiscriminant(disc));
    }
    if disc <= 0.0 {
        let v = p.vertex();
        return Ok((v, v));
    }
    let sq = disc.sqrt();
    // Larger-magnitude root first, the other from the product a0/a2.
    let q = 0.5 * (p.a1 + p.a1.signum() * sq);
    let (r1, r2) = if q != 0.0 {
        (q / p.a2, p.a0 / q)
    } else {
        (0.0, 0.0)
    };
    Ok((r1.min(r2), r1.max(r2)))
}

/// Hypotheses that were certified on the pair when a report was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumptions {
    pub b_sdd: bool,
    pub b_pd: bool,
    pub a_copositive: bool,
}

impl Assumptions {
    pub fn of(pair: &MatrixPair) -> Self {
        Assumptions {
            b_sdd: pair.cert_b().is_sdd,
            b_pd: pair.cert_b().is_pd,
            a_copositive: pair.cert_a().is_copositive(),
        }
    }
}

fn k1_row(a: &RowStats, b: &RowStats, i: usize) -> Interval {
    let lo = (a.m_minus[i] / b.m_minus[i]).min(a.m_minus[i] / b.m_plus[i]);
    let hi = (a.m_plus[i] / b.m_minus[i]).max(a.m_plus[i] / b.m_plus[i]);
    Interval::new(lo, hi).expect("one-row interval is ordered when b_i^+ ≥ b_i^- > 0")
}

fn k1_cop_row(a: &RowStats, b: &RowStats, i: usize) -> Interval {
    let lo = (a.m_minus[i] / b.m_plus[i]).max(0.0);
    let hi = a.m_plus[i] / b.m_minus[i];
    Interval::new(lo, hi.max(lo)).expect("finite endpoints")
}

/// Per-row intervals of `K1`, unnormalized, indexed by row.
pub fn k1_intervals(pair: &MatrixPair) -> Result<Vec<Interval>> {
    pair.require_b_sdd_pd()?;
    let (a, b) = row_pair_stats(pair);
    Ok((0..pair.n()).map(|i| k1_row(&a, &b, i)).collect())
}

pub fn k1_set(pair: &MatrixPair) -> Result<IntervalUnion> {
    Ok(IntervalUnion::normalized_from(k1_intervals(pair)?))
}

/// Per-row intervals of `K1'`, unnormalized, indexed by row.
pub fn k1_cop_intervals(pair: &MatrixPair) -> Result<Vec<Interval>> {
    pair.require_two_row()?;
    let (a, b) = row_pair_stats(pair);
    Ok((0..pair.n()).map(|i| k1_cop_row(&a, &b, i)).collect())
}

pub fn k1_cop_set(pair: &MatrixPair) -> Result<IntervalUnion> {
    Ok(IntervalUnion::normalized_from(k1_cop_intervals(pair)?))
}

fn row_pair_stats(pair: &MatrixPair) -> (RowStats, RowStats) {
    (
        crate::stats::row_stats(pair.a()),
        crate::stats::row_stats(pair.b()),
    )
}

fn check_rows(pair: &MatrixPair, i: usize, j: usize) -> Result<()> {
    let n = pair.n();
    if i == j || i >= n || j >= n {
        return Err(Error::InvalidIndexSet(format!(
            "row pair ({i}, {j}) for dimension {n}"
        )));
    }
    Ok(())
}

/// The pair of quadratics `(P_low, P_up)` for rows `i ≠ j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowPairQuadratics {
    pub low: QuadraticPoly,
    pub up: QuadraticPoly,
}

fn quadratics_from_stats(stats: &PairStats, i: usize, j: usize) -> RowPairQuadratics {
    let e = stats.get(i, j);
    RowPairQuadratics {
        low: QuadraticPoly::new(e.b_ij_plus, e.s_ij_minus, e.a_ij_minus),
        up: QuadraticPoly::new(e.b_ij_minus, e.s_ij_plus, e.a_ij_plus),
    }
}

/// `P_up(y)` in product form `(b_ii y − a_ii)(b_jj y − a_jj) − U_i(y) U_j(y)`.
pub fn p_up_factored(stats: &PairStats, i: usize, j: usize, y: f64) -> f64 {
    let (a, b) = (&stats.a, &stats.b);
    let x = |k: usize| b.diag[k] * y - a.diag[k];
    let u = |k: usize| a.r_plus[k] + y * b.r_minus[k];
    x(i) * x(j) - u(i) * u(j)
}

/// `P_low(y)` in product form `(b_ii y − a_ii)(b_jj y − a_jj) − L_i(y) L_j(y)`.
pub fn p_low_factored(stats: &PairStats, i: usize, j: usize, y: f64) -> f64 {
    let (a, b) = (&stats.a, &stats.b);
    let x = |k: usize| b.diag[k] * y - a.diag[k];
    let l = |k: usize| a.r_minus[k] + y * b.r_plus[k];
    x(i) * x(j) - l(i) * l(j)
}

/// Magnitude of the terms in the product form, for relative comparisons.
pub(crate) fn factored_scale(stats: &PairStats, i: usize, j: usize, y: f64) -> f64 {
    let (a, b) = (&stats.a, &stats.b);
    let x = |k: usize| (b.diag[k] * y - a.diag[k]).abs();
    let u = |k: usize| a.r_plus[k] + y.abs() * b.r_minus[k];
    let l = |k: usize| a.r_minus[k] + y.abs() * b.r_plus[k];
    1.0 + x(i) * x(j) + u(i) * u(j) + l(i) * l(j)
}

pub fn build_quadratics(pair: &MatrixPair, i: usize, j: usize) -> Result<RowPairQuadratics> {
    pair.require_two_row()?;
    check_rows(pair, i, j)?;
    let stats = pair_stats(pair.a(), pair.b())?;
    let q = quadratics_from_stats(&stats, i, j);
    debug_assert!([-1.0, 0.0, 0.5, 1.0, 3.0].iter().all(|&y| {
        let s = factored_scale(&stats, i, j, y);
        (q.up.eval(y) - p_up_factored(&stats, i, j, y)).abs() <= 1e-9 * s
            && (q.low.eval(y) - p_low_factored(&stats, i, j, y)).abs() <= 1e-9 * s
    }));
    Ok(q)
}

/// One interval of `K2`, tagged with its row pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairInterval {
    pub rows: (usize, usize),
    pub interval: Interval,
}

fn k2_interval(q: &RowPairQuadratics) -> Result<Interval> {
    let (low_root, _) = quad_roots(&q.low)?;
    let (_, up_root) = quad_roots(&q.up)?;
    let lo = low_root.max(0.0);
    let hi = up_root;
    if lo > hi {
        if lo - hi > 1e-12 * (1.0 + lo.abs()) {
            return Err(Error::InvertedInterval { lo, hi });
        }
        return Ok(Interval::point(lo));
    }
    Interval::new(lo, hi)
}

/// Intervals of `K2` for all unordered row pairs `i < j`.
pub fn k2_intervals(pair: &MatrixPair) -> Result<Vec<PairInterval>> {
    pair.require_two_row()?;
    if pair.n() < 2 {
        // A single row has no pairs; the two-row set degenerates to the
        // copositive one-row set, which is then a single point a_11/b_11.
        return Ok(k1_cop_intervals(pair)?
            .into_iter()
            .map(|interval| PairInterval {
                rows: (0, 0),
                interval,
            })
            .collect());
    }
    let stats = pair_stats(pair.a(), pair.b())?;
    stats
        .pairs()
        .map(|(i, j)| {
            let q = quadratics_from_stats(&stats, i, j);
            Ok(PairInterval {
                rows: (i, j),
                interval: k2_interval(&q)?,
            })
        })
        .collect()
}

pub fn k2_set(pair: &MatrixPair) -> Result<IntervalUnion> {
    Ok(IntervalUnion::normalized_from(
        k2_intervals(pair)?.into_iter().map(|p| p.interval).collect(),
    ))
}

/// Vertices of `P_up`/`P_low` and the two-row caps built from `K1'` endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexCaps {
    pub y_star_up: f64,
    pub y_star_low: f64,
    pub c_up: f64,
    pub c_low: f64,
}

pub fn pair_vertex_and_caps(pair: &MatrixPair, i: usize, j: usize) -> Result<VertexCaps> {
    pair.require_two_row()?;
    check_rows(pair, i, j)?;
    let stats = pair_stats(pair.a(), pair.b())?;
    let e = stats.get(i, j);
    let (a, b) = (&stats.a, &stats.b);
    Ok(VertexCaps {
        y_star_up: e.s_ij_plus / (2.0 * e.b_ij_minus),
        y_star_low: e.s_ij_minus / (2.0 * e.b_ij_plus),
        c_up: (a.m_plus[i] / b.m_minus[i]).max(a.m_plus[j] / b.m_minus[j]),
        c_low: (a.m_minus[i] / b.m_plus[i]).min(a.m_minus[j] / b.m_plus[j]),
    })
}

/// Extreme bounds of the one-row set, evaluated directly from row statistics.
pub fn hull_bounds_k1(pair: &MatrixPair) -> Result<Interval> {
    pair.require_b_sdd_pd()?;
    let (a, b) = row_pair_stats(pair);
    let n = pair.n();
    let lo = (0..n)
        .map(|i| a.m_minus[i] / b.m_minus[i])
        .chain((0..n).map(|i| a.m_minus[i] / b.m_plus[i]))
        .fold(f64::INFINITY, f64::min);
    let hi = (0..n)
        .map(|i| a.m_plus[i] / b.m_minus[i])
        .chain((0..n).map(|i| a.m_plus[i] / b.m_plus[i]))
        .fold(f64::NEG_INFINITY, f64::max);
    Interval::new(lo, hi)
}

/// Extreme bounds of the two-row set from the closed-form root expressions,
/// with the lower bound clamped at zero.
pub fn hull_bounds_k2(pair: &MatrixPair) -> Result<Interval> {
    pair.require_two_row()?;
    if pair.n() < 2 {
        return k1_cop_set(pair)?
            .hull()
            .ok_or(Error::InvalidDimension { n: pair.n(), min: 1 });
    }
    let stats = pair_stats(pair.a(), pair.b())?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (i, j) in stats.pairs() {
        let e = stats.get(i, j);
        let disc_low = e.s_ij_minus * e.s_ij_minus - 4.0 * e.b_ij_plus * e.a_ij_minus;
        let disc_up = e.s_ij_plus * e.s_ij_plus - 4.0 * e.b_ij_minus * e.a_ij_plus;
        for (d, s) in [(disc_low, e.s_ij_minus), (disc_up, e.s_ij_plus)] {
            if d < -1e-9 * (1.0 + s * s) {
                return Err(Error::NegativeDiscriminant(d));
            }
        }
        lo = lo.min((e.s_ij_minus - disc_low.max(0.0).sqrt()) / (2.0 * e.b_ij_plus));
        hi = hi.max((e.s_ij_plus + disc_up.max(0.0).sqrt()) / (2.0 * e.b_ij_minus));
    }
    Interval::new(lo.max(0.0), hi)
}

/// `[μ_min(A,B), μ_max(A,B)]`.
pub fn gamma_interval(pair: &MatrixPair) -> Result<Interval> {
    pair.require_b_pd()?;
    let eig = generalized_eig(pair.a(), pair.b())?;
    Interval::new(eig.min(), eig.max())
}

fn check_index_set(pair: &MatrixPair, s: &[usize]) -> Result<()> {
    if s.is_empty() {
        return Err(Error::InvalidIndexSet("empty".into()));
    }
    let n = pair.n();
    for (k, &i) in s.iter().enumerate() {
        if i >= n {
            return Err(Error::InvalidIndexSet(format!("index {i} out of range 0..{n}")));
        }
        if s[..k].contains(&i) {
            return Err(Error::InvalidIndexSet(format!("index {i} repeated")));
        }
    }
    Ok(())
}

fn multi_row_eval(a: &RowStats, b: &RowStats, s: &[usize], y: f64) -> (f64, f64) {
    let mut low_diag = 1.0;
    let mut low_off = 1.0;
    let mut up_diag = 1.0;
    let mut up_off = 1.0;
    for &i in s {
        low_diag *= a.diag[i] - b.diag[i] * y;
        low_off *= a.r_minus[i] + y * b.r_plus[i];
        up_diag *= b.diag[i] * y - a.diag[i];
        up_off *= a.r_plus[i] + y * b.r_minus[i];
    }
    (low_diag - low_off, up_diag - up_off)
}

/// Evaluates the multi-row polynomials `(P_low_S(y), P_up_S(y))`.
///
/// For `|S| ≤ 2` these reproduce the one-row and two-row constructions. For
/// `|S| ≥ 3` the roots do NOT delimit a valid localization set; they are
/// exposed for experimentation only.
pub fn multi_row_polys(pair: &MatrixPair, s: &[usize], y: f64) -> Result<(f64, f64)> {
    pair.require_two_row()?;
    check_index_set(pair, s)?;
    let (a, b) = row_pair_stats(pair);
    Ok(multi_row_eval(&a, &b, s, y))
}

/// Number of grid cells scanned for sign changes by [`multi_row_roots`].
pub const MULTI_ROW_GRID: usize = 20_000;

/// `(min real root of P_low_S, max real root of P_up_S)`.
///
/// Roots are bracketed by sign changes on a uniform grid over `[-M, M]` with
/// `M = 1 + 10·max(|lo|, |hi|)` of the one-row hull, then bisected to 1e-12.
/// Roots of even multiplicity (no sign change) are not detected.
pub fn multi_row_roots(pair: &MatrixPair, s: &[usize]) -> Result<(f64, f64)> {
    pair.require_two_row()?;
    check_index_set(pair, s)?;
    let (a, b) = row_pair_stats(pair);
    let hull = hull_bounds_k1(pair)?;
    let m = 1.0 + 10.0 * hull.lo().abs().max(hull.hi().abs());

    let low = |y: f64| multi_row_eval(&a, &b, s, y).0;
    let up = |y: f64| multi_row_eval(&a, &b, s, y).1;
    let low_roots = bracketed_roots(low, -m, m, MULTI_ROW_GRID);
    let up_roots = bracketed_roots(up, -m, m, MULTI_ROW_GRID);
    let lo = low_roots
        .first()
        .copied()
        .ok_or(Error::NoRealRoot { lo: -m, hi: m })?;
    let hi = up_roots
        .last()
        .copied()
        .ok_or(Error::NoRealRoot { lo: -m, hi: m })?;
    Ok((lo, hi))
}

/// All sign-change roots of `f` on `[lo, hi]`, ascending.
fn bracketed_roots(f: impl Fn(f64) -> f64, lo: f64, hi: f64, cells: usize) -> Vec<f64> {
    let step = (hi - lo) / cells as f64;
    let mut roots = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0);
    if f0 == 0.0 {
        roots.push(x0);
    }
    for k in 1..=cells {
        let x1 = if k == cells { hi } else { lo + step * k as f64 };
        let f1 = f(x1);
        if f1 == 0.0 {
            roots.push(x1);
        } else if f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0) {
            roots.push(bisect(&f, x0, x1, f0));
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    while b - a > 1e-12 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// All localization sets of a pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalizationReport {
    pub k1_raw: Vec<Interval>,
    pub k1: IntervalUnion,
    pub k1_cop_raw: Option<Vec<Interval>>,
    pub k1_cop: Option<IntervalUnion>,
    pub k2_raw: Option<Vec<PairInterval>>,
    pub k2: Option<IntervalUnion>,
    pub gamma: Interval,
    pub hull_k1: Interval,
    pub hull_k2: Option<Interval>,
    pub assumptions: Assumptions,
}

impl LocalizationReport {
    /// Moves every set by `delta`. Used to map sets of a shifted pair
    /// `(A + μB, B)` back to `(A, B)` with `delta = -μ`.
    pub fn translated(&self, delta: f64) -> Self {
        let tr = |v: &Vec<Interval>| v.iter().map(|i| i.translated(delta)).collect::<Vec<_>>();
        LocalizationReport {
            k1_raw: tr(&self.k1_raw),
            k1: self.k1.translated(delta),
            k1_cop_raw: self.k1_cop_raw.as_ref().map(tr),
            k1_cop: self.k1_cop.as_ref().map(|u| u.translated(delta)),
            k2_raw: self.k2_raw.as_ref().map(|v| {
                v.iter()
                    .map(|p| PairInterval {
                        rows: p.rows,
                        interval: p.interval.translated(delta),
                    })
                    .collect()
            }),
            k2: self.k2.as_ref().map(|u| u.translated(delta)),
            gamma: self.gamma.translated(delta),
            hull_k1: self.hull_k1.translated(delta),
            hull_k2: self.hull_k2.map(|h| h.translated(delta)),
            assumptions: self.assumptions,
        }
    }
}

/// Builds every set whose hypotheses are certified. `K1` and `Γ` are required;
/// `K1'` and `K2` are present only when `A` is certified copositive.
pub fn localize(pair: &MatrixPair) -> Result<LocalizationReport> {
    let k1_raw = k1_intervals(pair)?;
    let k1 = IntervalUnion::normalized_from(k1_raw.clone());
    let hull_k1 = k1.hull().expect("n ≥ 1");
    let gamma = gamma_interval(pair)?;
    let assumptions = Assumptions::of(pair);
    let (k1_cop_raw, k1_cop, k2_raw, k2, hull_k2) = if assumptions.a_copositive {
        let cop_raw = k1_cop_intervals(pair)?;
        let cop = IntervalUnion::normalized_from(cop_raw.clone());
        let k2_raw = k2_intervals(pair)?;
        let k2 = IntervalUnion::normalized_from(k2_raw.iter().map(|p| p.interval).collect());
        let hull = k2.hull();
        (Some(cop_raw), Some(cop), Some(k2_raw), Some(k2), hull)
    } else {
        (None, None, None, None, None)
    };
    Ok(LocalizationReport {
        k1_raw,
        k1,
        k1_cop_raw,
        k1_cop,
        k2_raw,
        k2,
        gamma,
        hull_k1,
        hull_k2,
        assumptions,
    })
}
