//! Localization sets and exact spectra for the symmetric eigenvalue
//! complementarity problem
//!
//! ```text
//! find x ≥ 0, eᵀx = 1, λ  such that  w = (A − λB)x ≥ 0,  xᵀw = 0
//! ```
//!
//! for real symmetric `A` and `B` with `B` strictly diagonally dominant and
//! positive definite.
//!
//! The crate computes the row-based sets `K1`, `K1'` and the row-pair set
//! `K2` that contain every complementarity eigenvalue, the interval `Γ`
//! spanned by the generalized eigenvalues of `(A, B)`, and for small `n` the
//! full complementarity spectrum by support enumeration.
//!
//! ```
//! use eicp::{localize, MatrixPair, RealSymMatrix};
//!
//! let a = RealSymMatrix::from_rows(&[[14.0, 1.0, 1.0], [1.0, 11.0, -2.0], [1.0, -2.0, 13.0]]).unwrap();
//! let b = RealSymMatrix::from_rows(&[[6.0, 0.0, 0.0], [0.0, 10.0, 2.0], [0.0, 2.0, 10.0]]).unwrap();
//! let pair = MatrixPair::new(a, b).unwrap();
//! let report = localize(&pair).unwrap();
//! assert!((report.hull_k1.lo() - 0.75).abs() < 1e-12);
//! ```

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod classes;
pub mod error;
pub mod families;
pub mod interval;
pub mod linalg;
pub mod localization;
pub mod report;
pub mod spectrum;
pub mod stats;

pub use classes::{
    check_copositive, check_pd, check_sdd, shift_pair, suggest_shift, ClassCertificate,
    Copositivity, MatrixPair,
};
pub use error::{Error, Hypothesis, Result};
pub use families::{commuting_ratio_check, ones_shift_instance, scaled_pair_instance, FamilyInstance, FamilyParams};
pub use interval::{Interval, IntervalUnion};
pub use linalg::{cholesky, generalized_eig, sym_eig, RealSymMatrix};
pub use localization::{
    gamma_interval, hull_bounds_k1, hull_bounds_k2, k1_cop_set, k1_set, k2_set, localize,
    multi_row_polys, multi_row_roots, LocalizationReport,
};
pub use spectrum::{enumerate_spectrum, verify_solution, ContainmentVerdicts, EnumOptions, Spectrum};
pub use stats::{pair_stats, row_stats, PairStats, RowStats};
