mod common;

use common::*;
use eicp::localization::{build_quadratics, p_low_factored, p_up_factored, quad_roots};
use eicp::report::{cmd_localize, cmd_spectrum, InstanceFile, ReportDocument, SetKind, ShiftMode};
use eicp::{
    enumerate_spectrum, hull_bounds_k1, hull_bounds_k2, k1_set, k2_set, localize, multi_row_roots,
    pair_stats, shift_pair, suggest_shift, EnumOptions, MatrixPair, RealSymMatrix,
};
use proptest::prelude::*;
use rand::Rng;

fn certified(seed: u64, n_max: usize) -> MatrixPair {
    let mut rng = rng(seed);
    let n = rng.gen_range(2..=n_max);
    let b = random_sdd_pd(&mut rng, n);
    let a = random_copositive(&mut rng, n);
    MatrixPair::new(a, b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn k2_intervals_contain_diagonal_ratios(seed in any::<u64>()) {
        let p = certified(seed, 8);
        for i in 0..p.n() {
            for j in i + 1..p.n() {
                let q = build_quadratics(&p, i, j).unwrap();
                let (lo, _) = quad_roots(&q.low).unwrap();
                let (_, hi) = quad_roots(&q.up).unwrap();
                for k in [i, j] {
                    let r = p.a().diag(k) / p.b().diag(k);
                    prop_assert!(lo <= r + 1e-9 * (1.0 + r.abs()));
                    prop_assert!(r <= hi + 1e-9 * (1.0 + r.abs()));
                }
            }
        }
    }

    #[test]
    fn coefficient_and_factored_forms_agree(seed in any::<u64>(), y in -5.0f64..5.0) {
        let p = certified(seed, 8);
        let st = pair_stats(p.a(), p.b()).unwrap();
        for (i, j) in st.pairs().collect::<Vec<_>>() {
            let q = build_quadratics(&p, i, j).unwrap();
            let up = p_up_factored(&st, i, j, y);
            let low = p_low_factored(&st, i, j, y);
            prop_assert!(rel_close(q.up.eval(y), up, 1e-9));
            prop_assert!(rel_close(q.low.eval(y), low, 1e-9));
        }
    }

    #[test]
    fn pair_intervals_lie_in_row_hulls(seed in any::<u64>()) {
        let p = certified(seed, 8);
        let loc = localize(&p).unwrap();
        let cop = loc.k1_cop_raw.as_ref().unwrap();
        for pi in loc.k2_raw.as_ref().unwrap() {
            let (i, j) = pi.rows;
            prop_assert!(cop[i].hull(&cop[j]).contains_interval(&pi.interval, 1e-9));
        }
        for (c, k) in cop.iter().zip(&loc.k1_raw) {
            prop_assert!(k.contains_interval(c, 1e-9));
        }
        let h1 = loc.k1_cop.as_ref().unwrap().hull().unwrap();
        prop_assert!(h1.contains_interval(&loc.hull_k2.unwrap(), 1e-9));
        prop_assert!(loc.hull_k1.contains_interval(&h1, 1e-9));
    }

    #[test]
    fn hull_bounds_match_set_hulls(seed in any::<u64>()) {
        let p = certified(seed, 8);
        let (h1, s1) = (hull_bounds_k1(&p).unwrap(), k1_set(&p).unwrap().hull().unwrap());
        let (h2, s2) = (hull_bounds_k2(&p).unwrap(), k2_set(&p).unwrap().hull().unwrap());
        prop_assert!(rel_close(h1.lo(), s1.lo(), 1e-12) && rel_close(h1.hi(), s1.hi(), 1e-12));
        prop_assert!(rel_close(h2.lo(), s2.lo(), 1e-9) && rel_close(h2.hi(), s2.hi(), 1e-9));
    }

    #[test]
    fn spectrum_lies_in_every_set(seed in any::<u64>()) {
        let p = certified(seed, 5);
        let loc = localize(&p).unwrap();
        let s = enumerate_spectrum(&p, &EnumOptions::default()).unwrap();
        prop_assert!(!s.values.is_empty());
        for &v in &s.values {
            prop_assert!(loc.k1.contains(v, 1e-7));
            prop_assert!(loc.k1_cop.as_ref().unwrap().contains(v, 1e-7));
            prop_assert!(loc.k2.as_ref().unwrap().contains(v, 1e-7));
            prop_assert!(loc.gamma.contains(v, 1e-7));
        }
        for sol in &s.solutions {
            prop_assert!(sol.x.iter().all(|&x| x >= 0.0));
            prop_assert!((sol.x.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn multi_row_small_sets(seed in any::<u64>()) {
        let p = certified(seed, 6);
        let loc = localize(&p).unwrap();
        let cop = loc.k1_cop_raw.unwrap();
        let st = pair_stats(p.a(), p.b()).unwrap();
        for (i, c) in cop.iter().enumerate() {
            let (lo, hi) = multi_row_roots(&p, &[i]).unwrap();
            let raw_lo = st.a.m_minus[i] / st.b.m_plus[i];
            prop_assert!((lo - raw_lo).abs() <= 1e-9 * (1.0 + raw_lo.abs()));
            prop_assert!((hi - c.hi()).abs() <= 1e-9 * (1.0 + hi.abs()));
        }
        let q = build_quadratics(&p, 0, 1).unwrap();
        let (lo, hi) = multi_row_roots(&p, &[0, 1]).unwrap();
        prop_assert!((lo - quad_roots(&q.low).unwrap().0).abs() <= 1e-9 * (1.0 + lo.abs()));
        prop_assert!((hi - quad_roots(&q.up).unwrap().1).abs() <= 1e-9 * (1.0 + hi.abs()));
    }

    #[test]
    fn reports_round_trip(seed in any::<u64>()) {
        let p = certified(seed, 5);
        let file = InstanceFile::from_pair(p.a(), Some(p.b()));
        let doc = cmd_spectrum(&file, &EnumOptions::default()).unwrap();
        prop_assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
    }

    #[test]
    fn back_shift_keeps_verdicts(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.gen_range(2..=5);
        let b = random_sdd_pd(&mut rng, n);
        let a = random_symmetric(&mut rng, n, -2.0, 2.0);
        let pair = MatrixPair::new(a, b).unwrap();
        let file = InstanceFile::from_pair(pair.a(), Some(pair.b()));
        let all = [SetKind::K1, SetKind::K1Cop, SetKind::K2];
        let doc = cmd_localize(&file, &all, ShiftMode::Auto).unwrap();
        let loc = doc.localization.unwrap();
        let values = enumerate_spectrum(&pair, &EnumOptions::default()).unwrap().values;
        let mu = suggest_shift(&pair).unwrap();
        let shifted = localize(&shift_pair(&pair, mu).unwrap()).unwrap();
        for &v in &values {
            prop_assert!(loc.k1.contains(v, 1e-7));
            prop_assert!(loc.k2.as_ref().unwrap().contains(v, 1e-7));
            prop_assert_eq!(
                loc.k2.as_ref().unwrap().contains(v, 1e-7),
                shifted.k2.as_ref().unwrap().contains(v + mu, 1e-7)
            );
        }
    }
}

/// The pair interval can bridge a gap between two one-row intervals, so
/// `K2 ⊆ K1'` fails as a set inclusion even though each enumerated
/// eigenvalue lies in both sets.
#[test]
fn k2_is_not_a_subset_of_k1_cop() {
    let a = RealSymMatrix::from_rows(&[[0.0, 2.0], [2.0, 3.0]]).unwrap();
    let b = RealSymMatrix::from_rows(&[[2.4, 0.4], [0.4, 2.7]]).unwrap();
    let p = MatrixPair::new(a, b).unwrap();
    let loc = localize(&p).unwrap();
    let cop = loc.k1_cop.as_ref().unwrap();
    let k2 = loc.k2.as_ref().unwrap();
    assert_eq!(cop.len(), 2);
    assert!((cop.intervals()[0].hi() - 5.0 / 6.0).abs() < 1e-15);
    assert!((cop.intervals()[1].lo() - 30.0 / 31.0).abs() < 1e-15);
    assert_eq!(k2.len(), 1);
    assert!(k2.contains(0.9, 0.0) && !cop.contains(0.9, 0.0));
    for v in enumerate_spectrum(&p, &EnumOptions::default()).unwrap().values {
        assert!(cop.contains(v, 1e-7) && k2.contains(v, 1e-7));
    }
}
