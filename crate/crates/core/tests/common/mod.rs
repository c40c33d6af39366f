#![allow(dead_code)]

use eicp::{sym_eig, RealSymMatrix};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> RealSymMatrix {
    RealSymMatrix::from_fn(n, |_, _| rng.gen_range(lo..hi)).unwrap()
}

/// Symmetric, strictly diagonally dominant with positive diagonal (hence PD).
pub fn random_sdd_pd<R: Rng>(rng: &mut R, n: usize) -> RealSymMatrix {
    let off = random_symmetric(rng, n, -1.0, 1.0);
    let margins: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..2.0)).collect();
    RealSymMatrix::from_fn(n, |i, j| {
        if i == j {
            (0..n).filter(|&k| k != i).map(|k| off.get(i, k).abs()).sum::<f64>() + margins[i]
        } else {
            off.get(i, j)
        }
    })
    .unwrap()
}

/// Random symmetric matrix shifted to be positive definite.
pub fn random_pd<R: Rng>(rng: &mut R, n: usize) -> RealSymMatrix {
    let m = random_symmetric(rng, n, -1.0, 1.0);
    let shift = (-sym_eig(&m).unwrap().min()).max(0.0) + rng.gen_range(0.01..1.0);
    m.add_scaled(&RealSymMatrix::identity(n), shift).unwrap()
}

/// Copositive by construction: either entrywise nonnegative or PD.
pub fn random_copositive<R: Rng>(rng: &mut R, n: usize) -> RealSymMatrix {
    if rng.gen_bool(0.5) {
        random_symmetric(rng, n, 0.0, 3.0)
    } else {
        random_pd(rng, n)
    }
}

pub fn random_simplex_point<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..n).map(|_| -rng.gen_range(1e-12f64..1.0).ln()).collect();
    let s: f64 = v.iter().sum();
    v.into_iter().map(|x| x / s).collect()
}

pub fn worked_example_a() -> RealSymMatrix {
    RealSymMatrix::from_rows(&[[14.0, 1.0, 1.0], [1.0, 11.0, -2.0], [1.0, -2.0, 13.0]]).unwrap()
}

pub fn worked_example_b() -> RealSymMatrix {
    RealSymMatrix::from_rows(&[[6.0, 0.0, 0.0], [0.0, 10.0, 2.0], [0.0, 2.0, 10.0]]).unwrap()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}
