//! Seeded generation of test inputs.
//!
//! Every random choice in the crate goes through [`ChaCha8Rng`], so a `u64`
//! seed reproduces a run exactly on any platform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar_core::matrix::{Matrix, SkewMatrix};
use crate::scalar_core::scalar::Scalar;

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform integer in `[-range, range]`.
pub fn random_int<S: Scalar>(rng: &mut SeededRng, range: i64) -> S {
    S::from_i64(rng.gen_range(-range..=range))
}

/// Skew matrix with integer entries drawn from `[-range, range]`.
pub fn random_skew_int<S: Scalar>(rng: &mut SeededRng, order: usize, range: i64) -> SkewMatrix<S> {
    SkewMatrix::from_fn(order, |_, _| random_int(rng, range)).expect("caller passes an even order")
}

/// Skew matrix with entries `p/q`, `p` in `[-range, range]`, `q` in `[1, range]`.
pub fn random_skew_rational<S: Scalar>(rng: &mut SeededRng, order: usize, range: i64) -> SkewMatrix<S> {
    SkewMatrix::from_fn(order, |_, _| random_ratio(rng, range)).expect("caller passes an even order")
}

pub fn random_ratio<S: Scalar>(rng: &mut SeededRng, range: i64) -> S {
    let p = rng.gen_range(-range..=range);
    let q = rng.gen_range(1..=range.max(1));
    S::from_ratio(p, q).expect("denominator is positive")
}

/// Positive rational `p/q` with `p, q` uniform in `[1, 9]`.
pub fn random_alpha_entry<S: Scalar>(rng: &mut SeededRng) -> S {
    S::from_ratio(rng.gen_range(1..=9), rng.gen_range(1..=9)).expect("denominator is positive")
}

pub fn random_alpha<S: Scalar>(rng: &mut SeededRng, len: usize) -> Vec<S> {
    (0..len).map(|_| random_alpha_entry(rng)).collect()
}

/// Nonzero rational `±p/q` with `p, q` in `[1, 9]`.
pub fn random_nonzero_small<S: Scalar>(rng: &mut SeededRng) -> S {
    let v: S = random_alpha_entry(rng);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

pub fn random_matrix_int<S: Scalar>(rng: &mut SeededRng, rows: usize, cols: usize, range: i64) -> Matrix<S> {
    Matrix::from_fn(rows, cols, |_, _| random_int(rng, range))
}

pub fn random_symmetric_int<S: Scalar>(rng: &mut SeededRng, n: usize, range: i64) -> Matrix<S> {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v: S = random_int(rng, range);
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}
