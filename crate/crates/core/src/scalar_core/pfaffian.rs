//! Reference Pfaffian and determinant oracles.
//!
//! * [`pfaffian_expansion`] expands along the first row with memoisation over
//!   index subsets: `O(2^{2N} N)` work, intended for orders up to about 16.
//! * [`pfaffian_elimination`] reduces the matrix by skew congruence to a
//!   2x2-block canonical form in `O(N^3)` field operations.
//! * [`determinant`] is pivoted Gaussian elimination.

use std::collections::HashMap;

use super::matrix::{Matrix, SkewMatrix};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Largest order accepted by the subset-memoised expansion.
pub const MAX_EXPANSION_ORDER: usize = 40;

/// Pfaffian by recursive expansion along the first row.
///
/// Order 0 gives 1.
pub fn pfaffian_expansion<S: Scalar>(a: &SkewMatrix<S>) -> S {
    pfaffian_expansion_with(a.order(), |i, j| a.a(i, j)).expect("skew matrix has even order")
}

/// Expansion over an implicit skew array of order `n` given by `entry(i, j)` for `i < j`.
pub fn pfaffian_expansion_with<S: Scalar>(n: usize, entry: impl Fn(usize, usize) -> S) -> Result<S> {
    if n % 2 != 0 {
        return Err(Error::OddOrder(n));
    }
    if n > MAX_EXPANSION_ORDER {
        return Err(Error::Parameter(format!(
            "expansion supports order at most {MAX_EXPANSION_ORDER}, got {n}"
        )));
    }
    // Cache upper-triangle entries so the accessor runs once per pair.
    let mut cache = vec![S::zero(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            cache[i * n + j] = entry(i, j);
        }
    }
    let mut memo: HashMap<u64, S> = HashMap::new();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(expand(full, n, &cache, &mut memo))
}

fn expand<S: Scalar>(set: u64, n: usize, a: &[S], memo: &mut HashMap<u64, S>) -> S {
    if set == 0 {
        return S::one();
    }
    if let Some(v) = memo.get(&set) {
        return v.clone();
    }
    let first = set.trailing_zeros() as usize;
    let rest = set & !(1u64 << first);
    let mut acc = S::zero();
    let mut bits = rest;
    let mut position = 0usize;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        position += 1;
        let aij = &a[first * n + j];
        if aij.is_zero() {
            continue;
        }
        let sub = expand(rest & !(1u64 << j), n, a, memo);
        let term = aij.clone() * sub;
        // The partner sits at position `position` (1-based) among the remaining indices.
        acc = if position % 2 == 1 { acc + term } else { acc - term };
    }
    memo.insert(set, acc.clone());
    acc
}

/// Pfaffian by skew Gaussian elimination.
///
/// At step `k` (even) a pivot `a_{k,p}`, `p > k`, is chosen: the first
/// nonzero candidate in exact mode, the largest in magnitude in float mode.
/// Index `p` is swapped into position `k+1` (negating the result), the
/// pivot multiplies the accumulated value, and the trailing block is
/// replaced by its Schur complement. A vanishing pivot column means `Pf = 0`.
pub fn pfaffian_elimination<S: Scalar>(a: &SkewMatrix<S>) -> S {
    let n = a.order();
    let mut w: Vec<S> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            w.push(a.a(i, j));
        }
    }
    pfaffian_elimination_in_place(n, &mut w)
}

/// In-place variant over a full row-major skew array, reused by the benchmarks.
pub fn pfaffian_elimination_in_place<S: Scalar>(n: usize, w: &mut [S]) -> S {
    assert!(n % 2 == 0, "even order required");
    assert_eq!(w.len(), n * n);
    let mut result = S::one();
    let mut k = 0;
    while k < n {
        let pivot = select_pivot(&w[k * n..(k + 1) * n], k + 1, n);
        let Some(p) = pivot else {
            return S::zero();
        };
        if p != k + 1 {
            swap_index(w, n, p, k + 1);
            result = -result;
        }
        let piv = w[k * n + k + 1].clone();
        let inv = piv.recip().expect("pivot is nonzero");
        result = result * piv;
        for i in k + 2..n {
            let aik = w[i * n + k].clone();
            let aik1 = w[i * n + k + 1].clone();
            if aik.is_zero() && aik1.is_zero() {
                continue;
            }
            for j in i + 1..n {
                let upd = (aik.clone() * w[(k + 1) * n + j].clone() - aik1.clone() * w[k * n + j].clone())
                    * inv.clone();
                let v = w[i * n + j].clone() + upd;
                w[j * n + i] = -v.clone();
                w[i * n + j] = v;
            }
        }
        k += 2;
    }
    result
}

fn select_pivot<S: Scalar>(row: &[S], from: usize, n: usize) -> Option<usize> {
    if S::EXACT {
        (from..n).find(|&p| !row[p].is_zero())
    } else {
        let mut best: Option<(usize, f64)> = None;
        for (p, v) in row.iter().enumerate().take(n).skip(from) {
            let m = v.magnitude();
            if m > 0.0 && best.map_or(true, |(_, b)| m > b) {
                best = Some((p, m));
            }
        }
        best.map(|(p, _)| p)
    }
}

fn swap_index<S>(w: &mut [S], n: usize, p: usize, q: usize) {
    for j in 0..n {
        w.swap(p * n + j, q * n + j);
    }
    for i in 0..n {
        w.swap(i * n + p, i * n + q);
    }
}

/// Determinant by pivoted Gaussian elimination.
pub fn determinant<S: Scalar>(m: &Matrix<S>) -> Result<S> {
    if !m.is_square() {
        return Err(Error::Shape(format!("determinant of a {}x{} matrix", m.rows(), m.cols())));
    }
    let n = m.rows();
    let mut w: Vec<S> = (0..n * n).map(|t| m.get(t / n, t % n).clone()).collect();
    Ok(determinant_in_place(n, &mut w))
}

pub(crate) fn determinant_in_place<S: Scalar>(n: usize, w: &mut [S]) -> S {
    let mut result = S::one();
    for k in 0..n {
        let pivot = if S::EXACT {
            (k..n).find(|&r| !w[r * n + k].is_zero())
        } else {
            let mut best: Option<(usize, f64)> = None;
            for r in k..n {
                let mag = w[r * n + k].magnitude();
                if mag > 0.0 && best.map_or(true, |(_, b)| mag > b) {
                    best = Some((r, mag));
                }
            }
            best.map(|(r, _)| r)
        };
        let Some(p) = pivot else {
            return S::zero();
        };
        if p != k {
            for j in 0..n {
                w.swap(p * n + j, k * n + j);
            }
            result = -result;
        }
        let piv = w[k * n + k].clone();
        let inv = piv.recip().expect("pivot is nonzero");
        result = result * piv;
        for i in k + 1..n {
            let f = w[i * n + k].clone() * inv.clone();
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let v = w[i * n + j].clone() - f.clone() * w[k * n + j].clone();
                w[i * n + j] = v;
            }
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_skew_int, seeded_rng};
    use crate::scalar_core::scalar::Rational;
    use proptest::prelude::*;

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    /// Sum over perfect matchings with crossing-number signs: an oracle
    /// that shares no code with either production algorithm.
    fn matching_sum(a: &SkewMatrix<Rational>) -> Rational {
        fn go(rem: &[usize], a: &SkewMatrix<Rational>) -> Rational {
            if rem.is_empty() {
                return Rational::one();
            }
            let mut acc = Rational::zero();
            for p in 1..rem.len() {
                let mut rest = rem[1..].to_vec();
                rest.remove(p - 1);
                let sign = if p % 2 == 1 { r(1) } else { r(-1) };
                acc = acc + sign * a.a(rem[0], rem[p]) * go(&rest, a);
            }
            acc
        }
        go(&(0..a.order()).collect::<Vec<_>>(), a)
    }

    #[test]
    fn order_two_and_zero() {
        let a = SkewMatrix::from_upper(2, vec![r(7)]).unwrap();
        assert_eq!(pfaffian_expansion(&a), r(7));
        assert_eq!(pfaffian_elimination(&a), r(7));
        let e = SkewMatrix::<Rational>::zeros(0).unwrap();
        assert_eq!(pfaffian_expansion(&e), r(1));
        assert_eq!(pfaffian_elimination(&e), r(1));
    }

    #[test]
    fn order_four_matches_closed_form() {
        let a = SkewMatrix::from_fn(4, |i, j| r((3 * i + 5 * j) as i64 % 11 - 4)).unwrap();
        let expected = a.a(0, 1) * a.a(2, 3) - a.a(0, 2) * a.a(1, 3) + a.a(0, 3) * a.a(1, 2);
        assert_eq!(pfaffian_expansion(&a), expected);
        assert_eq!(pfaffian_elimination(&a), expected);
    }

    #[test]
    fn zero_matrix_and_zero_row() {
        let z = SkewMatrix::<Rational>::zeros(6).unwrap();
        assert!(pfaffian_expansion(&z).is_zero());
        let mut rng = seeded_rng(3);
        let mut a: SkewMatrix<Rational> = random_skew_int(&mut rng, 6, 9);
        for j in 0..6 {
            if j != 2 {
                a.set(2, j, r(0)).unwrap();
            }
        }
        assert!(pfaffian_elimination(&a).is_zero());
        assert!(pfaffian_expansion(&a).is_zero());
    }

    #[test]
    fn canonical_block_form_is_one() {
        let a = SkewMatrix::from_fn(8, |i, j| if i % 2 == 0 && j == i + 1 { r(1) } else { r(0) }).unwrap();
        assert_eq!(pfaffian_elimination(&a), r(1));
        assert_eq!(pfaffian_expansion(&a), r(1));
    }

    #[test]
    fn pivoting_through_zero_leading_entry() {
        // a_{0,1} = 0 forces a swap in the first step.
        let a = SkewMatrix::from_upper(4, vec![r(0), r(2), r(3), r(5), r(7), r(11)]).unwrap();
        assert_eq!(pfaffian_elimination(&a), pfaffian_expansion(&a));
        let f = SkewMatrix::from_fn(4, |i, j| a.a(i, j).to_f64()).unwrap();
        assert!((pfaffian_elimination(&f) - pfaffian_expansion(&a).to_f64()).abs() < 1e-12);
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(determinant(&Matrix::<Rational>::identity(3)).unwrap(), r(1));
        let m = Matrix::from_rows(vec![vec![r(2), r(3)], vec![r(5), r(7)]]).unwrap();
        assert_eq!(determinant(&m).unwrap(), r(2 * 7 - 3 * 5));
        assert!(determinant(&Matrix::<Rational>::zeros(2, 3)).is_err());
    }

    #[test]
    fn expansion_agrees_with_matching_sum() {
        let mut rng = seeded_rng(11);
        for order in [2, 4, 6, 8] {
            for _ in 0..5 {
                let a: SkewMatrix<Rational> = random_skew_int(&mut rng, order, 9);
                assert_eq!(pfaffian_expansion(&a), matching_sum(&a));
            }
        }
    }

    #[test]
    fn square_is_determinant_up_to_order_ten() {
        let mut rng = seeded_rng(5);
        for order in (0..=10).step_by(2) {
            for _ in 0..4 {
                let a: SkewMatrix<Rational> = random_skew_int(&mut rng, order, 9);
                let p = pfaffian_expansion(&a);
                assert_eq!(p.clone() * p, determinant(&a.to_dense()).unwrap());
            }
        }
    }

    #[test]
    fn elimination_matches_expansion_up_to_order_twelve() {
        let mut rng = seeded_rng(7);
        for order in (2..=12).step_by(2) {
            for _ in 0..5 {
                let a: SkewMatrix<Rational> = random_skew_int(&mut rng, order, 5);
                assert_eq!(pfaffian_elimination(&a), pfaffian_expansion(&a));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn homogeneity(seed in 0u64..10_000, c in -6i64..=6, half in 1usize..=4) {
            let mut rng = seeded_rng(seed);
            let a: SkewMatrix<Rational> = random_skew_int(&mut rng, 2 * half, 9);
            let c = r(c);
            let scaled = a.scale(&c);
            let factor = c.pow(half as u32);
            prop_assert_eq!(pfaffian_expansion(&scaled), factor.clone() * pfaffian_expansion(&a));
            prop_assert_eq!(pfaffian_elimination(&scaled), factor * pfaffian_elimination(&a));
        }

        #[test]
        fn elimination_equals_expansion_with_sparse_entries(seed in 0u64..10_000, half in 1usize..=4) {
            let mut rng = seeded_rng(seed);
            // Range 1 gives many zeros, exercising the pivot search.
            let a: SkewMatrix<Rational> = random_skew_int(&mut rng, 2 * half, 1);
            prop_assert_eq!(pfaffian_elimination(&a), pfaffian_expansion(&a));
        }
    }
}
