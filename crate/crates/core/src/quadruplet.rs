//! Quadruplet store `pf(i, j, k, l)` shared by both condensation schemes.
//!
//! `pf(i, j, k, 0) = a(i+k, j+k)` and, for `l >= 1`,
//!
//! ```text
//! pf(i,j,k,l) = λ² pf(i,j,k,l-1) + λ pf(i+1,j,k,l-1) + λ pf(i,j+1,k,l-1) + pf(i+1,j+1,k,l-1)
//! ```
//!
//! Layer `(k, l)` is a skew array of order `2N - k - l`; every layer is kept,
//! which costs `O(N^4)` time and storage.

use crate::grid::TriGrid;
use crate::scalar_core::matrix::{upper_index, SkewMatrix};
use crate::scalar_core::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct QuadrupletTable<S> {
    order: usize,
    /// Start of layer `(k, l)` in `data`; each layer is upper-packed.
    offsets: TriGrid<usize>,
    data: Vec<S>,
}

fn packed_len(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

impl<S: Scalar> QuadrupletTable<S> {
    /// Fills every layer with `k + l <= max_sum`.
    pub fn build(a: &SkewMatrix<S>, lambda: &S, max_sum: i64) -> Self {
        let order = a.order();
        let lambda2 = lambda.clone() * lambda.clone();
        let mut offsets = TriGrid::new(max_sum, 0, 0usize);
        let mut total = 0;
        for k in 0..=max_sum {
            for l in 0..=max_sum - k {
                offsets.set(k, l, total);
                total += packed_len(order - (k + l) as usize);
            }
        }
        let mut data = vec![S::zero(); total];
        for k in 0..=max_sum {
            let ku = k as usize;
            let m = order - ku;
            let mut p = *offsets.at(k, 0);
            for i in 0..m {
                for j in i + 1..m {
                    data[p] = a.a(i + ku, j + ku);
                    p += 1;
                }
            }
            for l in 1..=max_sum - k {
                let (prev, cur) = (*offsets.at(k, l - 1), *offsets.at(k, l));
                let m = order - (k + l) as usize + 1;
                let (head, tail) = data.split_at_mut(cur);
                evolve(&head[prev..prev + packed_len(m)], m, lambda, &lambda2, &mut tail[..packed_len(m - 1)]);
            }
        }
        QuadrupletTable { order, offsets, data }
    }

    /// Order of layer `(k, l)`, i.e. `2N - k - l`.
    pub fn layer_order(&self, k: i64, l: i64) -> usize {
        self.order - (k + l) as usize
    }

    pub fn max_sum(&self) -> i64 {
        self.offsets.extent()
    }

    /// `pf(i, j, k, l)`, skew in `(i, j)`; `None` outside the stored range.
    pub fn pf(&self, i: usize, j: usize, k: i64, l: i64) -> Option<S> {
        let start = *self.offsets.get(k, l)?;
        let m = self.layer_order(k, l);
        if i >= m || j >= m {
            return None;
        }
        Some(match i.cmp(&j) {
            std::cmp::Ordering::Less => self.data[start + upper_index(m, i, j)].clone(),
            std::cmp::Ordering::Greater => -self.data[start + upper_index(m, j, i)].clone(),
            std::cmp::Ordering::Equal => S::zero(),
        })
    }
}

/// One `l`-step from a layer of order `m` into `out` (order `m - 1`).
///
/// Works on packed rows: row `i` of an order-`m` layer holds `(i, i+1..m)`.
fn evolve<S: Scalar>(old: &[S], m: usize, lambda: &S, lambda2: &S, out: &mut [S]) {
    let n = m - 1;
    let row = |i: usize| {
        let start = upper_index(m, i, i + 1);
        &old[start..start + (m - i - 1)]
    };
    let mut p = 0;
    for i in 0..n.saturating_sub(1) {
        let len = n - i - 1;
        let (top, below) = (row(i), row(i + 1));
        let dst = &mut out[p..p + len];
        // j = i + 1: the (i+1, j) term is a diagonal entry and vanishes.
        dst[0] = lambda2.clone() * top[0].clone() + lambda.clone() * top[1].clone() + below[0].clone();
        // j > i + 1: (i, j), (i, j+1), (i+1, j), (i+1, j+1).
        for (o, ((a, b), (c, d))) in
            dst[1..].iter_mut().zip(top[1..].iter().zip(&top[2..]).zip(below.iter().zip(&below[1..])))
        {
            *o = lambda2.clone() * a.clone() + lambda.clone() * (b.clone() + c.clone()) + d.clone();
        }
        p += len;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_skew_int, seeded_rng};
    use crate::scalar_core::scalar::Rational;

    #[test]
    fn shift_rule_and_four_term_rule() {
        let a: SkewMatrix<Rational> = random_skew_int(&mut seeded_rng(1), 8, 9);
        let lam = Rational::new(-2, 3).unwrap();
        let q = QuadrupletTable::build(&a, &lam, 6);
        for k in 0..=6i64 {
            let m = q.layer_order(k, 0);
            for i in 0..m {
                for j in 0..m {
                    assert_eq!(q.pf(i, j, k, 0).unwrap(), a.a(i + k as usize, j + k as usize));
                }
            }
        }
        for k in 0..=5i64 {
            for l in 1..=6 - k {
                let m = q.layer_order(k, l);
                for i in 0..m {
                    for j in 0..m {
                        let p = |x, y| q.pf(x, y, k, l - 1).unwrap();
                        let expect = lam.clone() * lam.clone() * p(i, j)
                            + lam.clone() * p(i + 1, j)
                            + lam.clone() * p(i, j + 1)
                            + p(i + 1, j + 1);
                        assert_eq!(q.pf(i, j, k, l).unwrap(), expect, "({i},{j},{k},{l})");
                    }
                }
            }
        }
        assert!(q.pf(0, 1, 4, 3).is_none());
    }
}
