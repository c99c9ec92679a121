//! Oracles shared by the integration tests. They are written independently
//! of the library: plain recursion, no memoisation, no condensation.
#![allow(dead_code)]

use pfcondense::{Matrix, Rational, Scalar, SkewMatrix};

/// Pfaffian by expansion along the first remaining index.
pub fn pf_oracle<S: Scalar>(a: &SkewMatrix<S>) -> S {
    let idx: Vec<usize> = (0..a.order()).collect();
    pf_rec(&|i, j| a.a(i, j), &idx)
}

pub fn pf_rec<S: Scalar>(entry: &dyn Fn(usize, usize) -> S, idx: &[usize]) -> S {
    if idx.is_empty() {
        return S::one();
    }
    let mut acc = S::zero();
    for j in 1..idx.len() {
        let rest: Vec<usize> = idx[1..].iter().enumerate().filter(|(p, _)| p + 1 != j).map(|(_, v)| *v).collect();
        let term = entry(idx[0], idx[j]) * pf_rec(entry, &rest);
        acc = if j % 2 == 1 { acc + term } else { acc - term };
    }
    acc
}

/// Determinant by Laplace expansion along the first row.
pub fn det_oracle<S: Scalar>(m: &Matrix<S>) -> S {
    let cols: Vec<usize> = (0..m.cols()).collect();
    det_rec(m, 0, &cols)
}

fn det_rec<S: Scalar>(m: &Matrix<S>, row: usize, cols: &[usize]) -> S {
    if cols.is_empty() {
        return S::one();
    }
    let mut acc = S::zero();
    for (p, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = m.get(row, c).clone() * det_rec(m, row + 1, &rest);
        acc = if p % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

pub fn r(v: i64) -> Rational {
    Rational::from(v)
}

pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d).unwrap()
}
