//! Dense square matrices and even-order skew-symmetric matrices.
//!
//! All indices are 0-based.

use std::fmt;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Position of `(i, j)`, `i < j`, in a row-major strict upper triangle of order `n`.
#[inline]
pub(crate) fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Skew-symmetric matrix of even order `2N`.
///
/// Only the strict upper triangle is stored, so `a(i, j) == -a(j, i)` holds
/// by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix<S> {
    order: usize,
    upper: Vec<S>,
}

impl<S: Scalar> SkewMatrix<S> {
    /// Zero matrix of the given order.
    pub fn zeros(order: usize) -> Result<Self> {
        if order % 2 != 0 {
            return Err(Error::OddOrder(order));
        }
        Ok(SkewMatrix {
            order,
            upper: vec![S::zero(); order * order.saturating_sub(1) / 2],
        })
    }

    /// Builds from the strict upper triangle in row-major order.
    pub fn from_upper(order: usize, upper: Vec<S>) -> Result<Self> {
        if order % 2 != 0 {
            return Err(Error::OddOrder(order));
        }
        let expected = order * order.saturating_sub(1) / 2;
        if upper.len() != expected {
            return Err(Error::Shape(format!(
                "order {order} needs {expected} upper-triangle entries, got {}",
                upper.len()
            )));
        }
        Ok(SkewMatrix { order, upper })
    }

    /// Builds from a function evaluated on every `i < j`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> S) -> Result<Self> {
        let mut m = Self::zeros(order)?;
        for i in 0..order {
            for j in i + 1..order {
                m.upper[upper_index(order, i, j)] = f(i, j);
            }
        }
        Ok(m)
    }

    /// Reads the upper triangle of a dense matrix; fails unless it is skew.
    pub fn from_dense(m: &Matrix<S>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!("{}x{} is not square", m.rows(), m.cols())));
        }
        let n = m.rows();
        for i in 0..n {
            if !m.get(i, i).is_zero() {
                return Err(Error::Shape(format!("diagonal entry ({i},{i}) is nonzero")));
            }
            for j in i + 1..n {
                if *m.get(i, j) != -m.get(j, i).clone() {
                    return Err(Error::Shape(format!("entries ({i},{j}) and ({j},{i}) are not opposite")));
                }
            }
        }
        Self::from_fn(n, |i, j| m.get(i, j).clone())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `N` for a matrix of order `2N`.
    pub fn half_order(&self) -> usize {
        self.order / 2
    }

    /// `a_{i,j}`, with `a_{j,i} = -a_{i,j}` and a zero diagonal.
    pub fn a(&self, i: usize, j: usize) -> S {
        assert!(i < self.order && j < self.order, "index ({i},{j}) out of range");
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[upper_index(self.order, i, j)].clone(),
            std::cmp::Ordering::Greater => -self.upper[upper_index(self.order, j, i)].clone(),
            std::cmp::Ordering::Equal => S::zero(),
        }
    }

    /// Sets `a_{i,j}` (and implicitly `a_{j,i} = -v`).
    pub fn set(&mut self, i: usize, j: usize, v: S) -> Result<()> {
        if i >= self.order || j >= self.order {
            return Err(Error::Range(format!("({i},{j}) in a matrix of order {}", self.order)));
        }
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[upper_index(self.order, i, j)] = v,
            std::cmp::Ordering::Greater => self.upper[upper_index(self.order, j, i)] = -v,
            std::cmp::Ordering::Equal => {
                return Err(Error::Shape(format!("diagonal entry ({i},{i}) of a skew matrix is fixed at 0")))
            }
        }
        Ok(())
    }

    pub fn upper(&self) -> &[S] {
        &self.upper
    }

    pub fn to_dense(&self) -> Matrix<S> {
        Matrix::from_fn(self.order, self.order, |i, j| self.a(i, j))
    }

    pub fn scale(&self, c: &S) -> Self {
        SkewMatrix {
            order: self.order,
            upper: self.upper.iter().map(|v| c.clone() * v.clone()).collect(),
        }
    }

    /// `B A Bᵀ`, which is again skew-symmetric.
    pub fn congruence(&self, b: &Matrix<S>) -> Result<Self> {
        if b.rows() != self.order || b.cols() != self.order {
            return Err(Error::Shape(format!(
                "congruence by a {}x{} matrix on order {}",
                b.rows(),
                b.cols(),
                self.order
            )));
        }
        let ba = b.mul(&self.to_dense())?;
        let n = self.order;
        Self::from_fn(n, |i, j| {
            (0..n).fold(S::zero(), |acc, t| acc + ba.get(i, t).clone() * b.get(j, t).clone())
        })
    }

    /// Principal submatrix on the given (ordered) indices.
    pub fn submatrix(&self, idx: &[usize]) -> Result<Self> {
        Self::from_fn(idx.len(), |p, q| self.a(idx[p], idx[q]))
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("rows have different lengths".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(S::zero(), |acc, t| acc + self.get(i, t).clone() * rhs.get(t, j).clone())
        }))
    }

    /// Leading principal `n x n` block.
    pub fn leading(&self, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| self.get(i, j).clone())
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
