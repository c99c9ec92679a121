//! Determinant condensation: Dodgson's scheme on the discrete Toda lattice
//! and the one-parameter λ-determinant recurrence.

use crate::error::{Cell, Error, Result};
use crate::scalar_core::matrix::Matrix;
use crate::scalar_core::scalar::Scalar;

/// Levels `τ_t` of a Dodgson run; `τ_t` is a square of side `N - t + 1`
/// holding the contiguous `t × t` minors.
#[derive(Clone, Debug, PartialEq)]
pub struct TodaGrid<S> {
    pub order: usize,
    pub levels: Vec<Matrix<S>>,
}

impl<S: Scalar> TodaGrid<S> {
    pub fn result(&self) -> Option<&S> {
        (self.levels.len() == self.order + 1).then(|| self.levels[self.order].get(0, 0))
    }
}

/// Runs `τ_{t+1}^{k,l} = (τ_t^{k,l} τ_t^{k+1,l+1} − τ_t^{k+1,l} τ_t^{k,l+1}) / τ_{t-1}^{k+1,l+1}`
/// from `τ_0 = 1`, `τ_1 = M`.
pub fn dodgson_grid<S: Scalar>(m: &Matrix<S>) -> Result<TodaGrid<S>> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::Shape(format!("need a non-empty square matrix, got {}×{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    let mut levels = vec![Matrix::from_fn(n + 1, n + 1, |_, _| S::one()), m.clone()];
    for t in 1..n {
        let (prev, cur) = (&levels[t - 1], &levels[t]);
        let side = n - t;
        let mut next = Matrix::from_fn(side, side, |_, _| S::zero());
        for k in 0..side {
            for l in 0..side {
                let num = cur.get(k, l).clone() * cur.get(k + 1, l + 1).clone()
                    - cur.get(k + 1, l).clone() * cur.get(k, l + 1).clone();
                let v = num
                    .checked_div(prev.get(k + 1, l + 1))
                    .ok_or_else(|| Error::ZeroDivisor(Cell::new("tau", t as i64 + 1, k as i64, l as i64)))?;
                next.set(k, l, v);
            }
        }
        levels.push(next);
    }
    Ok(TodaGrid { order: n, levels })
}

/// `det(M)` by Dodgson condensation. Interior zeros are reported, not dodged.
pub fn dodgson_determinant<S: Scalar>(m: &Matrix<S>) -> Result<S> {
    Ok(dodgson_grid(m)?.result().expect("complete run").clone())
}

/// `T_t^{i,j}` on the diamond `|i| + |j| <= n - t`, `i + j ≡ n - t (mod 2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaDetGrid<S> {
    pub order: usize,
    pub lambda: S,
    levels: Vec<Vec<Option<S>>>,
}

impl<S: Scalar> LambdaDetGrid<S> {
    fn side(&self) -> usize {
        2 * self.order + 1
    }

    fn slot(&self, i: i64, j: i64) -> usize {
        let r = self.order as i64;
        ((i + r) as usize) * self.side() + (j + r) as usize
    }

    /// `T_t^{i,j}`, or `None` off the level's diamond.
    pub fn get(&self, t: usize, i: i64, j: i64) -> Option<&S> {
        let r = self.order as i64;
        if i.abs() > r || j.abs() > r {
            return None;
        }
        self.levels.get(t)?[self.slot(i, j)].as_ref()
    }

    pub fn result(&self) -> Option<&S> {
        self.get(self.order, 0, 0)
    }
}

fn on_diamond(n: i64, t: i64, i: i64, j: i64) -> bool {
    i.abs() + j.abs() <= n - t && (i + j - (n - t)).rem_euclid(2) == 0
}

/// Iterates `T_{t+1}^{k,l} T_{t-1}^{k,l} = T_t^{k,l+1} T_t^{k,l-1} + λ T_t^{k+1,l} T_t^{k-1,l}`.
pub fn lambda_det_grid<S: Scalar>(m: &Matrix<S>, lambda: &S) -> Result<LambdaDetGrid<S>> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::Shape(format!("need a non-empty square matrix, got {}×{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    let ni = n as i64;
    let mut g = LambdaDetGrid { order: n, lambda: lambda.clone(), levels: Vec::new() };
    let cells: Vec<(i64, i64)> = (-ni..=ni).flat_map(|i| (-ni..=ni).map(move |j| (i, j))).collect();
    let blank = vec![None; g.side() * g.side()];

    let mut t0 = blank.clone();
    for &(i, j) in cells.iter().filter(|&&(i, j)| on_diamond(ni, 0, i, j)) {
        t0[g.slot(i, j)] = Some(S::one());
    }
    g.levels.push(t0);
    let mut t1 = blank.clone();
    for &(i, j) in cells.iter().filter(|&&(i, j)| on_diamond(ni, 1, i, j)) {
        // 1-based a_{(j-i+n+1)/2, (i+j+n+1)/2}
        let row = (j - i + ni + 1) / 2 - 1;
        let col = (i + j + ni + 1) / 2 - 1;
        t1[g.slot(i, j)] = Some(m.get(row as usize, col as usize).clone());
    }
    g.levels.push(t1);

    for t in 1..n {
        let mut next = blank.clone();
        for &(k, l) in cells.iter().filter(|&&(k, l)| on_diamond(ni, t as i64 + 1, k, l)) {
            let at = |dk: i64, dl: i64| g.get(t, k + dk, l + dl).expect("neighbour on the diamond").clone();
            let num = at(0, 1) * at(0, -1) + lambda.clone() * at(1, 0) * at(-1, 0);
            let den = g.get(t - 1, k, l).expect("centre on the diamond");
            let v = num
                .checked_div(den)
                .ok_or_else(|| Error::ZeroDivisor(Cell::new("T", t as i64 + 1, k, l)))?;
            next[g.slot(k, l)] = Some(v);
        }
        g.levels.push(next);
    }
    Ok(g)
}

/// The λ-determinant `T_n^{0,0}`; `λ = −1` gives `det(M)`.
pub fn lambda_determinant<S: Scalar>(m: &Matrix<S>, lambda: &S) -> Result<S> {
    Ok(lambda_det_grid(m, lambda)?.result().expect("complete run").clone())
}

/// Degree bound `n(n-1)/2` of the λ-determinant as a polynomial in `λ`.
pub fn lambda_degree_bound(order: usize) -> usize {
    order * order.saturating_sub(1) / 2
}

/// Lagrange interpolation through `(xs[i], ys[i])`, evaluated at `x`.
pub fn lagrange_eval<S: Scalar>(xs: &[S], ys: &[S], x: &S) -> Result<S> {
    if xs.len() != ys.len() {
        return Err(Error::Shape("abscissae and values differ in length".into()));
    }
    let mut acc = S::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut term = yi.clone();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                term = (term * (x.clone() - xj.clone())).div(&(xi.clone() - xj.clone()))?;
            }
        }
        acc = acc + term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_matrix_int, seeded_rng};
    use crate::scalar_core::pfaffian::determinant;
    use crate::scalar_core::scalar::Rational;

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    /// Leibniz formula with each term weighted by `λ^{inversions}`; the
    /// ordinary determinant at `λ = −1`.
    fn leibniz(m: &Matrix<Rational>, lambda: &Rational) -> Rational {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.rows();
        let mut acc = r(0);
        for p in perms(n) {
            let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let mut term = lambda.pow(inv as u32);
            for (i, &pi) in p.iter().enumerate() {
                term = term * m.get(i, pi).clone();
            }
            acc = acc + term;
        }
        acc
    }

    #[test]
    fn two_by_two() {
        let m = Matrix::from_rows(vec![vec![r(3), r(5)], vec![r(7), r(11)]]).unwrap();
        assert_eq!(dodgson_determinant(&m).unwrap(), r(33 - 35));
        let lam = r(4);
        assert_eq!(lambda_determinant(&m, &lam).unwrap(), r(33) + lam * r(35));
    }

    #[test]
    fn identity_hits_an_interior_zero() {
        // Off-diagonal 1×1 minors of the identity vanish and divide τ_3.
        let err = dodgson_determinant(&Matrix::<Rational>::identity(5)).unwrap_err();
        assert_eq!(err, Error::ZeroDivisor(Cell::new("tau", 3, 0, 1)));
        assert_eq!(dodgson_determinant(&Matrix::<Rational>::identity(2)).unwrap(), r(1));
    }

    #[test]
    fn random_matches_oracle() {
        let mut rng = seeded_rng(3);
        let mut done = 0;
        for _ in 0..30 {
            let m: Matrix<Rational> = random_matrix_int(&mut rng, 4, 4, 9);
            match dodgson_determinant(&m) {
                Ok(v) => {
                    assert_eq!(v, determinant(&m).unwrap());
                    done += 1;
                }
                Err(Error::ZeroDivisor(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(done > 20);
    }

    #[test]
    fn interior_zero_is_reported() {
        // The centre 1×1 minor of a 3×3 matrix divides the last step.
        let m = Matrix::from_rows(vec![vec![r(1), r(2), r(3)], vec![r(4), r(0), r(6)], vec![r(7), r(8), r(9)]]).unwrap();
        assert_eq!(dodgson_determinant(&m).unwrap_err(), Error::ZeroDivisor(Cell::new("tau", 3, 0, 0)));
    }

    #[test]
    fn reduces_to_determinant_at_minus_one() {
        let mut rng = seeded_rng(8);
        for n in 1..=4 {
            let m: Matrix<Rational> = random_matrix_int(&mut rng, n, n, 9);
            match lambda_determinant(&m, &r(-1)) {
                Ok(v) => assert_eq!(v, leibniz(&m, &r(-1)), "n = {n}"),
                Err(Error::ZeroDivisor(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn matches_inversion_weighted_sum_up_to_order_two() {
        // From order 3 on, the λ-determinant is a sum over alternating sign
        // matrices, not permutations, so the two differ for λ ≠ −1.
        let mut rng = seeded_rng(8);
        for n in 1..=2 {
            let m: Matrix<Rational> = random_matrix_int(&mut rng, n, n, 9);
            for lam in [r(-1), r(1), r(2), Rational::new(-1, 3).unwrap()] {
                match lambda_determinant(&m, &lam) {
                    Ok(v) => assert_eq!(v, leibniz(&m, &lam), "n = {n}, λ = {lam}"),
                    Err(Error::ZeroDivisor(_)) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn all_ones_three_by_three_by_hand() {
        // T_1 ≡ 1 on its diamond, T_2 = 1 + λ everywhere,
        // T_3 = ((1+λ)² + λ(1+λ)²) / 1 = (1+λ)³ at λ = 1 → 8.
        let m = Matrix::from_fn(3, 3, |_, _| r(1));
        assert_eq!(lambda_determinant(&m, &r(1)).unwrap(), r(8));
        // The permutation sum would give (1)(1+λ)(1+λ+λ²) = 6.
        assert_eq!(leibniz(&m, &r(1)), r(6));
    }

    #[test]
    fn polynomial_in_lambda() {
        let m: Matrix<Rational> = random_matrix_int(&mut seeded_rng(12), 3, 3, 9);
        let d = lambda_degree_bound(3);
        let xs: Vec<Rational> = (1..=d as i64 + 1).map(r).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| lambda_determinant(&m, x).unwrap()).collect();
        let probe = Rational::new(-7, 2).unwrap();
        assert_eq!(lagrange_eval(&xs, &ys, &probe).unwrap(), lambda_determinant(&m, &probe).unwrap());
    }

    #[test]
    fn shape_errors() {
        let m = Matrix::from_fn(2, 3, |_, _| r(1));
        assert!(matches!(dodgson_determinant(&m), Err(Error::Shape(_))));
        assert!(matches!(lambda_determinant(&m, &r(1)), Err(Error::Shape(_))));
    }
}
