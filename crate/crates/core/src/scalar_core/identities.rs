//! Checkers for general Pfaffian identities.
//!
//! Each checker evaluates both sides by independent expansion and reports
//! the difference; nothing is simplified symbolically.

use super::labels::{ensure_distinct, ExtendedSkewArray, Label};
use super::matrix::{Matrix, SkewMatrix};
use super::pfaffian::{determinant, pfaffian_expansion};
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::report::{ResidualTracker, VerificationReport};

fn sign<S: Scalar>(even: bool) -> S {
    if even {
        S::one()
    } else {
        -S::one()
    }
}

fn join(labels: &[Label]) -> String {
    labels.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// `Pf(B A Bᵀ) - det(B) Pf(A)`.
pub fn congruence_residual<S: Scalar>(a: &SkewMatrix<S>, b: &Matrix<S>) -> Result<S> {
    let transformed = a.congruence(b)?;
    Ok(pfaffian_expansion(&transformed) - determinant(b)? * pfaffian_expansion(a))
}

pub fn check_congruence<S: Scalar>(a: &SkewMatrix<S>, b: &Matrix<S>) -> Result<VerificationReport> {
    let r = congruence_residual(a, b)?;
    let mut t = ResidualTracker::new();
    t.record(format!("order {}", a.order()), &r);
    Ok(VerificationReport::single("congruence", t.into_case().param("order", a.order())))
}

/// Residual of the even identity
/// `Pf(a_1..a_m,⋆)Pf(⋆) = Σ_{j=2}^{m} (-1)^j Pf(a_1,a_j,⋆)Pf(a_2..â_j..a_m,⋆)`
/// (positions `j` are 1-based as written).
pub fn bilinear_even_residual<S: Scalar>(e: &ExtendedSkewArray<S>, a: &[Label], star: &[Label]) -> Result<S> {
    if a.len() % 2 != 0 || star.len() % 2 != 0 {
        return Err(Error::Precondition(format!(
            "even identity needs an even number of a-labels and ⋆-labels, got {} and {}",
            a.len(),
            star.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::Precondition("even identity needs at least two a-labels".into()));
    }
    ensure_distinct(&[a, star].concat())?;
    let with_star = |head: &[Label]| [head, star].concat();
    let lhs = e.pfaffian(&with_star(a))? * e.pfaffian(star)?;
    let mut rhs = S::zero();
    for j in 2..=a.len() {
        let pair = e.pfaffian(&with_star(&[a[0], a[j - 1]]))?;
        let rest: Vec<Label> = a[1..].iter().enumerate().filter(|(p, _)| p + 2 != j).map(|(_, l)| *l).collect();
        rhs = rhs + sign::<S>(j % 2 == 0) * pair * e.pfaffian(&with_star(&rest))?;
    }
    Ok(lhs - rhs)
}

pub fn check_bilinear_even<S: Scalar>(
    e: &ExtendedSkewArray<S>,
    a: &[Label],
    star: &[Label],
) -> Result<VerificationReport> {
    let r = bilinear_even_residual(e, a, star)?;
    let mut t = ResidualTracker::new();
    t.record(format!("a=[{}] star=[{}]", join(a), join(star)), &r);
    let case = t.into_case().param("m", a.len()).param("star", star.len());
    Ok(VerificationReport::single("bilinear-even", case))
}

/// Residual of the odd identity
/// `Pf(a_1..a_m,∗)Pf(∗,z) = Σ_{j=1}^{m} (-1)^{j-1} Pf(a_j,∗)Pf(a_1..â_j..a_m,∗,z)`
/// where `∗` has odd length and `z` is the trailing label.
pub fn bilinear_odd_residual<S: Scalar>(
    e: &ExtendedSkewArray<S>,
    a: &[Label],
    ast: &[Label],
    last: Label,
) -> Result<S> {
    if ast.len() % 2 == 0 || a.len() % 2 == 0 {
        return Err(Error::Precondition(format!(
            "odd identity needs odd numbers of a-labels and ∗-labels, got {} and {}",
            a.len(),
            ast.len()
        )));
    }
    ensure_distinct(&[a, ast, &[last]].concat())?;
    let lhs = e.pfaffian(&[a, ast].concat())? * e.pfaffian(&[ast, &[last]].concat())?;
    let mut rhs = S::zero();
    for j in 1..=a.len() {
        let single = e.pfaffian(&[&[a[j - 1]], ast].concat())?;
        let rest: Vec<Label> = a.iter().enumerate().filter(|(p, _)| p + 1 != j).map(|(_, l)| *l).collect();
        let other = e.pfaffian(&[&rest[..], ast, &[last]].concat())?;
        rhs = rhs + sign::<S>(j % 2 == 1) * single * other;
    }
    Ok(lhs - rhs)
}

pub fn check_bilinear_odd<S: Scalar>(
    e: &ExtendedSkewArray<S>,
    a: &[Label],
    ast: &[Label],
    last: Label,
) -> Result<VerificationReport> {
    let r = bilinear_odd_residual(e, a, ast, last)?;
    let mut t = ResidualTracker::new();
    t.record(format!("a=[{}] ast=[{}] last={last}", join(a), join(ast)), &r);
    let case = t.into_case().param("m", a.len()).param("ast", ast.len());
    Ok(VerificationReport::single("bilinear-odd", case))
}
