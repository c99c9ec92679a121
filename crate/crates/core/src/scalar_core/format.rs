//! Text formats for matrices.
//!
//! `.skew`: the first non-comment line is the even order `2N`; every further
//! non-comment line is `i j value` with `0 <= i < j < 2N`. Pairs that are not
//! listed are zero, and listing a pair twice is an error.
//!
//! `.mat`: the first non-comment line is the order `N`, followed by `N` rows of
//! `N` whitespace-separated values.
//!
//! Values may be integers, decimal fractions or `p/q`. `#` starts a comment.

use std::collections::HashSet;

use super::matrix::{Matrix, SkewMatrix};
use super::scalar::Scalar;
use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(no, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((no + 1, body))
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("expected {what}, found {tok:?}")))
}

pub fn parse_skew<S: Scalar>(text: &str) -> Result<SkewMatrix<S>> {
    let mut lines = content_lines(text);
    let (no, header) = lines.next().ok_or_else(|| parse_err(0, "empty input: missing order"))?;
    let mut header_toks = header.split_whitespace();
    let order = parse_usize(no, header_toks.next().unwrap_or(""), "matrix order")?;
    if header_toks.next().is_some() {
        return Err(parse_err(no, "order line must contain a single integer"));
    }
    if order % 2 != 0 {
        return Err(Error::OddOrder(order));
    }
    let mut m = SkewMatrix::zeros(order)?;
    let mut seen = HashSet::new();
    for (no, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(parse_err(no, format!("expected `i j value`, found {line:?}")));
        }
        let i = parse_usize(no, toks[0], "row index")?;
        let j = parse_usize(no, toks[1], "column index")?;
        if !(i < j && j < order) {
            return Err(parse_err(no, format!("need 0 <= i < j < {order}, got ({i},{j})")));
        }
        if !seen.insert((i, j)) {
            return Err(parse_err(no, format!("duplicate entry ({i},{j})")));
        }
        let v = S::parse_literal(toks[2]).map_err(|e| parse_err(no, e))?;
        m.set(i, j, v)?;
    }
    Ok(m)
}

/// Writes the nonzero upper-triangle entries; [`parse_skew`] inverts this.
pub fn write_skew<S: Scalar>(m: &SkewMatrix<S>) -> String {
    let mut out = format!("{}\n", m.order());
    for i in 0..m.order() {
        for j in i + 1..m.order() {
            let v = m.a(i, j);
            if !v.is_zero() {
                out.push_str(&format!("{i} {j} {v}\n"));
            }
        }
    }
    out
}

pub fn parse_mat<S: Scalar>(text: &str) -> Result<Matrix<S>> {
    let mut lines = content_lines(text);
    let (no, header) = lines.next().ok_or_else(|| parse_err(0, "empty input: missing order"))?;
    let n = parse_usize(no, header, "matrix order")?;
    let mut rows = Vec::with_capacity(n);
    for (no, line) in lines {
        if rows.len() == n {
            return Err(parse_err(no, format!("more than {n} rows")));
        }
        let row = line
            .split_whitespace()
            .map(|t| S::parse_literal(t).map_err(|e| parse_err(no, e)))
            .collect::<Result<Vec<S>>>()?;
        if row.len() != n {
            return Err(parse_err(no, format!("expected {n} values, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(parse_err(0, format!("expected {n} rows, found {}", rows.len())));
    }
    if n == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    Matrix::from_rows(rows)
}

pub fn write_mat<S: Scalar>(m: &Matrix<S>) -> String {
    format!("{}\n{}", m.rows(), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_matrix_int, random_skew_rational, seeded_rng};
    use crate::scalar_core::scalar::Rational;
    use proptest::prelude::*;

    #[test]
    fn parses_minimal_file() {
        let m: SkewMatrix<Rational> = parse_skew("2\n0 1 5\n").unwrap();
        assert_eq!(m.a(0, 1), Rational::from(5));
    }

    #[test]
    fn comments_fractions_and_defaults() {
        let text = "# a comment\n4   # order\n0 1 1/2\n2 3 -0.25\n\n1 3 7 # trailing\n";
        let m: SkewMatrix<Rational> = parse_skew(text).unwrap();
        assert_eq!(m.a(0, 1), Rational::new(1, 2).unwrap());
        assert_eq!(m.a(2, 3), Rational::new(-1, 4).unwrap());
        assert_eq!(m.a(3, 1), Rational::from(-7));
        assert!(m.a(0, 2).is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        let cases = [
            ("", "missing order"),
            ("3\n", "odd"),
            ("4\n0 1 1\n0 1 2\n", "duplicate"),
            ("4\n1 0 1\n", "i < j"),
            ("4\n0 4 1\n", "range"),
            ("4\n0 1 x\n", "value"),
            ("4\n0 1\n", "arity"),
        ];
        for (text, why) in cases {
            assert!(parse_skew::<Rational>(text).is_err(), "{why}");
        }
        match parse_skew::<Rational>("4\n0 1 1\n# c\n0 1 2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mat_round_trip_and_errors() {
        let m: Matrix<Rational> = random_matrix_int(&mut seeded_rng(3), 4, 4, 9);
        assert_eq!(parse_mat::<Rational>(&write_mat(&m)).unwrap(), m);
        assert!(parse_mat::<Rational>("2\n1 2\n3\n").is_err());
        assert!(parse_mat::<Rational>("2\n1 2\n").is_err());
        assert!(parse_mat::<Rational>("1\n1\n2\n").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn skew_round_trip(seed in 0u64..100_000, half in 0usize..=5) {
            let m: SkewMatrix<Rational> = random_skew_rational(&mut seeded_rng(seed), 2 * half, 9);
            prop_assert_eq!(parse_skew::<Rational>(&write_skew(&m)).unwrap(), m);
        }
    }
}
