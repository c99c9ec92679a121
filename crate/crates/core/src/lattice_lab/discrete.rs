//! Discrete Gram- and Wronski-type Pfaffian identities.
//!
//! Gram type, with `Pf(a, b) = 0`:
//!
//! ```text
//! Pf(i*, j*) = Pf(i, j) + λ Pf(a, b, i, j),   Pf(a, i*) = Pf(a, i) + λ Pf(b, i)
//! Pf(0*, …, (2n-1)*)    = Pf(0, …, 2n-1) + λ Pf(a, b, 0, …, 2n-1)          (gram1)
//! Pf(a, 0*, …, (2n-2)*) = Pf(a, 0, …, 2n-2) + λ Pf(b, 0, …, 2n-2)          (gram2)
//! ```
//!
//! Wronski type, with `Pf(c, i) = (−λ)^i` and `Pf(d, c) = 0`:
//!
//! ```text
//! Pf(i*, j*) = λ² Pf(i,j) + λ Pf(i+1,j) + λ Pf(i,j+1) + Pf(i+1,j+1),   Pf(d, i*) = λ Pf(d,i) + Pf(d,i+1)
//! Pf(0*, …, (2n-1)*)    = Pf(c, 0, …, 2n)                                  (wronski1)
//! Pf(d, 0*, …, (2n-2)*) = Pf(d, c, 0, …, 2n-1)                             (wronski2)
//! ```

use crate::error::{Error, Result};
use crate::lattice_lab::elements::{random_table, ElementTable};
use crate::random::SeededRng;
use crate::report::{ResidualTracker, VerificationReport};
use crate::scalar_core::labels::{idx_range, star_range, Label};
use crate::scalar_core::scalar::Scalar;

/// Copy of `t` with extra (initially zero) labels.
pub fn with_labels<S: Scalar>(t: &ElementTable<S>, extra: &[Label]) -> Result<ElementTable<S>> {
    let mut labels = t.labels().to_vec();
    labels.extend_from_slice(extra);
    let mut out = ElementTable::new(labels)?;
    let old = t.labels();
    for (p, &x) in old.iter().enumerate() {
        for &y in &old[p + 1..] {
            out.set(x, y, t.get(x, y))?;
        }
    }
    Ok(out)
}

fn require_labels<S: Scalar>(t: &ElementTable<S>, base: usize, rows: &[Label]) -> Result<()> {
    if t.base_count() < base {
        return Err(Error::SeedSize { required: base, available: t.base_count() });
    }
    match rows.iter().find(|r| !t.contains(**r)) {
        Some(r) => Err(Error::Label(format!("seed lacks the {r} row"))),
        None => Ok(()),
    }
}

fn single_case(suite: &str, name: &str, n: usize, lambda: &impl std::fmt::Display, t: ResidualTracker) -> VerificationReport {
    let case = t.into_case().param("identity", name).param("n", n).param("lambda", lambda);
    VerificationReport::single(suite, case)
}

/// Checks (gram1) and (gram2) at size `n` on a seed over `a`, `b`, `0..2n`.
pub fn check_gram_identities<S: Scalar>(seed: &ElementTable<S>, lambda: &S, n: usize) -> Result<VerificationReport> {
    require_labels(seed, 2 * n, &[Label::A, Label::B])?;
    if !seed.get(Label::A, Label::B).is_zero() {
        return Err(Error::Precondition("Gram-type identities need Pf(a, b) = 0".into()));
    }
    let stars = star_range(0, 2 * n);
    let mut e = with_labels(seed, &stars)?;
    for i in 0..2 * n {
        for j in i + 1..2 * n {
            let (x, y) = (Label::Idx(i), Label::Idx(j));
            let v = seed.get(x, y) + lambda.clone() * seed.pfaffian(&[Label::A, Label::B, x, y])?;
            e.set(Label::Star(i), Label::Star(j), v)?;
        }
        let v = seed.get(Label::A, Label::Idx(i)) + lambda.clone() * seed.get(Label::B, Label::Idx(i));
        e.set(Label::A, Label::Star(i), v)?;
    }

    let mut report = VerificationReport::new("gram");
    let mut t = ResidualTracker::new();
    let base = idx_range(0, 2 * n);
    let mut ab = vec![Label::A, Label::B];
    ab.extend(&base);
    let r1 = e.pfaffian(&stars)? - e.pfaffian(&base)? - lambda.clone() * e.pfaffian(&ab)?;
    t.record(format!("gram1 n={n}"), &r1);
    report.absorb(single_case("gram1", "gram1", n, lambda, t));

    let mut t = ResidualTracker::new();
    if n >= 1 {
        let odd = 2 * n - 1;
        let mut lhs = vec![Label::A];
        lhs.extend(star_range(0, odd));
        let mut a_rest = vec![Label::A];
        a_rest.extend(idx_range(0, odd));
        let mut b_rest = vec![Label::B];
        b_rest.extend(idx_range(0, odd));
        let r2 = e.pfaffian(&lhs)? - e.pfaffian(&a_rest)? - lambda.clone() * e.pfaffian(&b_rest)?;
        t.record(format!("gram2 n={n}"), &r2);
    }
    report.absorb(single_case("gram2", "gram2", n, lambda, t));
    Ok(report)
}

/// Checks (wronski1) and (wronski2) at size `n` on a seed over `d0`, `0..=2n`.
/// The `c` row is installed internally.
pub fn check_wronski_identities<S: Scalar>(seed: &ElementTable<S>, lambda: &S, n: usize) -> Result<VerificationReport> {
    let d = Label::D(0);
    let c = Label::C(0);
    require_labels(seed, 2 * n + 1, &[d])?;
    let stars = star_range(0, 2 * n);
    let mut extra = vec![c];
    extra.extend(&stars);
    let mut e = with_labels(seed, &extra)?;
    let minus_lam = -lambda.clone();
    for i in 0..=2 * n {
        e.set(c, Label::Idx(i), minus_lam.pow(i as u32))?;
    }
    e.set(d, c, S::zero())?;
    let p = |x: usize, y: usize| seed.get(Label::Idx(x), Label::Idx(y));
    for i in 0..2 * n {
        for j in i + 1..2 * n {
            let v = lambda.clone() * lambda.clone() * p(i, j)
                + lambda.clone() * (p(i + 1, j) + p(i, j + 1))
                + p(i + 1, j + 1);
            e.set(Label::Star(i), Label::Star(j), v)?;
        }
        let v = lambda.clone() * seed.get(d, Label::Idx(i)) + seed.get(d, Label::Idx(i + 1));
        e.set(d, Label::Star(i), v)?;
    }

    let mut report = VerificationReport::new("wronski");
    let mut t = ResidualTracker::new();
    let mut rhs1 = vec![c];
    rhs1.extend(idx_range(0, 2 * n + 1));
    t.record(format!("wronski1 n={n}"), &(e.pfaffian(&stars)? - e.pfaffian(&rhs1)?));
    report.absorb(single_case("wronski1", "wronski1", n, lambda, t));

    let mut t = ResidualTracker::new();
    if n >= 1 {
        let mut lhs = vec![d];
        lhs.extend(star_range(0, 2 * n - 1));
        let mut rhs = vec![d, c];
        rhs.extend(idx_range(0, 2 * n));
        t.record(format!("wronski2 n={n}"), &(e.pfaffian(&lhs)? - e.pfaffian(&rhs)?));
    }
    report.absorb(single_case("wronski2", "wronski2", n, lambda, t));
    Ok(report)
}

/// Random Gram seed over `a`, `b`, `0..2n` with `Pf(a, b) = 0`.
pub fn random_gram_seed<S: Scalar>(rng: &mut SeededRng, n: usize) -> Result<ElementTable<S>> {
    random_table(rng, 2 * n, &[Label::A, Label::B], 9)
}

/// Random Wronski seed over `d0`, `0..=2n`.
pub fn random_wronski_seed<S: Scalar>(rng: &mut SeededRng, n: usize) -> Result<ElementTable<S>> {
    random_table(rng, 2 * n + 1, &[Label::D(0)], 9)
}
