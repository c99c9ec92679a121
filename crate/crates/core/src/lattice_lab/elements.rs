//! Labeled Pfaffian-entry tables and their discrete evolutions.
//!
//! A table holds `Pf(i, j)` for base indices `0..M` together with border rows
//! such as `Pf(d0, i)`. Evolutions map the table at one lattice point to the
//! table at a neighbouring point; most of them consume one base index.

use crate::error::{Error, Result};
use crate::random::{random_int, SeededRng};
use crate::scalar_core::labels::{ExtendedSkewArray, Label};
use crate::scalar_core::scalar::Scalar;

pub type ElementTable<S> = ExtendedSkewArray<S>;

/// A discrete evolution of Pfaffian entries.
pub trait Evolution<S: Scalar> {
    fn name(&self) -> &'static str;
    fn apply(&self, table: &ElementTable<S>) -> Result<ElementTable<S>>;
}

/// Border rows present in `t`, in label order.
fn border_rows<S: Scalar>(t: &ElementTable<S>) -> Vec<Label> {
    t.labels().iter().copied().filter(|l| !matches!(l, Label::Idx(_))).collect()
}

/// Empty table over `0..m` plus the given border rows.
pub fn table_with_rows<S: Scalar>(m: usize, rows: &[Label]) -> Result<ElementTable<S>> {
    let mut labels: Vec<Label> = rows.to_vec();
    labels.extend((0..m).map(Label::Idx));
    ElementTable::new(labels)
}

fn need_base<S: Scalar>(t: &ElementTable<S>, required: usize) -> Result<usize> {
    let m = t.base_count();
    if m < required {
        return Err(Error::SeedSize { required, available: m });
    }
    Ok(m)
}

/// Copies the border-by-border entries of `from` into `to`.
fn copy_border_pairs<S: Scalar>(from: &ElementTable<S>, to: &mut ElementTable<S>, rows: &[Label]) -> Result<()> {
    for (p, &x) in rows.iter().enumerate() {
        for &y in &rows[p + 1..] {
            if to.contains(x) && to.contains(y) {
                to.set(x, y, from.get(x, y))?;
            }
        }
    }
    Ok(())
}

/// `Pf(i,j) ← Pf(i+1,j+1)` and `Pf(x,i) ← Pf(x,i+1)` for every border row `x`.
#[derive(Clone, Copy, Debug, Default)]
pub struct IndexShift;

impl<S: Scalar> Evolution<S> for IndexShift {
    fn name(&self) -> &'static str {
        "index-shift"
    }

    fn apply(&self, t: &ElementTable<S>) -> Result<ElementTable<S>> {
        let m = need_base(t, 1)? - 1;
        let rows = border_rows(t);
        let mut out = table_with_rows(m, &rows)?;
        for i in 0..m {
            for j in i + 1..m {
                out.set(Label::Idx(i), Label::Idx(j), t.get(Label::Idx(i + 1), Label::Idx(j + 1)))?;
            }
            for &x in &rows {
                out.set(x, Label::Idx(i), t.get(x, Label::Idx(i + 1)))?;
            }
        }
        copy_border_pairs(t, &mut out, &rows)?;
        Ok(out)
    }
}

/// Wronski-type step: `Pf(i,j) ← λ²Pf(i,j) + λPf(i+1,j) + λPf(i,j+1) + Pf(i+1,j+1)`
/// and `Pf(x,i) ← λPf(x,i) + Pf(x,i+1)` for every border row `x`.
#[derive(Clone, Debug)]
pub struct WronskiStep<S> {
    pub lambda: S,
}

impl<S: Scalar> Evolution<S> for WronskiStep<S> {
    fn name(&self) -> &'static str {
        "wronski-step"
    }

    fn apply(&self, t: &ElementTable<S>) -> Result<ElementTable<S>> {
        let m = need_base(t, 1)? - 1;
        let rows = border_rows(t);
        let lam = &self.lambda;
        let mut out = table_with_rows(m, &rows)?;
        for i in 0..m {
            for j in i + 1..m {
                out.set(Label::Idx(i), Label::Idx(j), four_term(t, lam, i, j))?;
            }
            for &x in &rows {
                let v = lam.clone() * t.get(x, Label::Idx(i)) + t.get(x, Label::Idx(i + 1));
                out.set(x, Label::Idx(i), v)?;
            }
        }
        copy_border_pairs(t, &mut out, &rows)?;
        Ok(out)
    }
}

fn four_term<S: Scalar>(t: &ElementTable<S>, lam: &S, i: usize, j: usize) -> S {
    let p = |x, y| t.get(Label::Idx(x), Label::Idx(y));
    lam.clone() * lam.clone() * p(i, j) + lam.clone() * (p(i + 1, j) + p(i, j + 1)) + p(i + 1, j + 1)
}

/// `l`-step of the D-type solution: pairs by the four-term rule, then fresh
/// border rows `Pf(d0,i) = (−λ)^i`, `Pf(d1,i) = Pf(0,i+1) + λPf(0,i)` (read
/// from the table before the step) and `Pf(d0,d1) = 0`.
#[derive(Clone, Debug)]
pub struct DtodaLStep<S> {
    pub lambda: S,
}

impl<S: Scalar> Evolution<S> for DtodaLStep<S> {
    fn name(&self) -> &'static str {
        "dtoda-l-step"
    }

    fn apply(&self, t: &ElementTable<S>) -> Result<ElementTable<S>> {
        let m = need_base(t, 1)? - 1;
        let lam = &self.lambda;
        let mut out = table_with_rows(m, &[Label::D(0), Label::D(1)])?;
        let minus_lam = -lam.clone();
        for i in 0..m {
            for j in i + 1..m {
                out.set(Label::Idx(i), Label::Idx(j), four_term(t, lam, i, j))?;
            }
            out.set(Label::D(0), Label::Idx(i), minus_lam.pow(i as u32))?;
            let d1 = t.get(Label::Idx(0), Label::Idx(i + 1)) + lam.clone() * t.get(Label::Idx(0), Label::Idx(i));
            out.set(Label::D(1), Label::Idx(i), d1)?;
        }
        Ok(out)
    }
}

/// `k`-step of the dBKP solution: `Pf(i,j) ← Pf(i,j) + Pf(d0,d1,i,j)` and
/// `Pf(d0,i) ← Pf(d1,i)`. The base is kept; the new `d1` row is not
/// determined by the rule and is dropped, so only one such step is possible.
#[derive(Clone, Copy, Debug, Default)]
pub struct BtodaKStep;

impl<S: Scalar> Evolution<S> for BtodaKStep {
    fn name(&self) -> &'static str {
        "btoda-k-step"
    }

    fn apply(&self, t: &ElementTable<S>) -> Result<ElementTable<S>> {
        if !t.contains(Label::D(0)) || !t.contains(Label::D(1)) {
            return Err(Error::Label("k-step needs both d0 and d1 rows".into()));
        }
        let m = t.base_count();
        let mut out = table_with_rows(m, &[Label::D(0)])?;
        for i in 0..m {
            for j in i + 1..m {
                let (x, y) = (Label::Idx(i), Label::Idx(j));
                out.set(x, y, t.get(x, y) + t.pfaffian(&[Label::D(0), Label::D(1), x, y])?)?;
            }
            out.set(Label::D(0), Label::Idx(i), t.get(Label::D(1), Label::Idx(i)))?;
        }
        Ok(out)
    }
}

/// Applies `evo` `times` times.
pub fn iterate<S: Scalar>(evo: &dyn Evolution<S>, table: &ElementTable<S>, times: usize) -> Result<ElementTable<S>> {
    let mut t = table.clone();
    for _ in 0..times {
        t = evo.apply(&t)?;
    }
    Ok(t)
}

/// Random integer entries in `[-range, range]` for every pair over `0..m`
/// and every border row; border-by-border pairs stay 0.
pub fn random_table<S: Scalar>(
    rng: &mut SeededRng,
    m: usize,
    rows: &[Label],
    range: i64,
) -> Result<ElementTable<S>> {
    let mut t = table_with_rows(m, rows)?;
    for i in 0..m {
        for j in i + 1..m {
            t.set(Label::Idx(i), Label::Idx(j), random_int(rng, range))?;
        }
        for &x in rows {
            t.set(x, Label::Idx(i), random_int(rng, range))?;
        }
    }
    Ok(t)
}
