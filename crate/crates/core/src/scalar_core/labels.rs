//! Skew-symmetric arrays indexed by symbolic labels.
//!
//! Bilinear identities and lattice solutions mix plain indices with
//! auxiliary rows such as `d0`, `c` or starred indices `3*`. An
//! [`ExtendedSkewArray`] stores one entry `Pf(x, y)` per unordered label pair
//! and evaluates Pfaffians over any ordered list of its labels.

use std::collections::HashMap;
use std::fmt;

use super::pfaffian::pfaffian_expansion_with;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// Plain index `i`.
    Idx(usize),
    /// Starred index `i*`.
    Star(usize),
    /// Auxiliary `d_i`.
    D(usize),
    /// Starred auxiliary `d_i*`.
    DStar(usize),
    /// Auxiliary `c_i`.
    C(usize),
    /// Starred auxiliary `c_i*`.
    CStar(usize),
    /// The `a` row of a Gram-type discretisation.
    A,
    /// The `b` row of a Gram-type discretisation.
    B,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Idx(i) => write!(f, "{i}"),
            Label::Star(i) => write!(f, "{i}*"),
            Label::D(i) => write!(f, "d{i}"),
            Label::DStar(i) => write!(f, "d{i}*"),
            Label::C(i) => write!(f, "c{i}"),
            Label::CStar(i) => write!(f, "c{i}*"),
            Label::A => write!(f, "a"),
            Label::B => write!(f, "b"),
        }
    }
}

/// `Idx(from), …, Idx(to - 1)`.
pub fn idx_range(from: usize, to: usize) -> Vec<Label> {
    (from..to).map(Label::Idx).collect()
}

/// `Star(from), …, Star(to - 1)`, in increasing order.
pub fn star_range(from: usize, to: usize) -> Vec<Label> {
    (from..to).map(Label::Star).collect()
}

/// Fails with a label error if `labels` contains a repeat.
pub fn ensure_distinct(labels: &[Label]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(*l) {
            return Err(Error::Label(format!("label {l} appears more than once")));
        }
    }
    Ok(())
}

/// Square skew array over a finite label list; absent entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedSkewArray<S> {
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
    entries: Vec<S>,
}

impl<S: Scalar> ExtendedSkewArray<S> {
    pub fn new(labels: Vec<Label>) -> Result<Self> {
        ensure_distinct(&labels)?;
        let index = labels.iter().enumerate().map(|(p, l)| (*l, p)).collect();
        let n = labels.len();
        Ok(ExtendedSkewArray { labels, index, entries: vec![S::zero(); n * n] })
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, l: Label) -> bool {
        self.index.contains_key(&l)
    }

    /// Number of plain indices `0, 1, …` present without a gap.
    pub fn base_count(&self) -> usize {
        (0..).take_while(|&i| self.contains(Label::Idx(i))).count()
    }

    fn pos(&self, l: Label) -> Result<usize> {
        self.index.get(&l).copied().ok_or_else(|| Error::Label(format!("unknown label {l}")))
    }

    /// Sets `Pf(x, y) = v` and `Pf(y, x) = -v`.
    pub fn set(&mut self, x: Label, y: Label, v: S) -> Result<()> {
        if x == y {
            return Err(Error::Label(format!("Pf({x},{x}) is fixed at 0")));
        }
        let (p, q) = (self.pos(x)?, self.pos(y)?);
        let n = self.len();
        self.entries[q * n + p] = -v.clone();
        self.entries[p * n + q] = v;
        Ok(())
    }

    /// `Pf(x, y)`.
    pub fn pf2(&self, x: Label, y: Label) -> Result<S> {
        let (p, q) = (self.pos(x)?, self.pos(y)?);
        Ok(self.entries[p * self.len() + q].clone())
    }

    /// `Pf(x, y)`, panicking on unknown labels. For use inside evolutions
    /// whose label sets are fixed by construction.
    pub fn get(&self, x: Label, y: Label) -> S {
        self.pf2(x, y).unwrap_or_else(|e| panic!("{e}"))
    }

    /// `Pf(l_1, …, l_m)` by expansion. A repeated label gives zero.
    pub fn pfaffian(&self, labels: &[Label]) -> Result<S> {
        if labels.len() % 2 != 0 {
            return Err(Error::OddOrder(labels.len()));
        }
        let pos = labels.iter().map(|l| self.pos(*l)).collect::<Result<Vec<_>>>()?;
        if ensure_distinct(labels).is_err() {
            return Ok(S::zero());
        }
        let n = self.len();
        pfaffian_expansion_with(labels.len(), |i, j| self.entries[pos[i] * n + pos[j]].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_core::scalar::Rational;

    #[test]
    fn skew_lookup() {
        let mut e = ExtendedSkewArray::<Rational>::new(vec![Label::D(0), Label::Idx(0), Label::Star(0)]).unwrap();
        e.set(Label::D(0), Label::Star(0), Rational::from(3)).unwrap();
        assert_eq!(e.pf2(Label::Star(0), Label::D(0)).unwrap(), Rational::from(-3));
        assert!(e.pf2(Label::Idx(0), Label::Idx(0)).unwrap().is_zero());
        assert!(e.set(Label::Idx(0), Label::Idx(0), Rational::from(1)).is_err());
        assert!(e.pf2(Label::A, Label::Idx(0)).is_err());
    }

    #[test]
    fn duplicate_labels_rejected_at_construction() {
        assert!(ExtendedSkewArray::<Rational>::new(vec![Label::A, Label::A]).is_err());
    }

    #[test]
    fn pfaffian_respects_label_order() {
        let mut e = ExtendedSkewArray::<Rational>::new(idx_range(0, 2)).unwrap();
        e.set(Label::Idx(0), Label::Idx(1), Rational::from(5)).unwrap();
        assert_eq!(e.pfaffian(&[Label::Idx(0), Label::Idx(1)]).unwrap(), Rational::from(5));
        assert_eq!(e.pfaffian(&[Label::Idx(1), Label::Idx(0)]).unwrap(), Rational::from(-5));
        assert!(e.pfaffian(&[Label::Idx(0), Label::Idx(0)]).unwrap().is_zero());
        assert!(e.pfaffian(&[]).unwrap() == Rational::from(1));
    }

    #[test]
    fn display_forms() {
        let shown: Vec<String> = [Label::Idx(2), Label::Star(3), Label::D(0), Label::DStar(0), Label::C(0), Label::CStar(0)]
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(shown, ["2", "3*", "d0", "d0*", "c0", "c0*"]);
    }

    #[test]
    fn base_count_stops_at_gap() {
        let e = ExtendedSkewArray::<Rational>::new(vec![Label::Idx(0), Label::Idx(1), Label::Idx(3)]).unwrap();
        assert_eq!(e.base_count(), 2);
    }
}
