//! Somos-4, -6 and -7 sequences as one-dimensional reductions of the lattices.
//!
//! Each reduction substitutes `τ_n^{k,l} = h_{n + a·k + b·l + c}` into a
//! bilinear lattice equation; the result is the Somos recurrence at a base
//! index determined by the cell. This is pure index bookkeeping, so it holds
//! for arbitrary arrays `h`, which is what the tests check.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar_core::scalar::Scalar;

/// Signed pairs `(sign, [(dn, dk, dl); 2])`; the equation is `Σ sign · τ·τ = 0`.
pub type Stencil = &'static [(i64, [(i64, i64, i64); 2])];

/// `τ_{n+1} τ_{n-1}^{k+1,l+1} − τ_n τ_n^{k+1,l+1} + τ_n^{k+1,l} τ_n^{k,l+1}` (discrete Toda).
pub const TODA: Stencil = &[
    (1, [(1, 0, 0), (-1, 1, 1)]),
    (-1, [(0, 0, 0), (0, 1, 1)]),
    (1, [(0, 1, 0), (0, 0, 1)]),
];

/// The discrete BKP (Miwa) lattice.
pub const BTODA: Stencil = &[
    (1, [(0, 1, 1), (0, 0, 0)]),
    (-1, [(0, 0, 1), (0, 1, 0)]),
    (-1, [(-1, 1, 1), (1, 0, 0)]),
    (1, [(1, 1, 0), (-1, 0, 1)]),
];

/// The generalised Lotka–Volterra lattice at unit relaxation.
pub const GLV: Stencil = &[
    (1, [(2, 0, 0), (-1, 1, 1)]),
    (-1, [(0, 0, 1), (1, 1, 0)]),
    (-1, [(0, 1, 1), (1, 0, 0)]),
    (1, [(0, 1, 0), (1, 0, 1)]),
];

/// Which Somos recurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SomosVariant {
    Four,
    Six,
    Seven,
}

impl SomosVariant {
    pub fn from_order(k: usize) -> Result<Self> {
        match k {
            4 => Ok(SomosVariant::Four),
            6 => Ok(SomosVariant::Six),
            7 => Ok(SomosVariant::Seven),
            _ => Err(Error::Parameter(format!("no Somos-{k} variant; use 4, 6 or 7"))),
        }
    }

    pub fn order(self) -> usize {
        match self {
            SomosVariant::Four => 4,
            SomosVariant::Six => 6,
            SomosVariant::Seven => 7,
        }
    }

    /// Signed products `(sign, i, j)` with `Σ sign · h_{ℓ+i} h_{ℓ+j} = 0`,
    /// leading term `h_ℓ h_{ℓ+k}` first:
    ///
    /// * Somos-4: `h_0 h_4 = h_1 h_3 + h_2²`
    /// * Somos-6: `h_0 h_6 = h_1 h_5 − h_2 h_4 + h_3²`
    /// * Somos-7: `h_0 h_7 = h_1 h_6 + h_2 h_5 − h_3 h_4`
    pub fn terms(self) -> &'static [(i64, usize, usize)] {
        match self {
            SomosVariant::Four => &[(1, 0, 4), (-1, 1, 3), (-1, 2, 2)],
            SomosVariant::Six => &[(1, 0, 6), (-1, 1, 5), (1, 2, 4), (-1, 3, 3)],
            SomosVariant::Seven => &[(1, 0, 7), (-1, 1, 6), (-1, 2, 5), (1, 3, 4)],
        }
    }
}

impl fmt::Display for SomosVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "somos-{}", self.order())
    }
}

/// A generated sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct SomosSequence<S> {
    pub variant: SomosVariant,
    pub terms: Vec<S>,
}

/// `count` terms (including the initial ones) of the given recurrence.
pub fn somos_generate<S: Scalar>(variant: SomosVariant, init: &[S], count: usize) -> Result<SomosSequence<S>> {
    let k = variant.order();
    if init.len() != k {
        return Err(Error::Shape(format!("{variant} needs {k} initial terms, got {}", init.len())));
    }
    let mut h: Vec<S> = init.to_vec();
    while h.len() < count {
        let l = h.len() - k;
        let mut num = S::zero();
        for &(sign, i, j) in &variant.terms()[1..] {
            let p = h[l + i].clone() * h[l + j].clone();
            num = if sign > 0 { num - p } else { num + p };
        }
        let v = num.checked_div(&h[l]).ok_or(Error::SequenceDivisor(l))?;
        h.push(v);
    }
    Ok(SomosSequence { variant, terms: h })
}

fn at<S: Scalar>(h: &[S], idx: i64) -> Result<S> {
    usize::try_from(idx)
        .ok()
        .and_then(|i| h.get(i))
        .cloned()
        .ok_or_else(|| Error::Range(format!("index {idx} outside 0..{}", h.len())))
}

/// `h_ℓ h_{ℓ+k} − …` at base `ℓ`.
pub fn somos_residual<S: Scalar>(variant: SomosVariant, h: &[S], base: i64) -> Result<S> {
    let mut acc = S::zero();
    for &(sign, i, j) in variant.terms() {
        let p = at(h, base + i as i64)? * at(h, base + j as i64)?;
        acc = if sign > 0 { acc + p } else { acc - p };
    }
    Ok(acc)
}

/// An affine index map `τ_n^{k,l} = h_{n + a k + b l + c}` into a lattice stencil.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub name: &'static str,
    pub stencil: Stencil,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Reduction {
    /// Discrete Toda with `n + 2k + 2l` → Somos-4.
    pub const SOMOS4: Reduction = Reduction { name: "toda n+2k+2l", stencil: TODA, a: 2, b: 2, c: 0 };
    /// Discrete BKP with `n + 3k + 3l` → Somos-6.
    pub const SOMOS6: Reduction = Reduction { name: "btoda n+3k+3l", stencil: BTODA, a: 3, b: 3, c: 0 };
    /// Discrete BKP with `n + 2k + 4l`; yields `h_0h_6 = h_1h_5 + h_2h_4 − h_3²`,
    /// a sign variant of Somos-6, not the recurrence above.
    pub const SOMOS6_ALT: Reduction = Reduction { name: "btoda n+2k+4l", stencil: BTODA, a: 2, b: 4, c: 0 };
    /// GLV with `n + 3k + 5l − 1` → Somos-7.
    pub const SOMOS7: Reduction = Reduction { name: "glv n+3k+5l-1", stencil: GLV, a: 3, b: 5, c: -1 };

    pub fn for_variant(variant: SomosVariant) -> Reduction {
        match variant {
            SomosVariant::Four => Reduction::SOMOS4,
            SomosVariant::Six => Reduction::SOMOS6,
            SomosVariant::Seven => Reduction::SOMOS7,
        }
    }

    fn map(&self, n: i64, k: i64, l: i64) -> i64 {
        n + self.a * k + self.b * l + self.c
    }

    /// The induced relation as sorted index pairs relative to the smallest
    /// index, normalised so that the pair holding the largest index has sign +1.
    pub fn induced(&self) -> BTreeMap<(i64, i64), i64> {
        let mut raw: BTreeMap<(i64, i64), i64> = BTreeMap::new();
        for &(sign, [p, q]) in self.stencil {
            let (x, y) = (self.map(p.0, p.1, p.2), self.map(q.0, q.1, q.2));
            *raw.entry((x.min(y), x.max(y))).or_default() += sign;
        }
        raw.retain(|_, v| *v != 0);
        let lo = raw.keys().map(|k| k.0).min().unwrap_or(0);
        let top = raw.iter().max_by_key(|(k, _)| k.1).map(|(_, v)| v.signum()).unwrap_or(1);
        raw.into_iter().map(|((x, y), v)| ((x - lo, y - lo), v * top)).collect()
    }

    /// Sign that makes the stencil's top pair positive, and the base offset.
    fn normalisation(&self) -> (i64, i64) {
        let mut best = (i64::MIN, 1);
        let mut lo = i64::MAX;
        for &(sign, [p, q]) in self.stencil {
            let (x, y) = (self.map(p.0, p.1, p.2), self.map(q.0, q.1, q.2));
            lo = lo.min(x.min(y));
            if x.max(y) > best.0 {
                best = (x.max(y), sign);
            }
        }
        (best.1, lo)
    }

    /// Base index `ℓ` of the Somos relation produced at cell `(n, k, l)`.
    pub fn base(&self, n: i64, k: i64, l: i64) -> i64 {
        self.normalisation().1 + n + self.a * k + self.b * l
    }
}

/// Lattice residual of `reduction` at `(n, k, l)` evaluated on `h`, with the
/// sign normalised as in [`Reduction::induced`].
pub fn somos_reduction_residual<S: Scalar>(reduction: &Reduction, h: &[S], cell: (i64, i64, i64)) -> Result<S> {
    let (n, k, l) = cell;
    let (sign, _) = reduction.normalisation();
    let mut acc = S::zero();
    for &(s, [p, q]) in reduction.stencil {
        let x = reduction.map(n + p.0, k + p.1, l + p.2);
        let y = reduction.map(n + q.0, k + q.1, l + q.2);
        let prod = at(h, x)? * at(h, y)?;
        acc = if s * sign > 0 { acc + prod } else { acc - prod };
    }
    Ok(acc)
}
