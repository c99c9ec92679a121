//! Pfaffian solution of the generalised Lotka–Volterra lattice.
//!
//! The table at `(k, l)` is the seed after `k` index shifts and `l`
//! Wronski-type steps with parameter `λ`. With
//! `τ_{2n} = Pf(0, …, 2n-1)` and `τ_{2n+1} = Pf(d, 0, …, 2n)` the lattice
//!
//! ```text
//! τ_{m+2}^{k,l} τ_{m-1}^{k+1,l+1} = τ_m^{k+1,l+1} τ_{m+1}^{k,l}
//!                                 + λ⁻¹ (τ_m^{k,l+1} τ_{m+1}^{k+1,l} − τ_m^{k+1,l} τ_{m+1}^{k,l+1})
//! ```
//!
//! holds for every `m >= 0` (with `τ_{-1} = 0`).

use std::collections::HashMap;

use crate::error::{Cell, Error, Result};
use crate::lattice_lab::elements::{random_table, ElementTable, Evolution, IndexShift, WronskiStep};
use crate::random::SeededRng;
use crate::report::{ResidualTracker, VerificationReport};
use crate::scalar_core::labels::{idx_range, Label};
use crate::scalar_core::scalar::Scalar;

/// Base indices a seed needs for `verify_glv_solution(_, (K, L), n_max, _)`.
pub fn glv_seed_requirement(extent: (usize, usize), n_max: usize) -> usize {
    n_max + extent.0 + extent.1
}

/// Lazily evolved tables and the `τ_m^{k,l}` they define.
pub struct GlvTauGrid<S: Scalar> {
    seed: ElementTable<S>,
    lambda: S,
    tables: HashMap<(usize, usize), ElementTable<S>>,
}

impl<S: Scalar> GlvTauGrid<S> {
    pub fn new(seed: ElementTable<S>, lambda: S) -> Result<Self> {
        if !seed.contains(Label::D(0)) {
            return Err(Error::Label("seed lacks the d0 row".into()));
        }
        if lambda.is_zero() {
            return Err(Error::Parameter("λ must be nonzero".into()));
        }
        Ok(GlvTauGrid { seed, lambda, tables: HashMap::new() })
    }

    pub fn table(&mut self, k: usize, l: usize) -> Result<&ElementTable<S>> {
        if !self.tables.contains_key(&(k, l)) {
            let t = if l > 0 {
                let prev = self.table(k, l - 1)?.clone();
                WronskiStep { lambda: self.lambda.clone() }.apply(&prev)?
            } else if k > 0 {
                IndexShift.apply(&self.table(k - 1, 0)?.clone())?
            } else {
                self.seed.clone()
            };
            self.tables.insert((k, l), t);
        }
        Ok(&self.tables[&(k, l)])
    }

    /// `τ_m^{k,l}`; `τ_{-1}` is taken as zero.
    pub fn tau(&mut self, m: i64, k: usize, l: usize) -> Result<S> {
        if m < 0 {
            return Ok(S::zero());
        }
        let m = m as usize;
        let t = self.table(k, l)?;
        let labels = if m % 2 == 0 {
            idx_range(0, m)
        } else {
            std::iter::once(Label::D(0)).chain(idx_range(0, m)).collect()
        };
        if t.base_count() < m {
            return Err(Error::SeedSize { required: m, available: t.base_count() });
        }
        t.pfaffian(&labels)
    }
}

/// Checks the lattice at every `(m, k, l)` with `m <= n_max`, `k < K`, `l < L`.
pub fn verify_glv_solution<S: Scalar>(
    seed: &ElementTable<S>,
    extent: (usize, usize),
    n_max: usize,
    lambda: &S,
) -> Result<VerificationReport> {
    let required = glv_seed_requirement(extent, n_max);
    if seed.base_count() < required {
        return Err(Error::SeedSize { required, available: seed.base_count() });
    }
    let mu = lambda.recip()?;
    let mut g = GlvTauGrid::new(seed.clone(), lambda.clone())?;
    let mut t = ResidualTracker::new();
    for k in 0..extent.0 {
        for l in 0..extent.1 {
            for m in 0..=n_max as i64 {
                let lhs = g.tau(m + 2, k, l)? * g.tau(m - 1, k + 1, l + 1)?;
                let rhs = g.tau(m, k + 1, l + 1)? * g.tau(m + 1, k, l)?
                    + mu.clone()
                        * (g.tau(m, k, l + 1)? * g.tau(m + 1, k + 1, l)?
                            - g.tau(m, k + 1, l)? * g.tau(m + 1, k, l + 1)?);
                t.record(Cell::new("tau", m + 2, k as i64, l as i64), &(lhs - rhs));
            }
        }
    }
    let case = t
        .into_case()
        .param("K", extent.0)
        .param("L", extent.1)
        .param("n_max", n_max)
        .param("lambda", lambda);
    Ok(VerificationReport::single("glv-solution", case))
}

/// Random seed over `d0`, `0..M`.
pub fn random_glv_seed<S: Scalar>(rng: &mut SeededRng, base: usize) -> Result<ElementTable<S>> {
    random_table(rng, base, &[Label::D(0)], 9)
}
