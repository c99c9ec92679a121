//! Pfaffian solution of the Toda lattice of DKP type, with relaxation `λ`.
//!
//! The table at `(k, l)` is the seed (plain pairs only) after `k` index shifts
//! and `l` D-type steps; each step installs `Pf(d0,i) = (−λ)^i` and
//! `Pf(d1,i) = Pf(0,i+1) + λ Pf(0,i)`, so `σ` exists only for `l >= 1`. With
//! `τ_n = Pf(0, …, 2n-1)`, `σ_n = Pf(d0, d1, 0, …, 2n-1)` and `μ = 1/λ`:
//!
//! ```text
//! σ_n^{k,l+1} τ_{n-1}^{k+1,l+1} = −λ τ_{n-1}^{k+1,l+2} τ_n^{k,l} + σ_{n-1}^{k+1,l+1} τ_n^{k,l+1}
//!                                 − μ τ_{n-1}^{k+1,l+1} τ_n^{k,l+1} + μ τ_{n-1}^{k,l+2} τ_n^{k+1,l}
//! τ_{n+1}^{k,l} τ_{n-1}^{k+1,l+2} = −μ σ_n^{k,l+1} τ_n^{k+1,l+1} + μ σ_n^{k+1,l+1} τ_n^{k,l+1}
//!                                 − μ² τ_n^{k,l+1} τ_n^{k+1,l+1} + μ² τ_n^{k+1,l} τ_n^{k,l+2}
//! ```
//!
//! At `λ = −1` the border row is the constant row and these are the plain
//! lattice equations.

use std::collections::HashMap;

use crate::error::{Cell, Error, Result};
use crate::lattice_lab::elements::{random_table, DtodaLStep, ElementTable, Evolution, IndexShift};
use crate::random::SeededRng;
use crate::report::{ResidualTracker, VerificationReport};
use crate::scalar_core::labels::{idx_range, Label};
use crate::scalar_core::scalar::Scalar;

pub fn dtoda_seed_requirement(extent: (usize, usize), n_max: usize) -> usize {
    2 * n_max + extent.0 + extent.1
}

pub struct DtodaTauGrid<S: Scalar> {
    seed: ElementTable<S>,
    lambda: S,
    tables: HashMap<(usize, usize), ElementTable<S>>,
}

impl<S: Scalar> DtodaTauGrid<S> {
    pub fn new(seed: ElementTable<S>, lambda: S) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::Parameter("λ must be nonzero".into()));
        }
        Ok(DtodaTauGrid { seed, lambda, tables: HashMap::new() })
    }

    pub fn table(&mut self, k: usize, l: usize) -> Result<&ElementTable<S>> {
        if !self.tables.contains_key(&(k, l)) {
            let t = if l > 0 {
                let prev = self.table(k, l - 1)?.clone();
                DtodaLStep { lambda: self.lambda.clone() }.apply(&prev)?
            } else if k > 0 {
                IndexShift.apply(&self.table(k - 1, 0)?.clone())?
            } else {
                self.seed.clone()
            };
            self.tables.insert((k, l), t);
        }
        Ok(&self.tables[&(k, l)])
    }

    fn labels(&mut self, n: usize, k: usize, l: usize, border: &[Label]) -> Result<(Vec<Label>, &ElementTable<S>)> {
        let t = self.table(k, l)?;
        if t.base_count() < 2 * n {
            return Err(Error::SeedSize { required: 2 * n, available: t.base_count() });
        }
        Ok((border.iter().copied().chain(idx_range(0, 2 * n)).collect(), t))
    }

    pub fn tau(&mut self, n: usize, k: usize, l: usize) -> Result<S> {
        let (labels, t) = self.labels(n, k, l, &[])?;
        t.pfaffian(&labels)
    }

    /// `σ_n^{k,l}` for `l >= 1`.
    pub fn sigma(&mut self, n: usize, k: usize, l: usize) -> Result<S> {
        if l == 0 {
            return Err(Error::Range("σ is defined only for l >= 1".into()));
        }
        let (labels, t) = self.labels(n, k, l, &[Label::D(0), Label::D(1)])?;
        t.pfaffian(&labels)
    }
}

/// Checks both relations at every `(n, k, l)` with `1 <= n <= n_max`, `k < K`, `l < L`.
pub fn verify_dtoda_solution<S: Scalar>(
    seed: &ElementTable<S>,
    extent: (usize, usize),
    n_max: usize,
    lambda: &S,
) -> Result<VerificationReport> {
    let required = dtoda_seed_requirement(extent, n_max);
    if seed.base_count() < required {
        return Err(Error::SeedSize { required, available: seed.base_count() });
    }
    let mu = lambda.recip()?;
    let mu2 = mu.clone() * mu.clone();
    let mut g = DtodaTauGrid::new(seed.clone(), lambda.clone())?;
    let mut t = ResidualTracker::new();
    for k in 0..extent.0 {
        for l in 0..extent.1 {
            // σ_0 = Pf(d0, d1) = 0 by construction.
            t.record(Cell::new("sigma", 0, k as i64, l as i64 + 1), &g.sigma(0, k, l + 1)?);
            for n in 1..=n_max {
                let lhs = g.sigma(n, k, l + 1)? * g.tau(n - 1, k + 1, l + 1)?;
                let rhs = -(lambda.clone() * g.tau(n - 1, k + 1, l + 2)? * g.tau(n, k, l)?)
                    + g.sigma(n - 1, k + 1, l + 1)? * g.tau(n, k, l + 1)?
                    - mu.clone() * g.tau(n - 1, k + 1, l + 1)? * g.tau(n, k, l + 1)?
                    + mu.clone() * g.tau(n - 1, k, l + 2)? * g.tau(n, k + 1, l)?;
                t.record(Cell::new("sigma", n as i64, k as i64, l as i64 + 1), &(lhs - rhs));

                let lhs = g.tau(n + 1, k, l)? * g.tau(n - 1, k + 1, l + 2)?;
                let rhs = -(mu.clone() * g.sigma(n, k, l + 1)? * g.tau(n, k + 1, l + 1)?)
                    + mu.clone() * g.sigma(n, k + 1, l + 1)? * g.tau(n, k, l + 1)?
                    - mu2.clone() * g.tau(n, k, l + 1)? * g.tau(n, k + 1, l + 1)?
                    + mu2.clone() * g.tau(n, k + 1, l)? * g.tau(n, k, l + 2)?;
                t.record(Cell::new("tau", n as i64 + 1, k as i64, l as i64), &(lhs - rhs));
            }
        }
    }
    let case = t
        .into_case()
        .param("K", extent.0)
        .param("L", extent.1)
        .param("n_max", n_max)
        .param("lambda", lambda);
    Ok(VerificationReport::single("dtoda-solution", case))
}

/// Random seed of plain pairs over `0..M`; border rows are generated by the steps.
pub fn random_dtoda_seed<S: Scalar>(rng: &mut SeededRng, base: usize) -> Result<ElementTable<S>> {
    random_table(rng, base, &[], 9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::seeded_rng;
    use crate::scalar_core::scalar::Rational;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d).unwrap()
    }

    #[test]
    fn holds_for_several_lambdas() {
        let mut rng = seeded_rng(1);
        for (ext, n_max) in [((2, 2), 1), ((1, 1), 2), ((2, 1), 2)] {
            for lam in [q(-1, 1), q(2, 1), q(1, 3)] {
                let seed = random_dtoda_seed::<Rational>(&mut rng, dtoda_seed_requirement(ext, n_max)).unwrap();
                let rep = verify_dtoda_solution(&seed, ext, n_max, &lam).unwrap();
                assert!(rep.passed(), "{rep}");
            }
        }
    }

    #[test]
    fn constant_border_row_with_relaxation_fails() {
        // Keeping Pf(d0,i) = 1 while relaxing breaks the σ relation.
        let seed = random_dtoda_seed::<Rational>(&mut seeded_rng(2), 6).unwrap();
        let lam = q(2, 1);
        let mu = lam.recip().unwrap();
        let mut g = DtodaTauGrid::new(seed, lam.clone()).unwrap();
        for key in [(0usize, 1usize), (0, 2), (1, 1), (1, 2)] {
            let mut t = g.table(key.0, key.1).unwrap().clone();
            for i in 0..t.base_count() {
                t.set(Label::D(0), Label::Idx(i), q(1, 1)).unwrap();
            }
            g.tables.insert(key, t);
        }
        let (n, k, l) = (1usize, 0usize, 0usize);
        let lhs = g.sigma(n, k, l + 1).unwrap() * g.tau(n - 1, k + 1, l + 1).unwrap();
        let rhs = -(lam * g.tau(n - 1, k + 1, l + 2).unwrap() * g.tau(n, k, l).unwrap())
            + g.sigma(n - 1, k + 1, l + 1).unwrap() * g.tau(n, k, l + 1).unwrap()
            - mu.clone() * g.tau(n - 1, k + 1, l + 1).unwrap() * g.tau(n, k, l + 1).unwrap()
            + mu * g.tau(n - 1, k, l + 2).unwrap() * g.tau(n, k + 1, l).unwrap();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn sigma_needs_a_border() {
        let seed = random_dtoda_seed::<Rational>(&mut seeded_rng(3), 4).unwrap();
        let mut g = DtodaTauGrid::new(seed, q(-1, 1)).unwrap();
        assert!(matches!(g.sigma(1, 0, 0), Err(Error::Range(_))));
        assert!(g.sigma(0, 0, 1).unwrap().is_zero());
    }
}
