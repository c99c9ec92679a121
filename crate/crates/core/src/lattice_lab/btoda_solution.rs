//! Pfaffian solution of the discrete BKP (Miwa) lattice, one `k`-step deep.
//!
//! Tables evolve in `l` by the unit Wronski-type step (pairs by the four-term
//! rule, both border rows by the two-term rule). The `k`-step
//! `Pf(i,j) ← Pf(i,j) + Pf(d0,d1,i,j)`, `Pf(d0,i) ← Pf(d1,i)` leaves the new
//! `d1` row undetermined, so only cells `(0, l)` are checked:
//!
//! ```text
//! τ_n^{1,1} τ_n^{0,0} − τ_n^{0,1} τ_n^{1,0} = τ_{n-1}^{1,1} τ_{n+1}^{0,0} − τ_{n+1}^{1,0} τ_{n-1}^{0,1}
//! ```
//!
//! with `τ_{2n} = Pf(0, …, 2n-1)`, `τ_{2n+1} = Pf(d0, 0, …, 2n)` and `τ_{-1} = 0`.

use crate::error::{Cell, Error, Result};
use crate::lattice_lab::elements::{random_table, BtodaKStep, ElementTable, Evolution, WronskiStep};
use crate::random::SeededRng;
use crate::report::{ResidualTracker, VerificationReport};
use crate::scalar_core::labels::{idx_range, Label};
use crate::scalar_core::scalar::Scalar;

pub fn btoda_seed_requirement(l_extent: usize, n_max: usize) -> usize {
    n_max + l_extent
}

fn tau<S: Scalar>(t: &ElementTable<S>, n: i64) -> Result<S> {
    if n < 0 {
        return Ok(S::zero());
    }
    let n = n as usize;
    if t.base_count() < n {
        return Err(Error::SeedSize { required: n, available: t.base_count() });
    }
    if n % 2 == 0 {
        t.pfaffian(&idx_range(0, n))
    } else {
        let labels: Vec<Label> = std::iter::once(Label::D(0)).chain(idx_range(0, n)).collect();
        t.pfaffian(&labels)
    }
}

/// Checks the lattice at `(n, 0, l)` for `n <= n_max`, `l < L`.
pub fn verify_btoda_solution<S: Scalar>(
    seed: &ElementTable<S>,
    l_extent: usize,
    n_max: usize,
) -> Result<VerificationReport> {
    for row in [Label::D(0), Label::D(1)] {
        if !seed.contains(row) {
            return Err(Error::Label(format!("seed lacks the {row} row")));
        }
    }
    if !seed.get(Label::D(0), Label::D(1)).is_zero() {
        return Err(Error::Precondition("the dBKP solution needs Pf(d0, d1) = 0".into()));
    }
    let required = btoda_seed_requirement(l_extent, n_max);
    if seed.base_count() < required {
        return Err(Error::SeedSize { required, available: seed.base_count() });
    }
    let step = WronskiStep { lambda: S::one() };
    let mut column = vec![seed.clone()];
    for l in 0..l_extent {
        column.push(step.apply(&column[l])?);
    }
    let mut t = ResidualTracker::new();
    for l in 0..l_extent {
        let t00 = &column[l];
        let t01 = &column[l + 1];
        let t10 = BtodaKStep.apply(t00)?;
        let t11 = BtodaKStep.apply(t01)?;
        for n in 0..=n_max as i64 {
            let lhs = tau(&t11, n)? * tau(t00, n)? - tau(t01, n)? * tau(&t10, n)?;
            let rhs = tau(&t11, n - 1)? * tau(t00, n + 1)? - tau(&t10, n + 1)? * tau(t01, n - 1)?;
            t.record(Cell::new("tau", n, 0, l as i64), &(lhs - rhs));
        }
    }
    let case = t.into_case().param("L", l_extent).param("n_max", n_max);
    Ok(VerificationReport::single("btoda-solution", case))
}

/// Random seed over `d0`, `d1`, `0..M` with `Pf(d0, d1) = 0`.
pub fn random_btoda_seed<S: Scalar>(rng: &mut SeededRng, base: usize) -> Result<ElementTable<S>> {
    random_table(rng, base, &[Label::D(0), Label::D(1)], 9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::seeded_rng;
    use crate::scalar_core::scalar::Rational;

    #[test]
    fn holds_for_single_k_step() {
        let mut rng = seeded_rng(1);
        for (l_ext, n_max) in [(1, 1), (1, 2), (3, 3), (2, 4)] {
            let seed = random_btoda_seed::<Rational>(&mut rng, btoda_seed_requirement(l_ext, n_max)).unwrap();
            let rep = verify_btoda_solution(&seed, l_ext, n_max).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn vanishing_border_rows_collapse_consistently() {
        let mut seed = random_btoda_seed::<Rational>(&mut seeded_rng(2), 5).unwrap();
        for i in 0..5 {
            seed.set(Label::D(0), Label::Idx(i), Rational::from(0)).unwrap();
            seed.set(Label::D(1), Label::Idx(i), Rational::from(0)).unwrap();
        }
        assert!(verify_btoda_solution(&seed, 2, 3).unwrap().passed());
    }

    #[test]
    fn nonzero_d0_d1_is_rejected() {
        let mut seed = random_btoda_seed::<Rational>(&mut seeded_rng(3), 4).unwrap();
        seed.set(Label::D(0), Label::D(1), Rational::from(2)).unwrap();
        assert!(matches!(verify_btoda_solution(&seed, 1, 2), Err(Error::Precondition(_))));
    }
}
