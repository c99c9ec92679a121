//! Pfaffian condensation on the Toda lattice of DKP type.
//!
//! The scheme couples `τ_n` and an auxiliary `σ_n`, starting from
//!
//! ```text
//! τ_0 = 1,   τ_1^{k,l} = pf(0,1,k,l),   σ_0 = 0
//! ```
//!
//! and alternating (with `μ = 1/λ`)
//!
//! ```text
//! σ_n^{k,l+1} τ_{n-1}^{k+1,l+1} = −λ τ_{n-1}^{k+1,l+2} τ_n^{k,l} + σ_{n-1}^{k+1,l+1} τ_n^{k,l+1}
//!                                 − μ τ_{n-1}^{k+1,l+1} τ_n^{k,l+1} + μ τ_{n-1}^{k,l+2} τ_n^{k+1,l}
//! τ_{n+1}^{k,l} τ_{n-1}^{k+1,l+2} = −μ σ_n^{k,l+1} τ_n^{k+1,l+1} + μ σ_n^{k+1,l+1} τ_n^{k,l+1}
//!                                 − μ² τ_n^{k,l+1} τ_n^{k+1,l+1} + μ² τ_n^{k+1,l} τ_n^{k,l+2}
//! ```
//!
//! until `τ_N^{0,0} = Pf(A)`. At `λ = −1` both lines reduce to the plain
//! (unrelaxed) lattice. `τ_n` and `σ_n` live on `k + l <= 2(N - n)`; `σ` is
//! only ever needed for `l >= 1`.
//!
//! The coefficients are what the relaxed preparation forces: the `d_0` border
//! row of the underlying Pfaffian solution becomes `(−λ)^i` instead of the
//! constant row, and the powers of `λ` above follow from that.

use crate::error::{Cell, Error, Result};
use crate::grid::TriGrid;
use crate::quadruplet::QuadrupletTable;
use crate::random::{random_nonzero_small, seeded_rng};
use crate::report::{ResidualTracker, VerificationReport};
pub use crate::retry::RetryPolicy;
use crate::scalar_core::matrix::SkewMatrix;
use crate::scalar_core::scalar::Scalar;

/// Prepared quadruplets `pf(i,j,k,l)` on `k + l <= 2N - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DtodaPrepared<S> {
    pub half_order: usize,
    pub lambda: S,
    pub pf_table: QuadrupletTable<S>,
}

impl<S: Scalar> DtodaPrepared<S> {
    pub fn pf(&self, i: usize, j: usize, k: i64, l: i64) -> Option<S> {
        self.pf_table.pf(i, j, k, l)
    }
}

pub fn dtoda_prepare<S: Scalar>(a: &SkewMatrix<S>, lambda: &S) -> Result<DtodaPrepared<S>> {
    if lambda.is_zero() {
        return Err(Error::Parameter("relaxation factor λ must be nonzero".into()));
    }
    let two_n = a.order() as i64;
    Ok(DtodaPrepared {
        half_order: a.half_order(),
        lambda: lambda.clone(),
        pf_table: QuadrupletTable::build(a, lambda, two_n - 1),
    })
}

/// `τ_n` and `σ_n` grids of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct DtodaTables<S> {
    pub half_order: usize,
    pub lambda: S,
    /// `τ_n` on `k + l <= 2(N - n)`.
    pub tau: Vec<TriGrid<S>>,
    /// `σ_n` on `k + l <= 2(N - n)`, `l >= 1`.
    pub sigma: Vec<TriGrid<S>>,
}

impl<S: Scalar> DtodaTables<S> {
    /// Initial grids `τ_0`, `σ_0` and (if `N >= 1`) `τ_1`.
    pub fn from_prepared(prep: &DtodaPrepared<S>) -> Self {
        let two_n = 2 * prep.half_order as i64;
        let mut tau = vec![TriGrid::new(two_n, 0, S::one())];
        let sigma = vec![TriGrid::new(two_n, 1, S::zero())];
        if prep.half_order >= 1 {
            let mut tau1 = TriGrid::new(two_n - 2, 0, S::zero());
            for (k, l) in tau1.cells().collect::<Vec<_>>() {
                tau1.set(k, l, prep.pf(0, 1, k, l).expect("prepared range covers τ_1"));
            }
            tau.push(tau1);
        }
        DtodaTables { half_order: prep.half_order, lambda: prep.lambda.clone(), tau, sigma }
    }

    /// `τ_N^{0,0}` once the run is complete.
    pub fn result(&self) -> Option<&S> {
        self.tau.get(self.half_order)?.get(0, 0)
    }

    fn extent(&self, n: usize) -> i64 {
        2 * (self.half_order as i64 - n as i64)
    }
}

/// Numerator of the `σ_n^{k,l+1}` step.
fn sigma_numerator<S: Scalar>(t: &DtodaTables<S>, n: usize, mu: &S, k: i64, l: i64) -> S {
    let (prev, cur, sprev) = (&t.tau[n - 1], &t.tau[n], &t.sigma[n - 1]);
    -(t.lambda.clone() * prev.at(k + 1, l + 2).clone() * cur.at(k, l).clone())
        + sprev.at(k + 1, l + 1).clone() * cur.at(k, l + 1).clone()
        + mu.clone()
            * (prev.at(k, l + 2).clone() * cur.at(k + 1, l).clone()
                - prev.at(k + 1, l + 1).clone() * cur.at(k, l + 1).clone())
}

/// Numerator of the `τ_{n+1}^{k,l}` step.
fn tau_numerator<S: Scalar>(t: &DtodaTables<S>, n: usize, mu: &S, k: i64, l: i64) -> S {
    let (cur, sig) = (&t.tau[n], &t.sigma[n]);
    let mu2 = mu.clone() * mu.clone();
    mu.clone()
        * (sig.at(k + 1, l + 1).clone() * cur.at(k, l + 1).clone()
            - sig.at(k, l + 1).clone() * cur.at(k + 1, l + 1).clone())
        + mu2
            * (cur.at(k + 1, l).clone() * cur.at(k, l + 2).clone()
                - cur.at(k, l + 1).clone() * cur.at(k + 1, l + 1).clone())
}

/// Computes `σ_n` from `τ_n`, `τ_{n-1}` and `σ_{n-1}`.
pub fn dtoda_step_sigma<S: Scalar>(tables: &mut DtodaTables<S>, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Parameter("σ_0 is initial data; steps start at n = 1".into()));
    }
    if tables.tau.len() <= n || tables.sigma.len() < n {
        return Err(Error::Precondition(format!("τ_{n}, τ_{} and σ_{} must be populated", n - 1, n - 1)));
    }
    let mu = tables.lambda.recip()?;
    let mut out = TriGrid::new(tables.extent(n), 1, S::zero());
    for (k, lp) in out.cells().collect::<Vec<_>>() {
        let l = lp - 1;
        let v = sigma_numerator(tables, n, &mu, k, l)
            .checked_div(tables.tau[n - 1].at(k + 1, l + 1))
            .ok_or_else(|| Error::ZeroDivisor(Cell::new("sigma", n as i64, k, lp)))?;
        out.set(k, lp, v);
    }
    tables.sigma.truncate(n);
    tables.sigma.push(out);
    Ok(())
}

/// Computes `τ_{n+1}` from `σ_n`, `τ_n` and `τ_{n-1}`.
pub fn dtoda_step_tau<S: Scalar>(tables: &mut DtodaTables<S>, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Parameter("τ_1 is initial data; steps start at n = 1".into()));
    }
    if tables.tau.len() <= n || tables.sigma.len() <= n {
        return Err(Error::Precondition(format!("σ_{n}, τ_{n} and τ_{} must be populated", n - 1)));
    }
    let mu = tables.lambda.recip()?;
    let mut out = TriGrid::new(tables.extent(n + 1), 0, S::zero());
    for (k, l) in out.cells().collect::<Vec<_>>() {
        let v = tau_numerator(tables, n, &mu, k, l)
            .checked_div(tables.tau[n - 1].at(k + 1, l + 2))
            .ok_or_else(|| Error::ZeroDivisor(Cell::new("tau", n as i64 + 1, k, l)))?;
        out.set(k, l, v);
    }
    tables.tau.truncate(n + 1);
    tables.tau.push(out);
    Ok(())
}

/// One run without retries: returns `τ_N^{0,0}` or the first zero divisor.
pub fn dtoda_run<S: Scalar>(a: &SkewMatrix<S>, lambda: &S) -> Result<(S, DtodaTables<S>)> {
    let prep = dtoda_prepare(a, lambda)?;
    let mut tables = DtodaTables::from_prepared(&prep);
    for n in 1..prep.half_order {
        dtoda_step_sigma(&mut tables, n)?;
        dtoda_step_tau(&mut tables, n)?;
    }
    let value = tables.result().expect("completed run has τ_N").clone();
    Ok((value, tables))
}

/// Full condensation; on a zero divisor `λ` is resampled as `±p/q` up to
/// `policy.retries` times (the scheme has no other free parameter).
pub fn dtoda_condense<S: Scalar>(
    a: &SkewMatrix<S>,
    lambda: &S,
    policy: &RetryPolicy,
) -> Result<(S, DtodaTables<S>)> {
    let mut rng = seeded_rng(policy.seed);
    let mut lambda = lambda.clone();
    let mut last_cell = None;
    for attempt in 0..=policy.retries {
        if attempt > 0 {
            lambda = random_nonzero_small(&mut rng);
        }
        match dtoda_run(a, &lambda) {
            Ok(out) => return Ok(out),
            Err(Error::ZeroDivisor(cell)) => last_cell = Some(cell),
            Err(e) => return Err(e),
        }
    }
    Err(Error::CondensationFailure {
        attempts: policy.retries + 1,
        cell: last_cell.expect("at least one attempt ran"),
    })
}

/// Re-checks every stored `σ_n` and `τ_{n+1}` in division-free form.
pub fn dtoda_interior_residuals<S: Scalar>(tables: &DtodaTables<S>) -> Result<VerificationReport> {
    let mu = tables.lambda.recip()?;
    let mut t = ResidualTracker::new();
    for n in 1..tables.sigma.len().min(tables.tau.len()) {
        for (k, lp) in tables.sigma[n].cells() {
            let l = lp - 1;
            let lhs = tables.sigma[n].at(k, lp).clone() * tables.tau[n - 1].at(k + 1, l + 1).clone();
            t.record(Cell::new("sigma", n as i64, k, lp), &(lhs - sigma_numerator(tables, n, &mu, k, l)));
        }
        if let Some(next) = tables.tau.get(n + 1) {
            for (k, l) in next.cells() {
                let lhs = next.at(k, l).clone() * tables.tau[n - 1].at(k + 1, l + 2).clone();
                t.record(Cell::new("tau", n as i64 + 1, k, l), &(lhs - tau_numerator(tables, n, &mu, k, l)));
            }
        }
    }
    Ok(VerificationReport::single("dtoda-interior", t.into_case()))
}
