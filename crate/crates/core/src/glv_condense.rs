//! Pfaffian condensation on the generalised Lotka–Volterra lattice.
//!
//! With `φ_n = τ_{2n}` and `ψ_n = τ_{2n+1}`, the scheme starts from
//!
//! ```text
//! φ_0 = 1,   φ_1^{k,l} = pf(0,1,k,l),   ψ_0^{k,l} = D(0,k,l)
//! ```
//!
//! and alternates the two split steps
//!
//! ```text
//! ψ_n^{k,l}     φ_{n-1}^{k+1,l+1} = ψ_{n-1}^{k+1,l+1} φ_n^{k,l} + μ ψ_{n-1}^{k,l+1} φ_n^{k+1,l} − μ ψ_{n-1}^{k+1,l} φ_n^{k,l+1}
//! φ_{n+1}^{k,l} ψ_{n-1}^{k+1,l+1} = φ_n^{k+1,l+1} ψ_n^{k,l}  + μ φ_n^{k,l+1} ψ_n^{k+1,l}   − μ φ_n^{k+1,l} ψ_n^{k,l+1}
//! ```
//!
//! with `μ = 1/λ`, until `φ_N^{0,0} = Pf(A)`. At `λ = 1` this is the plain
//! (unrelaxed) lattice. `τ_m` lives on the triangle `k + l <= 2N - m`.
//!
//! The coefficient is `1/λ`, not `λ`: with the `λ`-weighted preparation below,
//! only `1/λ` keeps the result independent of `λ` (see the tests).

use crate::error::{Cell, Error, Result};
use crate::grid::TriGrid;
use crate::quadruplet::QuadrupletTable;
use crate::random::{random_alpha, random_nonzero_small, seeded_rng};
use crate::report::{ResidualTracker, VerificationReport};
pub use crate::retry::RetryPolicy;
use crate::scalar_core::matrix::SkewMatrix;
use crate::scalar_core::scalar::Scalar;

/// Prepared data: the quadruplet store `pf(i,j,k,l)` on `k + l <= 2N - 2` and
/// the triplet store `D(i,k,l)` on `k + l <= 2N - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GlvPrepared<S> {
    pub half_order: usize,
    pub lambda: S,
    pub alpha: Vec<S>,
    pub pf_table: QuadrupletTable<S>,
    /// `D(i, k, l)` depends on `i + k` only: row `l` holds `D(j - k, k, l)` for `j < 2N - l`.
    d_rows: Vec<Vec<S>>,
}

impl<S: Scalar> GlvPrepared<S> {
    /// `pf(i, j, k, l)`.
    pub fn pf(&self, i: usize, j: usize, k: i64, l: i64) -> Option<S> {
        self.pf_table.pf(i, j, k, l)
    }

    /// `D(i, k, l)`.
    pub fn d(&self, i: usize, k: i64, l: i64) -> Option<S> {
        if k < 0 || l < 0 || k + l >= 2 * self.half_order as i64 {
            return None;
        }
        self.d_rows.get(l as usize)?.get(i + k as usize).cloned()
    }
}

/// Prepares the quadruplets and triplets for a run with relaxation `lambda`.
pub fn glv_prepare<S: Scalar>(a: &SkewMatrix<S>, alpha: &[S], lambda: &S) -> Result<GlvPrepared<S>> {
    if lambda.is_zero() {
        return Err(Error::Parameter("relaxation factor λ must be nonzero".into()));
    }
    let order = a.order();
    if alpha.len() != order {
        return Err(Error::Shape(format!("alpha has {} entries, matrix order is {order}", alpha.len())));
    }
    let two_n = order as i64;
    let pf_table = QuadrupletTable::build(a, lambda, two_n - 2);
    let mut d_rows: Vec<Vec<S>> = vec![alpha.to_vec()];
    for _ in 1..two_n {
        let prev = d_rows.last().expect("row 0 is present");
        let next = prev.windows(2).map(|w| lambda.clone() * w[0].clone() + w[1].clone()).collect();
        d_rows.push(next);
    }
    Ok(GlvPrepared { half_order: order / 2, lambda: lambda.clone(), alpha: alpha.to_vec(), pf_table, d_rows })
}

/// `φ_n` (index `n`) and `ψ_n` grids of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct GlvTables<S> {
    pub half_order: usize,
    pub lambda: S,
    pub alpha: Vec<S>,
    /// `φ_n` on `k + l <= 2N - 2n`; filled for `n = 0..=N` once the run completes.
    pub phi: Vec<TriGrid<S>>,
    /// `ψ_n` on `k + l <= 2N - 2n - 1`; filled for `n = 0..N`.
    pub psi: Vec<TriGrid<S>>,
}

impl<S: Scalar> GlvTables<S> {
    /// Initial grids `φ_0`, `φ_1` (if `N >= 1`) and `ψ_0`.
    pub fn from_prepared(prep: &GlvPrepared<S>) -> Self {
        let two_n = 2 * prep.half_order as i64;
        let phi0 = TriGrid::new(two_n, 0, S::one());
        let mut phi = vec![phi0];
        let mut psi = Vec::new();
        if prep.half_order >= 1 {
            let mut phi1 = TriGrid::new(two_n - 2, 0, S::zero());
            for (k, l) in phi1.cells().collect::<Vec<_>>() {
                phi1.set(k, l, prep.pf(0, 1, k, l).expect("prepared range covers φ_1"));
            }
            phi.push(phi1);
            let mut psi0 = TriGrid::new(two_n - 1, 0, S::zero());
            for (k, l) in psi0.cells().collect::<Vec<_>>() {
                psi0.set(k, l, prep.d(0, k, l).expect("prepared range covers ψ_0"));
            }
            psi.push(psi0);
        }
        GlvTables { half_order: prep.half_order, lambda: prep.lambda.clone(), alpha: prep.alpha.clone(), phi, psi }
    }

    /// `τ_m` in the unified numbering (`τ_{2n} = φ_n`, `τ_{2n+1} = ψ_n`).
    pub fn tau(&self, m: usize) -> Option<&TriGrid<S>> {
        if m % 2 == 0 {
            self.phi.get(m / 2)
        } else {
            self.psi.get(m / 2)
        }
    }

    /// `φ_N^{0,0}` once the run is complete.
    pub fn result(&self) -> Option<&S> {
        self.phi.get(self.half_order)?.get(0, 0)
    }
}

/// Fills level `out` of the unified stencil
/// `τ_{m+2}^{k,l} = (τ_m^{k+1,l+1} τ_{m+1}^{k,l} + μ(τ_m^{k,l+1} τ_{m+1}^{k+1,l} − τ_m^{k+1,l} τ_{m+1}^{k,l+1})) / τ_{m-1}^{k+1,l+1}`
/// with `lower = τ_{m-1}`, `mid = τ_m`, `upper = τ_{m+1}`.
fn stencil_level<S: Scalar>(
    lower: &TriGrid<S>,
    mid: &TriGrid<S>,
    upper: &TriGrid<S>,
    mu: &S,
    out: &mut TriGrid<S>,
) -> std::result::Result<(), (i64, i64)> {
    // Every read stays inside the source triangles: their extents exceed
    // `out`'s by 3, 2 and 1.
    debug_assert!(lower.extent() >= out.extent() + 2 && mid.extent() >= out.extent() + 2);
    debug_assert!(upper.extent() > out.extent());
    let extent = out.extent();
    for k in 0..=extent {
        let (m0, m1) = (mid.raw_row(k), mid.raw_row(k + 1));
        let (u0, u1) = (upper.raw_row(k), upper.raw_row(k + 1));
        let below = lower.raw_row(k + 1);
        let row = out.raw_row_mut(k);
        for l in 0..=(extent - k) as usize {
            let num = m1[l + 1].clone() * u0[l].clone()
                + mu.clone() * (m0[l + 1].clone() * u1[l].clone() - m1[l].clone() * u0[l + 1].clone());
            row[l] = num.checked_div(&below[l + 1]).ok_or((k, l as i64))?;
        }
    }
    Ok(())
}

fn require_level<S>(grids: &[TriGrid<S>], idx: usize, what: &str) -> Result<()> {
    if idx < grids.len() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} is not populated yet")))
    }
}

/// Computes `ψ_n` from `φ_n`, `φ_{n-1}` and `ψ_{n-1}`.
pub fn glv_step_psi<S: Scalar>(tables: &mut GlvTables<S>, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Parameter("ψ_0 is initial data; steps start at n = 1".into()));
    }
    require_level(&tables.phi, n, &format!("φ_{n}"))?;
    require_level(&tables.psi, n - 1, &format!("ψ_{}", n - 1))?;
    let mu = tables.lambda.recip()?;
    let extent = 2 * (tables.half_order as i64) - 2 * n as i64 - 1;
    let mut out = TriGrid::new(extent, 0, S::zero());
    stencil_level(&tables.phi[n - 1], &tables.psi[n - 1], &tables.phi[n], &mu, &mut out)
        .map_err(|(k, l)| Error::ZeroDivisor(Cell::new("psi", n as i64, k, l)))?;
    tables.psi.truncate(n);
    tables.psi.push(out);
    Ok(())
}

/// Computes `φ_{n+1}` from `ψ_n`, `ψ_{n-1}` and `φ_n`.
pub fn glv_step_phi<S: Scalar>(tables: &mut GlvTables<S>, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Parameter("φ_1 is initial data; steps start at n = 1".into()));
    }
    require_level(&tables.psi, n, &format!("ψ_{n}"))?;
    require_level(&tables.phi, n, &format!("φ_{n}"))?;
    let mu = tables.lambda.recip()?;
    let extent = 2 * (tables.half_order as i64) - 2 * n as i64 - 2;
    let mut out = TriGrid::new(extent, 0, S::zero());
    stencil_level(&tables.psi[n - 1], &tables.phi[n], &tables.psi[n], &mu, &mut out)
        .map_err(|(k, l)| Error::ZeroDivisor(Cell::new("phi", n as i64 + 1, k, l)))?;
    tables.phi.truncate(n + 1);
    tables.phi.push(out);
    Ok(())
}

/// One run without retries: returns `φ_N^{0,0}` or the first zero divisor.
pub fn glv_run<S: Scalar>(a: &SkewMatrix<S>, alpha: &[S], lambda: &S) -> Result<(S, GlvTables<S>)> {
    let prep = glv_prepare(a, alpha, lambda)?;
    let mut tables = GlvTables::from_prepared(&prep);
    for n in 1..prep.half_order {
        glv_step_psi(&mut tables, n)?;
        glv_step_phi(&mut tables, n)?;
    }
    let value = tables.result().expect("completed run has φ_N").clone();
    Ok((value, tables))
}

/// Full condensation with retries.
///
/// On a zero divisor, `alpha` is resampled from positive rationals `p/q`,
/// `p, q ∈ [1, 9]` (and `λ` too if requested), up to `policy.retries` times.
/// The returned tables record the parameters that succeeded.
pub fn glv_condense<S: Scalar>(
    a: &SkewMatrix<S>,
    alpha: &[S],
    lambda: &S,
    policy: &RetryPolicy,
) -> Result<(S, GlvTables<S>)> {
    let mut rng = seeded_rng(policy.seed);
    let mut alpha = alpha.to_vec();
    let mut lambda = lambda.clone();
    let mut last_cell = None;
    for attempt in 0..=policy.retries {
        if attempt > 0 {
            alpha = random_alpha(&mut rng, a.order());
            if policy.resample_lambda {
                lambda = random_nonzero_small(&mut rng);
            }
        }
        match glv_run(a, &alpha, &lambda) {
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

/// Re-checks every stored `ψ_n` and `φ_{n+1}` against the split steps in
/// division-free form.
pub fn glv_interior_residuals<S: Scalar>(tables: &GlvTables<S>) -> Result<VerificationReport> {
    let mu = tables.lambda.recip()?;
    let mut t = ResidualTracker::new();
    let top = tables.phi.len() + tables.psi.len();
    for m in 1..top.saturating_sub(2) + 1 {
        let (Some(lo), Some(mid), Some(up), Some(out)) =
            (tables.tau(m - 1), tables.tau(m), tables.tau(m + 1), tables.tau(m + 2))
        else {
            continue;
        };
        for (k, l) in out.cells() {
            let lhs = out.at(k, l).clone() * lo.at(k + 1, l + 1).clone();
            let rhs = mid.at(k + 1, l + 1).clone() * up.at(k, l).clone()
                + mu.clone()
                    * (mid.at(k, l + 1).clone() * up.at(k + 1, l).clone()
                        - mid.at(k + 1, l).clone() * up.at(k, l + 1).clone());
            t.record(Cell::new("tau", m as i64 + 2, k, l), &(lhs - rhs));
        }
    }
    Ok(VerificationReport::single("glv-interior", t.into_case()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_skew_int, random_skew_rational};
    use crate::scalar_core::pfaffian::pfaffian_expansion;
    use crate::scalar_core::scalar::Rational;

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d).unwrap()
    }

    fn ones(n: usize) -> Vec<Rational> {
        vec![r(1); n]
    }

    fn sample(seed: u64, order: usize) -> SkewMatrix<Rational> {
        random_skew_rational(&mut seeded_rng(seed), order, 9)
    }

    #[test]
    fn worked_example_preparation() {
        let a = sample(1, 4);
        let prep = glv_prepare(&a, &ones(4), &r(1)).unwrap();
        let e = |i, j| a.a(i, j);
        assert_eq!(prep.pf(0, 1, 0, 1).unwrap(), e(1, 2) + e(0, 2) + e(0, 1));
        assert_eq!(prep.pf(0, 1, 1, 1).unwrap(), e(2, 3) + e(1, 3) + e(1, 2));
        assert_eq!(
            prep.pf(0, 1, 0, 2).unwrap(),
            e(2, 3) + r(2) * e(1, 3) + r(3) * e(1, 2) + r(2) * e(0, 2) + e(0, 3) + e(0, 1)
        );
        for k in 0..4 {
            for l in 0..4 - k {
                assert_eq!(prep.d(0, k, l).unwrap(), r(2).pow(l as u32));
            }
        }
    }

    #[test]
    fn worked_example_iteration() {
        let a = sample(2, 4);
        let e = |i, j| a.a(i, j);
        let (value, t) = glv_run(&a, &ones(4), &r(1)).unwrap();
        assert_eq!(*t.psi[1].at(0, 0), e(0, 1) - e(0, 2) + e(1, 2));
        assert_eq!(*t.psi[1].at(1, 0), e(1, 2) - e(1, 3) + e(2, 3));
        assert_eq!(*t.psi[1].at(0, 1), r(2) * (e(2, 3) + e(1, 2) - e(0, 3) + e(0, 1)));
        assert_eq!(value, e(0, 1) * e(2, 3) - e(0, 2) * e(1, 3) + e(0, 3) * e(1, 2));
    }

    #[test]
    fn small_orders() {
        let empty = SkewMatrix::<Rational>::zeros(0).unwrap();
        assert_eq!(glv_run(&empty, &[], &r(1)).unwrap().0, r(1));
        let two = SkewMatrix::from_upper(2, vec![r(-4)]).unwrap();
        assert_eq!(glv_run(&two, &ones(2), &r(3)).unwrap().0, r(-4));
    }

    #[test]
    fn parameter_errors() {
        let a = sample(3, 4);
        assert!(matches!(glv_prepare(&a, &ones(4), &r(0)), Err(Error::Parameter(_))));
        assert!(matches!(glv_prepare(&a, &ones(3), &r(1)), Err(Error::Shape(_))));
    }

    #[test]
    fn matches_expansion_and_is_parameter_invariant() {
        let mut rng = seeded_rng(17);
        for order in [6usize, 8] {
            for s in 0..4 {
                let a = sample(100 + s, order);
                let expected = pfaffian_expansion(&a);
                for lam in [r(1), r(2), r(-3), q(1, 2)] {
                    let alpha = random_alpha(&mut rng, order);
                    match glv_run(&a, &alpha, &lam) {
                        Ok((v, t)) => {
                            assert_eq!(v, expected, "order {order} λ={lam}");
                            assert!(glv_interior_residuals(&t).unwrap().passed());
                        }
                        Err(Error::ZeroDivisor(_)) => {}
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_weighted_coefficient_breaks_invariance() {
        // Running the split steps with coefficient λ instead of 1/λ gives a
        // λ-dependent (wrong) value for λ ≠ ±1.
        let a: SkewMatrix<Rational> = random_skew_int(&mut seeded_rng(5), 6, 9);
        let lam = r(2);
        let prep = glv_prepare(&a, &ones(6), &lam).unwrap();
        let mut t = GlvTables::from_prepared(&prep);
        t.lambda = lam.recip().unwrap(); // makes μ = λ inside the steps
        let ok = (1..3).try_for_each(|n| {
            glv_step_psi(&mut t, n)?;
            glv_step_phi(&mut t, n)
        });
        ok.unwrap();
        assert_ne!(t.result().unwrap().clone(), pfaffian_expansion(&a));
    }

    #[test]
    fn proportional_rows_give_zero() {
        let base = sample(6, 6);
        // Row 4 = 2 × row 1 (skew-consistently) forces Pf = 0.
        let a = SkewMatrix::from_fn(6, |i, j| {
            let v = |x: usize, y: usize| if x == 4 { r(2) * base.a(1, y) } else if y == 4 { r(2) * base.a(x, 1) } else { base.a(x, y) };
            if (i == 1 && j == 4) || (i == 4 && j == 1) { r(0) } else { v(i, j) }
        })
        .unwrap();
        assert!(pfaffian_expansion(&a).is_zero());
        if let Ok((v, _)) = glv_condense(&a, &ones(6), &r(1), &RetryPolicy::default()) {
            assert!(v.is_zero());
        }
    }

    #[test]
    fn zero_divisor_carries_cell_and_retry_recovers() {
        let a = sample(4, 4);
        // ψ_0^{1,1} = λα_1 + α_2 vanishes, and it divides φ_2^{0,0}.
        let alpha = vec![r(1), r(1), r(-1), r(1)];
        match glv_run(&a, &alpha, &r(1)) {
            Err(Error::ZeroDivisor(cell)) => assert_eq!(cell, Cell::new("phi", 2, 0, 0)),
            other => panic!("unexpected {other:?}"),
        }
        let (v, t) = glv_condense(&a, &alpha, &r(1), &RetryPolicy::default()).unwrap();
        assert_eq!(v, pfaffian_expansion(&a));
        assert_ne!(t.alpha, alpha);
    }

    #[test]
    fn exhausted_retries_surface_failure() {
        // For the zero matrix φ_1 ≡ 0, and ψ_2 divides by φ_1 for every alpha.
        let a = SkewMatrix::<Rational>::zeros(6).unwrap();
        assert_eq!(glv_run(&a, &ones(6), &r(1)).unwrap_err(), Error::ZeroDivisor(Cell::new("psi", 2, 0, 0)));
        match glv_condense(&a, &ones(6), &r(1), &RetryPolicy { retries: 2, ..Default::default() }) {
            Err(Error::CondensationFailure { attempts, cell }) => {
                assert_eq!(attempts, 3);
                assert_eq!(cell, Cell::new("psi", 2, 0, 0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn float_mode_tracks_exact_value() {
        let a = sample(9, 8);
        let exact = pfaffian_expansion(&a).to_f64();
        let af = SkewMatrix::from_fn(8, |i, j| a.a(i, j).to_f64()).unwrap();
        let (v, _) = glv_run(&af, &[1.0; 8], &1.0).unwrap();
        assert!((v - exact).abs() <= 1e-6 * exact.abs().max(1.0));
    }
}
