//! `verify`: named suites of machine checks over seeded random instances.

use std::collections::BTreeMap;

use pfcondense::lattice_lab::btoda_solution::{btoda_seed_requirement, random_btoda_seed};
use pfcondense::lattice_lab::dckp::{dckp_seed_requirement, random_gram_seed_ckp};
use pfcondense::lattice_lab::discrete::{random_gram_seed, random_wronski_seed};
use pfcondense::lattice_lab::dtoda_solution::{dtoda_seed_requirement, random_dtoda_seed};
use pfcondense::lattice_lab::glv_solution::{glv_seed_requirement, random_glv_seed};
use pfcondense::lattice_lab::{
    check_gram_identities, check_wronski_identities, somos_generate, somos_reduction_residual,
    verify_btoda_solution, verify_dckp, verify_dtoda_solution, verify_glv_solution, Reduction,
    SomosVariant,
};
use pfcondense::random::{
    random_int, random_matrix_int, random_nonzero_small, random_skew_int, seeded_rng, SeededRng,
};
use pfcondense::report::FLOAT_TOLERANCE;
use pfcondense::scalar_core::identities::{
    check_bilinear_even, check_bilinear_odd, check_congruence,
};
use pfcondense::{
    CaseReport, Error, ExtendedSkewArray, Label, Rational, Result, Scalar, VerificationReport,
};

use crate::{Failure, ScalarMode, Suite, VerifyArgs};

/// Lattice extents `(K, L)` cycled through by the solution suites.
const EXTENTS: [(usize, usize); 3] = [(3, 3), (2, 3), (3, 2)];

fn case(params: &[(&str, String)], residual: f64, pass: bool, cell: Option<String>) -> CaseReport {
    CaseReport {
        params: params
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect::<BTreeMap<_, _>>(),
        residual_max: residual,
        pass,
        failing_cell: cell,
    }
}

/// Tags every case of `sub` with the trial number and appends it to `out`.
fn absorb_trial(out: &mut VerificationReport, sub: VerificationReport, trial: usize) {
    let mut tagged = VerificationReport::new(sub.suite.clone());
    tagged.cases = sub
        .cases
        .into_iter()
        .map(|c| c.param("trial", trial))
        .collect();
    out.absorb(tagged);
}

/// Skew array over `labels` with every pair filled by a small random integer.
fn random_array<S: Scalar>(rng: &mut SeededRng, labels: &[Label]) -> Result<ExtendedSkewArray<S>> {
    let mut e = ExtendedSkewArray::new(labels.to_vec())?;
    for (p, x) in labels.iter().enumerate() {
        for y in &labels[p + 1..] {
            e.set(*x, *y, random_int(rng, 9))?;
        }
    }
    Ok(e)
}

fn identities<S: Scalar>(args: &VerifyArgs, rng: &mut SeededRng) -> Result<VerificationReport> {
    let mut out = VerificationReport::new("identities");
    let n_top = args.size.max(1);
    for trial in 0..args.trials {
        let a: Vec<Label> = (0..[2, 4][trial % 2]).map(Label::D).collect();
        let star: Vec<Label> = (0..[0, 2, 4][trial % 3]).map(Label::Idx).collect();
        let e = random_array::<S>(rng, &[a.clone(), star.clone()].concat())?;
        absorb_trial(&mut out, check_bilinear_even(&e, &a, &star)?, trial);

        let a: Vec<Label> = (0..[1, 3][trial % 2]).map(Label::D).collect();
        let ast: Vec<Label> = (0..[1, 3][(trial / 2) % 2]).map(Label::Idx).collect();
        let last = Label::C(0);
        let e = random_array::<S>(rng, &[a.clone(), ast.clone(), vec![last]].concat())?;
        absorb_trial(&mut out, check_bilinear_odd(&e, &a, &ast, last)?, trial);

        let n = 1 + trial % n_top;
        let lam: S = random_nonzero_small(rng);
        absorb_trial(
            &mut out,
            check_gram_identities(&random_gram_seed(rng, n)?, &lam, n)?,
            trial,
        );
        absorb_trial(
            &mut out,
            check_wronski_identities(&random_wronski_seed(rng, n)?, &lam, n)?,
            trial,
        );

        let order = 2 * (1 + trial % 3);
        let a = random_skew_int::<S>(rng, order, 9);
        let b = random_matrix_int::<S>(rng, order, order, 9);
        absorb_trial(&mut out, check_congruence(&a, &b)?, trial);
    }
    Ok(out)
}

fn glv<S: Scalar>(args: &VerifyArgs, rng: &mut SeededRng) -> Result<VerificationReport> {
    let mut out = VerificationReport::new("glv");
    for trial in 0..args.trials {
        let ext = EXTENTS[trial % EXTENTS.len()];
        let lam: S = random_nonzero_small(rng);
        let seed = random_glv_seed(rng, glv_seed_requirement(ext, args.size))?;
        absorb_trial(
            &mut out,
            verify_glv_solution(&seed, ext, args.size, &lam)?,
            trial,
        );
    }
    Ok(out)
}

fn btoda<S: Scalar>(args: &VerifyArgs, rng: &mut SeededRng) -> Result<VerificationReport> {
    let mut out = VerificationReport::new("btoda");
    for trial in 0..args.trials {
        let l_extent = EXTENTS[trial % EXTENTS.len()].1;
        let seed = random_btoda_seed(rng, btoda_seed_requirement(l_extent, args.size))?;
        absorb_trial(
            &mut out,
            verify_btoda_solution::<S>(&seed, l_extent, args.size)?,
            trial,
        );
    }
    Ok(out)
}

fn dtoda<S: Scalar>(args: &VerifyArgs, rng: &mut SeededRng) -> Result<VerificationReport> {
    let mut out = VerificationReport::new("dtoda");
    for trial in 0..args.trials {
        let ext = EXTENTS[trial % EXTENTS.len()];
        // Alternate the determinant point λ = −1 with random relaxations.
        let lam: S = if trial % 2 == 0 {
            S::from_i64(-1)
        } else {
            random_nonzero_small(rng)
        };
        let seed = random_dtoda_seed(rng, dtoda_seed_requirement(ext, args.size))?;
        absorb_trial(
            &mut out,
            verify_dtoda_solution::<S>(&seed, ext, args.size, &lam)?,
            trial,
        );
    }
    Ok(out)
}

fn dckp<S: Scalar>(args: &VerifyArgs, rng: &mut SeededRng) -> Result<VerificationReport> {
    let mut out = VerificationReport::new("dckp");
    let ext = (2, 2);
    for trial in 0..args.trials {
        let seed = random_gram_seed_ckp::<S>(rng, dckp_seed_requirement(ext, args.size));
        absorb_trial(&mut out, verify_dckp(&seed, ext, args.size)?, trial);
    }
    Ok(out)
}

/// Somos-4 from all-ones initial terms, checked for integrality by exact division in `i128`.
fn somos4_integrality(count: usize) -> CaseReport {
    let mut h: Vec<i128> = vec![1; 4];
    let mut first_bad = None;
    while h.len() < count {
        let n = h.len();
        let num = h[n - 3] * h[n - 1] + h[n - 2] * h[n - 2];
        if num % h[n - 4] != 0 && first_bad.is_none() {
            first_bad = Some(n);
        }
        h.push(num / h[n - 4]);
    }
    let generated = somos_generate(SomosVariant::Four, &vec![Rational::from_i64(1); 4], count);
    let agrees = generated.is_ok_and(|g| {
        g.terms
            .iter()
            .zip(&h)
            .all(|(x, y)| x.is_integer() && x.to_string() == y.to_string())
    });
    let cell = match first_bad {
        Some(n) => Some(format!("h_{n} not integral")),
        None if !agrees => Some("generated terms differ from integer recurrence".into()),
        None => None,
    };
    case(
        &[
            ("check", "somos4-integrality".into()),
            ("terms", count.to_string()),
            ("last", h[count - 1].to_string()),
        ],
        0.0,
        cell.is_none(),
        cell,
    )
}

/// Sequence of `variant` from random positive initial terms, regenerated on a zero divisor.
fn random_somos<S: Scalar>(
    rng: &mut SeededRng,
    variant: SomosVariant,
    count: usize,
) -> Result<Vec<S>> {
    loop {
        let init: Vec<S> = (0..variant.order())
            .map(|_| S::from_i64(1 + random_int::<S>(rng, 4).to_f64().abs() as i64))
            .collect();
        match somos_generate(variant, &init, count) {
            Ok(seq) => return Ok(seq.terms),
            Err(Error::SequenceDivisor(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}

fn somos<S: Scalar>(args: &VerifyArgs, rng: &mut SeededRng) -> Result<VerificationReport> {
    let mut out = VerificationReport::new("somos");
    out.push(somos4_integrality(20));
    // Each lattice reduction must vanish identically on its Somos sequence.
    let extent = args.size.max(1) as i64;
    for variant in [SomosVariant::Four, SomosVariant::Six, SomosVariant::Seven] {
        let red = Reduction::for_variant(variant);
        for trial in 0..args.trials {
            let top = 1 + extent * (2 + red.a + red.b) + 8;
            let h: Vec<S> = random_somos(rng, variant, top as usize + 1)?;
            // Terms grow doubly exponentially, so float residuals are taken
            // relative to the largest product of two terms.
            let scale = if S::EXACT {
                1.0
            } else {
                h.iter().map(|x| x.magnitude().powi(2)).fold(1.0, f64::max)
            };
            let mut worst = 0.0f64;
            let mut cell = None;
            for n in 1..=extent {
                for k in 0..=extent {
                    for l in 0..=extent {
                        let res = somos_reduction_residual(&red, &h, (n, k, l))?;
                        let rel = res.magnitude() / scale;
                        worst = worst.max(rel);
                        let ok = if S::EXACT {
                            res.is_zero()
                        } else {
                            rel <= FLOAT_TOLERANCE
                        };
                        if !ok && cell.is_none() {
                            cell = Some(format!("(n,k,l)=({n},{k},{l})"));
                        }
                    }
                }
            }
            out.push(case(
                &[
                    ("check", variant.to_string()),
                    ("reduction", red.name.to_string()),
                    ("trial", trial.to_string()),
                ],
                worst,
                cell.is_none(),
                cell,
            ));
        }
    }
    Ok(out)
}

fn run_suite<S: Scalar>(
    suite: Suite,
    args: &VerifyArgs,
    rng: &mut SeededRng,
) -> Result<VerificationReport> {
    match suite {
        Suite::Identities => identities::<S>(args, rng),
        Suite::Glv => glv::<S>(args, rng),
        Suite::Btoda => btoda::<S>(args, rng),
        Suite::Dtoda => dtoda::<S>(args, rng),
        Suite::Dckp => dckp::<S>(args, rng),
        Suite::Somos => somos::<S>(args, rng),
        Suite::All => {
            let mut all = VerificationReport::new("all");
            for s in [
                Suite::Identities,
                Suite::Glv,
                Suite::Btoda,
                Suite::Dtoda,
                Suite::Dckp,
                Suite::Somos,
            ] {
                all.absorb(run_suite::<S>(s, args, rng)?);
            }
            Ok(all)
        }
    }
}

pub fn run(args: &VerifyArgs) -> std::result::Result<(), Failure> {
    if args.size == 0 {
        return Err(Failure::Usage("--size must be at least 1".into()));
    }
    let mut rng = seeded_rng(args.seed);
    let report = match args.scalar {
        ScalarMode::Rational => run_suite::<Rational>(args.suite, args, &mut rng),
        ScalarMode::Float => run_suite::<f64>(args.suite, args, &mut rng),
    }?
    .with_seed(args.seed);
    if args.json {
        println!("{}", report.to_json());
    } else {
        println!("{report}");
        for c in report.failures() {
            println!(
                "  FAIL {:?} residual {:e} at {}",
                c.params,
                c.residual_max,
                c.failing_cell.as_deref().unwrap_or("?")
            );
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification(String::new()))
    }
}
