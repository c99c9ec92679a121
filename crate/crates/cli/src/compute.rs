//! `compute`: run one or more algorithms on a matrix file.

use std::fs;

use serde::Serialize;

use pfcondense::bench::Algorithm;
use pfcondense::dodgson::{dodgson_determinant, lambda_determinant};
use pfcondense::dtoda_condense::{dtoda_condense, RetryPolicy};
use pfcondense::glv_condense::glv_condense;
use pfcondense::random::{random_alpha, seeded_rng};
use pfcondense::scalar_core::format::{parse_mat, parse_skew};
use pfcondense::scalar_core::pfaffian::MAX_EXPANSION_ORDER;
use pfcondense::{pfaffian_elimination, pfaffian_expansion, Matrix, Rational, Scalar, SkewMatrix};

use crate::{ComputeArgs, Failure, ScalarMode};

#[derive(Serialize)]
struct AlgoResult {
    algo: String,
    /// `pfaffian` or `determinant`.
    quantity: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    /// Parameters that produced the value after any retries.
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
}

#[derive(Serialize)]
struct ComputeReport {
    input: String,
    scalar: &'static str,
    seed: u64,
    results: Vec<AlgoResult>,
    agreement: bool,
    /// Largest relative difference from the first result (float mode only).
    #[serde(skip_serializing_if = "Option::is_none")]
    max_relative_difference: Option<f64>,
}

enum Input<S> {
    Skew(SkewMatrix<S>),
    Square(Matrix<S>),
}

fn load<S: Scalar>(args: &ComputeArgs) -> Result<Input<S>, Failure> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", args.input.display())))?;
    match args.input.extension().and_then(|e| e.to_str()) {
        Some("skew") => Ok(Input::Skew(parse_skew(&text)?)),
        Some("mat") => Ok(Input::Square(parse_mat(&text)?)),
        _ => Err(Failure::Usage(format!(
            "{}: expected a .skew or .mat file",
            args.input.display()
        ))),
    }
}

fn parse_value<S: Scalar>(s: &str, what: &str) -> Result<S, Failure> {
    S::parse_literal(s.trim()).map_err(|e| Failure::Usage(format!("bad {what} {s:?}: {e}")))
}

fn alpha_for<S: Scalar>(arg: &str, order: usize) -> Result<Vec<S>, Failure> {
    if arg == "ones" {
        return Ok(vec![S::one(); order]);
    }
    if let Some(seed) = arg.strip_prefix("random:") {
        let seed: u64 = seed
            .parse()
            .map_err(|_| Failure::Usage(format!("bad alpha seed {seed:?}")))?;
        return Ok(random_alpha(&mut seeded_rng(seed), order));
    }
    let values = arg
        .split(',')
        .map(|t| parse_value(t, "alpha entry"))
        .collect::<Result<Vec<S>, _>>()?;
    if values.len() != order {
        return Err(Failure::Usage(format!(
            "alpha has {} entries, matrix order is {order}",
            values.len()
        )));
    }
    Ok(values)
}

fn as_skew<S: Scalar>(input: &Input<S>) -> Result<SkewMatrix<S>, Failure> {
    match input {
        Input::Skew(a) => Ok(a.clone()),
        Input::Square(m) => Ok(SkewMatrix::from_dense(m)?),
    }
}

fn as_square<S: Scalar>(input: &Input<S>) -> Matrix<S> {
    match input {
        Input::Skew(a) => a.to_dense(),
        Input::Square(m) => m.clone(),
    }
}

fn run_algo<S: Scalar>(
    args: &ComputeArgs,
    algo: Algorithm,
    input: &Input<S>,
) -> Result<AlgoResult, Failure> {
    let lambda: Option<S> = args
        .lambda
        .as_deref()
        .map(|s| parse_value(s, "lambda"))
        .transpose()?;
    if lambda.as_ref().is_some_and(Scalar::is_zero) {
        return Err(Failure::Usage("lambda must be nonzero".into()));
    }
    let default_lambda = |v: i64| lambda.clone().unwrap_or_else(|| S::from_i64(v));
    let (value, used_lambda) = match algo {
        Algorithm::Expansion => {
            let a = as_skew(input)?;
            if a.order() > MAX_EXPANSION_ORDER {
                return Err(Failure::Usage(format!(
                    "expansion is limited to order {MAX_EXPANSION_ORDER}"
                )));
            }
            (pfaffian_expansion(&a), None)
        }
        Algorithm::Elimination => (pfaffian_elimination(&as_skew(input)?), None),
        Algorithm::Glv => {
            let a = as_skew(input)?;
            let alpha = alpha_for(&args.alpha, a.order())?;
            let policy = RetryPolicy {
                retries: args.retries.unwrap_or(3),
                seed: args.seed,
                resample_lambda: false,
            };
            let (v, t) = glv_condense(&a, &alpha, &default_lambda(1), &policy)?;
            (v, Some(t.lambda.to_string()))
        }
        Algorithm::Dtoda => {
            let a = as_skew(input)?;
            let policy = RetryPolicy::resample_lambda(args.retries.unwrap_or(2), args.seed);
            let (v, t) = dtoda_condense(&a, &default_lambda(-1), &policy)?;
            (v, Some(t.lambda.to_string()))
        }
        Algorithm::Dodgson => (dodgson_determinant(&as_square(input))?, None),
        Algorithm::LambdaDet => {
            let lam = default_lambda(-1);
            (
                lambda_determinant(&as_square(input), &lam)?,
                Some(lam.to_string()),
            )
        }
    };
    Ok(AlgoResult {
        algo: algo.name().to_string(),
        quantity: quantity(algo),
        value: Some(value.to_string()),
        error: None,
        lambda: used_lambda,
    })
}

fn quantity(algo: Algorithm) -> &'static str {
    if algo.is_pfaffian() {
        "pfaffian"
    } else {
        "determinant"
    }
}

/// Exact agreement (or, in float mode, the largest relative spread) within
/// each quantity; Pfaffians are never compared with determinants.
fn agreement<S: Scalar>(results: &[(&'static str, S)]) -> (bool, Option<f64>) {
    let mut ok = true;
    let mut worst = 0.0f64;
    for q in ["pfaffian", "determinant"] {
        let vals: Vec<&S> = results
            .iter()
            .filter(|(k, _)| *k == q)
            .map(|(_, v)| v)
            .collect();
        let Some(first) = vals.first() else { continue };
        if S::EXACT {
            ok &= vals.iter().all(|v| v == first);
        } else {
            let f = first.to_f64();
            for v in &vals {
                worst = worst.max((v.to_f64() - f).abs() / f.abs().max(f64::MIN_POSITIVE));
            }
        }
    }
    if S::EXACT {
        (ok, None)
    } else {
        (worst <= 1e-8, Some(worst))
    }
}

fn run_mode<S: Scalar>(args: &ComputeArgs, mode: &'static str) -> Result<(), Failure> {
    let input = load::<S>(args)?;
    let mut results = Vec::new();
    let mut values: Vec<(&'static str, S)> = Vec::new();
    let mut failed = false;
    for &algo in &args.algo {
        match run_algo(args, algo, &input) {
            Ok(r) => {
                values.push((
                    r.quantity,
                    parse_value(r.value.as_deref().unwrap_or_default(), "value")?,
                ));
                results.push(r);
            }
            // Bad input is fatal; a run that breaks down is reported and the others continue.
            Err(Failure::Usage(msg)) => return Err(Failure::Usage(msg)),
            Err(Failure::Verification(msg)) => {
                failed = true;
                results.push(AlgoResult {
                    algo: algo.name().to_string(),
                    quantity: quantity(algo),
                    value: None,
                    error: Some(msg),
                    lambda: None,
                });
            }
        }
    }
    let (agreement, max_rel) = agreement(&values);
    let report = ComputeReport {
        input: args.input.display().to_string(),
        scalar: mode,
        seed: args.seed,
        results,
        agreement,
        max_relative_difference: max_rel,
    };
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serialises")
        );
    } else {
        for r in &report.results {
            match (&r.value, &r.error) {
                (Some(v), _) => println!("{}: {v}", r.algo),
                (None, e) => println!("{}: failed: {}", r.algo, e.as_deref().unwrap_or("?")),
            }
        }
        if report.results.len() > 1 {
            match max_rel {
                Some(rel) => println!(
                    "agreement={} (max relative difference {rel:e})",
                    report.agreement
                ),
                None => println!("agreement={}", report.agreement),
            }
        }
    }
    // Exact disagreement is a failed check; float differences are only reported.
    if failed || (S::EXACT && !agreement) {
        return Err(Failure::Verification(String::new()));
    }
    Ok(())
}

pub fn run(args: &ComputeArgs) -> Result<(), Failure> {
    if args.algo.is_empty() {
        return Err(Failure::Usage("no algorithm given".into()));
    }
    match args.scalar {
        ScalarMode::Rational => run_mode::<Rational>(args, "rational"),
        ScalarMode::Float => run_mode::<f64>(args, "float"),
    }
}
