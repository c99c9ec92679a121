//! `bench`: float-mode timings and growth exponents.

use serde::Serialize;

use pfcondense::bench::{fit_loglog_slope, time_algorithm};

use crate::{BenchArgs, Failure, ScalarMode};

#[derive(Serialize)]
struct Row {
    size: usize,
    median_seconds: f64,
    batch: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<String>,
}

#[derive(Serialize)]
struct AlgoBench {
    algo: String,
    rows: Vec<Row>,
    /// Least-squares slope of log time against log size; absent with fewer than two usable sizes.
    slope: Option<f64>,
}

#[derive(Serialize)]
struct BenchReport {
    seed: u64,
    trials: usize,
    results: Vec<AlgoBench>,
}

pub fn run(args: &BenchArgs) -> Result<(), Failure> {
    if args.scalar != ScalarMode::Float {
        return Err(Failure::Usage("bench runs in float mode only".into()));
    }
    let mut results = Vec::new();
    for &algo in &args.algo {
        let timings = time_algorithm(algo, &args.sizes.0, args.trials, args.seed)?;
        let slope = fit_loglog_slope(&timings).ok();
        let rows = timings
            .into_iter()
            .map(|t| Row {
                size: t.size,
                median_seconds: t.median.as_secs_f64(),
                batch: t.batch,
                value: t.value,
                failure: t.failure,
            })
            .collect();
        results.push(AlgoBench {
            algo: algo.name().to_string(),
            rows,
            slope,
        });
    }
    let report = BenchReport {
        seed: args.seed,
        trials: args.trials,
        results,
    };
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serialises")
        );
        return Ok(());
    }
    for a in &report.results {
        println!("{}", a.algo);
        for r in &a.rows {
            match (&r.failure, r.value) {
                (Some(f), _) => println!("  size {:>4}  skipped: {f}", r.size),
                (None, v) => println!(
                    "  size {:>4}  median {:>12.3e} s  batch {:>7}  value {:.6e}",
                    r.size,
                    r.median_seconds,
                    r.batch,
                    v.unwrap_or(f64::NAN)
                ),
            }
        }
        match a.slope {
            Some(s) => println!("  log-log slope {s:.2}"),
            None => println!("  log-log slope n/a"),
        }
    }
    Ok(())
}
