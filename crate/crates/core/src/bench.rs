//! Wall-clock timing of the algorithms and log-log growth fits.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::dodgson::{dodgson_determinant, lambda_determinant};
use crate::dtoda_condense::dtoda_run;
use crate::error::{Error, Result};
use crate::glv_condense::glv_run;
use rand::Rng;

use crate::random::seeded_rng;
use crate::scalar_core::matrix::{Matrix, SkewMatrix};
use crate::scalar_core::pfaffian::{pfaffian_elimination_in_place, pfaffian_expansion, MAX_EXPANSION_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Expansion,
    Elimination,
    Glv,
    Dtoda,
    Dodgson,
    LambdaDet,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Expansion,
        Algorithm::Elimination,
        Algorithm::Glv,
        Algorithm::Dtoda,
        Algorithm::Dodgson,
        Algorithm::LambdaDet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Expansion => "expansion",
            Algorithm::Elimination => "elimination",
            Algorithm::Glv => "glv",
            Algorithm::Dtoda => "dtoda",
            Algorithm::Dodgson => "dodgson",
            Algorithm::LambdaDet => "lambda-det",
        }
    }

    /// Whether the input is a skew matrix (Pfaffian) rather than a square one.
    pub fn is_pfaffian(self) -> bool {
        matches!(self, Algorithm::Expansion | Algorithm::Elimination | Algorithm::Glv | Algorithm::Dtoda)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown algorithm '{s}'")))
    }
}

/// Median time per call at one size.
#[derive(Clone, Debug, PartialEq)]
pub struct Timing {
    pub algorithm: Algorithm,
    pub size: usize,
    pub median: Duration,
    /// Calls per timed sample (small sizes are batched).
    pub batch: usize,
    /// Value computed on the instance; equal across runs with the same seed.
    pub value: Option<f64>,
    /// Why the size was skipped (e.g. a zero divisor), if it was.
    pub failure: Option<String>,
}

/// Smallest sample worth timing; faster calls are batched up to this.
const MIN_SAMPLE: Duration = Duration::from_millis(2);

/// Times `algorithm` in float mode on seeded random inputs of each size
/// (matrix order), `trials` samples per size.
pub fn time_algorithm(algorithm: Algorithm, sizes: &[usize], trials: usize, seed: u64) -> Result<Vec<Timing>> {
    let mut rng = seeded_rng(seed);
    let mut out = Vec::with_capacity(sizes.len());
    for &size in sizes {
        if algorithm.is_pfaffian() && size % 2 != 0 {
            return Err(Error::OddOrder(size));
        }
        if algorithm == Algorithm::Expansion && size > MAX_EXPANSION_ORDER {
            return Err(Error::Parameter(format!("expansion is limited to order {MAX_EXPANSION_ORDER}")));
        }
        // Continuous entries keep exact zero divisors out of the timings.
        let skew_order = if algorithm.is_pfaffian() { size } else { 0 };
        let skew = SkewMatrix::from_fn(skew_order, |_, _| rng.gen_range(-1.0..1.0))?;
        let square = Matrix::from_fn(size, size, |_, _| rng.gen_range(-1.0..1.0));
        let alpha: Vec<f64> = (0..size).map(|_| rng.gen_range(0.5..1.5)).collect();
        let dense = skew.to_dense();
        let mut buffer: Vec<f64> = Vec::with_capacity(size * size);

        let mut call = || -> Result<f64> {
            Ok(match algorithm {
                Algorithm::Expansion => pfaffian_expansion(&skew),
                Algorithm::Elimination => {
                    buffer.clear();
                    buffer.extend_from_slice(dense.as_slice());
                    pfaffian_elimination_in_place(size, &mut buffer)
                }
                Algorithm::Glv => glv_run(&skew, &alpha, &1.0)?.0,
                Algorithm::Dtoda => dtoda_run(&skew, &-1.0)?.0,
                Algorithm::Dodgson => dodgson_determinant(&square)?,
                Algorithm::LambdaDet => lambda_determinant(&square, &-1.0)?,
            })
        };

        let value = match call() {
            Ok(v) => v,
            Err(e) => {
                let failure = Some(e.to_string());
                out.push(Timing { algorithm, size, median: Duration::ZERO, batch: 0, value: None, failure });
                continue;
            }
        };

        // Calibrate the batch so one sample lasts at least MIN_SAMPLE.
        let mut batch = 1usize;
        loop {
            let start = Instant::now();
            for _ in 0..batch {
                std::hint::black_box(call()?);
            }
            if start.elapsed() >= MIN_SAMPLE || batch >= 1 << 20 {
                break;
            }
            batch *= 2;
        }
        let mut samples = Vec::with_capacity(trials.max(1));
        for _ in 0..trials.max(1) {
            let start = Instant::now();
            for _ in 0..batch {
                std::hint::black_box(call()?);
            }
            samples.push(start.elapsed() / batch as u32);
        }
        samples.sort();
        out.push(Timing { algorithm, size, median: samples[samples.len() / 2], batch, value: Some(value), failure: None });
    }
    Ok(out)
}

/// Least-squares slope of `log t` against `log size` over the sizes that ran.
pub fn fit_loglog_slope(timings: &[Timing]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = timings
        .iter()
        .filter(|t| t.failure.is_none())
        .map(|t| ((t.size as f64).ln(), t.median.as_secs_f64().max(1e-12).ln()))
        .collect();
    slope(&pts)
}

/// Ordinary least-squares slope of `y` on `x`.
pub fn slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::Parameter("a slope needs at least two points".into()));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Parameter("sizes must differ to fit a slope".into()));
    }
    Ok(sxy / sxx)
}
