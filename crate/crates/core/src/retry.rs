//! Retry policy for condensation runs that hit a zero divisor.

/// How a failed run is retried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetryPolicy {
    /// Extra attempts after the first.
    pub retries: usize,
    /// Seed of the generator that resamples parameters.
    pub seed: u64,
    /// Also resample `λ` (as `±p/q`) on each retry.
    pub resample_lambda: bool,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        RetryPolicy { retries: 3, seed: 0, resample_lambda: false }
    }
}

impl RetryPolicy {
    pub fn none() -> Self {
        RetryPolicy { retries: 0, ..Self::default() }
    }

    /// Default for the D-type scheme, which has no `alpha`: two resamples of `λ`.
    pub fn resample_lambda(retries: usize, seed: u64) -> Self {
        RetryPolicy { retries, seed, resample_lambda: true }
    }
}
