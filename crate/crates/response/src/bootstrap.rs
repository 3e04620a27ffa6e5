//! Bootstrap resampling over events.

use crate::curve::N_LAGS;
use crate::ResponseError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Resampling parameters. Each resample draws its own RNG stream from the
/// master seed, so results are independent of evaluation order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BootstrapConfig {
    pub n_resamples: usize,
    pub seed: u64,
}

impl BootstrapConfig {
    pub fn new(n_resamples: usize, seed: u64) -> Self {
        Self { n_resamples, seed }
    }
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        Self {
            n_resamples: 200,
            seed: 0,
        }
    }
}

/// Per-lag standard deviation across `n_resamples` recomputations of the
/// mean curve, each over events drawn with replacement. Zero events yield
/// all-zero sigmas.
pub fn bootstrap_sigma(
    per_event: &[[f64; N_LAGS]],
    cfg: &BootstrapConfig,
) -> Result<[f64; N_LAGS], ResponseError> {
    if cfg.n_resamples < 2 {
        return Err(ResponseError::TooFewResamples(cfg.n_resamples));
    }
    let mut sigmas = [0.0; N_LAGS];
    let n = per_event.len();
    if n == 0 {
        return Ok(sigmas);
    }

    let mut sum = [0.0f64; N_LAGS];
    let mut sum_sq = [0.0f64; N_LAGS];
    for resample in 0..cfg.n_resamples {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(resample as u64 + 1);

        let mut mean = [0.0f64; N_LAGS];
        for _ in 0..n {
            let pick = &per_event[rng.gen_range(0..n)];
            for (m, c) in mean.iter_mut().zip(pick) {
                *m += c;
            }
        }
        for (idx, m) in mean.iter_mut().enumerate() {
            *m /= n as f64;
            sum[idx] += *m;
            sum_sq[idx] += *m * *m;
        }
    }

    let r = cfg.n_resamples as f64;
    for idx in 0..N_LAGS {
        let mean_of_means = sum[idx] / r;
        // Sample variance across resamples.
        let var = (sum_sq[idx] - r * mean_of_means * mean_of_means) / (r - 1.0);
        sigmas[idx] = var.max(0.0).sqrt();
    }
    Ok(sigmas)
}
