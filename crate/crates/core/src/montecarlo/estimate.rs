use std::thread;

use crate::rng::{stream_rng, StreamRng};
use crate::{Error, Result};

/// Sampling budget and stream selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub samples: u64,
    pub workers: usize,
    /// Samples per variance block.
    pub batch: u64,
}

impl SamplerConfig {
    /// Single-worker configuration with a default block size.
    pub fn new(seed: u64, samples: u64) -> Self {
        Self {
            seed,
            samples,
            workers: 1,
            batch: (samples / 100).clamp(1, 10_000),
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_batch(mut self, batch: u64) -> Self {
        self.batch = batch;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::invalid("sample count must be > 0"));
        }
        if self.workers == 0 {
            return Err(Error::invalid("worker count must be >= 1"));
        }
        if self.batch == 0 || self.batch > self.samples {
            return Err(Error::invalid(format!(
                "batch must satisfy 1 <= batch <= samples, got batch {} for {} samples",
                self.batch, self.samples
            )));
        }
        Ok(())
    }
}

/// A Monte Carlo mean with its standard error and provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MCEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

impl MCEstimate {
    /// `|self.mean − value|` in units of the standard error (0 when both
    /// the deviation and the error vanish).
    pub fn sigmas_from(&self, value: f64) -> f64 {
        let dev = (self.mean - value).abs();
        if dev == 0.0 {
            0.0
        } else {
            dev / self.stderr
        }
    }

    /// Deviation from another estimate in units of the combined error.
    pub fn sigmas_between(&self, other: &MCEstimate) -> f64 {
        let dev = (self.mean - other.mean).abs();
        if dev == 0.0 {
            0.0
        } else {
            dev / self.stderr.hypot(other.stderr)
        }
    }

    /// Whether `value` lies within `sigmas` standard errors. A rounding floor
    /// of 1e−12 relative keeps zero-variance estimators comparable.
    pub fn consistent_with(&self, value: f64, sigmas: f64) -> bool {
        let floor = 1e-12 * self.mean.abs().max(value.abs());
        (self.mean - value).abs() <= sigmas * self.stderr + floor
    }

    /// The estimate scaled by a constant factor.
    pub fn scaled(&self, factor: f64) -> MCEstimate {
        MCEstimate {
            mean: self.mean * factor,
            stderr: self.stderr * factor.abs(),
            ..*self
        }
    }
}

/// Combine estimates of the same integrand: sample-weighted mean, standard
/// errors added in quadrature with the same weights.
pub fn merge_estimates(parts: &[MCEstimate]) -> Result<MCEstimate> {
    let first = parts.first().ok_or_else(|| Error::invalid("no estimates to merge"))?;
    if parts.len() == 1 {
        return Ok(*first);
    }
    let total: u64 = parts.iter().map(|p| p.samples).sum();
    let n = total as f64;
    let mean = parts.iter().map(|p| p.samples as f64 * p.mean).sum::<f64>() / n;
    let var = parts
        .iter()
        .map(|p| {
            let w = p.samples as f64 / n;
            w * w * p.stderr * p.stderr
        })
        .sum::<f64>();
    Ok(MCEstimate {
        mean,
        stderr: var.sqrt(),
        samples: total,
        seed: first.seed,
        workers: parts.iter().map(|p| p.workers).sum(),
    })
}

fn worker_estimate<S, F>(state: &mut S, sample: &F, rng: &mut StreamRng, samples: u64, batch: u64, seed: u64) -> MCEstimate
where
    F: Fn(&mut S, &mut StreamRng) -> f64,
{
    let mut blocks: Vec<(u64, f64)> = Vec::with_capacity((samples / batch + 1) as usize);
    let mut sum_sq = 0.0;
    let mut done = 0;
    while done < samples {
        let count = batch.min(samples - done);
        let mut sum = 0.0;
        for _ in 0..count {
            let v = sample(state, rng);
            sum += v;
            sum_sq += v * v;
        }
        blocks.push((count, sum));
        done += count;
    }
    let n = samples as f64;
    let mean = blocks.iter().map(|b| b.1).sum::<f64>() / n;
    let var = if blocks.len() >= 2 {
        blocks
            .iter()
            .map(|&(c, s)| {
                let d = s / c as f64 - mean;
                c as f64 * d * d
            })
            .sum::<f64>()
            / (blocks.len() - 1) as f64
    } else if samples >= 2 {
        ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    MCEstimate {
        mean,
        stderr: (var / n).sqrt(),
        samples,
        seed,
        workers: 1,
    }
}

/// Mean of `sample` over the configured budget.
///
/// Worker `w` draws from stream `stream_base + w`; results are merged in
/// worker order, so the outcome depends only on `(seed, samples, workers,
/// batch, stream_base)`.
pub fn estimate_mean<F>(cfg: &SamplerConfig, stream_base: u64, sample: F) -> Result<MCEstimate>
where
    F: Fn(&mut StreamRng) -> f64 + Sync,
{
    estimate_mean_with(cfg, stream_base, || (), |_, rng| sample(rng))
}

/// [`estimate_mean`] with per-worker scratch state built by `init`.
pub fn estimate_mean_with<S, I, F>(cfg: &SamplerConfig, stream_base: u64, init: I, sample: F) -> Result<MCEstimate>
where
    I: Fn() -> S + Sync,
    F: Fn(&mut S, &mut StreamRng) -> f64 + Sync,
{
    cfg.validate()?;
    let workers = (cfg.workers as u64).min(cfg.samples);
    let share = |w: u64| cfg.samples / workers + u64::from(w < cfg.samples % workers);
    let run = |w: u64| {
        let mut rng = stream_rng(cfg.seed, stream_base + w);
        let mut state = init();
        let n = share(w);
        worker_estimate(&mut state, &sample, &mut rng, n, cfg.batch.min(n), cfg.seed)
    };

    let parts: Vec<MCEstimate> = if workers == 1 {
        vec![run(0)]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..workers).map(|w| scope.spawn(move || run(w))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sampling worker panicked"))
                .collect()
        })
    };
    let mut merged = merge_estimates(&parts)?;
    merged.workers = workers as usize;
    Ok(merged)
}
