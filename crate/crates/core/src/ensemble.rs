//! Monte Carlo ensembles of slicer trajectories.
//!
//! A trajectory's cell path depends only on its fixed interval coordinate, so
//! each particle is an independent walk on the integers with a deterministic
//! turning rule. Initial coordinates come from a counter stream keyed by
//! (seed, particle), making every run reproducible bit for bit regardless of
//! how the particles are distributed over workers.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::kahan::KahanSum;
use crate::map::{exit_direction, SlicerFamily};
use crate::rng::CounterStream;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnsembleError {
    #[error("ensemble must contain at least one particle")]
    EmptyEnsemble,
    #[error("sample time {0} exceeds the step count {1}")]
    SampleBeyondEnd(u64, u64),
}

/// Configuration of one ensemble run.
#[derive(Debug, Clone)]
pub struct EnsembleConfig {
    pub alpha: f64,
    pub particles: u64,
    pub steps: u64,
    pub seed: u64,
    /// Sorted times in `[0, steps]` at which histograms are taken.
    pub sample_times: Vec<u64>,
}

impl EnsembleConfig {
    fn validate(&self) -> Result<(), EnsembleError> {
        if self.particles == 0 {
            return Err(EnsembleError::EmptyEnsemble);
        }
        for &t in &self.sample_times {
            if t > self.steps {
                return Err(EnsembleError::SampleBeyondEnd(t, self.steps));
            }
        }
        Ok(())
    }
}

/// Cell counts of the ensemble at one sample time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalHistogram {
    pub time: u64,
    pub counts: BTreeMap<i64, u64>,
}

impl EmpiricalHistogram {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn frequency(&self, j: i64) -> f64 {
        self.counts.get(&j).copied().unwrap_or(0) as f64 / self.total() as f64
    }

    /// Signed empirical moment `Σ_j counts(j)/N · j^p`, accumulated in cell
    /// order so the value is independent of how the run was parallelized.
    pub fn moment(&self, p: u32) -> f64 {
        let mut acc = KahanSum::new();
        for (&j, &c) in &self.counts {
            acc += c as f64 * (j as f64).powi(p as i32);
        }
        acc.value() / self.total() as f64
    }

    /// Standard error of the mean of `j^p` over the ensemble.
    pub fn moment_standard_error(&self, p: u32) -> f64 {
        let n = self.total() as f64;
        let mean = self.moment(p);
        let mut var = KahanSum::new();
        for (&j, &c) in &self.counts {
            let d = (j as f64).powi(p as i32) - mean;
            var += c as f64 * d * d;
        }
        (var.value() / n).sqrt() / n.sqrt()
    }
}

/// Initial coordinate of a particle: uniform in `[0, 1)` from the
/// counter stream keyed by the run seed.
pub fn initial_coordinate(seed: u64, particle: u64) -> f64 {
    CounterStream::new(seed, &[]).unit_at(particle)
}

/// Runs the given coordinates through the turning rule and histograms the
/// occupied cells at each sample time. Exposed separately from
/// [`run_ensemble`] so callers can evolve hand-picked coordinate sets (for
/// example mirror pairs).
pub fn run_points(
    family: &SlicerFamily,
    coordinates: &[f64],
    steps: u64,
    sample_times: &[u64],
) -> Vec<EmpiricalHistogram> {
    // cell index never exceeds the elapsed step count
    let cuts: Vec<f64> = (0..=steps as i64).map(|j| family.slicer_position(j)).collect();

    let chunk = 4096usize.max(coordinates.len() / 256);
    let partials: Vec<Vec<BTreeMap<i64, u64>>> = coordinates
        .par_chunks(chunk)
        .map(|xs| {
            let mut local: Vec<BTreeMap<i64, u64>> = vec![BTreeMap::new(); sample_times.len()];
            for &x in xs {
                let mut cell = 0i64;
                let mut si = 0;
                for t in 0..=steps {
                    while si < sample_times.len() && sample_times[si] == t {
                        *local[si].entry(cell).or_insert(0) += 1;
                        si += 1;
                    }
                    if t == steps {
                        break;
                    }
                    cell += exit_direction(x, cuts[cell.unsigned_abs() as usize]);
                }
            }
            local
        })
        .collect();

    let mut merged: Vec<BTreeMap<i64, u64>> = vec![BTreeMap::new(); sample_times.len()];
    for local in partials {
        for (dst, src) in merged.iter_mut().zip(local) {
            for (cell, count) in src {
                *dst.entry(cell).or_insert(0) += count;
            }
        }
    }

    sample_times
        .iter()
        .zip(merged)
        .map(|(&time, counts)| EmpiricalHistogram { time, counts })
        .collect()
}

/// Histogram of cell indices at each sample time for `config.particles`
/// trajectories with counter-seeded initial coordinates.
pub fn run_ensemble(config: &EnsembleConfig) -> Result<Vec<EmpiricalHistogram>, EnsembleError> {
    config.validate()?;
    let family = SlicerFamily::new(config.alpha).expect("validated alpha");
    let stream = CounterStream::new(config.seed, &[]);
    let coordinates: Vec<f64> = (0..config.particles).map(|i| stream.unit_at(i)).collect();
    Ok(run_points(&family, &coordinates, config.steps, &config.sample_times))
}

/// Empirical mean square displacement at each sample time. Computed from the
/// same histograms [`run_ensemble`] returns, so the two views of a run agree
/// exactly.
pub fn msd_series(config: &EnsembleConfig) -> Result<Vec<(u64, f64)>, EnsembleError> {
    empirical_moment(config, 2)
}

/// Empirical signed `p`-th moment of the displacement at each sample time.
pub fn empirical_moment(
    config: &EnsembleConfig,
    p: u32,
) -> Result<Vec<(u64, f64)>, EnsembleError> {
    let hists = run_ensemble(config)?;
    Ok(hists.iter().map(|h| (h.time, h.moment(p))).collect())
}
