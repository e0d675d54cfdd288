//! Event-driven Lévy walk in a quenched random array of scatterers.
//!
//! Scatterers sit on the line with independent Pareto-distributed gaps; a
//! walker flies ballistically between them and is transmitted or reflected
//! with probability 1/2 at each arrival. Environment randomness (the gaps)
//! and thermal randomness (the coins) come from separate counter streams, so
//! a run is reproducible regardless of evaluation order, and lazily extending
//! an environment never changes the part already generated.

use rayon::prelude::*;
use thiserror::Error;

use crate::kahan::KahanSum;
use crate::rng::CounterStream;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LevyError {
    #[error("gap exponent beta must be positive, got {0}")]
    InvalidBeta(f64),
    #[error("minimum gap r0 must be positive, got {0}")]
    InvalidMinGap(f64),
    #[error("inverse-CDF argument must lie in (0, 1), got {0}")]
    InvalidUniform(f64),
    #[error("walk configuration invalid: {0}")]
    InvalidConfig(String),
    #[error("moment order p = {p} is marginal at beta = {beta}: no single scaling branch applies")]
    MarginalExponent { beta: f64, p: f64 },
}

/// Inverse-CDF draw from the gap density `β r0^β r^(−β−1)` on `[r0, ∞)`:
/// `r = r0 · u^(−1/β)`.
pub fn sample_gap(beta: f64, r0: f64, u: f64) -> Result<f64, LevyError> {
    if !beta.is_finite() || beta <= 0.0 {
        return Err(LevyError::InvalidBeta(beta));
    }
    if !r0.is_finite() || r0 <= 0.0 {
        return Err(LevyError::InvalidMinGap(r0));
    }
    if !(u > 0.0 && u < 1.0) {
        return Err(LevyError::InvalidUniform(u));
    }
    Ok(r0 * u.powf(-1.0 / beta))
}

/// Frozen scatterer array on the line, extended lazily outward from the
/// origin. Site `i > 0` is the i-th scatterer to the right, `i < 0` to the
/// left; the origin itself is not a scatterer.
#[derive(Debug, Clone)]
pub struct QuenchedEnvironment {
    beta: f64,
    r0: f64,
    seed: u64,
    right: Vec<f64>,
    left: Vec<f64>,
}

impl QuenchedEnvironment {
    pub fn new(beta: f64, r0: f64, seed: u64) -> Result<Self, LevyError> {
        if !beta.is_finite() || beta <= 0.0 {
            return Err(LevyError::InvalidBeta(beta));
        }
        if !r0.is_finite() || r0 <= 0.0 {
            return Err(LevyError::InvalidMinGap(r0));
        }
        Ok(Self {
            beta,
            r0,
            seed,
            right: Vec::new(),
            left: Vec::new(),
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    fn gap(&self, side: u64, index: u64) -> f64 {
        let u = CounterStream::new(self.seed, &[side]).open_unit_at(index);
        sample_gap(self.beta, self.r0, u).expect("validated parameters")
    }

    /// Position of scatterer `site != 0`, generating any missing gaps.
    /// Positions are prefix sums of counter-stream gaps, so the value is
    /// independent of the order in which sites were first requested.
    pub fn position(&mut self, site: i64) -> f64 {
        assert!(site != 0, "the origin is not a scatterer");
        if site > 0 {
            let k = site as usize;
            while self.right.len() < k {
                let prev = self.right.last().copied().unwrap_or(0.0);
                self.right.push(prev + self.gap(0, self.right.len() as u64));
            }
            self.right[k - 1]
        } else {
            let k = (-site) as usize;
            while self.left.len() < k {
                let prev = self.left.last().copied().unwrap_or(0.0);
                self.left.push(prev - self.gap(1, self.left.len() as u64));
            }
            self.left[k - 1]
        }
    }
}

/// Budgets and sampling grid of a walk ensemble.
#[derive(Debug, Clone)]
pub struct WalkConfig {
    pub velocity: f64,
    pub t_max: f64,
    /// Sorted sample times in `(0, t_max]`.
    pub sample_times: Vec<f64>,
    pub n_env: u64,
    pub n_walkers: u64,
    pub seed: u64,
}

impl WalkConfig {
    fn validate(&self) -> Result<(), LevyError> {
        if !(self.velocity > 0.0) || !(self.t_max > 0.0) {
            return Err(LevyError::InvalidConfig(
                "velocity and t_max must be positive".into(),
            ));
        }
        if self.n_env == 0 || self.n_walkers == 0 {
            return Err(LevyError::InvalidConfig(
                "need at least one environment and one walker".into(),
            ));
        }
        if self.sample_times.is_empty() {
            return Err(LevyError::InvalidConfig("no sample times".into()));
        }
        for w in self.sample_times.windows(2) {
            if w[1] < w[0] {
                return Err(LevyError::InvalidConfig("sample times not sorted".into()));
            }
        }
        let last = *self.sample_times.last().unwrap();
        let first = self.sample_times[0];
        if first <= 0.0 || last > self.t_max {
            return Err(LevyError::InvalidConfig(
                "sample times must lie in (0, t_max]".into(),
            ));
        }
        Ok(())
    }

    /// Geometric sample grid with `per_decade` points per decade ending at
    /// `t_max`, spanning `decades` decades.
    pub fn geometric_times(t_max: f64, decades: f64, per_decade: usize) -> Vec<f64> {
        let count = (decades * per_decade as f64).round() as usize;
        let t_min = t_max / 10f64.powf(decades);
        (0..=count)
            .map(|k| {
                if k == count {
                    t_max
                } else {
                    t_min * 10f64.powf(decades * k as f64 / count as f64)
                }
            })
            .collect()
    }
}

/// Positions and distinct-scatterer counts of one walk at the sample times.
#[derive(Debug, Clone)]
pub struct WalkTrace {
    pub positions: Vec<f64>,
    pub visited: Vec<u64>,
}

/// Event-driven walk through `env`, with the transmit/reflect decisions
/// supplied by `coin` (event 0 picks the initial direction; `true` keeps the
/// current direction). Positions at sample times are interpolated exactly
/// within the current ballistic flight.
pub fn simulate_walk_with_coins(
    env: &mut QuenchedEnvironment,
    cfg: &WalkConfig,
    mut coin: impl FnMut(u64) -> bool,
) -> WalkTrace {
    let samples = &cfg.sample_times;
    let mut positions = vec![0.0; samples.len()];
    let mut visited = vec![0u64; samples.len()];

    let mut t = 0.0f64;
    let mut pos = 0.0f64;
    let mut site = 0i64;
    let mut dir: i64 = if coin(0) { 1 } else { -1 };
    let mut event = 1u64;
    let (mut leftmost, mut rightmost) = (0i64, 0i64);
    let mut si = 0usize;

    while si < samples.len() {
        let next_site = if site + dir == 0 { dir } else { site + dir };
        let target = env.position(next_site);
        let arrival = t + (target - pos).abs() / cfg.velocity;

        while si < samples.len() && samples[si] < arrival {
            positions[si] = pos + dir as f64 * cfg.velocity * (samples[si] - t);
            visited[si] = (rightmost - leftmost) as u64;
            si += 1;
        }
        if si >= samples.len() {
            break;
        }

        t = arrival;
        pos = target;
        site = next_site;
        rightmost = rightmost.max(site.max(0));
        leftmost = leftmost.min(site.min(0));
        if !coin(event) {
            dir = -dir;
        }
        event += 1;
    }

    WalkTrace { positions, visited }
}

/// Walk with the production coin stream keyed by (environment seed, walker).
pub fn simulate_walk(
    env: &mut QuenchedEnvironment,
    cfg: &WalkConfig,
    walker: u64,
) -> WalkTrace {
    let coins = CounterStream::new(env.seed, &[2, walker]);
    simulate_walk_with_coins(env, cfg, |event| coins.coin_at(event))
}

fn env_seed(cfg: &WalkConfig, env_index: u64) -> u64 {
    CounterStream::new(cfg.seed, &[3]).u64_at(env_index)
}

struct EnsembleAccumulators {
    moment: Vec<f64>,
    visited: Vec<f64>,
}

/// Double average over environments and walkers; per-environment partial sums
/// are reduced in environment order, so the result does not depend on the
/// degree of parallelism.
fn run_walk_ensemble(
    cfg: &WalkConfig,
    beta: f64,
    r0: f64,
    p: f64,
) -> Result<EnsembleAccumulators, LevyError> {
    cfg.validate()?;
    if !beta.is_finite() || beta <= 0.0 {
        return Err(LevyError::InvalidBeta(beta));
    }
    if !r0.is_finite() || r0 <= 0.0 {
        return Err(LevyError::InvalidMinGap(r0));
    }

    let s = cfg.sample_times.len();
    let partials: Vec<(Vec<f64>, Vec<f64>)> = (0..cfg.n_env)
        .into_par_iter()
        .map(|e| {
            let mut env = QuenchedEnvironment::new(beta, r0, env_seed(cfg, e))
                .expect("validated parameters");
            let mut m = vec![KahanSum::new(); s];
            let mut v = vec![KahanSum::new(); s];
            for w in 0..cfg.n_walkers {
                let trace = simulate_walk(&mut env, cfg, w);
                for i in 0..s {
                    m[i] += trace.positions[i].abs().powf(p);
                    v[i] += trace.visited[i] as f64;
                }
            }
            (
                m.into_iter().map(|k| k.value()).collect(),
                v.into_iter().map(|k| k.value()).collect(),
            )
        })
        .collect();

    let total = (cfg.n_env * cfg.n_walkers) as f64;
    let mut moment = vec![KahanSum::new(); s];
    let mut visited = vec![KahanSum::new(); s];
    for (m, v) in partials {
        for i in 0..s {
            moment[i] += m[i];
            visited[i] += v[i];
        }
    }
    Ok(EnsembleAccumulators {
        moment: moment.into_iter().map(|k| k.value() / total).collect(),
        visited: visited.into_iter().map(|k| k.value() / total).collect(),
    })
}

/// Mean `⟨|r(t)|^p⟩` over the quenched ensemble at the sample times.
pub fn ensemble_moments(
    cfg: &WalkConfig,
    beta: f64,
    r0: f64,
    p: f64,
) -> Result<Vec<(f64, f64)>, LevyError> {
    let acc = run_walk_ensemble(cfg, beta, r0, p)?;
    Ok(cfg.sample_times.iter().copied().zip(acc.moment).collect())
}

/// Mean number of distinct scatterers visited by each sample time.
pub fn visited_sites(cfg: &WalkConfig, beta: f64, r0: f64) -> Result<Vec<(f64, f64)>, LevyError> {
    let acc = run_walk_ensemble(cfg, beta, r0, 2.0)?;
    Ok(cfg.sample_times.iter().copied().zip(acc.visited).collect())
}

/// Map parameter that makes the slicer's mean square displacement scale like
/// the walk's: `β²/(1+β)` up to `β = 1`, `β − 1/2` up to `β = 3/2`, then 1.
pub fn alpha_from_beta(beta: f64) -> f64 {
    if beta <= 1.0 {
        beta * beta / (1.0 + beta)
    } else if beta <= 1.5 {
        beta - 0.5
    } else {
        1.0
    }
}

/// Scaling exponent of `⟨r^p(t)⟩` in the single-long-jump regime
/// `p > max(β, 2β − 1)`: `(p(1+β) − β²)/(1+β)` below `β = 1`, `1/2 + p − β`
/// above. The two expressions agree at `β = 1`.
pub fn single_jump_moment_exponent(beta: f64, p: f64) -> f64 {
    if beta <= 1.0 {
        (p * (1.0 + beta) - beta * beta) / (1.0 + beta)
    } else {
        0.5 + p - beta
    }
}

/// Scaling exponent of `⟨r^p(t)⟩`, selecting among the four regimes.
/// The marginal lines `β = 1`, `p = β` (β < 1) and `p = 2β − 1` (β > 1) have
/// no single power law and are flagged instead of interpolated.
pub fn predicted_moment_exponent(beta: f64, p: f64) -> Result<f64, LevyError> {
    if !beta.is_finite() || beta <= 0.0 {
        return Err(LevyError::InvalidBeta(beta));
    }
    if !(p > 0.0) {
        return Err(LevyError::InvalidConfig("moment order must be positive".into()));
    }
    if beta == 1.0 || (beta < 1.0 && p == beta) || (beta > 1.0 && p == 2.0 * beta - 1.0) {
        return Err(LevyError::MarginalExponent { beta, p });
    }
    Ok(if beta < 1.0 {
        if p < beta {
            p / (1.0 + beta)
        } else {
            single_jump_moment_exponent(beta, p)
        }
    } else if p < 2.0 * beta - 1.0 {
        p / 2.0
    } else {
        single_jump_moment_exponent(beta, p)
    })
}

/// Exponent of the visited-sites growth `N(t) ~ t^x`: `β/(1+β)` for `β < 1`,
/// `1/2` otherwise.
pub fn visited_sites_exponent(beta: f64) -> f64 {
    if beta < 1.0 {
        beta / (1.0 + beta)
    } else {
        0.5
    }
}
