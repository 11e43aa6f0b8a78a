//! Seeded Monte Carlo estimators.
//!
//! Random streams: trial `i` of a run with master seed `s` draws from
//! `ChaCha8Rng::seed_from_u64(s)` switched to stream `i` via `set_stream`.
//! Each trial owns its stream, so a report depends only on the inputs and
//! `s`, never on the number of workers or their scheduling. Within a trial,
//! rounds consume randomness as documented on [`crate::pccr::sample_step`].

use std::collections::{BTreeMap, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forcing::contains_zfs;
use crate::graph::Graph;
use crate::metrics::least_k_with_zfs;
use crate::pccr::SamplerCache;
use crate::vertex_set::{ColorState, VertexSet};

/// Two-sided 95% standard normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;
/// Two-sided 99% standard normal quantile.
pub const Z_99: f64 = 2.575_829_303_548_901;

const CHUNK: u64 = 4096;

/// The random stream of one trial.
pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

/// Wilson score interval for `successes` out of `trials` at quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = (center - half).clamp(0.0, 1.0).min(p);
    let hi = (center + half).clamp(0.0, 1.0).max(p);
    (lo, hi)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub trials: u64,
    pub successes: u64,
    pub point: f64,
    /// 95% Wilson interval.
    pub ci_low: f64,
    pub ci_high: f64,
    pub k0: usize,
    pub master_seed: u64,
}

impl McEstimate {
    /// Binomial standard error of the point estimate.
    pub fn std_error(&self) -> f64 {
        (self.point * (1.0 - self.point) / self.trials as f64).sqrt()
    }
}

fn chunks(trials: u64) -> Vec<(u64, u64)> {
    (0..trials.div_ceil(CHUNK))
        .map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(trials)))
        .collect()
}

/// Estimates `P_A(G)`: each trial runs exactly `k0` rounds and succeeds iff
/// its final black set contains a zero forcing set.
pub fn estimate_p_a(g: &Graph, a: &VertexSet, trials: u64, master_seed: u64) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let k0 = least_k_with_zfs(g, a)?;
    let successes: u64 = chunks(trials)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut sampler = SamplerCache::new(g);
            let mut verdicts: HashMap<ColorState, bool> = HashMap::new();
            let mut wins = 0;
            for trial in lo..hi {
                let mut rng = trial_rng(master_seed, trial);
                let mut s = a.clone();
                for _ in 0..k0 {
                    s = sampler.step(&s, &mut rng);
                }
                let ok = match verdicts.get(&s) {
                    Some(&v) => v,
                    None => {
                        let v = contains_zfs(g, &s);
                        if verdicts.len() < 1 << 16 {
                            verdicts.insert(s, v);
                        }
                        v
                    }
                };
                wins += ok as u64;
            }
            wins
        })
        .sum();
    let (ci_low, ci_high) = wilson_interval(successes, trials, Z_95);
    Ok(McEstimate {
        trials,
        successes,
        point: successes as f64 / trials as f64,
        ci_low,
        ci_high,
        k0,
        master_seed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbsorptionEstimate {
    pub trials: u64,
    pub master_seed: u64,
    pub round_cap: usize,
    /// Trials that reached the all-black state within the cap.
    pub absorbed: u64,
    pub capped: u64,
    pub capped_fraction: f64,
    /// Mean and sample standard deviation of the absorption round over
    /// absorbed trials; `None` when too few trials absorbed.
    pub mean_rounds: Option<f64>,
    pub std_rounds: Option<f64>,
    /// Absorption round -> number of trials.
    pub histogram: BTreeMap<usize, u64>,
}

impl AbsorptionEstimate {
    /// Standard error of `mean_rounds`.
    pub fn std_error(&self) -> Option<f64> {
        Some(self.std_rounds? / (self.absorbed as f64).sqrt())
    }
}

/// Runs rounds from `a` until every vertex is black or `round_cap` rounds
/// have passed.
pub fn estimate_absorption_time(
    g: &Graph,
    a: &VertexSet,
    trials: u64,
    master_seed: u64,
    round_cap: usize,
) -> Result<AbsorptionEstimate> {
    g.check_set(a)?;
    if a.is_empty() {
        return Err(Error::EmptySeed);
    }
    if trials == 0 || round_cap == 0 {
        return Err(Error::InvalidArgument(
            "trials and round cap must be at least 1".into(),
        ));
    }
    let partials: Vec<(BTreeMap<usize, u64>, u64)> = chunks(trials)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut sampler = SamplerCache::new(g);
            let mut hist = BTreeMap::new();
            let mut capped = 0;
            for trial in lo..hi {
                let mut rng = trial_rng(master_seed, trial);
                let mut s = a.clone();
                let mut rounds = 0;
                while !s.is_full() && rounds < round_cap {
                    s = sampler.step(&s, &mut rng);
                    rounds += 1;
                }
                if s.is_full() {
                    *hist.entry(rounds).or_insert(0) += 1;
                } else {
                    capped += 1;
                }
            }
            (hist, capped)
        })
        .collect();

    let mut histogram = BTreeMap::new();
    let mut capped = 0;
    for (h, c) in partials {
        capped += c;
        for (r, n) in h {
            *histogram.entry(r).or_insert(0) += n;
        }
    }
    let absorbed = trials - capped;
    let (sum, sumsq) = histogram.iter().fold((0u128, 0u128), |(s, q), (&r, &n)| {
        let (r, n) = (r as u128, n as u128);
        (s + r * n, q + r * r * n)
    });
    let mean_rounds = (absorbed > 0).then(|| sum as f64 / absorbed as f64);
    let std_rounds = (absorbed > 1).then(|| {
        let m = sum as f64 / absorbed as f64;
        let var = (sumsq as f64 - absorbed as f64 * m * m) / (absorbed - 1) as f64;
        var.max(0.0).sqrt()
    });
    Ok(AbsorptionEstimate {
        trials,
        master_seed,
        round_cap,
        absorbed,
        capped,
        capped_fraction: capped as f64 / trials as f64,
        mean_rounds,
        std_rounds,
        histogram,
    })
}
