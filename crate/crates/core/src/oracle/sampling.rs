use rand::distributions::{Distribution as _, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::joint_law::joint_law;
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::heyde::LinearFormsSpec;

pub const SAMPLER_ALGORITHM: &str = "ChaCha8 (rand_chacha), seeded from u64, stream = partition index";

#[derive(Clone, Copy, Debug)]
pub struct SampleConfig {
    pub trials: u64,
    pub seed: u64,
    /// Number of independent streams the trials are split into. The report
    /// depends on this count but not on how many threads run them.
    pub partitions: u64,
}

impl SampleConfig {
    pub const DEFAULT_PARTITIONS: u64 = 8;

    pub fn new(trials: u64, seed: u64) -> Self {
        SampleConfig { trials, seed, partitions: Self::DEFAULT_PARTITIONS }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleReport {
    pub algorithm: String,
    pub seed: u64,
    pub trials: u64,
    pub partitions: u64,
    /// Empirical law of `(L_1, L_2)` against the exact law.
    pub tv_to_exact: f64,
    /// Sum over cells of five standard deviations of the empirical mass,
    /// halved: a generous ceiling for `tv_to_exact`.
    pub tv_band: f64,
    /// Empirical `(L_1, L_2)` against empirical `(L_1, −L_2)`.
    pub tv_empirical_mirror: f64,
    /// Exact `(L_1, L_2)` against exact `(L_1, −L_2)`.
    pub tv_exact_mirror: f64,
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
    /// Draws landing where the exact law has no mass.
    pub impossible_draws: u64,
    pub within_band: bool,
}

/// Draws `(L_1, L_2)` repeatedly and compares the histogram with the exact
/// law. Partition `w` uses the stream `w` of a generator keyed by `seed`,
/// and counts are merged by integer addition, so the result is identical
/// for any thread count.
pub fn sample_check(g: &Group, spec: &LinearFormsSpec, mus: &[Distribution], config: SampleConfig) -> Result<SampleReport> {
    if config.trials == 0 || config.partitions == 0 {
        return Err(Error::Precondition("trials and partitions must be positive".into()));
    }
    let exact = joint_law(g, spec, mus)?;
    let samplers = mus
        .iter()
        .map(|mu| WeightedIndex::new(mu.probs()).map_err(|e| Error::InvalidDistribution(e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let n = g.order();
    let cells = n * n;

    let counts = (0..config.partitions)
        .into_par_iter()
        .map(|w| {
            let share = config.trials / config.partitions + u64::from(w < config.trials % config.partitions);
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(w);
            let mut counts = vec![0u64; cells];
            let mut xs = vec![0usize; mus.len()];
            for _ in 0..share {
                for (x, s) in xs.iter_mut().zip(&samplers) {
                    *x = s.sample(&mut rng);
                }
                let l1 = g.combine_idx(spec.a(), &xs);
                let l2 = g.combine_idx(spec.b(), &xs);
                counts[l1 * n + l2] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; cells],
            |mut acc, c| {
                for (a, b) in acc.iter_mut().zip(c) {
                    *a += b;
                }
                acc
            },
        );

    let total = config.trials as f64;
    let empirical: Vec<f64> = counts.iter().map(|&c| c as f64 / total).collect();
    let mirror = |v: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; cells];
        for (i, &p) in v.iter().enumerate() {
            out[(i / n) * n + g.neg_idx(i % n)] = p;
        }
        out
    };
    let tv = |p: &[f64], q: &[f64]| 0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>();

    let mut chi_square = 0.0;
    let mut support = 0;
    let mut impossible_draws = 0;
    let mut band = 0.0;
    for (&p, &c) in exact.probs().iter().zip(&counts) {
        if p > 0.0 {
            support += 1;
            let expected = p * total;
            chi_square += (c as f64 - expected).powi(2) / expected;
            band += 5.0 * (p * (1.0 - p) / total).sqrt();
        } else {
            impossible_draws += c;
        }
    }
    let tv_to_exact = tv(&empirical, exact.probs());
    let tv_band = 0.5 * band;
    Ok(SampleReport {
        algorithm: SAMPLER_ALGORITHM.into(),
        seed: config.seed,
        trials: config.trials,
        partitions: config.partitions,
        tv_to_exact,
        tv_band,
        tv_empirical_mirror: tv(&empirical, &mirror(&empirical)),
        tv_exact_mirror: tv(exact.probs(), &mirror(exact.probs())),
        chi_square,
        degrees_of_freedom: support.max(1) - 1,
        impossible_draws,
        within_band: tv_to_exact <= tv_band && impossible_draws == 0,
    })
}
