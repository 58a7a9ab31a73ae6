use std::collections::BTreeSet;

use num::rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classes::{is_degenerate, is_gaussian};
use crate::distribution::Distribution;
use crate::error::Result;
use crate::group::{is_admissible, Group, Point, Primal};
use crate::heyde::{check_coefficients, check_heyde_cf, LinearFormsSpec};
use crate::subgroup::Subgroup;
use crate::tolerance::Tolerances;

/// Which class a witness must escape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessGate {
    /// Some `μ_j` is not a point mass.
    NotDegenerate,
    /// Some `μ_j` is not Gaussian.
    NotGaussian,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Enumerate every tuple of laws whose masses are rationals with
    /// denominator at most this value.
    pub grid_denominator: Option<i64>,
    pub random_trials: u64,
    pub seed: u64,
    pub gate: WitnessGate,
    pub tolerances: Tolerances,
}

impl SearchConfig {
    pub fn new(gate: WitnessGate) -> Self {
        SearchConfig { grid_denominator: None, random_trials: 0, seed: 0, gate, tolerances: Tolerances::DEFAULT }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// The coefficients pass and the group has prime exponent `p > 2`, so
    /// no witness should exist.
    pub hypotheses_hold: bool,
    pub grid_points: usize,
    pub grid_tuples_tested: u64,
    pub random_tuples_tested: u64,
    /// First tuple found with nonvanishing transforms, satisfying the
    /// symmetry, and escaping the gate class.
    pub witness: Option<Vec<Distribution>>,
}

/// Probability vectors of length `order` whose entries are `k/d` for a
/// common `d ≤ max_denominator`, without repeats, in a fixed order.
pub fn probability_grid(order: usize, max_denominator: i64) -> Vec<Vec<Ratio<i64>>> {
    let mut set = BTreeSet::new();
    let mut parts = vec![0i64; order];
    for d in 1..=max_denominator {
        compositions(d, 0, &mut parts, &mut |p| {
            set.insert(p.iter().map(|&k| Ratio::new(k, d)).collect::<Vec<_>>());
        });
    }
    set.into_iter().collect()
}

fn compositions(left: i64, pos: usize, parts: &mut [i64], emit: &mut impl FnMut(&[i64])) {
    if pos + 1 == parts.len() {
        parts[pos] = left;
        emit(parts);
        return;
    }
    for k in 0..=left {
        parts[pos] = k;
        compositions(left - k, pos + 1, parts, emit);
    }
}

fn from_ratios(g: &Group, p: &[Ratio<i64>]) -> Distribution {
    let probs = p.iter().map(|r| *r.numer() as f64 / *r.denom() as f64).collect();
    Distribution::from_weights(g, probs).expect("grid point is a probability vector")
}

/// Looks for a tuple that would contradict the characterization: every
/// `μ̂_j` nonvanishing, the symmetry holding, and some `μ_j` outside the gate
/// class. Grid tuples are visited first in lexicographic order, then seeded
/// random tuples.
pub fn search_nondegenerate(g: &Group, spec: &LinearFormsSpec, config: &SearchConfig) -> Result<SearchOutcome> {
    let tol = &config.tolerances;
    let coefficients = check_coefficients(g, spec);
    let hypotheses_hold = coefficients.passes && g.prime_exponent().is_some() && is_admissible(g, 2);
    let n = spec.n();
    let escapes = |mu: &Distribution| match config.gate {
        WitnessGate::NotDegenerate => !is_degenerate(mu),
        WitnessGate::NotGaussian => !is_gaussian(mu, tol),
    };
    let is_witness = |mus: &[Distribution]| -> Result<bool> {
        if !mus.iter().any(escapes) {
            return Ok(false);
        }
        Ok(check_heyde_cf(g, spec, mus, tol)?.holds)
    };
    let mut outcome = SearchOutcome {
        hypotheses_hold,
        grid_points: 0,
        grid_tuples_tested: 0,
        random_tuples_tested: 0,
        witness: None,
    };

    if let Some(d) = config.grid_denominator {
        let grid: Vec<Distribution> = probability_grid(g.order(), d)
            .iter()
            .map(|p| from_ratios(g, p))
            .filter(|mu| mu.char_function().is_nonvanishing(tol.vanishing))
            .collect();
        outcome.grid_points = grid.len();
        let mut pick = vec![0usize; n];
        'grid: while !grid.is_empty() {
            let mus: Vec<Distribution> = pick.iter().map(|&i| grid[i].clone()).collect();
            outcome.grid_tuples_tested += 1;
            if is_witness(&mus)? {
                outcome.witness = Some(mus);
                return Ok(outcome);
            }
            for slot in (0..n).rev() {
                pick[slot] += 1;
                if pick[slot] < grid.len() {
                    continue 'grid;
                }
                pick[slot] = 0;
            }
            break;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.random_trials {
        let mus: Vec<Distribution> = if rng.gen_bool(0.5) {
            vec![random_law(g, &mut rng); n]
        } else {
            (0..n).map(|_| random_law(g, &mut rng)).collect()
        };
        if !mus.iter().all(|mu| mu.char_function().is_nonvanishing(tol.vanishing)) {
            continue;
        }
        outcome.random_tuples_tested += 1;
        if is_witness(&mus)? {
            outcome.witness = Some(mus);
            return Ok(outcome);
        }
    }
    Ok(outcome)
}

/// One of three families: full-support weights, uniform on a random subset,
/// or `E_c * (a E_0 + (1 − a) m_M)` for a cyclic subgroup `M`.
fn random_law(g: &Group, rng: &mut ChaCha8Rng) -> Distribution {
    let size = g.order();
    match rng.gen_range(0..3) {
        0 => {
            let w = (0..size).map(|_| rng.gen::<f64>().powi(3)).collect();
            Distribution::from_weights(g, w).expect("positive weights")
        }
        1 => {
            let mut idx: Vec<usize> = (0..size).collect();
            idx.shuffle(rng);
            let k = rng.gen_range(1..=size);
            let mut w = vec![0.0; size];
            for &i in &idx[..k] {
                w[i] = 1.0;
            }
            Distribution::from_weights(g, w).expect("nonempty support")
        }
        _ => {
            let generator: Point<Primal> = Point::from_index(g, rng.gen_range(0..size));
            let m = Subgroup::generated(g, &[generator]).expect("same group");
            let a: f64 = rng.gen_range(0.05..0.95);
            let base = Distribution::mixture(&[(a, &Distribution::point_mass(&g.zero())), (1.0 - a, &Distribution::haar(&m))])
                .expect("weights sum to one");
            if rng.gen_bool(0.5) {
                base
            } else {
                let c: Point<Primal> = Point::from_index(g, rng.gen_range(0..size));
                base.translate(&c).expect("same group")
            }
        }
    }
}
