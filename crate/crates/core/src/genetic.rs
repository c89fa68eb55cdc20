//! Seeded real-coded genetic algorithm for bounded maximization.
//!
//! Each generation keeps `elitism_count` elites unchanged (re-scoring them,
//! so a lucky draw of a noisy objective does not stick) and breeds the rest:
//! two tournament-of-2 picks from the best `parents_fraction` of the
//! population, uniform gene-wise crossover, uniform-reset mutation, clamping
//! to the box. Internally the negated objective is minimized.
//!
//! Every random decision for candidate `i` of generation `g` comes from RNG
//! stream `(seed, g, i)`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GaConfig {
    pub population: usize,
    pub max_iterations: usize,
    pub mutation_prob: f64,
    pub crossover_prob: f64,
    pub elitism_count: usize,
    pub parents_fraction: f64,
    /// Per-variable `(lo, hi)`; its length is the search dimension.
    pub bounds: Vec<(f64, f64)>,
    pub seed: u64,
    /// Stop after this many generations without a new best.
    pub stall_limit: Option<usize>,
}

impl GaConfig {
    /// Population 14 and 200 generations; every variable in `[0, 2π]`.
    pub fn new(dim: usize) -> Self {
        Self {
            population: 14,
            max_iterations: 200,
            mutation_prob: 0.1,
            crossover_prob: 0.5,
            elitism_count: 1,
            parents_fraction: 0.3,
            bounds: alloc::vec![(0.0, TAU); dim],
            seed: 0,
            stall_limit: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: alloc::string::String| Err(Error::InvalidConfig(msg));
        if self.population < 2 {
            return bad(format!("population must be at least 2, got {}", self.population));
        }
        if self.max_iterations == 0 {
            return bad("max_iterations must be at least 1".into());
        }
        if self.elitism_count >= self.population {
            return bad(format!(
                "elitism_count {} must be below the population {}",
                self.elitism_count, self.population
            ));
        }
        for (name, p) in [
            ("mutation_prob", self.mutation_prob),
            ("crossover_prob", self.crossover_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} must lie in [0, 1], got {p}"));
            }
        }
        if !(self.parents_fraction > 0.0 && self.parents_fraction <= 1.0) {
            return bad(format!(
                "parents_fraction must lie in (0, 1], got {}",
                self.parents_fraction
            ));
        }
        if self.bounds.is_empty() {
            return bad("at least one variable is required".into());
        }
        if let Some((i, (lo, hi))) = self
            .bounds
            .iter()
            .enumerate()
            .find(|(_, (lo, hi))| !(lo.is_finite() && hi.is_finite() && lo < hi))
        {
            return bad(format!("bounds of variable {i} are not an interval: [{lo}, {hi}]"));
        }
        if self.stall_limit == Some(0) {
            return bad("stall_limit must be positive when set".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunResult {
    pub best_xs: Vec<f64>,
    pub best_objective: f64,
    /// Best objective seen after each generation; non-decreasing.
    pub history: Vec<f64>,
    pub evaluations: usize,
    /// Evaluations that returned NaN and were scored as `-inf`.
    pub nan_evaluations: usize,
}

#[derive(Clone)]
struct Candidate {
    xs: Vec<f64>,
    cost: f64,
}

struct Scorer<F> {
    objective: F,
    evaluations: usize,
    nans: usize,
}

impl<F: FnMut(&[f64]) -> f64> Scorer<F> {
    fn cost(&mut self, xs: &[f64]) -> f64 {
        self.evaluations += 1;
        let v = (self.objective)(xs);
        if v.is_nan() {
            self.nans += 1;
            f64::INFINITY
        } else {
            -v
        }
    }
}

/// Maximizes `objective` over the configured box.
pub fn optimize<F>(objective: F, config: &GaConfig) -> Result<RunResult>
where
    F: FnMut(&[f64]) -> f64,
{
    config.validate()?;
    let size = config.population;
    let mut scorer = Scorer {
        objective,
        evaluations: 0,
        nans: 0,
    };

    let mut population: Vec<Candidate> = (0..size)
        .map(|i| {
            let mut rng = rng::stream2(config.seed, 0, i as u64);
            let xs: Vec<f64> = config.bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..=hi)).collect();
            let cost = scorer.cost(&xs);
            Candidate { xs, cost }
        })
        .collect();

    let mut best = best_of(&population).clone();
    let mut history = Vec::with_capacity(config.max_iterations);
    let pool = libm::ceil(config.parents_fraction * size as f64) as usize;
    let pool = pool.clamp(1, size);
    let mut stalled = 0;

    for generation in 1..=config.max_iterations {
        population.sort_by(|a, b| a.cost.total_cmp(&b.cost));
        let parents = &population[..pool];

        let mut next = Vec::with_capacity(size);
        for elite in &population[..config.elitism_count] {
            let cost = scorer.cost(&elite.xs);
            next.push(Candidate {
                xs: elite.xs.clone(),
                cost,
            });
        }
        for i in config.elitism_count..size {
            let mut rng = rng::stream2(config.seed, generation as u64, i as u64);
            let first = tournament(parents, &mut rng);
            let second = tournament(parents, &mut rng);
            let xs: Vec<f64> = config
                .bounds
                .iter()
                .enumerate()
                .map(|(g, &(lo, hi))| {
                    let mut gene = if rng.gen::<f64>() < config.crossover_prob {
                        second.xs[g]
                    } else {
                        first.xs[g]
                    };
                    if rng.gen::<f64>() < config.mutation_prob {
                        gene = rng.gen_range(lo..=hi);
                    }
                    gene.clamp(lo, hi)
                })
                .collect();
            let cost = scorer.cost(&xs);
            next.push(Candidate { xs, cost });
        }
        population = next;

        let champion = best_of(&population);
        if champion.cost < best.cost {
            best = champion.clone();
            stalled = 0;
        } else {
            stalled += 1;
        }
        history.push(-best.cost);
        if config.stall_limit.is_some_and(|limit| stalled >= limit) {
            break;
        }
    }

    Ok(RunResult {
        best_xs: best.xs,
        best_objective: -best.cost,
        history,
        evaluations: scorer.evaluations,
        nan_evaluations: scorer.nans,
    })
}

fn best_of(population: &[Candidate]) -> &Candidate {
    population
        .iter()
        .min_by(|a, b| a.cost.total_cmp(&b.cost))
        .expect("population is never empty")
}

fn tournament<'a>(pool: &'a [Candidate], rng: &mut rng::Rng) -> &'a Candidate {
    let a = &pool[rng.gen_range(0..pool.len())];
    let b = &pool[rng.gen_range(0..pool.len())];
    if b.cost < a.cost {
        b
    } else {
        a
    }
}

/// Wraps `objective` with multiplicative uniform noise:
/// `x ↦ f(x)·(1 + level·u)`, `u ~ U[-1, 1]` drawn from stream
/// `(seed, call index)`. Level 0 passes values through untouched.
pub fn with_noise<F>(mut objective: F, level: f64, seed: u64) -> Result<impl FnMut(&[f64]) -> f64>
where
    F: FnMut(&[f64]) -> f64,
{
    if !(level >= 0.0 && level.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "noise level must be a non-negative number, got {level}"
        )));
    }
    let mut calls = 0u64;
    Ok(move |xs: &[f64]| {
        let value = objective(xs);
        if level == 0.0 {
            return value;
        }
        let mut rng = rng::stream(seed, calls);
        calls += 1;
        value * (1.0 + level * rng.gen_range(-1.0..=1.0))
    })
}
