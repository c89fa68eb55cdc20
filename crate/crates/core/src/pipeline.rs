//! End-to-end solver: pad the graph, build its Laplacian, and let the genetic
//! search drive the diagonal ansatz through `N_cuts`.
//!
//! The reported cut is always recomputed classically from the decoded
//! partition, never taken from the (possibly noisy) objective value.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::genetic::{self, GaConfig, RunResult};
use crate::graph::{cut_value, Graph, Laplacian, PartitionVector};
use crate::pauli::{self, Estimate, PauliSum};
use crate::relaxation::{decode_partition, encode_phases, AnsatzLayout};
use crate::rng;
use crate::statevector::{n_cuts_with, EvalMode};

/// `xs ↦ N_cuts(U(xs))` for a fixed Laplacian, layout and evaluation mode.
///
/// In sampled mode call `k` uses seed `mix(seed, k)`, so repeated
/// evaluations see fresh shot noise while the whole sequence stays
/// reproducible.
#[derive(Debug, Clone)]
pub struct CutObjective {
    laplacian: Laplacian,
    layout: AnsatzLayout,
    mode: EvalMode,
    paulis: Option<PauliSum>,
    calls: u64,
}

impl CutObjective {
    pub fn new(laplacian: Laplacian, layout: AnsatzLayout, mode: EvalMode) -> Result<Self> {
        if laplacian.dim() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: laplacian.dim(),
                found: layout.dim(),
            });
        }
        let paulis = mode.uses_paulis().then(|| pauli::decompose(&laplacian));
        Ok(Self {
            laplacian,
            layout,
            mode,
            paulis,
            calls: 0,
        })
    }

    pub fn layout(&self) -> &AnsatzLayout {
        &self.layout
    }

    pub fn laplacian(&self) -> &Laplacian {
        &self.laplacian
    }

    pub fn mode(&self) -> EvalMode {
        self.mode
    }

    pub fn paulis(&self) -> Option<&PauliSum> {
        self.paulis.as_ref()
    }

    pub fn calls(&self) -> u64 {
        self.calls
    }

    pub fn estimate(&mut self, xs: &[f64]) -> Result<Estimate> {
        let phases = encode_phases(xs, &self.layout)?;
        let mode = match self.mode {
            EvalMode::PauliSampled { shots, seed } => EvalMode::PauliSampled {
                shots,
                seed: rng::mix(seed, self.calls),
            },
            other => other,
        };
        self.calls += 1;
        n_cuts_with(&self.laplacian, self.paulis.as_ref(), &phases, mode)
    }

    /// Objective value; NaN when `xs` does not fit the layout.
    pub fn evaluate(&mut self, xs: &[f64]) -> f64 {
        self.estimate(xs).map(|e| e.value).unwrap_or(f64::NAN)
    }

    /// Rounded partition of `xs` and its exact cut weight.
    pub fn decoded_cut(&self, xs: &[f64]) -> Result<(PartitionVector, f64)> {
        let partition = decode_partition(xs, &self.layout)?;
        let cut = cut_value(&self.laplacian, &partition)?;
        Ok((partition, cut))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SolveOptions {
    /// Number of continuous variables `r`; must divide the padded size.
    pub vars: usize,
    pub mode: EvalMode,
    /// Multiplicative uniform noise on the objective (0 disables it).
    pub noise: f64,
    /// Relaxation steepness; `None` picks `block_size + 2`.
    pub steepness: Option<u32>,
}

impl SolveOptions {
    pub fn new(vars: usize, mode: EvalMode) -> Self {
        Self {
            vars,
            mode,
            noise: 0.0,
            steepness: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub layout: AnsatzLayout,
    pub run: RunResult,
    /// Decoded partition over the padded vertex set.
    pub partition: PartitionVector,
    /// `cut_value(L, partition)`, recomputed classically.
    pub cut: f64,
    /// Objective evaluations spent by the search.
    pub objective_calls: u64,
}

pub fn layout_for(graph: &Graph, vars: usize, steepness: Option<u32>) -> Result<AnsatzLayout> {
    let layout = AnsatzLayout::new(graph.qubits(), vars)?;
    match steepness {
        Some(m) => layout.with_steepness(m),
        None => Ok(layout),
    }
}

/// Runs the variational search on `graph` (padded internally).
pub fn solve(graph: &Graph, options: &SolveOptions, config: &GaConfig) -> Result<Solution> {
    if config.dim() != options.vars {
        return Err(Error::InvalidConfig(alloc::format!(
            "optimizer has {} bounds but the layout has {} variables",
            config.dim(),
            options.vars
        )));
    }
    let padded = graph.pad_to_power_of_two();
    let layout = layout_for(&padded, options.vars, options.steepness)?;
    let mut objective = CutObjective::new(padded.laplacian()?, layout, options.mode)?;
    let run = {
        let f = |xs: &[f64]| objective.evaluate(xs);
        let noisy = genetic::with_noise(f, options.noise, rng::mix(config.seed, u64::MAX))?;
        genetic::optimize(noisy, config)?
    };
    let (partition, cut) = objective.decoded_cut(&run.best_xs)?;
    Ok(Solution {
        layout,
        run,
        partition,
        cut,
        objective_calls: objective.calls(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LandscapePoint {
    pub x: f64,
    pub n_cuts: f64,
    /// Shot-noise standard error; 0 for exact modes.
    pub std_error: f64,
    /// Exact cut of the partition decoded at `x`.
    pub decoded_cut: f64,
}

/// `N_cuts` along the single-variable layout at `points` equidistant
/// `x ∈ [0, 2π]` (endpoints included). In sampled mode point `i` uses seed
/// `mix(seed, i)`.
pub fn landscape(laplacian: &Laplacian, points: usize, mode: EvalMode) -> Result<Vec<LandscapePoint>> {
    if points == 0 {
        return Err(Error::InvalidArgument(
            "at least one landscape point is required".into(),
        ));
    }
    let layout = AnsatzLayout::new(laplacian.qubits(), 1)?;
    let paulis = mode.uses_paulis().then(|| pauli::decompose(laplacian));
    (0..points)
        .map(|i| {
            let x = if points == 1 {
                0.0
            } else {
                TAU * i as f64 / (points - 1) as f64
            };
            let point_mode = match mode {
                EvalMode::PauliSampled { shots, seed } => EvalMode::PauliSampled {
                    shots,
                    seed: rng::mix(seed, i as u64),
                },
                other => other,
            };
            let phases = encode_phases(&[x], &layout)?;
            let est = n_cuts_with(laplacian, paulis.as_ref(), &phases, point_mode)?;
            let partition = decode_partition(&[x], &layout)?;
            Ok(LandscapePoint {
                x,
                n_cuts: est.value,
                std_error: est.std_error,
                decoded_cut: cut_value(laplacian, &partition)?,
            })
        })
        .collect()
}
