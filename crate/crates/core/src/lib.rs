//! Variational MaxCut on `⌈log2 |V|⌉` qubits.
//!
//! A graph's Laplacian is sandwiched between a uniform superposition and a
//! diagonal phase gate whose entries are driven by a handful of continuous
//! variables through a multi-oscillatory relaxation function. The phase
//! settings are searched by a real-coded genetic algorithm; classical
//! baselines (exhaustive search, a low-rank Goemans-Williamson relaxation)
//! provide the yardsticks.
//!
//! The crate is `no_std` (it needs `alloc`). Enable the `std` feature for
//! `std::error::Error` interop, and `serde` for serializable configs and
//! results.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod baselines;
pub mod error;
pub mod genetic;
pub mod graph;
pub mod matrix;
pub mod pauli;
pub mod pipeline;
pub mod relaxation;
pub mod rng;
pub mod statevector;

pub use baselines::{exact_maxcut, gw_maxcut, ratio_bounds, CutSolution, RatioBounds, GW_ALPHA};
pub use error::{Error, Result};
pub use genetic::{optimize, with_noise, GaConfig, RunResult};
pub use graph::{cut_value, Edge, Graph, Laplacian, PartitionVector};
pub use pauli::{decompose, expectation_exact, expectation_sampled, reconstruct, PauliString, PauliSum, PauliTerm};
pub use pipeline::{landscape, solve, CutObjective, LandscapePoint, Solution, SolveOptions};
pub use relaxation::{decode_partition, encode_phases, r_f, x0, AnsatzLayout, RelaxParams};
pub use statevector::{gate_count_estimate, n_cuts, EvalMode, GateCount, PhaseVector, StateVector};

pub use num_complex::Complex64;
