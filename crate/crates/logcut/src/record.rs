//! JSON-lines experiment records and the graph/baseline data they embed.

use logcut_core::baselines::{default_rank, EXACT_MAX_VERTICES};
use logcut_core::graph::BipartitionStats;
use logcut_core::{
    exact_maxcut, gw_maxcut, ratio_bounds, EvalMode, GaConfig, Graph, RatioBounds, RunResult, Solution, SolveOptions,
};
use serde::{Deserialize, Serialize};

use crate::config::{GraphSource, Settings};
use crate::error::Result;
use crate::formats;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDescriptor {
    /// `file` or `random-regular`.
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub path: Option<String>,
    pub vertices: usize,
    pub edges: usize,
    /// Common vertex degree when the graph is regular.
    pub degree: Option<usize>,
    /// Generator seed; absent for file input.
    pub seed: Option<u64>,
    /// SHA-256 of the file bytes, or of the generated graph's edge-list text.
    pub sha256: String,
}

pub fn load_graph(source: &GraphSource) -> Result<(Graph, GraphDescriptor)> {
    match source {
        GraphSource::File(path) => {
            let (graph, sha256) = formats::read_edge_list(path)?;
            let descriptor = GraphDescriptor {
                source: "file".into(),
                path: Some(path.display().to_string()),
                vertices: graph.num_vertices(),
                edges: graph.num_edges(),
                degree: common_degree(&graph),
                seed: None,
                sha256,
            };
            Ok((graph, descriptor))
        }
        &GraphSource::RandomRegular { vertices, degree, seed } => {
            let graph = Graph::random_regular(vertices, degree, seed)?;
            let sha256 = formats::sha256_hex(formats::format_edge_list(&graph).as_bytes());
            let descriptor = GraphDescriptor {
                source: "random-regular".into(),
                path: None,
                vertices,
                edges: graph.num_edges(),
                degree: Some(degree),
                seed: Some(seed),
                sha256,
            };
            Ok((graph, descriptor))
        }
    }
}

fn common_degree(graph: &Graph) -> Option<usize> {
    let adj = graph.adjacency();
    let d = adj[0].len();
    adj.iter().all(|a| a.len() == d).then_some(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LayoutInfo {
    /// Qubits, `log2` of the padded vertex count.
    pub n: u32,
    /// Continuous variables.
    pub r: usize,
    /// Relaxation steepness.
    pub m_r: u32,
    pub block_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GwBaseline {
    pub cut: f64,
    pub seed: u64,
    pub rank: usize,
    pub roundings: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomBaseline {
    pub mean: f64,
    pub std_dev: f64,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Baselines {
    pub gw: GwBaseline,
    /// Only for graphs small enough to enumerate.
    pub exact: Option<f64>,
    pub random: RandomBaseline,
}

impl Baselines {
    pub fn compute(graph: &Graph, settings: &Settings) -> Result<Self> {
        Ok(Self {
            gw: gw_baseline(graph, settings)?,
            exact: if graph.num_vertices() <= EXACT_MAX_VERTICES {
                Some(exact_maxcut(graph)?.cut)
            } else {
                None
            },
            random: random_baseline(graph, settings)?,
        })
    }
}

pub fn gw_baseline(graph: &Graph, settings: &Settings) -> Result<GwBaseline> {
    let rank = settings.gw_rank.unwrap_or_else(|| default_rank(graph.num_vertices()));
    let sol = gw_maxcut(graph, rank, settings.gw_roundings, settings.gw_seed)?;
    Ok(GwBaseline {
        cut: sol.cut,
        seed: settings.gw_seed,
        rank,
        roundings: settings.gw_roundings,
    })
}

pub fn random_baseline(graph: &Graph, settings: &Settings) -> Result<RandomBaseline> {
    let BipartitionStats { mean, std_dev, samples } =
        graph.random_bipartition_stats(settings.random_samples, settings.random_seed)?;
    Ok(RandomBaseline {
        mean,
        std_dev,
        samples,
        seed: settings.random_seed,
    })
}

/// `None` when the baseline cut is not positive.
pub fn bounds_against(cut: f64, gw_cut: f64) -> Option<RatioBounds> {
    ratio_bounds(cut, gw_cut).ok()
}

/// One solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub seed: u64,
    pub graph: GraphDescriptor,
    pub layout: LayoutInfo,
    pub mode: EvalMode,
    pub noise: f64,
    pub ga: GaConfig,
    pub run: RunResult,
    /// Decoded partition over the original (unpadded) vertices.
    pub partition: Vec<i8>,
    /// Cut weight of `partition`, counted edge by edge.
    pub cut: f64,
    pub objective_calls: u64,
    pub baselines: Baselines,
    pub ratio_bounds: Option<RatioBounds>,
    pub duration_secs: f64,
    pub tool_version: String,
}

impl ExperimentRecord {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        graph: &Graph,
        descriptor: &GraphDescriptor,
        options: &SolveOptions,
        ga: &GaConfig,
        solution: Solution,
        baselines: Baselines,
        duration_secs: f64,
    ) -> Result<Self> {
        let partition = solution.partition.truncated(graph.num_vertices());
        let cut = graph.cut_weight(partition.as_slice())?;
        let layout = &solution.layout;
        Ok(Self {
            seed: ga.seed,
            graph: descriptor.clone(),
            layout: LayoutInfo {
                n: layout.qubits(),
                r: layout.vars(),
                m_r: layout.steepness(),
                block_size: layout.block_size(),
            },
            mode: options.mode,
            noise: options.noise,
            ga: ga.clone(),
            run: solution.run,
            partition: partition.as_slice().to_vec(),
            cut,
            objective_calls: solution.objective_calls,
            ratio_bounds: bounds_against(cut, baselines.gw.cut),
            baselines,
            duration_secs,
            tool_version: TOOL_VERSION.to_string(),
        })
    }

    /// The solver options this record was produced with.
    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            vars: self.layout.r,
            mode: self.mode,
            noise: self.noise,
            steepness: Some(self.layout.m_r),
        }
    }

    /// Runs the embedded configuration again on `graph`.
    pub fn rerun(&self, graph: &Graph) -> Result<Solution> {
        Ok(logcut_core::solve(graph, &self.solve_options(), &self.ga)?)
    }
}
