//! The four subcommands. Each writes its whole output to `out`.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;
use std::time::Instant;

use logcut_core::baselines::EXACT_MAX_VERTICES;
use logcut_core::pipeline::layout_for;
use logcut_core::{landscape, solve, Graph, RatioBounds, SolveOptions};
use serde::Serialize;

use crate::config::{Method, Settings};
use crate::error::{CliError, Result};
use crate::record::{self, Baselines, ExperimentRecord, GraphDescriptor};

pub const LANDSCAPE_HEADER: &str = "x,n_cuts,std_error,decoded_cut";
pub const SWEEP_HEADER: &str = "r,mean_cut,min_cut,max_cut";

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "LOGCUT_THREADS";

/// `LOGCUT_THREADS` if set, else the machine's available parallelism.
pub fn thread_limit() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::usage(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
        Err(_) => Ok(thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Runs `work` over `items` on up to `threads` workers and hands each result
/// to `sink` on the calling thread, in completion order. Stops handing out
/// new items after the first error.
pub fn for_each_parallel<T, R, W, S>(items: &[T], threads: usize, work: W, mut sink: S) -> Result<()>
where
    T: Sync,
    R: Send,
    W: Fn(&T) -> Result<R> + Sync,
    S: FnMut(R) -> Result<()>,
{
    let next = AtomicUsize::new(0);
    let failed = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel();
    thread::scope(|scope| {
        for _ in 0..threads.clamp(1, items.len().max(1)) {
            let tx = tx.clone();
            let (next, failed, work) = (&next, &failed, &work);
            scope.spawn(move || {
                while !failed.load(Ordering::Relaxed) {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(item) = items.get(i) else { break };
                    if tx.send(work(item)).is_err() {
                        break;
                    }
                }
            });
        }
        drop(tx);
        let mut first = None;
        for result in rx {
            if let Err(e) = result.and_then(&mut sink) {
                failed.store(true, Ordering::Relaxed);
                first.get_or_insert(e);
            }
        }
        first.map_or(Ok(()), Err)
    })
}

pub fn load(settings: &Settings) -> Result<(Graph, GraphDescriptor)> {
    let source = settings
        .graph
        .as_ref()
        .ok_or_else(|| CliError::usage("no graph given; use --graph FILE or --random-regular N,D,SEED"))?;
    record::load_graph(source)
}

fn padded_size(graph: &Graph) -> usize {
    graph.num_vertices().next_power_of_two()
}

pub fn resolve_vars(settings: &Settings, graph: &Graph) -> usize {
    settings.vars.unwrap_or_else(|| padded_size(graph).min(8))
}

fn run_once(
    graph: &Graph,
    settings: &Settings,
    vars: usize,
    seed: u64,
) -> Result<(SolveOptions, logcut_core::GaConfig, logcut_core::Solution, f64)> {
    let options = SolveOptions {
        vars,
        mode: settings.mode.to_eval(settings.shots, seed),
        noise: settings.noise,
        steepness: settings.steepness,
    };
    let ga = settings.ga_config(vars, seed);
    let start = Instant::now();
    let solution = solve(graph, &options, &ga)?;
    Ok((options, ga, solution, start.elapsed().as_secs_f64()))
}

fn write_line(out: &mut dyn Write, line: String) -> Result<()> {
    let mut line = line;
    line.push('\n');
    out.write_all(line.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// One JSON record per seed, in completion order.
pub fn cmd_solve(settings: &Settings, threads: usize, out: &mut dyn Write) -> Result<()> {
    let (graph, descriptor) = load(settings)?;
    let vars = resolve_vars(settings, &graph);
    layout_for(&graph.pad_to_power_of_two(), vars, settings.steepness)?;
    settings.ga_config(vars, 0).validate()?;
    let baselines = Baselines::compute(&graph, settings)?;
    let seeds = settings.seeds.clone().unwrap_or_else(|| vec![0]);
    for_each_parallel(
        &seeds,
        threads,
        |&seed| {
            let (options, ga, solution, secs) = run_once(&graph, settings, vars, seed)?;
            ExperimentRecord::new(&graph, &descriptor, &options, &ga, solution, baselines, secs)
        },
        |rec| write_line(out, serde_json::to_string(&rec)?),
    )
}

/// CSV of `N_cuts` over the single-variable layout.
pub fn cmd_landscape(settings: &Settings, out: &mut dyn Write) -> Result<()> {
    let (graph, _) = load(settings)?;
    let laplacian = graph.pad_to_power_of_two().laplacian()?;
    let seed = settings.seeds.as_ref().and_then(|s| s.first().copied()).unwrap_or(0);
    let points = landscape(&laplacian, settings.points, settings.mode.to_eval(settings.shots, seed))?;
    let mut text = format!("{LANDSCAPE_HEADER}\n");
    for p in points {
        text.push_str(&format!("{},{},{},{}\n", p.x, p.n_cuts, p.std_error, p.decoded_cut));
    }
    out.write_all(text.as_bytes())?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub r: usize,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

/// Decoded-cut statistics of repeated (optionally noisy) runs for each `r`.
pub fn sweep_vars(settings: &Settings, graph: &Graph, threads: usize) -> Result<Vec<SweepRow>> {
    let padded = graph.pad_to_power_of_two();
    let r_list = settings
        .r_list
        .clone()
        .unwrap_or_else(|| (0..=padded.qubits()).map(|k| 1usize << k).collect());
    if r_list.is_empty() {
        return Err(CliError::usage("empty r list"));
    }
    for &r in &r_list {
        layout_for(&padded, r, settings.steepness)?;
        settings.ga_config(r, 0).validate()?;
    }
    let seeds = settings
        .seeds
        .clone()
        .unwrap_or_else(|| (0..settings.repeats as u64).collect());
    if seeds.is_empty() {
        return Err(CliError::usage("no seeds to repeat over"));
    }
    let jobs: Vec<(usize, u64)> = r_list
        .iter()
        .flat_map(|&r| seeds.iter().map(move |&s| (r, s)))
        .collect();
    let mut cuts: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for_each_parallel(
        &jobs,
        threads,
        |&(r, seed)| {
            let (_, _, solution, _) = run_once(graph, settings, r, seed)?;
            let partition = solution.partition.truncated(graph.num_vertices());
            Ok((r, graph.cut_weight(partition.as_slice())?))
        },
        |(r, cut)| {
            cuts.entry(r).or_default().push(cut);
            Ok(())
        },
    )?;
    Ok(r_list
        .iter()
        .map(|r| {
            let c = &cuts[r];
            SweepRow {
                r: *r,
                mean: c.iter().sum::<f64>() / c.len() as f64,
                min: c.iter().copied().fold(f64::INFINITY, f64::min),
                max: c.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            }
        })
        .collect())
}

pub fn cmd_sweep_vars(settings: &Settings, threads: usize, out: &mut dyn Write) -> Result<()> {
    let (graph, _) = load(settings)?;
    let rows = sweep_vars(settings, &graph, threads)?;
    let mut text = format!("{SWEEP_HEADER}\n");
    for row in rows {
        text.push_str(&format!("{},{},{},{}\n", row.r, row.mean, row.min, row.max));
    }
    out.write_all(text.as_bytes())?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodResult {
    pub method: Method,
    pub cut: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vars: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roundings: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_dev: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

impl MethodResult {
    fn bare(method: Method, cut: f64) -> Self {
        Self {
            method,
            cut,
            seed: None,
            vars: None,
            rank: None,
            roundings: None,
            std_dev: None,
            samples: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub graph: GraphDescriptor,
    pub results: Vec<MethodResult>,
    /// Present when both `quantum-ga` and `gw` ran.
    pub ratio_bounds: Option<RatioBounds>,
    pub tool_version: String,
}

pub fn compare(settings: &Settings, graph: &Graph, descriptor: &GraphDescriptor, threads: usize) -> Result<Comparison> {
    let mut methods: Vec<Method> = Vec::new();
    for &m in &settings.methods {
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    if methods.is_empty() {
        return Err(CliError::usage("the methods list is empty"));
    }
    if methods.contains(&Method::Exact) && graph.num_vertices() > EXACT_MAX_VERTICES {
        return Err(logcut_core::Error::GraphTooLarge {
            vertices: graph.num_vertices(),
            limit: EXACT_MAX_VERTICES,
        }
        .into());
    }
    let mut results = Vec::new();
    for &method in &methods {
        results.push(match method {
            Method::QuantumGa => best_quantum(settings, graph, threads)?,
            Method::Gw => {
                let gw = record::gw_baseline(graph, settings)?;
                MethodResult {
                    seed: Some(gw.seed),
                    rank: Some(gw.rank),
                    roundings: Some(gw.roundings),
                    ..MethodResult::bare(method, gw.cut)
                }
            }
            Method::Exact => MethodResult::bare(method, logcut_core::exact_maxcut(graph)?.cut),
            Method::Random => {
                let r = record::random_baseline(graph, settings)?;
                MethodResult {
                    seed: Some(r.seed),
                    std_dev: Some(r.std_dev),
                    samples: Some(r.samples),
                    ..MethodResult::bare(method, r.mean)
                }
            }
        });
    }
    let cut_of = |m| results.iter().find(|r| r.method == m).map(|r| r.cut);
    let ratio_bounds = match (cut_of(Method::QuantumGa), cut_of(Method::Gw)) {
        (Some(q), Some(gw)) => record::bounds_against(q, gw),
        _ => None,
    };
    Ok(Comparison {
        graph: descriptor.clone(),
        results,
        ratio_bounds,
        tool_version: record::TOOL_VERSION.to_string(),
    })
}

/// Best decoded cut over the configured seeds; ties go to the earlier seed.
fn best_quantum(settings: &Settings, graph: &Graph, threads: usize) -> Result<MethodResult> {
    let vars = resolve_vars(settings, graph);
    layout_for(&graph.pad_to_power_of_two(), vars, settings.steepness)?;
    let seeds = settings.seeds.clone().unwrap_or_else(|| vec![0]);
    let mut runs = Vec::new();
    for_each_parallel(
        &seeds,
        threads,
        |&seed| {
            let (_, _, solution, _) = run_once(graph, settings, vars, seed)?;
            let partition = solution.partition.truncated(graph.num_vertices());
            Ok((seed, graph.cut_weight(partition.as_slice())?))
        },
        |run| {
            runs.push(run);
            Ok(())
        },
    )?;
    let position = |s: u64| seeds.iter().position(|&x| x == s);
    let (seed, cut) = runs
        .into_iter()
        .max_by(|a, b| a.1.total_cmp(&b.1).then(position(b.0).cmp(&position(a.0))))
        .ok_or_else(|| CliError::usage("no seeds given"))?;
    Ok(MethodResult {
        seed: Some(seed),
        vars: Some(vars),
        ..MethodResult::bare(Method::QuantumGa, cut)
    })
}

pub fn cmd_compare(settings: &Settings, threads: usize, out: &mut dyn Write) -> Result<()> {
    let (graph, descriptor) = load(settings)?;
    let table = compare(settings, &graph, &descriptor, threads)?;
    let mut text = serde_json::to_string_pretty(&table)?;
    text.push('\n');
    out.write_all(text.as_bytes())?;
    Ok(())
}
