//! Run settings: built-in defaults, overridden by a flat `key = value`
//! config file, overridden by command-line flags.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use logcut_core::{EvalMode, GaConfig};

use crate::error::{CliError, Result};

/// Keys accepted in a config file. `-` and `_` are interchangeable.
pub const CONFIG_KEYS: &[&str] = &[
    "graph",
    "random_regular",
    "vars",
    "mode",
    "shots",
    "noise",
    "seeds",
    "steepness",
    "population",
    "max_iterations",
    "mutation_prob",
    "crossover_prob",
    "elitism_count",
    "parents_fraction",
    "stall_limit",
    "lower_bound",
    "upper_bound",
    "points",
    "repeats",
    "r_list",
    "methods",
    "gw_rank",
    "gw_roundings",
    "gw_seed",
    "random_samples",
    "random_seed",
];

/// Parsed config file, keys normalised to snake case.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| CliError::Parse {
                origin: origin.to_string(),
                line: i + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, found {line:?}")))?;
            let key = key.trim().replace('-', "_");
            if !CONFIG_KEYS.contains(&key.as_str()) {
                return Err(err(format!("unknown key {key:?}")));
            }
            if entries.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(err(format!("key {key:?} given twice")));
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    fn value<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        self.get(key).map(|v| parse_value(key, v)).transpose()
    }
}

pub fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    value
        .trim()
        .parse()
        .map_err(|e| CliError::usage(format!("invalid {key} {value:?}: {e}")))
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    RandomRegular { vertices: usize, degree: usize, seed: u64 },
}

impl FromStr for GraphSource {
    type Err = String;

    /// Parses the `N,D,SEED` generator triple.
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected N,D,SEED, found {s:?}"));
        }
        let num = |p: &str| p.parse::<u64>().map_err(|e| format!("{p:?}: {e}"));
        Ok(GraphSource::RandomRegular {
            vertices: num(parts[0])? as usize,
            degree: num(parts[1])? as usize,
            seed: num(parts[2])?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeKind {
    Dense,
    PauliExact,
    PauliSampled,
}

impl ModeKind {
    /// Sampled runs take their shot seed from the run seed.
    pub fn to_eval(self, shots: u32, seed: u64) -> EvalMode {
        match self {
            ModeKind::Dense => EvalMode::Dense,
            ModeKind::PauliExact => EvalMode::PauliExact,
            ModeKind::PauliSampled => EvalMode::PauliSampled { shots, seed },
        }
    }
}

impl FromStr for ModeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dense" => Ok(ModeKind::Dense),
            "pauli-exact" => Ok(ModeKind::PauliExact),
            "pauli-sampled" => Ok(ModeKind::PauliSampled),
            other => Err(format!("unknown mode {other:?} (dense, pauli-exact, pauli-sampled)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    QuantumGa,
    Gw,
    Exact,
    Random,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::QuantumGa => "quantum-ga",
            Method::Gw => "gw",
            Method::Exact => "exact",
            Method::Random => "random",
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quantum-ga" => Ok(Method::QuantumGa),
            "gw" => Ok(Method::Gw),
            "exact" => Ok(Method::Exact),
            "random" => Ok(Method::Random),
            other => Err(format!("unknown method {other:?} (quantum-ga, gw, exact, random)")),
        }
    }
}

/// Comma-separated items; `a..b` (exclusive) expands to a run of integers
/// where the item type allows it.
pub fn parse_list<T: FromStr>(key: &str, text: &str) -> Result<Vec<T>>
where
    T::Err: fmt::Display,
{
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let lo: u64 = parse_value(key, lo)?;
            let hi: u64 = parse_value(key, hi)?;
            if hi <= lo {
                return Err(CliError::usage(format!("empty range {item:?} in {key}")));
            }
            for k in lo..hi {
                out.push(parse_value(key, &k.to_string())?);
            }
        } else {
            out.push(parse_value(key, item)?);
        }
    }
    Ok(out)
}

/// Everything a command needs, after merging all sources.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub graph: Option<GraphSource>,
    /// `None` means `min(8, padded vertex count)`.
    pub vars: Option<usize>,
    pub mode: ModeKind,
    pub shots: u32,
    pub noise: f64,
    /// `None` lets each command pick: seed 0, or `0..repeats` for sweeps.
    pub seeds: Option<Vec<u64>>,
    pub steepness: Option<u32>,
    pub population: usize,
    pub max_iterations: usize,
    pub mutation_prob: f64,
    pub crossover_prob: f64,
    pub elitism_count: usize,
    pub parents_fraction: f64,
    pub stall_limit: Option<usize>,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub points: usize,
    pub repeats: usize,
    /// `None` means every power of two up to the padded vertex count.
    pub r_list: Option<Vec<usize>>,
    pub methods: Vec<Method>,
    pub gw_rank: Option<usize>,
    pub gw_roundings: usize,
    pub gw_seed: u64,
    pub random_samples: usize,
    pub random_seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        let ga = GaConfig::new(0);
        Self {
            graph: None,
            vars: None,
            mode: ModeKind::Dense,
            shots: 8192,
            noise: 0.0,
            seeds: None,
            steepness: None,
            population: ga.population,
            max_iterations: ga.max_iterations,
            mutation_prob: ga.mutation_prob,
            crossover_prob: ga.crossover_prob,
            elitism_count: ga.elitism_count,
            parents_fraction: ga.parents_fraction,
            stall_limit: ga.stall_limit,
            lower_bound: 0.0,
            upper_bound: TAU,
            points: 100,
            repeats: 20,
            r_list: None,
            methods: vec![Method::QuantumGa, Method::Gw],
            gw_rank: None,
            gw_roundings: logcut_core::baselines::GW_DEFAULT_ROUNDINGS,
            gw_seed: 0,
            random_samples: 1000,
            random_seed: 0,
        }
    }
}

impl Settings {
    /// Overrides every field the file mentions. A relative `graph` path is
    /// taken relative to the config file's directory.
    pub fn apply_config(&mut self, config: &ConfigFile, base: Option<&Path>) -> Result<()> {
        if let Some(path) = config.get("graph") {
            let path = PathBuf::from(path);
            self.graph = Some(GraphSource::File(match base {
                Some(dir) if path.is_relative() => dir.join(path),
                _ => path,
            }));
        }
        if let Some(spec) = config.value::<GraphSource>("random_regular")? {
            if config.get("graph").is_some() {
                return Err(CliError::usage("config sets both graph and random_regular"));
            }
            self.graph = Some(spec);
        }
        macro_rules! take {
            ($($field:ident),*) => {$(
                if let Some(v) = config.value(stringify!($field))? {
                    self.$field = v;
                }
            )*};
        }
        take!(
            mode,
            shots,
            noise,
            population,
            max_iterations,
            mutation_prob,
            crossover_prob,
            elitism_count,
            parents_fraction,
            lower_bound,
            upper_bound,
            points,
            repeats,
            gw_roundings,
            gw_seed,
            random_samples,
            random_seed
        );
        macro_rules! take_opt {
            ($($field:ident),*) => {$(
                if let Some(v) = config.value(stringify!($field))? {
                    self.$field = Some(v);
                }
            )*};
        }
        take_opt!(vars, steepness, stall_limit, gw_rank);
        if let Some(v) = config.get("seeds") {
            self.seeds = Some(parse_list("seeds", v)?);
        }
        if let Some(v) = config.get("r_list") {
            self.r_list = Some(parse_list("r_list", v)?);
        }
        if let Some(v) = config.get("methods") {
            self.methods = parse_list("methods", v)?;
        }
        Ok(())
    }

    /// Search settings for one run; `dim` is the variable count.
    pub fn ga_config(&self, dim: usize, seed: u64) -> GaConfig {
        GaConfig {
            population: self.population,
            max_iterations: self.max_iterations,
            mutation_prob: self.mutation_prob,
            crossover_prob: self.crossover_prob,
            elitism_count: self.elitism_count,
            parents_fraction: self.parents_fraction,
            bounds: vec![(self.lower_bound, self.upper_bound); dim],
            seed,
            stall_limit: self.stall_limit,
        }
    }
}
