use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use meqsim::qsim::DEFAULT_HARD_QUBIT_CAP;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Problem {
    GroupByEq,
    AllEq,
    ExistsEq,
    FrequencyMoment,
    P3Freeness,
    NeighborhoodDiversity,
    DhReconstruct,
    IsolatedCliques,
}

impl Problem {
    /// Inputs are neighborhood vectors of a `k`-node graph.
    pub fn is_graph(self) -> bool {
        matches!(self, Problem::P3Freeness | Problem::NeighborhoodDiversity | Problem::DhReconstruct | Problem::IsolatedCliques)
    }

    pub fn name(self) -> &'static str {
        match self {
            Problem::GroupByEq => "group_by_eq",
            Problem::AllEq => "all_eq",
            Problem::ExistsEq => "exists_eq",
            Problem::FrequencyMoment => "frequency_moment",
            Problem::P3Freeness => "p3_freeness",
            Problem::NeighborhoodDiversity => "neighborhood_diversity",
            Problem::DhReconstruct => "dh_reconstruct",
            Problem::IsolatedCliques => "isolated_cliques",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Mode {
    /// Measurement outcomes drawn from the Born distribution.
    Sampled,
    /// Outcomes forced to the correct answers, with exact path probabilities.
    ExactPath,
    /// Exact classical answers, no quantum simulation.
    Classical,
}

/// Where trial inputs come from: `random`, `exhaustive`, or a file path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum InputSource {
    Random,
    Exhaustive,
    File(PathBuf),
}

impl FromStr for InputSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "random" => Ok(InputSource::Random),
            "exhaustive" => Ok(InputSource::Exhaustive),
            "" => Err("empty input source".into()),
            path => Ok(InputSource::File(PathBuf::from(path.strip_prefix("file:").unwrap_or(path)))),
        }
    }
}

impl TryFrom<String> for InputSource {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<InputSource> for String {
    fn from(source: InputSource) -> String {
        source.to_string()
    }
}

impl fmt::Display for InputSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputSource::Random => f.write_str("random"),
            InputSource::Exhaustive => f.write_str("exhaustive"),
            InputSource::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// Flags of `meqsim run`. Every flag can also be set in the TOML file given
/// by `--config`, under the same name with underscores; flags win.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// TOML file with any of the options below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub problem: Option<Problem>,
    /// Number of players (graph nodes for graph problems).
    #[arg(long)]
    pub k: Option<usize>,
    /// Input length; graph problems use n = k.
    #[arg(long)]
    pub n: Option<usize>,
    /// Isolation bound for isolated_cliques.
    #[arg(long)]
    pub d: Option<usize>,
    /// Moment order for frequency_moment.
    #[arg(long)]
    pub p: Option<u32>,
    /// Target protocol error; sets the number of copies unless --copies is given.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Fingerprint copies per player, overriding --delta.
    #[arg(long)]
    pub copies: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Random instances, or runs per instance for exhaustive and file inputs.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Code length override (power of two).
    #[arg(long)]
    pub m: Option<usize>,
    /// random | exhaustive | <path>
    #[arg(long)]
    pub input: Option<InputSource>,
    /// Report path; stdout if absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Whether isolated_cliques lists single nodes.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub include_singletons: Option<bool>,
    #[arg(long, env = "MEQSIM_HARD_QUBIT_CAP")]
    pub hard_qubit_cap: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    problem: Option<Problem>,
    k: Option<usize>,
    n: Option<usize>,
    d: Option<usize>,
    p: Option<u32>,
    delta: Option<f64>,
    copies: Option<usize>,
    mode: Option<Mode>,
    trials: Option<usize>,
    seed: Option<u64>,
    m: Option<usize>,
    input: Option<InputSource>,
    output: Option<PathBuf>,
    include_singletons: Option<bool>,
    hard_qubit_cap: Option<usize>,
}

/// A fully resolved experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub problem: Problem,
    pub k: usize,
    pub n: usize,
    pub d: usize,
    pub p: u32,
    pub delta: f64,
    pub copies: Option<usize>,
    pub mode: Mode,
    pub trials: usize,
    pub seed: u64,
    pub m: Option<usize>,
    pub input: InputSource,
    pub include_singletons: bool,
    pub hard_qubit_cap: usize,
}

impl ExperimentConfig {
    pub fn new(problem: Problem, k: usize, n: usize) -> Self {
        Self {
            problem,
            k,
            n: if problem.is_graph() { k } else { n },
            d: 1,
            p: 2,
            delta: 0.1,
            copies: None,
            mode: Mode::Classical,
            trials: 1,
            seed: 0,
            m: None,
            input: InputSource::Random,
            include_singletons: true,
            hard_qubit_cap: DEFAULT_HARD_QUBIT_CAP,
        }
    }

    /// Merges flags over the config file (if any) over defaults. Returns the
    /// configuration and the report path.
    pub fn resolve(args: &RunArgs) -> Result<(Self, Option<PathBuf>)> {
        let file = match &args.config {
            Some(path) => load_file(path)?,
            None => FileConfig::default(),
        };
        let problem = args.problem.or(file.problem).ok_or_else(|| CliError::Config("--problem is required".into()))?;
        let k = args.k.or(file.k).ok_or_else(|| CliError::Config("--k is required".into()))?;
        let n = match (problem.is_graph(), args.n.or(file.n)) {
            (true, Some(n)) if n != k => return Err(CliError::Config(format!("graph problems use n = k, got n = {n}, k = {k}"))),
            (true, _) => k,
            (false, Some(n)) => n,
            (false, None) => return Err(CliError::Config("--n is required".into())),
        };
        let defaults = Self::new(problem, k, n);
        let config = Self {
            d: args.d.or(file.d).unwrap_or(defaults.d),
            p: args.p.or(file.p).unwrap_or(defaults.p),
            delta: args.delta.or(file.delta).unwrap_or(defaults.delta),
            copies: args.copies.or(file.copies),
            mode: args.mode.or(file.mode).unwrap_or(defaults.mode),
            trials: args.trials.or(file.trials).unwrap_or(defaults.trials),
            seed: args.seed.or(file.seed).unwrap_or(defaults.seed),
            m: args.m.or(file.m),
            input: args.input.clone().or(file.input).unwrap_or(defaults.input),
            include_singletons: args.include_singletons.or(file.include_singletons).unwrap_or(defaults.include_singletons),
            hard_qubit_cap: args.hard_qubit_cap.or(file.hard_qubit_cap).unwrap_or(defaults.hard_qubit_cap),
            ..defaults
        };
        config.validate()?;
        Ok((config, args.output.clone().or(file.output)))
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(CliError::Config(msg));
        if self.k < 2 {
            return fail(format!("k = {} but at least 2 players are needed", self.k));
        }
        if self.n == 0 || self.n > meqsim::fingerprint::MAX_CODE_INPUT_BITS {
            return fail(format!("n = {} outside [1, {}]", self.n, meqsim::fingerprint::MAX_CODE_INPUT_BITS));
        }
        if self.trials == 0 {
            return fail("trials must be at least 1".into());
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return fail(format!("delta = {} outside (0, 1)", self.delta));
        }
        if self.copies == Some(0) {
            return fail("copies must be at least 1".into());
        }
        if self.problem == Problem::IsolatedCliques && self.d == 0 {
            return fail("isolated_cliques needs d >= 1".into());
        }
        Ok(())
    }
}

fn load_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)?;
    Ok(toml::from_str(&text)?)
}
