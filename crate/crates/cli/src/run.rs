use std::io::Write;
use std::sync::Arc;

use meqsim::fingerprint::{sample_code, sample_default_code};
use meqsim::meq::register_qubits;
use meqsim::qsim::QubitCaps;
use meqsim::{LinearCode, ProtocolParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{ExperimentConfig, InputSource, Mode};
use crate::error::{CliError, Result};
use crate::instances::{self, Instance};
use crate::problems::{self, Backend};
use crate::report::REPORT_SCHEMA;

const CODE_STREAM: u64 = 0;
const INPUT_STREAM: u64 = 1;
const MEASUREMENT_STREAM_BASE: u64 = 2;

const CODE_ATTEMPTS: usize = 10_000;
const GAO_SLACK: f64 = 1e-9;

/// Independent generator for one concern, derived from the master seed.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// The code the players use, drawn from the code stream.
pub fn sample_experiment_code(config: &ExperimentConfig) -> Result<LinearCode> {
    let mut rng = stream(config.seed, CODE_STREAM);
    Ok(match config.m {
        Some(m) => sample_code(config.n, m, &mut rng, CODE_ATTEMPTS)?,
        None => sample_default_code(config.n, &mut rng, CODE_ATTEMPTS)?,
    })
}

/// Compiles the protocol for a quantum mode and checks the register fits.
pub fn compile(config: &ExperimentConfig, code: Arc<LinearCode>) -> Result<ProtocolParams> {
    let depth = problems::declared_depth(config);
    let params = match config.copies {
        Some(t) => ProtocolParams::with_copies(config.k, depth, t, code)?,
        None => ProtocolParams::new(config.k, depth, config.delta, code)?,
    };
    let required = register_qubits(&params);
    if required > config.hard_qubit_cap {
        return Err(CliError::QubitBudget { required, cap: config.hard_qubit_cap });
    }
    Ok(params)
}

/// Runs the experiment and returns its report records.
pub fn cmd_run(config: &ExperimentConfig) -> Result<Vec<Value>> {
    config.validate()?;
    let params = match config.mode {
        Mode::Classical => None,
        Mode::Sampled | Mode::ExactPath => Some(compile(config, Arc::new(sample_experiment_code(config)?))?),
    };
    let instances = instances::load(config, &mut stream(config.seed, INPUT_STREAM))?;
    let jobs: Vec<usize> = match config.input {
        InputSource::Random => (0..instances.len()).collect(),
        _ => (0..instances.len()).flat_map(|i| std::iter::repeat_n(i, config.trials)).collect(),
    };
    log::info!("{}: {} trials over {} instances", config.problem.name(), jobs.len(), instances.len());

    let caps = QubitCaps::with_hard(config.hard_qubit_cap);
    let trials = jobs
        .par_iter()
        .enumerate()
        .map(|(trial, &instance)| run_trial(config, params.as_ref(), caps, trial, instance, &instances[instance]))
        .collect::<Result<Vec<Value>>>()?;

    let mut records = Vec::with_capacity(trials.len() + 2);
    records.push(config_record(config, params.as_ref(), instances.len()));
    records.push(summary_record(params.as_ref(), &trials));
    records.splice(1..1, trials);
    Ok(records)
}

fn run_trial(
    config: &ExperimentConfig,
    params: Option<&ProtocolParams>,
    caps: QubitCaps,
    trial: usize,
    instance_index: usize,
    instance: &Instance,
) -> Result<Value> {
    let mut rng = stream(config.seed, MEASUREMENT_STREAM_BASE + trial as u64);
    let backend = match (params, config.mode) {
        (None, _) | (_, Mode::Classical) => Backend::Classical,
        (Some(params), Mode::Sampled) => Backend::Quantum { params, caps, rng: Some(&mut rng) },
        (Some(params), Mode::ExactPath) => Backend::Quantum { params, caps, rng: None },
    };
    let solved = problems::solve(config, instance, backend)?;
    let oracle = problems::oracle_output(config, instance);
    let exact = config.mode == Mode::ExactPath;
    Ok(json!({
        "schema": REPORT_SCHEMA,
        "record": "trial",
        "trial": trial,
        "instance": instance_index,
        "input": instance.to_json(),
        "match": solved.output == oracle,
        "output": solved.output,
        "oracle_output": oracle,
        "transcript_length": solved.transcript_length,
        "transcript_probability": solved.transcript_probability,
        "exact_path_probability": exact.then_some(solved.transcript_probability),
        "gao_bound": solved.gao_bound,
        "gao_bound_holds": solved.gao_bound.map(|g| solved.transcript_probability >= g - GAO_SLACK),
        "qubit_cost": solved.cost,
    }))
}

fn config_record(config: &ExperimentConfig, params: Option<&ProtocolParams>, instances: usize) -> Value {
    json!({
        "schema": REPORT_SCHEMA,
        "record": "config",
        "config": config,
        "code": params.map(|p| p.code.rows().iter().map(ToString::to_string).collect::<Vec<_>>()),
        "copies": params.map(|p| p.copies),
        "epsilon": params.map(|p| p.epsilon),
        "depth": problems::declared_depth(config),
        "register_qubits": params.map(register_qubits),
        "instances": instances,
    })
}

fn summary_record(params: Option<&ProtocolParams>, trials: &[Value]) -> Value {
    let n = trials.len();
    let mismatches = trials.iter().filter(|t| t["match"] == json!(false)).count();
    let error = mismatches as f64 / n as f64;
    let gao_violations = trials.iter().filter(|t| t["gao_bound_holds"] == json!(false)).count();
    let min_p = trials.iter().filter_map(|t| t["transcript_probability"].as_f64()).fold(1.0, f64::min);
    json!({
        "schema": REPORT_SCHEMA,
        "record": "summary",
        "trials": n,
        "mismatches": mismatches,
        "empirical_error": error,
        "binomial_sd": (error * (1.0 - error) / n as f64).sqrt(),
        "analytic_error_bound": params.map(ProtocolParams::analytic_error_bound),
        "gao_violations": gao_violations,
        "min_transcript_probability": min_p,
    })
}

/// Writes records as JSON lines.
pub fn write_report(records: &[Value], out: &mut dyn Write) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, r).map_err(std::io::Error::from)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}
