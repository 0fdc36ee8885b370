use meqsim::qsim::QubitCaps;
use meqsim::strategies::*;
use meqsim::{oracle, run_classical, run_protocol, BitString, CostReport, ExecMode, Graph, ProtocolParams, RunOutcome};
use rand::RngCore;
use serde_json::{json, Value};

use crate::config::{ExperimentConfig, Problem};
use crate::error::Result;
use crate::instances::Instance;

/// A run of the configured strategy, with its output rendered as JSON.
#[derive(Debug, Clone)]
pub struct Solved {
    pub output: Value,
    pub transcript_length: usize,
    pub transcript_probability: f64,
    pub gao_bound: Option<f64>,
    pub cost: Option<CostReport>,
}

/// How to answer queries.
pub enum Backend<'a> {
    Classical,
    Quantum { params: &'a ProtocolParams, caps: QubitCaps, rng: Option<&'a mut dyn RngCore> },
}

fn degrees(instance: &Instance) -> Vec<usize> {
    match instance {
        Instance::Graph(g) => g.degrees(),
        Instance::Strings(_) => Vec::new(),
    }
}

/// Query depth the configured strategy declares, independent of the input.
pub fn declared_depth(config: &ExperimentConfig) -> usize {
    let (k, n) = (config.k, config.n);
    match config.problem {
        Problem::GroupByEq => GroupByEq::new(k, n).declared_depth(),
        Problem::AllEq => AllEq { k, n }.declared_depth(),
        Problem::ExistsEq => ExistsEq { k, n }.declared_depth(),
        Problem::FrequencyMoment => FrequencyMoment { k, n, p: config.p }.declared_depth(),
        Problem::P3Freeness => P3Freeness::new(vec![0; k]).declared_depth(),
        Problem::NeighborhoodDiversity => NeighborhoodDiversity { k }.declared_depth(),
        Problem::DhReconstruct => DhReconstruct { k }.declared_depth(),
        Problem::IsolatedCliques => IsolatedCliques::new(config.d, vec![0; k]).declared_depth(),
    }
}

fn execute<S: Strategy>(strategy: &S, inputs: &[BitString], backend: Backend<'_>) -> Result<RunOutcome<S::Output>> {
    Ok(match backend {
        Backend::Classical => run_classical(strategy, inputs)?,
        Backend::Quantum { params, caps, rng: Some(rng) } => run_protocol(params, inputs, strategy, ExecMode::Sample(rng), caps)?,
        Backend::Quantum { params, caps, rng: None } => run_protocol(params, inputs, strategy, ExecMode::ExactPath, caps)?,
    })
}

fn solved<O>(outcome: RunOutcome<O>, render: impl FnOnce(O) -> Value) -> Solved {
    Solved {
        transcript_length: outcome.transcript.len(),
        transcript_probability: outcome.transcript_probability,
        gao_bound: outcome.gao_bound,
        cost: outcome.cost,
        output: render(outcome.output),
    }
}

fn dh_json(graph: Option<Graph>) -> Value {
    match graph {
        Some(g) => json!({ "accepted": true, "edges": g.edges() }),
        None => json!({ "accepted": false, "edges": null }),
    }
}

/// Runs the configured strategy on one instance.
pub fn solve(config: &ExperimentConfig, instance: &Instance, backend: Backend<'_>) -> Result<Solved> {
    let (k, n) = (config.k, config.n);
    let inputs = instance.inputs();
    Ok(match config.problem {
        Problem::GroupByEq => solved(execute(&GroupByEq::new(k, n), &inputs, backend)?, |o| json!(o)),
        Problem::AllEq => solved(execute(&AllEq { k, n }, &inputs, backend)?, |o| json!(o)),
        Problem::ExistsEq => solved(execute(&ExistsEq { k, n }, &inputs, backend)?, |o| json!(o)),
        Problem::FrequencyMoment => solved(execute(&FrequencyMoment { k, n, p: config.p }, &inputs, backend)?, |o| json!(o)),
        Problem::P3Freeness => solved(execute(&P3Freeness::new(degrees(instance)), &inputs, backend)?, |o| json!(o)),
        Problem::NeighborhoodDiversity => solved(execute(&NeighborhoodDiversity { k }, &inputs, backend)?, |o| json!(o)),
        Problem::DhReconstruct => {
            let outcome = execute(&DhReconstruct { k }, &inputs, backend)?;
            let graph = outcome.output.reconstruct(k)?;
            solved(outcome, |_| dh_json(graph))
        }
        Problem::IsolatedCliques => {
            let mut strategy = IsolatedCliques::new(config.d, degrees(instance));
            strategy.include_singletons = config.include_singletons;
            solved(execute(&strategy, &inputs, backend)?, |o| json!(o))
        }
    })
}

/// The reference answer from the brute-force oracle, in the same shape as
/// [`solve`] renders strategy outputs.
pub fn oracle_output(config: &ExperimentConfig, instance: &Instance) -> Value {
    let graph = || match instance {
        Instance::Graph(g) => g,
        Instance::Strings(_) => unreachable!("graph problem with string instance"),
    };
    let inputs = instance.inputs();
    match config.problem {
        Problem::GroupByEq => json!(oracle::partition(&inputs)),
        Problem::AllEq => json!(oracle::all_eq(&inputs)),
        Problem::ExistsEq => json!(oracle::exists_eq(&inputs)),
        Problem::FrequencyMoment => json!(oracle::frequency_moment(&inputs, config.p)),
        Problem::P3Freeness => json!(oracle::p3_free(graph())),
        Problem::NeighborhoodDiversity => json!(oracle::neighborhood_diversity(graph())),
        Problem::DhReconstruct => {
            let g = graph();
            dh_json(oracle::dh_test_and_decompose(g).map(|_| g.clone()))
        }
        Problem::IsolatedCliques => json!(oracle::isolated_cliques(graph(), config.d, config.include_singletons)),
    }
}
