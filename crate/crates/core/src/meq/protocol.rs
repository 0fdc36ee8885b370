use rand::RngCore;

use super::params::{qubit_cost, CostReport, ProtocolParams};
use super::query::{MeqQuery, Transcript};
use super::register::GlobalRegister;
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::oracle::ClassicalAnswerer;
use crate::qsim::QubitCaps;
use crate::strategies::Strategy;

/// Answers modified equality queries, reporting the outcome and its
/// probability conditioned on everything answered before.
pub trait Answerer {
    fn answer(&mut self, query: &MeqQuery) -> Result<(bool, f64)>;
}

/// The query interface a strategy runs against: forwards to an answerer,
/// records the transcript and enforces the depth limit.
pub struct Session<'a> {
    answerer: &'a mut dyn Answerer,
    k: usize,
    n: usize,
    limit: usize,
    transcript: Transcript,
}

impl<'a> Session<'a> {
    pub fn new(answerer: &'a mut dyn Answerer, k: usize, n: usize, limit: usize) -> Self {
        Self { answerer, k, n, limit, transcript: Transcript::default() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of queries asked so far.
    pub fn queries(&self) -> usize {
        self.transcript.len()
    }

    pub fn ask(&mut self, query: MeqQuery) -> Result<bool> {
        if self.transcript.len() >= self.limit {
            return Err(Error::DepthExceeded(self.limit));
        }
        query.validate(self.k, self.n)?;
        let (outcome, p) = self.answerer.answer(&query)?;
        self.transcript.push(query, outcome, p);
        Ok(outcome)
    }

    pub fn into_transcript(self) -> Transcript {
        self.transcript
    }
}

/// How the quantum answerer resolves each measurement.
pub enum ExecMode<'a> {
    /// Sample every outcome from the Born distribution.
    Sample(&'a mut dyn RngCore),
    /// Force every outcome to the classically correct answer and record its
    /// exact probability.
    ExactPath,
}

enum Resolver<'a> {
    Sample(&'a mut dyn RngCore),
    Exact(ClassicalAnswerer),
}

/// Answers queries by measuring the referee's register.
pub struct QuantumAnswerer<'a> {
    register: GlobalRegister,
    resolver: Resolver<'a>,
}

impl<'a> QuantumAnswerer<'a> {
    pub fn new(register: GlobalRegister, inputs: &[BitString], mode: ExecMode<'a>) -> Self {
        let resolver = match mode {
            ExecMode::Sample(rng) => Resolver::Sample(rng),
            ExecMode::ExactPath => Resolver::Exact(ClassicalAnswerer::new(inputs.to_vec())),
        };
        Self { register, resolver }
    }

    pub fn register(&self) -> &GlobalRegister {
        &self.register
    }

    pub fn register_mut(&mut self) -> &mut GlobalRegister {
        &mut self.register
    }
}

impl Answerer for QuantumAnswerer<'_> {
    fn answer(&mut self, query: &MeqQuery) -> Result<(bool, f64)> {
        match &mut self.resolver {
            Resolver::Sample(rng) => self.register.execute_sampled(query, &mut **rng),
            Resolver::Exact(oracle) => {
                let (expected, _) = oracle.answer(query)?;
                let p = self.register.execute_forced(query, expected)?;
                Ok((expected, p))
            }
        }
    }
}

/// Result of running a strategy.
#[derive(Debug, Clone)]
pub struct RunOutcome<O> {
    pub output: O,
    pub transcript: Transcript,
    /// Communication cost; absent for classical runs.
    pub cost: Option<CostReport>,
    /// Product of the conditional probabilities in the transcript.
    pub transcript_probability: f64,
    /// `gao_bound` of the initial-state probabilities, for exact-path runs.
    pub gao_bound: Option<f64>,
}

/// `1 − 4·Σ(1 − p_i)`, clamped at 0: the lower bound on the probability that
/// sequential projective measurements all give their recorded outcomes.
pub fn gao_bound(initial_probs: &[f64]) -> f64 {
    let slack: f64 = initial_probs.iter().map(|p| 1.0 - p).sum();
    (1.0 - 4.0 * slack).max(0.0)
}

/// For each transcript entry, the probability that its measurement applied
/// to a freshly initialized register yields the recorded outcome.
pub fn initial_state_probs(params: &ProtocolParams, inputs: &[BitString], transcript: &Transcript, caps: QubitCaps) -> Result<Vec<f64>> {
    transcript
        .entries
        .iter()
        .map(|e| {
            let mut reg = GlobalRegister::init(params, inputs, caps)?;
            reg.outcome_probability(&e.query, e.outcome)
        })
        .collect()
}

/// Runs `strategy` on the quantum protocol compiled with `params`.
///
/// In [`ExecMode::ExactPath`] every outcome is forced to the classically
/// correct answer; the transcript probability is then the exact probability
/// that the protocol follows the correct path, and the run also carries the
/// Gao certificate computed from the initial-state probabilities.
pub fn run_protocol<S: Strategy + ?Sized>(
    params: &ProtocolParams,
    inputs: &[BitString],
    strategy: &S,
    mode: ExecMode<'_>,
    caps: QubitCaps,
) -> Result<RunOutcome<S::Output>> {
    if strategy.declared_depth() > params.depth {
        return Err(Error::InvalidParams(format!(
            "strategy declares depth {} but the protocol was compiled for {}",
            strategy.declared_depth(),
            params.depth
        )));
    }
    let exact = matches!(mode, ExecMode::ExactPath);
    let register = GlobalRegister::init(params, inputs, caps)?;
    let mut answerer = QuantumAnswerer::new(register, inputs, mode);
    let mut session = Session::new(&mut answerer, params.k, params.n(), params.depth);
    let output = strategy.run(&mut session)?;
    let mut transcript = session.into_transcript();

    let gao = if exact {
        let probs = initial_state_probs(params, inputs, &transcript, caps)?;
        for (e, p) in transcript.entries.iter_mut().zip(&probs) {
            e.initial_state_probability = Some(*p);
        }
        Some(gao_bound(&probs))
    } else {
        None
    };
    let mut cost = qubit_cost(params);
    cost.classical_bits = strategy.classical_bits();
    Ok(RunOutcome {
        output,
        transcript_probability: transcript.probability(),
        transcript,
        cost: Some(cost),
        gao_bound: gao,
    })
}

/// Runs `strategy` against exact classical answers, still enforcing its
/// declared depth.
pub fn run_classical<S: Strategy + ?Sized>(strategy: &S, inputs: &[BitString]) -> Result<RunOutcome<S::Output>> {
    let n = inputs.first().map_or(0, BitString::len);
    let mut answerer = ClassicalAnswerer::new(inputs.to_vec());
    let mut session = Session::new(&mut answerer, inputs.len(), n, strategy.declared_depth());
    let output = strategy.run(&mut session)?;
    let transcript = session.into_transcript();
    Ok(RunOutcome { output, transcript, cost: None, transcript_probability: 1.0, gao_bound: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gao_examples() {
        assert_eq!(gao_bound(&[1.0, 1.0, 1.0]), 1.0);
        assert!((gao_bound(&[0.99; 10]) - 0.6).abs() < 1e-12);
        assert_eq!(gao_bound(&[0.5, 0.5]), 0.0);
        assert_eq!(gao_bound(&[]), 1.0);
    }

    #[test]
    fn gao_matches_design_budget() {
        // D queries each succeeding with 1 − δ/(4D) on the initial state.
        for d in [1usize, 3, 10, 45] {
            for delta in [0.01, 0.1, 1.0 / 3.0] {
                let p = 1.0 - delta / (4.0 * d as f64);
                assert!(gao_bound(&vec![p; d]) >= 1.0 - delta - 1e-12);
            }
        }
    }
}
