//! Fixed-seed invariant suites for every module.

use std::fmt::Display;
use std::sync::Arc;

use clap::ValueEnum;
use itertools::Itertools;
use meqsim::fingerprint::sample_default_code;
use meqsim::meq::{register_qubits, SWAP_TEST_SOUNDNESS};
use meqsim::qsim::{FactoredState, MeasureMode, QubitCaps, TOLERANCE};
use meqsim::strategies::{reconstruct_from_decomp, DhReconstruct};
use meqsim::{oracle, run_classical, BitString, Gate, GlobalRegister, Graph, LinearCode, MeqQuery, ProtocolParams, StateVector};
use rand::{Rng, RngCore};
use serde::Serialize;

use crate::config::{ExperimentConfig, InputSource, Mode, Problem};
use crate::instances::Instance;
use crate::problems::{self, Backend};
use crate::report::validate_report;
use crate::run::{cmd_run, stream, write_report};

const SEED: u64 = 0x5e1f_7e57;

/// Deliberate corruption used to check that the suites catch faults.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Fault {
    /// Adds a code whose generator has a row of full weight `m`.
    CodeWeightWindow,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        Self { name, checks: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Records an error as a failure and returns the value otherwise.
    fn ok<T, E: Display>(&mut self, result: Result<T, E>, what: &str) -> Option<T> {
        self.checks += 1;
        result.map_err(|e| self.failures.push(format!("{what}: {e}"))).ok()
    }
}

pub fn cmd_selftest(fault: Option<Fault>) -> Vec<SuiteResult> {
    vec![qsim_suite(), fingerprint_suite(fault), meq_suite(), strategies_suite(), oracle_suite(), report_suite()]
}

fn random_gate(rng: &mut dyn RngCore, n: usize) -> Gate {
    let mut qubits: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        qubits.swap(i, rng.random_range(0..=i));
    }
    match rng.random_range(0..5) {
        0 => Gate::Hadamard(qubits[0]),
        1 => Gate::PauliX(qubits[0]),
        2 => Gate::Cnot { control: qubits[0], target: qubits[1] },
        3 => Gate::ControlledSwapBlock { control: qubits[0], left: vec![qubits[1]], right: vec![qubits[2]] },
        _ => Gate::DiagonalPhase { qubits: vec![qubits[0], qubits[1]], signs: vec![1, -1, -1, 1] },
    }
}

fn qsim_suite() -> SuiteResult {
    let mut s = SuiteResult::new("qsim");
    let mut rng = stream(SEED, 0);
    for trial in 0..20 {
        let n = 3 + trial % 4;
        let circuit: Vec<Gate> = (0..30).map(|_| random_gate(&mut rng, n)).collect();
        let mut state = StateVector::zero(n);
        let Some(()) = s.ok(state.apply_all(&circuit), "apply") else { continue };
        s.check((state.norm() - 1.0).abs() < TOLERANCE, || format!("norm {} after circuit {trial}", state.norm()));

        let mut back = state.clone();
        let inverse: Vec<Gate> = circuit.iter().rev().map(Gate::inverse).collect();
        if s.ok(back.apply_all(&inverse), "apply inverse").is_some() {
            s.check(back.max_abs_diff(&StateVector::zero(n)) < TOLERANCE, || format!("inverse circuit {trial} does not undo it"));
        }

        let p0 = state.probability(0, false).unwrap_or(f64::NAN);
        let p1 = state.probability(0, true).unwrap_or(f64::NAN);
        s.check((p0 + p1 - 1.0).abs() < TOLERANCE, || format!("Born probabilities sum to {}", p0 + p1));

        let mut measured = state.clone();
        if let Some((b, _)) = s.ok(measured.measure(0, MeasureMode::Sample(&mut rng)), "measure") {
            let again = measured.probability(0, b).unwrap_or(0.0);
            s.check((again - 1.0).abs() < TOLERANCE, || format!("repeat measurement gives {b} with probability {again}"));
        }

        let layout = {
            let mut l = meqsim::RegisterLayout::new();
            for q in 0..n {
                let _ = l.push(format!("q{q}"), 1);
            }
            l
        };
        let factored = FactoredState::from_blocks(&layout, vec![StateVector::zero(1); n], QubitCaps::default())
            .and_then(|mut f| f.apply_all(&circuit).map(|()| f))
            .and_then(|f| f.to_dense());
        if let Some(dense) = s.ok(factored, "factored run") {
            s.check(dense.max_abs_diff(&state) < TOLERANCE, || format!("factored and dense states differ on circuit {trial}"));
        }
    }
    s
}

fn fingerprint_suite(fault: Option<Fault>) -> SuiteResult {
    let mut s = SuiteResult::new("fingerprint");
    let mut rng = stream(SEED, 1);
    let mut codes = Vec::new();
    for n in 1..=5 {
        if let Some(code) = s.ok(sample_default_code(n, &mut rng, 10_000), "sample code") {
            codes.push(code);
        }
    }
    if fault == Some(Fault::CodeWeightWindow) {
        let rows = vec!["11111111".parse().expect("literal"), "11001100".parse().expect("literal")];
        codes.push(LinearCode::unchecked(rows).expect("shape is valid"));
    }
    for code in &codes {
        let (n, m) = (code.n(), code.m());
        s.ok(code.validate(), &format!("weight window of code n={n} m={m}"));
        let states: Vec<StateVector> = BitString::all(n).filter_map(|x| code.fingerprint_state(&x).ok()).collect();
        s.check(states.len() == 1 << n, || format!("fingerprint preparation failed for n={n}"));
        for (a, b) in (0..states.len()).tuple_combinations() {
            let overlap = states[a].inner(&states[b]);
            s.check(overlap.re.abs() <= 0.5 + TOLERANCE && overlap.im.abs() < TOLERANCE, || {
                format!("code n={n} m={m}: fingerprints {a} and {b} overlap {overlap}")
            });
        }
        let text = code.to_text();
        s.check(LinearCode::from_text(&text).map(|c| c.rows() == code.rows()).unwrap_or(false), || format!("text round trip of n={n} m={m}"));
    }
    s
}

fn meq_suite() -> SuiteResult {
    let mut s = SuiteResult::new("meq");
    let mut rng = stream(SEED, 2);
    let Some(code) = s.ok(sample_default_code(2, &mut rng, 10_000), "sample code") else { return s };
    let code = Arc::new(code);
    for t in 1..=2 {
        let Some(params) = s.ok(ProtocolParams::with_copies(2, 1, t, code.clone()), "params") else { continue };
        s.check(register_qubits(&params) == 2 * t * code.width() + t * code.width() + t + 1, || "register size".into());
        for (x, y) in BitString::all(2).cartesian_product(BitString::all(2)) {
            let inputs = [x, y];
            let Some(mut reg) = s.ok(GlobalRegister::init(&params, &inputs, QubitCaps::default()), "init") else { continue };
            let Some(p) = s.ok(reg.outcome_probability(&MeqQuery::eq(0, 1, 2), true), "query") else { continue };
            if x == y {
                s.check((p - 1.0).abs() < TOLERANCE, || format!("equal inputs {x} accepted with {p}"));
            } else {
                let inner = code.fingerprint_inner(&x, &y).unwrap_or(f64::NAN);
                let expected = ((1.0 + inner * inner) / 2.0).powi(t as i32);
                s.check((p - expected).abs() < 1e-9, || format!("{x} vs {y}, t={t}: accept {p}, expected {expected}"));
                s.check(p <= SWAP_TEST_SOUNDNESS.powi(t as i32) + TOLERANCE, || format!("{x} vs {y}: accept {p} above soundness"));
            }
        }
    }
    s
}

fn strategies_suite() -> SuiteResult {
    let mut s = SuiteResult::new("strategies");
    let string_problems = [Problem::GroupByEq, Problem::AllEq, Problem::ExistsEq, Problem::FrequencyMoment];
    for problem in string_problems {
        let config = ExperimentConfig::new(problem, 3, 2);
        for x in (0..3).map(|_| BitString::all(2)).multi_cartesian_product() {
            compare(&mut s, &config, &Instance::Strings(x));
        }
    }
    let graph_problems = [Problem::P3Freeness, Problem::NeighborhoodDiversity, Problem::DhReconstruct, Problem::IsolatedCliques];
    for problem in graph_problems {
        let config = ExperimentConfig::new(problem, 4, 4);
        for g in Graph::all(4) {
            compare(&mut s, &config, &Instance::Graph(g));
        }
    }

    let mut rng = stream(SEED, 3);
    let Some(code) = s.ok(sample_default_code(2, &mut rng, 10_000), "sample code") else { return s };
    let config = ExperimentConfig { mode: Mode::ExactPath, copies: Some(1), ..ExperimentConfig::new(Problem::GroupByEq, 3, 2) };
    let Some(params) = s.ok(crate::run::compile(&config, Arc::new(code)), "compile") else { return s };
    for x in (0..3).map(|_| BitString::all(2)).multi_cartesian_product() {
        let instance = Instance::Strings(x);
        let backend = Backend::Quantum { params: &params, caps: QubitCaps::default(), rng: None };
        if let Some(out) = s.ok(problems::solve(&config, &instance, backend), "exact-path run") {
            s.check(out.output == problems::oracle_output(&config, &instance), || format!("exact path disagrees on {:?}", instance.to_json()));
            let gao = out.gao_bound.unwrap_or(f64::INFINITY);
            s.check(out.transcript_probability >= gao - TOLERANCE, || format!("path probability {} below certificate {gao}", out.transcript_probability));
        }
    }
    s
}

fn compare(s: &mut SuiteResult, config: &ExperimentConfig, instance: &Instance) {
    if let Some(out) = s.ok(problems::solve(config, instance, Backend::Classical), config.problem.name()) {
        let expected = problems::oracle_output(config, instance);
        s.check(out.output == expected, || format!("{} on {}: got {}, oracle {expected}", config.problem.name(), instance.to_json(), out.output));
        s.check(out.transcript_length <= problems::declared_depth(config), || format!("{} exceeded its depth", config.problem.name()));
    }
}

fn oracle_suite() -> SuiteResult {
    let mut s = SuiteResult::new("oracle");
    for k in 2..=5 {
        for g in Graph::all(k) {
            for (u, v) in (0..k).tuple_combinations() {
                s.check(oracle::edge_test_check(&g, u, v), || format!("edge identity fails on {:?} at {u},{v}", g.edges()));
            }
        }
    }
    let mut rng = stream(SEED, 4);
    for k in 1..=9 {
        for _ in 0..10 {
            let g = oracle::gen_dh_graph(k, &mut rng);
            match oracle::dh_test_and_decompose(&g) {
                Some((steps, last)) => {
                    let back = reconstruct_from_decomp(k, &steps, last).ok();
                    s.check(back.as_ref() == Some(&g), || format!("decomposition of {:?} does not rebuild it", g.edges()));
                }
                None => s.check(false, || format!("generated graph {:?} rejected", g.edges())),
            }
            let out = run_classical(&DhReconstruct { k }, &g.nih_inputs()).ok().and_then(|o| o.output.reconstruct(k).ok().flatten());
            s.check(out.as_ref() == Some(&g), || format!("strategy fails to reconstruct {:?}", g.edges()));
        }
    }
    s.check(oracle::dh_test_and_decompose(&Graph::cycle(5)).is_none(), || "C5 accepted as distance-hereditary".into());
    s
}

fn report_suite() -> SuiteResult {
    let mut s = SuiteResult::new("report");
    let runs = [
        ExperimentConfig { mode: Mode::Sampled, copies: Some(2), trials: 6, ..ExperimentConfig::new(Problem::GroupByEq, 3, 2) },
        ExperimentConfig { mode: Mode::ExactPath, copies: Some(1), ..ExperimentConfig::new(Problem::AllEq, 2, 2) },
        ExperimentConfig { input: InputSource::Exhaustive, ..ExperimentConfig::new(Problem::IsolatedCliques, 4, 4) },
        ExperimentConfig { trials: 5, ..ExperimentConfig::new(Problem::DhReconstruct, 6, 6) },
    ];
    for config in &runs {
        let name = config.problem.name();
        let Some(records) = s.ok(cmd_run(config), name) else { continue };
        s.ok(validate_report(&records), &format!("{name} report schema"));
        let bytes = |r: &[serde_json::Value]| {
            let mut buf = Vec::new();
            write_report(r, &mut buf).map(|()| buf).ok()
        };
        let again = cmd_run(config).ok();
        s.check(again.is_some() && bytes(&records) == bytes(again.as_deref().unwrap_or_default()), || format!("{name} report is not deterministic"));
    }
    s
}
