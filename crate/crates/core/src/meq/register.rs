//! The referee's register and the per-query measurement circuit.
//!
//! Layout, in qubit order: `t` fingerprint copies per player (`R{ℓ}.{r}`),
//! `t` referee copies (`F.{r}`) used by single-player queries, the SWAP-test
//! ancillas `S.{r}`, and the readout qubit `S`. All of it is one register on
//! which every query acts as a two-outcome projective measurement.

use rand::RngCore;

use super::params::ProtocolParams;
use super::query::MeqQuery;
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::qsim::{FactoredState, Gate, MeasureMode, QubitCaps, RegisterLayout, StateVector};

pub struct GlobalRegister {
    params: ProtocolParams,
    layout: RegisterLayout,
    state: FactoredState,
    players: Vec<Vec<Vec<usize>>>,
    referee: Vec<Vec<usize>>,
    ancillas: Vec<usize>,
    readout: usize,
}

/// Total qubits of the register for `params`.
pub fn register_qubits(params: &ProtocolParams) -> usize {
    register_qubits_for(params.k, params.copies, params.code.width())
}

/// Register size for `k` players sending `copies` fingerprints of `width`
/// qubits: player copies, referee copies, one ancilla per copy and the
/// readout.
pub fn register_qubits_for(k: usize, copies: usize, width: usize) -> usize {
    k * copies * width + copies * width + copies + 1
}

impl GlobalRegister {
    /// Player `ℓ`'s copies hold the fingerprint of `inputs[ℓ]`; the referee
    /// copies and ancillas start in `|0⟩`.
    pub fn init(params: &ProtocolParams, inputs: &[BitString], caps: QubitCaps) -> Result<Self> {
        if inputs.len() != params.k {
            return Err(Error::InvalidParams(format!("{} inputs for k = {}", inputs.len(), params.k)));
        }
        if let Some(x) = inputs.iter().find(|x| x.len() != params.n()) {
            return Err(Error::LengthMismatch { expected: params.n(), found: x.len() });
        }
        let required = register_qubits(params);
        if required > caps.hard {
            return Err(Error::QubitCap { required, cap: caps.hard });
        }

        let code = &params.code;
        let w = code.width();
        let t = params.copies;
        let mut layout = RegisterLayout::new();
        let mut locals = Vec::new();
        let mut players = Vec::with_capacity(params.k);
        for (l, x) in inputs.iter().enumerate() {
            let fp = code.fingerprint_state(x)?;
            let mut copies = Vec::with_capacity(t);
            for r in 0..t {
                copies.push(layout.push(format!("R{l}.{r}"), w)?.qubits().collect());
                locals.push(fp.clone());
            }
            players.push(copies);
        }
        let mut referee = Vec::with_capacity(t);
        for r in 0..t {
            referee.push(layout.push(format!("F.{r}"), w)?.qubits().collect());
            locals.push(StateVector::zero(w));
        }
        let mut ancillas = Vec::with_capacity(t);
        for r in 0..t {
            ancillas.push(layout.push(format!("S.{r}"), 1)?.offset);
            locals.push(StateVector::zero(1));
        }
        let readout = layout.push("S", 1)?.offset;
        locals.push(StateVector::zero(1));

        let state = FactoredState::from_blocks(&layout, locals, caps)?;
        Ok(Self { params: params.clone(), layout, state, players, referee, ancillas, readout })
    }

    pub fn params(&self) -> &ProtocolParams {
        &self.params
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn state(&self) -> &FactoredState {
        &self.state
    }

    pub fn readout_qubit(&self) -> usize {
        self.readout
    }

    /// The unitary `U` of the query's two-outcome measurement; outcome 1 on
    /// the readout qubit means "equal".
    pub fn query_circuit(&self, query: &MeqQuery) -> Result<Vec<Gate>> {
        query.validate(self.params.k, self.params.n())?;
        let code = &self.params.code;
        let t = self.params.copies;
        let mut gates = Vec::new();

        let (left, right, y, z, prepare) = match *query {
            MeqQuery::Pair { i, j, y, z } => (&self.players[i], &self.players[j], y, z, None),
            MeqQuery::Single { i, y, z } => (&self.players[i], &self.referee, y, BitString::zeros(z.len()), Some(z)),
        };

        if let Some(target) = prepare {
            for block in &self.referee {
                gates.extend(code.prep_circuit(&target, block)?);
            }
        }
        if !y.is_zero() {
            for block in left {
                gates.extend(code.modifier_circuit(&y, block)?);
            }
        }
        if !z.is_zero() {
            for block in right {
                gates.extend(code.modifier_circuit(&z, block)?);
            }
        }
        for r in 0..t {
            let s = self.ancillas[r];
            gates.push(Gate::Hadamard(s));
            gates.push(Gate::ControlledSwapBlock { control: s, left: left[r].clone(), right: right[r].clone() });
            gates.push(Gate::Hadamard(s));
            gates.push(Gate::PauliX(s));
        }
        gates.push(if t == 1 {
            Gate::Cnot { control: self.ancillas[0], target: self.readout }
        } else {
            Gate::MultiControlledX { controls: self.ancillas.clone(), target: self.readout }
        });
        Ok(gates)
    }

    /// Runs the query as a projective measurement on the register and returns
    /// the outcome with its probability conditioned on the current state.
    pub fn execute(&mut self, query: &MeqQuery, mode: MeasureMode<'_>) -> Result<(bool, f64)> {
        let circuit = self.query_circuit(query)?;
        self.state.projective_2outcome(&circuit, self.readout, mode)
    }

    pub fn execute_sampled(&mut self, query: &MeqQuery, rng: &mut dyn RngCore) -> Result<(bool, f64)> {
        self.execute(query, MeasureMode::Sample(rng))
    }

    /// Forces the outcome `expected` and returns its probability.
    pub fn execute_forced(&mut self, query: &MeqQuery, expected: bool) -> Result<f64> {
        self.execute(query, MeasureMode::Force(expected)).map(|(_, p)| p)
    }

    /// Probability that the query would yield `outcome` on the current state.
    /// The register is left as it was (up to rounding).
    pub fn outcome_probability(&mut self, query: &MeqQuery, outcome: bool) -> Result<f64> {
        let circuit = self.query_circuit(query)?;
        self.state.apply_all(&circuit)?;
        let p = self.state.probability(self.readout, outcome);
        self.state.apply_all(circuit.iter().rev())?;
        p
    }
}
