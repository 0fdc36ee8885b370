//! A register stored as a product of independent factors.
//!
//! Each factor is a dense [`StateVector`] over a subset of the global qubits.
//! Factors are merged the first time a gate (or a projective measurement)
//! touches qubits from more than one of them, and never split again.

use log::warn;
use num_complex::Complex64;

use super::gate::Gate;
use super::layout::RegisterLayout;
use super::state::{MeasureMode, StateVector};
use crate::error::{Error, Result};

/// Default hard limit on the width of a single materialized factor.
pub const DEFAULT_HARD_QUBIT_CAP: usize = 30;
/// Width above which merging logs a memory warning.
pub const SOFT_QUBIT_CAP: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QubitCaps {
    pub soft: usize,
    pub hard: usize,
}

impl Default for QubitCaps {
    fn default() -> Self {
        Self { soft: SOFT_QUBIT_CAP, hard: DEFAULT_HARD_QUBIT_CAP }
    }
}

impl QubitCaps {
    pub fn with_hard(hard: usize) -> Self {
        Self { soft: SOFT_QUBIT_CAP.min(hard), hard }
    }

    pub fn check(&self, width: usize) -> Result<()> {
        if width > self.hard {
            return Err(Error::QubitCap { required: width, cap: self.hard });
        }
        if width > self.soft {
            warn!("materializing a {width}-qubit factor ({} MiB)", (16u128 << width) >> 20);
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct Factor {
    /// Global qubit held at each local position.
    qubits: Vec<usize>,
    state: StateVector,
}

#[derive(Debug, Clone)]
pub struct FactoredState {
    factors: Vec<Option<Factor>>,
    /// `(factor slot, local position)` per global qubit.
    location: Vec<(usize, usize)>,
    caps: QubitCaps,
}

impl FactoredState {
    /// One factor per block, holding the given local states in layout order.
    pub fn from_blocks(layout: &RegisterLayout, locals: Vec<StateVector>, caps: QubitCaps) -> Result<Self> {
        if locals.len() != layout.blocks().len() {
            return Err(Error::InvalidParams(format!(
                "{} local states for {} blocks",
                locals.len(),
                layout.blocks().len()
            )));
        }
        let mut location = vec![(0, 0); layout.num_qubits()];
        let mut factors = Vec::with_capacity(locals.len());
        for (slot, (block, state)) in layout.blocks().iter().zip(locals).enumerate() {
            if state.num_qubits() != block.width {
                return Err(Error::InvalidParams(format!(
                    "block {:?} has width {} but its state has {} qubits",
                    block.name,
                    block.width,
                    state.num_qubits()
                )));
            }
            caps.check(block.width)?;
            for (local, q) in block.qubits().enumerate() {
                location[q] = (slot, local);
            }
            factors.push(Some(Factor { qubits: block.qubits().collect(), state }));
        }
        Ok(Self { factors, location, caps })
    }

    pub fn num_qubits(&self) -> usize {
        self.location.len()
    }

    pub fn caps(&self) -> QubitCaps {
        self.caps
    }

    /// Widths of the live factors.
    pub fn factor_widths(&self) -> Vec<usize> {
        self.factors.iter().flatten().map(|f| f.qubits.len()).collect()
    }

    /// Width of the largest live factor.
    pub fn max_factor_width(&self) -> usize {
        self.factor_widths().into_iter().max().unwrap_or(0)
    }

    fn check_qubits(&self, qubits: &[usize]) -> Result<()> {
        match qubits.iter().find(|&&q| q >= self.num_qubits()) {
            Some(&q) => Err(Error::QubitOutOfRange { index: q, num_qubits: self.num_qubits() }),
            None => Ok(()),
        }
    }

    /// Merges the factors holding `qubits` into one and returns its slot.
    fn merge(&mut self, qubits: &[usize]) -> Result<usize> {
        self.check_qubits(qubits)?;
        let mut slots: Vec<usize> = qubits.iter().map(|&q| self.location[q].0).collect();
        slots.sort_unstable();
        slots.dedup();
        let target = slots[0];
        if slots.len() == 1 {
            return Ok(target);
        }
        let width: usize = slots.iter().map(|&s| self.factors[s].as_ref().unwrap().qubits.len()).sum();
        self.caps.check(width)?;

        let mut merged = self.factors[target].take().unwrap();
        for &slot in &slots[1..] {
            let f = self.factors[slot].take().unwrap();
            merged.state = merged.state.tensor(&f.state);
            merged.qubits.extend(f.qubits);
        }
        for (local, &q) in merged.qubits.iter().enumerate() {
            self.location[q] = (target, local);
        }
        self.factors[target] = Some(merged);
        Ok(target)
    }

    fn factor_mut(&mut self, slot: usize) -> &mut Factor {
        self.factors[slot].as_mut().unwrap()
    }

    fn local(&self, q: usize) -> usize {
        self.location[q].1
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits())?;
        let slot = self.merge(&gate.qubits())?;
        let local = gate.remap(|q| self.local(q));
        self.factor_mut(slot).state.apply(&local)
    }

    pub fn apply_all<'g>(&mut self, gates: impl IntoIterator<Item = &'g Gate>) -> Result<()> {
        for g in gates {
            self.apply(g)?;
        }
        Ok(())
    }

    pub fn probability(&self, q: usize, b: bool) -> Result<f64> {
        self.check_qubits(&[q])?;
        let (slot, local) = self.location[q];
        self.factors[slot].as_ref().unwrap().state.probability(local, b)
    }

    pub fn measure(&mut self, q: usize, mode: MeasureMode<'_>) -> Result<(bool, f64)> {
        self.check_qubits(&[q])?;
        let (slot, local) = self.location[q];
        self.factor_mut(slot).state.measure(local, mode)
    }

    /// See [`StateVector::projective_2outcome`]. All factors touched by the
    /// circuit are merged first.
    pub fn projective_2outcome(&mut self, circuit: &[Gate], s_qubit: usize, mode: MeasureMode<'_>) -> Result<(bool, f64)> {
        let mut touched = vec![s_qubit];
        for g in circuit {
            g.validate(self.num_qubits())?;
            touched.extend(g.qubits());
        }
        let slot = self.merge(&touched)?;
        let local: Vec<Gate> = circuit.iter().map(|g| g.remap(|q| self.local(q))).collect();
        let s_local = self.local(s_qubit);
        self.factor_mut(slot).state.projective_2outcome(&local, s_local, mode)
    }

    /// The full state in global qubit order. Intended for small registers.
    pub fn to_dense(&self) -> Result<StateVector> {
        let all: Vec<usize> = (0..self.num_qubits()).collect();
        self.dense_on(&all)
    }

    /// The state of `qubits`, with `qubits[b]` as bit `b`. The qubits must be
    /// exactly a union of factors, i.e. unentangled with the rest.
    pub fn dense_on(&self, qubits: &[usize]) -> Result<StateVector> {
        self.check_qubits(qubits)?;
        self.caps.check(qubits.len())?;
        let mut position = vec![None; self.num_qubits()];
        for (b, &q) in qubits.iter().enumerate() {
            if position[q].replace(b).is_some() {
                return Err(Error::RepeatedQubit(q));
            }
        }
        let mut slots: Vec<usize> = qubits.iter().map(|&q| self.location[q].0).collect();
        slots.sort_unstable();
        slots.dedup();
        let mut parts = Vec::with_capacity(slots.len());
        for &slot in &slots {
            let f = self.factors[slot].as_ref().unwrap();
            let map: Option<Vec<usize>> = f.qubits.iter().map(|&q| position[q]).collect();
            let map = map.ok_or_else(|| Error::InvalidParams("qubit set splits a factor".into()))?;
            parts.push((map, &f.state));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits.len()];
        for (g, amp) in amps.iter_mut().enumerate() {
            let mut a = Complex64::new(1.0, 0.0);
            for (map, state) in &parts {
                let idx = map.iter().enumerate().fold(0usize, |acc, (l, &b)| acc | ((g >> b) & 1) << l);
                a *= state.amplitudes()[idx];
            }
            *amp = a;
        }
        StateVector::from_amplitudes(amps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::state::TOLERANCE;

    fn two_single_qubits() -> (FactoredState, RegisterLayout) {
        let mut layout = RegisterLayout::new();
        layout.push("a", 1).unwrap();
        layout.push("b", 1).unwrap();
        let st = FactoredState::from_blocks(&layout, vec![StateVector::zero(1), StateVector::zero(1)], QubitCaps::default()).unwrap();
        (st, layout)
    }

    #[test]
    fn merge_is_lazy() {
        let (mut st, _) = two_single_qubits();
        st.apply(&Gate::Hadamard(0)).unwrap();
        assert_eq!(st.factor_widths(), vec![1, 1]);
        st.apply(&Gate::Cnot { control: 0, target: 1 }).unwrap();
        assert_eq!(st.factor_widths(), vec![2]);
    }

    #[test]
    fn matches_dense_evolution() {
        let (mut st, _) = two_single_qubits();
        let mut dense = StateVector::zero(2);
        let gates = [Gate::Hadamard(1), Gate::Cnot { control: 1, target: 0 }, Gate::PauliX(1), Gate::Hadamard(0)];
        for g in &gates {
            st.apply(g).unwrap();
            dense.apply(g).unwrap();
        }
        assert!(st.to_dense().unwrap().max_abs_diff(&dense) < TOLERANCE);
    }

    #[test]
    fn merge_respects_hard_cap() {
        let (mut st, _) = two_single_qubits();
        st.caps = QubitCaps::with_hard(1);
        let err = st.apply(&Gate::Cnot { control: 0, target: 1 }).unwrap_err();
        assert_eq!(err, Error::QubitCap { required: 2, cap: 1 });
    }

    #[test]
    fn merge_of_reversed_order_keeps_mapping() {
        let (mut st, _) = two_single_qubits();
        let mut dense = StateVector::zero(2);
        let gates = [Gate::PauliX(1), Gate::Cnot { control: 1, target: 0 }];
        for g in &gates {
            st.apply(g).unwrap();
            dense.apply(g).unwrap();
        }
        assert!(st.to_dense().unwrap().max_abs_diff(&dense) < TOLERANCE);
    }
}
