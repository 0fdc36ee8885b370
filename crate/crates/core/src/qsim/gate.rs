use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gates of the simulator. Qubit indices are positions in the state the
/// gate is applied to; use [`RegisterLayout`](super::RegisterLayout) to turn
/// block names into indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    Hadamard(usize),
    PauliX(usize),
    Cnot { control: usize, target: usize },
    /// Swaps the contents of two equal-width qubit blocks when `control` is 1.
    /// `left[b]` is exchanged with `right[b]`.
    ControlledSwapBlock { control: usize, left: Vec<usize>, right: Vec<usize> },
    /// Flips `target` when every control is 1.
    MultiControlledX { controls: Vec<usize>, target: usize },
    /// Multiplies basis state `|v⟩` of the listed qubits by `signs[v]`, where
    /// bit `b` of `v` is the value of `qubits[b]`.
    DiagonalPhase { qubits: Vec<usize>, signs: Vec<i8> },
}

impl Gate {
    /// Every qubit the gate touches, controls included.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Hadamard(q) | Gate::PauliX(q) => vec![*q],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::ControlledSwapBlock { control, left, right } => {
                let mut v = Vec::with_capacity(1 + left.len() + right.len());
                v.push(*control);
                v.extend_from_slice(left);
                v.extend_from_slice(right);
                v
            }
            Gate::MultiControlledX { controls, target } => {
                let mut v = controls.clone();
                v.push(*target);
                v
            }
            Gate::DiagonalPhase { qubits, .. } => qubits.clone(),
        }
    }

    /// The inverse gate. Every gate in this set is an involution.
    pub fn inverse(&self) -> Gate {
        self.clone()
    }

    /// Rewrites qubit indices through `map`.
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> Gate {
        match self {
            Gate::Hadamard(q) => Gate::Hadamard(map(*q)),
            Gate::PauliX(q) => Gate::PauliX(map(*q)),
            Gate::Cnot { control, target } => Gate::Cnot { control: map(*control), target: map(*target) },
            Gate::ControlledSwapBlock { control, left, right } => Gate::ControlledSwapBlock {
                control: map(*control),
                left: left.iter().map(|&q| map(q)).collect(),
                right: right.iter().map(|&q| map(q)).collect(),
            },
            Gate::MultiControlledX { controls, target } => Gate::MultiControlledX {
                controls: controls.iter().map(|&q| map(q)).collect(),
                target: map(*target),
            },
            Gate::DiagonalPhase { qubits, signs } => Gate::DiagonalPhase {
                qubits: qubits.iter().map(|&q| map(q)).collect(),
                signs: signs.clone(),
            },
        }
    }

    /// Checks the gate against a state of `num_qubits` qubits.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let mut qubits = self.qubits();
        if let Some(&q) = qubits.iter().find(|&&q| q >= num_qubits) {
            return Err(Error::QubitOutOfRange { index: q, num_qubits });
        }
        qubits.sort_unstable();
        if let Some(w) = qubits.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedQubit(w[0]));
        }
        match self {
            Gate::ControlledSwapBlock { left, right, .. } if left.len() != right.len() => {
                Err(Error::BlockWidthMismatch { left: left.len(), right: right.len() })
            }
            Gate::DiagonalPhase { qubits, signs } => {
                let expected = 1usize << qubits.len();
                if signs.len() != expected {
                    return Err(Error::PhaseLength { expected, found: signs.len() });
                }
                if signs.iter().any(|&s| s != 1 && s != -1) {
                    return Err(Error::PhaseValue);
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Applies the gate to a raw amplitude vector. The gate must already be
    /// validated against `amps.len().trailing_zeros()` qubits.
    pub(crate) fn apply_to(&self, amps: &mut [Complex64]) {
        let len = amps.len();
        match self {
            Gate::Hadamard(q) => {
                let bit = 1usize << q;
                for base in (0..len).step_by(bit << 1) {
                    for i in base..base + bit {
                        let a = amps[i];
                        let b = amps[i | bit];
                        amps[i] = (a + b) * FRAC_1_SQRT_2;
                        amps[i | bit] = (a - b) * FRAC_1_SQRT_2;
                    }
                }
            }
            Gate::PauliX(q) => {
                let bit = 1usize << q;
                for base in (0..len).step_by(bit << 1) {
                    for i in base..base + bit {
                        amps.swap(i, i | bit);
                    }
                }
            }
            Gate::Cnot { control, target } => {
                let (c, t) = (1usize << control, 1usize << target);
                for_each_index(len, &[*control, *target], c, |i| amps.swap(i, i | t));
            }
            Gate::ControlledSwapBlock { control, left, right } => {
                let c = 1usize << control;
                for (&l, &r) in left.iter().zip(right) {
                    let (lb, rb) = (1usize << l, 1usize << r);
                    for_each_index(len, &[*control, l, r], c | lb, |i| amps.swap(i, i ^ lb ^ rb));
                }
            }
            Gate::MultiControlledX { controls, target } => {
                let c: usize = controls.iter().map(|&q| 1usize << q).sum();
                let t = 1usize << target;
                let mut fixed = controls.clone();
                fixed.push(*target);
                for_each_index(len, &fixed, c, |i| amps.swap(i, i | t));
            }
            Gate::DiagonalPhase { qubits, signs } => {
                let factors: Vec<f64> = signs.iter().map(|&s| f64::from(s)).collect();
                let contiguous = qubits.windows(2).all(|w| w[1] == w[0] + 1);
                if contiguous && !qubits.is_empty() {
                    let offset = qubits[0];
                    let mask = (1usize << qubits.len()) - 1;
                    for (i, a) in amps.iter_mut().enumerate() {
                        *a *= factors[(i >> offset) & mask];
                    }
                } else {
                    for (i, a) in amps.iter_mut().enumerate() {
                        let local = qubits.iter().enumerate().fold(0usize, |acc, (b, &q)| acc | ((i >> q) & 1) << b);
                        *a *= factors[local];
                    }
                }
            }
        }
    }
}

/// Calls `f` on every index below `len` whose bits at `fixed` equal the
/// corresponding bits of `set`.
fn for_each_index(len: usize, fixed: &[usize], set: usize, mut f: impl FnMut(usize)) {
    let mut positions = fixed.to_vec();
    positions.sort_unstable();
    for j in 0..len >> positions.len() {
        let mut i = j;
        for &p in &positions {
            i = (i & ((1 << p) - 1)) | ((i >> p) << (p + 1));
        }
        f(i | set);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_rejects_bad_gates() {
        assert!(matches!(Gate::Hadamard(3).validate(2), Err(Error::QubitOutOfRange { index: 3, .. })));
        let g = Gate::ControlledSwapBlock { control: 0, left: vec![1, 2], right: vec![3] };
        assert!(matches!(g.validate(4), Err(Error::BlockWidthMismatch { left: 2, right: 1 })));
        let g = Gate::DiagonalPhase { qubits: vec![0, 1], signs: vec![1, -1] };
        assert!(matches!(g.validate(2), Err(Error::PhaseLength { expected: 4, found: 2 })));
        let g = Gate::DiagonalPhase { qubits: vec![0], signs: vec![1, 2] };
        assert_eq!(g.validate(1), Err(Error::PhaseValue));
        let g = Gate::Cnot { control: 1, target: 1 };
        assert_eq!(g.validate(2), Err(Error::RepeatedQubit(1)));
    }

    #[test]
    fn remap_moves_every_index() {
        let g = Gate::ControlledSwapBlock { control: 0, left: vec![1], right: vec![2] };
        let r = g.remap(|q| q + 10);
        assert_eq!(r.qubits(), vec![10, 11, 12]);
    }
}
