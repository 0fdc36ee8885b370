use num_complex::Complex64;
use rand::{Rng, RngCore};

use super::gate::Gate;
use crate::error::{Error, Result};

/// Absolute tolerance used for norms and amplitude comparisons.
pub const TOLERANCE: f64 = 1e-9;

/// Branches with probability below this floor are treated as numerically
/// impossible.
pub const NULL_BRANCH: f64 = 1e-12;

/// How a measurement picks its outcome.
pub enum MeasureMode<'a> {
    /// Draw the outcome from the Born distribution.
    Sample(&'a mut dyn RngCore),
    /// Project onto the given outcome and report its probability.
    Force(bool),
}

/// Dense state of `num_qubits` qubits.
///
/// Amplitude index `i` is little-endian: qubit `q` is bit `q` of `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The all-zero basis state.
    pub fn zero(num_qubits: usize) -> Self {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Self {
        assert!(num_qubits >= 1, "a state needs at least one qubit");
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { num_qubits, amps }
    }

    /// Wraps an amplitude vector, checking its length and norm.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidParams(format!("amplitude vector length {len} is not a power of two >= 2")));
        }
        let state = Self { num_qubits: len.trailing_zeros() as usize, amps };
        let norm = state.norm();
        if (norm - 1.0).abs() > TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    /// Real amplitudes, mostly for tests and hand-built states.
    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::from_amplitudes(amps.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.num_qubits, other.num_qubits);
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Largest element-wise amplitude difference.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        assert_eq!(self.num_qubits, other.num_qubits);
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Tensor product with `self` on the low qubits and `high` above them.
    pub fn tensor(&self, high: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.amps.len() * high.amps.len());
        for h in &high.amps {
            amps.extend(self.amps.iter().map(|l| l * h));
        }
        StateVector { num_qubits: self.num_qubits + high.num_qubits, amps }
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        gate.apply_to(&mut self.amps);
        Ok(())
    }

    pub fn apply_all<'g>(&mut self, gates: impl IntoIterator<Item = &'g Gate>) -> Result<()> {
        for g in gates {
            self.apply(g)?;
        }
        Ok(())
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.num_qubits {
            return Err(Error::QubitOutOfRange { index: q, num_qubits: self.num_qubits });
        }
        Ok(())
    }

    /// Unnormalized weights of outcomes 0 and 1 on qubit `q`.
    fn branch_weights(&self, q: usize) -> (f64, f64) {
        let bit = 1usize << q;
        let (mut w0, mut w1) = (0.0, 0.0);
        for chunk in self.amps.chunks_exact(bit << 1) {
            let (lo, hi) = chunk.split_at(bit);
            w0 += lo.iter().map(Complex64::norm_sqr).sum::<f64>();
            w1 += hi.iter().map(Complex64::norm_sqr).sum::<f64>();
        }
        (w0, w1)
    }

    /// Born probability of reading `b` on qubit `q`, without collapsing.
    pub fn probability(&self, q: usize, b: bool) -> Result<f64> {
        self.check_qubit(q)?;
        let (w0, w1) = self.branch_weights(q);
        Ok(if b { w1 } else { w0 } / (w0 + w1))
    }

    fn collapse(&mut self, q: usize, b: bool, weight: f64) {
        let bit = 1usize << q;
        let scale = 1.0 / weight.sqrt();
        for chunk in self.amps.chunks_exact_mut(bit << 1) {
            let (lo, hi) = chunk.split_at_mut(bit);
            let (keep, drop) = if b { (hi, lo) } else { (lo, hi) };
            keep.iter_mut().for_each(|a| *a *= scale);
            drop.fill(Complex64::new(0.0, 0.0));
        }
    }

    /// Measures qubit `q` in the computational basis, returning the sampled
    /// bit and its Born probability. The state collapses onto the outcome.
    pub fn measure_qubit(&mut self, q: usize, rng: &mut dyn RngCore) -> Result<(bool, f64)> {
        self.check_qubit(q)?;
        let (w0, w1) = self.branch_weights(q);
        if w0 < NULL_BRANCH && w1 < NULL_BRANCH {
            return Err(Error::NullBranch { probability: w0.max(w1), threshold: NULL_BRANCH });
        }
        let total = w0 + w1;
        let u: f64 = rng.random();
        let b = u * total >= w0;
        let w = if b { w1 } else { w0 };
        self.collapse(q, b, w);
        Ok((b, w / total))
    }

    /// Projects qubit `q` onto `b` and returns the probability of that branch.
    pub fn project_qubit(&mut self, q: usize, b: bool) -> Result<f64> {
        self.check_qubit(q)?;
        let (w0, w1) = self.branch_weights(q);
        let w = if b { w1 } else { w0 };
        let total = w0 + w1;
        if w / total < NULL_BRANCH {
            return Err(Error::NullBranch { probability: w / total, threshold: NULL_BRANCH });
        }
        self.collapse(q, b, w);
        Ok(w / total)
    }

    pub fn measure(&mut self, q: usize, mode: MeasureMode<'_>) -> Result<(bool, f64)> {
        match mode {
            MeasureMode::Sample(rng) => self.measure_qubit(q, rng),
            MeasureMode::Force(b) => self.project_qubit(q, b).map(|p| (b, p)),
        }
    }

    /// Two-outcome projective measurement with projectors
    /// `U† (I ⊗ |b⟩⟨b|_s) U`: apply `circuit`, read `s_qubit`, undo `circuit`.
    pub fn projective_2outcome(&mut self, circuit: &[Gate], s_qubit: usize, mode: MeasureMode<'_>) -> Result<(bool, f64)> {
        self.check_qubit(s_qubit)?;
        for g in circuit {
            g.validate(self.num_qubits)?;
        }
        for g in circuit {
            g.apply_to(&mut self.amps);
        }
        let out = self.measure(s_qubit, mode)?;
        for g in circuit.iter().rev() {
            g.inverse().apply_to(&mut self.amps);
        }
        Ok(out)
    }
}
