//! Linear quantum fingerprints.
//!
//! A generator matrix `E` over F2 maps an `n`-bit input `x` to an `m`-bit
//! codeword, and the fingerprint of `x` is the `log2(m)`-qubit state
//! `(1/√m) Σ_j (-1)^{E(x)_j} |j⟩`. Because `E` is linear, the diagonal phase
//! `(-1)^{E(y)_j}` maps the fingerprint of `x` to the fingerprint of `x ⊕ y`
//! without knowing `x`.
//!
//! Codes are only accepted when every nonzero codeword has weight in
//! `[m/4, 3m/4]`, which bounds the overlap of distinct fingerprints by 1/2.

use std::fmt::Write as _;

use rand::{Rng, RngCore};

use crate::bits::{BitString, MAX_BITS};
use crate::error::{Error, Result};
use crate::qsim::{Gate, StateVector};

/// Largest input length for which codes are validated exhaustively.
pub const MAX_CODE_INPUT_BITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    m: usize,
    /// Row `i` is the codeword of the `i`-th unit vector.
    rows: Vec<BitString>,
}

impl LinearCode {
    /// Builds a code from generator rows and validates the weight window on
    /// every nonzero codeword.
    pub fn from_rows(rows: Vec<BitString>) -> Result<Self> {
        let code = Self::unchecked(rows)?;
        code.validate()?;
        Ok(code)
    }

    /// Builds a code checking only the shape of the generator matrix.
    pub fn unchecked(rows: Vec<BitString>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidCode("generator has no rows".into()));
        }
        if n > MAX_CODE_INPUT_BITS {
            return Err(Error::InvalidCode(format!("n = {n} exceeds {MAX_CODE_INPUT_BITS}")));
        }
        let m = rows[0].len();
        check_length(m)?;
        if let Some(r) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::InvalidCode(format!("row of length {} in a code of length {m}", r.len())));
        }
        Ok(Self { n, m, rows })
    }

    /// Exhaustively checks that every nonzero codeword has weight in
    /// `[m/4, 3m/4]`.
    pub fn validate(&self) -> Result<()> {
        // Gray-code walk: consecutive messages differ in one row.
        let mut word = BitString::zeros(self.m);
        for step in 1u64..(1u64 << self.n) {
            word ^= self.rows[step.trailing_zeros() as usize];
            if !in_window(word.weight(), self.m) {
                let gray = step ^ (step >> 1);
                return Err(Error::InvalidCode(format!(
                    "codeword of message {} has weight {} outside [{}/4, 3*{}/4]",
                    BitString::from_u64(self.n, gray),
                    word.weight(),
                    self.m,
                    self.m
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Qubits per fingerprint copy, `log2(m)`.
    pub fn width(&self) -> usize {
        self.m.trailing_zeros() as usize
    }

    pub fn rows(&self) -> &[BitString] {
        &self.rows
    }

    /// `E(x)`: XOR of the rows selected by the set bits of `x`.
    pub fn encode(&self, x: &BitString) -> Result<BitString> {
        self.check_input(x)?;
        Ok(x.ones().fold(BitString::zeros(self.m), |acc, i| acc ^ self.rows[i]))
    }

    fn check_input(&self, x: &BitString) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: x.len() });
        }
        Ok(())
    }

    fn check_block(&self, qubits: &[usize]) -> Result<()> {
        if qubits.len() != self.width() {
            return Err(Error::InvalidParams(format!(
                "fingerprint block has {} qubits, code needs {}",
                qubits.len(),
                self.width()
            )));
        }
        Ok(())
    }

    fn phase_signs(&self, x: &BitString) -> Result<Vec<i8>> {
        let word = self.encode(x)?;
        Ok((0..self.m).map(|j| if word.get(j) { -1 } else { 1 }).collect())
    }

    /// Gates preparing the fingerprint of `x` on `qubits` (all starting in `|0⟩`):
    /// a Hadamard on each qubit, then the phase `(-1)^{E(x)_j}`.
    pub fn prep_circuit(&self, x: &BitString, qubits: &[usize]) -> Result<Vec<Gate>> {
        self.check_block(qubits)?;
        let mut gates: Vec<Gate> = qubits.iter().map(|&q| Gate::Hadamard(q)).collect();
        gates.push(Gate::DiagonalPhase { qubits: qubits.to_vec(), signs: self.phase_signs(x)? });
        Ok(gates)
    }

    /// The phase gate turning the fingerprint of any `x` into that of `x ⊕ y`.
    pub fn modifier_circuit(&self, y: &BitString, qubits: &[usize]) -> Result<Vec<Gate>> {
        self.check_block(qubits)?;
        Ok(vec![Gate::DiagonalPhase { qubits: qubits.to_vec(), signs: self.phase_signs(y)? }])
    }

    /// The fingerprint of `x` as a standalone state, built by its circuit.
    pub fn fingerprint_state(&self, x: &BitString) -> Result<StateVector> {
        let qubits: Vec<usize> = (0..self.width()).collect();
        let mut s = StateVector::zero(self.width());
        s.apply_all(&self.prep_circuit(x, &qubits)?)?;
        Ok(s)
    }

    /// `⟨Ψ_x|Ψ_x'⟩ = 1 − 2·Δ(E(x), E(x'))/m`.
    pub fn fingerprint_inner(&self, x: &BitString, x2: &BitString) -> Result<f64> {
        let d = self.encode(x)?.try_xor(&self.encode(x2)?)?.weight();
        Ok(1.0 - 2.0 * d as f64 / self.m as f64)
    }

    /// Text form: `"n m"`, then one line of `m` characters per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m);
        for r in &self.rows {
            let _ = writeln!(out, "{r}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty code file".into()))?;
        let mut it = header.split_whitespace().map(|t| t.parse::<usize>());
        let (n, m) = match (it.next(), it.next(), it.next()) {
            (Some(Ok(n)), Some(Ok(m)), None) => (n, m),
            _ => return Err(Error::Parse(format!("bad code header {header:?}"))),
        };
        let rows = lines.map(str::parse).collect::<Result<Vec<BitString>>>()?;
        if rows.len() != n {
            return Err(Error::Parse(format!("header says {n} rows, found {}", rows.len())));
        }
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Parse(format!("rows must have {m} characters")));
        }
        Self::from_rows(rows)
    }
}

fn in_window(weight: usize, m: usize) -> bool {
    4 * weight >= m && 4 * weight <= 3 * m
}

fn check_length(m: usize) -> Result<()> {
    if m < 2 || !m.is_power_of_two() || m > MAX_BITS {
        return Err(Error::InvalidCode(format!("code length {m} must be a power of two in [2, {MAX_BITS}]")));
    }
    Ok(())
}

/// Smallest power of two that is at least `4n` (and at least 4).
pub fn default_code_length(n: usize) -> usize {
    (4 * n).max(4).next_power_of_two()
}

/// Rejection-samples a uniformly random generator matrix until one passes
/// the weight window.
pub fn sample_code(n: usize, m: usize, rng: &mut dyn RngCore, max_attempts: usize) -> Result<LinearCode> {
    check_length(m)?;
    if n == 0 || n > MAX_CODE_INPUT_BITS {
        return Err(Error::InvalidCode(format!("n = {n} outside [1, {MAX_CODE_INPUT_BITS}]")));
    }
    let mask = if m == MAX_BITS { u128::MAX } else { (1u128 << m) - 1 };
    for _ in 0..max_attempts {
        let rows = (0..n).map(|_| BitString::from_u128(m, rng.random::<u128>() & mask)).collect();
        if let Ok(code) = LinearCode::from_rows(rows) {
            return Ok(code);
        }
    }
    Err(Error::CodeSearchFailed { n, m, attempts: max_attempts })
}

/// Samples with `m` from [`default_code_length`], doubling `m` after each
/// failed round of `attempts_per_length` tries.
pub fn sample_default_code(n: usize, rng: &mut dyn RngCore, attempts_per_length: usize) -> Result<LinearCode> {
    let mut m = default_code_length(n);
    loop {
        match sample_code(n, m, rng, attempts_per_length) {
            Err(Error::CodeSearchFailed { .. }) if m < MAX_BITS => m *= 2,
            other => return other,
        }
    }
}
