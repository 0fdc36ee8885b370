use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fingerprint::LinearCode;

/// Upper bound on the accept probability of one SWAP test between distinct
/// fingerprints, `1/2 + ζ²/2` with `ζ = 1/2`.
pub const SWAP_TEST_SOUNDNESS: f64 = 5.0 / 8.0;

/// Smallest `t ≥ 1` with `(5/8)^t ≤ epsilon`.
pub fn copies_for_epsilon(epsilon: f64) -> usize {
    assert!(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
    let mut t = 1;
    while SWAP_TEST_SOUNDNESS.powi(t as i32) > epsilon {
        t += 1;
    }
    t
}

/// Error and amplification budget of a compiled protocol.
#[derive(Debug, Clone)]
pub struct ProtocolParams {
    pub k: usize,
    /// Maximum number of queries the strategy may issue.
    pub depth: usize,
    /// Target overall error.
    pub delta: f64,
    /// Per-query error, `delta / (4 depth)`.
    pub epsilon: f64,
    /// Fingerprint copies sent by each player.
    pub copies: usize,
    pub code: Arc<LinearCode>,
}

impl ProtocolParams {
    /// Derives `epsilon = delta/(4·depth)` and the minimal number of copies.
    pub fn new(k: usize, depth: usize, delta: f64, code: Arc<LinearCode>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        if depth == 0 {
            return Err(Error::InvalidParams("depth must be at least 1".into()));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParams(format!("delta = {delta} outside (0, 1)")));
        }
        let epsilon = delta / (4.0 * depth as f64);
        let copies = copies_for_epsilon(epsilon);
        Ok(Self { k, depth, delta, epsilon, copies, code })
    }

    /// Fixes the number of copies directly; `epsilon` becomes `(5/8)^t` and
    /// `delta` the matching `4·depth·epsilon`, which may exceed 1 for small `t`.
    pub fn with_copies(k: usize, depth: usize, copies: usize, code: Arc<LinearCode>) -> Result<Self> {
        if k == 0 || depth == 0 || copies == 0 {
            return Err(Error::InvalidParams("k, depth and copies must all be at least 1".into()));
        }
        let epsilon = SWAP_TEST_SOUNDNESS.powi(copies as i32);
        Ok(Self { k, depth, delta: 4.0 * depth as f64 * epsilon, epsilon, copies, code })
    }

    /// Input length in bits.
    pub fn n(&self) -> usize {
        self.code.n()
    }

    /// Analytic bound `4·D·(5/8)^t` on the error of a full run.
    pub fn analytic_error_bound(&self) -> f64 {
        4.0 * self.depth as f64 * SWAP_TEST_SOUNDNESS.powi(self.copies as i32)
    }
}

/// Qubit and classical communication of one protocol run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CostReport {
    pub copies: usize,
    pub code_length: usize,
    pub per_player: usize,
    pub total: usize,
    /// Bits sent classically next to the fingerprints (e.g. degrees).
    pub classical_bits: usize,
}

/// `t·log2(m)` qubits per player, `k·t·log2(m)` in total.
pub fn qubit_cost(params: &ProtocolParams) -> CostReport {
    let per_player = params.copies * params.code.width();
    CostReport {
        copies: params.copies,
        code_length: params.code.m(),
        per_player,
        total: params.k * per_player,
        classical_bits: 0,
    }
}
