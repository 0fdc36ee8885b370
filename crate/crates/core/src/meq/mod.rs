//! Compiling query strategies into quantum SMP protocols.
//!
//! Every player sends `t` copies of the linear fingerprint of its input. A
//! query `x_i ⊕ y = x_j ⊕ z` is answered by shifting player `i`'s copies by
//! `y` and player `j`'s by `z`, running `t` SWAP tests in parallel and reading
//! the AND of their results. The referee runs this as a two-outcome
//! projective measurement (apply `U`, read the readout qubit, apply `U†`) so
//! that the same copies serve every later query.

mod params;
mod protocol;
mod query;
mod register;

pub use params::{copies_for_epsilon, qubit_cost, CostReport, ProtocolParams, SWAP_TEST_SOUNDNESS};
pub use protocol::{
    gao_bound, initial_state_probs, run_classical, run_protocol, Answerer, ExecMode, QuantumAnswerer, RunOutcome, Session,
};
pub use query::{MeqQuery, Transcript, TranscriptEntry, TRANSCRIPT_SCHEMA};
pub use register::{register_qubits, register_qubits_for, GlobalRegister};
