//! Simulation and verification of quantum simultaneous-message-passing
//! protocols built from modified equality queries.
//!
//! A *modified equality query* `MEQ(i, j, y, z)` asks whether
//! `x_i ⊕ y = x_j ⊕ z` for player inputs `x_i, x_j` and referee-chosen
//! modifiers `y, z`. Each player sends copies of a linear quantum fingerprint
//! of its input; the referee answers queries with SWAP tests run as
//! projective measurements on one persistent register, so a whole adaptive
//! query strategy can be executed against the same messages.
//!
//! * [`qsim`]: dense and factored statevector simulation.
//! * [`fingerprint`]: F2 linear codes and the fingerprint circuits built on them.
//! * [`meq`]: protocol parameters, the referee circuit, query answerers and
//!   the protocol runner with its error certificates.
//! * [`strategies`]: application protocols written as adaptive query strategies.
//! * [`oracle`]: independent brute-force reference solutions.
//! * [`graph`]: graphs for the number-in-hand network model.

pub mod bits;
pub mod error;
pub mod fingerprint;
pub mod graph;
pub mod meq;
pub mod oracle;
pub mod qsim;
pub mod strategies;

pub use bits::BitString;
pub use error::{Error, Result};
pub use fingerprint::LinearCode;
pub use graph::Graph;
pub use meq::{
    gao_bound, initial_state_probs, qubit_cost, run_classical, run_protocol, Answerer, CostReport, ExecMode,
    GlobalRegister, MeqQuery, ProtocolParams, QuantumAnswerer, RunOutcome, Session, Transcript, TranscriptEntry,
};
pub use oracle::ClassicalAnswerer;
pub use qsim::{Gate, RegisterLayout, StateVector};
pub use strategies::Strategy;
