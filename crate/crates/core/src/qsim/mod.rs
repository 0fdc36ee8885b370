//! Exact statevector simulation.
//!
//! Qubit `q` is bit `q` of the amplitude index (little-endian). Block
//! layouts assign each named block a contiguous range of qubits, and a value
//! `v` stored in a block of width `w` at offset `o` occupies bits `o..o+w`
//! of the index with bit `b` of `v` on qubit `o + b`.

mod factored;
mod gate;
mod layout;
mod state;

pub use factored::{FactoredState, QubitCaps, DEFAULT_HARD_QUBIT_CAP, SOFT_QUBIT_CAP};
pub use gate::Gate;
pub use layout::{tensor_init, Block, RegisterLayout};
pub use state::{MeasureMode, StateVector, NULL_BRANCH, TOLERANCE};
