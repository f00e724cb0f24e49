//! Exact dense statevector engine and Pauli operator algebra.
//!
//! Everything here is generic over the real scalar type; the crate root
//! exports `f64` aliases.

mod pauli;
mod state;

pub use pauli::{Pauli, PauliLetters, PauliString, PauliSum, Phase};
pub use state::StateVector;

/// Largest supported register for the dense representation.
pub const MAX_QUBITS: usize = 24;
