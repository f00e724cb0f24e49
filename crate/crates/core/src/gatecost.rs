//! CNOT cost of exponentiated Pauli strings under naive ladder compilation.
//!
//! `exp(iθP)` for a weight-`w` string costs `2(w−1)` CNOTs (a ladder into a
//! single Z rotation and back out); single-qubit basis changes are free.

use crate::scalar::Real;
use crate::tensorspace::{PauliLetters, PauliString, PauliSum};

/// Per-rotation CNOT rule `w ↦ max(0, 2(w−1))`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CostModel;

impl CostModel {
    pub fn rotation_cost(&self, weight: usize) -> usize {
        2 * weight.saturating_sub(1)
    }

    pub fn letters_cost(&self, letters: &PauliLetters) -> usize {
        self.rotation_cost(letters.weight())
    }
}

pub fn cnot_cost<T: Real>(p: &PauliString<T>) -> usize {
    CostModel.letters_cost(&p.letters)
}

/// Total CNOTs for one rotation per term of `g`.
pub fn generator_cost<T: Real>(g: &PauliSum<T>) -> usize {
    g.iter().map(|p| cnot_cost(&p)).sum()
}
