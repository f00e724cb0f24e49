//! Anti-Hermitian contracted Schrödinger equation solver and the exact
//! sector-diagonalization reference it is compared against.

mod fci;
mod solver;

pub use fci::{fci_ground_state, sector_determinants, sector_matrix};
pub use solver::{
    acse_residual, contracted_residual, acse_solve, acse_solve_with, acse_step, step_coefficients, AcseOutcome, AnsatzTrace,
    IterationRecord, ResidualTensor, SearchDirection, SolverConfig, StepOutcome, StopReason, TrotterCircuit, RESIDUAL_TRUNCATION,
};
