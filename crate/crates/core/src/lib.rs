//! Statevector simulation of contracted-Schrödinger-equation ansätze under
//! fermionic and qubit-particle statistics.
//!
//! Core types are generic over a [`Real`] scalar; the aliases below fix the
//! `f64` instantiation used throughout the chemistry and solver layers.

// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acse;
pub mod chem;
pub mod error;
pub mod gatecost;
pub mod rdm;
mod scalar;
pub mod secondq;
mod tensor;
pub mod tensorspace;

pub use error::{Error, Result};
pub use scalar::Real;
pub use tensor::{folded_pairs, Tensor4};

pub type StateVector = tensorspace::StateVector<f64>;
pub type StateVectorF32 = tensorspace::StateVector<f32>;
pub type PauliString = tensorspace::PauliString<f64>;
pub type PauliSum = tensorspace::PauliSum<f64>;
pub type LadderTerm = secondq::LadderTerm<f64>;
pub type GeneratorCoefficients = secondq::GeneratorCoefficients<f64>;
