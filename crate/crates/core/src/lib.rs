//! Exact probabilistic error-correction analysis for small stabilizer codes.
//!
//! The core is a phase-free GF(2) model of the Pauli group. On top of it the
//! crate computes, with exact fractions, how likely a code is to correct an
//! arbitrary error on `t` qubits, the success curve under independent noise,
//! and per-syndrome success rates. A dense statevector simulator in
//! [`oracle`] cross-checks the combinatorics.

pub mod analysis;
pub mod builtin;
pub mod cli;
pub mod correction;
pub mod decomposition;
pub mod error;
mod gf2;
pub mod oracle;
pub mod pauli;
pub mod rational;
pub mod search;
pub mod stabilizer;

pub use builtin::Builtin;
pub use correction::CorrectionTable;
pub use error::{Error, Result};
pub use pauli::{PauliOp, SupportSet};
pub use rational::Rational;
pub use stabilizer::{LogicalClass, StabilizerCode, Syndrome};
