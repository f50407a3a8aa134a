//! Simulation of normalized non-unitary dynamics generated by PT-symmetric
//! and anti-PT-symmetric Hamiltonians, with phase-encoded distinguishability
//! measures along the trajectory.
//!
//! The crate computes the Hilbert-Schmidt speed (HSS), trace distance, and
//! quantum Fisher information of evolving states, classifies broken/unbroken
//! symmetry phases from the oscillation pattern of the HSS, locates
//! exceptional points by bisection on a model parameter, and audits the
//! (non-)contractivity of the trace distance.
//!
//! Module layout mirrors the pipeline:
//!
//! - [`linalg`]: dense complex matrices, matrix exponential, eigensolvers;
//! - [`hamiltonians`]: the qubit/qudit model families, their spectra and
//!   analytic phase boundaries;
//! - [`evolution`]: propagators and normalized state/density evolution;
//! - [`states`]: phase-encoded initial states and distinguishability pairs;
//! - [`measures`]: HSS, trace distance, Hilbert-Schmidt distance, QFI;
//! - [`analysis`]: series sampling, oscillation classification, period
//!   estimation, exceptional-point search, contractivity audits.

pub mod analysis;
pub mod error;
pub mod evolution;
pub mod hamiltonians;
pub mod linalg;
pub mod measures;
pub mod states;

pub use error::{Error, Result};
