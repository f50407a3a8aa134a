//! Initial-state factories: the phase-encoded superposition probed by the
//! oscillation witness and the distinguishability pairs used in the
//! trace-distance audits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::StateVector;
use crate::hamiltonians::ModelFamily;
use crate::linalg::{c64, ComplexMatrix};

/// Description of a phase-encoded initial state: dimension, encoded phase
/// `phi`, and the extra phase `theta` of the qudit pair variant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseEncodedState {
    pub dimension: usize,
    pub phi: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra_phase: Option<f64>,
}

impl PhaseEncodedState {
    pub fn new(dimension: usize, phi: f64) -> Self {
        Self {
            dimension,
            phi,
            extra_phase: None,
        }
    }

    /// The equal-weight superposition this description encodes.
    pub fn materialize(&self) -> Result<StateVector> {
        phase_superposition(self.dimension, self.phi)
    }
}

/// Equal-weight superposition with the phase on the first basis ket:
/// amplitudes `(e^{i phi}, 1, ..., 1) / sqrt(n)`.
pub fn phase_superposition(n: usize, phi: f64) -> Result<StateVector> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "phase superposition needs dimension >= 2, got {n}"
        )));
    }
    if !phi.is_finite() {
        return Err(Error::InvalidParameter("phi must be finite".into()));
    }
    let w = 1.0 / (n as f64).sqrt();
    let mut amps = vec![c64(w, 0.0); n];
    amps[0] = c64(phi.cos(), phi.sin()) * w;
    StateVector::normalized(amps)
}

/// Derivative of [`phase_superposition`] with respect to `phi`:
/// `(i e^{i phi} / sqrt(n)) |0>`.
pub fn phase_superposition_derivative(n: usize, phi: f64) -> Result<Vec<num_complex::Complex64>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "phase superposition needs dimension >= 2, got {n}"
        )));
    }
    let w = 1.0 / (n as f64).sqrt();
    let mut amps = vec![c64(0.0, 0.0); n];
    amps[0] = c64(0.0, 1.0) * c64(phi.cos(), phi.sin()) * w;
    Ok(amps)
}

/// The initial-state pairs of the trace-distance audits, one convention per
/// model family:
///
/// - `pt_qubit`: `(e^{i phi}|0> + |1>)/sqrt(2)` and `(|0> - e^{i phi}|1>)/sqrt(2)`;
/// - `anti_pt_qubit`: `(e^{i phi}|0> + |1>)/sqrt(2)` and `(|0> + e^{i phi}|1>)/sqrt(2)`;
/// - `pt_qudit`: `(e^{i phi}, 1, 1, 1)/2` and `(e^{i theta}, e^{i phi}, 1, 1)/2`,
///   where `theta` is required.
pub fn td_pair(
    family: ModelFamily,
    phi: f64,
    theta: Option<f64>,
) -> Result<(StateVector, StateVector)> {
    if !phi.is_finite() {
        return Err(Error::InvalidParameter("phi must be finite".into()));
    }
    let e_phi = c64(phi.cos(), phi.sin());
    match family {
        ModelFamily::PtQubit => {
            let s = 0.5_f64.sqrt();
            let first = StateVector::normalized(vec![e_phi * s, c64(s, 0.0)])?;
            let second = StateVector::normalized(vec![c64(s, 0.0), -e_phi * s])?;
            Ok((first, second))
        }
        ModelFamily::AntiPtQubit => {
            let s = 0.5_f64.sqrt();
            let first = StateVector::normalized(vec![e_phi * s, c64(s, 0.0)])?;
            let second = StateVector::normalized(vec![c64(s, 0.0), e_phi * s])?;
            Ok((first, second))
        }
        ModelFamily::PtQudit => {
            let theta = theta.ok_or_else(|| {
                Error::InvalidParameter("qudit pair requires the extra phase theta".into())
            })?;
            if !theta.is_finite() {
                return Err(Error::InvalidParameter("theta must be finite".into()));
            }
            let e_theta = c64(theta.cos(), theta.sin());
            let h = c64(0.5, 0.0);
            let first = StateVector::normalized(vec![e_phi * 0.5, h, h, h])?;
            let second = StateVector::normalized(vec![e_theta * 0.5, e_phi * 0.5, h, h])?;
            Ok((first, second))
        }
    }
}

/// State specification used in run configurations:
/// `{"kind": "phase_superposition" | "td_pair" | "custom", ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateSpec {
    PhaseSuperposition {
        dimension: usize,
        phi: f64,
    },
    TdPair {
        family: ModelFamily,
        phi: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        theta: Option<f64>,
    },
    Custom {
        amplitudes: Vec<[f64; 2]>,
    },
}

impl StateSpec {
    /// Single-state specs materialize to one normalized ket.
    pub fn materialize_single(&self) -> Result<StateVector> {
        match self {
            StateSpec::PhaseSuperposition { dimension, phi } => {
                phase_superposition(*dimension, *phi)
            }
            StateSpec::Custom { amplitudes } => {
                let amps = amplitudes.iter().map(|&[re, im]| c64(re, im)).collect();
                StateVector::normalized(amps)
            }
            StateSpec::TdPair { .. } => Err(Error::InvalidParameter(
                "td_pair describes two states; use materialize_pair".into(),
            )),
        }
    }

    pub fn materialize_pair(&self) -> Result<(StateVector, StateVector)> {
        match self {
            StateSpec::TdPair { family, phi, theta } => td_pair(*family, *phi, *theta),
            _ => Err(Error::InvalidParameter(
                "expected a td_pair specification".into(),
            )),
        }
    }
}

/// Pair input for trace-distance runs: either the reference `td_pair`
/// construction or two explicit single-state specs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairSpec {
    Reference(StateSpec),
    Explicit([StateSpec; 2]),
}

impl PairSpec {
    pub fn materialize(&self) -> Result<(StateVector, StateVector)> {
        match self {
            PairSpec::Reference(spec) => spec.materialize_pair(),
            PairSpec::Explicit([a, b]) => {
                let first = a.materialize_single()?;
                let second = b.materialize_single()?;
                if first.dim() != second.dim() {
                    return Err(Error::DimMismatch(first.dim(), 1, second.dim(), 1));
                }
                Ok((first, second))
            }
        }
    }
}

/// Outer product `|psi><psi|` as a matrix.
pub fn pure_density(psi: &StateVector) -> ComplexMatrix {
    let n = psi.dim();
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, psi.amplitudes()[i] * psi.amplitudes()[j].conj());
        }
    }
    m
}
