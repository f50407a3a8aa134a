//! The three Hamiltonian families and their analytic spectra.
//!
//! All three act on small Hilbert spaces and carry a single symmetry-breaking
//! parameter with an exceptional point at its critical value:
//!
//! - PT qubit `H = epsilon (sigma_x + i a sigma_z)`: EP2 at `a = 1`, real
//!   spectrum (unbroken) below it;
//! - anti-PT qubit `[[lambda eta e^{i theta}, i eta], [i eta, -lambda eta
//!   e^{-i theta}]]`: with `theta = 0`, EP2 at `lambda = 1`, real spectrum
//!   (broken phase) above it;
//! - PT qudit `H = -J S_x + i gamma S_z` with spin-3/2 operators: EP4 at
//!   `gamma = J`, real spectrum below it.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix};

/// Tag for the non-custom model families; used by state factories and
/// parameter scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelFamily {
    PtQubit,
    AntiPtQubit,
    PtQudit,
}

impl ModelFamily {
    pub fn dimension(&self) -> usize {
        match self {
            ModelFamily::PtQubit | ModelFamily::AntiPtQubit => 2,
            ModelFamily::PtQudit => 4,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModelFamily::PtQubit => "pt_qubit",
            ModelFamily::AntiPtQubit => "anti_pt_qubit",
            ModelFamily::PtQudit => "pt_qudit",
        }
    }
}

/// One of the three model families, or an arbitrary square matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelJson", into = "ModelJson")]
pub enum HamiltonianModel {
    /// `epsilon`: energy scale; `a`: degree of non-Hermiticity.
    PtQubit {
        epsilon: f64,
        a: f64,
    },
    /// `eta`: energy scale; `lambda`: degree of Hermiticity; `theta`: phase.
    AntiPtQubit {
        eta: f64,
        lambda: f64,
        theta: f64,
    },
    /// `coupling` J and `gain_loss` gamma of the spin-3/2 model.
    PtQudit {
        coupling: f64,
        gain_loss: f64,
    },
    Custom {
        matrix: ComplexMatrix,
    },
}

impl HamiltonianModel {
    pub fn pt_qubit(epsilon: f64, a: f64) -> Result<Self> {
        require_nonneg("epsilon", epsilon)?;
        require_nonneg("a", a)?;
        Ok(HamiltonianModel::PtQubit { epsilon, a })
    }

    pub fn anti_pt_qubit(eta: f64, lambda: f64, theta: f64) -> Result<Self> {
        require_nonneg("eta", eta)?;
        require_nonneg("lambda", lambda)?;
        if !theta.is_finite() {
            return Err(Error::InvalidParameter("theta must be finite".into()));
        }
        Ok(HamiltonianModel::AntiPtQubit { eta, lambda, theta })
    }

    pub fn pt_qudit(coupling: f64, gain_loss: f64) -> Result<Self> {
        require_nonneg("J", coupling)?;
        require_nonneg("gamma", gain_loss)?;
        Ok(HamiltonianModel::PtQudit {
            coupling,
            gain_loss,
        })
    }

    pub fn custom(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare(matrix.rows(), matrix.cols()));
        }
        Ok(HamiltonianModel::Custom { matrix })
    }

    pub fn dimension(&self) -> usize {
        match self {
            HamiltonianModel::PtQubit { .. } | HamiltonianModel::AntiPtQubit { .. } => 2,
            HamiltonianModel::PtQudit { .. } => 4,
            HamiltonianModel::Custom { matrix } => matrix.rows(),
        }
    }

    pub fn family(&self) -> Option<ModelFamily> {
        match self {
            HamiltonianModel::PtQubit { .. } => Some(ModelFamily::PtQubit),
            HamiltonianModel::AntiPtQubit { .. } => Some(ModelFamily::AntiPtQubit),
            HamiltonianModel::PtQudit { .. } => Some(ModelFamily::PtQudit),
            HamiltonianModel::Custom { .. } => None,
        }
    }

    /// Energy scale multiplying dimensionless time on series axes
    /// (epsilon, eta, gamma; 1 for custom matrices).
    pub fn energy_scale(&self) -> f64 {
        match self {
            HamiltonianModel::PtQubit { epsilon, .. } => *epsilon,
            HamiltonianModel::AntiPtQubit { eta, .. } => *eta,
            HamiltonianModel::PtQudit { gain_loss, .. } => *gain_loss,
            HamiltonianModel::Custom { .. } => 1.0,
        }
    }

    /// Compact `key=value` summary for CSV headers and manifests.
    pub fn summary(&self) -> String {
        match self {
            HamiltonianModel::PtQubit { epsilon, a } => {
                format!("pt_qubit epsilon={epsilon} a={a}")
            }
            HamiltonianModel::AntiPtQubit { eta, lambda, theta } => {
                format!("anti_pt_qubit eta={eta} lambda={lambda} theta={theta}")
            }
            HamiltonianModel::PtQudit {
                coupling,
                gain_loss,
            } => format!("pt_qudit J={coupling} gamma={gain_loss}"),
            HamiltonianModel::Custom { matrix } => {
                format!("custom dim={}", matrix.rows())
            }
        }
    }
}

fn require_nonneg(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be finite and nonnegative, got {value}"
        )))
    }
}

/// Phase verdict from the analytic boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseLabel {
    Unbroken,
    Broken,
    ExceptionalPoint,
}

/// Default band width around the critical value for the analytic phase
/// classifier (the dynamical classifier has its own, looser tolerance).
pub const ANALYTIC_PHASE_TOL: f64 = 1e-9;

/// Materialize the model's matrix.
pub fn build_matrix(model: &HamiltonianModel) -> ComplexMatrix {
    match model {
        HamiltonianModel::PtQubit { epsilon, a } => {
            let e = *epsilon;
            ComplexMatrix::new(
                2,
                2,
                vec![c64(0.0, a * e), c64(e, 0.0), c64(e, 0.0), c64(0.0, -a * e)],
            )
            .expect("finite parameters")
        }
        HamiltonianModel::AntiPtQubit { eta, lambda, theta } => {
            let le = lambda * eta;
            let phase = c64(theta.cos(), theta.sin());
            ComplexMatrix::new(
                2,
                2,
                vec![
                    phase * le,
                    c64(0.0, *eta),
                    c64(0.0, *eta),
                    -phase.conj() * le,
                ],
            )
            .expect("finite parameters")
        }
        HamiltonianModel::PtQudit {
            coupling,
            gain_loss,
        } => {
            // -J S_x + i gamma S_z in the spin-3/2 representation, entries
            // hard-coded to match the 4x4 form exactly.
            let j = *coupling;
            let g = *gain_loss;
            let s3 = 3.0_f64.sqrt();
            let z = c64(0.0, 0.0);
            ComplexMatrix::new(
                4,
                4,
                vec![
                    c64(0.0, 1.5 * g),
                    c64(-s3 * j / 2.0, 0.0),
                    z,
                    z,
                    c64(-s3 * j / 2.0, 0.0),
                    c64(0.0, 0.5 * g),
                    c64(-j, 0.0),
                    z,
                    z,
                    c64(-j, 0.0),
                    c64(0.0, -0.5 * g),
                    c64(-s3 * j / 2.0, 0.0),
                    z,
                    z,
                    c64(-s3 * j / 2.0, 0.0),
                    c64(0.0, -1.5 * g),
                ],
            )
            .expect("finite parameters")
        }
        HamiltonianModel::Custom { matrix } => matrix.clone(),
    }
}

/// Closed-form eigenvalues, in the same (re, im) ascending order the general
/// eigensolver uses. Principal-branch square roots carry the broken phase
/// onto the imaginary axis automatically. Errors for custom models.
pub fn analytic_eigenvalues(model: &HamiltonianModel) -> Result<Vec<Complex64>> {
    let mut eigs = match model {
        HamiltonianModel::PtQubit { epsilon, a } => {
            let root = c64(1.0 - a * a, 0.0).sqrt() * epsilon;
            vec![-root, root]
        }
        HamiltonianModel::AntiPtQubit { eta, lambda, theta } => {
            let offset = c64(0.0, lambda * eta * theta.sin());
            let root = c64(
                lambda * lambda * eta * eta * theta.cos() * theta.cos() - eta * eta,
                0.0,
            )
            .sqrt();
            vec![offset - root, offset + root]
        }
        HamiltonianModel::PtQudit {
            coupling,
            gain_loss,
        } => {
            let root = c64(coupling * coupling - gain_loss * gain_loss, 0.0).sqrt();
            [-1.5, -0.5, 0.5, 1.5].iter().map(|&k| root * k).collect()
        }
        HamiltonianModel::Custom { .. } => return Err(Error::CustomModel),
    };
    eigs.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(eigs)
}

/// Phase label from the analytic boundary, with a symmetric tolerance band
/// around the exceptional point.
pub fn classify_phase_analytic(model: &HamiltonianModel, tol: f64) -> Result<PhaseLabel> {
    if tol <= 0.0 {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let label = |gap: f64| {
        if gap < -tol {
            PhaseLabel::Unbroken
        } else if gap > tol {
            PhaseLabel::Broken
        } else {
            PhaseLabel::ExceptionalPoint
        }
    };
    match model {
        HamiltonianModel::PtQubit { a, .. } => Ok(label(a - 1.0)),
        HamiltonianModel::AntiPtQubit { lambda, theta, .. } => {
            // Unbroken iff lambda^2 cos^2(theta) < 1; at theta = 0 this is
            // the usual lambda < 1.
            Ok(label(lambda * lambda * theta.cos() * theta.cos() - 1.0))
        }
        HamiltonianModel::PtQudit {
            coupling,
            gain_loss,
        } => {
            // multiplicative band: unbroken below J(1-tol), broken above J(1+tol)
            if *gain_loss < coupling * (1.0 - tol) {
                Ok(PhaseLabel::Unbroken)
            } else if *gain_loss > coupling * (1.0 + tol) {
                Ok(PhaseLabel::Broken)
            } else {
                Ok(PhaseLabel::ExceptionalPoint)
            }
        }
        HamiltonianModel::Custom { .. } => Err(Error::CustomModel),
    }
}

/// Oscillation period of the phase-encoded measures when the model sits on
/// its oscillatory side; `None` otherwise (and for custom models).
///
/// PT qubit: `pi / (epsilon sqrt(1 - a^2))` for `a < 1`; anti-PT qubit
/// (theta = 0): `pi / (eta sqrt(lambda^2 - 1))` for `lambda > 1`; qudit:
/// `2 pi / sqrt(J^2 - gamma^2)` for `gamma < J`.
pub fn analytic_period(model: &HamiltonianModel) -> Option<f64> {
    match model {
        HamiltonianModel::PtQubit { epsilon, a } => {
            if *a < 1.0 && *epsilon > 0.0 {
                Some(std::f64::consts::PI / (epsilon * (1.0 - a * a).sqrt()))
            } else {
                None
            }
        }
        HamiltonianModel::AntiPtQubit { eta, lambda, theta } => {
            if *theta == 0.0 && *lambda > 1.0 && *eta > 0.0 {
                Some(std::f64::consts::PI / (eta * (lambda * lambda - 1.0).sqrt()))
            } else {
                None
            }
        }
        HamiltonianModel::PtQudit {
            coupling,
            gain_loss,
        } => {
            if gain_loss < coupling {
                Some(
                    2.0 * std::f64::consts::PI
                        / (coupling * coupling - gain_loss * gain_loss).sqrt(),
                )
            } else {
                None
            }
        }
        HamiltonianModel::Custom { .. } => None,
    }
}

/// Wire format shared with the CLI:
/// `{"family": ..., "params": {...}, "matrix": [[[re, im], ...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct ModelJson {
    family: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    params: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<[f64; 2]>>>,
}

impl From<HamiltonianModel> for ModelJson {
    fn from(model: HamiltonianModel) -> Self {
        let mut params = BTreeMap::new();
        match model {
            HamiltonianModel::PtQubit { epsilon, a } => {
                params.insert("epsilon".into(), epsilon);
                params.insert("a".into(), a);
                ModelJson {
                    family: "pt_qubit".into(),
                    params,
                    matrix: None,
                }
            }
            HamiltonianModel::AntiPtQubit { eta, lambda, theta } => {
                params.insert("eta".into(), eta);
                params.insert("lambda".into(), lambda);
                params.insert("theta".into(), theta);
                ModelJson {
                    family: "anti_pt_qubit".into(),
                    params,
                    matrix: None,
                }
            }
            HamiltonianModel::PtQudit {
                coupling,
                gain_loss,
            } => {
                params.insert("J".into(), coupling);
                params.insert("gamma".into(), gain_loss);
                ModelJson {
                    family: "pt_qudit".into(),
                    params,
                    matrix: None,
                }
            }
            HamiltonianModel::Custom { matrix } => {
                let rows = (0..matrix.rows())
                    .map(|i| {
                        (0..matrix.cols())
                            .map(|j| {
                                let z = matrix.get(i, j);
                                [z.re, z.im]
                            })
                            .collect()
                    })
                    .collect();
                ModelJson {
                    family: "custom".into(),
                    params: BTreeMap::new(),
                    matrix: Some(rows),
                }
            }
        }
    }
}

impl TryFrom<ModelJson> for HamiltonianModel {
    type Error = Error;

    fn try_from(json: ModelJson) -> Result<Self> {
        let get = |key: &str, default: Option<f64>| -> Result<f64> {
            json.params.get(key).copied().or(default).ok_or_else(|| {
                Error::InvalidParameter(format!("missing parameter '{key}' for {}", json.family))
            })
        };
        match json.family.as_str() {
            "pt_qubit" => HamiltonianModel::pt_qubit(get("epsilon", Some(1.0))?, get("a", None)?),
            "anti_pt_qubit" => HamiltonianModel::anti_pt_qubit(
                get("eta", Some(1.0))?,
                get("lambda", None)?,
                get("theta", Some(0.0))?,
            ),
            "pt_qudit" => HamiltonianModel::pt_qudit(get("J", None)?, get("gamma", None)?),
            "custom" => {
                let rows = json.matrix.ok_or_else(|| {
                    Error::InvalidParameter("custom model requires a matrix".into())
                })?;
                let n = rows.len();
                let mut data = Vec::with_capacity(n * n);
                for row in &rows {
                    if row.len() != n {
                        return Err(Error::InvalidParameter(
                            "custom matrix must be square".into(),
                        ));
                    }
                    for &[re, im] in row {
                        data.push(c64(re, im));
                    }
                }
                HamiltonianModel::custom(ComplexMatrix::new(n, n, data)?)
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown model family '{other}'"
            ))),
        }
    }
}
