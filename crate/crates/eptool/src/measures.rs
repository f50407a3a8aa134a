//! Scalar measures along the dynamics.
//!
//! The Hilbert-Schmidt speed (HSS) is the quantum statistical speed
//! `sqrt( Tr[(d rho/d phi)^2] / 2 )` with respect to a phase `phi` encoded in
//! the initial state; it needs no diagonalization of the evolved state. The
//! phi-derivative is carried analytically through the normalized non-unitary
//! evolution, with a central-difference route kept as an independent check.
//! Trace distance, Hilbert-Schmidt distance, the QFI, and the closed-form
//! HSS expressions at the exceptional points round out the module.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution::{evolve_density_with, DensityMatrix, StateVector};
use crate::hamiltonians::HamiltonianModel;
use crate::linalg::{c64, eig_hermitian, ComplexMatrix};
use crate::states::{phase_superposition, phase_superposition_derivative, pure_density};

/// Step for the central-difference derivative oracle (radians).
pub const CENTRAL_DIFF_STEP: f64 = 1e-5;

/// Default absolute cutoff on eigenvalue sums in the QFI double sum.
pub const QFI_CUTOFF: f64 = 1e-10;

/// How a phi-derivative was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMethod {
    Analytic,
    CentralDifference,
}

/// `d rho(t, phi) / d phi` of the normalized evolved state.
#[derive(Debug, Clone)]
pub struct PhiDerivative {
    pub d_rho: ComplexMatrix,
    pub method: DerivativeMethod,
}

/// Analytic derivative of the evolved state with respect to the encoded
/// phase. With `M(phi) = U rho_0(phi) U^dagger`:
///
/// ```text
/// d rho = dM / Tr M  -  M Tr(dM) / (Tr M)^2
/// ```
///
/// where `dM = U (d rho_0) U^dagger` and `d rho_0` follows from
/// `d psi_0 = (i e^{i phi} / sqrt(n)) |0>`.
pub fn d_rho_d_phi(model: &HamiltonianModel, n: usize, phi: f64, t: f64) -> Result<PhiDerivative> {
    if n != model.dimension() {
        return Err(Error::DimMismatch(model.dimension(), 1, n, 1));
    }
    let u = crate::evolution::propagator(model, t)?;
    d_rho_d_phi_with(&u, n, phi)
}

/// Same as [`d_rho_d_phi`] with a precomputed propagator.
pub fn d_rho_d_phi_with(u: &ComplexMatrix, n: usize, phi: f64) -> Result<PhiDerivative> {
    let psi0 = phase_superposition(n, phi)?;
    let dpsi0 = phase_superposition_derivative(n, phi)?;

    let rho0 = pure_density(&psi0);
    // d rho_0 = |dpsi><psi| + |psi><dpsi|
    let mut drho0 = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = dpsi0[i] * psi0.amplitudes()[j].conj() + psi0.amplitudes()[i] * dpsi0[j].conj();
            drho0.set(i, j, v);
        }
    }

    let u_dag = u.adjoint();
    let m = u.matmul(&rho0)?.matmul(&u_dag)?;
    let dm = u.matmul(&drho0)?.matmul(&u_dag)?;

    let tr_m = m.trace()?.re;
    if !(tr_m > 1e-300) {
        return Err(Error::StateExtinction { norm: tr_m });
    }
    let tr_dm = dm.trace()?;

    let first = dm.scale(c64(1.0 / tr_m, 0.0));
    let second = m.scale(tr_dm / (tr_m * tr_m));
    let d_rho = first.sub(&second)?;

    Ok(PhiDerivative {
        d_rho,
        method: DerivativeMethod::Analytic,
    })
}

/// Central-difference derivative of the normalized evolved state, the
/// independent oracle for the analytic route.
pub fn d_rho_d_phi_central(
    model: &HamiltonianModel,
    n: usize,
    phi: f64,
    t: f64,
    step: f64,
) -> Result<PhiDerivative> {
    if n != model.dimension() {
        return Err(Error::DimMismatch(model.dimension(), 1, n, 1));
    }
    if !(step > 0.0) {
        return Err(Error::InvalidParameter("step must be positive".into()));
    }
    let u = crate::evolution::propagator(model, t)?;
    let rho = |p: f64| -> Result<ComplexMatrix> {
        let psi = phase_superposition(n, p)?;
        let rho0 = DensityMatrix::from_pure(&psi)?;
        Ok(evolve_density_with(&u, &rho0)?.matrix().clone())
    };
    let plus = rho(phi + step)?;
    let minus = rho(phi - step)?;
    let d_rho = plus.sub(&minus)?.scale(c64(1.0 / (2.0 * step), 0.0));
    Ok(PhiDerivative {
        d_rho,
        method: DerivativeMethod::CentralDifference,
    })
}

/// Hilbert-Schmidt speed `sqrt( Tr[(d rho/d phi)^2] / 2 )` of the evolved
/// state, computed from the analytic derivative.
pub fn hss(model: &HamiltonianModel, n: usize, phi: f64, t: f64) -> Result<f64> {
    let d = d_rho_d_phi(model, n, phi, t)?;
    Ok(hss_from_derivative(&d.d_rho))
}

/// HSS with a precomputed propagator, for tight sampling loops.
pub fn hss_with(u: &ComplexMatrix, n: usize, phi: f64) -> Result<f64> {
    let d = d_rho_d_phi_with(u, n, phi)?;
    Ok(hss_from_derivative(&d.d_rho))
}

pub fn hss_from_derivative(d_rho: &ComplexMatrix) -> f64 {
    // Tr[D^2] for Hermitian D is the squared Frobenius norm; real and >= 0.
    let tr: f64 = d_rho
        .matmul(d_rho)
        .expect("square derivative")
        .trace()
        .expect("square derivative")
        .re;
    (0.5 * tr.max(0.0)).sqrt()
}

/// Closed-form HSS at the PT-qubit exceptional point (`a = 1`):
/// `1 / (4 eps^2 t^2 - 4 eps^2 t^2 sin(phi) + 2)`.
pub fn hss_ep_pt_closed(epsilon: f64, phi: f64, t: f64) -> f64 {
    let et2 = epsilon * epsilon * t * t;
    1.0 / (4.0 * et2 - 4.0 * et2 * phi.sin() + 2.0)
}

/// Closed-form HSS at the anti-PT-qubit exceptional point (`lambda = 1`):
/// `1 / (2 |2 eta^2 t^2 + 2 eta t (eta t sin(phi) + cos(phi)) + 1|)`.
pub fn hss_ep_anti_closed(eta: f64, phi: f64, t: f64) -> f64 {
    let et = eta * t;
    1.0 / (2.0 * (2.0 * et * et + 2.0 * et * (et * phi.sin() + phi.cos()) + 1.0).abs())
}

/// Trace distance `D = Tr|rho_1 - rho_2| / 2`, via the Hermitian
/// eigendecomposition of the difference (exact for Hermitian arguments; no
/// square-root iteration involved).
pub fn trace_distance(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimMismatch(
            rho1.dim(),
            rho1.dim(),
            rho2.dim(),
            rho2.dim(),
        ));
    }
    let diff = rho1.matrix().sub(rho2.matrix())?;
    let eig = eig_hermitian(&diff)?;
    Ok(0.5 * eig.eigenvalues.iter().map(|z| z.re.abs()).sum::<f64>())
}

/// Hilbert-Schmidt distance `sqrt( Tr[(rho - sigma)^2] / 2 )`.
pub fn hs_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch(
            rho.dim(),
            rho.dim(),
            sigma.dim(),
            sigma.dim(),
        ));
    }
    let diff = rho.matrix().sub(sigma.matrix())?;
    let tr = diff.matmul(&diff)?.trace()?.re;
    Ok((0.5 * tr.max(0.0)).sqrt())
}

/// Quantum Fisher information of the evolved state with respect to the
/// encoded phase:
///
/// ```text
/// F = 2 sum_{i,j} |<phi_i| d rho |phi_j>|^2 / (lambda_i + lambda_j)
/// ```
///
/// over eigenpairs of `rho(t)`, omitting terms with
/// `lambda_i + lambda_j <= cutoff`.
pub fn qfi(model: &HamiltonianModel, n: usize, phi: f64, t: f64, cutoff: f64) -> Result<f64> {
    if !(cutoff > 0.0) {
        return Err(Error::InvalidParameter("cutoff must be positive".into()));
    }
    let u = crate::evolution::propagator(model, t)?;
    qfi_with(&u, n, phi, cutoff)
}

pub fn qfi_with(u: &ComplexMatrix, n: usize, phi: f64, cutoff: f64) -> Result<f64> {
    let psi0 = phase_superposition(n, phi)?;
    let rho0 = DensityMatrix::from_pure(&psi0)?;
    let rho_t = evolve_density_with(u, &rho0)?;
    let d = d_rho_d_phi_with(u, n, phi)?;

    let eig = eig_hermitian(rho_t.matrix())?;
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            let denom = eig.eigenvalues[i].re + eig.eigenvalues[j].re;
            if denom <= cutoff {
                continue;
            }
            // <phi_i| d_rho |phi_j>
            let vj: Vec<Complex64> = (0..n).map(|r| eig.eigenvectors.get(r, j)).collect();
            let dvj = d.d_rho.matvec(&vj)?;
            let elem: Complex64 = (0..n)
                .map(|r| eig.eigenvectors.get(r, i).conj() * dvj[r])
                .sum();
            total += 2.0 * elem.norm_sqr() / denom;
        }
    }
    Ok(total)
}

/// Pure-state QFI `4 (<dpsi|dpsi> - |<psi|dpsi>|^2)` of the normalized
/// evolved ket; an independent check of the spectral formula, valid because
/// the evolution preserves purity.
pub fn qfi_pure_oracle(model: &HamiltonianModel, n: usize, phi: f64, t: f64) -> Result<f64> {
    let step = CENTRAL_DIFF_STEP;
    let u = crate::evolution::propagator(model, t)?;
    let state = |p: f64| -> Result<StateVector> {
        let psi0 = phase_superposition(n, p)?;
        let (_, normalized) = crate::evolution::evolve_state_with(&u, &psi0)?;
        Ok(normalized)
    };
    let plus = state(phi + step)?;
    let minus = state(phi - step)?;
    let center = state(phi)?;
    let dpsi: Vec<Complex64> = plus
        .amplitudes()
        .iter()
        .zip(minus.amplitudes())
        .map(|(p, m)| (p - m) / (2.0 * step))
        .collect();
    let dd: f64 = dpsi.iter().map(|z| z.norm_sqr()).sum();
    let overlap: Complex64 = center
        .amplitudes()
        .iter()
        .zip(dpsi.iter())
        .map(|(c, d)| c.conj() * d)
        .sum();
    Ok(4.0 * (dd - overlap.norm_sqr()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonians::ModelFamily;
    use crate::states::td_pair;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    #[test]
    fn derivative_at_time_zero_squares_to_quarter_identity() {
        // (d rho_0)^2 = I/4 for n = 2, so Tr = 1/2 independent of phi.
        for &phi in &[0.0, 0.7, FRAC_PI_2, 2.9] {
            let m = HamiltonianModel::pt_qubit(1.0, 0.4).unwrap();
            let d = d_rho_d_phi(&m, 2, phi, 0.0).unwrap();
            let sq = d.d_rho.matmul(&d.d_rho).unwrap();
            let tr = sq.trace().unwrap().re;
            assert!((tr - 0.5).abs() <= 1e-12, "phi={phi} tr={tr}");
        }
    }

    #[test]
    fn derivative_is_hermitian_and_traceless() {
        let m = HamiltonianModel::pt_qudit(2.2, 1.0).unwrap();
        let d = d_rho_d_phi(&m, 4, 0.8, 2.3).unwrap();
        assert!(d.d_rho.hermitian_deviation() <= 1e-9);
        assert!(d.d_rho.trace().unwrap().norm() <= 1e-9);
    }

    #[test]
    fn hermitian_model_derivative_reduces_to_rotated_initial_derivative() {
        // For unitary U, Tr(dM) = 0 and d rho = U (d rho_0) U^dagger.
        let m = HamiltonianModel::pt_qubit(1.0, 0.0).unwrap();
        let t = 1.7;
        let phi = 0.6;
        let d = d_rho_d_phi(&m, 2, phi, t).unwrap();
        let u = crate::evolution::propagator(&m, t).unwrap();
        let d0 = d_rho_d_phi(&m, 2, phi, 0.0).unwrap();
        let rotated = u.matmul(&d0.d_rho).unwrap().matmul(&u.adjoint()).unwrap();
        let diff = d.d_rho.sub(&rotated).unwrap().norm_fro();
        assert!(diff <= 1e-12, "diff {diff}");
    }

    #[test]
    fn analytic_matches_central_difference() {
        let models = [
            HamiltonianModel::pt_qubit(1.0, 0.6).unwrap(),
            HamiltonianModel::anti_pt_qubit(1.0, 1.4, 0.0).unwrap(),
            HamiltonianModel::pt_qudit(2.2, 1.0).unwrap(),
        ];
        for m in &models {
            let n = m.dimension();
            for &t in &[0.0, 0.9, 3.3] {
                for &phi in &[0.2, 1.9] {
                    let analytic = d_rho_d_phi(m, n, phi, t).unwrap();
                    let fd = d_rho_d_phi_central(m, n, phi, t, CENTRAL_DIFF_STEP).unwrap();
                    let err = analytic.d_rho.sub(&fd.d_rho).unwrap().norm_max();
                    assert!(err <= 1e-8, "{} t={t} phi={phi} err={err}", m.summary());
                }
            }
        }
    }

    #[test]
    fn hss_starts_at_half_for_qubits() {
        for m in [
            HamiltonianModel::pt_qubit(1.0, 1.7).unwrap(),
            HamiltonianModel::anti_pt_qubit(1.0, 0.3, 0.0).unwrap(),
        ] {
            let v = hss(&m, 2, 0.9, 0.0).unwrap();
            assert!((v - 0.5).abs() <= 1e-12, "{}: {v}", m.summary());
        }
    }

    #[test]
    fn hss_at_ep_is_constant_half_at_phi_half_pi() {
        let m = HamiltonianModel::pt_qubit(1.0, 1.0).unwrap();
        for &t in &[0.0, 1.0, 4.0, 10.0] {
            let v = hss(&m, 2, FRAC_PI_2, t).unwrap();
            assert!((v - 0.5).abs() <= 1e-9, "t={t} v={v}");
        }
    }

    #[test]
    fn ep_closed_forms_reference_values() {
        assert!((hss_ep_pt_closed(1.0, 0.3, 0.0) - 0.5).abs() <= 1e-15);
        assert!((hss_ep_pt_closed(1.0, FRAC_PI_2, 7.7) - 0.5).abs() <= 1e-15);
        assert!((hss_ep_pt_closed(1.0, 0.0, 1.0) - 1.0 / 6.0).abs() <= 1e-15);
        assert!((hss_ep_anti_closed(1.0, 0.9, 0.0) - 0.5).abs() <= 1e-15);
        assert!((hss_ep_anti_closed(1.0, 0.0, 1.0) - 0.1).abs() <= 1e-15);
    }

    #[test]
    fn numeric_hss_matches_pt_ep_closed_form() {
        let m = HamiltonianModel::pt_qubit(1.0, 1.0).unwrap();
        for &phi in &[0.0, FRAC_PI_4, FRAC_PI_2, 2.2] {
            for &t in &[0.0, 0.5, 2.0, 8.0] {
                let numeric = hss(&m, 2, phi, t).unwrap();
                let closed = hss_ep_pt_closed(1.0, phi, t);
                assert!(
                    (numeric - closed).abs() <= 1e-9,
                    "phi={phi} t={t}: {numeric} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn numeric_hss_matches_anti_ep_closed_form() {
        let m = HamiltonianModel::anti_pt_qubit(1.0, 1.0, 0.0).unwrap();
        for &phi in &[0.0, FRAC_PI_4, FRAC_PI_2, 2.9] {
            for &t in &[0.0, 0.5, 2.0, 8.0] {
                let numeric = hss(&m, 2, phi, t).unwrap();
                let closed = hss_ep_anti_closed(1.0, phi, t);
                assert!(
                    (numeric - closed).abs() <= 1e-6,
                    "phi={phi} t={t}: {numeric} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn trace_distance_basics() {
        let psi = phase_superposition(2, 0.3).unwrap();
        let rho = DensityMatrix::from_pure(&psi).unwrap();
        assert!(trace_distance(&rho, &rho).unwrap() <= 1e-12);

        let up = StateVector::normalized(vec![c64(1.0, 0.0), c64(0.0, 0.0)]).unwrap();
        let down = StateVector::normalized(vec![c64(0.0, 0.0), c64(1.0, 0.0)]).unwrap();
        let r1 = DensityMatrix::from_pure(&up).unwrap();
        let r2 = DensityMatrix::from_pure(&down).unwrap();
        assert!((trace_distance(&r1, &r2).unwrap() - 1.0).abs() <= 1e-12);
        assert!((hs_distance(&r1, &r2).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn trace_distance_of_pt_pair_matches_two_by_two_formula() {
        // The difference of the pair projectors is [[0, cos(phi)], [cos(phi), 0]]
        // with eigenvalues +/- cos(phi), so D(0) = |cos(phi)|.
        let phi = FRAC_PI_3;
        let (a, b) = td_pair(ModelFamily::PtQubit, phi, None).unwrap();
        let r1 = DensityMatrix::from_pure(&a).unwrap();
        let r2 = DensityMatrix::from_pure(&b).unwrap();
        let d = trace_distance(&r1, &r2).unwrap();
        assert!((d - phi.cos().abs()).abs() <= 1e-12, "d={d}");
    }

    #[test]
    fn trace_distance_dimension_mismatch() {
        let q2 = DensityMatrix::from_pure(&phase_superposition(2, 0.0).unwrap()).unwrap();
        let q4 = DensityMatrix::from_pure(&phase_superposition(4, 0.0).unwrap()).unwrap();
        assert!(trace_distance(&q2, &q4).is_err());
        assert!(hs_distance(&q2, &q4).is_err());
    }

    #[test]
    fn qfi_initial_value_for_two_levels() {
        // pure-state formula: 4 (1/n - 1/n^2) = 1 at n = 2
        let m = HamiltonianModel::pt_qubit(1.0, 0.4).unwrap();
        let f = qfi(&m, 2, 0.8, 0.0, QFI_CUTOFF).unwrap();
        assert!((f - 1.0).abs() <= 1e-9, "QFI(0) = {f}");
    }

    #[test]
    fn qfi_constant_under_hermitian_evolution() {
        let m = HamiltonianModel::pt_qubit(1.0, 0.0).unwrap();
        let f0 = qfi(&m, 2, 0.8, 0.0, QFI_CUTOFF).unwrap();
        for &t in &[0.7, 2.0, 5.5] {
            let f = qfi(&m, 2, 0.8, t, QFI_CUTOFF).unwrap();
            assert!((f - f0).abs() <= 1e-9, "t={t}: {f} vs {f0}");
        }
    }

    #[test]
    fn qfi_matches_pure_state_oracle() {
        let models = [
            HamiltonianModel::pt_qubit(1.0, 0.4).unwrap(),
            HamiltonianModel::anti_pt_qubit(1.0, 1.4, 0.0).unwrap(),
            HamiltonianModel::pt_qudit(2.2, 1.0).unwrap(),
        ];
        for m in &models {
            let n = m.dimension();
            for &t in &[0.4, 1.8] {
                let spectral = qfi(m, n, 0.9, t, QFI_CUTOFF).unwrap();
                let oracle = qfi_pure_oracle(m, n, 0.9, t).unwrap();
                assert!(
                    (spectral - oracle).abs() <= 1e-8 * spectral.max(1.0),
                    "{} t={t}: {spectral} vs {oracle}",
                    m.summary()
                );
            }
        }
    }

    #[test]
    fn qfi_oscillates_in_the_unbroken_phase() {
        let m = HamiltonianModel::pt_qubit(1.0, 0.4).unwrap();
        let f0 = qfi(&m, 2, FRAC_PI_4, 0.0, QFI_CUTOFF).unwrap();
        let mut deviation: f64 = 0.0;
        for k in 1..40 {
            let t = k as f64 * 0.25;
            let f = qfi(&m, 2, FRAC_PI_4, t, QFI_CUTOFF).unwrap();
            deviation = deviation.max((f - f0).abs());
        }
        assert!(
            deviation > 1e-3,
            "expected non-constant QFI, max dev {deviation}"
        );
    }
}
