//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line with the measured numbers (visible with `--nocapture`).
//!
//! Run with:
//!
//! ```text
//! cargo test -p eptool --test acceptance -- --nocapture
//! ```

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

use eptool::analysis::{
    classify_scan_point, contractivity_audit, estimate_period, hss_qfi_correspondence, locate_ep,
    sample_series, MeasureTag, SeriesParams, TimeGrid, WitnessConfig,
};
use eptool::evolution::{eigen_expansion, evolve_state_by_expansion, expm_propagator, propagator};
use eptool::hamiltonians::{analytic_period, build_matrix, HamiltonianModel, ModelFamily};
use eptool::linalg::{c64, ComplexMatrix};
use eptool::measures::{
    d_rho_d_phi, d_rho_d_phi_central, hss, hss_ep_anti_closed, hss_ep_pt_closed, qfi,
    CENTRAL_DIFF_STEP, QFI_CUTOFF,
};
use eptool::states::{phase_superposition, td_pair};

const WITNESS_PHI: f64 = FRAC_PI_4;

fn estimated_period(model: &HamiltonianModel) -> f64 {
    // grid spacing T/100, window 4T
    let t = analytic_period(model).expect("oscillatory side");
    let grid = TimeGrid::new(0.0, 4.0 * t, 401).unwrap();
    let series = sample_series(
        model,
        MeasureTag::Hss,
        &grid,
        &SeriesParams::Phase {
            n: model.dimension(),
            phi: WITNESS_PHI,
        },
    )
    .unwrap();
    estimate_period(&series).unwrap()
}

/// Least-squares slope of ln(v) against ln(t) on a geometric time grid.
fn log_log_slope(model: &HamiltonianModel, phi: f64, t_lo: f64, t_hi: f64, points: usize) -> f64 {
    let ratio = (t_hi / t_lo).powf(1.0 / (points - 1) as f64);
    let mut xs = Vec::with_capacity(points);
    let mut ys = Vec::with_capacity(points);
    let mut t = t_lo;
    for _ in 0..points {
        let v = hss(model, 2, phi, t).unwrap();
        xs.push(t.ln());
        ys.push(v.ln());
        t *= ratio;
    }
    let n = points as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys.iter()).map(|(x, y)| x * y).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[test]
fn criterion_01_pt_qubit_periods() {
    for &a in &[0.2, 0.5, 0.8] {
        let model = HamiltonianModel::pt_qubit(1.0, a).unwrap();
        let expected = PI / (1.0 - a * a).sqrt();
        let estimated = estimated_period(&model);
        let rel = (estimated - expected).abs() / expected;
        assert!(
            rel <= 0.01,
            "criterion 1 FAIL: a={a} period {estimated} vs {expected} (rel {rel:.2e})"
        );
        println!(
            "criterion 1 PASS: PT qubit a={a}: period {estimated:.6} vs analytic {expected:.6} (rel {rel:.2e})"
        );
    }
}

#[test]
fn criterion_02_anti_pt_periods() {
    for &lambda in &[1.2, 1.4, 2.0] {
        let model = HamiltonianModel::anti_pt_qubit(1.0, lambda, 0.0).unwrap();
        let expected = PI / (lambda * lambda - 1.0).sqrt();
        let estimated = estimated_period(&model);
        let rel = (estimated - expected).abs() / expected;
        assert!(
            rel <= 0.01,
            "criterion 2 FAIL: lambda={lambda} period {estimated} vs {expected} (rel {rel:.2e})"
        );
        println!(
            "criterion 2 PASS: anti-PT lambda={lambda}: period {estimated:.6} vs analytic {expected:.6} (rel {rel:.2e})"
        );
    }
}

#[test]
fn criterion_03_qudit_period() {
    let (j, gamma) = (2.2, 1.0);
    let model = HamiltonianModel::pt_qudit(j, gamma).unwrap();
    let expected = 2.0 * PI / (j * j - gamma * gamma).sqrt();
    let estimated = estimated_period(&model);
    let rel = (estimated - expected).abs() / expected;
    assert!(
        rel <= 0.01,
        "criterion 3 FAIL: period {estimated} vs {expected} (rel {rel:.2e})"
    );
    println!(
        "criterion 3 PASS: qudit J/gamma=2.2: period {estimated:.6} vs analytic {expected:.6} (rel {rel:.2e})"
    );
}

#[test]
fn criterion_04_phase_truth_table() {
    let cfg = WitnessConfig::default();
    let mut misclassifications = 0usize;
    let mut checked = 0usize;

    for &a in &[0.2, 0.5, 0.8, 1.3, 2.0] {
        let verdict = classify_scan_point(ModelFamily::PtQubit, a, &cfg)
            .unwrap()
            .is_oscillatory();
        let expected = a < 1.0;
        checked += 1;
        if verdict != expected {
            misclassifications += 1;
            eprintln!("criterion 4: PT a={a} misclassified (oscillatory={verdict})");
        }
    }
    for &lambda in &[0.2, 0.5, 1.3, 2.0] {
        let verdict = classify_scan_point(ModelFamily::AntiPtQubit, lambda, &cfg)
            .unwrap()
            .is_oscillatory();
        let expected = lambda > 1.0;
        checked += 1;
        if verdict != expected {
            misclassifications += 1;
            eprintln!("criterion 4: anti-PT lambda={lambda} misclassified (oscillatory={verdict})");
        }
    }
    for &j_over_gamma in &[0.9, 2.2] {
        // the scan variable is gamma / J
        let x = 1.0 / j_over_gamma;
        let verdict = classify_scan_point(ModelFamily::PtQudit, x, &cfg)
            .unwrap()
            .is_oscillatory();
        let expected = x < 1.0;
        checked += 1;
        if verdict != expected {
            misclassifications += 1;
            eprintln!("criterion 4: qudit J/gamma={j_over_gamma} misclassified");
        }
    }

    assert_eq!(
        misclassifications, 0,
        "criterion 4 FAIL: {misclassifications}/{checked} misclassified"
    );
    println!("criterion 4 PASS: phase truth table, {checked}/{checked} verdicts correct");
}

#[test]
fn criterion_05_ep_location() {
    let cfg = WitnessConfig::default();
    for family in [
        ModelFamily::PtQubit,
        ModelFamily::AntiPtQubit,
        ModelFamily::PtQudit,
    ] {
        let report = locate_ep(family, &cfg, (0.5, 1.5), 0.01).unwrap();
        let err = (report.critical_value - 1.0).abs();
        assert!(
            err <= 0.01,
            "criterion 5 FAIL: {family:?} critical value {} (err {err:.3})",
            report.critical_value
        );
        println!(
            "criterion 5 PASS: {} EP at {:.4} (bracket [{:.4}, {:.4}], {} bisections)",
            family.name(),
            report.critical_value,
            report.bracket.0,
            report.bracket.1,
            report.iterations
        );
    }
}

#[test]
fn criterion_06_ep_closed_forms() {
    // PT qubit at a = 1
    let pt = HamiltonianModel::pt_qubit(1.0, 1.0).unwrap();
    let mut worst_pt = 0.0f64;
    for &phi in &[0.0, FRAC_PI_4, FRAC_PI_2] {
        for k in 0..=200 {
            let t = 10.0 * k as f64 / 200.0;
            let numeric = hss(&pt, 2, phi, t).unwrap();
            let closed = hss_ep_pt_closed(1.0, phi, t);
            worst_pt = worst_pt.max((numeric - closed).abs());
        }
    }
    assert!(
        worst_pt <= 1e-6,
        "criterion 6 FAIL: PT EP closed-form deviation {worst_pt:.2e}"
    );

    // constancy at phi = pi/2
    let mut worst_flat = 0.0f64;
    for k in 0..=160 {
        let t = 40.0 * k as f64 / 160.0;
        let v = hss(&pt, 2, FRAC_PI_2, t).unwrap();
        worst_flat = worst_flat.max((v - 0.5).abs());
    }
    assert!(
        worst_flat <= 1e-9,
        "criterion 6 FAIL: HSS at phi=pi/2 deviates from 1/2 by {worst_flat:.2e}"
    );

    // asymptotic 1/t^2 tail at phi = 0
    let slope_pt = log_log_slope(&pt, 0.0, 20.0, 200.0, 25);
    assert!(
        (-2.02..=-1.98).contains(&slope_pt),
        "criterion 6 FAIL: PT tail slope {slope_pt}"
    );

    // anti-PT qubit at lambda = 1
    let anti = HamiltonianModel::anti_pt_qubit(1.0, 1.0, 0.0).unwrap();
    let mut worst_anti = 0.0f64;
    for &phi in &[0.0, FRAC_PI_4, FRAC_PI_2] {
        for k in 0..=200 {
            let t = 10.0 * k as f64 / 200.0;
            let numeric = hss(&anti, 2, phi, t).unwrap();
            let closed = hss_ep_anti_closed(1.0, phi, t);
            worst_anti = worst_anti.max((numeric - closed).abs());
        }
    }
    assert!(
        worst_anti <= 1e-6,
        "criterion 6 FAIL: anti-PT EP closed-form deviation {worst_anti:.2e}"
    );
    let slope_anti = log_log_slope(&anti, 0.0, 100.0, 400.0, 25);
    assert!(
        (-2.02..=-1.98).contains(&slope_anti),
        "criterion 6 FAIL: anti-PT tail slope {slope_anti}"
    );

    println!(
        "criterion 6 PASS: EP closed forms (PT dev {worst_pt:.2e}, anti dev {worst_anti:.2e}, \
         phi=pi/2 flat to {worst_flat:.2e}, tail slopes {slope_pt:.4} / {slope_anti:.4})"
    );
}

#[test]
fn criterion_07_derivative_oracle() {
    let models = [
        HamiltonianModel::pt_qubit(1.0, 0.6).unwrap(),
        HamiltonianModel::anti_pt_qubit(1.0, 1.4, 0.0).unwrap(),
        HamiltonianModel::pt_qudit(2.2, 1.0).unwrap(),
    ];
    let phis = [0.1, 0.9, 1.7, 2.5, 3.3];
    let times = [0.0, 0.7, 1.5, 2.4, 3.3, 4.1, 5.0];
    let mut samples = 0usize;
    let mut worst = 0.0f64;
    for model in &models {
        let n = model.dimension();
        for &phi in &phis {
            for &t in &times {
                let analytic = d_rho_d_phi(model, n, phi, t).unwrap();
                let fd = d_rho_d_phi_central(model, n, phi, t, CENTRAL_DIFF_STEP).unwrap();
                let scale = analytic.d_rho.norm_max().max(1e-6);
                let rel = analytic.d_rho.sub(&fd.d_rho).unwrap().norm_max() / scale;
                worst = worst.max(rel);
                samples += 1;
            }
        }
    }
    assert!(samples >= 100, "need >= 100 samples, got {samples}");
    assert!(
        worst <= 1e-6,
        "criterion 7 FAIL: worst relative derivative deviation {worst:.2e}"
    );
    println!(
        "criterion 7 PASS: analytic vs central-difference derivative on {samples} samples \
         (worst relative {worst:.2e})"
    );
}

#[test]
fn criterion_08_hss_qfi_correspondence() {
    let cases = [
        ("PT a=0.4", HamiltonianModel::pt_qubit(1.0, 0.4).unwrap()),
        (
            "anti-PT lambda=1.4",
            HamiltonianModel::anti_pt_qubit(1.0, 1.4, 0.0).unwrap(),
        ),
    ];
    for (label, model) in cases {
        let grid = TimeGrid::new(0.0, 12.0, 1201).unwrap();
        let report = hss_qfi_correspondence(&model, WITNESS_PHI, &grid).unwrap();
        assert!(
            report.sign_agreement_fraction == 1.0,
            "criterion 8 FAIL: {label} sign agreement {}",
            report.sign_agreement_fraction
        );
        assert_eq!(
            report.min_locations_hss.len(),
            report.min_locations_qfi.len(),
            "criterion 8 FAIL: {label} minimum counts differ"
        );
        for (h, q) in report
            .min_locations_hss
            .iter()
            .zip(report.min_locations_qfi.iter())
        {
            assert!(
                (*h as i64 - *q as i64).abs() <= 1,
                "criterion 8 FAIL: {label} minima at {h} vs {q}"
            );
        }
        println!(
            "criterion 8 PASS: {label}: sign agreement 1.0 over {} steps, {} minima aligned",
            report.comparable_steps,
            report.min_locations_hss.len()
        );
    }
}

#[test]
fn criterion_09_non_contractivity_reproductions() {
    let configs: Vec<(&str, HamiltonianModel, ModelFamily, f64, Option<f64>)> = vec![
        (
            "PT a=0.2 phi=pi/3",
            HamiltonianModel::pt_qubit(1.0, 0.2).unwrap(),
            ModelFamily::PtQubit,
            FRAC_PI_3,
            None,
        ),
        (
            "PT a=0.4 phi=pi/4",
            HamiltonianModel::pt_qubit(1.0, 0.4).unwrap(),
            ModelFamily::PtQubit,
            FRAC_PI_4,
            None,
        ),
        (
            "anti-PT lambda=0.5 phi=3.1",
            HamiltonianModel::anti_pt_qubit(1.0, 0.5, 0.0).unwrap(),
            ModelFamily::AntiPtQubit,
            3.1,
            None,
        ),
        (
            "anti-PT lambda=0.6 phi=2.9",
            HamiltonianModel::anti_pt_qubit(1.0, 0.6, 0.0).unwrap(),
            ModelFamily::AntiPtQubit,
            2.9,
            None,
        ),
        (
            "anti-PT lambda=1.5 phi=3.1",
            HamiltonianModel::anti_pt_qubit(1.0, 1.5, 0.0).unwrap(),
            ModelFamily::AntiPtQubit,
            3.1,
            None,
        ),
        (
            "anti-PT lambda=1.3 phi=2.9",
            HamiltonianModel::anti_pt_qubit(1.0, 1.3, 0.0).unwrap(),
            ModelFamily::AntiPtQubit,
            2.9,
            None,
        ),
        (
            "qudit J/gamma=0.9 theta=pi/4 phi=pi/2",
            HamiltonianModel::pt_qudit(0.9, 1.0).unwrap(),
            ModelFamily::PtQudit,
            FRAC_PI_2,
            Some(FRAC_PI_4),
        ),
        (
            "qudit J/gamma=0.9 theta=1.1 phi=2.1",
            HamiltonianModel::pt_qudit(0.9, 1.0).unwrap(),
            ModelFamily::PtQudit,
            2.1,
            Some(1.1),
        ),
        (
            "qudit J/gamma=2.2 theta=1.5 phi=0.1",
            HamiltonianModel::pt_qudit(2.2, 1.0).unwrap(),
            ModelFamily::PtQudit,
            0.1,
            Some(1.5),
        ),
    ];

    let grid = TimeGrid::new(0.0, 12.0, 2401).unwrap();
    for (label, model, family, phi, theta) in configs {
        let (first, second) = td_pair(family, phi, theta).unwrap();
        let report = contractivity_audit(&model, (&first, &second), &grid).unwrap();
        assert!(
            report.violating,
            "criterion 9 FAIL: {label} shows no trace-distance growth"
        );
        println!(
            "criterion 9 PASS: {label}: violating=true, max rate {:.3e}, {} interval(s)",
            report.max_increase_rate,
            report.violation_intervals.len()
        );
    }
}

#[test]
fn criterion_10_hermitian_controls() {
    let model = HamiltonianModel::pt_qubit(1.0, 0.0).unwrap();

    // unitarity of both propagator routes
    let mut worst_unitary = 0.0f64;
    for k in 1..=40 {
        let t = 0.3 * k as f64;
        for u in [
            propagator(&model, t).unwrap(),
            expm_propagator(&model, t).unwrap(),
        ] {
            let err = u
                .adjoint()
                .matmul(&u)
                .unwrap()
                .sub(&ComplexMatrix::identity(2))
                .unwrap()
                .norm_fro();
            worst_unitary = worst_unitary.max(err);
        }
    }
    assert!(
        worst_unitary <= 1e-10,
        "criterion 10 FAIL: unitarity deviation {worst_unitary:.2e}"
    );

    // trace distance constant along the evolution
    let (first, second) = td_pair(ModelFamily::PtQubit, FRAC_PI_3, None).unwrap();
    let grid = TimeGrid::new(0.0, 12.0, 601).unwrap();
    let td = sample_series(
        &model,
        MeasureTag::Td,
        &grid,
        &SeriesParams::Pair {
            first: first.clone(),
            second: second.clone(),
        },
    )
    .unwrap();
    let d0 = td.values[0];
    let td_dev = td.values.iter().map(|v| (v - d0).abs()).fold(0.0, f64::max);
    assert!(
        td_dev <= 1e-10,
        "criterion 10 FAIL: trace distance drifts by {td_dev:.2e}"
    );

    // QFI constant
    let q0 = qfi(&model, 2, WITNESS_PHI, 0.0, QFI_CUTOFF).unwrap();
    let mut qfi_dev = 0.0f64;
    for k in 1..=48 {
        let t = 0.25 * k as f64;
        let q = qfi(&model, 2, WITNESS_PHI, t, QFI_CUTOFF).unwrap();
        qfi_dev = qfi_dev.max((q - q0).abs());
    }
    assert!(
        qfi_dev <= 1e-9,
        "criterion 10 FAIL: QFI drifts by {qfi_dev:.2e}"
    );

    // no contractivity violations flagged
    let audit = contractivity_audit(&model, (&first, &second), &grid).unwrap();
    assert!(
        !audit.violating,
        "criterion 10 FAIL: Hermitian control flagged as violating"
    );

    println!(
        "criterion 10 PASS: Hermitian controls (unitarity {worst_unitary:.2e}, \
         TD drift {td_dev:.2e}, QFI drift {qfi_dev:.2e}, zero violations)"
    );
}

#[test]
fn criterion_11_backend_equivalence() {
    // 50 deterministic (model, t) draws away from the exceptional points
    let mut seed = 0x2545f4914f6cdd1du64;
    let mut next = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        (seed >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut draws = 0usize;
    let mut worst = 0.0f64;
    while draws < 50 {
        let family = draws % 3;
        let x_raw = next();
        // keep a healthy gap to the critical value
        let x = if x_raw < 0.5 {
            0.1 + 0.8 * x_raw // 0.1 .. 0.5
        } else {
            1.1 + 0.9 * (x_raw - 0.5) * 2.0 // 1.1 .. 2.0
        };
        let t = next() * 8.0;
        let model = match family {
            0 => HamiltonianModel::pt_qubit(1.0, x).unwrap(),
            1 => HamiltonianModel::anti_pt_qubit(1.0, x, 0.0).unwrap(),
            _ => HamiltonianModel::pt_qudit(1.0, x).unwrap(),
        };
        let n = model.dimension();
        let psi0 = phase_superposition(n, 0.7).unwrap();

        let u_exp = expm_propagator(&model, t).unwrap();
        let via_exp = u_exp.matvec(psi0.amplitudes()).unwrap();
        let scale: f64 = via_exp
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
            .max(1.0);

        // closed form (dispatched propagator) vs exponential
        let u_closed = propagator(&model, t).unwrap();
        let via_closed = u_closed.matvec(psi0.amplitudes()).unwrap();
        let d_closed: f64 = via_closed
            .iter()
            .zip(via_exp.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        worst = worst.max(d_closed / scale);

        // eigen-expansion vs exponential
        let coeffs = eigen_expansion(&model, &psi0).unwrap();
        let via_expansion = evolve_state_by_expansion(&coeffs, t).unwrap();
        let d_expansion: f64 = via_expansion
            .amplitudes()
            .iter()
            .zip(via_exp.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        worst = worst.max(d_expansion / scale);

        draws += 1;
    }
    assert!(
        worst <= 1e-8,
        "criterion 11 FAIL: backend deviation {worst:.2e}"
    );

    // at the PT-qubit exceptional point the exponential equals I - iHt
    let ep = HamiltonianModel::pt_qubit(1.0, 1.0).unwrap();
    let h = build_matrix(&ep);
    let mut worst_ep = 0.0f64;
    for k in 1..=20 {
        let t = 0.5 * k as f64;
        let u = expm_propagator(&ep, t).unwrap();
        let linear = ComplexMatrix::identity(2)
            .add(&h.scale(c64(0.0, -t)))
            .unwrap();
        let err = u.sub(&linear).unwrap().norm_max();
        worst_ep = worst_ep.max(err);
    }
    assert!(
        worst_ep <= 1e-12,
        "criterion 11 FAIL: EP propagator deviates from I - iHt by {worst_ep:.2e}"
    );

    println!(
        "criterion 11 PASS: backend equivalence on 50 draws (worst {worst:.2e}), \
         EP linear form to {worst_ep:.2e}"
    );
}
