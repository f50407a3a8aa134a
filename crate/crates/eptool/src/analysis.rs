//! Time-series generation and the three dynamical analyses: oscillation
//! classification of the HSS witness, exceptional-point location by
//! parameter bisection, and trace-distance contractivity audits.
//!
//! The witness logic: sampled over a long enough window, the HSS of the
//! phase-encoded state either recurs periodically (oscillatory side of the
//! EP), decays monotonically, or shows a single peak before decaying (the
//! qudit broken-phase signature). Oscillation requires both at least two
//! prominent turning points and a whole-waveform recurrence, which is also
//! what the period estimator measures; a single peak crossing the initial
//! level never qualifies.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{evolve_state_with, propagator, DensityMatrix, StateVector};
use crate::hamiltonians::{analytic_period, HamiltonianModel, ModelFamily};
use crate::measures::{hss_with, qfi_with, trace_distance, QFI_CUTOFF};

/// Uniform time grid in dimensionless time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t_start: f64,
    pub t_end: f64,
    pub num_points: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, num_points: usize) -> Result<Self> {
        if !(t_start.is_finite() && t_end.is_finite()) || t_start < 0.0 {
            return Err(Error::InvalidParameter(
                "grid times must be finite with t_start >= 0".into(),
            ));
        }
        if t_end <= t_start {
            return Err(Error::InvalidParameter(format!(
                "t_end ({t_end}) must exceed t_start ({t_start})"
            )));
        }
        if num_points < 16 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 16 points, got {num_points}"
            )));
        }
        Ok(Self {
            t_start,
            t_end,
            num_points,
        })
    }

    pub fn spacing(&self) -> f64 {
        (self.t_end - self.t_start) / (self.num_points - 1) as f64
    }

    pub fn at(&self, index: usize) -> f64 {
        self.t_start + self.spacing() * index as f64
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.num_points).map(move |i| self.at(i))
    }
}

/// Which scalar is sampled along the trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureTag {
    Hss,
    Td,
    Qfi,
}

impl MeasureTag {
    pub fn name(&self) -> &'static str {
        match self {
            MeasureTag::Hss => "hss",
            MeasureTag::Td => "td",
            MeasureTag::Qfi => "qfi",
        }
    }
}

/// Inputs the sampled measure needs besides the model and the time.
#[derive(Debug, Clone)]
pub enum SeriesParams {
    /// Phase-encoded single state for HSS and QFI.
    Phase { n: usize, phi: f64 },
    /// Initial pair for the trace distance.
    Pair {
        first: StateVector,
        second: StateVector,
    },
}

/// A sampled scalar measure on a uniform grid.
#[derive(Debug, Clone)]
pub struct TimeSeries {
    pub grid: TimeGrid,
    pub values: Vec<f64>,
    pub measure: MeasureTag,
    pub model: HamiltonianModel,
    pub params: SeriesParams,
}

/// Evaluate one measure over the grid. Propagators are computed once per
/// time point and shared across the pair members.
pub fn sample_series(
    model: &HamiltonianModel,
    measure: MeasureTag,
    grid: &TimeGrid,
    params: &SeriesParams,
) -> Result<TimeSeries> {
    let mut values = Vec::with_capacity(grid.num_points);
    match (measure, params) {
        (MeasureTag::Hss, SeriesParams::Phase { n, phi })
        | (MeasureTag::Qfi, SeriesParams::Phase { n, phi }) => {
            if *n != model.dimension() {
                return Err(Error::DimMismatch(model.dimension(), 1, *n, 1));
            }
            for t in grid.times() {
                let u = propagator(model, t)?;
                let v = match measure {
                    MeasureTag::Hss => hss_with(&u, *n, *phi)?,
                    _ => qfi_with(&u, *n, *phi, QFI_CUTOFF)?,
                };
                values.push(v);
            }
        }
        (MeasureTag::Td, SeriesParams::Pair { first, second }) => {
            if first.dim() != model.dimension() || second.dim() != model.dimension() {
                return Err(Error::DimMismatch(
                    model.dimension(),
                    1,
                    first.dim(),
                    second.dim(),
                ));
            }
            for t in grid.times() {
                let u = propagator(model, t)?;
                let (_, n1) = evolve_state_with(&u, first)?;
                let (_, n2) = evolve_state_with(&u, second)?;
                let r1 = DensityMatrix::from_pure(&n1)?;
                let r2 = DensityMatrix::from_pure(&n2)?;
                values.push(trace_distance(&r1, &r2)?);
            }
        }
        (MeasureTag::Td, SeriesParams::Phase { .. }) => {
            return Err(Error::InvalidParameter(
                "trace-distance series needs an initial pair".into(),
            ));
        }
        (_, SeriesParams::Pair { .. }) => {
            return Err(Error::InvalidParameter(
                "HSS/QFI series need a phase-encoded state, not a pair".into(),
            ));
        }
    }
    if !values.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(TimeSeries {
        grid: *grid,
        values,
        measure,
        model: model.clone(),
        params: params.clone(),
    })
}

/// Trend vocabulary for non-oscillatory series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    MonotoneDecay,
    PeakThenDecay,
    Flat,
}

/// Classification verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Oscillatory { period: f64 },
    NonOscillatory { trend: Trend },
}

/// What the classifier saw: prominent peak indices, the normalized residual
/// of the best whole-waveform recurrence (small means the series repeats),
/// and the peak-to-trough amplitude.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Evidence {
    pub peak_indices: Vec<usize>,
    pub recurrence_residual: f64,
    pub amplitude: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhaseClassification {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

impl PhaseClassification {
    pub fn is_oscillatory(&self) -> bool {
        matches!(self.verdict, Verdict::Oscillatory { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ExtremumKind {
    Max,
    Min,
}

/// Turning points with prominence above `threshold`, by a zigzag walk.
/// The series endpoints are never reported as extrema.
fn prominent_extrema(values: &[f64], threshold: f64) -> Vec<(usize, ExtremumKind)> {
    let mut extrema = Vec::new();
    let mut dir: Option<bool> = None; // rising?
    let mut pivot = values[0];
    let mut pivot_idx = 0usize;
    for (i, &v) in values.iter().enumerate().skip(1) {
        match dir {
            None => {
                if v - pivot > threshold {
                    dir = Some(true);
                    pivot = v;
                    pivot_idx = i;
                } else if pivot - v > threshold {
                    dir = Some(false);
                    pivot = v;
                    pivot_idx = i;
                }
            }
            Some(true) => {
                if v >= pivot {
                    pivot = v;
                    pivot_idx = i;
                } else if pivot - v > threshold {
                    extrema.push((pivot_idx, ExtremumKind::Max));
                    dir = Some(false);
                    pivot = v;
                    pivot_idx = i;
                }
            }
            Some(false) => {
                if v <= pivot {
                    pivot = v;
                    pivot_idx = i;
                } else if v - pivot > threshold {
                    extrema.push((pivot_idx, ExtremumKind::Min));
                    dir = Some(true);
                    pivot = v;
                    pivot_idx = i;
                }
            }
        }
    }
    extrema
}

/// Best whole-waveform recurrence: the first shift at which the series
/// repeats itself. Returns `(period, normalized residual)`; the shift search
/// stays below half the window so a reported period has recurred at least
/// twice.
fn recurrence_shift(values: &[f64], spacing: f64, amplitude: f64) -> Option<(f64, f64)> {
    let m = values.len();
    let k_max = m / 2;
    if k_max < 4 || amplitude <= 0.0 {
        return None;
    }
    // root-mean-square self-difference at each shift
    let d_len = (k_max + 2).min(m - 1);
    let mut d = vec![f64::INFINITY; d_len];
    for (k, dk) in d.iter_mut().enumerate().skip(1) {
        let overlap = m - k;
        let mut acc = 0.0;
        for i in 0..overlap {
            let diff = values[i + k] - values[i];
            acc += diff * diff;
        }
        *dk = (acc / overlap as f64).sqrt();
    }
    let accept = 0.1 * amplitude;
    for k in 2..d_len.saturating_sub(1) {
        if k > k_max {
            break;
        }
        if d[k] <= d[k - 1] && d[k] <= d[k + 1] && d[k] <= accept {
            // parabolic refinement on the squared residual
            let (a, b, c) = (d[k - 1] * d[k - 1], d[k] * d[k], d[k + 1] * d[k + 1]);
            let denom = a - 2.0 * b + c;
            let delta = if denom > 0.0 {
                (0.5 * (a - c) / denom).clamp(-0.5, 0.5)
            } else {
                0.0
            };
            return Some(((k as f64 + delta) * spacing, d[k] / amplitude));
        }
    }
    None
}

/// Classify a sampled series as oscillatory (with its period) or
/// non-oscillatory (with a trend).
///
/// Oscillatory means at least two prominent turning points and a
/// whole-waveform recurrence. Flat, monotone-decay, and single-peak-
/// then-decay series are conclusive non-oscillatory verdicts, but only once
/// the decay has actually progressed (last value below 90% of the running
/// maximum); otherwise the window is too short to call and an error asks for
/// a longer grid.
pub fn classify_oscillation(series: &TimeSeries, rel_tol: f64) -> Result<PhaseClassification> {
    if !(rel_tol > 0.0) {
        return Err(Error::InvalidParameter("rel_tol must be positive".into()));
    }
    let v = &series.values;
    let v0 = v[0];
    let vmax = v.iter().cloned().fold(f64::MIN, f64::max);
    let vmin = v.iter().cloned().fold(f64::MAX, f64::min);
    let amplitude = vmax - vmin;

    // flat: nothing moved on the scale of the initial value
    if amplitude <= rel_tol * v0.abs() {
        return Ok(PhaseClassification {
            verdict: Verdict::NonOscillatory { trend: Trend::Flat },
            evidence: Evidence {
                peak_indices: vec![],
                recurrence_residual: 0.0,
                amplitude,
            },
        });
    }

    let prominence = rel_tol * amplitude;
    let extrema = prominent_extrema(v, prominence);
    let peak_indices: Vec<usize> = extrema
        .iter()
        .filter(|(_, k)| *k == ExtremumKind::Max)
        .map(|(i, _)| *i)
        .collect();

    let recurrence = recurrence_shift(v, series.grid.spacing(), amplitude);

    if extrema.len() >= 2 {
        if let Some((period, residual)) = recurrence {
            return Ok(PhaseClassification {
                verdict: Verdict::Oscillatory { period },
                evidence: Evidence {
                    peak_indices,
                    recurrence_residual: residual,
                    amplitude,
                },
            });
        }
        // turning points without a confirmed recurrence: the window may
        // hold less than two periods
        return Err(Error::WindowTooShort {
            ratio: v[v.len() - 1] / vmax,
        });
    }

    // non-oscillatory candidates; positive wiggles below the prominence
    // scale do not break monotonicity
    let slack = prominence;
    let decayed = v[v.len() - 1] <= 0.9 * vmax;
    if !decayed {
        return Err(Error::WindowTooShort {
            ratio: v[v.len() - 1] / vmax,
        });
    }

    let evidence = Evidence {
        peak_indices: peak_indices.clone(),
        recurrence_residual: 1.0,
        amplitude,
    };
    match extrema.as_slice() {
        [] => {
            if v.windows(2).all(|w| w[1] - w[0] <= slack) {
                Ok(PhaseClassification {
                    verdict: Verdict::NonOscillatory {
                        trend: Trend::MonotoneDecay,
                    },
                    evidence,
                })
            } else {
                Err(Error::WindowTooShort {
                    ratio: v[v.len() - 1] / vmax,
                })
            }
        }
        [(peak, ExtremumKind::Max)] => {
            let rise_ok = v[..=*peak].windows(2).all(|w| w[0] - w[1] <= slack);
            let fall_ok = v[*peak..].windows(2).all(|w| w[1] - w[0] <= slack);
            if rise_ok && fall_ok {
                Ok(PhaseClassification {
                    verdict: Verdict::NonOscillatory {
                        trend: Trend::PeakThenDecay,
                    },
                    evidence,
                })
            } else {
                Err(Error::WindowTooShort {
                    ratio: v[v.len() - 1] / vmax,
                })
            }
        }
        _ => Err(Error::WindowTooShort {
            ratio: v[v.len() - 1] / vmax,
        }),
    }
}

/// Oscillation period from the whole-waveform recurrence shift, refined
/// parabolically. Needs at least two recurrences inside the window.
pub fn estimate_period(series: &TimeSeries) -> Result<f64> {
    let vmax = series.values.iter().cloned().fold(f64::MIN, f64::max);
    let vmin = series.values.iter().cloned().fold(f64::MAX, f64::min);
    let amplitude = vmax - vmin;
    recurrence_shift(&series.values, series.grid.spacing(), amplitude)
        .map(|(period, _)| period)
        .ok_or(Error::InsufficientRecurrences)
}

/// Fixed inputs and grid policy for witness-based scans.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessConfig {
    /// Energy scale of the scanned family (epsilon, eta, or J).
    pub energy_scale: f64,
    /// Encoded phase of the probe state.
    pub phi: f64,
    /// Classifier tolerance.
    pub rel_tol: f64,
    /// Grid density on the oscillatory side, in points per predicted period.
    pub points_per_period: usize,
    /// Window length on the oscillatory side, in predicted periods.
    pub window_periods: f64,
    /// Window length in `1/energy_scale` units where no period is predicted.
    pub fallback_window: f64,
    /// Maximum window growth factor before a probe gives up.
    pub max_window_growth: f64,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        Self {
            energy_scale: 1.0,
            phi: std::f64::consts::FRAC_PI_4,
            rel_tol: 1e-3,
            points_per_period: 100,
            window_periods: 4.0,
            fallback_window: 40.0,
            max_window_growth: 10.0,
        }
    }
}

impl WitnessConfig {
    fn model_at(&self, family: ModelFamily, x: f64) -> Result<HamiltonianModel> {
        match family {
            ModelFamily::PtQubit => HamiltonianModel::pt_qubit(self.energy_scale, x),
            ModelFamily::AntiPtQubit => HamiltonianModel::anti_pt_qubit(self.energy_scale, x, 0.0),
            // scan variable is the ratio gamma / J at fixed J
            ModelFamily::PtQudit => {
                HamiltonianModel::pt_qudit(self.energy_scale, x * self.energy_scale)
            }
        }
    }
}

/// Classify one scan point of a family, growing the time window (doubling,
/// capped by `max_window_growth`) while the verdict is inconclusive. The
/// window is sized from the predicted period where the probe sits on the
/// family's oscillatory side, since the period diverges toward the EP.
pub fn classify_scan_point(
    family: ModelFamily,
    x: f64,
    cfg: &WitnessConfig,
) -> Result<PhaseClassification> {
    let model = cfg.model_at(family, x)?;
    let n = model.dimension();
    let mut factor = 1.0;
    loop {
        let (base_window, base_points) = match analytic_period(&model) {
            Some(t) => (
                cfg.window_periods * t,
                (cfg.window_periods * cfg.points_per_period as f64) as usize,
            ),
            None => (
                cfg.fallback_window / cfg.energy_scale,
                (10.0 * cfg.fallback_window) as usize,
            ),
        };
        let window = base_window * factor;
        let points = ((base_points as f64 * factor) as usize + 1).clamp(64, 40_001);
        let grid = TimeGrid::new(0.0, window, points)?;
        let series = sample_series(
            &model,
            MeasureTag::Hss,
            &grid,
            &SeriesParams::Phase { n, phi: cfg.phi },
        )?;
        match classify_oscillation(&series, cfg.rel_tol) {
            Ok(c) => return Ok(c),
            Err(Error::WindowTooShort { ratio }) => {
                if factor * 2.0 > cfg.max_window_growth {
                    return Err(Error::WindowTooShort { ratio });
                }
                factor *= 2.0;
            }
            Err(e) => return Err(e),
        }
    }
}

/// Located phase boundary of one family.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EpReport {
    pub family: ModelFamily,
    pub critical_value: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
}

/// Find the exceptional point by bisection on the scan parameter (`a`,
/// `lambda`, or `gamma/J`), using the oscillation verdict as the predicate.
/// The bracket endpoints must classify differently.
pub fn locate_ep(
    family: ModelFamily,
    cfg: &WitnessConfig,
    bracket: (f64, f64),
    tol: f64,
) -> Result<EpReport> {
    let (mut lo, mut hi) = bracket;
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi || lo < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "invalid bracket ({lo}, {hi})"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }

    let probe = |x: f64, lo: f64, hi: f64| -> Result<bool> {
        match classify_scan_point(family, x, cfg) {
            Ok(c) => Ok(c.is_oscillatory()),
            Err(Error::WindowTooShort { .. }) => Err(Error::ScanInconclusive { probe: x, lo, hi }),
            Err(e) => Err(e),
        }
    };

    let osc_lo = probe(lo, lo, hi)?;
    let osc_hi = probe(hi, lo, hi)?;
    if osc_lo == osc_hi {
        return Err(Error::DegenerateBracket {
            verdict: if osc_lo {
                "oscillatory".into()
            } else {
                "non-oscillatory".into()
            },
        });
    }

    let mut iterations = 0usize;
    while hi - lo > tol && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        iterations += 1;
        let osc_mid = probe(mid, lo, hi)?;
        if osc_mid == osc_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    Ok(EpReport {
        family,
        critical_value: 0.5 * (lo + hi),
        bracket: (lo, hi),
        iterations,
    })
}

/// Outcome of a trace-distance contractivity audit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContractivityReport {
    pub violating: bool,
    /// Maximal grid intervals over which the trace distance strictly grows.
    pub violation_intervals: Vec<(f64, f64)>,
    /// Steepest observed forward difference divided by the grid spacing.
    pub max_increase_rate: f64,
    /// The two initial kets, as `[re, im]` amplitude lists.
    pub pair: [Vec<[f64; 2]>; 2],
}

/// Absolute forward-difference threshold for calling a TD increase real
/// (absolute rather than relative: the TD can approach zero).
pub const TD_INCREASE_TOL: f64 = 1e-9;

/// Extract maximal runs of strictly increasing steps from a sampled series.
pub fn violation_intervals(
    grid: &TimeGrid,
    values: &[f64],
    abs_tol: f64,
) -> (Vec<(f64, f64)>, f64) {
    let spacing = grid.spacing();
    let mut intervals: Vec<(f64, f64)> = Vec::new();
    let mut max_rate = 0.0f64;
    let mut run_start: Option<usize> = None;
    for i in 1..values.len() {
        let diff = values[i] - values[i - 1];
        if diff > abs_tol {
            max_rate = max_rate.max(diff / spacing);
            if run_start.is_none() {
                run_start = Some(i - 1);
            }
        } else if let Some(s) = run_start.take() {
            intervals.push((grid.at(s), grid.at(i - 1)));
        }
    }
    if let Some(s) = run_start {
        intervals.push((grid.at(s), grid.at(values.len() - 1)));
    }
    (intervals, max_rate)
}

fn dump_ket(state: &StateVector) -> Vec<[f64; 2]> {
    state.amplitudes().iter().map(|z| [z.re, z.im]).collect()
}

/// Sample the trace distance of an evolving pair and report where it grows.
pub fn contractivity_audit(
    model: &HamiltonianModel,
    pair: (&StateVector, &StateVector),
    grid: &TimeGrid,
) -> Result<ContractivityReport> {
    let series = sample_series(
        model,
        MeasureTag::Td,
        grid,
        &SeriesParams::Pair {
            first: pair.0.clone(),
            second: pair.1.clone(),
        },
    )?;
    let (intervals, max_rate) = violation_intervals(grid, &series.values, TD_INCREASE_TOL);
    Ok(ContractivityReport {
        violating: !intervals.is_empty(),
        violation_intervals: intervals,
        max_increase_rate: max_rate,
        pair: [dump_ket(pair.0), dump_ket(pair.1)],
    })
}

/// Summary of a randomized contractivity scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReport {
    pub seed: u64,
    pub count: usize,
    pub violating_fraction: f64,
    pub reports: Vec<ContractivityReport>,
}

/// Audit `count` random pure pairs (independent standard complex Gaussian
/// kets, normalized), seeded for reproducibility.
pub fn random_pair_scan(
    model: &HamiltonianModel,
    count: usize,
    grid: &TimeGrid,
    seed: u64,
) -> Result<ScanReport> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = model.dimension();
    let mut reports = Vec::with_capacity(count);
    let mut violating = 0usize;
    for _ in 0..count {
        let first = random_ket(&mut rng, n)?;
        let second = random_ket(&mut rng, n)?;
        let report = contractivity_audit(model, (&first, &second), grid)?;
        if report.violating {
            violating += 1;
        }
        reports.push(report);
    }
    Ok(ScanReport {
        seed,
        count,
        violating_fraction: violating as f64 / count as f64,
        reports,
    })
}

fn random_ket(rng: &mut ChaCha8Rng, n: usize) -> Result<StateVector> {
    loop {
        let amps: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
            .collect();
        let raw = StateVector::raw(amps)?;
        if raw.norm() > 1e-12 {
            return raw.renormalized();
        }
    }
}

/// Standard normal by the Box-Muller transform over the seeded stream.
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let scale = 1.0 / (1u64 << 53) as f64;
    let u1 = ((rng.next_u64() >> 11) + 1) as f64 * scale; // (0, 1]
    let u2 = (rng.next_u64() >> 11) as f64 * scale; // [0, 1)
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Side-by-side dynamics of HSS and QFI for one-qubit models.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    /// Fraction of comparable steps (both forward differences above 1e-9 in
    /// magnitude) on which the two measures move in the same direction;
    /// 1.0 by convention when nothing is comparable.
    pub sign_agreement_fraction: f64,
    pub comparable_steps: usize,
    pub min_locations_hss: Vec<usize>,
    pub min_locations_qfi: Vec<usize>,
}

/// Compare HSS and QFI dynamics of a one-qubit model: forward-difference
/// signs and the grid locations of local minima.
pub fn hss_qfi_correspondence(
    model: &HamiltonianModel,
    phi: f64,
    grid: &TimeGrid,
) -> Result<CorrespondenceReport> {
    if model.dimension() != 2 {
        return Err(Error::InvalidParameter(
            "HSS/QFI correspondence is defined for one-qubit models".into(),
        ));
    }
    let mut hss_series = Vec::with_capacity(grid.num_points);
    let mut qfi_series = Vec::with_capacity(grid.num_points);
    for t in grid.times() {
        let u = propagator(model, t)?;
        hss_series.push(hss_with(&u, 2, phi)?);
        qfi_series.push(qfi_with(&u, 2, phi, QFI_CUTOFF)?);
    }

    let mut agree = 0usize;
    let mut comparable = 0usize;
    for i in 1..grid.num_points {
        let dh = hss_series[i] - hss_series[i - 1];
        let dq = qfi_series[i] - qfi_series[i - 1];
        if dh.abs() > 1e-9 && dq.abs() > 1e-9 {
            comparable += 1;
            if (dh > 0.0) == (dq > 0.0) {
                agree += 1;
            }
        }
    }
    let fraction = if comparable == 0 {
        1.0
    } else {
        agree as f64 / comparable as f64
    };

    Ok(CorrespondenceReport {
        sign_agreement_fraction: fraction,
        comparable_steps: comparable,
        min_locations_hss: minima_indices(&hss_series),
        min_locations_qfi: minima_indices(&qfi_series),
    })
}

fn minima_indices(values: &[f64]) -> Vec<usize> {
    let vmax = values.iter().cloned().fold(f64::MIN, f64::max);
    let vmin = values.iter().cloned().fold(f64::MAX, f64::min);
    let threshold = 1e-3 * (vmax - vmin);
    prominent_extrema(values, threshold)
        .into_iter()
        .filter(|(_, k)| *k == ExtremumKind::Min)
        .map(|(i, _)| i)
        .collect()
}
