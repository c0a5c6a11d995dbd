use super::{build_pencil, CollocationGrid, SolidCoefficients, SolidPencil};
use crate::error::{Error, Result};
use crate::numeig::dense_solve;
use nalgebra::DVector;
use std::f64::consts::PI;

/// Peak of the pressure-driven response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonancePeak {
    pub freq_hz: f64,
    /// `max |z₃|`; infinite when the solve hit the pole exactly.
    pub amplitude: f64,
}

/// Response to the top-face pressure `p_amp · sin sin · sin ωt` at angular
/// frequency `omega`, as the largest nodal `|z₃|`.
pub fn forced_response(sc: &SolidCoefficients, grid: &CollocationGrid, omega: f64, p_amp: f64) -> Result<f64> {
    let pencil = build_pencil(sc, grid)?;
    response_on(&pencil, sc, omega, p_amp)
}

fn response_on(pencil: &SolidPencil, sc: &SolidCoefficients, omega: f64, p_amp: f64) -> Result<f64> {
    let n = pencil.nodes;
    let mut rhs = DVector::zeros(6 * n);
    for k in 0..6 {
        rhs[pencil.bc_row(k, true)] = sc.d0[k] * p_amp;
    }
    // Same scaling as the eigen solve.
    let eq = pencil.equilibrated();
    let m = eq.bh - eq.ah * (omega * omega);
    let y = dense_solve(&m, &rhs.component_mul(&eq.row)).map_err(|e| match e {
        Error::SingularSystem { .. } => Error::Resonance { omega },
        other => other,
    })?;
    Ok(y.component_mul(&eq.col).rows(2 * n, n).amax())
}

/// Unit-pressure response at `f_hz` on a prebuilt pencil; infinite at a pole.
pub fn pressure_amplitude(pencil: &SolidPencil, sc: &SolidCoefficients, f_hz: f64) -> Result<f64> {
    match response_on(pencil, sc, 2.0 * PI * f_hz, 1.0) {
        Err(Error::Resonance { .. }) => Ok(f64::INFINITY),
        other => other,
    }
}

/// Scans `steps` equally spaced frequencies in `[f_lo_hz, f_hi_hz]` and
/// refines every interior local maximum by golden-section search.
pub fn resonance_scan(
    sc: &SolidCoefficients,
    grid: &CollocationGrid,
    f_lo_hz: f64,
    f_hi_hz: f64,
    steps: usize,
) -> Result<Vec<ResonancePeak>> {
    if !(f_lo_hz < f_hi_hz) || steps < 3 {
        return Err(Error::InvalidArgument("need f_lo < f_hi and at least 3 steps".into()));
    }
    let pencil = build_pencil(sc, grid)?;
    let df = (f_hi_hz - f_lo_hz) / (steps - 1) as f64;
    let freqs: Vec<f64> = (0..steps).map(|i| f_lo_hz + df * i as f64).collect();
    let amps = freqs
        .iter()
        .map(|&f| pressure_amplitude(&pencil, sc, f))
        .collect::<Result<Vec<_>>>()?;
    refine_peaks(&pencil, sc, &freqs, &amps)
}

/// Golden-section refinement of every interior local maximum of a sampled
/// curve.
pub fn refine_peaks(pencil: &SolidPencil, sc: &SolidCoefficients, freqs: &[f64], amps: &[f64]) -> Result<Vec<ResonancePeak>> {
    let steps = freqs.len().min(amps.len());
    let mut peaks = Vec::new();
    for i in 1..steps.saturating_sub(1) {
        if amps[i] > amps[i - 1] && amps[i] >= amps[i + 1] {
            peaks.push(golden_max(pencil, sc, freqs[i - 1], freqs[i + 1])?);
        }
    }
    Ok(peaks)
}

fn golden_max(pencil: &SolidPencil, sc: &SolidCoefficients, mut lo: f64, mut hi: f64) -> Result<ResonancePeak> {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = pressure_amplitude(pencil, sc, x1)?;
    let mut f2 = pressure_amplitude(pencil, sc, x2)?;
    for _ in 0..200 {
        if f1.is_infinite() {
            return Ok(ResonancePeak { freq_hz: x1, amplitude: f1 });
        }
        if f2.is_infinite() {
            return Ok(ResonancePeak { freq_hz: x2, amplitude: f2 });
        }
        if hi - lo <= 1e-12 * hi.abs() {
            break;
        }
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = pressure_amplitude(pencil, sc, x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = pressure_amplitude(pencil, sc, x2)?;
        }
    }
    let (freq_hz, amplitude) = if f1 > f2 { (x1, f1) } else { (x2, f2) };
    Ok(ResonancePeak { freq_hz, amplitude })
}
