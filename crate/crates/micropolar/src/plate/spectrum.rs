use super::{KinematicVariable, ModalSystem};
use crate::error::{Error, Result};
use crate::numeig::{refine_sym_def, sym_def_eig, sym_def_eig_factored, DensePencil};
use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeClass {
    MidplaneRotation,
    Flexural,
    FlexuralTransverse,
    MicroRotation,
    MicroRotationTransverse,
}

impl ModeClass {
    pub const ALL: [Self; 5] = [
        Self::MidplaneRotation,
        Self::Flexural,
        Self::FlexuralTransverse,
        Self::MicroRotation,
        Self::MicroRotationTransverse,
    ];

    pub fn of(var: KinematicVariable) -> Self {
        use KinematicVariable::*;
        match var {
            Psi1 | Psi2 => Self::MidplaneRotation,
            W => Self::Flexural,
            Wstar => Self::FlexuralTransverse,
            Omega01 | Omega02 | Omega3 => Self::MicroRotation,
            OmegaHat1 | OmegaHat2 => Self::MicroRotationTransverse,
        }
    }

    /// Modes of the classical plate kinematics.
    pub fn is_macro(self) -> bool {
        matches!(self, Self::MidplaneRotation | Self::Flexural | Self::FlexuralTransverse)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::MidplaneRotation => "midplane-rotation",
            Self::Flexural => "flexural",
            Self::FlexuralTransverse => "flexural-transverse",
            Self::MicroRotation => "micro-rotation",
            Self::MicroRotationTransverse => "micro-rotation-transverse",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeLabel {
    pub class: ModeClass,
    /// Kinetic-energy share of the dominant group.
    pub share: f64,
    /// No group reaches more than half of the kinetic energy.
    pub mixed: bool,
}

#[derive(Debug, Clone)]
pub struct Spectrum {
    pub freqs_hz: Vec<f64>,
    pub omega2: Vec<f64>,
    /// Mass-normalized eigenvectors, one column per frequency.
    pub vectors: DMatrix<f64>,
    pub labels: Vec<ModeLabel>,
}

impl Spectrum {
    pub fn vector(&self, i: usize) -> DVector<f64> {
        self.vectors.column(i).into_owned()
    }
}

pub fn plate_spectrum(sys: &ModalSystem) -> Result<Spectrum> {
    let pencil = DensePencil::symmetric_definite(sys.s.clone(), sys.mass.clone())?;
    let eig = match &sys.stiffness_factor {
        Some(g) => sym_def_eig_factored(g, &sys.mass)?,
        None => refine_sym_def(&pencil, &sym_def_eig(&pencil)?, 3)?,
    };
    let mut vectors = eig.vectors;
    let mut omega2 = Vec::with_capacity(eig.values.len());
    // At α = 0 the parabolic shear profile cannot see one W/W* combination,
    // so the plate has genuine zero-energy modes. Values at rounding level
    // are reported as 0 Hz; anything clearly negative is an error.
    let floor = 1e-12 * eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let s_norm = sys.s.norm();
    for (i, &w) in eig.values.iter().enumerate() {
        if !(w >= -floor) {
            return Err(Error::ComplexSpectrum { value: w, imag: 0.0 });
        }
        let w2 = if w <= floor { 0.0 } else { w };
        let mut v = vectors.column_mut(i);
        let norm = (v.transpose() * &sys.mass * &v)[(0, 0)].sqrt();
        v /= norm;
        let sv = match &sys.stiffness_factor {
            Some(g) => g.transpose() * (g * &v),
            None => &sys.s * &v,
        };
        let mv = &sys.mass * &v;
        let res = (&sv - w2 * &mv).norm();
        // Relative to S v, or as a backward error for the zero-energy modes.
        if res > (1e-8 * sv.norm()).max(1e-12 * s_norm * v.norm()) {
            return Err(Error::NoConvergence(i));
        }
        omega2.push(w2);
    }
    let mut spec = Spectrum {
        freqs_hz: omega2.iter().map(|w2| w2.sqrt() / (2.0 * PI)).collect(),
        omega2,
        vectors,
        labels: Vec::new(),
    };
    spec.labels = classify_modes(&spec, sys);
    Ok(spec)
}

/// Kinetic energy of each [`ModeClass`] for one vector: `Σ_{r∈g} v_r (M v)_r`.
///
/// The mass couples groups (`W` with `W*`, `Ω⁰` with `Ω̂`), so the cross
/// terms are split evenly and the five entries add up to `vᵀ M v`.
pub fn energy_shares(v: &DVector<f64>, sys: &ModalSystem) -> [f64; 5] {
    let mv = &sys.mass * v;
    let mut shares = [0.0; 5];
    for (i, slot) in sys.basis.iter().enumerate() {
        let ci = ModeClass::ALL.iter().position(|&c| c == ModeClass::of(slot.var)).unwrap();
        shares[ci] += v[i] * mv[i];
    }
    shares
}

pub fn classify_modes(spec: &Spectrum, sys: &ModalSystem) -> Vec<ModeLabel> {
    (0..spec.vectors.ncols())
        .map(|i| {
            let v = spec.vector(i);
            let total = (v.transpose() * &sys.mass * &v)[(0, 0)];
            let shares = energy_shares(&v, sys);
            let (ci, &best) = shares
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .expect("five classes");
            let share = best / total;
            ModeLabel {
                class: ModeClass::ALL[ci],
                share,
                mixed: share <= 0.5,
            }
        })
        .collect()
}
