//! Equilibrium-plus-constitutive assembly with the printed inertia groups.
//!
//! For each basis slot the nine equilibrium residuals are projected back
//! onto the basis. Every [`SignChoice`] is tried; the least asymmetric
//! stiffness wins, and if even that one is not symmetric to `1e-10` the
//! assembly fails with [`Error::SignFixFailure`]. With the current formulas
//! that is the outcome for any material with α > 0, which is why
//! [`AssemblyRoute::Mixed`](super::AssemblyRoute::Mixed) is the default.

use super::{
    basis, equilibrium_residuals, plate_coefficients, resultants_from_kinematics, BasisSlot, Kinematics, KinematicVariable,
    ModalSystem, PlateCoefficients, PlateGeometry, SignChoice, StressModel,
};
use crate::error::{Error, Result};
use crate::material::{MaterialParams, MicroInertia};
use crate::numeig::asymmetry;
use crate::trigbasis::TrigField;
use nalgebra::DMatrix;

/// Relative asymmetry allowed for the assembled stiffness.
pub const SYMMETRY_TOL: f64 = 1e-10;

pub fn stiffness(mp: &MaterialParams, g: &PlateGeometry, kx: f64, ky: f64, signs: SignChoice) -> DMatrix<f64> {
    let slots = basis();
    let mut s = DMatrix::zeros(slots.len(), slots.len());
    for (j, slot) in slots.iter().enumerate() {
        let mut k = Kinematics::zero(kx, ky);
        *k.get_mut(slot.var) = TrigField::term(1.0, slot.pattern(), kx, ky);
        let r = resultants_from_kinematics(&k, mp, g, signs);
        let rows = equilibrium_residuals(&r, signs.transposed_divergence);
        for (i, target) in slots.iter().enumerate() {
            let row = KinematicVariable::ALL.iter().position(|&v| v == target.var).unwrap();
            s[(i, j)] = -rows[row].project(target.pattern());
        }
    }
    s
}

/// Mass from the printed inertia groups.
pub fn printed_mass(pc: &PlateCoefficients, slots: &[BasisSlot]) -> DMatrix<f64> {
    use KinematicVariable::*;
    let mut m = DMatrix::zeros(slots.len(), slots.len());
    for (r, a) in slots.iter().enumerate() {
        for (c, b) in slots.iter().enumerate() {
            if a.pattern() != b.pattern() {
                continue;
            }
            let pair = |v: KinematicVariable| match v {
                Omega01 | OmegaHat1 => 0,
                _ => 1,
            };
            m[(r, c)] = match (a.var, b.var) {
                (x, y) if x == y && a.family == b.family => match x {
                    Psi1 | Psi2 => pc.i1,
                    W | Wstar => pc.i2,
                    Omega3 => pc.i3,
                    Omega01 | Omega02 => pc.i_ab[(pair(x), pair(x))],
                    OmegaHat1 | OmegaHat2 => pc.i0_ab[(pair(x), pair(x))],
                },
                (Omega01 | Omega02, Omega01 | Omega02) => pc.i_ab[(pair(b.var), pair(a.var))],
                (OmegaHat1 | OmegaHat2, OmegaHat1 | OmegaHat2) => pc.i0_ab[(pair(b.var), pair(a.var))],
                _ => 0.0,
            };
        }
    }
    m
}

/// Least asymmetric sign reading and its relative asymmetry.
pub fn best_signs(mp: &MaterialParams, g: &PlateGeometry, kx: f64, ky: f64) -> (SignChoice, f64) {
    SignChoice::all()
        .into_iter()
        .map(|s| (s, asymmetry(&stiffness(mp, g, kx, ky, s))))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("sign list is not empty")
}

pub(crate) fn assemble(mp: &MaterialParams, j: &MicroInertia, g: &PlateGeometry, n: u32, m: u32) -> Result<ModalSystem> {
    let pc = plate_coefficients(mp, j, g)?;
    let (kx, ky) = TrigField::wavenumbers(n, m, g.a);
    let (signs, asym) = best_signs(mp, g, kx, ky);
    if !(asym <= SYMMETRY_TOL) {
        return Err(Error::SignFixFailure { asymmetry: asym });
    }
    let slots = basis();
    let mass = printed_mass(&pc, &slots);
    Ok(ModalSystem {
        n,
        m,
        kx,
        ky,
        s: stiffness(mp, g, kx, ky, signs),
        mass,
        basis: slots,
        material: *mp,
        geometry: *g,
        stiffness_factor: None,
        stress: StressModel::Printed(signs),
    })
}
