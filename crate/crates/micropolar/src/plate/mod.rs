//! Cosserat plate free vibration on a simply supported square.
//!
//! Each of the nine kinematic fields is expanded in one trig pattern per
//! family (A, or its complement B), giving an 18-dimensional modal system
//! for a mode index `(n, m)`. The default assembly is the mixed (stress
//! and displacement) principle evaluated exactly with the through-thickness
//! profiles: generalized strains are collected against every stress
//! resultant, and the resultant compliance, integrated from the 3D
//! complementary energy, is inverted. The kinetic energy of the same profiles
//! gives the mass. The equilibrium-plus-constitutive route is kept in
//! [`printed`] as a diagnostic.

mod coefficients;
mod fields;
mod mixed;
pub mod printed;
mod resultants;
mod spectrum;

pub use coefficients::{plate_coefficients, PlateCoefficients};
pub use fields::{reconstruct_3d_fields, FieldSample};
pub use resultants::{equilibrium_residuals, resultants_from_kinematics, Resultants, SignChoice};
pub use spectrum::{classify_modes, energy_shares, plate_spectrum, ModeClass, ModeLabel, Spectrum};

use crate::error::{Error, Result};
use crate::material::{MaterialParams, MicroInertia};
use crate::trigbasis::{TrigField, TrigPattern};
use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateGeometry {
    /// Side of the square (m).
    pub a: f64,
    /// Thickness (m).
    pub h: f64,
}

impl PlateGeometry {
    pub fn check(&self) -> Result<()> {
        if self.a > 0.0 && self.h > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("plate geometry a={} h={} must be positive", self.a, self.h)))
        }
    }
}

/// The nine kinematic fields of the plate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KinematicVariable {
    Psi1,
    Psi2,
    W,
    Omega3,
    Omega01,
    Omega02,
    Wstar,
    OmegaHat1,
    OmegaHat2,
}

impl KinematicVariable {
    pub const ALL: [Self; 9] = [
        Self::Psi1,
        Self::Psi2,
        Self::W,
        Self::Omega3,
        Self::Omega01,
        Self::Omega02,
        Self::Wstar,
        Self::OmegaHat1,
        Self::OmegaHat2,
    ];

    /// Pattern in family A; these satisfy the hard simply supported edges.
    pub fn pattern_a(self) -> TrigPattern {
        use KinematicVariable::*;
        match self {
            Psi1 | Omega02 | OmegaHat2 => TrigPattern::CS,
            Psi2 | Omega01 | OmegaHat1 => TrigPattern::SC,
            W | Wstar => TrigPattern::SS,
            Omega3 => TrigPattern::CC,
        }
    }

    pub fn pattern_b(self) -> TrigPattern {
        self.pattern_a().complement()
    }

    pub fn pattern(self, family: Family) -> TrigPattern {
        match family {
            Family::A => self.pattern_a(),
            Family::B => self.pattern_b(),
        }
    }

    pub fn name(self) -> &'static str {
        use KinematicVariable::*;
        match self {
            Psi1 => "Psi1",
            Psi2 => "Psi2",
            W => "W",
            Omega3 => "Omega3",
            Omega01 => "Omega01",
            Omega02 => "Omega02",
            Wstar => "Wstar",
            OmegaHat1 => "OmegaHat1",
            OmegaHat2 => "OmegaHat2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
}

/// One basis function: a kinematic field carrying its family's pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisSlot {
    pub family: Family,
    pub var: KinematicVariable,
}

impl BasisSlot {
    pub fn pattern(&self) -> TrigPattern {
        self.var.pattern(self.family)
    }
}

/// Family A slots first, each in [`KinematicVariable::ALL`] order.
pub fn basis() -> Vec<BasisSlot> {
    [Family::A, Family::B]
        .iter()
        .flat_map(|&family| KinematicVariable::ALL.iter().map(move |&var| BasisSlot { family, var }))
        .collect()
}

/// Plate kinematic fields for one wavenumber pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    pub psi: [TrigField; 2],
    pub w: TrigField,
    pub omega3: TrigField,
    pub omega0: [TrigField; 2],
    pub w_star: TrigField,
    pub omega_hat: [TrigField; 2],
}

impl Kinematics {
    pub fn zero(kx: f64, ky: f64) -> Self {
        let z = TrigField::zero(kx, ky);
        Self {
            psi: [z; 2],
            w: z,
            omega3: z,
            omega0: [z; 2],
            w_star: z,
            omega_hat: [z; 2],
        }
    }

    pub fn get_mut(&mut self, var: KinematicVariable) -> &mut TrigField {
        use KinematicVariable::*;
        match var {
            Psi1 => &mut self.psi[0],
            Psi2 => &mut self.psi[1],
            W => &mut self.w,
            Omega3 => &mut self.omega3,
            Omega01 => &mut self.omega0[0],
            Omega02 => &mut self.omega0[1],
            Wstar => &mut self.w_star,
            OmegaHat1 => &mut self.omega_hat[0],
            OmegaHat2 => &mut self.omega_hat[1],
        }
    }

    pub fn get(&self, var: KinematicVariable) -> TrigField {
        let mut c = *self;
        *c.get_mut(var)
    }

    /// Fields of a modal-system vector.
    pub fn from_vector(sys: &ModalSystem, v: &DVector<f64>) -> Self {
        let mut k = Self::zero(sys.kx, sys.ky);
        for (slot, &c) in sys.basis.iter().zip(v.iter()) {
            *k.get_mut(slot.var) += TrigField::term(c, slot.pattern(), sys.kx, sys.ky);
        }
        k
    }
}

/// Which stiffness assembly produced a [`ModalSystem`].
#[derive(Debug, Clone, PartialEq)]
pub enum AssemblyRoute {
    /// Mixed principle with exact profile integration and consistent mass.
    Mixed,
    /// Equilibrium system plus reverse constitutive formulas with the
    /// printed inertia coefficients; fails unless some sign reading makes
    /// the stiffness symmetric.
    Printed,
}

#[derive(Debug, Clone)]
pub(crate) enum StressModel {
    Mixed(mixed::MixedOperator),
    Printed(SignChoice),
}

/// Stiffness/mass pencil of one mode index.
#[derive(Debug, Clone)]
pub struct ModalSystem {
    pub n: u32,
    pub m: u32,
    pub kx: f64,
    pub ky: f64,
    pub s: DMatrix<f64>,
    pub mass: DMatrix<f64>,
    pub basis: Vec<BasisSlot>,
    pub material: MaterialParams,
    pub geometry: PlateGeometry,
    /// `G` with `s = Gᵀ G`, when the assembly provides one. Eigenvalues are
    /// then taken from the singular values of `G`, which keeps the soft
    /// modes accurate next to stiffness entries many orders larger.
    pub stiffness_factor: Option<DMatrix<f64>>,
    pub(crate) stress: StressModel,
}

impl ModalSystem {
    pub fn index_of(&self, family: Family, var: KinematicVariable) -> usize {
        self.basis
            .iter()
            .position(|s| s.family == family && s.var == var)
            .expect("basis holds every slot")
    }
}

/// Mixed-principle assembly; see [`assemble_modal_system_with`].
pub fn assemble_modal_system(
    mp: &MaterialParams,
    j: &MicroInertia,
    g: &PlateGeometry,
    n: u32,
    m: u32,
) -> Result<ModalSystem> {
    assemble_modal_system_with(mp, j, g, n, m, AssemblyRoute::Mixed)
}

pub fn assemble_modal_system_with(
    mp: &MaterialParams,
    j: &MicroInertia,
    g: &PlateGeometry,
    n: u32,
    m: u32,
    route: AssemblyRoute,
) -> Result<ModalSystem> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("mode indices start at 1".into()));
    }
    g.check()?;
    mp.validate()?;
    match route {
        AssemblyRoute::Mixed => mixed::assemble(mp, j, g, n, m),
        AssemblyRoute::Printed => printed::assemble(mp, j, g, n, m),
    }
}

/// Kinetic-energy mass of the through-thickness profiles.
pub(crate) fn consistent_mass(mp: &MaterialParams, j: &MicroInertia, g: &PlateGeometry) -> DMatrix<f64> {
    use KinematicVariable::*;
    let b = basis();
    let h = g.h;
    let rho = mp.rho;
    let jm = j.j;
    let mut mass = DMatrix::zeros(b.len(), b.len());
    let o = [Omega01, Omega02];
    let oh = [OmegaHat1, OmegaHat2];
    let coeff = |u: KinematicVariable, v: KinematicVariable| -> f64 {
        let pos = |x: KinematicVariable, arr: &[KinematicVariable; 2]| arr.iter().position(|&y| y == x);
        match (u, v) {
            (Psi1, Psi1) | (Psi2, Psi2) => h * h * h * rho / 12.0,
            (W, W) => h * rho,
            (Wstar, Wstar) => 8.0 * h * rho / 15.0,
            (W, Wstar) | (Wstar, W) => 2.0 * h * rho / 3.0,
            (Omega3, Omega3) => h * jm[(2, 2)] / 3.0,
            _ => match (pos(u, &o), pos(u, &oh), pos(v, &o), pos(v, &oh)) {
                (Some(x), _, Some(y), _) => 8.0 * h / 15.0 * jm[(x, y)],
                (_, Some(x), _, Some(y)) => h * jm[(x, y)],
                (Some(x), _, _, Some(y)) | (_, Some(x), Some(y), _) => 2.0 * h / 3.0 * jm[(x, y)],
                _ => 0.0,
            },
        }
    };
    for (r, su) in b.iter().enumerate() {
        for (c, sv) in b.iter().enumerate() {
            if su.pattern() == sv.pattern() {
                mass[(r, c)] = coeff(su.var, sv.var);
            }
        }
    }
    mass
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_patterns() {
        use KinematicVariable::*;
        assert_eq!(Psi1.pattern_a(), TrigPattern::CS);
        assert_eq!(Omega3.pattern_a(), TrigPattern::CC);
        assert_eq!(W.pattern_b(), TrigPattern::CC);
        assert_eq!(Omega3.pattern_b(), TrigPattern::SS);
        assert_eq!(basis().len(), 18);
    }

    #[test]
    fn mass_is_block_diagonal_without_j12() {
        let mp = MaterialParams {
            lambda: 1.0,
            mu: 1.0,
            alpha: 0.1,
            beta: 1.0,
            gamma: 1.0,
            epsilon: 0.5,
            rho: 2.0,
        };
        let m = consistent_mass(&mp, &MicroInertia::diagonal(1.0, 2.0, 3.0), &PlateGeometry { a: 1.0, h: 0.1 });
        assert!(m.view((0, 9), (9, 9)).iter().all(|&x| x == 0.0));
        assert_eq!(m, m.transpose());
        assert!(m.clone().cholesky().is_some());
    }
}

#[cfg(test)]
mod spectrum_tests {
    use super::*;

    fn foam() -> MaterialParams {
        MaterialParams {
            lambda: 762.616e6,
            mu: 103.993e6,
            alpha: 4.333e6,
            beta: 39.975,
            gamma: 39.975,
            epsilon: 4.505,
            rho: 34.0,
        }
    }

    const G: PlateGeometry = PlateGeometry { a: 3.0, h: 0.1 };

    #[test]
    fn ball_spectrum_pairs_up() {
        let sys = assemble_modal_system(&foam(), &MicroInertia::diagonal(1e-3, 1e-3, 1e-3), &G, 1, 1).unwrap();
        assert!(numeig_asym(&sys.s) < 1e-12);
        let sp = plate_spectrum(&sys).unwrap();
        assert_eq!(sp.freqs_hz.len(), 18);
        for pair in sp.freqs_hz.chunks(2) {
            assert!((pair[0] - pair[1]).abs() <= 1e-10 * pair[1], "{pair:?}");
        }
        // W carries the softest pair.
        assert_eq!(sp.labels[0].class, ModeClass::Flexural);
    }

    fn numeig_asym(m: &DMatrix<f64>) -> f64 {
        crate::numeig::asymmetry(m)
    }
}
