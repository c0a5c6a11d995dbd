//! Material constants of an isotropic Cosserat solid.
//!
//! Everything is SI: λ, μ, α in Pa; β, γ, ε in Pa·m²; ρ in kg/m³;
//! micro-inertia J in kg/m.

use crate::error::{Error, Result};
use nalgebra::Matrix3;
use std::fmt;

/// Engineering constants of a Cosserat solid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TechnicalParams {
    /// Young's modulus (Pa).
    pub e: f64,
    /// Poisson ratio.
    pub nu: f64,
    /// Characteristic length for torsion (m).
    pub l_t: f64,
    /// Characteristic length for bending (m).
    pub l_b: f64,
    /// Coupling number squared, `N² = α/(α+μ)`.
    pub n2: f64,
    /// Ratio β/γ.
    pub beta_gamma_ratio: f64,
}

impl TechnicalParams {
    /// Returns the first violated admissibility condition, if any.
    pub fn check(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::InvalidMaterial(s.to_string()));
        if !(self.e > 0.0) {
            return bad("E > 0");
        }
        if !(self.nu > -1.0 && self.nu < 0.5) {
            return bad("-1 < nu < 0.5");
        }
        if !(self.l_t >= 0.0) {
            return bad("l_t >= 0");
        }
        if !(self.l_b >= 0.0) {
            return bad("l_b >= 0");
        }
        if !(self.n2 >= 0.0 && self.n2 < 1.0) {
            return bad("0 <= N2 < 1");
        }
        if !(self.beta_gamma_ratio > -2.0 / 3.0) {
            return bad("beta/gamma > -2/3");
        }
        Ok(())
    }

    /// Inverts [`convert_technical`]; `rho` is not part of the result.
    pub fn from_material(mp: &MaterialParams) -> Self {
        let MaterialParams {
            lambda,
            mu,
            alpha,
            beta,
            gamma,
            epsilon,
            ..
        } = *mp;
        Self {
            e: mu * (3.0 * lambda + 2.0 * mu) / (lambda + mu),
            nu: lambda / (2.0 * (lambda + mu)),
            l_t: ((beta + gamma) / (2.0 * mu)).sqrt(),
            l_b: ((gamma + epsilon) / (4.0 * mu)).sqrt(),
            n2: alpha / (alpha + mu),
            beta_gamma_ratio: beta / gamma,
        }
    }
}

/// Lamé and Cosserat moduli plus density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    pub lambda: f64,
    pub mu: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub epsilon: f64,
    pub rho: f64,
}

/// A failed positivity condition of the strain-energy density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyCondition {
    Mu,
    Alpha,
    Gamma,
    Epsilon,
    Bulk,
    CoupleBulk,
    Rho,
}

impl EnergyCondition {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Mu => "mu > 0",
            Self::Alpha => "alpha >= 0",
            Self::Gamma => "gamma > 0",
            Self::Epsilon => "epsilon > 0",
            Self::Bulk => "3λ+2μ > 0",
            Self::CoupleBulk => "3β+2γ > 0",
            Self::Rho => "rho > 0",
        }
    }
}

impl fmt::Display for EnergyCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl MaterialParams {
    pub fn validate(&self) -> Result<()> {
        match validate_energy_positivity(self).first() {
            None => Ok(()),
            Some(c) => Err(Error::InvalidMaterial(c.to_string())),
        }
    }

    /// Copy with α replaced.
    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }
}

/// Strain-energy positivity checks; empty iff the material is admissible.
pub fn validate_energy_positivity(mp: &MaterialParams) -> Vec<EnergyCondition> {
    let mut v = Vec::new();
    if !(mp.mu > 0.0) {
        v.push(EnergyCondition::Mu);
    }
    if !(mp.alpha >= 0.0) {
        v.push(EnergyCondition::Alpha);
    }
    if !(mp.gamma > 0.0) {
        v.push(EnergyCondition::Gamma);
    }
    if !(mp.epsilon > 0.0) {
        v.push(EnergyCondition::Epsilon);
    }
    if !(3.0 * mp.lambda + 2.0 * mp.mu > 0.0) {
        v.push(EnergyCondition::Bulk);
    }
    if !(3.0 * mp.beta + 2.0 * mp.gamma > 0.0) {
        v.push(EnergyCondition::CoupleBulk);
    }
    if !(mp.rho > 0.0) {
        v.push(EnergyCondition::Rho);
    }
    v
}

/// Engineering constants to moduli.
///
/// `γ = 2μ l_t² / (1 + β/γ)` and `ε = 4μ l_b² − γ`, so that
/// `l_t² = (β+γ)/(2μ)` and `l_b² = (γ+ε)/(4μ)`.
pub fn convert_technical(tp: &TechnicalParams, rho: f64) -> Result<MaterialParams> {
    tp.check()?;
    let TechnicalParams {
        e,
        nu,
        l_t,
        l_b,
        n2,
        beta_gamma_ratio,
    } = *tp;
    let mu = e / (2.0 * (1.0 + nu));
    let lambda = e * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    let alpha = mu * n2 / (1.0 - n2);
    let gamma = 2.0 * mu * l_t * l_t / (1.0 + beta_gamma_ratio);
    let beta = beta_gamma_ratio * gamma;
    let epsilon = 4.0 * mu * l_b * l_b - gamma;
    let mp = MaterialParams {
        lambda,
        mu,
        alpha,
        beta,
        gamma,
        epsilon,
        rho,
    };
    mp.validate()?;
    Ok(mp)
}

/// Compliance moduli of the reverse constitutive form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReciprocalModuli {
    pub mu_p: f64,
    pub alpha_p: f64,
    pub gamma_p: f64,
    pub epsilon_p: f64,
    pub lambda_p: f64,
    pub beta_p: f64,
}

/// `μ' = 1/(4μ)`, `α' = 1/(4α)`, `λ' = −λ/(6μ(λ+2μ/3))`, and the
/// couple-stress analogues with `(γ, ε, β)` in place of `(μ, α, λ)`.
pub fn reciprocal_moduli(mp: &MaterialParams) -> Result<ReciprocalModuli> {
    if mp.alpha <= 0.0 {
        return Err(Error::ReverseFormSingular("alpha = 0"));
    }
    if mp.epsilon <= 0.0 {
        return Err(Error::ReverseFormSingular("epsilon = 0"));
    }
    if mp.mu <= 0.0 || mp.gamma <= 0.0 {
        return Err(Error::ReverseFormSingular("mu or gamma not positive"));
    }
    Ok(ReciprocalModuli {
        mu_p: 1.0 / (4.0 * mp.mu),
        alpha_p: 1.0 / (4.0 * mp.alpha),
        gamma_p: 1.0 / (4.0 * mp.gamma),
        epsilon_p: 1.0 / (4.0 * mp.epsilon),
        lambda_p: -mp.lambda / (6.0 * mp.mu * (mp.lambda + 2.0 * mp.mu / 3.0)),
        beta_p: -mp.beta / (6.0 * mp.gamma * (mp.beta + 2.0 * mp.gamma / 3.0)),
    })
}

/// How the in-plane off-diagonal inertia is formed from the rotation angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InertiaConvention {
    /// `J12 = (Jx − Jy) sin 2θ`.
    #[default]
    PaperSin2Theta,
    /// `J12 = (Jx − Jy) sin 2θ / 2`, the similarity transform `R diag Rᵀ`.
    TensorRotation,
}

/// Rotatory inertia tensor of the micro-elements (kg/m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicroInertia {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub theta: f64,
    pub convention: InertiaConvention,
    pub j: Matrix3<f64>,
}

impl MicroInertia {
    pub fn diagonal(jx: f64, jy: f64, jz: f64) -> Self {
        rotate_inertia(jx, jy, jz, 0.0, InertiaConvention::default())
    }

    pub fn is_diagonal(&self) -> bool {
        self.j[(0, 1)] == 0.0
    }

    /// Same tensor with every entry multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            jx: self.jx * c,
            jy: self.jy * c,
            jz: self.jz * c,
            j: self.j * c,
            ..*self
        }
    }
}

pub fn rotate_inertia(jx: f64, jy: f64, jz: f64, theta: f64, convention: InertiaConvention) -> MicroInertia {
    let (s, c) = theta.sin_cos();
    let j11 = jx * c * c + jy * s * s;
    let j22 = jx * s * s + jy * c * c;
    let sin2 = (2.0 * theta).sin();
    let j12 = match convention {
        InertiaConvention::PaperSin2Theta => (jx - jy) * sin2,
        InertiaConvention::TensorRotation => 0.5 * (jx - jy) * sin2,
    };
    let j = Matrix3::new(j11, j12, 0.0, j12, j22, 0.0, 0.0, 0.0, jz);
    MicroInertia {
        jx,
        jy,
        jz,
        theta,
        convention,
        j,
    }
}
