//! Run configuration read from TOML.
//!
//! Every physical value carries its unit, `E = { value = 299.5, unit = "MPa" }`,
//! and is converted to SI on load. Unknown keys are errors.
//!
//! ```toml
//! [material]
//! rho = { value = 34.0, unit = "kg/m^3" }
//!
//! [material.technical]
//! E = { value = 299.5, unit = "MPa" }
//! nu = { value = 0.44, unit = "1" }
//! l_t = { value = 0.62, unit = "mm" }
//! l_b = { value = 0.327, unit = "mm" }
//! N2 = { value = 0.04, unit = "1" }
//! beta_gamma_ratio = { value = 1.0, unit = "1" }
//!
//! [geometry]
//! a = { value = 3.0, unit = "m" }
//! h = { value = 0.1, unit = "m" }
//!
//! [inertia]
//! Jx = { value = 0.001, unit = "kg/m" }
//! Jy = { value = 0.001, unit = "kg/m" }
//! Jz = { value = 0.001, unit = "kg/m" }
//! ```

use crate::error::{Error, Result};
use crate::material::{convert_technical, InertiaConvention, MaterialParams, TechnicalParams};
use crate::plate::{AssemblyRoute, PlateGeometry};
use crate::solid3d::OperatorVariant;
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct Quantity {
    value: f64,
    unit: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuantityList {
    values: Vec<f64>,
    unit: String,
}

#[derive(Debug, Clone, Copy)]
enum Dim {
    Pressure,
    Length,
    /// Modulus times length squared, the unit of β, γ, ε.
    CoupleModulus,
    Density,
    LineDensity,
    Ratio,
    Angle,
    Frequency,
}

impl Dim {
    fn name(self) -> &'static str {
        match self {
            Dim::Pressure => "pressure",
            Dim::Length => "length",
            Dim::CoupleModulus => "couple modulus",
            Dim::Density => "density",
            Dim::LineDensity => "micro-inertia",
            Dim::Ratio => "dimensionless",
            Dim::Angle => "angle",
            Dim::Frequency => "frequency",
        }
    }

    /// Factor to SI for `unit`, if it has this dimension.
    fn factor(self, unit: &str) -> Option<f64> {
        let u: String = unit.chars().filter(|c| !c.is_whitespace()).collect();
        let u = u.replace('·', "*").replace('²', "^2").replace('³', "^3");
        let f = match (self, u.as_str()) {
            (Dim::Pressure, "Pa") => 1.0,
            (Dim::Pressure, "kPa") => 1e3,
            (Dim::Pressure, "MPa") => 1e6,
            (Dim::Pressure, "GPa") => 1e9,
            (Dim::Length, "m") => 1.0,
            (Dim::Length, "cm") => 1e-2,
            (Dim::Length, "mm") => 1e-3,
            (Dim::Length, "um") => 1e-6,
            (Dim::CoupleModulus, "N" | "Pa*m^2") => 1.0,
            (Dim::CoupleModulus, "MPa*mm^2") => 1.0,
            (Dim::CoupleModulus, "kN" | "kPa*m^2") => 1e3,
            (Dim::CoupleModulus, "MPa*m^2") => 1e6,
            (Dim::Density, "kg/m^3") => 1.0,
            (Dim::Density, "g/cm^3") => 1e3,
            (Dim::LineDensity, "kg/m") => 1.0,
            (Dim::LineDensity, "g/m") => 1e-3,
            (Dim::Ratio, "1") => 1.0,
            (Dim::Ratio, "%") => 1e-2,
            (Dim::Angle, "rad") => 1.0,
            (Dim::Angle, "deg") => std::f64::consts::PI / 180.0,
            (Dim::Frequency, "Hz") => 1.0,
            (Dim::Frequency, "rad/s") => 1.0 / (2.0 * std::f64::consts::PI),
            _ => return None,
        };
        Some(f)
    }
}

fn si(q: &Quantity, dim: Dim, key: &str) -> Result<f64> {
    let f = dim
        .factor(&q.unit)
        .ok_or_else(|| Error::Config(format!("{key}: unit \"{}\" is not a {} unit", q.unit, dim.name())))?;
    if !q.value.is_finite() {
        return Err(Error::Config(format!("{key}: value must be finite")));
    }
    Ok(q.value * f)
}

fn si_list(q: &QuantityList, dim: Dim, key: &str) -> Result<Vec<f64>> {
    let f = dim
        .factor(&q.unit)
        .ok_or_else(|| Error::Config(format!("{key}: unit \"{}\" is not a {} unit", q.unit, dim.name())))?;
    if q.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Config(format!("{key}: values must be finite")));
    }
    Ok(q.values.iter().map(|v| v * f).collect())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    material: RawMaterial,
    geometry: RawGeometry,
    inertia: OneOrMany<RawInertia>,
    #[serde(default)]
    modes: Option<RawModes>,
    #[serde(default)]
    model: Option<RawModel>,
    #[serde(default)]
    solid: Option<RawSolid>,
    #[serde(default)]
    resonance: Option<RawResonance>,
    #[serde(default)]
    compare: Option<RawCompare>,
    #[serde(default)]
    output: Option<RawOutput>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMaterial {
    rho: Quantity,
    technical: Option<RawTechnical>,
    lame: Option<RawLame>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTechnical {
    #[serde(rename = "E")]
    e: Quantity,
    nu: Quantity,
    l_t: Quantity,
    l_b: Quantity,
    #[serde(rename = "N2")]
    n2: Quantity,
    beta_gamma_ratio: Quantity,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLame {
    lambda: Quantity,
    mu: Quantity,
    alpha: Quantity,
    beta: Quantity,
    gamma: Quantity,
    epsilon: Quantity,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    a: Quantity,
    h: Quantity,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInertia {
    name: Option<String>,
    #[serde(rename = "Jx")]
    jx: Quantity,
    #[serde(rename = "Jy")]
    jy: Quantity,
    #[serde(rename = "Jz")]
    jz: Quantity,
    theta: Option<QuantityList>,
    convention: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModes {
    n: Vec<u32>,
    m: Vec<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    operator: Option<String>,
    b8: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolid {
    nodes: Option<usize>,
    count: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawResonance {
    f_lo: Quantity,
    f_hi: Quantity,
    steps: usize,
    amplitude: Option<Quantity>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCompare {
    tolerance: Quantity,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    path: PathBuf,
}

/// Stiffness operator family shared by both solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Operator {
    /// Mixed plate assembly and the re-derived 3D matrices.
    #[default]
    Derived,
    /// Printed plate formulas and the tabulated 3D matrices.
    Printed,
}

impl Operator {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "derived" => Ok(Self::Derived),
            "printed" => Ok(Self::Printed),
            _ => Err(Error::Config(format!("operator must be \"derived\" or \"printed\", got \"{s}\""))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum B8Mode {
    #[default]
    Patched,
    Strict,
}

impl B8Mode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "patched" => Ok(Self::Patched),
            "strict" => Ok(Self::Strict),
            _ => Err(Error::Config(format!("b8 must be \"patched\" or \"strict\", got \"{s}\""))),
        }
    }
}

pub fn parse_convention(s: &str) -> Result<InertiaConvention> {
    match s {
        "paper" => Ok(InertiaConvention::PaperSin2Theta),
        "tensor" => Ok(InertiaConvention::TensorRotation),
        _ => Err(Error::Config(format!("convention must be \"paper\" or \"tensor\", got \"{s}\""))),
    }
}

/// One micro-element shape with its rotation angles (radians).
#[derive(Debug, Clone, PartialEq)]
pub struct InertiaCase {
    pub name: String,
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub thetas: Vec<f64>,
    pub convention: InertiaConvention,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceWindow {
    pub f_lo_hz: f64,
    pub f_hi_hz: f64,
    pub steps: usize,
    /// Top-face pressure amplitude (Pa).
    pub amplitude: f64,
}

/// Validated run configuration in SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub material: MaterialParams,
    /// Present when the material was given by engineering constants.
    pub technical: Option<TechnicalParams>,
    pub geometry: PlateGeometry,
    pub inertia: Vec<InertiaCase>,
    pub modes: Vec<(u32, u32)>,
    pub operator: Operator,
    pub b8: B8Mode,
    pub nodes: usize,
    pub count: usize,
    pub resonance: Option<ResonanceWindow>,
    /// Relative threshold for the plate-vs-3D macro comparison.
    pub tolerance: f64,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        raw.validate()
    }

    pub fn plate_route(&self) -> AssemblyRoute {
        match self.operator {
            Operator::Derived => AssemblyRoute::Mixed,
            Operator::Printed => AssemblyRoute::Printed,
        }
    }

    pub fn solid_variant(&self) -> OperatorVariant {
        match (self.operator, self.b8) {
            (Operator::Derived, _) => OperatorVariant::Derived,
            (Operator::Printed, B8Mode::Patched) => OperatorVariant::PrintedPatched,
            (Operator::Printed, B8Mode::Strict) => OperatorVariant::PrintedStrict,
        }
    }
}

impl RawConfig {
    fn validate(self) -> Result<RunConfig> {
        let rho = si(&self.material.rho, Dim::Density, "material.rho")?;
        let (material, technical) = match (&self.material.technical, &self.material.lame) {
            (Some(t), None) => {
                let tp = TechnicalParams {
                    e: si(&t.e, Dim::Pressure, "material.technical.E")?,
                    nu: si(&t.nu, Dim::Ratio, "material.technical.nu")?,
                    l_t: si(&t.l_t, Dim::Length, "material.technical.l_t")?,
                    l_b: si(&t.l_b, Dim::Length, "material.technical.l_b")?,
                    n2: si(&t.n2, Dim::Ratio, "material.technical.N2")?,
                    beta_gamma_ratio: si(&t.beta_gamma_ratio, Dim::Ratio, "material.technical.beta_gamma_ratio")?,
                };
                (convert_technical(&tp, rho)?, Some(tp))
            }
            (None, Some(l)) => {
                let mp = MaterialParams {
                    lambda: si(&l.lambda, Dim::Pressure, "material.lame.lambda")?,
                    mu: si(&l.mu, Dim::Pressure, "material.lame.mu")?,
                    alpha: si(&l.alpha, Dim::Pressure, "material.lame.alpha")?,
                    beta: si(&l.beta, Dim::CoupleModulus, "material.lame.beta")?,
                    gamma: si(&l.gamma, Dim::CoupleModulus, "material.lame.gamma")?,
                    epsilon: si(&l.epsilon, Dim::CoupleModulus, "material.lame.epsilon")?,
                    rho,
                };
                mp.validate()?;
                (mp, None)
            }
            _ => {
                return Err(Error::Config(
                    "material needs exactly one of [material.technical] or [material.lame]".into(),
                ))
            }
        };

        let geometry = PlateGeometry {
            a: si(&self.geometry.a, Dim::Length, "geometry.a")?,
            h: si(&self.geometry.h, Dim::Length, "geometry.h")?,
        };
        geometry.check()?;

        let raw_inertia = match self.inertia {
            OneOrMany::One(i) => vec![i],
            OneOrMany::Many(v) => v,
        };
        if raw_inertia.is_empty() {
            return Err(Error::Config("at least one [inertia] case is required".into()));
        }
        let mut inertia = Vec::with_capacity(raw_inertia.len());
        for (k, ri) in raw_inertia.into_iter().enumerate() {
            let case = InertiaCase {
                name: ri.name.unwrap_or_else(|| format!("case{}", k + 1)),
                jx: si(&ri.jx, Dim::LineDensity, "inertia.Jx")?,
                jy: si(&ri.jy, Dim::LineDensity, "inertia.Jy")?,
                jz: si(&ri.jz, Dim::LineDensity, "inertia.Jz")?,
                thetas: match &ri.theta {
                    Some(t) => si_list(t, Dim::Angle, "inertia.theta")?,
                    None => vec![0.0],
                },
                convention: match &ri.convention {
                    Some(c) => parse_convention(c)?,
                    None => InertiaConvention::default(),
                },
            };
            if case.jx < 0.0 || case.jy < 0.0 || case.jz < 0.0 {
                return Err(Error::Config(format!("inertia {}: Jx, Jy, Jz must be >= 0", case.name)));
            }
            if case.thetas.is_empty() {
                return Err(Error::Config(format!("inertia {}: theta list is empty", case.name)));
            }
            inertia.push(case);
        }

        let modes = match self.modes {
            Some(m) => {
                if m.n.is_empty() || m.m.is_empty() || m.n.contains(&0) || m.m.contains(&0) {
                    return Err(Error::Config("modes: n and m need indices from 1".into()));
                }
                m.n.iter().flat_map(|&n| m.m.iter().map(move |&mm| (n, mm))).collect()
            }
            None => vec![(1, 1)],
        };

        let (operator, b8) = match &self.model {
            Some(m) => (
                m.operator.as_deref().map(Operator::parse).transpose()?.unwrap_or_default(),
                m.b8.as_deref().map(B8Mode::parse).transpose()?.unwrap_or_default(),
            ),
            None => Default::default(),
        };

        let nodes = self.solid.as_ref().and_then(|s| s.nodes).unwrap_or(32);
        let count = self.solid.as_ref().and_then(|s| s.count).unwrap_or(10);
        if nodes < 8 {
            return Err(Error::Config("solid.nodes must be at least 8".into()));
        }
        if count == 0 {
            return Err(Error::Config("solid.count must be at least 1".into()));
        }

        let resonance = match self.resonance {
            Some(r) => {
                let w = ResonanceWindow {
                    f_lo_hz: si(&r.f_lo, Dim::Frequency, "resonance.f_lo")?,
                    f_hi_hz: si(&r.f_hi, Dim::Frequency, "resonance.f_hi")?,
                    steps: r.steps,
                    amplitude: match &r.amplitude {
                        Some(q) => si(q, Dim::Pressure, "resonance.amplitude")?,
                        None => 1.0,
                    },
                };
                if !(w.f_lo_hz >= 0.0 && w.f_lo_hz < w.f_hi_hz) || w.steps < 3 {
                    return Err(Error::Config("resonance: need 0 <= f_lo < f_hi and steps >= 3".into()));
                }
                Some(w)
            }
            None => None,
        };

        let tolerance = match &self.compare {
            Some(c) => si(&c.tolerance, Dim::Ratio, "compare.tolerance")?,
            None => 0.01,
        };
        if !(tolerance > 0.0) {
            return Err(Error::Config("compare.tolerance must be positive".into()));
        }

        Ok(RunConfig {
            material,
            technical,
            geometry,
            inertia,
            modes,
            operator,
            b8,
            nodes,
            count,
            resonance,
            tolerance,
            output: self.output.map(|o| o.path),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
[material]
rho = { value = 34.0, unit = "kg/m^3" }
[material.technical]
E = { value = 299.5, unit = "MPa" }
nu = { value = 0.44, unit = "1" }
l_t = { value = 0.62, unit = "mm" }
l_b = { value = 0.327, unit = "mm" }
N2 = { value = 0.04, unit = "1" }
beta_gamma_ratio = { value = 1.0, unit = "1" }
[geometry]
a = { value = 3.0, unit = "m" }
h = { value = 100.0, unit = "mm" }
[inertia]
Jx = { value = 0.001, unit = "kg/m" }
Jy = { value = 0.001, unit = "kg/m" }
Jz = { value = 0.001, unit = "kg/m" }
"#;

    #[test]
    fn loads_and_converts() {
        let c = RunConfig::from_toml(BASE).unwrap();
        assert!((c.material.mu - 103.993e6).abs() < 1e-4 * 103.993e6);
        assert!((c.geometry.h - 0.1).abs() < 1e-15);
        assert_eq!(c.modes, vec![(1, 1)]);
        assert_eq!(c.inertia[0].thetas, vec![0.0]);
        assert_eq!(c.nodes, 32);
    }

    #[test]
    fn missing_unit_is_an_error() {
        let bad = BASE.replace(r#"nu = { value = 0.44, unit = "1" }"#, "nu = { value = 0.44 }");
        assert!(matches!(RunConfig::from_toml(&bad), Err(Error::Config(_))));
        let bad = BASE.replace(r#"nu = { value = 0.44, unit = "1" }"#, "nu = 0.44");
        assert!(matches!(RunConfig::from_toml(&bad), Err(Error::Config(_))));
    }

    #[test]
    fn wrong_dimension_is_an_error() {
        let bad = BASE.replace(r#"unit = "MPa""#, r#"unit = "mm""#);
        let e = RunConfig::from_toml(&bad).unwrap_err();
        assert!(e.to_string().contains("material.technical.E"));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let bad = format!("{BASE}\n[solid]\nnodez = 32\n");
        assert!(RunConfig::from_toml(&bad).is_err());
        let bad = BASE.replace("[geometry]", "[geometry]\nb = { value = 1.0, unit = \"m\" }");
        assert!(RunConfig::from_toml(&bad).is_err());
    }

    #[test]
    fn both_material_forms_is_an_error() {
        let bad = format!(
            "{BASE}\n[material.lame]\nlambda = {{ value = 1, unit = \"Pa\" }}\nmu = {{ value = 1, unit = \"Pa\" }}\nalpha = {{ value = 1, unit = \"Pa\" }}\nbeta = {{ value = 1, unit = \"N\" }}\ngamma = {{ value = 1, unit = \"N\" }}\nepsilon = {{ value = 1, unit = \"N\" }}\n"
        );
        assert!(RunConfig::from_toml(&bad).is_err());
    }

    #[test]
    fn inertia_list_and_angles() {
        let text = BASE.replace(
            "[inertia]",
            "[[inertia]]\nname = \"h\"\ntheta = { values = [0, 45, 90], unit = \"deg\" }\nconvention = \"tensor\"",
        );
        let c = RunConfig::from_toml(&text).unwrap();
        assert_eq!(c.inertia.len(), 1);
        assert_eq!(c.inertia[0].convention, InertiaConvention::TensorRotation);
        assert!((c.inertia[0].thetas[1] - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn model_switches() {
        let text = format!("{BASE}\n[model]\noperator = \"printed\"\nb8 = \"strict\"\n");
        let c = RunConfig::from_toml(&text).unwrap();
        assert_eq!(c.plate_route(), AssemblyRoute::Printed);
        assert_eq!(c.solid_variant(), OperatorVariant::PrintedStrict);
        let bad = format!("{BASE}\n[model]\noperator = \"exact\"\n");
        assert!(RunConfig::from_toml(&bad).is_err());
    }

    #[test]
    fn lame_in_paper_units() {
        let text = r#"
[material]
rho = { value = 34.0, unit = "kg/m^3" }
[material.lame]
lambda = { value = 762.616, unit = "MPa" }
mu = { value = 103.993, unit = "MPa" }
alpha = { value = 4.333, unit = "MPa" }
beta = { value = 39.975, unit = "MPa*mm^2" }
gamma = { value = 39.975, unit = "MPa·mm²" }
epsilon = { value = 4.505, unit = "N" }
[geometry]
a = { value = 3.0, unit = "m" }
h = { value = 0.1, unit = "m" }
[inertia]
Jx = { value = 0.001, unit = "kg/m" }
Jy = { value = 0.001, unit = "kg/m" }
Jz = { value = 0.001, unit = "kg/m" }
"#;
        let c = RunConfig::from_toml(text).unwrap();
        assert_eq!(c.material.beta, 39.975);
        assert_eq!(c.material.gamma, 39.975);
        assert!(c.technical.is_none());
    }
}
