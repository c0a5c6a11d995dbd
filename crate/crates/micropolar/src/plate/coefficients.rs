use super::PlateGeometry;
use crate::error::{Error, Result};
use crate::material::{MaterialParams, MicroInertia};
use nalgebra::Matrix2;

/// Operator coefficients `c₁…c₁₅` and the inertia groups of the plate
/// equilibrium system.
#[derive(Debug, Clone, PartialEq)]
pub struct PlateCoefficients {
    pub c: [f64; 15],
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i_ab: Matrix2<f64>,
    pub i0_ab: Matrix2<f64>,
}

impl PlateCoefficients {
    /// One-based access, `c(1)` is `c₁`.
    pub fn c(&self, i: usize) -> f64 {
        self.c[i - 1]
    }
}

pub fn plate_coefficients(mp: &MaterialParams, j: &MicroInertia, g: &PlateGeometry) -> Result<PlateCoefficients> {
    let MaterialParams {
        lambda: l,
        mu,
        alpha: al,
        beta: be,
        gamma: ga,
        epsilon: ep,
        rho,
    } = *mp;
    let h = g.h;
    if al + mu == 0.0 {
        return Err(Error::SingularCoefficient("alpha + mu = 0"));
    }
    if l + 2.0 * mu == 0.0 {
        return Err(Error::SingularCoefficient("lambda + 2 mu = 0"));
    }
    if ga + ep == 0.0 {
        return Err(Error::SingularCoefficient("gamma + epsilon = 0"));
    }
    if be + 2.0 * ga == 0.0 {
        return Err(Error::SingularCoefficient("beta + 2 gamma = 0"));
    }
    let h3 = h * h * h;
    let c = [
        h3 * mu * (l + mu) / (3.0 * (l + 2.0 * mu)),
        h3 * (al + mu) / 12.0,
        5.0 * h * (al + mu) / 6.0,
        5.0 * h * (al - mu).powi(2) / (6.0 * (al + mu)),
        h * (5.0 * al * al + 6.0 * al * mu + 5.0 * mu * mu) / (6.0 * (al + mu)),
        h3 * ga * ep / (3.0 * (ga + ep)),
        10.0 * h * ga * (be + ga) / (3.0 * (be + 2.0 * ga)),
        5.0 * h * (ga + ep) / 6.0,
        10.0 * h * al * al / (3.0 * (al + mu)),
        5.0 * h * al * (al - mu) / (3.0 * (al + mu)),
        5.0 * h * (al - mu) / 6.0,
        h3 * al / 6.0,
        5.0 * h * al / 3.0,
        h * al * (5.0 * al + 3.0 * mu) / (3.0 * (al + mu)),
        2.0 * h * al * (5.0 * al + 4.0 * mu) / (3.0 * (al + mu)),
    ];
    let jab = j.j.fixed_view::<2, 2>(0, 0).into_owned();
    Ok(PlateCoefficients {
        c,
        i1: h3 * rho / 12.0,
        i2: 2.0 * h * rho / 3.0,
        i3: h * h * j.j[(2, 2)] / 6.0,
        i_ab: jab * (5.0 * h / 6.0),
        i0_ab: jab * (2.0 * h / 3.0),
    })
}
