//! Plate resultants and the equilibrium system.
//!
//! The reverse constitutive formulas below carry a few `(−1)^α` factors whose
//! sign is not fixed by the formulas themselves. [`SignChoice`] enumerates
//! them, plus the two possible index readings of the divergence `M_{αβ,α}`.

use super::{Kinematics, PlateGeometry};
use crate::material::MaterialParams;
use crate::trigbasis::TrigField;

/// Stress and couple-stress resultants of one mode.
///
/// `m[i][j]` and `r[i][j]` follow the index order of the formula that
/// produced them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resultants {
    pub m: [[TrigField; 2]; 2],
    pub q: [TrigField; 2],
    pub q_star: [TrigField; 2],
    pub q_hat: [TrigField; 2],
    pub r: [[TrigField; 2]; 2],
    pub r_star: [[TrigField; 2]; 2],
    pub s_star: [TrigField; 2],
}

impl Resultants {
    pub fn zero(kx: f64, ky: f64) -> Self {
        let z = TrigField::zero(kx, ky);
        Self {
            m: [[z; 2]; 2],
            q: [z; 2],
            q_star: [z; 2],
            q_hat: [z; 2],
            r: [[z; 2]; 2],
            r_star: [[z; 2]; 2],
            s_star: [z; 2],
        }
    }

    pub fn is_zero(&self) -> bool {
        let flat = [
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1], self.q[0], self.q[1], self.q_star[0],
            self.q_star[1], self.q_hat[0], self.q_hat[1], self.r[0][0], self.r[0][1], self.r[1][0], self.r[1][1],
            self.r_star[0][0], self.r_star[0][1], self.r_star[1][0], self.r_star[1][1], self.s_star[0],
            self.s_star[1],
        ];
        flat.iter().all(TrigField::is_zero)
    }
}

/// Signs for the ambiguous factors of `Q`, `Q*`, `Q̂` and the divergence reading.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignChoice {
    pub q: i8,
    pub q_star: i8,
    pub q_hat: i8,
    /// Divergence over the second index of `M`, `R`, `R*` instead of the first.
    pub transposed_divergence: bool,
}

impl Default for SignChoice {
    fn default() -> Self {
        Self {
            q: 1,
            q_star: 1,
            q_hat: 1,
            transposed_divergence: false,
        }
    }
}

impl SignChoice {
    /// All 16 combinations.
    pub fn all() -> Vec<Self> {
        let mut v = Vec::with_capacity(16);
        for t in [false, true] {
            for q in [1, -1] {
                for q_star in [1, -1] {
                    for q_hat in [1, -1] {
                        v.push(Self { q, q_star, q_hat, transposed_divergence: t });
                    }
                }
            }
        }
        v
    }
}

fn sgn(p: usize) -> f64 {
    if p % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Reverse constitutive formulas for free vibration.
///
/// `M_ij` carries `−ε₃ᵢⱼ(αh³/6)Ω₃`, so `M₁₂` gets the minus sign.
pub fn resultants_from_kinematics(k: &Kinematics, mp: &MaterialParams, g: &PlateGeometry, signs: SignChoice) -> Resultants {
    let MaterialParams {
        lambda: l,
        mu,
        alpha: al,
        beta: be,
        gamma: ga,
        epsilon: ep,
        ..
    } = *mp;
    let h = g.h;
    let h3 = h * h * h;
    let mut r = Resultants::zero(k.w.kx, k.w.ky);
    for a in 0..2 {
        let b = 1 - a;
        let psi = &k.psi;
        let o = &k.omega0;
        let oh = &k.omega_hat;
        r.m[a][a] = (mu * (l + mu) * h3 / (3.0 * (l + 2.0 * mu))) * psi[a].d(a)
            + (l * mu * h3 / (6.0 * (l + 2.0 * mu))) * psi[b].d(b);
        let eps = if (b, a) == (0, 1) { -1.0 } else { 1.0 };
        r.m[b][a] = ((mu - al) * h3 / 12.0) * psi[a].d(b)
            + ((mu + al) * h3 / 12.0) * psi[b].d(a)
            + (eps * al * h3 / 6.0) * k.omega3;
        r.r[b][a] = (5.0 * (ga - ep) * h / 6.0) * o[b].d(a) + (5.0 * (ga + ep) * h / 6.0) * o[a].d(b);
        r.r[a][a] = (10.0 * h * ga * (be + ga) / (3.0 * (be + 2.0 * ga))) * o[a].d(a)
            + (5.0 * h * be * ga / (3.0 * (be + 2.0 * ga))) * o[b].d(b);
        r.r_star[b][a] = (2.0 * (ga - ep) * h / 3.0) * oh[b].d(a) + (2.0 * (ga + ep) * h / 3.0) * oh[a].d(b);
        r.r_star[a][a] = (8.0 * ga * (ga + be) * h / (3.0 * (be + 2.0 * ga))) * oh[a].d(a)
            + (4.0 * ga * be * h / (3.0 * (be + 2.0 * ga))) * oh[b].d(b);

        // (−1)^(β+1) and (−1)^(α+1) with one-based α, β.
        let s_b = sgn(b);
        let s_a = sgn(a);
        r.q[a] = (5.0 * (mu + al) * h / 6.0) * psi[a]
            + (5.0 * (mu - al) * h / 6.0) * k.w.d(a)
            + (2.0 * (mu - al) * h / 3.0) * k.w_star.d(a)
            + (signs.q as f64 * s_b * 5.0 * h * al / 3.0) * (o[b] + oh[b]);
        r.q_star[a] = (5.0 * (mu - al) * h / 6.0) * psi[a]
            + (5.0 * (mu - al).powi(2) * h / (6.0 * (mu + al))) * k.w.d(a)
            + (2.0 * (mu + al) * h / 3.0) * k.w_star.d(a)
            + (signs.q_star as f64 * s_a * 5.0 * h * al / 3.0) * (o[b] + ((mu - al) / (mu + al)) * oh[b]);
        let qh = 8.0 * al * mu * h / (3.0 * (mu + al));
        r.q_hat[a] = qh * k.w.d(a) + (signs.q_hat as f64 * s_a * qh) * oh[b];
        r.s_star[a] = (5.0 * ga * ep * h3 / (3.0 * (ga + ep))) * k.omega3.d(a);
    }
    r
}

/// Static part of the nine equilibrium equations, in
/// [`KinematicVariable::ALL`](super::KinematicVariable::ALL) order.
pub fn equilibrium_residuals(r: &Resultants, transposed_divergence: bool) -> [TrigField; 9] {
    let div = |t: &[[TrigField; 2]; 2], b: usize| {
        if transposed_divergence {
            t[0][b].d(0) + t[1][b].d(1)
        } else {
            t[b][0].d(0) + t[b][1].d(1)
        }
    };
    let e3 = |b: usize, g: usize| match (b, g) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        _ => 0.0,
    };
    let mut psi = [r.q[0]; 2];
    let mut om0 = [r.q[0]; 2];
    let mut omh = [r.q[0]; 2];
    for b in 0..2 {
        psi[b] = div(&r.m, b) - r.q[b];
        let mut o = div(&r.r, b);
        let mut oh = div(&r.r_star, b);
        for g in 0..2 {
            o += e3(b, g) * (r.q_star[g] - r.q[g]);
            oh += e3(b, g) * r.q_hat[g];
        }
        om0[b] = o;
        omh[b] = oh;
    }
    let w = r.q_hat[0].d(0) + r.q_hat[1].d(1);
    let w_star = r.q_star[0].d(0) + r.q_star[1].d(1);
    let omega3 = (r.m[0][1] - r.m[1][0]) + r.s_star[0].d(0) + r.s_star[1].d(1);
    [psi[0], psi[1], w, omega3, om0[0], om0[1], w_star, omh[0], omh[1]]
}
