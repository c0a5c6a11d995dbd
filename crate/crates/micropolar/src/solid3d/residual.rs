//! Balance-law check of a 3D mode, built straight from the kinematic and
//! constitutive relations rather than from the coefficient matrices.

use super::{CollocationGrid, SolidCoefficients, SolidMode};
use crate::trigbasis::{Trig, TrigPattern};
use nalgebra::DVector;

/// Field `Σ_p T_p(x₁, x₂) f_p(x₃)` with nodal `f_p`.
#[derive(Debug, Clone)]
struct Sep {
    parts: [DVector<f64>; 4],
    kx: f64,
    ky: f64,
}

fn slot(p: TrigPattern) -> usize {
    TrigPattern::ALL.iter().position(|&q| q == p).unwrap()
}

impl Sep {
    fn zero(n: usize, kx: f64, ky: f64) -> Self {
        Self {
            parts: std::array::from_fn(|_| DVector::zeros(n)),
            kx,
            ky,
        }
    }

    fn single(p: TrigPattern, f: DVector<f64>, kx: f64, ky: f64) -> Self {
        let mut s = Self::zero(f.len(), kx, ky);
        s.parts[slot(p)] = f;
        s
    }

    fn scaled(&self, c: f64) -> Self {
        let mut s = self.clone();
        s.parts.iter_mut().for_each(|v| *v *= c);
        s
    }

    fn add(&mut self, other: &Sep, c: f64) {
        for (a, b) in self.parts.iter_mut().zip(&other.parts) {
            a.axpy(c, b, 1.0);
        }
    }

    /// In-plane derivative, `axis` 0 or 1.
    fn d_plane(&self, axis: usize) -> Self {
        let mut out = Self::zero(self.parts[0].len(), self.kx, self.ky);
        for p in TrigPattern::ALL {
            let f = if axis == 0 { p.fx } else { p.fy };
            let k = if axis == 0 { self.kx } else { self.ky };
            let (g, s) = match f {
                Trig::Sin => (Trig::Cos, k),
                Trig::Cos => (Trig::Sin, -k),
            };
            let q = if axis == 0 { TrigPattern::new(g, p.fy) } else { TrigPattern::new(p.fx, g) };
            out.parts[slot(q)].axpy(s, &self.parts[slot(p)], 1.0);
        }
        out
    }

    fn d(&self, axis: usize, grid: &CollocationGrid) -> Self {
        if axis < 2 {
            self.d_plane(axis)
        } else {
            Self {
                parts: std::array::from_fn(|i| &grid.d1 * &self.parts[i]),
                kx: self.kx,
                ky: self.ky,
            }
        }
    }

    /// Largest nodal magnitude over `rows`.
    fn max_over(&self, rows: impl Iterator<Item = usize> + Clone) -> f64 {
        self.parts
            .iter()
            .map(|v| rows.clone().map(|i| v[i].abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
    }
}

fn levi(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Largest relative violation of the balance laws at interior nodes and
/// of the free-face traction conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    pub balance: f64,
    pub traction: f64,
}

impl ResidualReport {
    pub fn max(&self) -> f64 {
        self.balance.max(self.traction)
    }
}

/// Residual of mode `z` at `ω² = omega2`.
pub fn residual_check(mode: &SolidMode, sc: &SolidCoefficients, grid: &CollocationGrid) -> ResidualReport {
    let n = grid.len();
    let (kx, ky) = sc.wavenumbers();
    let mp = &sc.material;
    let jd = sc.inertia.j;
    let w2 = mode.omega2;
    let z = |k: usize| mode.z.rows(k * n, n).into_owned();
    let u = [
        Sep::single(TrigPattern::CS, z(0), kx, ky),
        Sep::single(TrigPattern::SC, z(1), kx, ky),
        Sep::single(TrigPattern::SS, z(2), kx, ky),
    ];
    let phi = [
        Sep::single(TrigPattern::SC, z(3), kx, ky),
        Sep::single(TrigPattern::CS, z(4), kx, ky),
        Sep::single(TrigPattern::CC, z(5), kx, ky),
    ];

    // γ_ji = u_i,j − ε_kji φ_k and χ_ji = φ_i,j
    let zero = Sep::zero(n, kx, ky);
    let mut gam: [[Sep; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
    let mut chi = gam.clone();
    for j in 0..3 {
        for i in 0..3 {
            let mut g = u[i].d(j, grid);
            for (k, p) in phi.iter().enumerate() {
                let e = levi(k, j, i);
                if e != 0.0 {
                    g.add(p, -e);
                }
            }
            gam[j][i] = g;
            chi[j][i] = phi[i].d(j, grid);
        }
    }
    let law = |t: &[[Sep; 3]; 3], a: f64, b: f64, c: f64| -> [[Sep; 3]; 3] {
        let mut tr = zero.clone();
        for k in 0..3 {
            tr.add(&t[k][k], 1.0);
        }
        std::array::from_fn(|j| {
            std::array::from_fn(|i| {
                let mut s = t[j][i].scaled(a);
                s.add(&t[i][j], b);
                if i == j {
                    s.add(&tr, c);
                }
                s
            })
        })
    };
    let sigma = law(&gam, mp.mu + mp.alpha, mp.mu - mp.alpha, mp.lambda);
    let mu = law(&chi, mp.gamma + mp.epsilon, mp.gamma - mp.epsilon, mp.beta);

    // Each balance law is a vector equation; its residual is measured
    // against the largest term appearing in any of its three components.
    let interior = 1..n - 1;
    let mut force = Vec::with_capacity(3);
    let mut moment = Vec::with_capacity(3);
    for i in 0..3 {
        // σ_ji,j + ρω² u_i
        let mut terms: Vec<Sep> = (0..3).map(|j| sigma[j][i].d(j, grid)).collect();
        terms.push(u[i].scaled(mp.rho * w2));
        force.push(terms);

        // ε_ijk σ_jk + μ_ji,j + J_i ω² φ_i
        let mut terms = Vec::new();
        for j in 0..3 {
            for k in 0..3 {
                let e = levi(i, j, k);
                if e != 0.0 {
                    terms.push(sigma[j][k].scaled(e));
                }
            }
            terms.push(mu[j][i].d(j, grid));
        }
        terms.push(phi[i].scaled(jd[(i, i)] * w2));
        moment.push(terms);
    }
    let balance = relative(&force, interior.clone()).max(relative(&moment, interior));

    let faces = [0usize, n - 1];
    let mut scale_s = 0.0f64;
    let mut scale_m = 0.0f64;
    for j in 0..3 {
        for i in 0..3 {
            scale_s = scale_s.max(sigma[j][i].max_over(0..n));
            scale_m = scale_m.max(mu[j][i].max_over(0..n));
        }
    }
    let mut traction = 0.0f64;
    for i in 0..3 {
        let ts = sigma[2][i].max_over(faces.iter().copied());
        let tm = mu[2][i].max_over(faces.iter().copied());
        if scale_s > 0.0 {
            traction = traction.max(ts / scale_s);
        }
        if scale_m > 0.0 {
            traction = traction.max(tm / scale_m);
        }
    }
    ResidualReport { balance, traction }
}

/// Largest component of `Σ terms` against the largest single term over all
/// components, so cancellation between large stresses is not mistaken for
/// imbalance.
fn relative(components: &[Vec<Sep>], rows: std::ops::Range<usize>) -> f64 {
    let mut scale = 0.0f64;
    let mut worst = 0.0f64;
    for terms in components {
        let mut sum = terms[0].clone();
        for t in &terms[1..] {
            sum.add(t, 1.0);
        }
        worst = worst.max(sum.max_over(rows.clone()));
        scale = terms.iter().map(|t| t.max_over(rows.clone())).fold(scale, f64::max);
    }
    if scale == 0.0 {
        0.0
    } else {
        worst / scale
    }
}
