//! Mixed (stress plus displacement) assembly.
//!
//! Every stress resultant `N_k` carries a thickness profile `p_k(ζ)` and a
//! component of σ or μ, so the assumed 3D stress is `Σ N_k p_k`. Its
//! complementary energy gives the resultant compliance `F`, and the strain of
//! the displacement ansatz, weighted by the same profiles, gives generalized
//! strains `e_k`. Eliminating the resultants leaves `S = Eᵀ F⁻¹ E`, which is
//! symmetric by construction.

use super::{consistent_mass, basis, Kinematics, ModalSystem, PlateGeometry, Resultants, StressModel};
use crate::error::{Error, Result};
use crate::material::{MaterialParams, MicroInertia};
use crate::trigbasis::{TrigField, TrigPattern};
use nalgebra::{DMatrix, SMatrix, SymmetricEigen};

/// Polynomial in ζ, coefficients low to high.
pub(crate) type Profile = [f64; 3];

const ONE: Profile = [1.0, 0.0, 0.0];
const ZETA: Profile = [0.0, 1.0, 0.0];
const BUBBLE: Profile = [1.0, 0.0, -1.0];

fn scale(c: f64, p: Profile) -> Profile {
    [c * p[0], c * p[1], c * p[2]]
}

/// `∫₋₁¹ p q dζ`.
pub(crate) fn integrate_product(p: &Profile, q: &Profile) -> f64 {
    let mut s = 0.0;
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            if (i + j) % 2 == 0 {
                s += a * b * 2.0 / (i + j + 1) as f64;
            }
        }
    }
    s
}

pub(crate) fn eval_profile(p: &Profile, z: f64) -> f64 {
    p[0] + z * (p[1] + z * p[2])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Tensor {
    Force,
    Couple,
}

/// One stress resultant: which 3D component it integrates and with what profile.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ResultantDef {
    pub tensor: Tensor,
    pub comp: (usize, usize),
    pub profile: Profile,
}

/// Resultants in the order M11 M12 M21 M22, (Q, Q*, Q̂) for β = 1, 2,
/// (R, R*) for 11 12 21 22, S*1 S*2.
pub(crate) fn resultant_defs(h: f64) -> Vec<ResultantDef> {
    let bend = scale(6.0 / (h * h), ZETA);
    let shear = scale(1.5 / h, BUBBLE);
    let flat = scale(1.5 / h, ONE);
    let mut v = Vec::with_capacity(20);
    for a in 0..2 {
        for b in 0..2 {
            v.push(ResultantDef { tensor: Tensor::Force, comp: (a, b), profile: bend });
        }
    }
    for b in 0..2 {
        v.push(ResultantDef { tensor: Tensor::Force, comp: (2, b), profile: shear });
        v.push(ResultantDef { tensor: Tensor::Force, comp: (b, 2), profile: shear });
        v.push(ResultantDef { tensor: Tensor::Force, comp: (b, 2), profile: flat });
    }
    for a in 0..2 {
        for b in 0..2 {
            v.push(ResultantDef { tensor: Tensor::Couple, comp: (a, b), profile: shear });
            v.push(ResultantDef { tensor: Tensor::Couple, comp: (a, b), profile: flat });
        }
    }
    for b in 0..2 {
        v.push(ResultantDef { tensor: Tensor::Couple, comp: (b, 2), profile: bend });
    }
    v
}

/// One term `profile(ζ) · field(x₁, x₂)` of a 3D strain component.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StrainTerm {
    pub tensor: Tensor,
    pub comp: (usize, usize),
    pub profile: Profile,
    pub field: TrigField,
}

fn perm3(a: usize, b: usize) -> f64 {
    match (a, b) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        _ => 0.0,
    }
}

/// Strains `γ_ji = u_i,j − ε_kji φ_k` and `χ_ji = φ_i,j` of the plate ansatz,
/// keyed by `(j, i)`.
pub(crate) fn strain_terms(k: &Kinematics, h: f64) -> Vec<StrainTerm> {
    use Tensor::*;
    let mut out = Vec::new();
    let mut push = |tensor, comp, profile, field: TrigField| {
        if !field.is_zero() {
            out.push(StrainTerm { tensor, comp, profile, field });
        }
    };
    for a in 0..2 {
        for b in 0..2 {
            push(Force, (a, b), scale(h / 2.0, ZETA), k.psi[b].d(a));
            push(Force, (a, b), scale(-perm3(a, b), ZETA), k.omega3);
            push(Couple, (a, b), BUBBLE, k.omega0[b].d(a));
            push(Couple, (a, b), ONE, k.omega_hat[b].d(a));
        }
        push(Couple, (a, 2), ZETA, k.omega3.d(a));
    }
    push(Force, (2, 0), ONE, k.psi[0]);
    push(Force, (2, 0), scale(-1.0, BUBBLE), k.omega0[1]);
    push(Force, (2, 0), scale(-1.0, ONE), k.omega_hat[1]);
    push(Force, (2, 1), ONE, k.psi[1]);
    push(Force, (2, 1), BUBBLE, k.omega0[0]);
    push(Force, (2, 1), ONE, k.omega_hat[0]);
    push(Force, (0, 2), ONE, k.w.d(0));
    push(Force, (0, 2), BUBBLE, k.w_star.d(0));
    push(Force, (0, 2), BUBBLE, k.omega0[1]);
    push(Force, (0, 2), ONE, k.omega_hat[1]);
    push(Force, (1, 2), ONE, k.w.d(1));
    push(Force, (1, 2), BUBBLE, k.w_star.d(1));
    push(Force, (1, 2), scale(-1.0, BUBBLE), k.omega0[0]);
    push(Force, (1, 2), scale(-1.0, ONE), k.omega_hat[0]);
    out
}

type M9 = SMatrix<f64, 9, 9>;

/// Hessian `K0 + K1/s` of the isotropic Cosserat complementary energy with
/// symmetric modulus `m`, volumetric modulus `l` and skew modulus `s`;
/// `K1` is the skew projector over 4.
fn compliance_parts(m: f64, l: f64) -> (M9, M9) {
    let mut k0 = M9::zeros();
    let mut k1 = M9::zeros();
    let diag = -2.0 * l / (4.0 * m * (3.0 * l + 2.0 * m));
    for j in 0..3 {
        for i in 0..3 {
            let a = 3 * j + i;
            let b = 3 * i + j;
            k0[(a, a)] += 0.25 / m;
            k0[(a, b)] += 0.25 / m;
            k1[(a, a)] += 0.25;
            k1[(a, b)] -= 0.25;
        }
        for i in 0..3 {
            k0[(4 * j, 4 * i)] += diag;
        }
    }
    (k0, k1)
}

/// Resultant compliance inverse and the data needed to recover resultants.
#[derive(Debug, Clone)]
pub(crate) struct MixedOperator {
    pub h: f64,
    pub defs: Vec<ResultantDef>,
    /// Inverse of the resultant compliance, restricted to the symmetric
    /// force resultants when α = 0.
    pub c: DMatrix<f64>,
    /// Factor with `c = wᵀ w`.
    pub w: DMatrix<f64>,
}

impl MixedOperator {
    pub fn new(mp: &MaterialParams, h: f64) -> Result<Self> {
        let defs = resultant_defs(h);
        let nr = defs.len();
        let (s0, s1) = compliance_parts(mp.mu, mp.lambda);
        let (c0, c1) = compliance_parts(mp.gamma, mp.beta);
        let mut f0 = DMatrix::zeros(nr, nr);
        let mut f1 = DMatrix::zeros(nr, nr);
        for (k, dk) in defs.iter().enumerate() {
            for (l, dl) in defs.iter().enumerate() {
                if dk.tensor != dl.tensor {
                    continue;
                }
                let w = h / 2.0 * integrate_product(&dk.profile, &dl.profile);
                let a = 3 * dk.comp.0 + dk.comp.1;
                let b = 3 * dl.comp.0 + dl.comp.1;
                match dk.tensor {
                    Tensor::Force => {
                        f0[(k, l)] = w * s0[(a, b)];
                        f1[(k, l)] = w * s1[(a, b)];
                    }
                    Tensor::Couple => f0[(k, l)] = w * (c0[(a, b)] + c1[(a, b)] / mp.epsilon),
                }
            }
        }
        // C = Wᵀ W, so the stiffness comes out as a Gram matrix.
        let w = if mp.alpha > 0.0 {
            let l = (f0 + f1 / mp.alpha)
                .cholesky()
                .ok_or(Error::NotPositiveDefinite("resultant compliance"))?
                .unpack();
            l.solve_lower_triangular(&DMatrix::identity(nr, nr))
                .ok_or(Error::NotPositiveDefinite("resultant compliance"))?
        } else {
            // Skew force stress carries no energy: keep only resultants in
            // the null space of the skew part.
            let eig = SymmetricEigen::new(f1.clone());
            let tol = 1e-12 * eig.eigenvalues.amax().max(f64::MIN_POSITIVE);
            let cols: Vec<_> = (0..nr).filter(|&i| eig.eigenvalues[i].abs() <= tol).collect();
            let n = eig.eigenvectors.select_columns(&cols);
            let r = (n.transpose() * &f0 * &n)
                .cholesky()
                .ok_or(Error::NotPositiveDefinite("restricted resultant compliance"))?
                .unpack();
            r.solve_lower_triangular(&n.transpose())
                .ok_or(Error::NotPositiveDefinite("restricted resultant compliance"))?
        };
        let c = w.transpose() * &w;
        Ok(Self { h, defs, c, w })
    }

    /// `e_k = (h/2) ∫ p_k γ dζ` for every resultant.
    pub fn generalized_strains(&self, k: &Kinematics) -> Vec<TrigField> {
        let terms = strain_terms(k, self.h);
        self.defs
            .iter()
            .map(|d| {
                let mut e = TrigField::zero(k.psi[0].kx, k.psi[0].ky);
                for t in terms.iter().filter(|t| t.tensor == d.tensor && t.comp == d.comp) {
                    e += (self.h / 2.0 * integrate_product(&d.profile, &t.profile)) * t.field;
                }
                e
            })
            .collect()
    }

    /// Resultant fields `N = C e`, in [`resultant_defs`] order.
    pub fn resultant_fields(&self, k: &Kinematics) -> Vec<TrigField> {
        let e = self.generalized_strains(k);
        (0..self.defs.len())
            .map(|r| {
                let mut n = TrigField::zero(k.psi[0].kx, k.psi[0].ky);
                for (l, el) in e.iter().enumerate() {
                    let c = self.c[(r, l)];
                    if c != 0.0 {
                        n += c * *el;
                    }
                }
                n
            })
            .collect()
    }

    pub fn resultants(&self, k: &Kinematics) -> Resultants {
        let n = self.resultant_fields(k);
        let mut r = Resultants::zero(k.psi[0].kx, k.psi[0].ky);
        r.m = [[n[0], n[1]], [n[2], n[3]]];
        for b in 0..2 {
            r.q[b] = n[4 + 3 * b];
            r.q_star[b] = n[5 + 3 * b];
            r.q_hat[b] = n[6 + 3 * b];
        }
        for a in 0..2 {
            for b in 0..2 {
                let i = 10 + 4 * a + 2 * b;
                r.r[a][b] = n[i];
                r.r_star[a][b] = n[i + 1];
            }
        }
        r.s_star = [n[18], n[19]];
        r
    }
}

pub(crate) fn assemble(mp: &MaterialParams, j: &MicroInertia, g: &PlateGeometry, n: u32, m: u32) -> Result<ModalSystem> {
    let op = MixedOperator::new(mp, g.h)?;
    let (kx, ky) = TrigField::wavenumbers(n, m, g.a);
    let slots = basis();
    let nr = op.defs.len();
    // e[i][q] is the strain vector of slot i projected on pattern q.
    let strains: Vec<Vec<DMatrix<f64>>> = slots
        .iter()
        .map(|slot| {
            let mut k = Kinematics::zero(kx, ky);
            *k.get_mut(slot.var) = TrigField::term(1.0, slot.pattern(), kx, ky);
            let e = op.generalized_strains(&k);
            TrigPattern::ALL
                .iter()
                .map(|&p| DMatrix::from_iterator(nr, 1, e.iter().map(|f| f.project(p))))
                .collect()
        })
        .collect();
    let ns = slots.len();
    let rows = op.w.nrows();
    let mut factor = DMatrix::zeros(rows * TrigPattern::ALL.len(), ns);
    for q in 0..TrigPattern::ALL.len() {
        for (a, e) in strains.iter().enumerate() {
            let col = &op.w * &e[q];
            factor.view_mut((q * rows, a), (rows, 1)).copy_from(&col);
        }
    }
    let s = factor.transpose() * &factor;
    Ok(ModalSystem {
        n,
        m,
        kx,
        ky,
        s,
        mass: consistent_mass(mp, j, g),
        basis: slots,
        material: *mp,
        geometry: *g,
        stiffness_factor: Some(factor),
        stress: StressModel::Mixed(op),
    })
}
