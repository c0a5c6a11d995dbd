use super::mixed::{eval_profile, resultant_defs, Tensor};
use super::{resultants_from_kinematics, Kinematics, ModalSystem, Resultants, StressModel};
use nalgebra::{DVector, Matrix3};

/// 3D fields of a plate mode at one point; tensors are indexed `[(j, i)]`
/// like `σ_ji`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub u: [f64; 3],
    pub phi: [f64; 3],
    pub sigma: Matrix3<f64>,
    pub mu: Matrix3<f64>,
}

fn flatten(r: &Resultants) -> [crate::trigbasis::TrigField; 20] {
    [
        r.m[0][0], r.m[0][1], r.m[1][0], r.m[1][1],
        r.q[0], r.q_star[0], r.q_hat[0], r.q[1], r.q_star[1], r.q_hat[1],
        r.r[0][0], r.r_star[0][0], r.r[0][1], r.r_star[0][1],
        r.r[1][0], r.r_star[1][0], r.r[1][1], r.r_star[1][1],
        r.s_star[0], r.s_star[1],
    ]
}

/// Displacements, rotations and stresses of mode vector `v` at `(x1, x2)`
/// and `ζ = 2x₃/h`. The load terms of `σ₃₃` and `μ₃₃` vanish in free
/// vibration, so both are zero.
pub fn reconstruct_3d_fields(sys: &ModalSystem, v: &DVector<f64>, x1: f64, x2: f64, zeta: f64) -> FieldSample {
    let k = Kinematics::from_vector(sys, v);
    let h = sys.geometry.h;
    let bubble = 1.0 - zeta * zeta;
    let u = [
        h / 2.0 * zeta * k.psi[0].eval(x1, x2),
        h / 2.0 * zeta * k.psi[1].eval(x1, x2),
        k.w.eval(x1, x2) + bubble * k.w_star.eval(x1, x2),
    ];
    let phi = [
        bubble * k.omega0[0].eval(x1, x2) + k.omega_hat[0].eval(x1, x2),
        bubble * k.omega0[1].eval(x1, x2) + k.omega_hat[1].eval(x1, x2),
        zeta * k.omega3.eval(x1, x2),
    ];
    let res = match &sys.stress {
        StressModel::Mixed(op) => op.resultants(&k),
        StressModel::Printed(signs) => resultants_from_kinematics(&k, &sys.material, &sys.geometry, *signs),
    };
    let mut sigma = Matrix3::zeros();
    let mut mu = Matrix3::zeros();
    for (d, n) in resultant_defs(h).iter().zip(flatten(&res).iter()) {
        let val = eval_profile(&d.profile, zeta) * n.eval(x1, x2);
        match d.tensor {
            Tensor::Force => sigma[d.comp] += val,
            Tensor::Couple => mu[d.comp] += val,
        }
    }
    FieldSample { u, phi, sigma, mu }
}
