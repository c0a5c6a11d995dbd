use micropolar::material::{rotate_inertia, InertiaConvention, MaterialParams, MicroInertia};
use micropolar::numeig::asymmetry;
use micropolar::plate::{assemble_modal_system, energy_shares, plate_spectrum, PlateGeometry};
use proptest::prelude::*;

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

fn freqs(mp: &MaterialParams, j: &MicroInertia, n: u32, m: u32) -> Vec<f64> {
    plate_spectrum(&assemble_modal_system(mp, j, &G, n, m).unwrap()).unwrap().freqs_hz
}

fn max_rel(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / y.abs().max(1e-300)).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Rotating the principal axes by θ or by 90° − θ with Jx, Jy swapped
    /// describes the same body.
    #[test]
    fn theta_reflection(theta in 0.0..90.0f64, tensor in any::<bool>()) {
        let conv = if tensor { InertiaConvention::TensorRotation } else { InertiaConvention::PaperSin2Theta };
        let t = theta.to_radians();
        let a = freqs(&foam(), &rotate_inertia(2e-3, 1e-3, 1e-4, t, conv), 1, 1);
        let b = freqs(&foam(), &rotate_inertia(1e-3, 2e-3, 1e-4, std::f64::consts::FRAC_PI_2 - t, conv), 1, 1);
        // Swapping Jx and Jy at 90° − θ reproduces the same tensor up to the sign of J12.
        prop_assert!(max_rel(&a, &b) < 1e-9, "{}", max_rel(&a, &b));
    }

    /// ρ and J multiplied by c scale every frequency by 1/√c.
    #[test]
    fn inertia_scaling(c in 0.05..20.0f64) {
        let j = MicroInertia::diagonal(1e-3, 2e-3, 5e-4);
        let base = freqs(&foam(), &j, 1, 1);
        let mp = MaterialParams { rho: foam().rho * c, ..foam() };
        let scaled: Vec<f64> = freqs(&mp, &j.scaled(c), 1, 1).iter().map(|f| f * c.sqrt()).collect();
        prop_assert!(max_rel(&scaled, &base) < 1e-9, "{}", max_rel(&scaled, &base));
    }

    /// All six moduli multiplied by c scale every frequency by √c.
    #[test]
    fn stiffness_scaling(c in 0.05..20.0f64) {
        let j = MicroInertia::diagonal(1e-3, 1e-3, 1e-3);
        let base = freqs(&foam(), &j, 1, 1);
        let f = foam();
        let mp = MaterialParams {
            lambda: f.lambda * c,
            mu: f.mu * c,
            alpha: f.alpha * c,
            beta: f.beta * c,
            gamma: f.gamma * c,
            epsilon: f.epsilon * c,
            rho: f.rho,
        };
        let scaled: Vec<f64> = freqs(&mp, &j, 1, 1).iter().map(|f| f / c.sqrt()).collect();
        prop_assert!(max_rel(&scaled, &base) < 1e-9, "{}", max_rel(&scaled, &base));
    }

    #[test]
    fn operators_are_symmetric_for_any_mode(n in 1u32..5, m in 1u32..5, theta in 0.0..1.6f64) {
        let j = rotate_inertia(2e-3, 1e-3, 1e-4, theta, InertiaConvention::PaperSin2Theta);
        let sys = assemble_modal_system(&foam(), &j, &G, n, m).unwrap();
        prop_assert!(asymmetry(&sys.s) <= 1e-10);
        prop_assert!(asymmetry(&sys.mass) <= 1e-14);
    }
}

/// Mode (n, m) and mode (m, n) of a square plate with isotropic in-plane
/// inertia are mirror images.
#[test]
fn transposed_modes_share_a_spectrum() {
    let j = MicroInertia::diagonal(1e-3, 1e-3, 1e-3);
    let a = freqs(&foam(), &j, 1, 2);
    let b = freqs(&foam(), &j, 2, 1);
    assert!(max_rel(&a, &b) < 1e-10, "{}", max_rel(&a, &b));
}

#[test]
fn energy_shares_sum_to_one() {
    let j = rotate_inertia(2e-3, 1e-3, 1e-4, 0.6, InertiaConvention::PaperSin2Theta);
    let sys = assemble_modal_system(&foam(), &j, &G, 1, 1).unwrap();
    let sp = plate_spectrum(&sys).unwrap();
    for i in 0..sp.freqs_hz.len() {
        let s: f64 = energy_shares(&sp.vector(i), &sys).iter().sum();
        assert!((s - 1.0).abs() < 1e-10, "mode {i}: {s}");
    }
}

#[test]
fn higher_wavenumbers_stiffen_the_lowest_mode() {
    let j = MicroInertia::diagonal(1e-3, 1e-3, 1e-3);
    let f11 = freqs(&foam(), &j, 1, 1)[0];
    let f22 = freqs(&foam(), &j, 2, 2)[0];
    assert!(f22 > f11);
}
