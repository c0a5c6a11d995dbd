use micropolar::material::{MaterialParams, MicroInertia};
use micropolar::solid3d::{build_pencil, residual_check, solid_coefficients, solid_spectrum, CollocationGrid};
use std::f64::consts::PI;

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

fn freqs(mp: &MaterialParams, j: &MicroInertia, n: usize, k: usize) -> Vec<f64> {
    let sc = solid_coefficients(mp, j, 3.0).unwrap();
    let grid = CollocationGrid::new(n, 0.1);
    solid_spectrum(&build_pencil(&sc, &grid).unwrap(), k).unwrap().freqs_hz()
}

/// Lowest mode against the Kirchhoff plate `ω = (kx² + ky²) √(D/ρh)`.
/// Shear and rotary inertia lower the exact value slightly; h/a = 1/30 keeps
/// the gap well under one percent.
#[test]
fn lowest_mode_is_close_to_thin_plate_bending() {
    let mp = foam();
    let e = mp.mu * (3.0 * mp.lambda + 2.0 * mp.mu) / (mp.lambda + mp.mu);
    let nu = mp.lambda / (2.0 * (mp.lambda + mp.mu));
    let (a, h) = (3.0f64, 0.1f64);
    let d = e * h.powi(3) / (12.0 * (1.0 - nu * nu));
    let k2 = 2.0 * (PI / a).powi(2);
    let kirchhoff = k2 * (d / (mp.rho * h)).sqrt() / (2.0 * PI);
    let f = freqs(&mp, &MicroInertia::diagonal(1e-3, 1e-3, 1e-3), 24, 1)[0];
    let gap = (kirchhoff - f) / kirchhoff;
    assert!(gap > 0.0 && gap < 0.01, "3D {f} vs Kirchhoff {kirchhoff}");
}

#[test]
fn inertia_scaling() {
    let j = MicroInertia::diagonal(1e-3, 1e-3, 2e-3);
    let base = freqs(&foam(), &j, 16, 5);
    for c in [0.25, 3.0] {
        let mp = MaterialParams { rho: foam().rho * c, ..foam() };
        let f = freqs(&mp, &j.scaled(c), 16, 5);
        for (x, y) in f.iter().zip(&base) {
            assert!((x * c.sqrt() / y - 1.0).abs() < 1e-8, "c={c}: {x} vs {y}");
        }
    }
}

#[test]
fn modes_satisfy_the_balance_laws() {
    let mp = foam();
    let sc = solid_coefficients(&mp, &MicroInertia::diagonal(1e-3, 1e-3, 1e-3), 3.0).unwrap();
    let grid = CollocationGrid::new(24, 0.1);
    let spec = solid_spectrum(&build_pencil(&sc, &grid).unwrap(), 6).unwrap();
    for m in &spec.modes {
        assert!(m.residual <= 1e-8);
        assert!(residual_check(m, &sc, &grid).max() <= 1e-6, "{}", m.freq_hz);
    }
}

#[test]
fn refinement_converges() {
    let j = MicroInertia::diagonal(1e-3, 1e-3, 1e-3);
    let coarse = freqs(&foam(), &j, 24, 3);
    let fine = freqs(&foam(), &j, 40, 3);
    for (x, y) in coarse.iter().zip(&fine) {
        assert!((x / y - 1.0).abs() < 1e-7, "{x} vs {y}");
    }
}
