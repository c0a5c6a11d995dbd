use micropolar::material::{MaterialParams, MicroInertia};
use micropolar::solid3d::{build_pencil, residual_check, solid_coefficients, solid_spectrum, CollocationGrid};

fn main() {
    let mp = MaterialParams {
        lambda: 762.616e6,
        mu: 103.993e6,
        alpha: 4.333e6,
        beta: 39.975,
        gamma: 39.975,
        epsilon: 4.505,
        rho: 34.0,
    };
    let sc = solid_coefficients(&mp, &MicroInertia::diagonal(1e-3, 1e-3, 1e-3), 3.0).unwrap();
    for n in [32, 48] {
        let grid = CollocationGrid::new(n, 0.1);
        let t = std::time::Instant::now();
        let pencil = build_pencil(&sc, &grid).unwrap();
        let spec = solid_spectrum(&pencil, 10).unwrap();
        println!("N={n} {:?}", t.elapsed());
        for m in &spec.modes {
            let r = residual_check(m, &sc, &grid);
            println!("{:>14.6} res {:.2e} check {:.2e} {:.2e}", m.freq_hz, m.residual, r.balance, r.traction);
        }
    }
}
