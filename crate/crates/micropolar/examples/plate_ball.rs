use micropolar::material::{MaterialParams, MicroInertia};
use micropolar::plate::{assemble_modal_system, plate_spectrum, PlateGeometry};

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
    let g = PlateGeometry { a: 3.0, h: 0.1 };
    let sys = assemble_modal_system(&mp, &MicroInertia::diagonal(1e-3, 1e-3, 1e-3), &g, 1, 1).unwrap();
    let sp = plate_spectrum(&sys).unwrap();
    for (f, l) in sp.freqs_hz.iter().zip(&sp.labels) {
        println!("{f:>14.6} {}", l.class.as_str());
    }
}
