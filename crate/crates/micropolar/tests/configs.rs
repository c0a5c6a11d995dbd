use micropolar::config::{Operator, RunConfig};
use std::path::PathBuf;

fn bundled(name: &str) -> RunConfig {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name);
    RunConfig::from_path(&path).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn every_bundled_config_loads() {
    for name in ["shapes.toml", "rotated.toml", "plate_vs_solid.toml", "resonance.toml"] {
        let cfg = bundled(name);
        assert!(cfg.material.validate().is_ok(), "{name}");
        assert_eq!(cfg.modes, vec![(1, 1)], "{name}");
        assert_eq!(cfg.operator, Operator::Derived, "{name}");
        assert!((cfg.geometry.a - 3.0).abs() < 1e-15 && (cfg.geometry.h - 0.1).abs() < 1e-15);
    }
}

#[test]
fn bundled_material_is_the_foam() {
    let mp = bundled("shapes.toml").material;
    assert!((mp.mu / 103.993e6 - 1.0).abs() < 5e-4, "{}", mp.mu);
    assert!((mp.lambda / 762.616e6 - 1.0).abs() < 5e-4, "{}", mp.lambda);
    assert_eq!(mp.rho, 34.0);
}

#[test]
fn table_configs_have_their_cases() {
    let t1 = bundled("shapes.toml");
    assert_eq!(t1.inertia.len(), 3);
    assert!(t1.inertia.iter().all(|c| c.thetas == vec![0.0]));
    let t2 = bundled("rotated.toml");
    assert_eq!(t2.inertia[0].thetas.len(), 11);
    assert!((t2.inertia[0].thetas[5] - 45f64.to_radians()).abs() < 1e-15);
    let t3 = bundled("plate_vs_solid.toml");
    assert_eq!((t3.nodes, t3.count), (32, 10));
    assert!((t3.tolerance - 0.01).abs() < 1e-15);
    let r = bundled("resonance.toml").resonance.expect("window");
    assert_eq!(r.steps, 200);
    assert!(r.f_lo_hz < r.f_hi_hz);
}
