use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_micropolar"))
}

fn bundled(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn run(args: &[&str], config: &Path) -> Output {
    bin().args(args).arg("--config").arg(config).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// A bundled config with text substitutions, written to a temp file.
fn variant(base: &str, edits: &[(&str, &str)]) -> tempfile::NamedTempFile {
    let mut text = std::fs::read_to_string(bundled(base)).unwrap();
    for (from, to) in edits {
        assert!(text.contains(from), "{from} not in {base}");
        text = text.replace(from, to);
    }
    let f = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
    std::fs::write(f.path(), text).unwrap();
    f
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn convert_reports_the_six_moduli() {
    let o = run(&["convert"], &bundled("shapes.toml"));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = stdout(&o);
    let want = [
        ("lambda", 762.616e6),
        ("mu", 103.993e6),
        ("alpha", 4.333e6),
        ("beta", 39.975),
        ("gamma", 39.975),
        ("epsilon", 4.505),
    ];
    let table = rows(&csv);
    assert_eq!(table[0], ["name", "value", "unit"]);
    for (name, v) in want {
        let row = table.iter().find(|r| r[0] == name).unwrap();
        let got: f64 = row[1].parse().unwrap();
        assert!((got - v).abs() <= 5e-4 * v, "{name}: {got} vs {v}");
    }
}

#[test]
fn zero_n2_warns_about_reciprocal_form() {
    let cfg = variant("plate_vs_solid.toml", &[("N2 = { value = 0.04", "N2 = { value = 0.0")]);
    let o = run(&["convert"], cfg.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("alpha = 0"), "{}", stderr(&o));
    assert!(stderr(&o).contains("reciprocal"));
}

#[test]
fn missing_unit_tag_is_a_config_error() {
    let cfg = variant("shapes.toml", &[(r#"nu = { value = 0.44, unit = "1" }"#, "nu = { value = 0.44 }")]);
    let o = run(&["convert"], cfg.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn unknown_key_is_a_config_error() {
    let cfg = variant("plate_vs_solid.toml", &[("[solid]", "[solid]\nwidth = 3")]);
    assert_eq!(run(&["solid-freqs"], cfg.path()).status.code(), Some(2));
}

#[test]
fn invalid_constant_names_the_invariant() {
    let cfg = variant("plate_vs_solid.toml", &[("nu = { value = 0.44", "nu = { value = 0.6")]);
    let o = run(&["convert"], cfg.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nu"), "{}", stderr(&o));
}

#[test]
fn missing_config_flag_is_a_config_error() {
    let o = bin().arg("convert").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn plate_rows_have_the_documented_columns() {
    let o = run(&["plate-freqs"], &bundled("shapes.toml"));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t = rows(&stdout(&o));
    assert_eq!(t.len(), 4);
    assert_eq!(&t[0][..4], ["case", "theta_deg", "n", "m"]);
    assert_eq!(t[0].len(), 4 + 18 + 18);
    for r in &t[1..] {
        let f: Vec<f64> = r[4..22].iter().map(|s| s.parse().unwrap()).collect();
        assert!(f.windows(2).all(|w| w[0] <= w[1]), "not ascending: {f:?}");
        assert!(r[22..].iter().all(|l| !l.is_empty()));
    }
}

#[test]
fn reflected_angles_give_identical_multisets() {
    let cfg = variant("rotated.toml", &[("[0, 10, 20, 30, 40, 45, 50, 60, 70, 80, 90]", "[10, 80]")]);
    let t = rows(&stdout(&run(&["plate-freqs"], cfg.path())));
    let f = |r: &Vec<String>| -> Vec<f64> { r[4..22].iter().map(|s| s.parse().unwrap()).collect() };
    let (a, b) = (f(&t[1]), f(&t[2]));
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() <= 1e-6 * x.abs().max(1.0), "{x} vs {y}");
    }
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let cfg = bundled("rotated.toml");
    let one = run(&["plate-freqs", "--threads", "1"], &cfg);
    let four = run(&["plate-freqs", "--threads", "4"], &cfg);
    let again = run(&["plate-freqs", "--threads", "4"], &cfg);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);
    assert!(!stdout(&one).contains('\r'));
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("conv.csv");
    let o = bin()
        .args(["convert", "--config"])
        .arg(bundled("shapes.toml"))
        .arg("--out")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().starts_with("name,value,unit\n"));
}

#[test]
fn printed_plate_route_is_a_numerical_failure() {
    let o = run(&["plate-freqs", "--operator", "printed"], &bundled("shapes.toml"));
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("sign"), "{}", stderr(&o));
}

#[test]
fn solid_needs_a_diagonal_inertia() {
    let o = run(&["solid-freqs"], &bundled("rotated.toml"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solid_drift_column_is_small() {
    // Sixteen nodes do not yet resolve the couple-stress boundary layers
    // (flexural drift 4.5e-6 against 32); 24 does.
    let cfg = variant("plate_vs_solid.toml", &[("nodes = 32", "nodes = 24"), ("count = 10", "count = 5")]);
    let o = run(&["solid-freqs"], cfg.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t = rows(&stdout(&o));
    assert_eq!(t[0], ["case", "theta_deg", "n", "m", "group", "k", "freq_hz", "drift"]);
    assert_eq!(t.len(), 6);
    for r in &t[1..] {
        let drift: f64 = r[7].parse().unwrap();
        assert!(drift < 1e-6, "{r:?}");
        assert_eq!(r[4], "coupled");
    }
}

#[test]
fn alpha_zero_solid_modes_come_in_two_groups() {
    let cfg = variant(
        "plate_vs_solid.toml",
        &[("N2 = { value = 0.04", "N2 = { value = 0.0"), ("nodes = 32", "nodes = 16")],
    );
    let o = run(&["solid-freqs"], cfg.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let groups: Vec<String> = rows(&stdout(&o))[1..].iter().map(|r| r[4].clone()).collect();
    let first_rot = groups.iter().position(|g| g == "rotation").expect("rotation group");
    assert!(first_rot > 0);
    assert!(groups[..first_rot].iter().all(|g| g == "displacement"));
    assert!(groups[first_rot..].iter().all(|g| g == "rotation"));
}

#[test]
fn compare_threshold_drives_the_exit_code() {
    let cfg = variant("plate_vs_solid.toml", &[("nodes = 32", "nodes = 16")]);
    let loose = run(&["compare", "--tolerance", "1e6"], cfg.path());
    assert_eq!(loose.status.code(), Some(0), "{}", stderr(&loose));
    let tight = run(&["compare", "--tolerance", "1e-9"], cfg.path());
    assert_eq!(tight.status.code(), Some(4));
    // The report is still written; only the status column moves.
    let strip = |o: &Output| -> Vec<Vec<String>> { rows(&stdout(o)).into_iter().map(|r| r[..8].to_vec()).collect() };
    assert_eq!(strip(&loose), strip(&tight));
    assert!(stdout(&tight).contains(",exceeds\n"));
    assert!(stdout(&tight).starts_with("case,theta_deg,n,m,class,plate_hz,solid_hz,rel_error,status\n"));
}

#[test]
fn resonance_window_without_modes_still_emits_the_curve() {
    let cfg = variant("resonance.toml", &[("nodes = 32", "nodes = 16"), ("steps = 200", "steps = 50")]);
    let o = run(&["resonance"], cfg.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t = rows(&stdout(&o));
    assert_eq!(t.iter().filter(|r| r[4] == "curve").count(), 50);
    assert_eq!(t.iter().filter(|r| r[4] == "peak").count(), 0);
}

#[test]
fn resonance_around_the_lowest_mode_gives_one_matched_peak() {
    let cfg = variant(
        "resonance.toml",
        &[
            ("nodes = 32", "nodes = 16"),
            (r#"f_lo = { value = 0.2, unit = "Hz" }"#, r#"f_lo = { value = 30.0, unit = "Hz" }"#),
            (r#"f_hi = { value = 25.0, unit = "Hz" }"#, r#"f_hi = { value = 36.0, unit = "Hz" }"#),
            ("steps = 200", "steps = 61"),
        ],
    );
    let o = run(&["resonance"], cfg.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t = rows(&stdout(&o));
    let peaks: Vec<&Vec<String>> = t.iter().filter(|r| r[4] == "peak").collect();
    assert_eq!(peaks.len(), 1, "{t:?}");
    let p = peaks[0];
    let (f, e): (f64, f64) = (p[5].parse().unwrap(), p[7].parse().unwrap());
    assert!((f - e).abs() <= 0.1, "{f} vs {e}");
    assert_eq!(p[9], "");
}

#[test]
fn resonance_needs_a_window() {
    let o = run(&["resonance"], &bundled("plate_vs_solid.toml"));
    assert_eq!(o.status.code(), Some(2));
}
