//! Batch driver behind the `micropolar` binary.
//!
//! Every command turns a [`RunConfig`] into one CSV table. Sweep points run
//! on a rayon pool; results are collected in sweep order, so the same config
//! always gives byte-identical output.

use micropolar::config::{InertiaCase, RunConfig};
use micropolar::material::{reciprocal_moduli, rotate_inertia, validate_energy_positivity, MicroInertia};
use micropolar::plate::{assemble_modal_system_with, plate_spectrum};
use micropolar::solid3d::{
    build_pencil, physical_eigenvalues, pressure_amplitude, refine_peaks, solid_coefficients_with, solid_spectrum,
    CollocationGrid,
};
use micropolar::Error;
use rayon::prelude::*;
use std::f64::consts::PI;

pub mod compare;
pub mod format;

use compare::{compare_spectra, PlateMode};
use format::sci;

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error(transparent)]
    Solver(#[from] Error),
    #[error("{0}")]
    Io(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Failure {
    /// 2 for bad input, 3 for numerical trouble.
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Solver(Error::Config(_) | Error::InvalidMaterial(_) | Error::InvalidArgument(_)) => 2,
            Failure::Solver(_) => 3,
            Failure::Io(_) | Failure::Csv(_) => 2,
        }
    }
}

/// Result of one command.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Output {
    pub csv: String,
    pub warnings: Vec<String>,
    /// Set when a comparison threshold was exceeded.
    pub breach: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Convert,
    PlateFreqs,
    SolidFreqs,
    Compare,
    Resonance,
}

pub fn run(cmd: Command, cfg: &RunConfig, threads: Option<usize>) -> Result<Output, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = threads {
        builder = builder.num_threads(k);
    }
    let pool = builder.build().map_err(|e| Failure::Io(format!("thread pool: {e}")))?;
    pool.install(|| match cmd {
        Command::Convert => convert(cfg),
        Command::PlateFreqs => plate_freqs(cfg),
        Command::SolidFreqs => solid_freqs(cfg),
        Command::Compare => compare(cfg),
        Command::Resonance => resonance(cfg),
    })
}

struct Table {
    w: csv::Writer<Vec<u8>>,
}

impl Table {
    fn new(header: &[&str]) -> Result<Self, Failure> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(header)?;
        Ok(Self { w })
    }

    fn row<I, S>(&mut self, fields: I) -> Result<(), Failure>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.w.write_record(fields)?;
        Ok(())
    }

    fn finish(self) -> Result<String, Failure> {
        let bytes = self.w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))
    }
}

/// One sweep point.
#[derive(Debug, Clone)]
struct Point<'a> {
    case: &'a InertiaCase,
    theta: f64,
    n: u32,
    m: u32,
}

impl Point<'_> {
    fn inertia(&self) -> MicroInertia {
        let c = self.case;
        rotate_inertia(c.jx, c.jy, c.jz, self.theta, c.convention)
    }

    fn keys(&self) -> Vec<String> {
        vec![
            self.case.name.clone(),
            sci(self.theta.to_degrees()),
            self.n.to_string(),
            self.m.to_string(),
        ]
    }
}

fn points(cfg: &RunConfig) -> Vec<Point<'_>> {
    let mut out = Vec::new();
    for case in &cfg.inertia {
        for &theta in &case.thetas {
            for &(n, m) in &cfg.modes {
                out.push(Point { case, theta, n, m });
            }
        }
    }
    out
}

fn convert(cfg: &RunConfig) -> Result<Output, Failure> {
    let tp = cfg
        .technical
        .as_ref()
        .ok_or_else(|| Error::Config("convert needs a [material.technical] section".into()))?;
    let mp = &cfg.material;
    let mut out = Output::default();
    if mp.alpha == 0.0 {
        out.warnings.push(format!(
            "N2 = {} gives alpha = 0: rotations decouple from displacements and the reciprocal (compliance) form is singular",
            tp.n2
        ));
    } else if let Err(e) = reciprocal_moduli(mp) {
        out.warnings.push(format!("reciprocal form unavailable: {e}"));
    }
    let mut t = Table::new(&["name", "value", "unit"])?;
    let rows = [
        ("lambda", mp.lambda, "Pa"),
        ("mu", mp.mu, "Pa"),
        ("alpha", mp.alpha, "Pa"),
        ("beta", mp.beta, "N"),
        ("gamma", mp.gamma, "N"),
        ("epsilon", mp.epsilon, "N"),
        ("rho", mp.rho, "kg/m^3"),
    ];
    for (name, v, unit) in rows {
        t.row([name.to_string(), sci(v), unit.to_string()])?;
    }
    for c in validate_energy_positivity(mp) {
        out.warnings.push(format!("energy condition fails: {}", c.as_str()));
    }
    out.csv = t.finish()?;
    Ok(out)
}

const PLATE_DOFS: usize = 18;

fn plate_freqs(cfg: &RunConfig) -> Result<Output, Failure> {
    let pts = points(cfg);
    let route = cfg.plate_route();
    let results: Vec<_> = pts
        .par_iter()
        .map(|p| {
            let sys = assemble_modal_system_with(&cfg.material, &p.inertia(), &cfg.geometry, p.n, p.m, route.clone())?;
            plate_spectrum(&sys)
        })
        .collect();
    let mut header = vec!["case".to_string(), "theta_deg".into(), "n".into(), "m".into()];
    header.extend((1..=PLATE_DOFS).map(|i| format!("f{i}_hz")));
    header.extend((1..=PLATE_DOFS).map(|i| format!("label{i}")));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut t = Table::new(&header)?;
    for (p, spec) in pts.iter().zip(results) {
        let spec = spec?;
        let mut order: Vec<usize> = (0..spec.freqs_hz.len()).collect();
        order.sort_by(|&a, &b| spec.freqs_hz[a].total_cmp(&spec.freqs_hz[b]));
        let mut row = p.keys();
        row.extend(order.iter().map(|&i| sci(spec.freqs_hz[i])));
        row.extend(order.iter().map(|&i| {
            let l = spec.labels[i];
            if l.mixed {
                format!("mixed:{}", l.class.as_str())
            } else {
                l.class.as_str().to_string()
            }
        }));
        t.row(row)?;
    }
    Ok(Output {
        csv: t.finish()?,
        ..Default::default()
    })
}

/// Lowest `count` 3D modes at `nodes` and `nodes + 16`.
struct SolidPoint {
    freqs: Vec<f64>,
    drift: Vec<f64>,
    groups: Vec<&'static str>,
}

fn solid_point(cfg: &RunConfig, p: &Point<'_>) -> Result<SolidPoint, Error> {
    let j = p.inertia();
    let sc = solid_coefficients_with(&cfg.material, &j, cfg.geometry.a, p.n, p.m, cfg.solid_variant())?;
    let h = cfg.geometry.h;
    let coarse = solid_spectrum(&build_pencil(&sc, &CollocationGrid::new(cfg.nodes, h))?, cfg.count)?;
    let fine = solid_spectrum(&build_pencil(&sc, &CollocationGrid::new(cfg.nodes + 16, h))?, cfg.count)?;
    let freqs = coarse.freqs_hz();
    let fine = fine.freqs_hz();
    let drift = freqs
        .iter()
        .enumerate()
        .map(|(i, f)| fine.get(i).map_or(f64::NAN, |g| (f - g).abs() / g.abs()))
        .collect();
    let groups = coarse
        .modes
        .iter()
        .map(|mode| {
            if cfg.material.alpha != 0.0 {
                return "coupled";
            }
            let k = mode.z.len() / 6;
            let disp = mode.z.rows(0, 3 * k).norm();
            let rot = mode.z.rows(3 * k, 3 * k).norm();
            if disp >= rot {
                "displacement"
            } else {
                "rotation"
            }
        })
        .collect();
    Ok(SolidPoint { freqs, drift, groups })
}

fn solid_freqs(cfg: &RunConfig) -> Result<Output, Failure> {
    let pts = points(cfg);
    let results: Vec<_> = pts.par_iter().map(|p| solid_point(cfg, p)).collect();
    let mut t = Table::new(&["case", "theta_deg", "n", "m", "group", "k", "freq_hz", "drift"])?;
    let mut out = Output::default();
    for (p, sp) in pts.iter().zip(results) {
        let sp = sp?;
        if sp.freqs.len() < cfg.count {
            out.warnings.push(format!(
                "{} (n={}, m={}): only {} physical modes, {} requested",
                p.case.name,
                p.n,
                p.m,
                sp.freqs.len(),
                cfg.count
            ));
        }
        let mut order: Vec<usize> = (0..sp.freqs.len()).collect();
        // At α = 0 the two decoupled problems are listed one after the other.
        order.sort_by_key(|&i| (sp.groups[i] == "rotation", i));
        for (k, &i) in order.iter().enumerate() {
            let mut row = p.keys();
            row.extend([
                sp.groups[i].to_string(),
                (k + 1).to_string(),
                sci(sp.freqs[i]),
                sci(sp.drift[i]),
            ]);
            t.row(row)?;
        }
    }
    out.csv = t.finish()?;
    Ok(out)
}

fn compare(cfg: &RunConfig) -> Result<Output, Failure> {
    let pts = points(cfg);
    let route = cfg.plate_route();
    let results: Vec<_> = pts
        .par_iter()
        .map(|p| -> Result<_, Error> {
            let sys = assemble_modal_system_with(&cfg.material, &p.inertia(), &cfg.geometry, p.n, p.m, route.clone())?;
            let spec = plate_spectrum(&sys)?;
            let plate: Vec<PlateMode> = spec
                .freqs_hz
                .iter()
                .zip(&spec.labels)
                .map(|(&f, l)| PlateMode { freq_hz: f, class: l.class })
                .collect();
            let sc = solid_coefficients_with(&cfg.material, &p.inertia(), cfg.geometry.a, p.n, p.m, cfg.solid_variant())?;
            let solid = solid_spectrum(&build_pencil(&sc, &CollocationGrid::new(cfg.nodes, cfg.geometry.h))?, cfg.count)?;
            Ok((plate, solid.freqs_hz()))
        })
        .collect();
    let mut t = Table::new(&[
        "case", "theta_deg", "n", "m", "class", "plate_hz", "solid_hz", "rel_error", "status",
    ])?;
    let mut out = Output::default();
    let mut worst: Option<(f64, String)> = None;
    for (p, r) in pts.iter().zip(results) {
        let (plate, solid) = r?;
        let rep = compare_spectra(&plate, &solid, cfg.tolerance);
        out.warnings.extend(rep.warning.iter().map(|w| format!("{}: {w}", p.case.name)));
        for row in &rep.rows {
            let status = match (row.solid_hz, row.exceeds) {
                (None, _) => "unmatched",
                (Some(_), true) => "exceeds",
                (Some(_), false) => "ok",
            };
            let mut rec = p.keys();
            rec.extend([
                row.class.as_str().to_string(),
                sci(row.plate_hz),
                row.solid_hz.map(sci).unwrap_or_default(),
                row.rel_error.map(sci).unwrap_or_default(),
                status.to_string(),
            ]);
            t.row(rec)?;
            if row.exceeds {
                let e = row.rel_error.unwrap_or(f64::INFINITY);
                if worst.as_ref().is_none_or(|(w, _)| e > *w) {
                    worst = Some((e, format!("{} {} at {} Hz", p.case.name, row.class.as_str(), sci(row.plate_hz))));
                }
            }
        }
    }
    out.csv = t.finish()?;
    out.breach = worst.map(|(e, what)| {
        format!(
            "macro-mode error {:.3}% exceeds tolerance {:.3}% ({what})",
            100.0 * e,
            100.0 * cfg.tolerance
        )
    });
    Ok(out)
}

fn resonance(cfg: &RunConfig) -> Result<Output, Failure> {
    let win = cfg
        .resonance
        .ok_or_else(|| Error::Config("resonance needs a [resonance] section".into()))?;
    let df = (win.f_hi_hz - win.f_lo_hz) / (win.steps - 1) as f64;
    let freqs: Vec<f64> = (0..win.steps).map(|i| win.f_lo_hz + df * i as f64).collect();
    let mut t = Table::new(&[
        "case", "theta_deg", "n", "m", "kind", "freq_hz", "amplitude", "eigen_hz", "mismatch_hz", "flag",
    ])?;
    let mut out = Output::default();
    for p in points(cfg) {
        let sc = solid_coefficients_with(&cfg.material, &p.inertia(), cfg.geometry.a, p.n, p.m, cfg.solid_variant())?;
        let pencil = build_pencil(&sc, &CollocationGrid::new(cfg.nodes, cfg.geometry.h))?;
        let amps = freqs
            .par_iter()
            .map(|&f| pressure_amplitude(&pencil, &sc, f).map(|a| a * win.amplitude))
            .collect::<Result<Vec<_>, _>>()?;
        for (&f, &a) in freqs.iter().zip(&amps) {
            let mut row = p.keys();
            row.extend(["curve".to_string(), sci(f), sci(a), String::new(), String::new(), String::new()]);
            t.row(row)?;
        }
        let peaks = refine_peaks(&pencil, &sc, &freqs, &amps)?;
        let eig: Vec<f64> = physical_eigenvalues(&pencil)?
            .into_iter()
            .map(|w2| w2.sqrt() / (2.0 * PI))
            .collect();
        for pk in &peaks {
            let nearest = eig
                .iter()
                .copied()
                .min_by(|a, b| (a - pk.freq_hz).abs().total_cmp(&(b - pk.freq_hz).abs()));
            let mismatch = nearest.map(|e| (pk.freq_hz - e).abs());
            let flag = match mismatch {
                Some(d) if d <= df => "",
                _ => "mismatch",
            };
            if !flag.is_empty() {
                out.warnings.push(format!(
                    "{}: peak at {:.6e} Hz is more than one step from any eigenfrequency",
                    p.case.name, pk.freq_hz
                ));
            }
            let mut row = p.keys();
            row.extend([
                "peak".to_string(),
                sci(pk.freq_hz),
                sci(pk.amplitude * win.amplitude),
                nearest.map(sci).unwrap_or_default(),
                mismatch.map(sci).unwrap_or_default(),
                flag.to_string(),
            ]);
            t.row(row)?;
        }
        // An eigenfrequency inside the window without a detected peak is
        // also worth a note; a pressure load cannot excite every mode.
        for e in eig.iter().filter(|&&e| e > win.f_lo_hz + df && e < win.f_hi_hz - df) {
            if !peaks.iter().any(|pk| (pk.freq_hz - e).abs() <= df) {
                out.warnings.push(format!(
                    "{}: eigenfrequency {:.6e} Hz shows no peak in the pressure response",
                    p.case.name, e
                ));
            }
        }
    }
    out.csv = t.finish()?;
    Ok(out)
}
