use clap::{Parser, Subcommand, ValueEnum};
use micropolar::config::{parse_convention, B8Mode, Operator, RunConfig};
use micropolar_cli::{run, Command, Failure};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Micropolar plate and 3D eigenfrequency tool.
#[derive(Debug, Parser)]
#[command(name = "micropolar", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the CSV here instead of stdout (overrides [output] path).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Relative threshold for `compare` macro modes.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Off-diagonal micro-inertia convention for every inertia case.
    #[arg(long, global = true)]
    convention: Option<Convention>,
    /// Treatment of C0[3,3] in the tabulated 3D operator.
    #[arg(long, global = true)]
    b8: Option<B8>,
    /// Derived matrices or the printed ones.
    #[arg(long, global = true)]
    operator: Option<Op>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Engineering constants to Lamé-type moduli.
    Convert,
    /// Plate eigenfrequencies per shape, angle and mode index.
    PlateFreqs,
    /// Lowest 3D eigenfrequencies with a refinement drift column.
    SolidFreqs,
    /// Plate against 3D with relative errors.
    Compare,
    /// Pressure-response curve and its peaks.
    Resonance,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Convention {
    Paper,
    Tensor,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum B8 {
    Patched,
    Strict,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Op {
    Derived,
    Printed,
}

fn load(cli: &Cli) -> Result<RunConfig, Failure> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| micropolar::Error::Config("--config PATH is required".into()))?;
    let mut cfg = RunConfig::from_path(path)?;
    if let Some(c) = cli.convention {
        let conv = parse_convention(match c {
            Convention::Paper => "paper",
            Convention::Tensor => "tensor",
        })?;
        for case in &mut cfg.inertia {
            case.convention = conv;
        }
    }
    if let Some(b) = cli.b8 {
        cfg.b8 = match b {
            B8::Patched => B8Mode::Patched,
            B8::Strict => B8Mode::Strict,
        };
    }
    if let Some(o) = cli.operator {
        cfg.operator = match o {
            Op::Derived => Operator::Derived,
            Op::Printed => Operator::Printed,
        };
    }
    if let Some(t) = cli.tolerance {
        if !(t > 0.0) {
            return Err(micropolar::Error::Config("--tolerance must be positive".into()).into());
        }
        cfg.tolerance = t;
    }
    if let Some(o) = &cli.out {
        cfg.output = Some(o.clone());
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cmd = match cli.cmd {
        Cmd::Convert => Command::Convert,
        Cmd::PlateFreqs => Command::PlateFreqs,
        Cmd::SolidFreqs => Command::SolidFreqs,
        Cmd::Compare => Command::Compare,
        Cmd::Resonance => Command::Resonance,
    };
    let result = load(&cli).and_then(|cfg| {
        let out = run(cmd, &cfg, cli.threads)?;
        match &cfg.output {
            Some(p) => std::fs::write(p, &out.csv).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(out.csv.as_bytes())
                    .and_then(|_| stdout.flush())
                    .map_err(|e| Failure::Io(e.to_string()))?;
            }
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            match &out.breach {
                Some(b) => {
                    eprintln!("error: {b}");
                    ExitCode::from(4)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
