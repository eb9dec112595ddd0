//! Command-line front end.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::cc::{cc_residual, dziobek_residual, mass_map};
use crate::domain::{MassTriple, ReducedShape, Region};
use crate::error::KiteError;
use crate::export::{fmt_float, write_csv, write_json, write_svg, ScanMeta};
use crate::index::{f_value, hessian_report};
use crate::scan::{mass_lines, scan_region_with, trace_degeneracy_curve, What};
use crate::solver::{solve_concave, solve_convex, SolveResult};
use crate::stability::{
    boundary_point, interior_grid, psi_limit_estimate, shape_stability, BoundaryOptions, DEFAULT_GAP_TOL,
    DEFAULT_REAL_TOL,
};

#[derive(Parser, Debug)]
#[command(name = "kite", version, about = "Kite central configurations of the four-body problem")]
struct Cli {
    /// Real-part threshold for the stability classification.
    #[arg(long, global = true, default_value_t = DEFAULT_REAL_TOL)]
    real_tol: f64,
    /// Minimum gap between distinct imaginary parts.
    #[arg(long, global = true, default_value_t = DEFAULT_GAP_TOL)]
    gap_tol: f64,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum KiteType {
    Convex,
    Concave,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find kite central configurations for given masses.
    Solve {
        #[arg(long = "type", value_enum, default_value_t = KiteType::Convex)]
        kind: KiteType,
        #[arg(long)]
        m1: f64,
        #[arg(long)]
        m3: f64,
    },
    /// Masses that make a reduced shape central.
    Massmap {
        #[arg(long, allow_hyphen_values = true)]
        xhat: f64,
        #[arg(long, allow_hyphen_values = true)]
        yhat: f64,
    },
    /// Modified-Hessian data and Morse index sign at a shape.
    Index {
        #[arg(long, allow_hyphen_values = true)]
        xhat: f64,
        #[arg(long, allow_hyphen_values = true)]
        yhat: f64,
    },
    /// Spectrum of the reduced linearization at a shape.
    Stability {
        #[arg(long, allow_hyphen_values = true)]
        xhat: f64,
        #[arg(long, allow_hyphen_values = true)]
        yhat: f64,
    },
    /// Grid scan of a region.
    Scan {
        #[arg(long)]
        region: Region,
        #[arg(long, default_value_t = 300)]
        grid: usize,
        #[arg(long, default_value = "index")]
        what: What,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Sample the mass map along this many vertical lines instead of a grid.
        #[arg(long)]
        lines: Option<usize>,
    },
    /// Trace the curve of degenerate concave configurations.
    TraceDegeneracy {
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
    /// Trace the boundary of the stable strip in the convex region.
    TraceStabilityBoundary {
        #[arg(long, default_value_t = 300)]
        grid: usize,
    },
    /// ψ along the stability boundary and its infimum estimate.
    PsiProfile {
        #[arg(long, default_value_t = 300)]
        grid: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<KiteError> for Failure {
    fn from(e: KiteError) -> Self {
        match e {
            KiteError::InvalidArgument(msg) => Failure::Usage(msg),
            e => Failure::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(format!("i/o: {e}"))
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Parses `argv` (program name first) and runs it; returns the exit code.
pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let msg = e.to_string();
                    let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
                    let _ = writeln!(err, "error: {first}");
                    2
                }
            };
        }
    };
    let result = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                let r = dispatch(&cli, &mut w);
                r.and_then(|_| w.flush().map_err(Failure::from))
            }
            Err(e) => Err(Failure::from(e)),
        },
        None => dispatch(&cli, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

/// Runs the CLI against the process's stdout and stderr.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn shape_arg(xhat: f64, yhat: f64) -> std::result::Result<ReducedShape, Failure> {
    Ok(ReducedShape::new(xhat, yhat)?)
}

fn check_tols(cli: &Cli) -> CliResult {
    if !(cli.real_tol > 0.0 && cli.gap_tol > 0.0) {
        return Err(Failure::Usage("tolerances must be positive".into()));
    }
    Ok(())
}

fn write_solutions(masses: MassTriple, res: &SolveResult, out: &mut dyn Write) -> CliResult {
    writeln!(out, "xhat,yhat,region,residual,dziobek")?;
    for s in res.iter() {
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_float(s.shape.xhat),
            fmt_float(s.shape.yhat),
            s.region,
            fmt_float(s.residual),
            fmt_float(dziobek_residual(s.shape, masses))
        )?;
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult {
    check_tols(cli)?;
    match &cli.command {
        Command::Solve { kind, m1, m3 } => {
            let masses = MassTriple::from_m1_m3(*m1, *m3)?;
            let res = match kind {
                KiteType::Convex => solve_convex(masses)?,
                KiteType::Concave => solve_concave(masses),
            };
            write_solutions(masses, &res, out)
        }
        Command::Massmap { xhat, yhat } => {
            let m = mass_map(shape_arg(*xhat, *yhat)?)?;
            writeln!(out, "m1,m3,m")?;
            writeln!(out, "{},{},{}", fmt_float(m.m1), fmt_float(m.m3), fmt_float(m.m))?;
            Ok(())
        }
        Command::Index { xhat, yhat } => {
            let shape = shape_arg(*xhat, *yhat)?;
            let masses = mass_map(shape)?;
            let rep = hessian_report(shape, masses);
            let res = cc_residual(shape, masses);
            writeln!(out, "m1,m3,m,lambda_hat,product,F,index,residual")?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                fmt_float(masses.m1),
                fmt_float(masses.m3),
                fmt_float(masses.m),
                fmt_float(rep.lambda_hat),
                fmt_float(rep.product),
                fmt_float(f_value(shape)),
                rep.index_sign,
                fmt_float(res.max_abs())
            )?;
            Ok(())
        }
        Command::Stability { xhat, yhat } => {
            let shape = shape_arg(*xhat, *yhat)?;
            let rep = shape_stability(shape, cli.real_tol, cli.gap_tol)?;
            let (c, r, i) = rep.klass;
            writeln!(out, "n_complex,n_real,n_imag,max_real,stable")?;
            writeln!(out, "{c},{r},{i},{},{}", fmt_float(rep.max_real), u8::from(rep.stable))?;
            writeln!(out, "re,im")?;
            for e in &rep.eigenvalues {
                writeln!(out, "{},{}", fmt_float(e.re), fmt_float(e.im))?;
            }
            Ok(())
        }
        Command::Scan {
            region,
            grid,
            what,
            format,
            lines,
        } => {
            if !region.is_open_region() {
                return Err(Failure::Usage(format!("region {region} cannot be scanned")));
            }
            let rows = match lines {
                Some(l) => {
                    if *what != What::Masses {
                        return Err(Failure::Usage("--lines requires --what masses".into()));
                    }
                    mass_lines(*region, *l, *grid)?
                }
                None => scan_region_with(*region, *grid, *what, cli.real_tol, cli.gap_tol)?,
            };
            match format {
                Format::Csv => write_csv(&rows, out)?,
                Format::Json => {
                    let meta = ScanMeta::new(*region, *grid, *what, cli.real_tol, cli.gap_tol);
                    write_json(&meta, &rows, out)?
                }
                Format::Svg => write_svg(*region, *what, &rows, out)?,
            }
            Ok(())
        }
        Command::TraceDegeneracy { step } => {
            let curve = trace_degeneracy_curve(*step)?;
            writeln!(out, "xhat,yhat,F,m1,m3,m")?;
            for p in curve {
                let masses = mass_map(p).ok();
                let field = |f: fn(&MassTriple) -> f64| masses.as_ref().map(f).map(fmt_float).unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    fmt_float(p.xhat),
                    fmt_float(p.yhat),
                    fmt_float(f_value(p)),
                    field(|m| m.m1),
                    field(|m| m.m3),
                    field(|m| m.m)
                )?;
            }
            Ok(())
        }
        Command::TraceStabilityBoundary { grid } => {
            if *grid == 0 {
                return Err(Failure::Usage("grid must be positive".into()));
            }
            let opts = boundary_opts(cli);
            writeln!(out, "xhat,yhat,psi,status")?;
            for (x, p) in boundary_rows(*grid, &opts) {
                match p {
                    Ok(p) => writeln!(out, "{},{},{},ok", fmt_float(p.xhat), fmt_float(p.yhat), fmt_float(p.psi))?,
                    Err(e) => writeln!(out, "{},,,{}", fmt_float(x), status_of(&e))?,
                }
            }
            Ok(())
        }
        Command::PsiProfile { grid } => {
            if *grid == 0 {
                return Err(Failure::Usage("grid must be positive".into()));
            }
            let opts = boundary_opts(cli);
            writeln!(out, "xhat,psi")?;
            for (x, p) in boundary_rows(*grid, &opts) {
                match p {
                    Ok(p) => writeln!(out, "{},{}", fmt_float(p.xhat), fmt_float(p.psi))?,
                    Err(_) => writeln!(out, "{},", fmt_float(x))?,
                }
            }
            let inf = psi_limit_estimate(1e-4, &opts)?;
            writeln!(out, "inf_psi,{}", fmt_float(inf))?;
            Ok(())
        }
    }
}

fn boundary_opts(cli: &Cli) -> BoundaryOptions {
    BoundaryOptions {
        real_tol: cli.real_tol,
        gap_tol: cli.gap_tol,
        ..BoundaryOptions::default()
    }
}

fn boundary_rows(
    grid: usize,
    opts: &BoundaryOptions,
) -> Vec<(f64, crate::error::Result<crate::stability::BoundaryPoint>)> {
    use rayon::prelude::*;
    interior_grid(grid)
        .into_par_iter()
        .map(|x| (x, boundary_point(x, opts)))
        .collect()
}

fn status_of(e: &KiteError) -> &'static str {
    match e {
        KiteError::BracketFailure { reason, .. } if reason.starts_with("inset") => "inset-unstable",
        KiteError::BracketFailure { reason, .. } if reason.starts_with("window") => "window-stable",
        _ => "failed",
    }
}
