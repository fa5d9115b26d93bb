//! The `wigner-well` command line: eigenstate and packet field export plus
//! the verification suites.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

use crate::analysis::count_lumps;
use crate::config::expand_config;
use crate::eigenbasis::EigenIndex;
use crate::error::{Error, Result};
use crate::export::{with_suffix, write_csv, write_pgm_pair, ExportArtifact, Metadata};
use crate::model::{PhaseSpaceGrid, WellConfig, WignerField};
use crate::oracle::{marginal_p, marginal_x};
use crate::packet::{expansion_coefficients, time_scales, wigner_field_packet, GaussianPacketSpec};
use crate::verify::{self, Suite};
use crate::wigner::wigner_field_eigen;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_PLACEMENT: i32 = 4;

/// Environment variable capping the worker thread count.
pub const THREADS_VAR: &str = "WIGNER_WELL_THREADS";

#[derive(Debug, Parser)]
#[command(name = "wigner-well", version, about = "Wigner functions of the infinite square well")]
#[command(args_override_self = true)]
pub struct Cli {
    /// File of `key = value` lines supplying default flags for the subcommand
    #[arg(long, value_name = "FILE", global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wigner function of one energy eigenstate
    Eigen(EigenArgs),
    /// Time-dependent Wigner function of a Gaussian packet
    Packet(PacketArgs),
    /// Run a verification suite and report each residual
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct WellArgs {
    #[arg(long, default_value_t = 0.5)]
    pub mass: f64,
    #[arg(long, default_value_t = 1.0)]
    pub length: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
}

impl WellArgs {
    fn well(&self) -> Result<WellConfig> {
        WellConfig::new(self.mass, self.length, self.hbar)
    }
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Position nodes
    #[arg(long)]
    pub nx: Option<usize>,
    /// Momentum nodes
    #[arg(long)]
    pub np: Option<usize>,
    /// Defaults to 0
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: Option<f64>,
    /// Defaults to the well width
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: Option<f64>,
    /// Defaults to -p-max
    #[arg(long, allow_hyphen_values = true)]
    pub p_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub p_max: Option<f64>,
}

impl GridArgs {
    fn grid(&self, well: &WellConfig, nx: usize, np: usize, p_max: f64) -> Result<PhaseSpaceGrid> {
        let p_max = self.p_max.unwrap_or(p_max);
        PhaseSpaceGrid::new(
            self.x_min.unwrap_or(0.0),
            self.x_max.unwrap_or(well.length()),
            self.nx.unwrap_or(nx),
            self.p_min.unwrap_or(-p_max),
            p_max,
            self.np.unwrap_or(np),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Pgm,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output path prefix: writes <OUT>.csv, <OUT>_pos.pgm and <OUT>_neg.pgm
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Both)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct EigenArgs {
    /// Quantum number (>= 1)
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    pub well: WellArgs,
    /// Grid defaults: 201 x 201 over [0, L] x [-4 p_n, 4 p_n]
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PacketArgs {
    /// Packet centre; defaults to L/2
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
    /// Packet momentum; defaults to 40 pi hbar / L
    #[arg(long, allow_hyphen_values = true)]
    pub p0: Option<f64>,
    /// Position spread b / sqrt(2); defaults to L / 20
    #[arg(long, conflicts_with = "b")]
    pub dx0: Option<f64>,
    /// Width parameter b
    #[arg(long)]
    pub b: Option<f64>,
    /// Expansion truncation
    #[arg(long, default_value_t = crate::packet::DEFAULT_N_MAX)]
    pub n_max: u32,
    /// Absolute time; repeatable
    #[arg(long = "t", value_name = "TIME", allow_hyphen_values = true, action = clap::ArgAction::Append)]
    pub t: Vec<f64>,
    /// Time as a fraction of the revival or classical period, e.g. rev/4,
    /// 3*rev/8, cl/2; repeatable
    #[arg(long, value_name = "FRACTION", action = clap::ArgAction::Append)]
    pub t_frac: Vec<TimeFraction>,
    #[command(flatten)]
    pub well: WellArgs,
    /// Grid defaults: 201 x 401 over [0, L] x [-3 p0, 3 p0]
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
    pub suite: String,
    /// Seed for the randomly sampled checks
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    pub seed: u64,
}

/// Reference period a fractional time is measured in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Period {
    Revival,
    Classical,
}

/// `[k*]{rev|cl}[/q]`: `k q^{-1}` periods.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimeFraction {
    pub numerator: u64,
    pub period: Period,
    pub denominator: u64,
}

impl FromStr for TimeFraction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("'{s}' is not of the form [k*]rev[/q] or [k*]cl[/q]");
        let (head, denominator) = match s.split_once('/') {
            Some((h, q)) => (h, q.trim().parse::<u64>().map_err(|_| bad())?),
            None => (s, 1),
        };
        if denominator == 0 {
            return Err(format!("'{s}': denominator must be positive"));
        }
        let (numerator, unit) = match head.split_once('*') {
            Some((k, u)) => (k.trim().parse::<u64>().map_err(|_| bad())?, u.trim()),
            None => (1, head.trim()),
        };
        let period = match unit {
            "rev" => Period::Revival,
            "cl" => Period::Classical,
            _ => return Err(bad()),
        };
        Ok(Self { numerator, period, denominator })
    }
}

impl std::fmt::Display for TimeFraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let unit = match self.period {
            Period::Revival => "rev",
            Period::Classical => "cl",
        };
        if self.numerator != 1 {
            write!(f, "{}*", self.numerator)?;
        }
        write!(f, "{unit}")?;
        if self.denominator != 1 {
            write!(f, "/{}", self.denominator)?;
        }
        Ok(())
    }
}

impl TimeFraction {
    pub fn resolve(&self, t_revival: f64, t_classical: f64) -> f64 {
        let period = match self.period {
            Period::Revival => t_revival,
            Period::Classical => t_classical,
        };
        period * self.numerator as f64 / self.denominator as f64
    }
}

/// Process exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } => EXIT_IO,
        Error::PacketPlacement { .. } => EXIT_PLACEMENT,
        Error::NonConvergence { .. } => EXIT_VERIFY_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Worker count from the environment: `None` when unset.
pub fn thread_limit(value: Option<OsString>) -> std::result::Result<Option<usize>, String> {
    let Some(raw) = value else {
        return Ok(None);
    };
    let text = raw.to_string_lossy();
    match text.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(Some(n)),
        _ => Err(format!("{THREADS_VAR} must be a positive integer, got '{text}'")),
    }
}

/// Parses `argv` (program name first) and runs the command; returns the
/// process exit code.
pub fn run(argv: Vec<OsString>) -> i32 {
    let argv = match expand_config(argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let matches = match Cli::command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return EXIT_USAGE;
        }
    };
    let threads = match thread_limit(std::env::var_os(THREADS_VAR)) {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return EXIT_USAGE;
        }
    };
    let sub = matches.subcommand().map(|(_, m)| m);
    pool.install(|| match &cli.command {
        Command::Eigen(args) => report(cmd_eigen(args)),
        Command::Packet(args) => report(cmd_packet(args, sub)),
        Command::Verify(args) => cmd_verify(args),
    })
}

fn report(result: Result<Vec<ExportArtifact>>) -> i32 {
    match result {
        Ok(artifacts) => {
            for a in artifacts {
                println!("wrote {}", a.path.display());
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn kv(key: &str, value: impl ToString) -> (String, String) {
    (key.to_owned(), value.to_string())
}

fn grid_metadata(grid: &PhaseSpaceGrid, field: &WignerField) -> Metadata {
    let (x_min, x_max) = grid.x_range();
    let (p_min, p_max) = grid.p_range();
    vec![
        kv("nx", grid.nx()),
        kv("np", grid.np()),
        kv("x_min", x_min),
        kv("x_max", x_max),
        kv("p_min", p_min),
        kv("p_max", p_max),
        kv("min", field.min()),
        kv("max", field.max()),
    ]
}

fn well_metadata(well: &WellConfig) -> Metadata {
    vec![kv("mass", well.mass()), kv("length", well.length()), kv("hbar", well.hbar())]
}

fn write_outputs(base: &Path, format: Format, field: &WignerField, meta: &Metadata) -> Result<Vec<ExportArtifact>> {
    let mut out = Vec::new();
    if matches!(format, Format::Csv | Format::Both) {
        out.push(write_csv(&with_suffix(base, ".csv"), field, meta)?);
    }
    if matches!(format, Format::Pgm | Format::Both) {
        out.extend(write_pgm_pair(base, field, meta)?);
    }
    Ok(out)
}

pub fn cmd_eigen(args: &EigenArgs) -> Result<Vec<ExportArtifact>> {
    let n = EigenIndex::new(args.n)?;
    let well = args.well.well()?;
    let grid = args.grid.grid(&well, 201, 201, 4.0 * well.momentum_quantum(n.get()))?;
    let field = wigner_field_eigen(&well, n, grid);
    let mut meta = vec![kv("kind", "eigen"), kv("n", n.get())];
    meta.extend(well_metadata(&well));
    meta.extend(grid_metadata(&grid, &field));
    write_outputs(&args.output.out, args.output.format, &field, &meta)
}

/// Requested times in command-line order, as `(label, seconds)`.
fn requested_times(
    args: &PacketArgs,
    matches: Option<&ArgMatches>,
    t_revival: f64,
    t_classical: f64,
) -> Vec<(String, f64)> {
    let mut tagged: Vec<(usize, String, f64)> = Vec::new();
    let indices = |id: &str| -> Vec<usize> {
        matches.and_then(|m| m.indices_of(id)).map(|i| i.collect()).unwrap_or_default()
    };
    let t_idx = indices("t");
    for (k, &t) in args.t.iter().enumerate() {
        tagged.push((t_idx.get(k).copied().unwrap_or(k), t.to_string(), t));
    }
    let f_idx = indices("t_frac");
    for (k, frac) in args.t_frac.iter().enumerate() {
        let at = f_idx.get(k).copied().unwrap_or(usize::MAX / 2 + k);
        tagged.push((at, frac.to_string(), frac.resolve(t_revival, t_classical)));
    }
    tagged.sort_by_key(|(at, _, _)| *at);
    if tagged.is_empty() {
        return vec![("0".into(), 0.0)];
    }
    tagged.into_iter().map(|(_, label, t)| (label, t)).collect()
}

pub fn cmd_packet(args: &PacketArgs, matches: Option<&ArgMatches>) -> Result<Vec<ExportArtifact>> {
    let well = args.well.well()?;
    let reference = GaussianPacketSpec::reference(&well);
    let x0 = args.x0.unwrap_or(reference.x0);
    let p0 = args.p0.unwrap_or(reference.p0);
    let packet = match (args.b, args.dx0) {
        (Some(b), _) => GaussianPacketSpec::new(x0, p0, b)?,
        (None, Some(dx0)) => GaussianPacketSpec::from_position_spread(x0, p0, dx0)?,
        (None, None) => GaussianPacketSpec::new(x0, p0, reference.b)?,
    };
    let coeffs = expansion_coefficients(&well, &packet, args.n_max)?;
    let scales = time_scales(&well, &packet, &coeffs);
    log::info!(
        "expanded packet over n <= {} (n0 = {}), norm residual {:.1e}; T_cl = {}, T_rev = {}",
        coeffs.n_max(),
        coeffs.n0(),
        coeffs.residual(),
        scales.t_classical,
        scales.t_revival
    );
    let p_span = 3.0 * packet.p0.abs().max(well.hbar() / packet.b);
    let grid = args.grid.grid(&well, 201, 401, p_span)?;
    // fringes along p are no finer than 2 pi hbar / L; the x-lump count
    // integrates over p and aliases once the spacing gets near that
    let fringe = 2.0 * std::f64::consts::PI * well.hbar() / well.length();
    if grid.dp() > fringe / 8.0 {
        log::warn!(
            "momentum spacing {:.3} is coarse against the shortest fringe {fringe:.3}; x-lump counts may alias",
            grid.dp()
        );
    }
    let times = requested_times(args, matches, scales.t_revival, scales.t_classical);
    let width = times.len().saturating_sub(1).to_string().len().max(4);

    let mut artifacts = Vec::new();
    for (frame, (label, t)) in times.iter().enumerate() {
        log::info!("frame {frame}: evaluating {} x {} nodes at t = {t}", grid.nx(), grid.np());
        let field = wigner_field_packet(&well, &coeffs, grid, *t);
        let x_lumps = count_lumps(&marginal_x(&field));
        let p_lumps = count_lumps(&marginal_p(&field));
        let mut meta = vec![
            kv("kind", "packet"),
            kv("frame", frame),
            kv("t", t),
            kv("t_spec", label),
            kv("T_cl", scales.t_classical),
            kv("T_rev", scales.t_revival),
            kv("t0", scales.t_spreading),
            kv("x0", packet.x0),
            kv("p0", packet.p0),
            kv("b", packet.b),
            kv("n_max", coeffs.n_max()),
            kv("n0", coeffs.n0()),
            kv("residual", coeffs.residual()),
            kv("x_lumps", x_lumps),
            kv("p_lumps", p_lumps),
        ];
        meta.extend(well_metadata(&well));
        meta.extend(grid_metadata(&grid, &field));
        let base = if times.len() == 1 {
            args.output.out.clone()
        } else {
            with_suffix(&args.output.out, &format!("_{frame:0width$}"))
        };
        println!("frame {frame}: t = {t} ({label}), x-lumps = {x_lumps}, p-lumps = {p_lumps}");
        artifacts.extend(write_outputs(&base, args.output.format, &field, &meta)?);
    }
    Ok(artifacts)
}

pub fn cmd_verify(args: &VerifyArgs) -> i32 {
    let suite = Suite::from_name(&args.suite).expect("validated by the parser");
    match verify::run(suite, args.seed) {
        Ok(checks) => {
            for c in &checks {
                println!("{c}");
            }
            if checks.iter().all(|c| c.passed()) {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_VERIFY_FAILED
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_time_fractions() {
        let f: TimeFraction = "rev/4".parse().unwrap();
        assert_eq!(f, TimeFraction { numerator: 1, period: Period::Revival, denominator: 4 });
        let f: TimeFraction = "3*rev/8".parse().unwrap();
        assert_eq!((f.numerator, f.denominator), (3, 8));
        let f: TimeFraction = "cl/2".parse().unwrap();
        assert_eq!(f.period, Period::Classical);
        let f: TimeFraction = "rev".parse().unwrap();
        assert_eq!(f.resolve(2.0, 0.1), 2.0);
        assert_eq!("2*cl".parse::<TimeFraction>().unwrap().resolve(2.0, 0.1), 0.2);
        for bad in ["", "rev/0", "rev/x", "x*rev", "year/2", "1.5*rev", "-1*rev"] {
            assert!(bad.parse::<TimeFraction>().is_err(), "{bad}");
        }
        for text in ["rev/4", "3*rev/8", "cl/2", "rev", "2*cl"] {
            assert_eq!(text.parse::<TimeFraction>().unwrap().to_string(), text);
        }
    }

    #[test]
    fn thread_variable() {
        assert_eq!(thread_limit(None), Ok(None));
        assert_eq!(thread_limit(Some("8".into())), Ok(Some(8)));
        assert!(thread_limit(Some("0".into())).is_err());
        assert!(thread_limit(Some("many".into())).is_err());
        assert!(thread_limit(Some("-2".into())).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Index(0)), EXIT_USAGE);
        assert_eq!(exit_code(&Error::PacketPlacement { distance: 0.0, required: 1.0 }), EXIT_PLACEMENT);
        let io = Error::Io { path: "x".into(), source: std::io::Error::other("boom") };
        assert_eq!(exit_code(&io), EXIT_IO);
    }

    #[test]
    fn times_follow_command_line_order() {
        let argv = ["wigner-well", "packet", "--t-frac", "rev/4", "--t", "0.01", "--t-frac", "cl", "--out", "x"];
        let m = Cli::command().try_get_matches_from(argv).unwrap();
        let cli = Cli::from_arg_matches(&m).unwrap();
        let Command::Packet(args) = &cli.command else { panic!() };
        let times = requested_times(args, m.subcommand().map(|(_, s)| s), 2.0, 0.5);
        let labels: Vec<&str> = times.iter().map(|(l, _)| l.as_str()).collect();
        assert_eq!(labels, ["rev/4", "0.01", "cl"]);
        assert_eq!(times[0].1, 0.5);
        assert_eq!(times[2].1, 0.5);
    }

    #[test]
    fn later_flags_override_earlier_ones() {
        let argv = ["wigner-well", "eigen", "--n", "3", "--nx", "11", "--nx", "21", "--out", "a"];
        let cli = Cli::try_parse_from(argv).unwrap();
        let Command::Eigen(args) = cli.command else { panic!() };
        assert_eq!(args.grid.nx, Some(21));
    }

    #[test]
    fn rejects_unknown_suite() {
        assert!(Cli::try_parse_from(["wigner-well", "verify", "nope"]).is_err());
        assert!(Cli::try_parse_from(["wigner-well", "verify", "appendix-a"]).is_ok());
    }
}
