//! Command-line front end: parameter entry, spectrum and eigenfunction tables,
//! figure data, and the verification suite.

mod modes;
mod output;
mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::dirac::FamilyTag;
use crate::error::Error;
use crate::params::{DiracParams, NRParams, PhysicalParams};

pub use output::{format_float, Cell, Report, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Reserved for randomized drivers; the core never reads it.
pub const SEED_ENV: &str = "SUSY_LADDER_SEED";

pub const FIG2_PARAMS: (f64, f64) = (1.5, 0.5);
pub const FIG3_PARAMS: (f64, f64, f64, f64) = (1.0, 2.0, 1.0, 0.1);
pub const DEFAULT_SAMPLES: usize = 512;
pub const DEFAULT_LEVELS: u32 = 3;
pub const DEFAULT_TOLERANCE: f64 = 1e-11;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Library(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Library(_) => EXIT_CONFIG,
            CliError::Io(_) | CliError::Csv(_) => EXIT_RUNTIME,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    NrSpectrum,
    NrEigenfunctions,
    DiracSpectrum,
    DiracEigenfunctions,
    Fig2,
    Fig3,
    Verify,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::NrSpectrum => "nr-spectrum",
            Mode::NrEigenfunctions => "nr-eigenfunctions",
            Mode::DiracSpectrum => "dirac-spectrum",
            Mode::DiracEigenfunctions => "dirac-eigenfunctions",
            Mode::Fig2 => "fig2",
            Mode::Fig3 => "fig3",
            Mode::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Exact SUSY hierarchies for the Schrodinger and Dirac equations in the
/// field A = (ck/e rho) z.
#[derive(Debug, Parser)]
#[command(name = "susy-ladder", version)]
pub struct Args {
    #[arg(value_enum)]
    pub mode: Mode,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub d0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mbar: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub hbar: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub e: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub pz: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub ell: Option<f64>,
    /// Number of levels per family (n = 0..N-1).
    #[arg(long)]
    pub levels: Option<u32>,
    /// Comma-separated subset of a,b,c,d.
    #[arg(long, value_delimiter = ',')]
    pub families: Option<Vec<String>>,
    /// Sample count for eigenfunction tables, finite-difference points for verify.
    #[arg(long)]
    pub grid_points: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub rho_max: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Coefficient tolerance for the symbolic checks of verify.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParamInput {
    /// Nothing supplied: NR modes use the Fig. 2 regime, Dirac modes the Fig. 3 regime.
    FigureDefaults,
    Dimensionless {
        a: f64,
        b: f64,
        d0: Option<f64>,
        mbar: Option<f64>,
    },
    Physical(PhysicalParams),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub params: ParamInput,
    pub levels: u32,
    pub families: Vec<FamilyTag>,
    pub grid_points: Option<usize>,
    pub rho_max: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub tolerance: f64,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn from_args(args: Args) -> Result<Self, CliError> {
        let dimensionless = [args.a, args.b, args.d0, args.mbar];
        let physical = [args.hbar, args.m, args.c, args.e, args.k, args.pz, args.ell];
        let any_dimless = dimensionless.iter().any(Option::is_some);
        let any_phys = physical.iter().any(Option::is_some);
        let params = match (any_dimless, any_phys) {
            (true, true) => {
                return Err(config_err(
                    "give either --a/--b/--d0/--mbar or physical parameters, not both",
                ))
            }
            (false, true) => match physical {
                [Some(hbar), Some(m), Some(c), Some(e), Some(k), Some(pz), Some(ell)] => {
                    ParamInput::Physical(PhysicalParams::new(hbar, m, c, e, k, pz, ell)?)
                }
                _ => {
                    return Err(config_err(
                        "physical input needs all of --hbar --m --c --e --k --pz --ell",
                    ))
                }
            },
            (true, false) => {
                let (Some(a), Some(b)) = (args.a, args.b) else {
                    return Err(config_err("dimensionless input needs both --a and --b"));
                };
                if args.d0.is_some() != args.mbar.is_some() {
                    return Err(config_err("--d0 and --mbar must be given together"));
                }
                ParamInput::Dimensionless {
                    a,
                    b,
                    d0: args.d0,
                    mbar: args.mbar,
                }
            }
            (false, false) => ParamInput::FigureDefaults,
        };
        let levels = args.levels.unwrap_or(DEFAULT_LEVELS);
        if levels == 0 {
            return Err(config_err("--levels must be at least 1"));
        }
        let families = match args.families {
            Some(list) => {
                let mut tags = Vec::new();
                for s in list {
                    let tag: FamilyTag = s.parse()?;
                    if !tags.contains(&tag) {
                        tags.push(tag);
                    }
                }
                if tags.is_empty() {
                    return Err(config_err("--families is empty"));
                }
                tags
            }
            None if args.mode == Mode::Fig3 => vec![FamilyTag::A, FamilyTag::C],
            None => FamilyTag::ALL.to_vec(),
        };
        if let Some(rho_max) = args.rho_max {
            if !(rho_max > 0.0 && rho_max.is_finite()) {
                return Err(config_err(format!(
                    "--rho-max must be positive, got {rho_max}"
                )));
            }
        }
        if let Some(points) = args.grid_points {
            if points < 2 {
                return Err(config_err("--grid-points must be at least 2"));
            }
        }
        let tolerance = args.tolerance.unwrap_or(DEFAULT_TOLERANCE);
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(config_err(format!(
                "--tolerance must be positive, got {tolerance}"
            )));
        }
        Ok(Self {
            mode: args.mode,
            params,
            levels,
            families,
            grid_points: args.grid_points,
            rho_max: args.rho_max,
            format: args.format,
            out: args.out,
            tolerance,
        })
    }

    pub fn nr_params(&self) -> Result<NRParams, CliError> {
        match &self.params {
            ParamInput::FigureDefaults => Ok(NRParams::new(FIG2_PARAMS.0, FIG2_PARAMS.1)?),
            ParamInput::Dimensionless { a, b, .. } => Ok(NRParams::new(*a, *b)?),
            ParamInput::Physical(p) => Ok(p.to_nr()?),
        }
    }

    pub fn dirac_params(&self) -> Result<DiracParams, CliError> {
        match &self.params {
            ParamInput::FigureDefaults => {
                let (a, b, d0, mbar) = FIG3_PARAMS;
                Ok(DiracParams::new(a, b, d0, mbar)?)
            }
            ParamInput::Dimensionless {
                a,
                b,
                d0: Some(d0),
                mbar: Some(mbar),
            } => Ok(DiracParams::new(*a, *b, *d0, *mbar)?),
            ParamInput::Dimensionless { .. } => Err(config_err("Dirac modes need --d0 and --mbar")),
            ParamInput::Physical(p) => Ok(p.to_dirac()?),
        }
    }

    pub fn physical(&self) -> Option<&PhysicalParams> {
        match &self.params {
            ParamInput::Physical(p) => Some(p),
            _ => None,
        }
    }

    /// Whether Dirac parameters are available without error.
    pub fn has_dirac_params(&self) -> bool {
        !matches!(self.params, ParamInput::Dimensionless { d0: None, .. })
    }

    /// Echo of the configuration for the JSON `meta` object.
    pub fn meta(&self) -> Map<String, Value> {
        let mut meta = Map::new();
        meta.insert("mode".into(), self.mode.name().into());
        let mut params = Map::new();
        match &self.params {
            ParamInput::FigureDefaults => {
                params.insert("style".into(), "figure-defaults".into());
                let (a, b) = FIG2_PARAMS;
                let nr: Map<String, Value> = [("a", a), ("b", b)]
                    .map(|(k, v)| (k.to_string(), output::float_value(v)))
                    .into_iter()
                    .collect();
                let (a, b, d0, mbar) = FIG3_PARAMS;
                let dirac: Map<String, Value> = [("a", a), ("b", b), ("d0", d0), ("mbar", mbar)]
                    .map(|(k, v)| (k.to_string(), output::float_value(v)))
                    .into_iter()
                    .collect();
                params.insert("nr".into(), Value::Object(nr));
                params.insert("dirac".into(), Value::Object(dirac));
            }
            ParamInput::Dimensionless { a, b, d0, mbar } => {
                params.insert("style".into(), "dimensionless".into());
                params.insert("a".into(), output::float_value(*a));
                params.insert("b".into(), output::float_value(*b));
                if let (Some(d0), Some(mbar)) = (d0, mbar) {
                    params.insert("d0".into(), output::float_value(*d0));
                    params.insert("mbar".into(), output::float_value(*mbar));
                }
            }
            ParamInput::Physical(p) => {
                params.insert("style".into(), "physical".into());
                for (name, v) in [
                    ("hbar", p.hbar),
                    ("m", p.m),
                    ("c", p.c),
                    ("e", p.e),
                    ("k", p.k),
                    ("pz", p.pz),
                    ("ell", p.ell),
                ] {
                    params.insert(name.into(), output::float_value(v));
                }
            }
        }
        meta.insert("parameters".into(), Value::Object(params));
        meta.insert("levels".into(), self.levels.into());
        let fams: Vec<Value> = self
            .families
            .iter()
            .map(|f| Value::from(f.to_string()))
            .collect();
        meta.insert("families".into(), Value::Array(fams));
        meta.insert(
            "grid_points".into(),
            self.grid_points.map_or(Value::Null, Value::from),
        );
        meta.insert(
            "rho_max".into(),
            self.rho_max.map_or(Value::Null, output::float_value),
        );
        meta.insert("tolerance".into(), output::float_value(self.tolerance));
        meta
    }
}

/// Outcome of a run: the rendered document and whether every check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub document: String,
    pub passed: bool,
    pub summary: Vec<String>,
}

pub fn build_report(config: &RunConfig) -> Result<(Report, Vec<String>, bool), CliError> {
    match config.mode {
        Mode::NrSpectrum => Ok((modes::nr_spectrum(config)?, Vec::new(), true)),
        Mode::NrEigenfunctions | Mode::Fig2 => {
            Ok((modes::nr_eigenfunctions(config)?, Vec::new(), true))
        }
        Mode::DiracSpectrum => Ok((modes::dirac_spectrum(config)?, Vec::new(), true)),
        Mode::DiracEigenfunctions | Mode::Fig3 => {
            Ok((modes::dirac_eigenfunctions(config)?, Vec::new(), true))
        }
        Mode::Verify => verify::run(config),
    }
}

pub fn run(config: &RunConfig) -> Result<RunOutput, CliError> {
    let (report, summary, passed) = build_report(config)?;
    let document = match config.format {
        Format::Csv => report.to_csv()?,
        Format::Json => report.to_json(),
    };
    Ok(RunOutput {
        document,
        passed,
        summary,
    })
}

/// Parse, run, write output and return the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let result = RunConfig::from_args(args).and_then(|config| {
        let output = run(&config)?;
        match &config.out {
            Some(path) => std::fs::write(path, &output.document)?,
            None => std::io::stdout().write_all(output.document.as_bytes())?,
        }
        Ok(output)
    });
    match result {
        Ok(output) => {
            for line in &output.summary {
                eprintln!("{line}");
            }
            if output.passed {
                EXIT_OK
            } else {
                EXIT_VERIFY
            }
        }
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
