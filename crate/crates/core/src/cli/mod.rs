//! The `cuspspec` command-line front end.
//!
//! [`parse_args`] turns an argument vector into a validated [`RunConfig`],
//! [`execute`] renders the requested artifact and [`run`] ties both together
//! and maps failures onto exit codes (0 success, 1 input or usage error,
//! 2 numerical failure).

mod descriptor;
mod emit;
mod svg;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::manifold::predicted_spectrum;
use crate::model_operator::{BoundaryCondition, BoundingBox, Grid, ModelOperator1D};
use crate::quasimode::{analyze, QuasimodeConfig};
use crate::region::ParabolicRegion;
use crate::root_datum::{known_space, RestrictedRootDatum};

pub use descriptor::{load_manifold_descriptor, parse_manifold_descriptor};
pub use emit::format_float;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Svg,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BcArg {
    Periodic,
    Dirichlet,
}

impl From<BcArg> for BoundaryCondition {
    fn from(bc: BcArg) -> Self {
        match bc {
            BcArg::Periodic => BoundaryCondition::Periodic,
            BcArg::Dirichlet => BoundaryCondition::Dirichlet,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cuspspec",
    version,
    about = "L^p spectra of rank-one cusps",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Debug, Subcommand)]
enum CommandArgs {
    /// Root-datum quantities alpha(H), |rho_P| and dim n_P.
    Rho(RhoArgs),
    /// Boundary samples of the parabolic region P_p.
    Region(RegionArgs),
    /// Quasimode ratios and their log-log decay slope.
    Quasimode(QuasimodeArgs),
    /// sigma_min(A_h - z) of the discretized model operator on a grid.
    Pseudospectrum(PseudospectrumArgs),
    /// Predicted L^p spectrum of a cusp manifold descriptor.
    Predict(PredictArgs),
}

#[derive(Debug, Args)]
struct RhoArgs {
    /// Multiplicity of the root alpha.
    #[arg(long, required_unless_present = "space")]
    m1: Option<u32>,
    /// Multiplicity of the root 2 alpha.
    #[arg(long, requires = "m1")]
    m2: Option<u32>,
    /// Named rank-one space, e.g. complex-hyperbolic(2).
    #[arg(long, conflicts_with_all = ["m1", "m2"])]
    space: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RegionArgs {
    #[arg(long, allow_negative_numbers = true)]
    p: f64,
    #[arg(long, allow_negative_numbers = true)]
    rho: f64,
    #[arg(long, default_value_t = 3.0)]
    s_max: f64,
    #[arg(long, default_value_t = 201)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct QuasimodeArgs {
    #[arg(long, allow_negative_numbers = true)]
    p: f64,
    #[arg(long, allow_negative_numbers = true)]
    s: f64,
    #[arg(long)]
    m1: u32,
    #[arg(long, default_value_t = 0)]
    m2: u32,
    /// Strictly increasing scales r_n, comma separated.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    r: Vec<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    siegel_floor: f64,
    /// Add the column C4/r + C5/r^2.
    #[arg(long)]
    bounds: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PseudospectrumArgs {
    #[arg(long, allow_negative_numbers = true)]
    p: f64,
    #[arg(long, allow_negative_numbers = true)]
    rho: f64,
    #[arg(long, default_value_t = 40.0)]
    ymax: f64,
    #[arg(long, default_value_t = 1024)]
    n: usize,
    /// re0,re1,im0,im1
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    bbox: Vec<f64>,
    #[arg(long, default_value_t = 41)]
    nx: usize,
    #[arg(long, default_value_t = 21)]
    ny: usize,
    #[arg(long, value_enum, default_value_t = BcArg::Periodic)]
    bc: BcArg,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PredictArgs {
    /// JSON descriptor with `cusps` and optional `eigenvalues`.
    #[arg(long)]
    manifold: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    p: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    /// `None` writes to standard output.
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub enum Command {
    Rho {
        datum: RestrictedRootDatum,
    },
    Region {
        region: ParabolicRegion,
        s_max: f64,
        samples: usize,
    },
    Quasimode {
        config: QuasimodeConfig,
        bounds: bool,
    },
    Pseudospectrum {
        operator: ModelOperator1D,
        bbox: BoundingBox,
        nx: usize,
        ny: usize,
    },
    Predict {
        manifold: PathBuf,
        p: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Rho { .. } => "rho",
            Command::Region { .. } => "region",
            Command::Quasimode { .. } => "quasimode",
            Command::Pseudospectrum { .. } => "pseudospectrum",
            Command::Predict { .. } => "predict",
        }
    }

    pub fn supported_formats(&self) -> &'static [OutputFormat] {
        match self {
            Command::Rho { .. } => &[OutputFormat::Text],
            Command::Region { .. } | Command::Pseudospectrum { .. } => {
                &[OutputFormat::Csv, OutputFormat::Svg]
            }
            Command::Quasimode { .. } => &[OutputFormat::Csv],
            Command::Predict { .. } => &[OutputFormat::Text, OutputFormat::Svg],
        }
    }
}

/// Why parsing stopped without a [`RunConfig`].
#[derive(Debug)]
pub enum ParseError {
    /// `--help` or `--version`; the text goes to stdout and the exit code is 0.
    Display(String),
    /// Usage error with a rendered message; exit code 1.
    Usage(String),
}

impl ParseError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ParseError::Display(_) => 0,
            ParseError::Usage(_) => 1,
        }
    }
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseError::Display(text) | ParseError::Usage(text) => f.write_str(text),
        }
    }
}

impl std::error::Error for ParseError {}

/// Parses `argv` (program name first) into a validated configuration.
pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, ParseError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        let text = e.render().to_string();
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ParseError::Display(text),
            _ => ParseError::Usage(text),
        }
    })?;
    validate(cli).map_err(|e| ParseError::Usage(format!("error: {e}\n")))
}

fn validate(cli: Cli) -> Result<RunConfig> {
    let (command, format, out) = match cli.command {
        CommandArgs::Rho(a) => {
            let datum = match a.space {
                Some(name) => known_space(&name)?,
                None => {
                    let (m1, m2) = (a.m1.unwrap_or(0), a.m2.unwrap_or(0));
                    RestrictedRootDatum::new(format!("({m1},{m2})"), m1, m2)?
                }
            };
            (Command::Rho { datum }, a.format, a.out)
        }
        CommandArgs::Region(a) => {
            require_open_exponent(a.p)?;
            let region = ParabolicRegion::new(a.p, a.rho)?;
            if !(a.s_max.is_finite() && a.s_max > 0.0) {
                return Err(Error::Input(format!(
                    "--s-max must be positive, got {}",
                    a.s_max
                )));
            }
            if a.samples < 2 {
                return Err(Error::Input(format!(
                    "--samples must be at least 2, got {}",
                    a.samples
                )));
            }
            (
                Command::Region {
                    region,
                    s_max: a.s_max,
                    samples: a.samples,
                },
                a.format,
                a.out,
            )
        }
        CommandArgs::Quasimode(a) => {
            let datum = RestrictedRootDatum::new(format!("({},{})", a.m1, a.m2), a.m1, a.m2)?;
            let config = QuasimodeConfig::new(a.p, a.s, datum, a.r, a.siegel_floor)?;
            if let Some(&r0) = config.r_schedule().first() {
                if r0 <= config.siegel_floor() {
                    return Err(Error::Config(format!(
                        "every r_n must exceed the siegel floor {}, got {r0}",
                        config.siegel_floor()
                    )));
                }
            }
            (
                Command::Quasimode {
                    config,
                    bounds: a.bounds,
                },
                a.format,
                a.out,
            )
        }
        CommandArgs::Pseudospectrum(a) => {
            require_open_exponent(a.p)?;
            if !(a.ymax.is_finite() && a.ymax > 0.0) {
                return Err(Error::Input(format!(
                    "--ymax must be positive, got {}",
                    a.ymax
                )));
            }
            let grid = Grid {
                y_min: 0.0,
                y_max: a.ymax,
                n: a.n,
            };
            let operator = ModelOperator1D::new(a.rho, a.p, grid, a.bc.into())?;
            let &[re0, re1, im0, im1] = a.bbox.as_slice() else {
                return Err(Error::Input(format!(
                    "--bbox takes four comma-separated numbers re0,re1,im0,im1, got {}",
                    a.bbox.len()
                )));
            };
            let bbox = BoundingBox::new(re0, re1, im0, im1)?;
            if a.nx < 2 || a.ny < 2 {
                return Err(Error::Input(format!(
                    "--nx and --ny must be at least 2, got {} and {}",
                    a.nx, a.ny
                )));
            }
            (
                Command::Pseudospectrum {
                    operator,
                    bbox,
                    nx: a.nx,
                    ny: a.ny,
                },
                a.format,
                a.out,
            )
        }
        CommandArgs::Predict(a) => {
            require_open_exponent(a.p)?;
            (
                Command::Predict {
                    manifold: a.manifold,
                    p: a.p,
                },
                a.format,
                a.out,
            )
        }
    };
    if !command.supported_formats().contains(&format) {
        let names: Vec<String> = command
            .supported_formats()
            .iter()
            .map(|f| format!("{f:?}").to_lowercase())
            .collect();
        return Err(Error::Input(format!(
            "`{}` cannot emit {} output (supported: {})",
            command.name(),
            format!("{format:?}").to_lowercase(),
            names.join(", ")
        )));
    }
    Ok(RunConfig {
        command,
        format,
        out,
    })
}

fn require_open_exponent(p: f64) -> Result<()> {
    if p.is_finite() && p > 1.0 {
        Ok(())
    } else {
        Err(Error::Input(format!("--p must lie in (1, inf), got {p}")))
    }
}

/// Computes the artifact described by `config` and returns its bytes.
pub fn render(config: &RunConfig) -> Result<String> {
    match (&config.command, config.format) {
        (Command::Rho { datum }, _) => Ok(emit::rho_text(datum)),
        (
            Command::Region {
                region,
                s_max,
                samples,
            },
            format,
        ) => {
            let points = region.sample_boundary(*s_max, *samples)?;
            Ok(match format {
                OutputFormat::Svg => svg::region_plot(&[(*region, points)], &[]),
                _ => emit::region_csv(&points),
            })
        }
        (Command::Quasimode { config: qc, bounds }, _) => {
            let report = analyze(qc)?;
            Ok(emit::quasimode_csv(&report, *bounds))
        }
        (
            Command::Pseudospectrum {
                operator,
                bbox,
                nx,
                ny,
            },
            format,
        ) => {
            let field = operator.pseudospectrum_grid(*bbox, *nx, *ny)?;
            Ok(match format {
                OutputFormat::Svg => svg::pseudospectrum_plot(&field, &operator.region()),
                _ => emit::pseudospectrum_csv(&field),
            })
        }
        (Command::Predict { manifold, p }, format) => {
            let descriptor = load_manifold_descriptor(manifold)?;
            let prediction = predicted_spectrum(&descriptor, *p)?;
            match format {
                OutputFormat::Svg => {
                    let s_max = prediction
                        .regions
                        .iter()
                        .map(|r| 2.0 * r.vertex().sqrt().max(1.0))
                        .fold(1.0, f64::max);
                    let curves = prediction
                        .regions
                        .iter()
                        .map(|r| Ok((*r, r.sample_boundary(s_max, 401)?)))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(svg::region_plot(&curves, &prediction.eigenvalues))
                }
                _ => Ok(emit::prediction_text(&descriptor, &prediction)),
            }
        }
    }
}

/// Renders the artifact and writes it to the configured destination.
pub fn execute(config: &RunConfig) -> Result<()> {
    let bytes = render(config)?;
    emit::write_output(config.out.as_deref(), &bytes)
}

/// Full CLI entry point; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_args(argv) {
        Ok(config) => config,
        Err(ParseError::Display(text)) => {
            print!("{text}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return e.exit_code();
        }
    };
    match execute(&config) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("cuspspec {}: {e}", config.command.name());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &str) -> std::result::Result<RunConfig, ParseError> {
        parse_args(std::iter::once("cuspspec").chain(args.split_whitespace()))
    }

    #[test]
    fn rho_from_multiplicities() {
        let cfg = parse("rho --m1 2 --m2 1").unwrap();
        match cfg.command {
            Command::Rho { datum } => assert_eq!((datum.m_alpha(), datum.m_2alpha()), (2, 1)),
            other => panic!("{other:?}"),
        }
        assert_eq!(cfg.format, OutputFormat::Text);
        assert!(cfg.out.is_none());
    }

    #[test]
    fn rho_from_named_space() {
        match parse("rho --space octonionic-plane").unwrap().command {
            Command::Rho { datum } => assert_eq!((datum.m_alpha(), datum.m_2alpha()), (8, 7)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("rho --space octonionic-plane --m1 3"),
            Err(ParseError::Usage(_))
        ));
        assert!(matches!(parse("rho"), Err(ParseError::Usage(_))));
        assert!(matches!(parse("rho --m1 0"), Err(ParseError::Usage(_))));
    }

    #[test]
    fn region_valid_and_invalid() {
        let cfg = parse("region --p 4 --rho 0.5 --s-max 3 --samples 200 --format csv").unwrap();
        match cfg.command {
            Command::Region {
                region,
                s_max,
                samples,
            } => {
                assert_eq!(region.p(), 4.0);
                assert_eq!(s_max, 3.0);
                assert_eq!(samples, 200);
            }
            other => panic!("{other:?}"),
        }
        for bad in [
            "region --p 0.5 --rho 0.5",
            "region --p 1 --rho 0.5",
            "region --p 4 --rho -1",
            "region --p 4 --rho 0.5 --samples 1",
            "region --p 4 --rho 0.5 --format text",
            "region --p 4 --rho 0.5 --colour red",
            "region --rho 0.5",
        ] {
            assert!(matches!(parse(bad), Err(ParseError::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn quasimode_schedule() {
        let cfg = parse("quasimode --p 4 --s -1 --m1 2 --r 32,64,128,256 --bounds").unwrap();
        match cfg.command {
            Command::Quasimode { config, bounds } => {
                assert_eq!(config.r_schedule(), &[32.0, 64.0, 128.0, 256.0]);
                assert_eq!(config.s(), -1.0);
                assert!(bounds);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("quasimode --p 4 --s 1 --m1 2 --r 64,32"),
            Err(ParseError::Usage(_))
        ));
        assert!(matches!(
            parse("quasimode --p 4 --s 1 --m1 2 --r 32,64 --siegel-floor 40"),
            Err(ParseError::Usage(_))
        ));
    }

    #[test]
    fn pseudospectrum_bbox() {
        let cfg = parse(
            "pseudospectrum --p 4 --rho 0.5 --n 64 --bbox -1,3,-1,1 --nx 3 --ny 3 --bc dirichlet",
        )
        .unwrap();
        match cfg.command {
            Command::Pseudospectrum { operator, bbox, .. } => {
                assert_eq!(bbox, BoundingBox::new(-1.0, 3.0, -1.0, 1.0).unwrap());
                assert_eq!(operator.boundary_condition(), BoundaryCondition::Dirichlet);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("pseudospectrum --p 4 --rho 0.5 --bbox -1,3,-1"),
            Err(ParseError::Usage(_))
        ));
        assert!(matches!(
            parse("pseudospectrum --p 4 --rho 0.5 --bbox 3,-1,-1,1"),
            Err(ParseError::Usage(_))
        ));
    }

    #[test]
    fn help_and_version_exit_zero() {
        for args in ["--help", "--version", "region --help"] {
            let err = parse(args).unwrap_err();
            assert_eq!(err.exit_code(), 0, "{args}");
        }
        assert_eq!(parse("bogus").unwrap_err().exit_code(), 1);
    }

    #[test]
    fn predict_formats() {
        assert_eq!(
            parse("predict --manifold m.json --p 4").unwrap().format,
            OutputFormat::Text
        );
        assert_eq!(
            parse("predict --manifold m.json --p 4 --format svg")
                .unwrap()
                .format,
            OutputFormat::Svg
        );
        assert!(matches!(
            parse("predict --manifold m.json --p 4 --format csv"),
            Err(ParseError::Usage(_))
        ));
        assert!(matches!(
            parse("predict --manifold m.json --p 1"),
            Err(ParseError::Usage(_))
        ));
    }
}
