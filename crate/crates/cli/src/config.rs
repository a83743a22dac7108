use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use fieldscope::C64;

use crate::error::CliError;

/// Numerical ranges of 2x2 and 3x3 complex matrices.
#[derive(Debug, Parser)]
#[command(name = "fieldscope", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Matrix document (JSON); standard input when omitted.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Destination file; standard output when omitted.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Random samples drawn by sampling commands.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub samples: usize,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    /// Complex point as real and imaginary parts.
    #[arg(
        long,
        global = true,
        num_args = 2,
        value_names = ["RE", "IM"],
        allow_negative_numbers = true
    )]
    pub point: Option<Vec<f64>>,

    /// Parameter of the q-numerical range.
    #[arg(long, global = true)]
    pub q: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Ellipse of a 2x2 matrix.
    Nr2,
    /// Closed-form ellipse of a 3x3 matrix whose reduced form has a23 = a32 = 0.
    Nr3Ellipse,
    /// Hull of the four-parameter sampling of a 3x3 range.
    Nr3Sample,
    /// Whether --point lies in the range of a 2x2 matrix.
    Member,
    /// Unit vector h with <Ah,h> = --point for a 2x2 matrix.
    Invert,
    /// Unitary reduction of a 3x3 matrix to constant diagonal.
    ReduceDiag,
    /// C-numerical range of a pair of 2x2 matrices.
    Cnr2,
    /// Support profile and hull for a rank-one C.
    CnrRank1,
    /// q-numerical range for --q.
    Qrange,
    /// Compare every applicable closed form against sampling oracles.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

/// Validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub point: Option<C64>,
    pub q: Option<f64>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            input_path: None,
            output_path: None,
            format: Format::Json,
            samples: 10_000,
            seed: 0,
            tol: 1e-9,
            point: None,
            q: None,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.samples == 0 {
            return Err(CliError::Usage("--samples must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Usage("--tol must be positive".into()));
        }
        if let Some(q) = self.q {
            if !(0.0..=1.0).contains(&q) {
                return Err(CliError::Usage(format!("--q must lie in [0, 1], got {q}")));
            }
        }
        if let Some(p) = self.point {
            if !(p.re.is_finite() && p.im.is_finite()) {
                return Err(CliError::Usage("--point must be finite".into()));
            }
        }
        Ok(())
    }

    pub fn require_point(&self) -> Result<C64, CliError> {
        self.point
            .ok_or_else(|| CliError::Usage("this command needs --point RE IM".into()))
    }

    pub fn require_q(&self) -> Result<f64, CliError> {
        self.q
            .ok_or_else(|| CliError::Usage("this command needs --q".into()))
    }
}

impl TryFrom<Cli> for RunConfig {
    type Error = CliError;

    fn try_from(cli: Cli) -> Result<Self, CliError> {
        let point = match cli.point.as_deref() {
            None => None,
            Some([re, im]) => Some(C64::new(*re, *im)),
            Some(_) => return Err(CliError::Usage("--point takes two numbers".into())),
        };
        let config = Self {
            command: cli.command,
            input_path: cli.input,
            output_path: cli.output,
            format: cli.format,
            samples: cli.samples,
            seed: cli.seed,
            tol: cli.tol,
            point,
            q: cli.q,
        };
        config.validate()?;
        Ok(config)
    }
}
