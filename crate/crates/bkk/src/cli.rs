//! Argument parsing and dispatch. `main` only prints and exits.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::calibrate::run_calibrate;
use crate::config::{Mode, RunConfig};
use crate::error::UsageError;
use crate::gamma::run_gamma;
use crate::mellin::{self, CorpusOptions};
use crate::report::{Report, Status};
use crate::verify;

/// Environment variable naming the directory for report files.
pub const REPORT_DIR_VAR: &str = "BKK_REPORT_DIR";

#[derive(Debug, Parser)]
#[command(name = "bkk", version, about = "Gamma functions, Bessel kernels and Mellin-module checks over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the gamma table by datum and by irreducible (gl1, gl2).
    Gamma(Common),
    /// Run one check suite; nonzero exit on any failure.
    Verify {
        suite: Suite,
        #[command(flatten)]
        common: Common,
        /// Character exponents for the etheta suite, e.g. `1,4`; all
        /// characters of order dividing q - 1 when omitted.
        #[arg(long)]
        chi: Option<String>,
        /// Extension degree for the vanishing suite (2 adds GL_2(F_{q^2}) for std).
        #[arg(long, default_value_t = 1)]
        degree: u32,
        /// Seed of the descent-suite corpus.
        #[arg(long, default_value_t = CorpusOptions::default().seed)]
        seed: u64,
        /// Number of random modules in the descent-suite corpus.
        #[arg(long, default_value_t = CorpusOptions::default().size)]
        corpus: usize,
    },
    /// Search the normalization records; gl2 with standard weights.
    Calibrate {
        #[command(flatten)]
        common: Common,
        /// Search only one sign; `-1` is a negative control that must fail.
        #[arg(long, allow_hyphen_values = true)]
        restrict_sign: Option<i8>,
    },
    /// Shorthand for `verify etheta`.
    Etheta {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        chi: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Vanishing,
    Eigen,
    Packets,
    GaussProduct,
    Etheta,
    Descent,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Vanishing => "vanishing",
            Suite::Eigen => "eigen",
            Suite::Packets => "packets",
            Suite::GaussProduct => "gauss-product",
            Suite::Etheta => "etheta",
            Suite::Descent => "descent",
        }
    }

    /// Module suites have no float mode.
    pub fn forces_exact(&self) -> bool {
        matches!(self, Suite::Etheta | Suite::Descent)
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub q: String,
    /// Cocharacters joined by `;`, entries by `,`.
    #[arg(long)]
    pub weights: Option<String>,
    /// Root index of the additive character.
    #[arg(long)]
    pub psi: Option<String>,
    /// `float` or `exact`.
    #[arg(long)]
    pub mode: Option<String>,
    /// Overrides such as `eigen=1e-10,vanishing=1e-9`.
    #[arg(long)]
    pub tol: Option<String>,
    /// `SIGN,INVERT,EXPONENT`, e.g. `+1,1,-4`.
    #[arg(long, allow_hyphen_values = true)]
    pub convention: Option<String>,
    /// Report path; relative paths resolve against $BKK_REPORT_DIR when set.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include per-check runtimes (makes reports non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

impl Common {
    pub fn config(&self) -> Result<RunConfig, UsageError> {
        let mut pairs: Vec<(&str, &str)> = vec![("group", &self.group), ("q", &self.q)];
        let optional = [
            ("weights", &self.weights),
            ("psi", &self.psi),
            ("mode", &self.mode),
            ("tol", &self.tol),
            ("convention", &self.convention),
        ];
        for (name, value) in optional {
            if let Some(v) = value {
                pairs.push((name, v));
            }
        }
        RunConfig::from_flags(&pairs)
    }
}

/// A finished report and where it should go.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub destination: Option<PathBuf>,
}

impl Outcome {
    /// 0 pass, 1 failure, 3 skipped for budget.
    pub fn exit_code(&self) -> i32 {
        match self.report.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Skipped => 3,
        }
    }
}

fn default_name(command: &str, config: &RunConfig) -> String {
    format!("{command}-{}-q{}.json", config.group, config.q)
}

fn destination(common: &Common, name: &str, report_dir: Option<PathBuf>) -> Option<PathBuf> {
    match (&common.out, report_dir) {
        (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(dir.join(name)),
        (None, None) => None,
    }
}

/// Run a parsed command. `report_dir` is the value of `$BKK_REPORT_DIR`.
pub fn execute(cli: Cli, report_dir: Option<PathBuf>) -> Result<Outcome, UsageError> {
    let (common, report, label) = match cli.command {
        Command::Gamma(common) => {
            let config = common.config()?;
            let report = run_gamma(&config)?;
            let label = default_name("gamma", &config);
            (common, report, label)
        }
        Command::Calibrate { common, restrict_sign } => {
            let config = common.config()?;
            let report = run_calibrate(&config, restrict_sign)?;
            let label = default_name("calibrate", &config);
            (common, report, label)
        }
        Command::Etheta { common, chi } => {
            let mut config = common.config()?;
            config.mode = Mode::Exact;
            let mut report = Report::new("etheta", &config);
            for check in mellin::etheta(&config, chi.as_deref())? {
                report.push(check);
            }
            let label = default_name("etheta", &config);
            (common, report, label)
        }
        Command::Verify {
            suite,
            common,
            chi,
            degree,
            seed,
            corpus,
        } => {
            let mut config = common.config()?;
            if suite.forces_exact() {
                config.mode = Mode::Exact;
            }
            if chi.is_some() && suite != Suite::Etheta {
                return Err(UsageError::new("--chi only applies to the etheta suite"));
            }
            let checks = match suite {
                Suite::Vanishing => verify::vanishing(&config, degree)?,
                Suite::Eigen => verify::eigen(&config)?,
                Suite::Packets => verify::packets(&config)?,
                Suite::GaussProduct => verify::gauss_product(&config)?,
                Suite::Etheta => mellin::etheta(&config, chi.as_deref())?,
                Suite::Descent => mellin::descent(&config, CorpusOptions { seed, size: corpus })?,
            };
            let command = format!("verify {}", suite.name());
            let mut report = Report::new(command, &config);
            for check in checks {
                report.push(check);
            }
            let label = default_name(&format!("verify-{}", suite.name()), &config);
            (common, report, label)
        }
    };
    Ok(Outcome {
        report: report.finish(common.timings),
        destination: destination(&common, &label, report_dir),
    })
}

/// Parse and run; clap errors come back as their rendered text.
pub fn run_from<I, T>(args: I, report_dir: Option<PathBuf>) -> Result<Outcome, CliFailure>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(CliFailure::Parse)?;
    execute(cli, report_dir).map_err(CliFailure::Usage)
}

#[derive(Debug)]
pub enum CliFailure {
    /// Help, version, or a malformed command line.
    Parse(clap::Error),
    Usage(UsageError),
}
