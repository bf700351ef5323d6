//! Command-line front end.
//!
//! Exit codes: 0 success, 2 input error, 3 property-verification failure,
//! 4 degenerate parameters for the closed-form Kraus construction.

pub mod documents;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::basis::orthonormal_basis;
use crate::channel::ChannelFamily;
use crate::cholesky::DEFAULT_TOL;
use crate::error::Error;
use crate::kraus::{closed_form_kraus, kraus_from_choi, KrausSet};
use crate::matrix::{DensityMatrix, HermitianMatrix};
use crate::transitions::{is_row_stochastic, transition_direct};

use documents::{
    to_json, ChannelSource, ChannelSpec, CoefficientFile, KrausDocument, KrausMetadata,
    KrausResiduals, MatrixDocument, Real, TransitionDocument, VerifyReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "diagchan",
    version,
    about = "Diagonal quantum channels: Choi matrices, Kraus operators, transition probabilities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Export the orthonormal Hermitian basis.
    Basis {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Emit the Choi matrix of a channel.
    Choi {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compute Kraus operators.
    Kraus {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, value_enum, default_value_t = Method::Cholesky)]
        method: Method,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check complete positivity and trace preservation.
    Verify {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Apply a channel to a density matrix.
    Apply {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Density matrix as a MatrixDocument JSON file.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Transition probabilities on computational basis states.
    Transition {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args)]
pub struct ChannelArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<f64>,
    /// JSON file with a coefficient array or a full channel spec object.
    #[arg(long)]
    pub coefficients: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Output file (default: standard output).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum FamilyArg {
    Depolarizing,
    TransposeDepolarizing,
    HybridDepolarizingClassical,
    HybridTransposeDepolarizingClassical,
}

impl From<FamilyArg> for ChannelFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Depolarizing => ChannelFamily::Depolarizing,
            FamilyArg::TransposeDepolarizing => ChannelFamily::TransposeDepolarizing,
            FamilyArg::HybridDepolarizingClassical => ChannelFamily::HybridDepolarizingClassical,
            FamilyArg::HybridTransposeDepolarizingClassical => {
                ChannelFamily::HybridTransposeDepolarizingClassical
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Cholesky,
    /// Closed-form operators for the hybrid depolarizing classical family.
    Theorem4,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Cholesky => "cholesky",
            Method::Theorem4 => "theorem4",
        }
    }
}

/// A failed command: message plus exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotPositiveSemidefinite { .. } | Error::Inconsistent(_) => EXIT_VERIFICATION,
            Error::Degenerate(_) => EXIT_DEGENERATE,
            Error::NoConvergence { .. } => EXIT_INTERNAL,
            Error::Dimension { .. }
            | Error::NonFinite { .. }
            | Error::NotHermitian { .. }
            | Error::NotDensity(_)
            | Error::Domain(_)
            | Error::ParameterOutOfRange { .. }
            | Error::InvalidChannel(_) => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// What a successful command produced: the document text and the exit code
/// (non-zero when a reported property check failed).
struct Outcome {
    body: String,
    code: i32,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("malformed JSON in {}: {e}", path.display())))
}

impl ChannelArgs {
    fn source(&self) -> Result<ChannelSource, Failure> {
        let spec = match (&self.family, &self.coefficients) {
            (Some(_), Some(_)) => {
                return Err(Failure::input(
                    "give either --family or --coefficients, not both",
                ));
            }
            (None, None) => {
                return Err(Failure::input(
                    "a channel needs --family/--p or --coefficients",
                ))
            }
            (Some(family), None) => ChannelSpec {
                n: self.n,
                family: Some(ChannelFamily::from(*family).name().to_string()),
                p: self.p,
                coefficients: None,
            },
            (None, Some(path)) => {
                if self.p.is_some() {
                    return Err(Failure::input("--p is only meaningful with --family"));
                }
                match read_json::<CoefficientFile>(path)? {
                    CoefficientFile::Bare(coefficients) => ChannelSpec {
                        n: self.n,
                        family: None,
                        p: None,
                        coefficients: Some(coefficients),
                    },
                    CoefficientFile::Spec(mut spec) => {
                        if let (Some(flag), Some(file)) = (self.n, spec.n) {
                            if flag != file {
                                return Err(Failure::input(format!(
                                    "--n {flag} conflicts with n = {file} in {}",
                                    path.display()
                                )));
                            }
                        }
                        spec.n = spec.n.or(self.n);
                        spec
                    }
                }
            }
        };
        Ok(spec.validate()?)
    }
}

fn basis_cmd(n: usize) -> Result<Outcome, Failure> {
    let basis = orthonormal_basis(n)?;
    let docs: Vec<MatrixDocument> = basis
        .elements()
        .iter()
        .map(|e| MatrixDocument::from_matrix(e.matrix()))
        .collect();
    Ok(Outcome {
        body: to_json(&docs),
        code: EXIT_OK,
    })
}

fn choi_cmd(channel: &ChannelArgs) -> Result<Outcome, Failure> {
    let ch = channel.source()?.build()?;
    let choi = ch.choi()?;
    Ok(Outcome {
        body: to_json(&MatrixDocument::from_matrix(choi.matrix())),
        code: EXIT_OK,
    })
}

fn kraus_cmd(channel: &ChannelArgs, method: Method, tol: f64) -> Result<Outcome, Failure> {
    let source = channel.source()?;
    let ch = source.build()?;
    let ks: KrausSet = match method {
        Method::Cholesky => kraus_from_choi(&ch.choi()?, tol)?,
        Method::Theorem4 => match source.family() {
            Some((ChannelFamily::HybridDepolarizingClassical, p)) => {
                closed_form_kraus(ch.dim(), p)?
            }
            _ => {
                return Err(Failure::input(format!(
                    "--method theorem4 requires --family {}",
                    ChannelFamily::HybridDepolarizingClassical
                )))
            }
        },
    };
    let reconstruction = ks.reconstruction_residual(&ch)?;
    let completeness = ks.completeness_residual();
    let doc = KrausDocument {
        operators: ks
            .operators()
            .iter()
            .map(MatrixDocument::from_matrix)
            .collect(),
        metadata: KrausMetadata {
            method: method.name(),
            source_rows: ks.source_rows().iter().map(|r| r + 1).collect(),
            residuals: KrausResiduals {
                reconstruction: Real(reconstruction),
                completeness: Real(completeness),
            },
        },
    };
    let ok = reconstruction <= tol && completeness <= tol;
    Ok(Outcome {
        body: to_json(&doc),
        code: if ok { EXIT_OK } else { EXIT_VERIFICATION },
    })
}

fn verify_cmd(channel: &ChannelArgs, tol: f64) -> Result<Outcome, Failure> {
    let ch = channel.source()?.build()?;
    let choi = ch.choi()?;
    let min = choi.min_eigenvalue()?;
    let cp = min >= -tol;
    let tp = ch.is_trace_preserving(tol)?;
    // Kraus-based when the factorization exists, otherwise read off the Choi blocks
    let completeness = match kraus_from_choi(&choi, tol) {
        Ok(ks) => ks.completeness_residual(),
        Err(_) => choi.trace_preservation_residual(),
    };
    let report = VerifyReport {
        cp,
        tp,
        min_choi_eigenvalue: Real(min),
        completeness_residual: Real(completeness),
    };
    Ok(Outcome {
        body: to_json(&report),
        code: if cp && tp { EXIT_OK } else { EXIT_VERIFICATION },
    })
}

/// Tolerance for both the trace and the eigenvalue check on `apply` input.
const STATE_TOL: f64 = 1e-10;

fn apply_cmd(channel: &ChannelArgs, input: &Path) -> Result<Outcome, Failure> {
    let ch = channel.source()?.build()?;
    let doc: MatrixDocument = read_json(input)?;
    let m = doc.to_matrix()?;
    if m.rows() != ch.dim() || m.cols() != ch.dim() {
        return Err(Failure::input(format!(
            "state is {}x{} but the channel acts on {n}x{n} matrices",
            m.rows(),
            m.cols(),
            n = ch.dim()
        )));
    }
    let rho = DensityMatrix::with_tolerance(HermitianMatrix::new(m)?, STATE_TOL, STATE_TOL)?;
    let out = ch.apply(rho.matrix())?;
    Ok(Outcome {
        body: to_json(&MatrixDocument::from_matrix(&out)),
        code: EXIT_OK,
    })
}

fn transition_cmd(channel: &ChannelArgs, tol: f64) -> Result<Outcome, Failure> {
    let ch = channel.source()?.build()?;
    let p = transition_direct(&ch)?;
    let doc = TransitionDocument {
        rows: p
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(Real).collect())
            .collect(),
        row_stochastic: is_row_stochastic(&p, tol),
    };
    Ok(Outcome {
        body: to_json(&doc),
        code: EXIT_OK,
    })
}

fn common_args(command: &Command) -> &CommonArgs {
    match command {
        Command::Basis { common, .. }
        | Command::Choi { common, .. }
        | Command::Kraus { common, .. }
        | Command::Verify { common, .. }
        | Command::Apply { common, .. }
        | Command::Transition { common, .. } => common,
    }
}

fn execute(cli: &Cli) -> Result<(Outcome, Option<&Path>), Failure> {
    let common = common_args(&cli.command);
    if !(common.tol.is_finite() && common.tol >= 0.0) {
        return Err(Failure::input(format!(
            "--tol must be a nonnegative number, got {}",
            common.tol
        )));
    }
    let outcome = match &cli.command {
        Command::Basis { n, .. } => basis_cmd(*n)?,
        Command::Choi { channel, .. } => choi_cmd(channel)?,
        Command::Kraus {
            channel, method, ..
        } => kraus_cmd(channel, *method, common.tol)?,
        Command::Verify { channel, .. } => verify_cmd(channel, common.tol)?,
        Command::Apply { channel, input, .. } => apply_cmd(channel, input)?,
        Command::Transition { channel, .. } => transition_cmd(channel, common.tol)?,
    };
    Ok((outcome, common.output.as_deref()))
}

/// Runs a parsed command, writing the document to `--output` or `stdout` and
/// diagnostics to `stderr`. Returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match execute(cli) {
        Ok((outcome, output)) => {
            let written = match output {
                Some(path) => fs::write(path, &outcome.body)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => stdout
                    .write_all(outcome.body.as_bytes())
                    .map_err(|e| format!("cannot write output: {e}")),
            };
            match written {
                Ok(()) => outcome.code,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    EXIT_INPUT
                }
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdout, stderr),
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => EXIT_INPUT,
            }
        }
    }
}
