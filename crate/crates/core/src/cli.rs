//! Command-line front end. Every command writes line-delimited JSON records
//! to stdout.
//!
//! Exit codes: 0 when every executed check passes, 1 on a check failure,
//! 2 on usage or parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::eigen2::{self, AMembership, Char2Constraints, EigenPair2, LeftDecomposition, MatrixForm, RealDecomposition, RightDecomposition, Side};
use crate::eigen3::{self, Block, EigenPair3, SearchConfig, SearchDiagnostics};
use crate::error::{Error, Result};
use crate::format::{self, Payload};
use crate::linalg::{Hermitian2, Hermitian3, OctVector};
use crate::octonion::{associator, Octonion};
use crate::spin::{self, SpinEigenEntry, SpinState};
use crate::tolerance::{Tolerance, TOLERANCE_ENV};
use crate::verify::{self, Check, Observation, Suite};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "octoeig", version, about = "Octonion arithmetic and octonionic Hermitian eigenvalue problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Multiply two octonions.
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: Octonion,
        #[arg(allow_hyphen_values = true)]
        b: Octonion,
    },
    /// Evaluate the associator (ab)c - a(bc).
    Associator {
        #[arg(allow_hyphen_values = true)]
        a: Octonion,
        #[arg(allow_hyphen_values = true)]
        b: Octonion,
        #[arg(allow_hyphen_values = true)]
        c: Octonion,
    },
    /// Construct a non-real eigenpair of a 2x2 Hermitian matrix.
    Eigen2(PairArgs),
    /// Construct an eigenpair and check the matching decomposition.
    Decompose(PairArgs),
    /// Real eigenpairs of a 2x2 Hermitian matrix with decomposition checks.
    RealEigen2 {
        #[command(flatten)]
        matrix: Matrix2Args,
    },
    /// Spin operator eigenvalues on the spin-up, spin-down and phase states.
    Spin {
        /// Number of phase angles on [0, 2 pi).
        #[arg(long, default_value_t = 8)]
        grid: usize,
    },
    /// Multi-start eigenpair search for a 3x3 Hermitian matrix.
    Eigen3(Eigen3Args),
    /// Run randomized verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct Matrix2Args {
    /// Input document of kind hermitian2 (`-` for stdin).
    #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
    input: Option<PathBuf>,
    /// Inline matrix `p,m,a`, e.g. `1,1,-i`.
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
}

#[derive(Debug, Args)]
struct PairArgs {
    #[command(flatten)]
    matrix: Matrix2Args,
    #[arg(long, value_enum)]
    side: SideArg,
    /// Right eigenvalue; sampled from the admissible set when omitted.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<Octonion>,
    /// Left eigenvector `x,y`; sampled when omitted.
    #[arg(long, allow_hyphen_values = true)]
    vector: Option<String>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Debug, Args)]
struct Eigen3Args {
    /// Input document of kind hermitian3 (`-` for stdin).
    #[arg(long, conflicts_with = "embed", required_unless_present = "embed")]
    input: Option<PathBuf>,
    /// Embed the 2x2 matrix `p,m,a` with remaining diagonal entry `n`, as `p,m,a,n`.
    #[arg(long, allow_hyphen_values = true)]
    embed: Option<String>,
    #[arg(long, value_enum, default_value_t = BlockArg::B12)]
    block: BlockArg,
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    #[arg(long, default_value_t = 200)]
    max_iterations: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Keep |Im lambda| at or above --min-imaginary.
    #[arg(long, conflicts_with = "real_only")]
    nonreal: bool,
    #[arg(long, default_value_t = 0.3)]
    min_imaginary: f64,
    /// Search for real eigenvalues only.
    #[arg(long)]
    real_only: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BlockArg {
    #[value(name = "12")]
    B12,
    #[value(name = "23")]
    B23,
    #[value(name = "13")]
    B13,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Core,
    Eigen2,
    Spin,
    Eigen3,
    Appendix,
    All,
}

#[derive(Serialize)]
struct ToleranceEcho {
    eps_identity: f64,
    eps_solve: f64,
    source: &'static str,
}

#[derive(Serialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum Record<'a> {
    Config {
        command: &'a str,
        tolerance: ToleranceEcho,
        #[serde(skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        samples: Option<usize>,
    },
    Product {
        a: Octonion,
        b: Octonion,
        value: Octonion,
        text: String,
    },
    Associator {
        a: Octonion,
        b: Octonion,
        c: Octonion,
        value: Octonion,
        text: String,
    },
    Membership {
        #[serde(flatten)]
        membership: &'a AMembership,
    },
    Pair {
        #[serde(flatten)]
        pair: &'a EigenPair2,
        lambda_text: String,
        tolerance: f64,
        pass: bool,
    },
    Constraints {
        #[serde(flatten)]
        constraints: &'a Char2Constraints,
        char2_residual: f64,
        tolerance: f64,
        pass: bool,
    },
    RightDecomposition {
        #[serde(flatten)]
        decomposition: &'a RightDecomposition,
        tolerance: f64,
        pass: bool,
    },
    LeftDecomposition {
        #[serde(flatten)]
        decomposition: &'a LeftDecomposition,
        tolerance: f64,
        pass: bool,
    },
    RealDecomposition {
        #[serde(flatten)]
        decomposition: &'a RealDecomposition,
        tolerance: f64,
        pass: bool,
    },
    MatrixForm {
        #[serde(flatten)]
        form: &'a MatrixForm,
        tolerance: f64,
        pass: bool,
    },
    SpinEigenvalue {
        #[serde(flatten)]
        entry: &'a SpinEigenEntry,
        lambda_text: String,
        tolerance: f64,
        pass: bool,
    },
    Commutator {
        residual: f64,
        tolerance: f64,
        pass: bool,
    },
    Eigen3Pair {
        #[serde(flatten)]
        pair: &'a EigenPair3,
        lambda_text: String,
    },
    SearchDiagnostics {
        #[serde(flatten)]
        diagnostics: &'a SearchDiagnostics,
        pass: bool,
    },
    Check {
        suite: &'a str,
        #[serde(flatten)]
        check: &'a Check,
    },
    Summary {
        suite: &'a str,
        samples: usize,
        seed: u64,
        max_residual: f64,
        checks: usize,
        failed: usize,
        observations: &'a [Observation],
        pass: bool,
    },
    Diagnostic {
        error: String,
        exit: i32,
    },
}

struct Out<'w> {
    w: &'w mut dyn Write,
    pass: bool,
}

impl Out<'_> {
    fn emit(&mut self, record: &Record<'_>) -> Result<()> {
        let line = serde_json::to_string(record).expect("records serialize");
        writeln!(self.w, "{line}").map_err(|e| Error::Usage(format!("cannot write output: {e}")))
    }

    fn check(&mut self, pass: bool) -> bool {
        self.pass &= pass;
        pass
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) | Error::Parse { .. } | Error::VersionUnsupported(_) | Error::InvalidTolerance(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let mut out = Out { w: stdout, pass: true };
    let result = Tolerance::from_env().and_then(|tol| dispatch(&cli.command, &tol, &mut out));
    match result {
        Ok(()) if out.pass => EXIT_PASS,
        Ok(()) => EXIT_FAIL,
        Err(e) => {
            let code = exit_code(&e);
            let _ = out.emit(&Record::Diagnostic {
                error: e.to_string(),
                exit: code,
            });
            let _ = writeln!(stderr, "error: {e}");
            code
        }
    }
}

fn tolerance_echo(tol: &Tolerance) -> ToleranceEcho {
    ToleranceEcho {
        eps_identity: tol.eps_identity,
        eps_solve: tol.eps_solve,
        source: if std::env::var_os(TOLERANCE_ENV).is_some() { TOLERANCE_ENV } else { "default" },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Mul { .. } => "mul",
        Command::Associator { .. } => "associator",
        Command::Eigen2(_) => "eigen2",
        Command::Decompose(_) => "decompose",
        Command::RealEigen2 { .. } => "real-eigen2",
        Command::Spin { .. } => "spin",
        Command::Eigen3(_) => "eigen3",
        Command::Verify { .. } => "verify",
    }
}

fn dispatch(command: &Command, tol: &Tolerance, out: &mut Out<'_>) -> Result<()> {
    let (seed, samples) = match command {
        Command::Eigen2(a) | Command::Decompose(a) => (Some(a.seed), None),
        Command::Eigen3(a) => (Some(a.seed), None),
        Command::Verify { seed, samples, .. } => (Some(*seed), Some(*samples)),
        _ => (None, None),
    };
    out.emit(&Record::Config {
        command: command_name(command),
        tolerance: tolerance_echo(tol),
        seed,
        samples,
    })?;
    match command {
        Command::Mul { a, b } => {
            let value = *a * *b;
            out.emit(&Record::Product {
                a: *a,
                b: *b,
                value,
                text: value.to_string(),
            })
        }
        Command::Associator { a, b, c } => {
            let value = associator(*a, *b, *c);
            out.emit(&Record::Associator {
                a: *a,
                b: *b,
                c: *c,
                value,
                text: value.to_string(),
            })
        }
        Command::Eigen2(args) => pair_command(args, tol, out, false),
        Command::Decompose(args) => pair_command(args, tol, out, true),
        Command::RealEigen2 { matrix } => real_eigen2_command(matrix, tol, out),
        Command::Spin { grid } => spin_command(*grid, tol, out),
        Command::Eigen3(args) => eigen3_command(args, out),
        Command::Verify { suite, samples, seed } => verify_command(*suite, *samples, *seed, tol, out),
    }
}

fn read_document(path: &Path) -> Result<Payload> {
    let bytes = if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::Read::read_to_end(&mut std::io::stdin(), &mut buf)
            .map_err(|e| Error::Usage(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?
    };
    Ok(format::parse_input(&bytes)?.payload)
}

fn parse_terms(raw: &str, what: &str) -> Result<Vec<Octonion>> {
    raw.split(',')
        .map(|t| {
            t.parse::<Octonion>().map_err(|e| Error::Parse {
                context: what.to_string(),
                message: e.to_string(),
            })
        })
        .collect()
}

fn parse_real(o: Octonion, what: &str) -> Result<f64> {
    if o.im().norm() != 0.0 {
        return Err(Error::Parse {
            context: what.to_string(),
            message: format!("diagonal entry {o} must be real"),
        });
    }
    Ok(o.re())
}

fn load_hermitian2(args: &Matrix2Args) -> Result<Hermitian2> {
    if let Some(path) = &args.input {
        return match read_document(path)? {
            Payload::Hermitian2(h) => Ok(h),
            _ => Err(Error::Usage("expected a hermitian2 document".into())),
        };
    }
    let raw = args.matrix.as_deref().ok_or_else(|| Error::Usage("no matrix given".into()))?;
    match parse_terms(raw, "--matrix")?.as_slice() {
        [p, m, a] => Ok(Hermitian2::new(parse_real(*p, "--matrix")?, parse_real(*m, "--matrix")?, *a)),
        _ => Err(Error::Usage("--matrix expects p,m,a".into())),
    }
}

fn pair_command(args: &PairArgs, tol: &Tolerance, out: &mut Out<'_>, decompose: bool) -> Result<()> {
    let h = load_hermitian2(&args.matrix)?;
    let membership = eigen2::classify_in_a(&h, tol.eps_solve);
    out.emit(&Record::Membership { membership: &membership })?;
    let mut rng = crate::sampling::rng(args.seed, crate::sampling::stream_id("cli/pair"));
    let pair = match args.side {
        SideArg::Left => {
            let v = match &args.vector {
                Some(raw) => OctVector::new(parse_terms(raw, "--vector")?),
                None => eigen2::sample_v_with(&mut rng)?,
            };
            eigen2::left_pair_from_v(&h, &v, tol)?
        }
        SideArg::Right => {
            let lambda = match args.lambda {
                Some(l) => l,
                None => {
                    let m = membership.require(&h)?;
                    eigen2::sample_admissible_lambda(&mut rng, &m)
                }
            };
            eigen2::right_pair_for_lambda(&h, lambda, tol)?
        }
    };
    emit_pair(out, &pair, tol.eps_solve)?;
    if pair.side == Side::Right {
        let constraints = eigen2::char2_constraints(&h, &pair.v, pair.lambda, tol.eps_solve);
        let char2 = eigen2::char2_residual(&h, &pair.v, pair.lambda)?.max_norm();
        let pass = out.check(constraints.max_residual().max(char2) <= tol.eps_solve);
        out.emit(&Record::Constraints {
            constraints: &constraints,
            char2_residual: char2,
            tolerance: tol.eps_solve,
            pass,
        })?;
    }
    if decompose {
        match pair.side {
            Side::Right => {
                let d = eigen2::decompose_right(&h, &pair, tol)?;
                let pass = out.check(d.max_residual() <= tol.eps_solve);
                out.emit(&Record::RightDecomposition {
                    decomposition: &d,
                    tolerance: tol.eps_solve,
                    pass,
                })?;
            }
            Side::Left => {
                let d = eigen2::decompose_left_quaternionic(&h, &pair, tol)?;
                let pass = out.check(d.reconstruction.max(d.flipped_residual) <= tol.eps_solve);
                out.emit(&Record::LeftDecomposition {
                    decomposition: &d,
                    tolerance: tol.eps_solve,
                    pass,
                })?;
            }
        }
    }
    Ok(())
}

fn emit_pair(out: &mut Out<'_>, pair: &EigenPair2, tolerance: f64) -> Result<()> {
    let pass = out.check(pair.residual <= tolerance);
    out.emit(&Record::Pair {
        pair,
        lambda_text: pair.lambda.to_string(),
        tolerance,
        pass,
    })
}

fn real_eigen2_command(matrix: &Matrix2Args, tol: &Tolerance, out: &mut Out<'_>) -> Result<()> {
    let h = load_hermitian2(matrix)?;
    let pairs = eigen2::real_eigen2(&h, tol)?;
    for p in &pairs {
        emit_pair(out, p, tol.eps_solve)?;
    }
    let d = eigen2::real_decomposition(&h, &pairs)?;
    let pass = out.check(d.decomp.max(d.ortho) <= tol.eps_solve);
    out.emit(&Record::RealDecomposition {
        decomposition: &d,
        tolerance: tol.eps_solve,
        pass,
    })?;
    let form = eigen2::matrix_form_check(&h, &pairs)?;
    let pass = out.check(form.max_residual() <= tol.eps_solve);
    out.emit(&Record::MatrixForm {
        form: &form,
        tolerance: tol.eps_solve,
        pass,
    })
}

fn spin_command(grid: usize, tol: &Tolerance, out: &mut Out<'_>) -> Result<()> {
    let thetas: Vec<f64> = (0..grid).map(|k| k as f64 * std::f64::consts::TAU / grid as f64).collect();
    for entry in spin::eigenvalue_table(&thetas, tol.eps_identity)? {
        let pass = out.check(entry.residual <= tol.eps_identity);
        out.emit(&Record::SpinEigenvalue {
            entry: &entry,
            lambda_text: entry.lambda.to_string(),
            tolerance: tol.eps_identity,
            pass,
        })?;
    }
    let plus = SpinState::psi_plus();
    let (xy, yx) = spin::commutator_terms(&plus);
    let two_l = plus.scale_right(Octonion::L * 2.0);
    let residual = SpinState { psi: &xy.psi - &yx.psi }.distance(&two_l);
    let pass = out.check(residual <= tol.eps_identity);
    out.emit(&Record::Commutator {
        residual,
        tolerance: tol.eps_identity,
        pass,
    })
}

fn load_hermitian3(args: &Eigen3Args) -> Result<Hermitian3> {
    if let Some(path) = &args.input {
        return match read_document(path)? {
            Payload::Hermitian3(h) => Ok(h),
            _ => Err(Error::Usage("expected a hermitian3 document".into())),
        };
    }
    let raw = args.embed.as_deref().ok_or_else(|| Error::Usage("no matrix given".into()))?;
    let block = match args.block {
        BlockArg::B12 => Block::B12,
        BlockArg::B23 => Block::B23,
        BlockArg::B13 => Block::B13,
    };
    match parse_terms(raw, "--embed")?.as_slice() {
        [p, m, a, n] => {
            let h2 = Hermitian2::new(parse_real(*p, "--embed")?, parse_real(*m, "--embed")?, *a);
            Ok(eigen3::embed2(&h2, parse_real(*n, "--embed")?, block))
        }
        _ => Err(Error::Usage("--embed expects p,m,a,n".into())),
    }
}

fn eigen3_command(args: &Eigen3Args, out: &mut Out<'_>) -> Result<()> {
    let h = load_hermitian3(args)?;
    let cfg = SearchConfig {
        restarts: args.restarts,
        max_iterations: args.max_iterations,
        tol: args.tol,
        seed: args.seed,
        constrain_imaginary: args.nonreal,
        min_imaginary: args.min_imaginary,
        real_only: args.real_only,
    };
    let outcome = eigen3::eigensearch(&h, &cfg)?;
    for pair in &outcome.pairs {
        out.emit(&Record::Eigen3Pair {
            pair,
            lambda_text: pair.lambda.to_string(),
        })?;
    }
    let pass = out.check(!outcome.pairs.is_empty());
    out.emit(&Record::SearchDiagnostics {
        diagnostics: &outcome.diagnostics,
        pass,
    })
}

fn verify_command(suite: SuiteArg, samples: usize, seed: u64, tol: &Tolerance, out: &mut Out<'_>) -> Result<()> {
    let suite = match suite {
        SuiteArg::Core => Suite::Core,
        SuiteArg::Eigen2 => Suite::Eigen2,
        SuiteArg::Spin => Suite::Spin,
        SuiteArg::Eigen3 => Suite::Eigen3,
        SuiteArg::Appendix => Suite::Appendix,
        SuiteArg::All => Suite::All,
    };
    for report in verify::run_suite(suite, samples, seed, tol)? {
        for check in &report.checks {
            out.emit(&Record::Check {
                suite: &report.suite,
                check,
            })?;
        }
        let pass = out.check(report.pass);
        out.emit(&Record::Summary {
            suite: &report.suite,
            samples: report.samples,
            seed: report.seed,
            max_residual: report.max_residual,
            checks: report.checks.len(),
            failed: report.checks.iter().filter(|c| !c.pass).count(),
            observations: &report.observations,
            pass,
        })?;
    }
    Ok(())
}
