use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use comalg::constructions::{apply_by_name, build_by_name, CatalogueParams, Level};
use comalg::io::{algebra_to_string, parse_algebra};
use comalg::report::{self, Report, RunOptions, SUITES};
use comalg::scalar::parse_q;
use comalg::{AnyAlgebra, MetrizedAlgebra, Scalar, Q};

#[derive(Parser)]
#[command(name = "comalg", version, about = "Build and analyse metrized commutative algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalarArg {
    Rational,
    Float,
}

#[derive(Args)]
struct Output {
    /// Write JSON here instead of stdout.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Search {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    trials: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a catalogue algebra (talg, ealg, herm, herm0, su-circle, lie-so, lie-su, nahm-so, nahm-su).
    Build {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        /// Rational parameter `p/q` for talg.
        #[arg(long)]
        alpha: Option<String>,
        /// r, c, h or o.
        #[arg(long)]
        level: Option<String>,
        #[arg(long, value_enum, default_value = "rational")]
        scalar: ScalarArg,
        #[command(flatten)]
        out: Output,
    },
    /// Apply triple, nahm, tensor, dsum, unitalize, deunitalize or confext to algebra files.
    Construct {
        op: String,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Convert the inputs before constructing (rational files can be read as float).
        #[arg(long, value_enum)]
        scalar: Option<ScalarArg>,
        #[command(flatten)]
        out: Output,
    },
    /// Structural summary: exactness, invariance, inertia, Einstein constant.
    Report {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Newton search for idempotents and square-zero rays.
    Idempotents {
        file: PathBuf,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        out: Output,
    },
    /// Sampled bounds on sectional nonassociativity.
    Sect {
        file: PathBuf,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        out: Output,
    },
    /// Run verification suites; exit status 1 if any fails.
    Check {
        file: PathBuf,
        /// Comma-separated suite names.
        #[arg(long, value_delimiter = ',', required = true)]
        suite: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        /// Float comparison tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// Split into ideals with exact certificates.
    Decompose {
        file: PathBuf,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        out: Output,
    },
}

const STOCHASTIC_SUITES: &[&str] = &["norton", "ideals", "simple"];

fn load(path: &Path) -> anyhow::Result<AnyAlgebra> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_algebra(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &Output, text: &str) -> anyhow::Result<()> {
    match &out.output {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            // a closed pipe (`| head`) is not an error
            match writeln!(std::io::stdout().lock(), "{text}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r.context("writing stdout"),
            }
        }
    }
}

fn to_json(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("reports serialize")
}

/// Dispatches a generic computation over the file's backend.
macro_rules! on_any {
    ($a:expr, $m:ident => $body:expr) => {
        match $a {
            AnyAlgebra::Rational($m) => $body,
            AnyAlgebra::Float($m) => $body,
        }
    };
}

fn build<F: Scalar>(name: &str, p: &CatalogueParams) -> anyhow::Result<String> {
    Ok(algebra_to_string(&build_by_name::<F>(name, p)?))
}

fn construct<F: Scalar>(op: &str, inputs: Vec<MetrizedAlgebra<F>>) -> anyhow::Result<String> {
    Ok(algebra_to_string(&apply_by_name(op, &inputs)?))
}

/// Returns whether every verification passed.
fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Build { name, n, alpha, level, scalar, out } => {
            let alpha = alpha.map(|s| parse_q(&s).ok_or_else(|| anyhow!("--alpha expects p/q, got {s}"))).transpose()?;
            let level = level.map(|s| Level::parse(&s).ok_or_else(|| anyhow!("--level expects r, c, h or o, got {s}"))).transpose()?;
            let p = CatalogueParams { n, alpha, level };
            let text = match scalar {
                ScalarArg::Rational => build::<Q>(&name, &p)?,
                ScalarArg::Float => build::<f64>(&name, &p)?,
            };
            emit(&out, &text)?;
        }
        Command::Construct { op, inputs, scalar, out } => {
            let algs = inputs.iter().map(|p| load(p)).collect::<anyhow::Result<Vec<_>>>()?;
            let float = match scalar {
                Some(ScalarArg::Float) => true,
                Some(ScalarArg::Rational) => {
                    if algs.iter().any(|a| matches!(a, AnyAlgebra::Float(_))) {
                        bail!("float inputs cannot be converted to rational");
                    }
                    false
                }
                None => {
                    let floats = algs.iter().filter(|a| matches!(a, AnyAlgebra::Float(_))).count();
                    if floats != 0 && floats != algs.len() {
                        bail!("inputs mix rational and float backends; pass --scalar float");
                    }
                    floats != 0
                }
            };
            let text = if float {
                construct(&op, algs.iter().map(AnyAlgebra::to_float).collect())?
            } else {
                let rs = algs
                    .into_iter()
                    .map(|a| match a {
                        AnyAlgebra::Rational(r) => r,
                        AnyAlgebra::Float(_) => unreachable!("checked above"),
                    })
                    .collect();
                construct(&op, rs)?
            };
            emit(&out, &text)?;
        }
        Command::Report { file, out } => {
            let a = load(&file)?;
            let r = on_any!(&a, m => report::summary(m)?);
            emit(&out, &to_json(&r))?;
        }
        Command::Idempotents { file, search, out } => {
            let a = load(&file)?;
            let opts = RunOptions { seed: search.seed, trials: search.trials, tol: None };
            let r = on_any!(&a, m => report::idempotent_report(m, &opts)?);
            emit(&out, &to_json(&r))?;
        }
        Command::Sect { file, search, out } => {
            let a = load(&file)?;
            let opts = RunOptions { seed: search.seed, trials: search.trials, tol: None };
            let r = on_any!(&a, m => report::sect_report(m, &opts)?);
            emit(&out, &to_json(&r))?;
        }
        Command::Check { file, suite, seed, trials, tol, out } => {
            for s in &suite {
                if !SUITES.contains(&s.as_str()) {
                    bail!("unknown suite {s}; expected one of {}", SUITES.join(", "));
                }
                if seed.is_none() && STOCHASTIC_SUITES.contains(&s.as_str()) {
                    bail!("suite {s} is randomized and needs --seed");
                }
            }
            let a = load(&file)?;
            let opts = RunOptions { seed: seed.unwrap_or(0), trials, tol };
            let reports = suite
                .iter()
                .map(|s| on_any!(&a, m => report::run_suite(m, s, &opts)))
                .collect::<comalg::Result<Vec<Report>>>()?;
            let ok = reports.iter().all(Report::passed);
            emit(&out, &serde_json::to_string_pretty(&reports).expect("reports serialize"))?;
            return Ok(ok);
        }
        Command::Decompose { file, search, out } => {
            let a = load(&file)?;
            let opts = RunOptions { seed: search.seed, trials: search.trials, tol: None };
            let r = on_any!(&a, m => report::run_suite(m, "ideals", &opts)?);
            emit(&out, &to_json(&r))?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
