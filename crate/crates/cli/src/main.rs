//! `qag`: compute q-polynomial families and verify identities from the
//! command line.
//!
//! Exit codes: 0 when every requested verification passes, 1 on any
//! mismatch, 2 on usage errors (bad flags, parameters outside the stated
//! domain, exhausted enumeration caps, invalid `QAG_THREADS`).

mod compute;
mod render;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qag_core::identity_engine::{
    sweep_cases, verify, verify_all, EngineOptions, Identity, IdentityCase, Params, SweepBounds,
    VerificationReport,
};
use qag_core::selftest::run_all;
use qag_core::{Error, Execution};

use crate::compute::{compute, Family};

#[derive(Parser, Debug)]
#[command(name = "qag", version, about = "Exact q-series identities: compute, verify, sweep")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Report runtime_ms as 0 so output is reproducible byte for byte.
    #[arg(long, global = true)]
    no_timing: bool,

    /// Evaluate work items one at a time.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Print one polynomial or truncated series.
    Compute {
        #[arg(value_enum)]
        family: Family,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Check one identity instance.
    Verify {
        /// Identity name, e.g. AG-1.1 or FQK-1.23.
        identity: String,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Check an identity over a parameter range. Unset parameters range over
    /// their valid values; --L and --M are upper ends.
    Sweep {
        identity: String,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        engine: EngineArgs,
        /// Side of the box [0, k]^nu swept for Mvec.
        #[arg(long)]
        mvec_box: Option<i64>,
    },
    /// Run the ten acceptance criteria.
    Selftest,
}

/// Parameter flags shared by every verb.
#[derive(Args, Debug, Default, Clone)]
pub struct ParamArgs {
    #[arg(long)]
    pub nu: Option<usize>,
    #[arg(long)]
    pub s: Option<i64>,
    #[arg(long)]
    pub b: Option<i64>,
    #[arg(long = "L", allow_hyphen_values = true)]
    pub l: Option<i64>,
    #[arg(long = "M", allow_hyphen_values = true)]
    pub m: Option<i64>,
    /// Comma-separated integers.
    #[arg(long = "Mvec", alias = "mvec", value_delimiter = ',', allow_hyphen_values = true)]
    pub mvec: Option<Vec<i64>>,
    #[arg(long = "Q")]
    pub q: Option<i64>,
    /// Gaussian binomial top.
    #[arg(long)]
    pub top: Option<i64>,
    /// Gaussian binomial bottom.
    #[arg(long, allow_hyphen_values = true)]
    pub bottom: Option<i64>,
    /// Lower index of a q-multinomial or q-supernomial.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<i64>,
    /// Twice the lower index of a q-supernomial (for half-integral indices).
    #[arg(long, allow_hyphen_values = true)]
    pub two_a: Option<i64>,
    /// Superscript of a q-multinomial, -1..=nu.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<i64>,
    /// Supernomial vector, comma-separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lvec: Option<Vec<i64>>,
    /// Particle content n_1,...,n_nu.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<i64>>,
    /// Linear exponent coefficients c_1,...,c_nu of a multisum.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub linear: Option<Vec<i64>>,
    /// Count paths by enumeration instead of the recurrence.
    #[arg(long)]
    pub enumerate: bool,
    /// Largest window length enumerated.
    #[arg(long, default_value_t = qag_core::bressoud_paths::DEFAULT_ENUMERATION_CAP)]
    pub cap: i64,
}

impl ParamArgs {
    fn params(&self) -> Params {
        Params {
            nu: self.nu,
            s: self.s,
            b: self.b,
            l: self.l,
            m: self.m,
            mvec: self.mvec.clone(),
            q: self.q,
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct EngineArgs {
    /// Sum every residue class instead of applying the parity restriction,
    /// and report whether the extra terms change the result.
    #[arg(long)]
    no_parity_filter: bool,
}

/// Failure modes mapped to exit codes.
pub enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("QAG_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("QAG_THREADS must be a positive integer, got {raw:?}")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot size the worker pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn identity(name: &str) -> Result<Identity, Failure> {
    Identity::from_name(name).ok_or_else(|| {
        Failure::Usage(format!("unknown identity {name:?}; valid names: {}", Identity::names().join(", ")))
    })
}

fn engine_options(cli: &Cli, engine: EngineArgs, cap: i64) -> EngineOptions {
    EngineOptions {
        exec: execution(cli),
        parity_filter: !engine.no_parity_filter,
        enumeration_cap: cap,
        ..EngineOptions::default()
    }
}

fn execution(cli: &Cli) -> Execution {
    if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn finish_reports(cli: &Cli, mut reports: Vec<VerificationReport>, single: bool) -> Result<bool, Failure> {
    if cli.no_timing {
        reports.iter_mut().for_each(|r| r.runtime_ms = 0);
    }
    let mut out = io::stdout().lock();
    render::reports(&mut out, cli.format, &reports, single)?;
    out.flush()?;
    Ok(reports.iter().all(|r| r.passed()))
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    configure_threads()?;
    match &cli.verb {
        Verb::Compute { family, params } => {
            let value = compute(*family, params)?;
            let mut out = io::stdout().lock();
            render::computed(&mut out, cli.format, &value)?;
            Ok(true)
        }
        Verb::Verify { identity: name, params, engine } => {
            let case = IdentityCase::new(identity(name)?, params.params());
            let report = verify(&case, &engine_options(cli, *engine, params.cap))?;
            finish_reports(cli, vec![report], true)
        }
        Verb::Sweep { identity: name, params, engine, mvec_box } => {
            let id = identity(name)?;
            let bounds = SweepBounds { l_max: params.l, m_max: params.m, mvec_box: *mvec_box };
            let mut base = params.params();
            // L and M act as upper ends, not fixed values
            base.l = None;
            base.m = None;
            let cases = sweep_cases(id, &base, &bounds)?;
            let reports = verify_all(&cases, &engine_options(cli, *engine, params.cap))?;
            finish_reports(cli, reports, false)
        }
        Verb::Selftest => {
            let mut results = run_all(execution(cli));
            if cli.no_timing {
                results.iter_mut().for_each(|r| r.elapsed_ms = 0);
            }
            let mut out = io::stdout().lock();
            render::selftest(&mut out, cli.format, &results)?;
            Ok(results.iter().all(|r| r.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
