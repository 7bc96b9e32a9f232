//! Command-line front end: argument parsing, dispatch and report rendering.

mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use symop::determining::{
    ansatz_saturated, default_deg_r, default_deg_t, generate_determining_system,
    restrict_time_independent, solve_polynomial_ansatz, SchrodingerSpec,
};
use symop::enumeration::{
    count_k, count_s, default_degree, killing_saturation, killing_basis, symmetrized_gradient,
    CountTable, PROVEN_MAX_DIM,
};
use symop::expr_io::parse_poly;
use symop::scalar::{parse_rational, Rational};
use symop::spectral::{
    all_eigen_data, analyze, spectral_saturated, theorem3_decide, SpectralError,
};

pub use report::Report;

const ABOUT: &str = "Exact symmetry operators of the Schrödinger equation\n\n    \
L = i*dt - 1/2*((p - e*A)^2 + V),   p = -i*d\n\n\
The potential V enters with a factor 1/2: '--potential x1^2' gives H = -1/2*d1^2 + 1/2*x1^2.";

#[derive(Parser, Debug)]
#[command(name = "symop", version, about = ABOUT)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Closed-form bounds N_hat, N_tilde and their summands S_j, K_j.
    Count(CountArgs),
    /// Polynomial generalized Killing tensors of a given rank and order.
    Killing(KillingArgs),
    /// The determining equations of [L, Q] = 0 with symbolic coefficients.
    Determine(DetermineArgs),
    /// Symmetries by a polynomial ansatz in r and t.
    Solve(SolveArgs),
    /// Spectral analysis of ad_H for a time-independent potential.
    Spectral(SpectralArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Spatial dimension.
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// Scalar potential V(x1..xn, t); enters L as 1/2*V.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub potential: String,
    /// One component of A per flag, in order A1..An.
    #[arg(long = "vector-potential", allow_hyphen_values = true)]
    pub vector_potential: Vec<String>,
    /// Charge e, an integer or fraction.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub charge: String,
}

#[derive(Args, Debug, Clone)]
pub struct CountArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Maximal operator order.
    #[arg(long)]
    pub q: u32,
}

#[derive(Args, Debug, Clone)]
pub struct KillingArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub rank: u32,
    #[arg(long)]
    pub order: u32,
    /// Entry degree bound; defaults to rank + order - 1.
    #[arg(long)]
    pub max_degree: Option<u32>,
    #[arg(long)]
    pub no_verify: bool,
}

#[derive(Args, Debug, Clone)]
pub struct DetermineArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub q: u32,
    #[command(flatten)]
    pub spec: SpecArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub q: u32,
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Degree bound in x; defaults to q + 1.
    #[arg(long)]
    pub deg_r: Option<u32>,
    /// Degree bound in t; defaults to N_hat - 1.
    #[arg(long)]
    pub deg_t: Option<u32>,
    /// Only operators without explicit time dependence.
    #[arg(long)]
    pub time_independent: bool,
    #[arg(long)]
    pub no_verify: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SpectralArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub q: u32,
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Coefficient degree bound; defaults to q + 1.
    #[arg(long)]
    pub deg_r: Option<u32>,
    #[arg(long)]
    pub no_verify: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Failure classes, mapped to exit statuses 1 and 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

impl Command {
    pub fn common(&self) -> &CommonArgs {
        match self {
            Command::Count(a) => &a.common,
            Command::Killing(a) => &a.common,
            Command::Determine(a) => &a.common,
            Command::Solve(a) => &a.common,
            Command::Spectral(a) => &a.common,
        }
    }
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn internal(msg: impl std::fmt::Display) -> CliError {
    CliError::Internal(msg.to_string())
}

fn build_spec(n: usize, args: &SpecArgs) -> Result<SchrodingerSpec, CliError> {
    if n == 0 {
        return Err(input("--n must be at least 1"));
    }
    let v = parse_poly(&args.potential, n).map_err(|e| input(format!("potential {e}")))?;
    let a = args
        .vector_potential
        .iter()
        .enumerate()
        .map(|(k, s)| parse_poly(s, n).map_err(|e| input(format!("vector potential A{} {e}", k + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    let e: Rational = parse_rational(&args.charge)
        .ok_or_else(|| input(format!("malformed charge '{}'", args.charge)))?;
    SchrodingerSpec::new(n, v, a, e).map_err(|e| input(e.to_string()))
}

fn spectral_error(e: SpectralError) -> CliError {
    match e {
        SpectralError::TimeDependentHamiltonian | SpectralError::Spec(_) => input(e.to_string()),
        other => internal(other),
    }
}

/// Runs one command and returns its report.
pub fn run(command: &Command) -> Result<Report, CliError> {
    let n = command.common().n;
    if n == 0 {
        return Err(input("--n must be at least 1"));
    }
    let mut report = match command {
        Command::Count(a) => run_count(a)?,
        Command::Killing(a) => run_killing(a)?,
        Command::Determine(a) => run_determine(a)?,
        Command::Solve(a) => run_solve(a)?,
        Command::Spectral(a) => run_spectral(a)?,
    };
    if n as u32 > PROVEN_MAX_DIM {
        report.outside_proven_range = true;
    }
    Ok(report)
}

fn run_count(a: &CountArgs) -> Result<Report, CliError> {
    let table = CountTable::new(a.common.n as u32, a.q).map_err(|e| input(e.to_string()))?;
    Ok(Report::counts(a.common.n, a.q, &table))
}

fn run_killing(a: &KillingArgs) -> Result<Report, CliError> {
    let n = a.common.n;
    let d = a.max_degree.unwrap_or_else(|| default_degree(a.rank, a.order));
    let basis = killing_basis::<Rational>(n, a.rank, a.order, d);
    if !a.no_verify {
        for e in &basis.elements {
            if !symmetrized_gradient(n, a.rank, a.order, e).values().all(|p| p.is_empty()) {
                return Err(internal("Killing basis element fails its equation"));
            }
        }
    }
    let saturated = killing_saturation::<Rational>(n, a.rank, a.order, d).saturated();
    let expected_s = if a.order == 0 {
        None
    } else {
        count_s(n as u32, a.rank + a.order - 1, a.rank).ok()
    };
    let expected_k = (a.order == 1).then(|| count_k(n as u32, a.rank).ok()).flatten();
    Ok(Report::killing(&basis, saturated, expected_s, expected_k))
}

fn run_determine(a: &DetermineArgs) -> Result<Report, CliError> {
    let spec = build_spec(a.common.n, &a.spec)?;
    let system = generate_determining_system(&spec, a.q);
    Ok(Report::system(&system))
}

fn run_solve(a: &SolveArgs) -> Result<Report, CliError> {
    let spec = build_spec(a.common.n, &a.spec)?;
    let deg_r = a.deg_r.unwrap_or_else(|| default_deg_r(a.q));
    let basis = if a.time_independent {
        if a.deg_t.is_some_and(|m| m != 0) {
            return Err(input("--time-independent fixes --deg-t to 0"));
        }
        restrict_time_independent(&spec, a.q, deg_r)
    } else {
        let deg_t = a.deg_t.unwrap_or_else(|| default_deg_t(spec.n, a.q));
        solve_polynomial_ansatz(&spec, a.q, deg_r, deg_t)
    }
    .map_err(|e| match e {
        symop::determining::DeterminingError::Verification(_) => internal(e),
        other => input(other.to_string()),
    })?;
    if !a.no_verify {
        let l = spec.build_l();
        for q in &basis.elements {
            if !l.commutator(q).map_err(internal)?.is_zero() {
                return Err(internal(format!("not a symmetry: {}", q.to_expr_string())));
            }
        }
    }
    let saturated = ansatz_saturated(&spec, &basis).map_err(internal)?;
    Ok(Report::solve(&basis, saturated))
}

fn run_spectral(a: &SpectralArgs) -> Result<Report, CliError> {
    let spec = build_spec(a.common.n, &a.spec)?;
    let deg = a.deg_r.unwrap_or_else(|| symop::spectral::default_degree(a.q));
    let analysis = analyze(&spec, a.q, deg).map_err(spectral_error)?;
    let eigen = all_eigen_data(&analysis).map_err(spectral_error)?;
    let verdict = theorem3_decide(&analysis).map_err(spectral_error)?;
    if !a.no_verify {
        for chain in eigen.iter().flat_map(|e| &e.chains) {
            for r in chain.suffix_symmetries() {
                if !r.symmetry_residual(&analysis.h).map_err(internal)?.is_zero() {
                    return Err(internal(format!("not a symmetry: {}", r.to_expr_string())));
                }
            }
        }
    }
    let saturated = spectral_saturated(&analysis).map_err(spectral_error)?;
    Ok(Report::spectral(&analysis, &eigen, &verdict, saturated))
}

/// Parses `args` (including the program name), runs, and renders.
/// Returns `(exit status, stdout, stderr)`.
pub fn main_with_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (1, String::new(), text)
            };
        }
    };
    let format = cli.command.common().format;
    match run(&cli.command) {
        Ok(report) => {
            let mut stderr = String::new();
            if report.outside_proven_range {
                stderr.push_str(&format!(
                    "warning: n > {PROVEN_MAX_DIM} lies outside the range where the bounds are proven\n"
                ));
            }
            let out = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report.to_json()).expect("serializable");
                    s.push('\n');
                    s
                }
                Format::Text => report.to_text(),
            };
            (0, out, stderr)
        }
        Err(e) => {
            let kind = if e.exit_code() == 1 { "error" } else { "internal error" };
            (e.exit_code(), String::new(), format!("{kind}: {}\n", e.message()))
        }
    }
}

/// JSON value of a report, for callers that embed the engine.
pub fn report_json(report: &Report) -> Value {
    report.to_json()
}
