use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "kbessel", version, about = "Evaluate generalized k-Bessel functions and check their inequalities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Evaluate one function over a grid of x values.
    Scan(ScanArgs),
    /// Check a monotonicity or log-convexity claim.
    Verify(VerifyArgs),
    /// Compare a primary evaluation with an independent reference.
    OracleCompare(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    #[value(name = "gamma_k")]
    GammaK,
    #[value(name = "digamma_k")]
    DigammaK,
    #[value(name = "trigamma_k")]
    TrigammaK,
    #[value(name = "pochhammer_k")]
    PochhammerK,
    W,
    I,
    J,
    #[value(name = "phi_k")]
    PhiK,
    Pfq,
    Wright,
    #[value(name = "wright-rep")]
    WrightRep,
}

impl Function {
    pub fn name(self) -> &'static str {
        match self {
            Function::GammaK => "gamma_k",
            Function::DigammaK => "digamma_k",
            Function::TrigammaK => "trigamma_k",
            Function::PochhammerK => "pochhammer_k",
            Function::W => "w",
            Function::I => "i",
            Function::J => "j",
            Function::PhiK => "phi_k",
            Function::Pfq => "pfq",
            Function::Wright => "wright",
            Function::WrightRep => "wright-rep",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Integral,
    Limit,
    #[value(name = "wright-rep")]
    WrightRep,
    #[value(name = "classical-limit")]
    ClassicalLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpacingArg {
    Linear,
    Logarithmic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Increasing,
    Decreasing,
    Convex,
    Concave,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write to this file (atomically) instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Series term budget; overrides KBESSEL_MAX_TERMS.
    #[arg(long)]
    pub max_terms: Option<usize>,
}

/// Every named real a function or claim may need. Unused ones are ignored.
#[derive(Debug, Default, Args)]
pub struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    /// Alias of `--x` for the k-digamma and k-trigamma argument.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "x")]
    pub t: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// The k-Bessel sign/scale parameter c.
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<f64>,
    /// Upper parameter a of the k-confluent function.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Lower parameter c of the k-confluent function.
    #[arg(long, allow_negative_numbers = true)]
    pub c_param: Option<f64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Upper parameters: reals for pfq (`1,2.5`), pairs for wright (`1:0.5,2:1`).
    #[arg(long, allow_hyphen_values = true)]
    pub upper: Option<String>,
    /// Lower parameters, same syntax as `--upper`.
    #[arg(long, allow_hyphen_values = true)]
    pub lower: Option<String>,
}

#[derive(Debug, Default, Args)]
pub struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub stop: Option<f64>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, value_enum)]
    pub spacing: Option<SpacingArg>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub function: Function,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// For wright-rep: also evaluate with the printed prefactor and report the ratio.
    #[arg(long)]
    pub compare_paper_constants: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(value_enum)]
    pub function: Function,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// thm1, thm2, thm3-turan, thm4a, thm4b, thm4c or lemma-seq.
    pub claim: String,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Check tolerance; defaults to 1e-9 for ratios and 1e-12 for midpoints.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Check against this direction instead of the claimed one.
    #[arg(long, value_enum)]
    pub claim_direction: Option<DirectionArg>,
    /// Sample this many admissible parameter sets instead of using explicit ones.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sequence length for lemma-seq.
    #[arg(long, default_value_t = 100)]
    pub n_max: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(value_enum)]
    pub oracle: Oracle,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Tolerance of the primary evaluation (series or quadrature).
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}
