mod commands;
mod module;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{CliError, Outcome};

#[derive(Parser)]
#[command(name = "yr", version, about = "Exact computations in the Yangian Y(n) and the reflection algebras B(n,l)")]
struct Cli {
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    json: bool,

    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
pub struct SigArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub l: usize,
}

#[derive(Args, Clone, Copy)]
pub struct OrderArg {
    /// Truncation order D.
    #[arg(long, env = "YR_ORDER", default_value_t = 6)]
    pub order: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Quantum determinant of T(u).
    Qdet {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Sklyanin determinant of B(u) in B(n,l).
    Sdet {
        #[command(flatten)]
        sig: SigArgs,
        #[command(flatten)]
        order: OrderArg,
    },
    /// The scalar function relating sdet and qdet.
    Theta {
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Verify an identity exactly up to the truncation order.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        sig: SigArgs,
        #[command(flatten)]
        order: OrderArg,
        /// Sign of the twisted Yangian (`plus` pairs with l = 1, `minus` with l = 0).
        #[arg(long, value_enum)]
        sign: Option<SignArg>,
        /// Seed for the sample points of `ybe`.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of sample points for `ybe`.
        #[arg(long, default_value_t = 50)]
        points: usize,
        /// Run on a deliberately broken input; the check must fail.
        #[arg(long)]
        perturb: bool,
    },
    /// Build finite-dimensional modules and read off highest weights.
    Module {
        #[command(subcommand)]
        cmd: ModuleCmd,
    },
    /// Drinfeld data of a highest weight of B(n,l).
    Classify {
        #[command(flatten)]
        sig: SigArgs,
        /// JSON file with `{"mu": [ratfunc, ...]}`.
        #[arg(long)]
        weights: PathBuf,
        #[arg(long, default_value_t = yr_core::classify::DEFAULT_MAX_DEG)]
        max_deg: usize,
    },
    /// Existence conditions for the Verma module of a weight.
    VermaCheck {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        weights: PathBuf,
    },
}

#[derive(Copy, Clone, ValueEnum)]
pub enum Check {
    Rtt,
    Reflection,
    Unitarity,
    Coideal,
    SdetIdentity,
    Central,
    Twisted,
    Ybe,
}

#[derive(Copy, Clone, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

/// Evaluation modules `L(alpha, beta)` written `ALPHA,BETA`; repeat for tensor products.
#[derive(Args, Clone)]
pub struct BuildArgs {
    #[arg(long = "eval", value_name = "ALPHA,BETA", required = true, allow_hyphen_values = true)]
    pub evals: Vec<String>,
    /// Restrict to B(2,l).
    #[arg(long)]
    pub l: Option<usize>,
    /// With l > 0, tensor with the one-dimensional module V(l - gamma).
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
}

#[derive(Subcommand)]
pub enum ModuleCmd {
    /// The evaluation module L(alpha, beta) of Y(2).
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Tensor product of evaluation modules.
    Tensor {
        #[arg(long = "eval", value_name = "ALPHA,BETA", required = true, allow_hyphen_values = true)]
        evals: Vec<String>,
    },
    /// Restriction to B(2,l), with unitarity and weight predictions checked.
    Restrict {
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Highest vector and weight of a module.
    Hw {
        #[command(flatten)]
        build: BuildArgs,
    },
    /// The one-dimensional B(n,l)-module V(gamma).
    Onedim {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
    },
}

fn dispatch(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Qdet { n, order } => commands::qdet(n, order.order),
        Command::Sdet { sig, order } => commands::sdet(sig, order.order),
        Command::Theta { sig } => commands::theta(sig),
        Command::Verify {
            check,
            sig,
            order,
            sign,
            seed,
            points,
            perturb,
        } => verify::run(check, sig, order.order, sign, seed, points, perturb),
        Command::Module { cmd } => module::run(cmd),
        Command::Classify { sig, weights, max_deg } => commands::classify(sig, &weights, max_deg),
        Command::VermaCheck { sig, weights } => commands::verma_check(sig, &weights),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = dispatch(cli.command);
    output::emit(outcome, cli.json, cli.out.as_deref())
}
