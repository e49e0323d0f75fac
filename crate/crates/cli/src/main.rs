use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::{Outcome, Usage};

#[derive(Parser, Debug)]
#[command(name = "jsbo", version, about = "Exact Jordan triple calculus and intertwining operators")]
struct Cli {
    /// Also write the output to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Domain catalogue.
    Domains {
        #[command(subcommand)]
        cmd: DomainsCmd,
    },
    /// Expansion of h(x,y)^(-lambda) in the kernels K_m.
    KernelExpand(KernelExpandArgs),
    /// Renormalized Jack polynomial in power sums.
    Schur(SchurArgs),
    /// Reproducing kernel K_m(x,y).
    Kernel(KernelArgs),
    /// Operators.
    Operator {
        #[command(subcommand)]
        cmd: OperatorCmd,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Residue of a holographic family at a pole.
    Residue(ResidueArgs),
}

#[derive(Subcommand, Debug)]
enum DomainsCmd {
    List(FormatArgs),
}

#[derive(Subcommand, Debug)]
enum OperatorCmd {
    Emit(EmitArgs),
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    Intertwine(IntertwineArgs),
    Jordan(JordanArgs),
    Expansion(ExpansionArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args, Debug, Clone)]
pub struct FormatArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Shorthand for `--format json`.
    #[arg(long)]
    json: bool,
}

impl FormatArgs {
    pub fn get(&self, default: Format) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format.unwrap_or(default)
        }
    }
}

#[derive(Args, Debug)]
pub struct KernelExpandArgs {
    #[arg(long)]
    domain: String,
    #[arg(long, default_value_t = 4)]
    degree: u32,
    /// Rational value; symbolic when omitted.
    #[arg(long)]
    lambda: Option<String>,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args, Debug)]
pub struct SchurArgs {
    #[arg(long)]
    d: String,
    #[arg(long)]
    m: String,
    /// Rank; defaults to the length of `m`.
    #[arg(long)]
    r: Option<usize>,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    #[arg(long)]
    domain: String,
    #[arg(long)]
    m: String,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Pair tag, `tensor-sl2`, `tensor-sp2`, `tensor` (with --domain), `normal` or `mult`.
    #[arg(long)]
    pair: Option<String>,
    #[arg(long, default_value = "")]
    sizes: String,
    #[arg(long, default_value_t = 0)]
    k: u32,
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// Domain of a tensor pair.
    #[arg(long)]
    domain: Option<String>,
}

#[derive(Args, Debug)]
pub struct EmitArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// `symbolic` or a rational value.
    #[arg(long, default_value = "symbolic")]
    lambda: String,
    /// Second weight of a tensor pair.
    #[arg(long, default_value = "symbolic")]
    mu: String,
    /// Conjugate-degree budget of a holographic operator.
    #[arg(long, default_value_t = 6)]
    budget: u32,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args, Debug)]
pub struct IntertwineArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Run the whole catalogue instead of one pair.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 3)]
    max_degree: u32,
    /// `symbolic` or a rational value.
    #[arg(long, default_value = "symbolic")]
    lambda: String,
    #[arg(long, default_value = "symbolic")]
    mu: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args, Debug)]
pub struct JordanArgs {
    /// A domain, or `desk` for the four standard test domains.
    #[arg(long, default_value = "desk")]
    domain: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    points: usize,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args, Debug)]
pub struct ExpansionArgs {
    #[arg(long, default_value = "desk")]
    domain: String,
    #[arg(long, default_value_t = 6)]
    degree: u32,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args, Debug)]
pub struct ResidueArgs {
    #[arg(long)]
    pair: String,
    #[arg(long)]
    sizes: String,
    #[arg(long, default_value_t = 0)]
    k: u32,
    #[arg(long, default_value_t = 0)]
    l: u32,
    #[arg(long)]
    mu: String,
    /// Residue index; every index of the family when omitted.
    #[arg(long)]
    order: Option<i64>,
    #[arg(long, default_value_t = 3)]
    max_degree: u32,
    #[command(flatten)]
    fmt: FormatArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return output::usage_exit(&Usage(e.kind().to_string(), e.to_string()));
        }
    };
    let result = match &cli.cmd {
        Cmd::Domains { cmd: DomainsCmd::List(a) } => commands::domains_list(a),
        Cmd::KernelExpand(a) => commands::kernel_expand(a),
        Cmd::Schur(a) => commands::schur(a),
        Cmd::Kernel(a) => commands::kernel(a),
        Cmd::Operator { cmd: OperatorCmd::Emit(a) } => commands::operator_emit(a),
        Cmd::Verify { cmd: VerifyCmd::Intertwine(a) } => commands::verify_intertwine(a),
        Cmd::Verify { cmd: VerifyCmd::Jordan(a) } => commands::verify_jordan(a),
        Cmd::Verify { cmd: VerifyCmd::Expansion(a) } => commands::verify_expansion(a),
        Cmd::Residue(a) => commands::residue(a),
    };
    match result {
        Ok(out) => output::emit(out, cli.out.as_deref()),
        Err(u) => output::usage_exit(&u),
    }
}

pub type CmdResult = Result<Outcome, Usage>;
