//! `rz`: command-line front end for the rz-core engines.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage or parse error,
//! 3 bound exceeded.

mod run;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "rz", version, about = "Clausal logic and answer models over finite domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Inputs and switches shared by every verb. File arguments also accept
/// the name of a bundled fixture (`restaurant`, `wishes`, `table1`, ...).
#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    /// Poset file.
    #[arg(long, value_name = "FILE")]
    pub domain: Option<String>,
    /// Domain program, or classical program for the answer-set verbs.
    #[arg(long, value_name = "FILE")]
    pub program: Option<String>,
    /// Formal context file.
    #[arg(long, value_name = "FILE")]
    pub context: Option<String>,
    /// Context file format; defaults from the file extension.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Theory file, or inline clauses such as `{a} {b, c}`.
    #[arg(long, value_name = "FILE|TEXT")]
    pub theory: Option<String>,
    /// Query clause, e.g. `{a, b}`.
    #[arg(long, value_name = "CLAUSE")]
    pub query: Option<String>,
    /// Seed for generated instances and sampling.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of generated instances when running from a seed.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Reject domains with more elements than this.
    #[arg(long, value_name = "N")]
    pub max_domain: Option<usize>,
    /// Check every attribute subset regardless of size.
    #[arg(long)]
    pub exhaustive: bool,
    /// Fail instead of inserting `_bot_` when a poset has no least element.
    #[arg(long)]
    pub strict_bottom: bool,
    /// Emit JSON with sorted keys.
    #[arg(long)]
    pub json: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Cxt,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a poset and summarise its order.
    CheckDomain(Opts),
    /// Decide whether a theory entails a clause.
    Entail(Opts),
    /// Models of a theory or of a negation-free program.
    Models(Opts),
    /// Answer models of a program.
    AnswerModels(Opts),
    /// Min-answer models of a program.
    MinAnswerModels(Opts),
    /// Least fixpoint of T_P, compared with cons(P).
    Fixpoint(Opts),
    /// Answer sets of a classical program.
    AspSolve(Opts),
    /// Check min-answer models against answer sets.
    VerifyThm1(Opts),
    /// Check minimal models against minimally closed sets.
    VerifyThm2(Opts),
    /// All concepts of a context.
    FcaConcepts(Opts),
    /// Attribute and object concepts with their order.
    FcaAoc(Opts),
    /// The domain built from a context, as a poset file.
    FcaDomain(Opts),
    /// Check concept closure against entailment.
    #[command(alias = "verify-thm3")]
    FcaVerifyThm3(Opts),
}

impl Command {
    fn split(self) -> (&'static str, Opts) {
        match self {
            Command::CheckDomain(o) => ("check-domain", o),
            Command::Entail(o) => ("entail", o),
            Command::Models(o) => ("models", o),
            Command::AnswerModels(o) => ("answer-models", o),
            Command::MinAnswerModels(o) => ("min-answer-models", o),
            Command::Fixpoint(o) => ("fixpoint", o),
            Command::AspSolve(o) => ("asp-solve", o),
            Command::VerifyThm1(o) => ("verify-thm1", o),
            Command::VerifyThm2(o) => ("verify-thm2", o),
            Command::FcaConcepts(o) => ("fca-concepts", o),
            Command::FcaAoc(o) => ("fca-aoc", o),
            Command::FcaDomain(o) => ("fca-domain", o),
            Command::FcaVerifyThm3(o) => ("fca-verify-thm3", o),
        }
    }
}

fn main() -> ExitCode {
    let (verb, opts) = Cli::parse().command.split();
    let report = run::run(verb, &opts);
    print!("{}", report.render(verb, &opts));
    if !opts.json
        && let Some(msg) = &report.error
    {
        eprintln!("error: {msg}");
    }
    ExitCode::from(report.status.exit_code())
}
