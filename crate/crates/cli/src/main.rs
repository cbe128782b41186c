//! `qcog`: interference fits, CHSH statistics, corpus counts and double-slit
//! profiles from the command line.
//!
//! Exit codes: 0 success, 1 I/O, 2 invalid input or options, 3 the data
//! admit no Hilbert-space representation (or a report fails verification),
//! 4 an empty count table.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qcog_core::slit;

#[derive(Parser)]
#[command(
    name = "qcog",
    version,
    about = "Quantum-like models of concept combination"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit state vectors reproducing a disjunction dataset.
    Fit(FitArgs),
    /// CHSH statistic from coincidence counts or a product of marginals.
    Chsh(ChshArgs),
    /// Count grid phrases in a local corpus.
    Corpus(CorpusArgs),
    /// Sample double-slit densities on a screen grid.
    Slit(SlitArgs),
    /// Re-check the reconstruction recorded in a fit report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FitDemo {
    FruitsVegetables,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["input", "demo"])))]
pub struct FitArgs {
    /// CSV with header exemplar,mu_a,mu_b,mu_a_or_b.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Use a bundled dataset.
    #[arg(long, value_enum)]
    pub demo: Option<FitDemo>,
    /// CSV with header exemplar,sign fixing the lambda signs.
    #[arg(long, conflicts_with = "bundled_signs")]
    pub signs: Option<PathBuf>,
    /// Use the signs published with the bundled dataset.
    #[arg(long, requires = "demo")]
    pub bundled_signs: bool,
    /// Largest accepted |column sum - 1| before renormalizing.
    #[arg(long, default_value_t = qcog_core::model::DEFAULT_SUM_TOLERANCE)]
    pub tolerance: f64,
    /// Report path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ChshDemo {
    /// Bundled coincidence counts.
    AnimalActs,
    /// Bundled marginal counts, combined as independent sources.
    AnimalActsProduct,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["counts", "marginals", "demo"])))]
pub struct ChshArgs {
    /// Coincidence counts JSON (keys AB, ApB, ABp, ApBp).
    #[arg(long)]
    pub counts: Option<PathBuf>,
    /// Marginal counts JSON (keys A, Ap, B, Bp).
    #[arg(long)]
    pub marginals: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub demo: Option<ChshDemo>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    /// A directory reads one document per .txt file, a file one per line.
    Auto,
    OneDocPerFile,
    OneDocPerLine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Coincidence,
    Marginal,
    Both,
}

#[derive(Args)]
pub struct CorpusArgs {
    /// Directory of .txt files or a text file.
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    pub format: FormatArg,
    /// Grid JSON {"subjects": [[A1, A2], [A'1, A'2]], "verbs": [[B1, B2], [B'1, B'2]]};
    /// the bundled animal grid when omitted.
    #[arg(long)]
    pub grid: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "coincidence")]
    pub mode: Mode,
    /// Feed the counts into the CHSH statistic.
    #[arg(long)]
    pub chsh: bool,
    /// Also write the coincidence tables alone, readable by `chsh --counts`.
    #[arg(long)]
    pub counts_out: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SlitArgs {
    /// Metres.
    #[arg(long, default_value_t = 500e-9)]
    pub wavelength: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub separation: f64,
    #[arg(long, default_value_t = 1.0)]
    pub distance: f64,
    /// Envelope width of each single-slit amplitude on the screen.
    #[arg(long, default_value_t = 5e-4)]
    pub sigma: f64,
    /// Screen interval; defaults to 8 sigma beyond both slit images.
    #[arg(long, allow_negative_numbers = true, requires = "xmax")]
    pub xmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "xmin")]
    pub xmax: Option<f64>,
    #[arg(long, default_value_t = slit::DEFAULT_POINTS)]
    pub points: usize,
    /// Profile CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Optional run report JSON.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Report written by `qcog fit`.
    #[arg(long)]
    pub report: PathBuf,
    /// Allowed drift between recorded and recomputed residuals.
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Fit(a) => commands::run_fit(a),
        Command::Chsh(a) => commands::run_chsh(a),
        Command::Corpus(a) => commands::run_corpus(a),
        Command::Slit(a) => commands::run_slit(a),
        Command::Verify(a) => commands::run_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qcog: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
