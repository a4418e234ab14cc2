use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use braidpbw_cli::{
    cmd_check, cmd_coinv, cmd_commutator, cmd_corpus, cmd_corpus_emit, cmd_grk, cmd_hilbert, cmd_nf, cmd_pbw,
    cmd_pipeline, CliResult, EXIT_INPUT,
};
use braidpbw_core::io::to_canonical_string;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "braidpbw", version, about = "Braided Hopf algebras: axioms, filtrations, coinvariants, PBW verdicts")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Also write the JSON document here.
    #[arg(long, global = true)]
    report: Option<PathBuf>,

    /// Largest tensor degree the free algebra may reach.
    #[arg(long, global = true, env = "BRAIDPBW_DEGREE_CAP", default_value_t = 8)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every axiom checker on a bialgebra.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// Filtration, associated graded, coinvariants and PBW verdict in one report.
    Pipeline {
        #[arg(long)]
        input: PathBuf,
        /// Hopf subalgebra K; span(1) when omitted.
        #[arg(long)]
        sub: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        degree: usize,
    },
    /// Run each corpus entry against its expectations.
    Corpus {
        #[arg(long, default_value = "corpus/entries")]
        dir: PathBuf,
    },
    /// Write the built-in corpus to disk.
    CorpusEmit {
        #[arg(long, default_value = "corpus")]
        dir: PathBuf,
    },
    /// Normal form of a word in the symmetric algebra of a braided space.
    Nf {
        #[arg(long)]
        input: PathBuf,
        word: String,
    },
    /// Braided commutator of two words in the tensor algebra.
    Commutator {
        #[arg(long)]
        input: PathBuf,
        a: String,
        b: String,
    },
    /// Dimensions of the symmetric algebra degree by degree.
    Hilbert {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        degree: usize,
    },
    /// Associated graded bialgebra relative to a Hopf subalgebra.
    Grk {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        sub: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coinvariant algebra of a graded bialgebra over its degree-0 part.
    Coinv {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// PBW verdict for a connected graded bialgebra.
    Pbw {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        degree: usize,
    },
}

fn run(cli: &Cli) -> (CliResult, Option<&PathBuf>) {
    match &cli.command {
        Command::Check { input } => (cmd_check(input), None),
        Command::Pipeline { input, sub, degree } => (cmd_pipeline(input, sub.as_deref(), *degree, cli.cap), None),
        Command::Corpus { dir } => (cmd_corpus(dir, cli.cap), None),
        Command::CorpusEmit { dir } => (cmd_corpus_emit(dir), None),
        Command::Nf { input, word } => (cmd_nf(input, word), None),
        Command::Commutator { input, a, b } => (cmd_commutator(input, a, b, cli.cap), None),
        Command::Hilbert { input, degree } => (cmd_hilbert(input, *degree, cli.cap), None),
        Command::Grk { input, sub, out } => (cmd_grk(input, sub.as_deref()), out.as_ref()),
        Command::Coinv { input, out } => (cmd_coinv(input), out.as_ref()),
        Command::Pbw { input, degree } => (cmd_pbw(input, *degree, cli.cap), None),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let (result, out) = run(&cli);
    match result {
        Ok(outcome) => {
            let doc = to_canonical_string(&outcome.json);
            for path in [cli.report.as_ref(), out].into_iter().flatten() {
                if let Err(e) = fs::write(path, &doc) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(EXIT_INPUT as u8);
                }
            }
            match cli.format {
                Format::Json => print!("{doc}"),
                Format::Text => print!("{}", outcome.text),
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
