use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fga_cli::{derive, dims_table, evaluate_corpus, first_type_error, parse, parse_corpus, ParseError};
use fga_core::{crosstalk_experiment, Error, Lexicon, LexiconError, TarskianModel};

#[derive(Parser)]
#[command(name = "fga", version, about = "Derive and evaluate sentences of the geometric-algebra fragment")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive one sentence and print its value
    Derive {
        sentence: String,
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        model: Option<PathBuf>,
        /// Print every composition step
        #[arg(long)]
        trace: bool,
    },
    /// Evaluate a corpus against a model
    Eval {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        model: PathBuf,
        /// Treat disagreements between listed and geometric extensions as errors
        #[arg(long)]
        strict: bool,
    },
    /// Print the grade dimensions of an n-dimensional algebra truncated at grade K
    Dims { n: u64, k: u64 },
    /// Compare exact and HRR role-filler retrieval
    Bench {
        #[arg(long, default_value_t = 5)]
        max_bindings: usize,
        #[arg(long, default_value_t = 512)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Io(String),
    Parse(ParseError),
    Type(String),
    Model(String),
    Schema(String),
    Mismatch(usize),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) | Failure::Mismatch(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Type(_) => 3,
            Failure::Model(_) => 4,
            Failure::Schema(_) => 5,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(m) => format!("io error: {m}"),
            Failure::Parse(e) => format!("parse error: {e}"),
            Failure::Type(m) => format!("type error: {m}"),
            Failure::Model(m) => format!("model error: {m}"),
            Failure::Schema(m) => format!("schema error: {m}"),
            Failure::Mismatch(n) => format!("{n} corpus row(s) did not match their expectation"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Model(_) | Error::ModelRequired | Error::UnknownPredicate(_) => Failure::Model(e.to_string()),
            Error::ModelSchema { .. } => Failure::Schema(e.to_string()),
            _ => Failure::Type(e.to_string()),
        }
    }
}

fn load_lexicon(path: &Path) -> Result<Lexicon, Failure> {
    Lexicon::load(path).map_err(|e| match e {
        LexiconError::Io { .. } => Failure::Io(e.to_string()),
        _ => Failure::Schema(format!("{}: {e}", path.display())),
    })
}

fn load_model(path: &Path, lexicon: &Lexicon) -> Result<TarskianModel, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    TarskianModel::from_json(&text, lexicon).map_err(Failure::from)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Derive { sentence, lexicon, model, trace } => {
            let lex = load_lexicon(&lexicon)?;
            let model = model.map(|m| load_model(&m, &lex)).transpose()?;
            let ast = parse(&sentence, &lex).map_err(Failure::Parse)?;
            let out = derive(&ast, &lex, model.as_ref())?;
            if trace {
                print!("{}", out.derivation.render());
            }
            let grade = out.grade.map_or("-".into(), |g| g.to_string());
            match (out.scalar, &out.derivation.result) {
                (Some(v), _) => println!("value: {v:.6} (grade {grade})"),
                (None, Some(m)) => println!("value: {} (grade {grade})", lex.space().format(m)),
                (None, None) => println!("value: - (grade {grade})"),
            }
            if let (Some(t), Some(m)) = (out.truth, &model) {
                println!("truth: {} (τ = {}, grade-0 result: {})", u8::from(t), m.tau(), out.grade == Some(0));
            }
            if let Some(r) = first_type_error(&out.derivation) {
                return Err(Failure::Type(r.to_string()));
            }
            Ok(())
        }
        Command::Eval { corpus, lexicon, model, strict } => {
            let lex = load_lexicon(&lexicon)?;
            let model = load_model(&model, &lex)?;
            for w in model.consistency_warnings(&lex)? {
                eprintln!("warning: {w}");
                if strict {
                    return Err(Failure::Model(w));
                }
            }
            let text = std::fs::read_to_string(&corpus).map_err(|e| Failure::Io(format!("{}: {e}", corpus.display())))?;
            let rows = parse_corpus(&text).map_err(|e| Failure::Schema(format!("{}: {e}", corpus.display())))?;
            println!("sentence | scalar | truth | grade | status");
            let results = evaluate_corpus(&rows, &lex, &model);
            for r in &results {
                println!("{}", r.render());
            }
            let failed = results.iter().filter(|r| !r.passed()).count();
            if failed > 0 {
                return Err(Failure::Mismatch(failed));
            }
            Ok(())
        }
        Command::Dims { n, k } => {
            println!("{}", dims_table(n, k));
            Ok(())
        }
        Command::Bench { max_bindings, dim, trials, seed } => {
            let rows = crosstalk_experiment(max_bindings, dim, trials, seed)?;
            println!("m\tfga_err\thrr_err_mean\thrr_err_std");
            for r in rows {
                println!("{}\t{:.3e}\t{:.6}\t{:.6}", r.bindings, r.fga_max_error, r.hrr_error_mean, r.hrr_error_std);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message());
            ExitCode::from(f.code())
        }
    }
}
