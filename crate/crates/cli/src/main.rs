mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use interlab::construct::DEFAULT_ATOM_CAP;
use interlab::gadget::GadgetParams;
use interlab::suite::{run_suite, SuiteConfig, SuiteKind};

use source::Source;

/// Verification suites for the interpolation calculus on finite boolean
/// algebras.
#[derive(Parser, Debug)]
#[command(name = "interlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Projection and commutation identities on random and exhaustive cases.
    Lemmas(RunArgs),
    /// Pushout constructions compared on every small input.
    Colimits(RunArgs),
    /// Random approximation systems: interpolant synthesis and limits.
    Approx(RunArgs),
    /// The truncated gadget: tables, structure, orbit and chain.
    Gadget(RunArgs),
    /// Every suite.
    All(RunArgs),
    /// Prints an algebra or system as JSON.
    Dump {
        /// `free:N`, `gadget:M,G` or a path to a JSON document.
        source: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "INTERLAB_CAP_ATOMS", default_value_t = DEFAULT_ATOM_CAP)]
        cap_atoms: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Truncation depth of the gadget.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Base generators of the gadget.
    #[arg(long, default_value_t = 1)]
    g: usize,
    /// Random cases per lemma, random systems, and target cases.
    #[arg(long)]
    cases: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Atom bound for random cases.
    #[arg(long, default_value_t = 6)]
    max_atoms: usize,
    /// Worker threads; all cores by default.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Record wall-clock durations in the report.
    #[arg(long)]
    timings: bool,
    #[arg(long, env = "INTERLAB_CAP_ATOMS", default_value_t = DEFAULT_ATOM_CAP)]
    cap_atoms: usize,
}

impl RunArgs {
    fn config(&self) -> SuiteConfig {
        let mut c = SuiteConfig {
            seed: self.seed,
            max_atoms: self.max_atoms.max(1),
            gadget: GadgetParams::new(self.m, self.g),
            atom_cap: self.cap_atoms,
            timings: self.timings,
            ..SuiteConfig::default()
        };
        if let Some(n) = self.cases {
            c.lemma_cases = n;
            c.systems = n;
            c.target_cases = n;
        }
        c
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(kind: SuiteKind, args: &RunArgs) -> Result<bool, String> {
    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let report = run_suite(kind, &args.config()).map_err(|e| e.to_string())?;
    let text = match args.format {
        Format::Json => report.to_json().map_err(|e| e.to_string())? + "\n",
        Format::Text => report.to_text(),
    };
    emit(&text, args.out.as_ref())?;
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Lemmas(a) => run(SuiteKind::Lemmas, a),
        Command::Colimits(a) => run(SuiteKind::Colimits, a),
        Command::Approx(a) => run(SuiteKind::Approx, a),
        Command::Gadget(a) => run(SuiteKind::Gadget, a),
        Command::All(a) => run(SuiteKind::All, a),
        Command::Dump { source, out, cap_atoms } => Source::parse(source)
            .and_then(|s| s.to_json(*cap_atoms))
            .map_err(|e| e.to_string())
            .and_then(|json| emit(&(json + "\n"), out.as_ref()))
            .map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("interlab: {e}");
            ExitCode::from(2)
        }
    }
}
