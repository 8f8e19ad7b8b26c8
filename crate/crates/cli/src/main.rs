use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use pglab::corpus::corpus;
use pglab::report::{character_table_csv, AnalysisReport};
use pglab::spec::parse_group_spec;
use pglab::verify::{summary_line, verify_corpus};
use pglab_core::analysis::{AnalysisOptions, GroupAnalysis, DEFAULT_BRUTE_UNITS_THRESHOLD};
use pglab_core::group::{build_group, FiniteGroup};

#[derive(Parser)]
#[command(name = "pglab", version, about = "Rational representations and Burnside units of finite p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Cross-check every genotype against the exhaustive subquotient search (order <= 32).
    #[arg(long)]
    exhaustive_genetic: bool,
    /// Largest number of subgroup classes for which unit counts are enumerated.
    #[arg(long, default_value_t = DEFAULT_BRUTE_UNITS_THRESHOLD)]
    brute_units_threshold: usize,
}

impl Common {
    fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            brute_units_threshold: self.brute_units_threshold,
            exhaustive_genetic: self.exhaustive_genetic,
            corrupt_indicators: false,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyse one group given by a spec like `C4*D16`, or by a multiplication table.
    Analyze {
        #[arg(required_unless_present = "import", conflicts_with = "import")]
        spec: Option<String>,
        /// JSON file with `p` and a multiplication table `mul`.
        #[arg(long, value_name = "FILE")]
        import: Option<PathBuf>,
        /// Print the JSON report (the default).
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Print the character table as CSV instead of the JSON report.
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Analyse a group given by a JSON multiplication table.
    Import {
        file: PathBuf,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Analyse every group in the built-in corpus and check all invariants.
    Verify {
        #[arg(long, default_value_t = 32)]
        max_order: u64,
        /// Emit one JSON object per group instead of text lines.
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
        #[command(flatten)]
        common: Common,
    },
    /// List the corpus.
    Corpus {
        #[arg(long, default_value_t = 32)]
        max_order: u64,
    },
}

#[derive(Deserialize)]
struct Imported {
    p: u32,
    mul: Vec<Vec<usize>>,
}

fn load(path: &PathBuf) -> Result<FiniteGroup, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let data: Imported = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    build_group(&data.mul, data.p).map_err(|e| e.to_string())
}

// Write to stdout, treating a closed pipe as a normal end of output.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

fn configure_threads() {
    if let Some(n) = std::env::var("PGLAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // Fails only if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn report(name: String, group: &FiniteGroup, csv: bool, common: &Common) -> ExitCode {
    let analysis = match GroupAnalysis::run(group, &common.options()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if csv {
        let _ = write!(std::io::stdout().lock(), "{}", character_table_csv(&analysis));
    } else {
        out!("{}", AnalysisReport::new(name, &analysis).to_json());
    }
    if let Some(e) = analysis.counts.failure() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match cli.command {
        Command::Analyze { spec, import, csv, common, .. } => {
            let (name, group) = match (spec, import) {
                (Some(text), _) => {
                    let parsed = parse_group_spec(&text)
                        .map_err(|e| e.to_string())
                        .and_then(|s| s.build().map(|g| (s.to_string(), g)).map_err(|e| e.to_string()));
                    match parsed {
                        Ok(pair) => pair,
                        Err(e) => {
                            eprintln!("error: {e}");
                            return ExitCode::from(2);
                        }
                    }
                }
                (None, Some(path)) => match load(&path) {
                    Ok(g) => (path.display().to_string(), g),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                },
                (None, None) => unreachable!("clap requires one of them"),
            };
            report(name, &group, csv, &common)
        }
        Command::Import { file, csv, common, .. } => match load(&file) {
            Ok(g) => report(file.display().to_string(), &g, csv, &common),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Verify { max_order, json, inject_fault, common } => {
            let mut opts = common.options();
            opts.corrupt_indicators = inject_fault;
            let specs = corpus(max_order);
            let outcomes = verify_corpus(&specs, &opts);
            for o in &outcomes {
                if json {
                    out!("{}", serde_json::to_string(o).expect("outcome serializes"));
                } else {
                    match &o.failure {
                        None => out!("PASS {} ({} Galois classes)", o.spec, o.galois_classes),
                        Some(f) => out!("FAIL {}: {f}", o.spec),
                    }
                }
            }
            let summary = summary_line(&outcomes);
            if json {
                eprintln!("{summary}");
            } else {
                out!("{summary}");
            }
            if outcomes.iter().all(|o| o.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Corpus { max_order } => {
            for s in corpus(max_order) {
                out!("{s}\t{}", s.order());
            }
            ExitCode::SUCCESS
        }
    }
}
