//! `xlmhg test` runs one XL-mHG test; `xlmhg sim` runs a power scenario.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use xlmhg::input::{check_mixed, labeled_list, parse_count, parse_membership, parse_plain_list, parse_scores};
use xlmhg::report::{run_test, write_cutoffs_csv, DEFAULT_PSI};
use xlmhg::simulation::{simulate, write_csv, Scenario, SpecOverrides};
use xlmhg::{Error, TestParams};

#[derive(Parser)]
#[command(name = "xlmhg", version, about = "Exact mHG and XL-mHG enrichment tests")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test one ranked list.
    Test(TestArgs),
    /// Simulate a power scenario.
    Sim(SimArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct TestArgs {
    /// Plain 0/1 list, or item_id<TAB>score table with --membership.
    #[arg(long)]
    input: PathBuf,
    /// Item ids marking the 1's of a labeled list.
    #[arg(long)]
    membership: Option<PathBuf>,
    /// Minimum 1's above a cutoff, or a percentage of K ("15%").
    #[arg(long, default_value = "0")]
    x: String,
    /// Largest cutoff, or a percentage of N; defaults to N.
    #[arg(long)]
    l: Option<String>,
    /// Enrichment-score threshold.
    #[arg(long, default_value_t = DEFAULT_PSI)]
    psi: f64,
    /// Write n,k_n,hg_pvalue,fold_enrichment here.
    #[arg(long)]
    per_cutoff: Option<PathBuf>,
    /// Report only the Lipson bound, skipping the exact p-value.
    #[arg(long)]
    bound_only: bool,
    /// Reverse the list to test for enrichment at the bottom.
    #[arg(long)]
    invert: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct SimArgs {
    /// scenario1 (weak broad enrichment) or scenario2 (outliers).
    #[arg(long)]
    scenario: Option<String>,
    /// key=value file with any of: scenario, N, K, fold, outliers, window,
    /// replicates, seed, alpha, X, L. Flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "n")]
    len: Option<usize>,
    #[arg(long = "k")]
    ones: Option<usize>,
    #[arg(long)]
    fold: Option<f64>,
    #[arg(long)]
    outliers: Option<usize>,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    replicates: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    l: Option<String>,
    /// csv: per-replicate rows; json: distribution summary.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Also write the per-replicate CSV here.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write the JSON summary here.
    #[arg(long)]
    summary: Option<PathBuf>,
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn run_test_cmd(args: TestArgs) -> Result<(), Failure> {
    let text = read(&args.input)?;
    let mut list = match &args.membership {
        None => parse_plain_list(&text)
            .map_err(|e| in_file(e, &args.input))?,
        Some(path) => {
            let scores = parse_scores(&text).map_err(|e| in_file(e, &args.input))?;
            let doc = labeled_list(scores, &parse_membership(&read(path)?));
            for id in &doc.unknown_members {
                eprintln!("warning: membership id '{id}' not found in {}", args.input.display());
            }
            doc.list
        }
    };
    check_mixed(&list, &args.input.display().to_string())?;
    if args.invert {
        list = list.inverted();
    }
    let min_ones = parse_count(&args.x, list.ones(), "--x")?;
    let max_cutoff = match &args.l {
        Some(l) => parse_count(l, list.len(), "--l")?,
        None => list.len(),
    };
    let full = run_test(&list, TestParams::new(min_ones, max_cutoff), args.psi, args.bound_only)?;

    if let Some(path) = &args.per_cutoff {
        write_cutoffs_csv(&full.cutoffs, io::BufWriter::new(fs::File::create(path)?))?;
    }
    let mut out = io::stdout().lock();
    match args.format {
        Format::Json => writeln!(out, "{}", full.report.to_json())?,
        Format::Csv => full.report.write_csv(&mut out)?,
    }
    Ok(())
}

fn in_file(e: Error, path: &Path) -> Error {
    match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{} {location}", path.display()),
            message,
        },
        other => other,
    }
}

fn run_sim_cmd(args: SimArgs) -> Result<(), Failure> {
    let base = match &args.config {
        Some(path) => SpecOverrides::parse(&read(path)?).map_err(|e| in_file(e, path))?,
        None => SpecOverrides::default(),
    };
    let flags = SpecOverrides {
        kind: args.scenario.as_deref().map(str::parse::<Scenario>).transpose()?,
        len: args.len,
        ones: args.ones,
        fold: args.fold,
        outliers: args.outliers,
        window: args.window,
        replicates: args.replicates,
        seed: args.seed,
        alpha: args.alpha,
        x: args.x,
        l: args.l,
    };
    let spec = base.merge(flags).build()?;
    let result = simulate(&spec)?;
    let summary = serde_json::to_string_pretty(&result.summary).expect("summary serializes");

    if let Some(path) = &args.output {
        write_csv(&result.replicates, io::BufWriter::new(fs::File::create(path)?))?;
    }
    if let Some(path) = &args.summary {
        fs::write(path, format!("{summary}\n"))?;
    }
    let mut out = io::stdout().lock();
    match args.format {
        Format::Csv => write_csv(&result.replicates, &mut out)?,
        Format::Json => writeln!(out, "{summary}")?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Test(args) => run_test_cmd(args),
        Command::Sim(args) => run_sim_cmd(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse { .. } => 2,
                Error::Domain(_) | Error::Config(_) => 3,
                Error::TooLarge { .. } => 1,
            })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
