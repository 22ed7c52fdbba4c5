//! `lrbsim`: runs benchmarking experiments described by TOML spec files.

mod error;
mod output;
mod runner;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use error::CliError;
use runner::Options;
use spec::ExperimentKind;

#[derive(Parser)]
#[command(name = "lrbsim", version, about = "Randomized and logical randomized benchmarking simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment a spec file (or bundled spec name) describes.
    Run(RunArgs),
    /// As `run`, requiring an rb spec.
    Rb(RunArgs),
    /// As `run`, requiring an lrb spec.
    Lrb(RunArgs),
    /// As `run`, requiring an lrb-shield spec.
    #[command(name = "lrb-shield")]
    LrbShield(RunArgs),
    /// As `run`, requiring a surjectivity spec.
    Surjectivity(RunArgs),
    /// As `run`, requiring a twirl spec.
    Twirl(RunArgs),
    /// As `run`, requiring a fit spec.
    Fit(RunArgs),
    /// List the bundled specs.
    List,
    /// Print a bundled spec.
    Show { name: String },
}

#[derive(Args)]
struct RunArgs {
    /// Path to a TOML spec, or the name of a bundled spec.
    spec: String,
    /// Output directory; overrides the spec's `output`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write SVG plots.
    #[arg(long)]
    plot: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Overrides the spec's seed.
    #[arg(long)]
    seed: Option<u64>,
}

fn run(args: RunArgs, expect: Option<ExperimentKind>) -> Result<(), CliError> {
    if let Some(n) = args.threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    let loaded = spec::load(&args.spec)?;
    let opts = Options {
        out: args.out,
        plot: args.plot,
        seed: args.seed,
        expect,
    };
    for path in runner::execute(&loaded, &opts)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => run(a, None),
        Command::Rb(a) => run(a, Some(ExperimentKind::Rb)),
        Command::Lrb(a) => run(a, Some(ExperimentKind::Lrb)),
        Command::LrbShield(a) => run(a, Some(ExperimentKind::LrbShield)),
        Command::Surjectivity(a) => run(a, Some(ExperimentKind::Surjectivity)),
        Command::Twirl(a) => run(a, Some(ExperimentKind::Twirl)),
        Command::Fit(a) => run(a, Some(ExperimentKind::Fit)),
        Command::List => {
            for (name, _) in spec::BUNDLED {
                println!("{name}");
            }
            Ok(())
        }
        Command::Show { name } => match spec::BUNDLED.iter().find(|(n, _)| *n == name) {
            Some((_, text)) => {
                print!("{text}");
                Ok(())
            }
            None => Err(CliError::Config(format!("no bundled spec named {name}"))),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lrbsim: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
