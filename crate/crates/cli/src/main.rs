use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use iorder::config::{parse_config, Problem};
use iorder::pipeline::{demo_problem, run, Command, RunOptions, DEMOS};
use iorder::quotient::AssocMode;
use iorder::verifier::ConditionSet;

/// Exit status for unreadable or invalid input.
const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "iorder",
    version,
    about = "Check left I-orders in bisimple inverse ω-semigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Worker threads (default: available parallelism)
    #[arg(long, env = "IORDER_WORKERS", global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the group, endomorphism, ambient laws and window closure
    Validate(FileArgs),
    /// Check the left I-order conditions
    Check {
        #[command(flatten)]
        file: FileArgs,
        /// Comma list drawn from A,B,C,straight,lclass
        #[arg(long, default_value = "A,B,C,straight,lclass")]
        conditions: String,
    },
    /// Build the quotient of pairs and verify its structure
    Build {
        #[command(flatten)]
        file: FileArgs,
        #[command(flatten)]
        assoc: AssocArgs,
    },
    /// Build, then compare the quotient with the ambient semigroup
    Compare {
        #[command(flatten)]
        file: FileArgs,
        #[command(flatten)]
        assoc: AssocArgs,
    },
    /// Run a shipped preset end to end; lists presets when no name is given
    Demo {
        name: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        assoc: AssocArgs,
    },
}

#[derive(Args)]
struct FileArgs {
    /// Problem file
    config: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the JSON report to this file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the text summary
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AssocArgs {
    /// Check associativity on this many random class triples instead of all
    #[arg(long)]
    sample: Option<u64>,
    /// Seed for --sample
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl AssocArgs {
    fn mode(&self) -> AssocMode {
        match self.sample {
            Some(samples) => AssocMode::Sampled {
                samples,
                seed: self.seed,
            },
            None => AssocMode::Exhaustive,
        }
    }
}

fn load(path: &Path) -> Result<Problem> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let config = parse_config(&text).with_context(|| format!("in {}", path.display()))?;
    config
        .build()
        .with_context(|| format!("in {}", path.display()))
}

fn execute(cli: Cli) -> Result<u8> {
    if let Some(n) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot configure worker threads")?;
    }
    let mut options = RunOptions::default();
    let (command, problem, source, output) = match cli.command {
        Cmd::Validate(file) => {
            let p = load(&file.config)?;
            (
                Command::Validate,
                p,
                file.config.display().to_string(),
                file.output,
            )
        }
        Cmd::Check { file, conditions } => {
            options.conditions = match ConditionSet::parse(&conditions) {
                Some(set) => set,
                None => bail!("unknown condition in `{conditions}`; use A,B,C,straight,lclass"),
            };
            let p = load(&file.config)?;
            (
                Command::Check,
                p,
                file.config.display().to_string(),
                file.output,
            )
        }
        Cmd::Build { file, assoc } => {
            options.assoc = assoc.mode();
            let p = load(&file.config)?;
            (
                Command::Build,
                p,
                file.config.display().to_string(),
                file.output,
            )
        }
        Cmd::Compare { file, assoc } => {
            options.assoc = assoc.mode();
            let p = load(&file.config)?;
            (
                Command::Compare,
                p,
                file.config.display().to_string(),
                file.output,
            )
        }
        Cmd::Demo { name: None, .. } => {
            for (name, text) in DEMOS {
                let summary = text.lines().next().unwrap_or("").trim_start_matches("# ");
                println!("{name:<26} {summary}");
            }
            return Ok(0);
        }
        Cmd::Demo {
            name: Some(name),
            output,
            assoc,
        } => {
            options.assoc = assoc.mode();
            let p = demo_problem(&name)?;
            (Command::Demo, p, format!("demo:{name}"), output)
        }
    };

    let report = run(command, &problem, &source, &options)?;
    let json = report.to_json();
    if let Some(path) = &output.out {
        fs::write(path, &json).with_context(|| format!("cannot write {}", path.display()))?;
    }
    if output.json {
        print!("{json}");
    } else {
        print!("{}", report.to_text());
    }
    Ok(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
