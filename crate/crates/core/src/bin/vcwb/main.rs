use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use vcwb::completion::DEFAULT_DIM_CAP;
use vcwb::workbench::{
    cmd_check_tensored, cmd_classify, cmd_complete, cmd_export, cmd_search_tensoring, cmd_validate, error_exit_code,
    golden_check, write_atomic, CompleteOptions, ExportKind, Outcome, Source, ValidateKind, EXIT_INPUT,
};

/// Exact checks and constructions for categories enriched in graded vector spaces.
///
/// Inputs are JSON files or built-in fixtures written `builtin:NAME`.
/// Exit status: 0 when every check passes, 1 on a failed or undetermined check,
/// 2 on unreadable or malformed input.
#[derive(Parser)]
#[command(name = "vcwb", version)]
struct Cli {
    /// Report format on stdout.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    report: Format,
    /// Include wall-clock time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Base,
    Vcat,
    Vmonoidal,
    Tensoring,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportArg {
    Base,
    Vcat,
    Vmonoidal,
}

#[derive(clap::Args)]
struct OutputArgs {
    /// Where to write the produced document.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Compare the produced document with this file; a difference fails the run.
    #[arg(long)]
    golden: Option<PathBuf>,
    /// Overwrite the golden file instead of comparing.
    #[arg(long, requires = "golden")]
    bless: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the law checks for a base, V-category, V-monoidal category or tensoring.
    Validate {
        #[arg(value_enum)]
        kind: Kind,
        file: Source,
        /// The category a tensoring acts on.
        #[arg(long)]
        category: Option<Source>,
    },
    /// Materialize the completion on a window of weights.
    Complete {
        category: Source,
        window: Source,
        /// Treat the input as V-monoidal and build the monoidal completion.
        #[arg(long)]
        monoidal: bool,
        /// Largest total dimension allowed for a weight.
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the equivalent characterizations of being tensored.
    CheckTensored {
        category: Source,
        tensoring: Source,
        #[arg(long)]
        monoidal: bool,
    },
    /// Compute the center functor of a V-monoidal category.
    Classify {
        vmonoidal: Source,
        tensoring: Source,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Look for a tensoring among the existing objects.
    SearchTensoring {
        category: Source,
        #[arg(long)]
        weights: Option<Source>,
        #[arg(long, default_value_t = 64)]
        max_candidates: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the JSON form of an input.
    Export {
        #[arg(value_enum)]
        kind: ExportArg,
        file: Source,
    },
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("VCWB_THREADS") else { return Ok(()) };
    let n: usize = v.parse().ok().filter(|n| *n > 0).ok_or_else(|| format!("VCWB_THREADS must be a positive integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn dispatch(cmd: &Command) -> vcwb::Result<(Outcome, Option<&OutputArgs>)> {
    Ok(match cmd {
        Command::Validate { kind, file, category } => {
            let kind = match kind {
                Kind::Base => ValidateKind::Base,
                Kind::Vcat => ValidateKind::Vcat,
                Kind::Vmonoidal => ValidateKind::Vmonoidal,
                Kind::Tensoring => ValidateKind::Tensoring,
            };
            (cmd_validate(kind, file, category.as_ref())?, None)
        }
        Command::Complete { category, window, monoidal, dim_cap, output } => {
            (cmd_complete(category, window, CompleteOptions { monoidal: *monoidal, dim_cap: *dim_cap })?, Some(output))
        }
        Command::CheckTensored { category, tensoring, monoidal } => (cmd_check_tensored(category, tensoring, *monoidal)?, None),
        Command::Classify { vmonoidal, tensoring, output } => (cmd_classify(vmonoidal, tensoring)?, Some(output)),
        Command::SearchTensoring { category, weights, max_candidates, seed, output } => {
            (cmd_search_tensoring(category, weights.as_ref(), *max_candidates, *seed)?, Some(output))
        }
        Command::Export { kind, file } => {
            let kind = match kind {
                ExportArg::Base => ExportKind::Base,
                ExportArg::Vcat => ExportKind::Vcat,
                ExportArg::Vmonoidal => ExportKind::Vmonoidal,
            };
            (cmd_export(kind, file)?, None)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("vcwb: {e}");
        return ExitCode::from(EXIT_INPUT as u8);
    }
    let start = Instant::now();
    let (mut outcome, output) = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("vcwb: {e}");
            return ExitCode::from(error_exit_code(&e) as u8);
        }
    };
    let export = matches!(cli.command, Command::Export { .. });
    if let (Some(args), Some(text)) = (output, outcome.output_text()) {
        if let Some(g) = &args.golden {
            match golden_check(&text, g, args.bless) {
                Ok(check) => outcome.report.push(check),
                Err(e) => {
                    eprintln!("vcwb: {e}");
                    return ExitCode::from(error_exit_code(&e) as u8);
                }
            }
        }
        if let Some(out) = &args.out {
            if let Err(e) = write_atomic(out, &text) {
                eprintln!("vcwb: {e}");
                return ExitCode::from(error_exit_code(&e) as u8);
            }
        }
    }
    if cli.timing {
        outcome.report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    if export {
        if let Some(text) = outcome.output_text() {
            print!("{text}");
        }
    } else {
        match cli.report {
            Format::Json => print!("{}", outcome.report.to_json()),
            Format::Text => print!("{}", outcome.report.to_text()),
        }
    }
    ExitCode::from(outcome.report.exit_code() as u8)
}
