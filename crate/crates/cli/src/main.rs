use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use river_banks_cli::commands::{self, Format, Output, WedgeInput, SEED_VAR};
use river_banks_cli::{CliError, EXIT_USAGE};

/// Cohomology tables of vector bundles on projective space.
///
/// Tables are given as bundle expressions such as "push(4,1,-1) on P3" or
/// "dual(S[2,1,0]) (+) 2*O(-1) on P3", or as files (ASCII dot display or
/// JSON). Exit codes: 0 success, 1 certified violation, 2 usage error,
/// 3 window-limited or undecidable.
#[derive(Parser)]
#[command(name = "river-banks", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ascii,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Ascii => Format::Ascii,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Render a table over a window of display columns
    Table {
        input: String,
        /// Display columns as lo:hi, e.g. -4:3
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, value_enum, default_value = "ascii")]
        format: FormatArg,
    },
    /// Regularity and coregularity indices as JSON
    Indices { input: String },
    /// Table of the tensor product of two homogeneous bundles
    Tensor {
        f: String,
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, value_enum, default_value = "ascii")]
        format: FormatArg,
    },
    /// Check the tensor-product regularity bounds on three tables F, G, F⊗G
    CheckBounds { f: String, g: String, fg: String },
    /// Check that the regularity bound is attained for S_λQ ⊗ S_μQ
    CheckSharpness {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        n: usize,
    },
    /// Boij-Söderberg chain decomposition of a 0-regular table
    Decompose { input: String },
    /// Unobstructedness criterion from the regularity indices
    Unobstructed { input: String },
    /// Kernel of the wedge-pair map on 2-forms in five variables
    WedgeKernel {
        #[arg(long, default_value_t = 200, conflicts_with_all = ["eta1", "eta2"])]
        trials: usize,
        /// Defaults to $RIVER_BANKS_SEED, then to a fixed built-in seed
        #[arg(long)]
        seed: Option<u64>,
        /// A 2-form such as "e12 + 1/2*e34"
        #[arg(long, requires = "eta2", allow_hyphen_values = true)]
        eta1: Option<String>,
        #[arg(long, requires = "eta1", allow_hyphen_values = true)]
        eta2: Option<String>,
    },
    /// Reference tables shipped with the tool
    Golden {
        #[command(subcommand)]
        action: GoldenAction,
    },
}

#[derive(Subcommand)]
enum GoldenAction {
    /// Re-derive every reference value
    Verify,
    /// Print one reference table
    Export {
        name: String,
        #[arg(long, value_enum, default_value = "ascii")]
        format: FormatArg,
    },
}

fn window(arg: Option<String>) -> Result<Option<river_banks::ColRange>, CliError> {
    arg.as_deref().map(commands::parse_window).transpose()
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Table { input, window: w, format } => commands::table(&input, window(w)?, format.into()),
        Command::Indices { input } => commands::indices(&input),
        Command::Tensor { f, g, window: w, format } => commands::tensor(&f, &g, window(w)?, format.into()),
        Command::CheckBounds { f, g, fg } => commands::check_bounds(&f, &g, &fg),
        Command::CheckSharpness { lambda, mu, n } => commands::check_sharpness(&lambda, &mu, n),
        Command::Decompose { input } => commands::decompose(&input),
        Command::Unobstructed { input } => commands::unobstructed(&input),
        Command::WedgeKernel { trials, seed, eta1, eta2 } => {
            let input = match (eta1, eta2) {
                (Some(eta1), Some(eta2)) => WedgeInput::Pair { eta1, eta2 },
                _ => WedgeInput::Random { trials, seed: commands::resolve_seed(seed, std::env::var(SEED_VAR).ok())? },
            };
            commands::wedge_kernel(input)
        }
        Command::Golden { action: GoldenAction::Verify } => commands::golden_verify(),
        Command::Golden { action: GoldenAction::Export { name, format } } => {
            commands::golden_export(&name, format.into())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = e.exit_code();
            ExitCode::from(if code == 0 { EXIT_USAGE as u8 } else { code as u8 })
        }
    }
}
