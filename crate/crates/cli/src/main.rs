use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use waring_cli::{execute, Command, OutputFormat, RunConfig};
use waring_core::decide::FieldMode;

/// Decide whether a homogeneous polynomial is a linear combination of d-th
/// powers of linearly independent linear forms over R or C, and reconstruct
/// the forms when it is.
#[derive(Parser)]
#[command(name = "waring", version)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Run the randomized equivalence test on the input polynomial
    Decide(CommonArgs),
    /// Count essential variables, then decide on the restricted polynomial
    Minvars(CommonArgs),
    /// Decide and, on acceptance, recover the linear forms and coefficients
    Reconstruct(CommonArgs),
    /// Run the built-in smoke suite
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Real,
    Complex,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Inline polynomial expression, e.g. "x1^3 + x2^3 + x3^3"
    expr: Option<String>,
    /// Read the polynomial from a file (expression text or the structured
    /// JSON coefficient map)
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Field over which diagonalizability is certified
    #[arg(long, value_enum, default_value_t = ModeArg::Complex)]
    mode: ModeArg,
    /// Size of the finite sampling set S = {1, ..., set-size}
    #[arg(long = "set-size", default_value_t = 1 << 31)]
    set_size: u64,
    /// Seed for all randomized draws; fixed seed means byte-identical reports
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Independent trials; the verdict is the majority
    #[arg(long, default_value_t = 1)]
    trials: u32,
    /// Report format
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long = "set-size", default_value_t = 1 << 31)]
    set_size: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
}

fn to_config(command: Command, args: &CommonArgs) -> RunConfig {
    RunConfig {
        command,
        expr: args.expr.clone(),
        input: args.input.clone(),
        mode: match args.mode {
            ModeArg::Real => FieldMode::Real,
            ModeArg::Complex => FieldMode::Complex,
        },
        set_size: args.set_size,
        seed: args.seed,
        trials: args.trials,
        format: match args.format {
            FormatArg::Human => OutputFormat::Human,
            FormatArg::Json => OutputFormat::Json,
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match &cli.command {
        Commands::Decide(args) => to_config(Command::Decide, args),
        Commands::Minvars(args) => to_config(Command::Minvars, args),
        Commands::Reconstruct(args) => to_config(Command::Reconstruct, args),
        Commands::Selftest(args) => RunConfig {
            command: Command::Selftest,
            expr: None,
            input: None,
            mode: FieldMode::Complex,
            set_size: args.set_size,
            seed: args.seed,
            trials: 1,
            format: match args.format {
                FormatArg::Human => OutputFormat::Human,
                FormatArg::Json => OutputFormat::Json,
            },
        },
    };
    match execute(&cfg) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(waring_cli::EXIT_USAGE as u8)
        }
    }
}
