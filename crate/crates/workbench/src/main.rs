use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use extcohom::error::{EXIT_OK, EXIT_VERIFICATION_FAILED};
use extcohom::run::{run_and_emit, Format, Request, RunConfig, Source};

#[derive(Parser)]
#[command(name = "extcohom", version, about = "Group cohomology and the seven-term sequence of a group extension")]
struct Cli {
    /// Upper bound on stored cochain cells per computation.
    #[arg(long, global = true, default_value_t = 30_000_000)]
    budget: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(clap::Args)]
struct InputArgs {
    /// Named extension, e.g. `cyclic(2,2)` or `heisenberg_mod(3)`.
    #[arg(long, requires = "module", conflicts_with = "input")]
    preset: Option<String>,
    /// Module spec, e.g. `Z_2`, `Z^2`, `sign`, `Z:g=[[-1]]`.
    #[arg(long)]
    module: Option<String>,
    /// Extension document in JSON.
    #[arg(long)]
    input: Option<PathBuf>,
}

impl InputArgs {
    fn source(self) -> Option<Source> {
        match (self.preset, self.module, self.input) {
            (Some(preset), Some(module), _) => Some(Source::Preset { preset, module }),
            (_, _, Some(p)) => Some(Source::File(p)),
            _ => None,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Computes H^n(G, M).
    Cohomology {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "json")]
        report: ReportFormat,
    },
    /// Computes all groups and maps of the seven-term sequence and checks exactness.
    SevenTerm {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "json")]
        report: ReportFormat,
    },
    /// Runs a verification battery.
    Verify {
        #[arg(long, default_value = "default")]
        battery: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        report: ReportFormat,
    },
    /// Re-validates a document written by this tool.
    Inspect {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        report: ReportFormat,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (source, request, report, trials, seed) = match cli.command {
        Command::Cohomology { input, degree, report } => {
            (input.source(), Request::Cohomology { degree }, report, 20, 0)
        }
        Command::SevenTerm { input, report } => (input.source(), Request::SevenTerm, report, 20, 0),
        Command::Verify { battery, trials, seed, report } => {
            (None, Request::Battery { name: battery }, report, trials, seed)
        }
        Command::Inspect { input, report } => (Some(Source::File(input)), Request::Inspect, report, 20, 0),
    };
    let format = match report {
        ReportFormat::Json => Format::Json,
        ReportFormat::Text => Format::Text,
    };
    let config = RunConfig { format, budget: cli.budget, trials, seed, ..RunConfig::new(source, request) };
    match run_and_emit(&config) {
        Ok(out) => {
            print!("{}", out.render(format));
            ExitCode::from(if out.passed { EXIT_OK } else { EXIT_VERIFICATION_FAILED })
        }
        Err(e) => {
            eprintln!("error [{}]: {e}", e.code());
            ExitCode::from(e.exit_code())
        }
    }
}
