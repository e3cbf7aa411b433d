use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gkz::error::EXIT_USAGE;
use gkz::input::{GroupName, PresetInput};
use gkz::{emit, read_input, run, CliError, Command, Format, ProblemFile, RunOptions};

/// Exact wall crossing for torus GIT quotients and pointed rational curves.
#[derive(Parser, Debug)]
#[command(name = "gkz", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Problem file; standard input when neither this nor --preset is given.
    #[arg(long, conflicts_with = "preset")]
    input: Option<PathBuf>,
    /// Named problem followed by its integer parameters.
    #[arg(long, num_args = 1.., value_name = "NAME ARGS", allow_negative_numbers = true)]
    preset: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, allow_negative_numbers = true)]
    twist_d: Option<i64>,
    #[arg(long, value_enum)]
    group: Option<GroupName>,
}

fn preset(args: &[String]) -> Result<ProblemFile, CliError> {
    let (name, rest) = args
        .split_first()
        .ok_or_else(|| CliError::Usage("--preset needs a name".into()))?;
    let parameters = rest
        .iter()
        .map(|a| {
            a.parse::<i64>()
                .map_err(|_| CliError::Usage(format!("preset parameter {a:?} is not an integer")))
        })
        .collect::<Result<_, _>>()?;
    Ok(ProblemFile::Preset(PresetInput {
        name: name.clone(),
        parameters,
    }))
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let input = match &cli.preset {
        Some(args) => preset(args)?,
        None => read_input(cli.input.as_deref())?,
    };
    let opts = RunOptions {
        seed: cli.seed,
        twist_d: cli.twist_d,
        group: cli.group,
    };
    if cli.format == Format::Dot && cli.command != Command::Fan {
        return Err(CliError::UnsupportedFormat {
            format: cli.format.name().into(),
            command: cli.command.name().into(),
        });
    }
    emit(&run(&input, cli.command, &opts)?, cli.format)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_USAGE as u8);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("gkz: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
