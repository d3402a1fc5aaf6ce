use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use galfw_cli::{execute, read_spec, CliError, Command, Format};

#[derive(Parser)]
#[command(
    name = "galfw",
    version,
    about = "Fermi-Walker derivative and transport in Galilean 3-space"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Tabulate the Frenet (and Darboux) apparatus at the sample points
    Frame(Opts),
    /// Integrate the transport system for the spec's field
    Transport(Opts),
    /// Run the identity check suite; exits 1 if any entry fails
    Check(Opts),
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    spec: PathBuf,
    /// Output file; stdout when absent (overrides params.out)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    /// csv for frame/transport, json for check by default
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn run(command: Command, o: Opts) -> Result<i32, CliError> {
    let mut spec = read_spec(&o.spec)?;
    if let Some(n) = o.samples {
        spec.params.samples = n;
    }
    if let Some(h) = o.step {
        spec.params.step = h;
    }
    if let Some(t) = o.tol {
        spec.params.tol = t;
    }
    if o.out.is_some() {
        spec.params.out = o.out;
    }
    spec.validate()?;
    let format = o.format.unwrap_or(command.default_format());
    let out = execute(command, &spec, format)?;
    for line in &out.notes {
        eprintln!("{line}");
    }
    match &spec.params.out {
        Some(path) => std::fs::write(path, &out.body).map_err(|source| CliError::Write {
            path: path.display().to_string(),
            source,
        })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(out.body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Write {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
    }
    Ok(out.status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match cli.command {
        Sub::Frame(o) => (Command::Frame, o),
        Sub::Transport(o) => (Command::Transport, o),
        Sub::Check(o) => (Command::Check, o),
    };
    match run(command, opts) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
