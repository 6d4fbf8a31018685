use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use lcsc::parse::parse_file;
use lcsc::pipeline::{run, Command, Config};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Validate,
    Hull,
    Ideals,
    Boundary,
    Groupoid,
    Envelope,
    Coaction,
    Lcm,
    Thesis,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::Validate => Command::Validate,
            Cmd::Hull => Command::Hull,
            Cmd::Ideals => Command::Ideals,
            Cmd::Boundary => Command::Boundary,
            Cmd::Groupoid => Command::Groupoid,
            Cmd::Envelope => Command::Envelope,
            Cmd::Coaction => Command::Coaction,
            Cmd::Lcm => Command::Lcm,
            Cmd::Thesis => Command::Thesis,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

/// Certify structural claims about inverse hulls, boundary quotients and
/// C*-envelopes of small categories.
///
/// Exit status: 0 all certified, 2 a rejection was found, 3 some verdict
/// holds only up to the search bound, 1 input error.
#[derive(Debug, Parser)]
#[command(name = "lcsc", version)]
struct Cli {
    command: Cmd,
    /// A `.cat`, `.grad` or `.gpd` file.
    input: PathBuf,
    /// Ball radius for bounded searches.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Highest matrix level in complete-isometry searches.
    #[arg(long, default_value_t = 5)]
    levels: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = Config { depth: cli.depth, levels: cli.levels, tol: cli.tol, seed: cli.seed };
    let fixture = cli.input.display().to_string();
    let report = parse_file(&cli.input).and_then(|input| run(cli.command.into(), &input, &fixture, &cfg));
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            eprintln!("lcsc: {fixture}: {e}");
            return ExitCode::from(1);
        }
    };
    let text = match cli.format {
        OutputFormat::Text => report.render_text(),
        OutputFormat::Json => match serde_json::to_string_pretty(&report) {
            Ok(s) => s + "\n",
            Err(e) => {
                eprintln!("lcsc: cannot serialize report: {e}");
                return ExitCode::from(1);
            }
        },
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("lcsc: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
