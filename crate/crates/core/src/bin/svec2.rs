use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use svec2::shell::{run, Command, Format, Options, EXIT_OTHER};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Check,
    Invariants,
    Decompose,
    Classify7,
    Present,
    PbwVerify,
    Confluence,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Human,
    Kv,
}

/// Exact computations with d-algebras and Lie algebras in sVec2 over GF(2^k).
#[derive(Debug, Parser)]
#[command(name = "svec2", version)]
struct Cli {
    command: Cmd,
    /// Algebra file, Lie algebra file or presentation; standard input if omitted or `-`.
    input: Option<PathBuf>,
    /// Field degree k of GF(2^k) for presentations.
    #[arg(long = "field", value_name = "k")]
    field: Option<u8>,
    /// Degree bound (presentations, PBW) or maximum word length (confluence).
    #[arg(long, value_name = "N")]
    bound: Option<usize>,
    #[arg(long, value_name = "T")]
    trials: Option<usize>,
    #[arg(long, value_name = "S", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutFormat::Human)]
    format: OutFormat,
}

fn read_input(path: &Option<PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Check => Command::Check,
        Cmd::Invariants => Command::Invariants,
        Cmd::Decompose => Command::Decompose,
        Cmd::Classify7 => Command::Classify7,
        Cmd::Present => Command::Present,
        Cmd::PbwVerify => Command::PbwVerify,
        Cmd::Confluence => Command::Confluence,
    };
    let format = match cli.format {
        OutFormat::Human => Format::Human,
        OutFormat::Kv => Format::Kv,
    };
    let input = match read_input(&cli.input) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("svec2: cannot read input: {e}");
            return ExitCode::from(EXIT_OTHER as u8);
        }
    };
    let opts = Options {
        field: cli.field,
        bound: cli.bound,
        trials: cli.trials,
        seed: cli.seed,
        format,
    };
    let report = run(command, &opts, &input);
    print!("{}", report.render(format));
    ExitCode::from(report.code as u8)
}
