use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jetforge::check::{parse_suites, CheckConfig, Params, Suite};
use jetforge::commands::{self, CommandError, Output, P1Flags};
use jetforge::dsl::{parse_input, Document};

#[derive(Parser)]
#[command(name = "jetforge", version, about = "Jet algebras, Hasse-Schmidt modules and their identities")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct InputArg {
    /// Input document; stdin when omitted or `-`.
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Jet algebra presentation at level N.
    Jet {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        input: InputArg,
    },
    /// Bivariate jets at levels (N, M).
    Jet2 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        input: InputArg,
    },
    /// Hasse-Schmidt module of the declared module at level N.
    Module {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        input: InputArg,
    },
    /// Kaehler differentials of the ring, or of its level-N jets.
    Omega {
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        input: InputArg,
    },
    /// Symmetric algebra of the declared module; with --n, its jets checked
    /// against the jet algebra and the Hasse-Schmidt module.
    Sym {
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        input: InputArg,
    },
    /// Induced morphism on level-N jets.
    Morphism {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        input: InputArg,
    },
    /// Transition matrix of O(D) on level-N jets of P^1.
    P1 {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        n: u32,
        /// Verify both composites of the chart changes.
        #[arg(long)]
        cocycle: bool,
        /// List the global section generators (D = 1 only).
        #[arg(long)]
        sections: bool,
        /// Write entries in overlap coordinates.
        #[arg(long)]
        overlap: bool,
    },
    /// Run the randomized identity suites.
    Check {
        /// `all` or a comma-separated list of suite names.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Re-check one instance read from this file (`-` for stdin).
        #[arg(long)]
        replay: Option<PathBuf>,
        #[arg(long, requires = "replay")]
        n: Option<u32>,
        #[arg(long, requires = "replay")]
        m: Option<u32>,
        #[arg(long, requires = "replay", allow_negative_numbers = true)]
        d: Option<i64>,
    },
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CommandError> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| CommandError::Usage(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| CommandError::Usage(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn document(input: &InputArg) -> Result<Document, CommandError> {
    Ok(parse_input(&read_input(input.input.as_ref())?)?)
}

fn run(command: Command) -> Result<Output, CommandError> {
    match command {
        Command::Jet { n, input } => commands::jet(&document(&input)?, n),
        Command::Jet2 { n, m, input } => commands::jet2(&document(&input)?, n, m),
        Command::Module { n, input } => commands::module(&document(&input)?, n),
        Command::Omega { n, input } => commands::omega(&document(&input)?, n),
        Command::Sym { n, input } => commands::sym(&document(&input)?, n),
        Command::Morphism { n, input } => commands::morphism(&document(&input)?, n),
        Command::P1 { d, n, cocycle, sections, overlap } => commands::p1(d, n, P1Flags { cocycle, sections, overlap }),
        Command::Check { suite, trials, seed, replay, n, m, d } => {
            let suites = parse_suites(&suite)?;
            let cfg = CheckConfig { seed, trials, suites: suites.clone(), ..CheckConfig::default() };
            match replay {
                None => commands::check(&cfg),
                Some(path) => {
                    let [suite]: [Suite; 1] = suites
                        .try_into()
                        .map_err(|_| CommandError::Usage("--replay needs exactly one suite".into()))?;
                    let text = read_input(Some(&path))?;
                    let doc = if text.trim().is_empty() { None } else { Some(parse_input(&text)?) };
                    let n = n.ok_or_else(|| CommandError::Usage("--replay needs --n".into()))?;
                    commands::replay(suite, doc, Params { n, m, d }, &cfg)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => print!("{}", out.json_string()),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
