//! Command-line interface over the opetopes library.
//!
//! Exit codes: 0 for success or a positive answer, 1 for a negative answer or
//! an invalid input, 2 for usage and parse errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use opetopes::{
    canonical_atom, classify, complex_of, dot, io, is_loop_free, is_unital, iso_complexes,
    iso_sequences, networks_of, random_opetope, reduce, sources, target, validate_sequence,
    Complex, Mode, OpetopicSequence,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "opetopes",
    about = "Opetopes as directed complexes and as sequences of networks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    Fadc,
    Opetopic,
    Reduced,
    Sequence,
    Opetope,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Complex,
    Sequence,
}

#[derive(Args)]
struct SourceArgs {
    complex: PathBuf,
    /// Print every source
    #[arg(long, conflicts_with = "index")]
    all: bool,
    /// Print the source at this position (0-based, canonical term order)
    #[arg(long)]
    index: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document against a validity level; report on stdout
    Validate {
        file: PathBuf,
        /// Defaults to `reduced` for complexes and `opetope` for sequences
        #[arg(long)]
        level: Option<Level>,
    },
    /// Convert a complex to its sequence of networks
    Networks {
        complex: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert a sequence of networks to a complex
    Complex {
        sequence: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the canonical atom of a complex, level by level
    Atom { complex: PathBuf },
    /// Compute source opetopes of a reduced complex
    Source(SourceArgs),
    /// Compute the target opetope of a reduced complex
    Target { complex: PathBuf },
    /// Reduce an opetopic complex
    Reduce { complex: PathBuf },
    /// Decide isomorphism of two documents
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        kind: Kind,
    },
    /// Generate a random opetope
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long = "max-dim")]
        max_dim: usize,
        #[arg(long)]
        budget: usize,
    },
    /// Render a document as Graphviz DOT text
    Dot { file: PathBuf },
}

/// Outcome of a subcommand: process exit status plus what to print.
enum Outcome {
    Ok,
    Invalid,
}

#[derive(Debug)]
enum CliError {
    /// Parse or usage problems: exit 2.
    Input(String),
    /// Everything else: exit 1.
    Run(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Run(m) => f.write_str(m),
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn run_err(e: impl std::fmt::Display) -> CliError {
    CliError::Run(e.to_string())
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<(String, Complex), CliError> {
    io::parse_complex(&read_text(path)?).map_err(input_err)
}

fn load_sequence(path: &Path) -> Result<(String, OpetopicSequence), CliError> {
    io::parse_sequence(&read_text(path)?).map_err(input_err)
}

/// Dispatch by extension first, then by trying both parsers.
enum Document {
    Complex(String, Complex),
    Sequence(String, OpetopicSequence),
}

fn load_any(path: &Path) -> Result<Document, CliError> {
    let text = read_text(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("odc") => io::parse_complex(&text)
            .map(|(n, k)| Document::Complex(n, k))
            .map_err(input_err),
        Some("ops") => io::parse_sequence(&text)
            .map(|(n, s)| Document::Sequence(n, s))
            .map_err(input_err),
        _ => io::parse_complex(&text)
            .map(|(n, k)| Document::Complex(n, k))
            .or_else(|_| io::parse_sequence(&text).map(|(n, s)| Document::Sequence(n, s)))
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Run(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Validate { file, level } => validate_cmd(&file, level),
        Command::Networks { complex, output } => {
            let (name, k) = load_complex(&complex)?;
            let seq = networks_of(&k).map_err(run_err)?;
            emit(output.as_deref(), &io::serialize_sequence(&name, &seq))?;
            Ok(Outcome::Ok)
        }
        Command::Complex { sequence, output } => {
            let (name, s) = load_sequence(&sequence)?;
            let k = complex_of(&s).map_err(run_err)?;
            emit(output.as_deref(), &io::serialize_complex(&name, &k))?;
            Ok(Outcome::Ok)
        }
        Command::Atom { complex } => {
            let (_, k) = load_complex(&complex)?;
            let atom = canonical_atom(&k).map_err(run_err)?;
            let levels: Vec<_> = (0..atom.depth())
                .map(|q| {
                    let chain_terms = |c: &opetopes::Chain| {
                        c.terms()
                            .map(|(i, co)| json!([i.as_str(), co.to_string()]))
                            .collect::<Vec<_>>()
                    };
                    json!({
                        "q": q,
                        "minus": chain_terms(&atom.minus(q)),
                        "plus": chain_terms(&atom.plus(q)),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&levels).unwrap());
            Ok(Outcome::Ok)
        }
        Command::Source(args) => {
            let (name, k) = load_complex(&args.complex)?;
            let all = sources(&k).map_err(run_err)?;
            match args.index {
                Some(i) => {
                    let s = all.get(i).ok_or_else(|| {
                        CliError::Run(format!("source index {i} out of range ({} sources)", all.len()))
                    })?;
                    print!("{}", io::serialize_complex(&format!("{name}-source{i}"), s));
                }
                None => {
                    let docs: Vec<serde_json::Value> = all
                        .iter()
                        .enumerate()
                        .map(|(i, s)| {
                            serde_json::from_str(&io::serialize_complex(
                                &format!("{name}-source{i}"),
                                s,
                            ))
                            .unwrap()
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&docs).unwrap());
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Target { complex } => {
            let (name, k) = load_complex(&complex)?;
            let t = target(&k).map_err(run_err)?;
            print!("{}", io::serialize_complex(&format!("{name}-target"), &t));
            Ok(Outcome::Ok)
        }
        Command::Reduce { complex } => {
            let (name, k) = load_complex(&complex)?;
            let r = reduce(&k).map_err(run_err)?;
            print!("{}", io::serialize_complex(&format!("{name}-reduced"), &r));
            Ok(Outcome::Ok)
        }
        Command::Iso { a, b, kind } => iso_cmd(&a, &b, kind),
        Command::Gen { seed, max_dim, budget } => {
            let seq = random_opetope(seed, max_dim, budget);
            print!(
                "{}",
                io::serialize_sequence(&format!("gen-{seed}-{max_dim}-{budget}"), &seq)
            );
            Ok(Outcome::Ok)
        }
        Command::Dot { file } => {
            match load_any(&file)? {
                Document::Complex(_, k) => {
                    let seq = networks_of(&k).map_err(run_err)?;
                    print!("{}", dot::sequence_to_dot(&seq));
                }
                Document::Sequence(_, s) => print!("{}", dot::sequence_to_dot(&s)),
            }
            Ok(Outcome::Ok)
        }
    }
}

fn validate_cmd(file: &Path, level: Option<Level>) -> Result<Outcome, CliError> {
    let doc = load_any(file)?;
    let (report, valid) = match doc {
        Document::Complex(name, k) => {
            let level = level.unwrap_or(Level::Reduced);
            let level_name = match level {
                Level::Fadc => "fadc",
                Level::Opetopic => "opetopic",
                Level::Reduced => "reduced",
                Level::Sequence | Level::Opetope => {
                    return Err(CliError::Input(
                        "sequence levels do not apply to a complex document".into(),
                    ))
                }
            };
            let fadc = k.validate_fadc();
            let flags = classify(&k);
            let valid = match level {
                Level::Fadc => flags.fadc,
                Level::Opetopic => flags.opetopic,
                Level::Reduced => flags.reduced,
                _ => unreachable!(),
            };
            let modes = json!({
                "unital_fast": is_unital(&k, Mode::Fast).ok(),
                "unital_general": is_unital(&k, Mode::General).ok(),
                "loop_free_fast": is_loop_free(&k, Mode::Fast).ok(),
                "loop_free_general": is_loop_free(&k, Mode::General).ok(),
            });
            (
                json!({
                    "file": file.display().to_string(),
                    "name": name,
                    "kind": "complex",
                    "level": level_name,
                    "valid": valid,
                    "flags": {
                        "fadc": flags.fadc,
                        "atomic": flags.atomic,
                        "atomic_dim": flags.atomic_dim,
                        "unital": flags.unital,
                        "loop_free": flags.loop_free,
                        "opetopic": flags.opetopic,
                        "reduced": flags.reduced,
                    },
                    "modes": modes,
                    "violations": fadc.violations(),
                }),
                valid,
            )
        }
        Document::Sequence(name, s) => {
            let level = level.unwrap_or(Level::Opetope);
            let (level_name, require_reduced) = match level {
                Level::Sequence => ("sequence", false),
                Level::Opetope => ("opetope", true),
                _ => {
                    return Err(CliError::Input(
                        "complex levels do not apply to a sequence document".into(),
                    ))
                }
            };
            let report = validate_sequence(&s, require_reduced);
            let valid = report.is_valid();
            (
                json!({
                    "file": file.display().to_string(),
                    "name": name,
                    "kind": "sequence",
                    "level": level_name,
                    "valid": valid,
                    "dim": s.dim(),
                    "violations": report.violations(),
                }),
                valid,
            )
        }
    };
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(if valid { Outcome::Ok } else { Outcome::Invalid })
}

fn iso_cmd(a: &Path, b: &Path, kind: Kind) -> Result<Outcome, CliError> {
    match kind {
        Kind::Complex => {
            let (_, ka) = load_complex(a)?;
            let (_, kb) = load_complex(b)?;
            match iso_complexes(&ka, &kb) {
                Some(map) => {
                    let obj: BTreeMap<&str, &str> = map
                        .iter()
                        .map(|(x, y)| (x.as_str(), y.as_str()))
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "isomorphic": true,
                            "bijection": obj,
                        }))
                        .unwrap()
                    );
                    Ok(Outcome::Ok)
                }
                None => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({ "isomorphic": false })).unwrap()
                    );
                    Ok(Outcome::Invalid)
                }
            }
        }
        Kind::Sequence => {
            let (_, sa) = load_sequence(a)?;
            let (_, sb) = load_sequence(b)?;
            match iso_sequences(&sa, &sb) {
                Some(levels) => {
                    let rendered: Vec<_> = levels
                        .iter()
                        .map(|l| {
                            let edges: BTreeMap<&str, &str> = l
                                .edges
                                .iter()
                                .map(|(x, y)| (x.as_str(), y.as_str()))
                                .collect();
                            let vertices: BTreeMap<&str, &str> = l
                                .vertices
                                .iter()
                                .map(|(x, y)| (x.as_str(), y.as_str()))
                                .collect();
                            json!({ "edges": edges, "vertices": vertices })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "isomorphic": true,
                            "levels": rendered,
                        }))
                        .unwrap()
                    );
                    Ok(Outcome::Ok)
                }
                None => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({ "isomorphic": false })).unwrap()
                    );
                    Ok(Outcome::Invalid)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Invalid) => ExitCode::from(1),
        Err(CliError::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
