//! Command-line tables for the classification engine: enumerate a preset
//! (or config-defined group), emit deterministic tables, and diff against
//! golden fixtures.

use alcove_core::catalog::{parse_config, preset, CharTag};
use alcove_core::engine::Engine;
use alcove_core::error::EngineError;
use alcove_core::tables::run_mode;
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "alcove", version, about = "Classify unramified tori and twisted (generalized) Levi subgroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Preset name (Sp4, G2, SU3q, A1, SL2..SL8, SL1D2..SL1D8)
    #[arg(long, conflicts_with = "config")]
    group: Option<String>,
    /// Path to a key=value config defining a custom group
    #[arg(long)]
    config: Option<PathBuf>,
    /// Residue characteristic tag: 0, 2, 3, or p
    #[arg(long = "char")]
    char_tag: Option<String>,
    /// Output format
    #[arg(long, default_value = "text", value_parser = ["text", "csv", "json"])]
    format: String,
    /// Affine translation search bound
    #[arg(long, default_value_t = 4)]
    radius: i64,
    /// Process facets in parallel (deterministic merge)
    #[arg(long, default_value_t = false)]
    parallel: bool,
}

#[derive(Subcommand, Clone)]
enum Command {
    /// Twisted Levi classes over the residue field
    Finite(RunArgs),
    /// Twisted generalized Levi classes over the residue field
    #[command(name = "finite-gen")]
    FiniteGen(RunArgs),
    /// Rational classes of unramified tori
    Tori(RunArgs),
    /// Rational classes of maximal unramified tori
    #[command(name = "maximal-tori")]
    MaximalTori(RunArgs),
    /// Stable classes of unramified tori
    Stable(RunArgs),
    /// Unramified torus classes with stable letters and embedding counts
    Embeddings(RunArgs),
    /// Rational classes of unramified twisted generalized Levis
    Genlevi(RunArgs),
    /// Containment edges between generalized Levi classes
    Contains(RunArgs),
    /// Regenerate every table in a fixture manifest and byte-compare
    Check {
        /// Directory containing manifest.txt and expected outputs
        #[arg(long)]
        fixtures: PathBuf,
    },
}

fn mode_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Finite(_) => "finite",
        Command::FiniteGen(_) => "finite-gen",
        Command::Tori(_) => "tori",
        Command::MaximalTori(_) => "maximal-tori",
        Command::Stable(_) => "stable",
        Command::Embeddings(_) => "embeddings",
        Command::Genlevi(_) => "genlevi",
        Command::Contains(_) => "contains",
        Command::Check { .. } => "check",
    }
}

fn char_allowed(mode: &str) -> bool {
    matches!(mode, "finite-gen" | "genlevi" | "contains")
}

fn build_engine(args: &RunArgs, mode: &str) -> Result<Engine, ExitCode> {
    if args.radius < 2 {
        eprintln!("error: --radius must be at least 2");
        return Err(ExitCode::from(2));
    }
    if args.char_tag.is_some() && !char_allowed(mode) {
        eprintln!("error: --char only applies to finite-gen, genlevi, and contains");
        return Err(ExitCode::from(2));
    }
    let mut spec = match (&args.group, &args.config) {
        (Some(name), None) => match preset(name) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return Err(ExitCode::from(1));
            }
        },
        (None, Some(path)) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return Err(ExitCode::from(2));
                }
            };
            match parse_config(&text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Err(ExitCode::from(2));
                }
            }
        }
        _ => {
            eprintln!("error: exactly one of --group or --config is required");
            return Err(ExitCode::from(2));
        }
    };
    if let Some(tag) = &args.char_tag {
        match CharTag::parse(tag) {
            Ok(c) => spec = spec.with_char(c),
            Err(e) => {
                eprintln!("error: {e}");
                return Err(ExitCode::from(2));
            }
        }
    }
    match Engine::new(spec, args.radius) {
        Ok(e) => Ok(e),
        Err(e) => {
            eprintln!("error: {e}");
            Err(ExitCode::from(1))
        }
    }
}

fn render(engine: &Engine, mode: &str, args: &RunArgs) -> Result<String, EngineError> {
    let table = run_mode(engine, mode, args.parallel)?;
    Ok(match args.format.as_str() {
        "csv" => table.to_csv(),
        "json" => {
            let mut s = table.to_json();
            s.push('\n');
            s
        }
        _ => table.to_text(),
    })
}

fn run(args: &RunArgs, mode: &str) -> ExitCode {
    let engine = match build_engine(args, mode) {
        Ok(e) => e,
        Err(code) => return code,
    };
    match render(&engine, mode, args) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn check_fixtures(dir: &Path) -> ExitCode {
    let manifest_path = dir.join("manifest.txt");
    let manifest = match std::fs::read_to_string(&manifest_path) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", manifest_path.display());
            return ExitCode::from(3);
        }
    };
    let mut failures = 0usize;
    let mut checked = 0usize;
    for (lineno, raw) in manifest.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 6 {
            eprintln!(
                "error: manifest line {}: expected `file mode group char format radius`",
                lineno + 1
            );
            return ExitCode::from(3);
        }
        let (file, mode, group, char_tag, format, radius) = (
            fields[0], fields[1], fields[2], fields[3], fields[4], fields[5],
        );
        let args = RunArgs {
            group: Some(group.to_string()),
            config: None,
            char_tag: if char_allowed(mode) {
                Some(char_tag.to_string())
            } else {
                None
            },
            format: format.to_string(),
            radius: radius.parse().unwrap_or(4),
            parallel: false,
        };
        let engine = match build_engine(&args, mode) {
            Ok(e) => e,
            Err(code) => return code,
        };
        let actual = match render(&engine, mode, &args) {
            Ok(a) => a,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
        };
        let expected_path = dir.join(file);
        let expected = match std::fs::read_to_string(&expected_path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: missing fixture {}: {e}", expected_path.display());
                return ExitCode::from(3);
            }
        };
        checked += 1;
        if actual != expected {
            failures += 1;
            eprintln!("FAIL {file}");
            print_diff(&expected, &actual);
        } else {
            println!("ok {file}");
        }
    }
    if failures > 0 {
        eprintln!("{failures} of {checked} fixtures differ");
        ExitCode::from(3)
    } else {
        println!("all {checked} fixtures match");
        ExitCode::SUCCESS
    }
}

fn print_diff(expected: &str, actual: &str) {
    let exp: Vec<&str> = expected.lines().collect();
    let act: Vec<&str> = actual.lines().collect();
    let n = exp.len().max(act.len());
    for i in 0..n {
        let e = exp.get(i).copied().unwrap_or("<eof>");
        let a = act.get(i).copied().unwrap_or("<eof>");
        if e != a {
            eprintln!("- {e}");
            eprintln!("+ {a}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = mode_name(&cli.command);
    match &cli.command {
        Command::Check { fixtures } => check_fixtures(fixtures),
        Command::Finite(a)
        | Command::FiniteGen(a)
        | Command::Tori(a)
        | Command::MaximalTori(a)
        | Command::Stable(a)
        | Command::Embeddings(a)
        | Command::Genlevi(a)
        | Command::Contains(a) => run(a, mode),
    }
}
