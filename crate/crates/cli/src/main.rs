use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ans_cli::cache::{load_or_build, write_json};
use ans_cli::eggbox::EggBox;
use ans_cli::verify::verify;
use brandt_affine::closure::{check_cap, support_histogram, DEFAULT_N_CAP};
use brandt_affine::formulas::counts;
use brandt_affine::generators::{enumerate, GeneratorKind};
use brandt_affine::green::{class_counts, green_brute};
use brandt_affine::{Error, Reduct};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "ans",
    version,
    about = "Affine near-semirings over Brandt semigroups"
)]
struct Cli {
    /// Worker threads (results do not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Directory for cached closures. ANS_CACHE_DIR takes precedence.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build A+(B_n), print its size and support histogram.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Write the closure JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List End, Aut, Aff or the constant maps of B_n.
    Generators {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "aff")]
        kind: GeneratorKind,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Green's class counts (text) or the full partitions (json).
    Green {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        reduct: ReductArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Egg-box diagram of one reduct.
    Eggbox {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        reduct: ReductArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form counts.
    Counts {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run every check for each n in a range such as `2`, `1..3` or `1,3`.
    Verify {
        #[arg(long, default_value = "1..3")]
        n: String,
        /// Directory for the JSON exports.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReductArg {
    Additive,
    Multiplicative,
}

impl From<ReductArg> for Reduct {
    fn from(r: ReductArg) -> Self {
        match r {
            ReductArg::Additive => Reduct::Additive,
            ReductArg::Multiplicative => Reduct::Multiplicative,
        }
    }
}

enum Failure {
    Mismatch,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache_dir = std::env::var_os("ANS_CACHE_DIR")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or(cli.cache_dir.clone());
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let result = match pool.build() {
        Ok(pool) => pool.install(|| run(cli.command, cache_dir.as_deref())),
        Err(e) => Err(Failure::Usage(e.to_string())),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, cache: Option<&Path>) -> Outcome {
    match command {
        Command::Enumerate { n, out } => {
            check_cap(n, DEFAULT_N_CAP)?;
            let ns = load_or_build(n, cache)?;
            if let Some(path) = out {
                write_json(&path, &ns)?;
            }
            let mut text = format!("{} elements\n", ns.len());
            for (size, count) in support_histogram(&ns) {
                text += &format!("support {size}: {count}\n");
            }
            emit(&text, None)
        }
        Command::Generators {
            n,
            kind,
            format,
            out,
        } => {
            check_cap(n, DEFAULT_N_CAP)?;
            let set = enumerate(n, kind)?;
            let text = match format {
                Format::Json => pretty(&set.to_json())?,
                Format::Text => {
                    let json = set.to_json();
                    format!(
                        "{} {} elements\n{}\n",
                        json.count,
                        kind,
                        json.members.join("\n")
                    )
                }
                Format::Dot => {
                    return Err(Failure::Usage("generators supports text or json".into()))
                }
            };
            emit(&text, out.as_deref())
        }
        Command::Green {
            n,
            reduct,
            format,
            out,
        } => {
            check_cap(n, DEFAULT_N_CAP)?;
            let ns = load_or_build(n, cache)?;
            let gs = green_brute(ns.reduct(reduct.into()));
            let text = match format {
                Format::Json => pretty(&gs.to_json())?,
                Format::Text => {
                    let c = class_counts(&gs);
                    let s = Reduct::from(reduct).symbol();
                    format!(
                        "R-classes({s})  {}\nL-classes({s})  {}\nD-classes({s})  {}\nJ-classes({s})  {}\nH-classes({s})  {}\nidempotents({s})  {}\nregular({s})  {}\n",
                        c.r, c.l, c.d, c.j, c.h, c.idempotents, c.regular
                    )
                }
                Format::Dot => return Err(Failure::Usage("green supports text or json".into())),
            };
            emit(&text, out.as_deref())
        }
        Command::Eggbox {
            n,
            reduct,
            format,
            out,
        } => {
            check_cap(n, DEFAULT_N_CAP)?;
            let ns = load_or_build(n, cache)?;
            let r = reduct.into();
            let egg = EggBox::build(&ns, r, &green_brute(ns.reduct(r)));
            let text = match format {
                Format::Text => egg.to_text(),
                Format::Dot => egg.to_dot(),
                Format::Json => egg.to_json() + "\n",
            };
            emit(&text, out.as_deref())
        }
        Command::Counts { n, format } => {
            let table = counts(n)?;
            let text = match format {
                Format::Json => pretty(&table)?,
                Format::Text => table.to_text(),
                Format::Dot => return Err(Failure::Usage("counts supports text or json".into())),
            };
            emit(&text, None)
        }
        Command::Verify { n, out } => {
            let ns_list = parse_range(&n)?;
            for &n in &ns_list {
                check_cap(n, DEFAULT_N_CAP)?;
            }
            let mut all_passed = true;
            for n in ns_list {
                let ns = load_or_build(n, cache)?;
                let outcome = verify(&ns)?;
                let mut stdout = io::stdout().lock();
                for line in outcome.report.lines() {
                    writeln!(stdout, "{line}")?;
                }
                all_passed &= outcome.report.all_passed();
                if let Some(dir) = &out {
                    fs::create_dir_all(dir)?;
                    for e in &outcome.exports {
                        fs::write(dir.join(&e.name), &e.contents)?;
                    }
                }
            }
            println!("{}", if all_passed { "ALL PASS" } else { "FAILED" });
            if all_passed {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
    }
}

fn pretty(value: &impl serde::Serialize) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// `a`, `a..b` (inclusive) or a comma-separated list of either.
fn parse_range(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Usage(format!("bad n range {text:?}"));
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a.parse().map_err(|_| bad())?;
            let b: usize = b.trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}
