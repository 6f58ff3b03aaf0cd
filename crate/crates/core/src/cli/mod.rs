//! The `arboru` command-line front end.
//!
//! Exit status is 0 on success, 1 when `verify` reports a failed check and 2
//! on usage, I/O or parse errors.

pub mod format;

use std::io::{self, Read as _, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::dynamics::{classify, contraction_membership, half_tree_criterion, tits_split, DynamicsError};
use crate::element::Portrait;
use crate::harness::{run_suite, HarnessError, Status, SuiteConfig};
use crate::orbits::boundary_orbit_growth;
use crate::permgroup::{PermError, PermGroup};
use crate::tree::EdgeAddr;
use format::{parse_element, print_portrait, Element, FormatError};

/// Environment variable that overrides `verify --seed`.
pub const SEED_ENV: &str = "ARBORU_SEED";

#[derive(Debug, Parser)]
#[command(name = "arboru", version, about = "Universal groups U(F) on colored regular trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct GroupArgs {
    #[arg(long)]
    degree: u8,
    /// Generators in cycle notation separated by ';'.
    #[arg(long)]
    gens: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print order and transitivity predicates of F.
    AnalyzeGroup(GroupArgs),
    /// Emit root-stabilizer orbit counts on spheres as TSV.
    OrbitGrowth {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
    /// Classify an element as elliptic, inversion or hyperbolic.
    Classify {
        /// Element file, or '-' for stdin.
        #[arg(long)]
        portrait: PathBuf,
        #[arg(long)]
        degree: Option<u8>,
        /// Also report membership in U(F) for this F (needs --degree).
        #[arg(long, requires = "degree")]
        gens: Option<String>,
    },
    /// Compose portraits left to right as maps: the last one acts first.
    Compose {
        #[arg(required = true)]
        portraits: Vec<PathBuf>,
        #[arg(long)]
        degree: Option<u8>,
    },
    /// Split an edge fixator into its two half-tree fixators.
    TitsSplit {
        #[arg(long)]
        portrait: PathBuf,
        /// Edge as 'u/v'.
        #[arg(long, allow_hyphen_values = true)]
        edge: String,
        #[arg(long)]
        degree: Option<u8>,
    },
    /// Decide membership of g in the contraction group of a hyperbolic a.
    Contraction {
        #[arg(long)]
        portrait: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        degree: Option<u8>,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Also write the report as TSV to this file.
        #[arg(long)]
        tsv: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}:{source}")]
    Format { path: String, source: FormatError },
    #[error("--gens: {0}")]
    Group(#[from] PermError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn read_element(path: &Path, degree: Option<u8>) -> Result<Element, CliError> {
    parse_element(&read_text(path)?, degree).map_err(|source| CliError::Format {
        path: path.display().to_string(),
        source,
    })
}

fn read_portrait(path: &Path, degree: Option<u8>) -> Result<Portrait, CliError> {
    match read_element(path, degree)? {
        Element::Portrait(p) => Ok(p),
        Element::Line(_) => Err(CliError::Usage(format!(
            "{}: a finite portrait is required here, not a line element",
            path.display()
        ))),
    }
}

fn build_group(args: &GroupArgs) -> Result<PermGroup, CliError> {
    if args.degree < 3 {
        return Err(CliError::Usage(format!("--degree {} is below 3", args.degree)));
    }
    Ok(PermGroup::parse(args.degree, &args.gens)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Runs the command line `args` (including the program name), writing to
/// the given streams, and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    let io_err = |source| CliError::Io {
        path: "<stdout>".into(),
        source,
    };
    match command {
        Command::AnalyzeGroup(args) => {
            let g = build_group(&args)?;
            writeln!(
                out,
                "order={} transitive={} 2transitive={} primitive={} gen-by-stabs={} cyclic-prime={}",
                g.order(),
                yes_no(g.is_transitive()),
                yes_no(g.is_2transitive()),
                yes_no(g.is_primitive()),
                yes_no(g.is_generated_by_point_stabilizers()),
                yes_no(g.is_cyclic_of_prime_order()),
            )
            .map_err(io_err)?;
        }
        Command::OrbitGrowth { group, depth } => {
            let g = build_group(&group)?;
            let growth = boundary_orbit_growth(&g, depth);
            write!(out, "{}", growth.to_tsv()).map_err(io_err)?;
        }
        Command::Classify { portrait, degree, gens } => {
            let element = read_element(&portrait, degree)?;
            let class = match &element {
                Element::Portrait(p) => classify(p),
                Element::Line(l) => classify(l),
            };
            writeln!(out, "{class}").map_err(io_err)?;
            if let (Some(gens), Some(d)) = (gens, degree) {
                let group = PermGroup::parse(d, &gens)?;
                let member = match &element {
                    Element::Portrait(p) => p.is_in_uf(&group),
                    Element::Line(l) => l.is_in_uf(&group),
                };
                writeln!(out, "in_uf={}", yes_no(member)).map_err(io_err)?;
            }
        }
        Command::Compose { portraits, degree } => {
            let mut acc: Option<Portrait> = None;
            for path in &portraits {
                let p = read_portrait(path, degree)?;
                acc = Some(match acc {
                    None => p,
                    Some(a) if a.degree() != p.degree() => {
                        return Err(CliError::Usage(format!(
                            "{}: degree {} differs from {}",
                            path.display(),
                            p.degree(),
                            a.degree()
                        )))
                    }
                    Some(a) => a.compose(&p),
                });
            }
            let product = acc.expect("clap requires at least one portrait");
            write!(out, "{}", print_portrait(&product)).map_err(io_err)?;
        }
        Command::TitsSplit { portrait, edge, degree } => {
            let g = read_portrait(&portrait, degree)?;
            let e: EdgeAddr = edge
                .parse()
                .map_err(|e| CliError::Usage(format!("--edge {edge}: {e}")))?;
            let (g1, g2) = tits_split(&g, &e)?;
            let (u, v) = e.endpoints();
            write!(
                out,
                "# fixes the half-tree containing {u}\n{}\n# fixes the half-tree containing {v}\n{}",
                print_portrait(&g1),
                print_portrait(&g2)
            )
            .map_err(io_err)?;
        }
        Command::Contraction { portrait, base, degree } => {
            let g = read_portrait(&portrait, degree)?;
            let a = read_portrait(&base, degree)?;
            let c = contraction_membership(&g, &a)?;
            let half = half_tree_criterion(&g, &a)?;
            let witness = c.witness.map_or("-".to_string(), |n| n.to_string());
            writeln!(
                out,
                "member={} witness={witness} half-tree={}",
                yes_no(c.member),
                yes_no(half)
            )
            .map_err(io_err)?;
        }
        Command::Verify { config, seed, tsv } => {
            let mut cfg = match &config {
                Some(path) => SuiteConfig::from_toml(&read_text(path)?)?,
                None => SuiteConfig::default_suite(),
            };
            let env_seed = match std::env::var(SEED_ENV) {
                Ok(s) => Some(
                    s.trim()
                        .parse::<u64>()
                        .map_err(|_| CliError::Usage(format!("{SEED_ENV}={s} is not an integer")))?,
                ),
                Err(_) => None,
            };
            if let Some(s) = env_seed.or(seed) {
                cfg.seed = s;
            }
            let report = run_suite(&cfg)?;
            write!(out, "{}", report.to_text()).map_err(io_err)?;
            let count = |s: Status| report.results.iter().filter(|r| r.status == s).count();
            writeln!(
                out,
                "SUMMARY pass={} fail={} skip={} seed={}",
                count(Status::Pass),
                count(Status::Fail),
                count(Status::Skip),
                cfg.seed
            )
            .map_err(io_err)?;
            if let Some(path) = tsv {
                std::fs::write(&path, report.to_tsv()).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
            }
            return Ok(if report.passed() { 0 } else { 1 });
        }
    }
    Ok(0)
}
