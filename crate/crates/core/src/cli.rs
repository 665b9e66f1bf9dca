//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a not-in-class witness was produced, 2 a
//! verification failure or property violation, 3 a usage, parse or I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::decompose::{decompose, DecomposeError};
use crate::generate::{
    derive_seed, gen_edge_subgraph, gen_named, gen_random_apollonian, gen_series_parallel, Draws,
    Seed,
};
use crate::graph::{parse_edge_list, serialize_partition, Graph};
use crate::structure::{find_configuration, ClassParams};
use crate::verify::{brute_force_partition, verify_partition, DEFAULT_EDGE_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    NotInClass,
    Failure,
    Usage,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::NotInClass => 1,
            ExitStatus::Failure => 2,
            ExitStatus::Usage => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fpart",
    version,
    about = "Partition graph edges into two bounded-degree forests and a bounded-degree remainder"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decompose an edge list and print the labeled edges.
    Decompose {
        #[arg(long)]
        alpha: i64,
        #[arg(long)]
        input: PathBuf,
        /// Write the partition here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Re-check the partition and exit 2 on any violation.
        #[arg(long)]
        verify: bool,
    },
    /// Report the first reducible configuration, or the witness if none.
    Check {
        #[arg(long)]
        alpha: i64,
        #[arg(long)]
        input: PathBuf,
    },
    /// Write a generated edge list to stdout.
    Gen {
        #[arg(value_enum)]
        family: GenFamily,
        /// Family name for `named`: cycle, path, star, complete, banana.
        #[arg(long)]
        name: Option<String>,
        /// Size parameter for `named` and `apollonian`.
        #[arg(long)]
        n: Option<usize>,
        /// Number of edges for `series-parallel`.
        #[arg(long)]
        m: Option<usize>,
        /// Keep each edge with this probability afterwards.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: Seed,
    },
    /// Decompose and verify a batch of generated graphs.
    Fuzz {
        #[arg(long)]
        alpha: i64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: Seed,
        #[arg(long, value_enum)]
        family: FuzzFamily,
        /// Largest vertex count (planar) or edge count (sp) drawn.
        #[arg(long, default_value_t = 60)]
        max_n: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenFamily {
    Named,
    Apollonian,
    SeriesParallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FuzzFamily {
    Planar,
    Sp,
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() {
                ExitStatus::Usage
            } else {
                ExitStatus::Success
            };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return status;
        }
    };
    let result = match cli.command {
        Command::Decompose {
            alpha,
            input,
            output,
            verify,
        } => cmd_decompose(alpha, &input, output.as_deref(), verify, out, err),
        Command::Check { alpha, input } => cmd_check(alpha, &input, out),
        Command::Gen {
            family,
            name,
            n,
            m,
            p,
            seed,
        } => cmd_gen(family, name, n, m, p, seed, out),
        Command::Fuzz {
            alpha,
            count,
            seed,
            family,
            max_n,
        } => cmd_fuzz(alpha, count, seed, family, max_n, out),
    };
    match result {
        Ok(status) => status,
        Err(CliError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            ExitStatus::Usage
        }
    }
}

#[derive(Debug)]
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError(format!("reading {}: {e}", path.display())))?;
    parse_edge_list(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn params(alpha: i64) -> Result<ClassParams, CliError> {
    Ok(ClassParams::new(alpha)?)
}

fn cmd_decompose(
    alpha: i64,
    input: &Path,
    output: Option<&Path>,
    verify: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<ExitStatus, CliError> {
    let params = params(alpha)?;
    let g = read_graph(input)?;
    let partition = match decompose(&g, params) {
        Ok(p) => p,
        Err(DecomposeError::NotInClass(w)) => {
            writeln!(err, "not in class for alpha = {alpha}; witness:")?;
            write!(err, "{}", w.0.to_edge_list())?;
            return Ok(ExitStatus::NotInClass);
        }
        Err(e @ DecomposeError::InternalInvariantViolation(_)) => {
            writeln!(err, "{e}")?;
            return Ok(ExitStatus::Failure);
        }
    };
    if verify {
        let report = verify_partition(&g, &partition, params);
        if !report.is_valid() {
            for v in &report.violations {
                writeln!(err, "violation: {v}")?;
            }
            return Ok(ExitStatus::Failure);
        }
    }
    let mut text = serialize_partition(&g, &partition)?;
    if !text.is_empty() {
        text.push('\n');
    }
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError(format!("writing {}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(ExitStatus::Success)
}

fn cmd_check(alpha: i64, input: &Path, out: &mut dyn Write) -> Result<ExitStatus, CliError> {
    let params = params(alpha)?;
    let g = read_graph(input)?;
    match find_configuration(&g, params) {
        Ok(config) => {
            writeln!(out, "{config}")?;
            Ok(ExitStatus::Success)
        }
        Err(w) => {
            writeln!(out, "NotInClass")?;
            write!(out, "{}", w.0.to_edge_list())?;
            Ok(ExitStatus::NotInClass)
        }
    }
}

fn cmd_gen(
    family: GenFamily,
    name: Option<String>,
    n: Option<usize>,
    m: Option<usize>,
    p: Option<f64>,
    seed: Seed,
    out: &mut dyn Write,
) -> Result<ExitStatus, CliError> {
    let missing = |flag: &str| CliError(format!("gen {family:?} requires --{flag}").to_lowercase());
    let g = match family {
        GenFamily::Named => gen_named(
            &name.ok_or_else(|| missing("name"))?,
            n.ok_or_else(|| missing("n"))?,
        )?,
        GenFamily::Apollonian => gen_random_apollonian(n.ok_or_else(|| missing("n"))?, seed)?,
        GenFamily::SeriesParallel => gen_series_parallel(m.ok_or_else(|| missing("m"))?, seed)?,
    };
    // The subgraph draw uses the second derived seed so it is independent of
    // the construction stream.
    let g = match p {
        Some(p) => gen_edge_subgraph(&g, p, derive_seed(seed, 1))?,
        None => g,
    };
    write!(out, "{}", g.to_edge_list())?;
    Ok(ExitStatus::Success)
}

/// Outcome of one fuzz graph.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Outcome {
    Ok,
    Witness(String),
    Failure(String),
}

fn fuzz_graphs(family: FuzzFamily, max_n: usize, seed: Seed) -> Result<Vec<Graph>, CliError> {
    let mut draws = Draws::new(seed);
    let base = match family {
        FuzzFamily::Planar => {
            let n = 4 + draws.below(max_n.max(4) - 3);
            gen_random_apollonian(n, draws.next_u64())?
        }
        FuzzFamily::Sp => {
            let m = 1 + draws.below(max_n.max(1));
            gen_series_parallel(m, draws.next_u64())?
        }
    };
    let half = gen_edge_subgraph(&base, 0.5, draws.next_u64())?;
    let most = gen_edge_subgraph(&base, 0.8, draws.next_u64())?;
    Ok(vec![base, half, most])
}

fn check_graph(g: &Graph, params: ClassParams) -> Outcome {
    let decomposed = decompose(g, params);
    match &decomposed {
        Ok(p) => {
            let report = verify_partition(g, p, params);
            if !report.is_valid() {
                return Outcome::Failure(format!("verification: {report}"));
            }
        }
        Err(DecomposeError::NotInClass(w)) => {
            return Outcome::Witness(format!(
                "witness with {} vertices, {} edges",
                w.0.num_vertices(),
                w.0.num_edges()
            ));
        }
        Err(e) => return Outcome::Failure(e.to_string()),
    }
    if g.num_edges() <= DEFAULT_EDGE_LIMIT {
        match brute_force_partition(g, params, DEFAULT_EDGE_LIMIT) {
            Ok(Some(_)) => {}
            Ok(None) => return Outcome::Failure("brute force finds no valid partition".into()),
            Err(e) => return Outcome::Failure(e.to_string()),
        }
    }
    Outcome::Ok
}

fn cmd_fuzz(
    alpha: i64,
    count: usize,
    seed: Seed,
    family: FuzzFamily,
    max_n: usize,
    out: &mut dyn Write,
) -> Result<ExitStatus, CliError> {
    let params = params(alpha)?;
    let results: Vec<Result<Vec<(Graph, Outcome)>, CliError>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let graphs = fuzz_graphs(family, max_n, derive_seed(seed, i as u64))?;
            Ok(graphs
                .into_iter()
                .map(|g| {
                    let outcome = check_graph(&g, params);
                    (g, outcome)
                })
                .collect())
        })
        .collect();

    let (mut graphs, mut witnesses, mut failures) = (0usize, 0usize, 0usize);
    for (i, result) in results.into_iter().enumerate() {
        for (j, (g, outcome)) in result?.into_iter().enumerate() {
            graphs += 1;
            let shape = format!("n={} m={}", g.num_vertices(), g.num_edges());
            match outcome {
                Outcome::Ok => {}
                Outcome::Witness(msg) => {
                    witnesses += 1;
                    writeln!(out, "WITNESS instance {i}.{j} ({shape}): {msg}")?;
                }
                Outcome::Failure(msg) => {
                    failures += 1;
                    writeln!(out, "FAIL instance {i}.{j} ({shape}): {msg}")?;
                }
            }
        }
    }
    let family_name = match family {
        FuzzFamily::Planar => "planar",
        FuzzFamily::Sp => "sp",
    };
    writeln!(
        out,
        "fuzz family={family_name} alpha={alpha} seed={seed} instances={count} graphs={graphs} \
         passed={} witnesses={witnesses} failures={failures}",
        graphs - witnesses - failures
    )?;
    Ok(if failures > 0 {
        ExitStatus::Failure
    } else if witnesses > 0 {
        ExitStatus::NotInClass
    } else {
        ExitStatus::Success
    })
}
