//! Batch command-line driver: construct, verify, derive, explain, catalog.
//!
//! Exit codes: 0 on success, 1 when verification finds a counterexample,
//! 2 for usage, I/O, or precondition errors (including inconclusive
//! verification under a node budget).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ramsey_core::bounds::{derive, BoundTable, DeriveOptions};
use ramsey_core::catalog::{self, ColoringMetadata};
use ramsey_core::constructions::{block_stretch, copy_blowup, ConstructionResult};
use ramsey_core::verifier::{verify_budgeted, ColorCertification};
use ramsey_core::{CliqueBoundVector, EdgeColoring};

/// Environment variable consulted when `bound` is run without `--table`.
const TABLE_ENV: &str = "RAMSEY_TABLE";

#[derive(Parser)]
#[command(
    name = "ramsey",
    version,
    about = "Lower-bound witnesses for multicolored Ramsey numbers: construct, verify, derive"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a larger witness coloring from a base coloring file
    Construct {
        #[command(subcommand)]
        construction: Construction,
    },
    /// Check a coloring file against a bound vector, color by color
    Verify {
        /// Coloring file to check
        file: PathBuf,
        /// Bound vector k1,...,kr: color i must avoid a monochromatic K_{k_i}
        #[arg(long)]
        bounds: CliqueBoundVector,
        /// Per-color search node budget; exceeding it reports inconclusive
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Derive the best lower bound for a target vector from a table of known bounds
    Bound {
        /// Target vector k1,...,kr
        #[arg(long)]
        target: CliqueBoundVector,
        /// Known-bounds table file; defaults to $RAMSEY_TABLE
        #[arg(long)]
        table: Option<PathBuf>,
        /// Print the full derivation tree
        #[arg(long)]
        explain: bool,
    },
    /// List the built-in seed colorings or write one out
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// Copy blowup: k1-1 disjoint copies of the base, cross edges in a
    /// fresh color; claims (k1, base bounds) on (k1-1)*n vertices
    Thm1 {
        /// Base coloring file; must carry bounds= metadata
        #[arg(long)]
        base: PathBuf,
        /// Clique bound of the fresh color (at least 3)
        #[arg(long)]
        k1: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Block stretch: a (t+1)x(t+1) block grid that stretches one base
    /// color's bound m to m+t-1, fresh color bounded by t
    Thm2 {
        /// Base coloring file; must carry bounds= metadata
        #[arg(long)]
        base: PathBuf,
        /// Grid parameter (at least 3)
        #[arg(long)]
        t: usize,
        /// Base color whose bound is stretched
        #[arg(long)]
        stretched: u8,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Show every seed with its size and claimed bounds
    List,
    /// Write a seed coloring file
    Get {
        name: String,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Construct { construction } => run_construct(construction),
        Command::Verify { file, bounds, budget } => run_verify(&file, &bounds, budget),
        Command::Bound { target, table, explain } => run_bound(&target, table, explain),
        Command::Catalog { action } => run_catalog(action),
    }
}

fn read_coloring(path: &Path) -> Result<(EdgeColoring, ColoringMetadata), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    catalog::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_result(path: &Path, result: &ConstructionResult) -> Result<(), String> {
    let meta = ColoringMetadata {
        bounds: Some(result.claimed_bounds.clone()),
        source: Some(result.provenance.to_string()),
    };
    std::fs::write(path, catalog::serialize(&result.coloring, &meta))
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn base_bounds_from(meta: &ColoringMetadata, path: &Path) -> Result<CliqueBoundVector, String> {
    meta.bounds.clone().ok_or_else(|| {
        format!(
            "{}: base file carries no bounds= metadata; constructions need the base's claimed bounds",
            path.display()
        )
    })
}

fn run_construct(construction: Construction) -> Result<ExitCode, String> {
    match construction {
        Construction::Thm1 { base, k1, output } => {
            let (coloring, meta) = read_coloring(&base)?;
            let bounds = base_bounds_from(&meta, &base)?;
            let result = copy_blowup(&coloring, &bounds, k1).map_err(|e| e.to_string())?;
            println!(
                "thm1: (k1-1)*n = ({}-1)*{} = {} vertices",
                k1,
                coloring.n(),
                result.coloring.n()
            );
            println!("claimed bounds: {}", result.claimed_bounds);
            write_result(&output, &result)?;
            println!("wrote {}", output.display());
            Ok(ExitCode::SUCCESS)
        }
        Construction::Thm2 { base, t, stretched, output } => {
            let (coloring, meta) = read_coloring(&base)?;
            let bounds = base_bounds_from(&meta, &base)?;
            let result =
                block_stretch(&coloring, &bounds, t, stretched).map_err(|e| e.to_string())?;
            println!(
                "thm2: (t+1)*n = ({}+1)*{} = {} vertices",
                t,
                coloring.n(),
                result.coloring.n()
            );
            println!(
                "claimed bounds: {} (color 1 fresh, color 3 stretched)",
                result.claimed_bounds
            );
            write_result(&output, &result)?;
            println!("wrote {}", output.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_verify(
    file: &Path,
    bounds: &CliqueBoundVector,
    budget: Option<u64>,
) -> Result<ExitCode, String> {
    let (coloring, _) = read_coloring(file)?;
    let report = verify_budgeted(&coloring, bounds, budget).map_err(|e| e.to_string())?;
    for color in &report.per_color {
        match &color.certification {
            ColorCertification::Certified => println!(
                "color {}: certified, no K_{} (nodes={}, {:.1?})",
                color.color, color.bound, color.stats.nodes, color.stats.elapsed
            ),
            ColorCertification::Counterexample(w) => {
                let verts: Vec<String> = w.iter().map(|v| v.to_string()).collect();
                println!(
                    "color {}: counterexample K_{} = {{{}}}",
                    color.color,
                    color.bound,
                    verts.join(", ")
                );
            }
            ColorCertification::Inconclusive => println!(
                "color {}: inconclusive, node budget exhausted (nodes={})",
                color.color, color.stats.nodes
            ),
        }
    }
    if report.all_certified() {
        println!(
            "all colors certified: {} vertices witness R({}) >= {}",
            coloring.n(),
            bounds,
            coloring.n() + 1
        );
        Ok(ExitCode::SUCCESS)
    } else if report.counterexamples().next().is_some() {
        println!("verification FAILED: monochromatic clique found");
        Ok(ExitCode::from(1))
    } else {
        println!("verification inconclusive under the given budget");
        Ok(ExitCode::from(2))
    }
}

fn run_bound(
    target: &CliqueBoundVector,
    table: Option<PathBuf>,
    explain: bool,
) -> Result<ExitCode, String> {
    let path = table
        .or_else(|| std::env::var_os(TABLE_ENV).map(PathBuf::from))
        .ok_or_else(|| format!("no table given: pass --table <file> or set ${TABLE_ENV}"))?;
    let table = BoundTable::load(&path).map_err(|e| e.to_string())?;
    let tree = derive(target, &table, DeriveOptions::default()).map_err(|e| e.to_string())?;
    println!("R({}) >= {}", tree.root().vector(), tree.lower_bound());
    if explain {
        print!("{}", tree.explain());
    }
    Ok(ExitCode::SUCCESS)
}

fn run_catalog(action: CatalogAction) -> Result<ExitCode, String> {
    match action {
        CatalogAction::List => {
            for name in catalog::seed_names() {
                let (coloring, bounds) = catalog::seed(name).map_err(|e| e.to_string())?;
                println!("{name:<8} n={:<3} bounds={bounds}", coloring.n());
            }
            Ok(ExitCode::SUCCESS)
        }
        CatalogAction::Get { name, output } => {
            let text = catalog::seed_text(&name).map_err(|e| e.to_string())?;
            std::fs::write(&output, text).map_err(|e| format!("{}: {e}", output.display()))?;
            println!("wrote {}", output.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}
