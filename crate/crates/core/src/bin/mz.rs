use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use mz_core::charpoly::Engine;
use mz_core::error::{Error, Result};
use mz_core::harness::{self, GluedParams, InstanceRecord, InstanceSource};
use mz_core::io;
use mz_core::matroid::RankFn;
use mz_core::treedecomp::{self, Strategy};

#[derive(Parser)]
#[command(
    name = "mz",
    version,
    about = "Characteristic polynomials and tree-width of GF(q) matroids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic polynomial of a matrix or graph file.
    Charpoly {
        file: PathBuf,
        #[arg(long, default_value = "delcon")]
        engine: Engine,
    },
    /// Width of a decomposition, a heuristic upper bound, or exact tree-width.
    Treewidth {
        file: PathBuf,
        #[arg(long, conflicts_with_all = ["heuristic", "decomp"])]
        exact: bool,
        /// single, path or columns
        #[arg(long)]
        heuristic: Option<Strategy>,
        #[arg(long)]
        decomp: Option<PathBuf>,
        /// Write the decomposition that was evaluated or found.
        #[arg(long)]
        write_decomp: Option<PathBuf>,
    },
    /// Check a theorem or identity family on a set of instances.
    Verify {
        what: VerifyKind,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// A directory of .mat files (with optional .dec files) or family:count[@seed]
        #[arg(long)]
        instances: String,
    },
    /// Write a matrix (or graph) file and a decomposition file.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    Minors {
        #[command(subcommand)]
        kind: MinorKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Main,
    Nolines,
    Identities,
    Bounds,
}

#[derive(Args)]
struct Output {
    /// Output stem; writes <out>.mat and <out>.dec.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum GenerateKind {
    Random {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    Glued {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        block_rank: usize,
        #[arg(long)]
        blocks: usize,
        #[arg(long)]
        overlap: usize,
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    Uniform {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    Graphic {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum MinorKind {
    /// Whether the matroid has a U(2,l) minor.
    Line {
        file: PathBuf,
        #[arg(long)]
        l: usize,
    },
}

fn print_line<T: Serialize>(out: &mut impl Write, value: &T) -> Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string(value).map_err(|e| Error::Io(e.to_string()))?
    )?;
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Charpoly { file, engine } => {
            let m = io::read_matroid_file(&file)?;
            let p = engine.compute(&m)?;
            print_line(
                &mut out,
                &json!({
                    "engine": engine.to_string(),
                    "polynomial": p.to_string(),
                    "coefficients": p,
                }),
            )?;
            Ok(true)
        }
        Command::Treewidth {
            file,
            exact,
            heuristic,
            decomp,
            write_decomp,
        } => {
            let m = io::read_matroid_file(&file)?;
            let (dec, method, extra) = if exact {
                let ex = treedecomp::exact_treewidth_small(&m)?;
                (
                    ex.witness,
                    "exact",
                    json!({ "vertex_count": ex.vertex_count }),
                )
            } else if let Some(path) = decomp {
                (io::read_decomposition_file(&path)?, "file", json!({}))
            } else {
                let s = heuristic.unwrap_or(Strategy::GreedyPath);
                (
                    treedecomp::heuristic_decomposition(&m, s),
                    "heuristic",
                    json!({}),
                )
            };
            let report = treedecomp::width(&m, &dec)?;
            if let Some(path) = write_decomp {
                write_file(&path, &io::write_decomposition(&dec))?;
            }
            print_line(
                &mut out,
                &json!({
                    "method": method,
                    "rank": m.full_rank(),
                    "width": report.width,
                    "node_widths": report.node_widths,
                    "spanning_side": report.spanning_side,
                    "extra": extra,
                }),
            )?;
            Ok(true)
        }
        Command::Verify {
            what,
            q,
            k,
            instances,
        } => {
            let source = InstanceSource::parse(&instances)?;
            let recs = harness::load_instances(&source, q, k)?;
            let ok = match what {
                VerifyKind::Main => {
                    emit(&mut out, harness::verify_main_theorem(&recs, k, q)?, |r| {
                        r.verdict
                    })?
                }
                VerifyKind::Nolines => emit(
                    &mut out,
                    harness::verify_no_lines_theorem(&recs, k, q)?,
                    |r| r.verdict,
                )?,
                VerifyKind::Identities => {
                    emit(&mut out, harness::verify_identities(&recs)?, |r| r.passed)?
                }
                VerifyKind::Bounds => emit(
                    &mut out,
                    harness::verify_size_and_cocircuit_bounds(&recs)?,
                    |r| r.verdict,
                )?,
            };
            Ok(ok)
        }
        Command::Generate { kind } => {
            let seed = |s: u64| harness::seed_override().unwrap_or(s);
            let (rec, stem): (InstanceRecord, PathBuf) = match kind {
                GenerateKind::Random {
                    q,
                    r,
                    n,
                    seed: s,
                    out,
                } => (harness::gen_random_linear(q, r, n, seed(s))?, out.out),
                GenerateKind::Glued {
                    q,
                    block_rank,
                    blocks,
                    overlap,
                    density,
                    seed: s,
                    out,
                } => (
                    harness::gen_glued(
                        GluedParams {
                            q,
                            block_rank,
                            blocks,
                            overlap_rank: overlap,
                            density,
                        },
                        seed(s),
                    )?,
                    out.out,
                ),
                GenerateKind::Uniform { r, n, q, out } => (harness::gen_uniform(r, n, q)?, out.out),
                GenerateKind::Graphic {
                    vertices,
                    edges,
                    seed: s,
                    out,
                } => (harness::gen_graphic(vertices, edges, seed(s))?, out.out),
            };
            write_file(
                &stem.with_extension("mat"),
                &io::write_matroid(&rec.matroid)?,
            )?;
            write_file(
                &stem.with_extension("dec"),
                &io::write_decomposition(&rec.decomposition),
            )?;
            print_line(&mut out, &rec.summary())?;
            Ok(true)
        }
        Command::Minors {
            kind: MinorKind::Line { file, l },
        } => {
            let m = io::read_matroid_file(&file)?;
            let found = m.has_line_minor(l)?;
            print_line(&mut out, &json!({ "l": l, "has_minor": found }))?;
            Ok(true)
        }
    }
}

fn emit<T: Serialize>(
    out: &mut impl Write,
    reports: Vec<T>,
    ok: impl Fn(&T) -> bool,
) -> Result<bool> {
    let mut all = true;
    for r in &reports {
        all &= ok(r);
        print_line(out, r)?;
    }
    Ok(all)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("mz: {e}");
            ExitCode::from(2)
        }
    }
}
