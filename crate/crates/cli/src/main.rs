use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use negflow_core::characterize::{Caps, CharacterizeError};
use negflow_core::generators::{Fig1Shape, GeneratorSpec};
use negflow_core::polyhedra::DEFAULT_ORACLE_CAP;
use negflow_core::reduction::{
    build_reduction, decide_ve01, parse_dimacs_cnf, trivial_vertex_family, ReductionError,
};
use negflow_core::{
    build_p, build_p_prime, decompose_circulation, directions_from_cycles, oracle_vertices,
    verify_theorem1, vertices_from_negative_cycles, ArcVector, CyclesError, PolyError, VertexSet,
    WeightedDigraph, DEFAULT_CYCLE_CAP,
};

/// Vertices and extreme directions of the negative-weight flow polyhedron.
#[derive(Debug, Parser)]
#[command(name = "negflow", version)]
struct Cli {
    /// Cap on enumerated cycles and on negative/positive cycle pairs.
    #[arg(long, global = true, env = "NEGFLOW_MAX_CYCLES", default_value_t = DEFAULT_CYCLE_CAP)]
    max_cycles: usize,

    /// Cap on candidate supports examined by the oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP)]
    max_oracle: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vertices built from negative cycles, one `v` line each.
    Vertices { graph: PathBuf },
    /// Extreme directions built from zero cycles and 2-cycles, one `d` line each.
    Directions { graph: PathBuf },
    /// Vertices of P (or of P' with --prime) from the constraint-level oracle.
    Oracle {
        graph: PathBuf,
        #[arg(long)]
        prime: bool,
    },
    /// Compare the cycle formulas with the oracle; exits 1 on mismatch.
    Verify { graph: PathBuf },
    /// Split a nonnegative circulation (`e` lines) into cycles.
    Decompose { graph: PathBuf, vector: PathBuf },
    /// Build the reduction graph of a DIMACS CNF formula.
    Reduce {
        cnf: PathBuf,
        /// Write the graph here instead of stdout.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Write the trivial vertex family as `v` lines.
        #[arg(long)]
        emit_x: Option<PathBuf>,
    },
    /// Decide whether the trivial family is every vertex, with a SAT cross-check.
    Decide { cnf: PathBuf },
    /// Generate an instance graph.
    #[command(subcommand)]
    Gen(Gen),
}

#[derive(Debug, Subcommand)]
enum Gen {
    /// Cycle of 2k arcs with two parallel paths per pair.
    Fig3 {
        #[arg(long)]
        k: usize,
    },
    /// The two smallest 2-cycle shapes.
    Fig1 {
        #[arg(long, value_enum)]
        shape: Shape,
    },
    /// Seeded simple digraph with integer weights in [-wmax, wmax].
    Random {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        arcs: usize,
        #[arg(long)]
        wmax: u32,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Shape {
    EdgeDisjoint,
    ThreePath,
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<WeightedDigraph> {
    let text = read_input(path)?;
    WeightedDigraph::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn set_text(set: &VertexSet, tag: &str) -> String {
    let mut out = String::new();
    if set.polyhedron_empty {
        out.push_str("c polyhedron is empty\n");
    }
    out + &set.to_text(tag)
}

fn run(cli: &Cli, out: &mut String) -> Result<ExitCode> {
    let caps = Caps {
        cycles: cli.max_cycles,
        oracle: cli.max_oracle,
    };
    match &cli.command {
        Command::Vertices { graph } => {
            let g = read_graph(graph)?;
            out.push_str(&vertices_from_negative_cycles(&g, caps.cycles)?.to_text("v"));
        }
        Command::Directions { graph } => {
            let g = read_graph(graph)?;
            out.push_str(&directions_from_cycles(&g, caps.cycles)?.to_text("d"));
        }
        Command::Oracle { graph, prime } => {
            let g = read_graph(graph)?;
            let h = if *prime {
                build_p_prime(&g)
            } else {
                build_p(&g)
            };
            let set = oracle_vertices(&h, caps.oracle)?;
            out.push_str(&set_text(&set, "v"));
        }
        Command::Verify { graph } => {
            let g = read_graph(graph)?;
            let report = verify_theorem1(&g, caps)?;
            out.push_str(&report.to_text());
            if !report.holds() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Decompose { graph, vector } => {
            let g = read_graph(graph)?;
            let text = read_input(vector)?;
            let y = ArcVector::parse(&text, g.arc_count())
                .with_context(|| format!("parsing {}", vector.display()))?;
            let d = decompose_circulation(&g, &y)?;
            for (cycle, lambda) in &d.terms {
                out.push_str(&format!(
                    "t {} {cycle}\n",
                    negflow_core::format_rational(lambda)
                ));
            }
        }
        Command::Reduce {
            cnf,
            output,
            emit_x,
        } => {
            let f = parse_dimacs_cnf(&read_input(cnf)?)
                .with_context(|| format!("parsing {}", cnf.display()))?;
            let art = build_reduction(&f);
            let text = art.to_graph_text();
            match output {
                Some(path) => write_file(path, &text)?,
                None => out.push_str(&text),
            }
            if let Some(path) = emit_x {
                let x = VertexSet::from_points(trivial_vertex_family(&art));
                write_file(path, &x.to_text("v"))?;
            }
        }
        Command::Decide { cnf } => {
            let f = parse_dimacs_cnf(&read_input(cnf)?)
                .with_context(|| format!("parsing {}", cnf.display()))?;
            out.push_str(&decide_ve01(&f, caps.cycles)?.to_text());
        }
        Command::Gen(gen) => {
            let spec = match *gen {
                Gen::Fig3 { k } => GeneratorSpec::Fig3 { k },
                Gen::Fig1 { shape } => GeneratorSpec::Fig1 {
                    shape: match shape {
                        Shape::EdgeDisjoint => Fig1Shape::EdgeDisjoint,
                        Shape::ThreePath => Fig1Shape::ThreePath,
                    },
                },
                Gen::Random {
                    nodes,
                    arcs,
                    wmax,
                    seed,
                } => GeneratorSpec::Random {
                    nodes,
                    arcs,
                    wmax,
                    seed,
                },
            };
            out.push_str(&spec.to_text()?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// The flag to raise when `err` is a cap overflow.
fn cap_flag(err: &anyhow::Error) -> Option<(&'static str, usize)> {
    let cycles = |e: &CyclesError| match e {
        CyclesError::CapExceeded { cap } => Some(("--max-cycles", *cap)),
        _ => None,
    };
    let poly = |e: &PolyError| match e {
        PolyError::CapExceeded { cap } => Some(("--max-oracle", *cap)),
        _ => None,
    };
    if let Some(e) = err.downcast_ref::<CyclesError>() {
        return cycles(e);
    }
    if let Some(e) = err.downcast_ref::<PolyError>() {
        return poly(e);
    }
    match err.downcast_ref::<CharacterizeError>() {
        Some(CharacterizeError::Cycles(e)) => return cycles(e),
        Some(CharacterizeError::Poly(e)) => return poly(e),
        None => {}
    }
    match err.downcast_ref::<ReductionError>() {
        Some(ReductionError::Cycles(e)) => cycles(e),
        _ => None,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(&cli, &mut out) {
        Ok(code) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            code
        }
        Err(err) => {
            if let Some((flag, cap)) = cap_flag(&err) {
                eprintln!("error: cap of {cap} exceeded; raise {flag}");
                return ExitCode::from(3);
            }
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
