//! Command-line front end. [`run`] takes the argument vector and output
//! streams so it can be driven from tests.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{check_table_inequalities, crossover_p0, emit_curves_csv, fmt17, g_funcs, verify_g2_bound};
use crate::cycles::find_occ_with;
use crate::error::{Error, Result};
use crate::graph::{parse_graph, MultiGraph};
use crate::intflow::{find_int_nzf_with, six_flow_decomposition_with, SearchOptions};
use crate::named;
use crate::opt::{optimize, OptimizerConfig};
use crate::vector::{
    certify, certify_omega, find_occ_flow, halfunit_vectors, omega_flow_from_3nzf, omega_flow_from_4nzf,
    simplex_vectors, six_flow_omega, table1_vectors, thm15_vectors, thm31_vectors, transfer_bound, transform_2d,
    verify_certificate, Direction, FlowCertificate, OmegaSet, PNorm, Table1Column, DEFAULT_TOLERANCE,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "flowdex", version, about = "Nowhere-zero vector flows under p-norms")]
struct Cli {
    /// Search node budget (overrides FLOWDEX_BUDGET)
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a nowhere-zero integer k-flow
    FindNzf {
        #[arg(long)]
        k: u32,
        /// Graph file, or `named:<name>` (petersen, k4, k33, cube, cN, kN, ...)
        graph: String,
    },
    /// Cover the edges by a 3-flow subgraph and an even subgraph
    Decompose6 { graph: String },
    /// Search for an oriented cycle cover with k cycles, l times per direction
    Occ {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        graph: String,
    },
    /// Build and certify a vector flow from one of the explicit constructions
    BuildFlow(BuildFlowArgs),
    /// Search for a flow with a small norm ratio
    Optimize {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "2")]
        p: PNorm,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        graph: String,
    },
    /// Check a certificate file
    Verify {
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        cert: PathBuf,
    },
    /// Map a planar certificate between the 1-norm and the infinity norm
    Transform2d {
        #[arg(long)]
        direction: Direction,
        #[arg(long)]
        out: Option<PathBuf>,
        cert: PathBuf,
    },
    /// Transfer a ratio bound between exponents p1 < p2
    Transfer {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p1: PNorm,
        #[arg(long)]
        p2: PNorm,
        /// Known bound at p2
        #[arg(long)]
        phi: f64,
    },
    /// Evaluate g1, g2, g3 at one p or on a grid
    Gfuncs {
        #[arg(long)]
        p: Option<PNorm>,
        /// Emit CSV over --range with --steps intervals
        #[arg(long)]
        emit_csv: bool,
        #[arg(long, default_value = "1:4")]
        range: String,
        #[arg(long, default_value_t = 3000)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every numerical check behind g2 <= sqrt 2 on [1, 2]
    VerifyThm32,
    /// Print the explicit vector tables and their norm windows
    Tables {
        #[arg(long, default_value = "2")]
        p: PNorm,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Construction {
    #[value(name = "from-3nzf")]
    From3nzf,
    #[value(name = "from-4nzf")]
    From4nzf,
    SixFlow,
    OccSimplex,
    OccHalfunit,
    Table1,
    Thm31,
    Thm15,
}

#[derive(Args, Debug)]
struct BuildFlowArgs {
    #[arg(long, value_enum)]
    construction: Construction,
    /// Vector column for six-flow / table1 (d2-anyp, d3-anyp, d3-inf, d3-one)
    #[arg(long)]
    table1: Option<Table1Column>,
    /// Norm exponent; defaults to the column's own p, else 2
    #[arg(long)]
    p: Option<PNorm>,
    /// Cover size for the occ constructions
    #[arg(long)]
    k: Option<usize>,
    /// Per-direction multiplicity for the occ constructions
    #[arg(long, default_value_t = 1)]
    l: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    graph: String,
}

/// Runs one command and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut opts = SearchOptions::from_env();
    if let Some(b) = cli.budget {
        opts.node_budget = b;
    }
    match dispatch(cli.command, &opts, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::InvalidParameter(_) | Error::Parse { .. } | Error::Format { .. } => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::InvalidParameter(format!("{}: {e}", path.display()))
}

fn load_graph(spec: &str) -> Result<MultiGraph> {
    if let Some(name) = spec.strip_prefix("named:") {
        return named::by_name(name).ok_or_else(|| Error::InvalidParameter(format!("unknown named graph {name:?}")));
    }
    let path = Path::new(spec);
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_graph(&text)
}

pub fn load_certificate(path: &Path) -> Result<FlowCertificate> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    FlowCertificate::from_text(&text)
}

pub fn emit_certificate(cert: &FlowCertificate, path: &Path) -> Result<()> {
    fs::write(path, cert.to_text()).map_err(|e| io_err(path, e))
}

/// Writes `text` to `path`, or to `out` when no path is given.
fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::Internal(e.to_string())),
    }
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(|e| Error::Internal(e.to_string()))?
    };
}

fn dispatch(cmd: Command, opts: &SearchOptions, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::FindNzf { k, graph } => {
            let g = load_graph(&graph)?;
            match find_int_nzf_with(&g, k, opts)? {
                None => {
                    say!(out, "none");
                    Ok(EXIT_FAILED)
                }
                Some(f) => {
                    say!(out, "found nowhere-zero {k}-flow");
                    for (e, v) in f.values.iter().enumerate() {
                        say!(out, "{} {} {v}", f.orientation.tail(e), f.orientation.head(e));
                    }
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Decompose6 { graph } => {
            let g = load_graph(&graph)?;
            let dec = six_flow_decomposition_with(&g, opts)?;
            say!(out, "g1: {}", join(&dec.g1_edges));
            say!(out, "g2: {}", join(&dec.g2_edges));
            say!(out, "g1 3-flow:");
            for (i, &e) in dec.g1_edges.iter().enumerate() {
                let f = &dec.g1_flow;
                say!(
                    out,
                    "{e} {} {} {}",
                    f.orientation.tail(i),
                    f.orientation.head(i),
                    f.values[i]
                );
            }
            Ok(EXIT_OK)
        }
        Command::Occ { k, l, out: path, graph } => {
            let g = load_graph(&graph)?;
            match find_occ_with(&g, k, l, opts)? {
                None => {
                    say!(out, "none");
                    Ok(EXIT_FAILED)
                }
                Some(c) => {
                    emit(out, path.as_deref(), &c.to_text())?;
                    Ok(EXIT_OK)
                }
            }
        }
        Command::BuildFlow(a) => build_flow(a, opts, out),
        Command::Optimize {
            d,
            p,
            restarts,
            seed,
            out: path,
            graph,
        } => {
            let g = load_graph(&graph)?;
            let cfg = OptimizerConfig {
                restarts,
                seed,
                ..OptimizerConfig::default()
            };
            let res = optimize(&g, d, p, &cfg)?;
            say!(out, "seed={seed}");
            if let Some(path) = &path {
                emit_certificate(&res.certificate, path)?;
            }
            say!(out, "best_r={}", fmt17(res.best_r));
            Ok(EXIT_OK)
        }
        Command::Verify { tol, cert } => {
            let c = load_certificate(&cert)?;
            let report = verify_certificate(&c, tol);
            if report.is_ok() {
                say!(out, "verified r={} (d={}, p={})", fmt17(c.claimed_r), c.d, c.p);
                Ok(EXIT_OK)
            } else {
                say!(out, "FAILED");
                say!(out, "{report}");
                Ok(EXIT_FAILED)
            }
        }
        Command::Transform2d {
            direction,
            out: path,
            cert,
        } => {
            let c = load_certificate(&cert)?;
            let target = match direction {
                Direction::OneToInf => PNorm::Infinity,
                Direction::InfToOne => PNorm::Finite(1.0),
            };
            let flow = transform_2d(&c.flow, direction)?;
            let provenance = format!("{}\n{direction} transform of a p={} certificate", c.provenance, c.p);
            let cert = certify(&c.graph, &flow, target, &provenance)?;
            emit(out, path.as_deref(), &cert.to_text())?;
            Ok(EXIT_OK)
        }
        Command::Transfer { d, p1, p2, phi } => {
            let b = transfer_bound(d, p1, p2, phi)?;
            say!(out, "lower={}", fmt17(b.lower));
            say!(out, "upper={}", fmt17(b.upper));
            Ok(EXIT_OK)
        }
        Command::Gfuncs {
            p,
            emit_csv,
            range,
            steps,
            out: path,
        } => {
            if emit_csv {
                let (a, b) = range
                    .split_once(':')
                    .and_then(|(a, b)| Some((a.trim().parse::<f64>().ok()?, b.trim().parse::<f64>().ok()?)))
                    .ok_or_else(|| Error::InvalidParameter(format!("range {range:?} is not `a:b`")))?;
                let csv = emit_curves_csv(a, b, steps)?;
                emit(out, path.as_deref(), &csv)?;
                return Ok(EXIT_OK);
            }
            let p = p.ok_or_else(|| Error::InvalidParameter("give --p or --emit-csv".into()))?;
            let s = g_funcs(p);
            say!(out, "p={p}");
            say!(out, "g1={}", fmt17(s.g1));
            say!(out, "g2={}", fmt17(s.g2));
            say!(out, "g3={}", fmt17(s.g3));
            say!(out, "min_g={}", fmt17(s.min_g));
            say!(out, "bound={}", fmt17(s.bound()));
            Ok(EXIT_OK)
        }
        Command::VerifyThm32 => {
            let r = verify_g2_bound();
            for (a, b, v) in &r.phi_table {
                say!(out, "Phi({a}, {b}) = {}", fmt17(*v));
            }
            say!(out, "crossover p0 = {}", fmt17(crossover_p0()?));
            say!(out, "max g2 on [1, 2] = {}", fmt17(r.g2_max_on_grid));
            say!(out, "min I on [1.6, 2] = {}", fmt17(r.i_min_on_grid));
            say!(out, "max H1 on [1.6, 2] = {}", fmt17(r.h1_max_on_grid));
            say!(out, "h(-5/4) = {}", fmt17(r.h_endpoints.0));
            say!(out, "h(-1) = {}", fmt17(r.h_endpoints.1));
            say!(out, "max h on [-5/4, -1] = {}", fmt17(r.h_max_on_grid));
            say!(out, "m0 = {}", fmt17(r.m0));
            say!(out, "log inequality = {}", fmt17(r.log_inequality));
            if r.is_ok() {
                say!(out, "all checks passed");
                Ok(EXIT_OK)
            } else {
                for f in &r.failures {
                    say!(out, "FAILED: {f}");
                }
                Ok(EXIT_FAILED)
            }
        }
        Command::Tables { p } => {
            let six = OmegaSet::six_flow();
            for col in Table1Column::ALL {
                let cp = col.fixed_p().unwrap_or(p);
                let t = table1_vectors(col, cp)?;
                let (lo, hi) = t.window(cp);
                say!(out, "column {col} (p={cp}): window [{lo:.6}, {hi:.6}]");
                for (i, v) in t.omega.iter().enumerate() {
                    say!(out, "  {:<9} {}", six.label(i), vec_text(v));
                }
            }
            let t = thm31_vectors(p);
            let (lo, hi) = t.window(p);
            say!(out, "thm31 (p={p}): window [{lo:.6}, {hi:.6}]");
            for (i, v) in t.omega.iter().enumerate() {
                say!(out, "  {:<9} {}", six.label(i), vec_text(v));
            }
            if let PNorm::Finite(q) = p {
                let ineq = check_table_inequalities(q)?;
                say!(
                    out,
                    "table inequalities at p={q}: {}",
                    if ineq.all_hold() { "hold" } else { "FAIL" }
                );
            }
            Ok(EXIT_OK)
        }
    }
}

fn build_flow(a: BuildFlowArgs, opts: &SearchOptions, out: &mut dyn Write) -> Result<i32> {
    let g = load_graph(&a.graph)?;
    let column_p = a.table1.and_then(|c| c.fixed_p());
    let (cert, what) = match a.construction {
        Construction::From3nzf => {
            let p = a.p.unwrap_or(PNorm::Finite(2.0));
            let s = omega_flow_from_3nzf(&g, opts)?;
            let v = vec![vec![1.0, 0.0], vec![-0.5, 0.75f64.sqrt()]];
            (
                certify_omega(&g, &s, &v, p, "3-flow split into two directed cycles")?,
                p,
            )
        }
        Construction::From4nzf | Construction::Thm15 => {
            let p = a.p.unwrap_or(PNorm::Finite(2.0));
            let s = omega_flow_from_4nzf(&g, opts)?;
            let v = if a.construction == Construction::Thm15 {
                thm15_vectors(p).to_vec()
            } else {
                vec![vec![1.0, 0.0], vec![0.0, 1.0]]
            };
            (certify_omega(&g, &s, &v, p, "4-flow split into two even subgraphs")?, p)
        }
        Construction::SixFlow | Construction::Table1 | Construction::Thm31 => {
            let p = a.p.or(column_p).unwrap_or(PNorm::Finite(2.0));
            let s = six_flow_omega(&g, opts)?;
            let (triple, label) = if a.construction == Construction::Thm31 {
                (thm31_vectors(p), "three-dimensional g2 vectors".to_string())
            } else {
                let col = match (a.construction, a.table1) {
                    (_, Some(c)) => c,
                    (Construction::SixFlow, None) => Table1Column::D2AnyP,
                    _ => return Err(Error::InvalidParameter("--table1 is required".into())),
                };
                (table1_vectors(col, p)?, format!("column {col}"))
            };
            let prov = format!("six-flow decomposition with {label}");
            (certify_omega(&g, &s, &triple.assignment, p, &prov)?, p)
        }
        Construction::OccSimplex => {
            let p = a.p.unwrap_or(PNorm::Finite(2.0));
            let k = a.k.unwrap_or(4);
            let s = find_occ_flow(&g, k, a.l, opts)?;
            let v = simplex_vectors(k, a.l, p)?;
            let prov = format!("oriented ({k}, {}) cycle cover with simplex vectors", a.l);
            (certify_omega(&g, &s, &v, p, &prov)?, p)
        }
        Construction::OccHalfunit => {
            let p = a.p.unwrap_or(PNorm::Finite(1.0));
            let k = a.k.unwrap_or(3);
            let s = find_occ_flow(&g, k, a.l, opts)?;
            let v = halfunit_vectors(k)?;
            let prov = format!("oriented ({k}, {}) cycle cover with half-unit vectors", a.l);
            (certify_omega(&g, &s, &v, p, &prov)?, p)
        }
    };
    let report = verify_certificate(&cert, DEFAULT_TOLERANCE);
    if !report.is_ok() {
        return Err(Error::Internal(format!("construction failed verification: {report}")));
    }
    match &a.out {
        Some(path) => {
            emit_certificate(&cert, path)?;
            say!(out, "r={:.6} (d={}, p={what})", cert.claimed_r, cert.d);
        }
        None => emit(out, None, &cert.to_text())?,
    }
    Ok(EXIT_OK)
}

fn join(edges: &[usize]) -> String {
    edges.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

fn vec_text(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", parts.join(", "))
}
