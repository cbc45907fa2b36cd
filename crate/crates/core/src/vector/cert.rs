use std::fmt::Write as _;

use crate::analysis::fmt17;
use crate::error::{Error, Result};
use crate::graph::{parse_graph, MultiGraph, Orientation};
use crate::report::Report;
use crate::vector::construct::SymbolicFlow;
use crate::vector::flow::VectorFlow;
use crate::vector::norm::PNorm;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

const HEADER: &str = "flowdex-cert v1";

/// A rescaled flow together with the ratio bound it witnesses.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowCertificate {
    pub graph: MultiGraph,
    pub d: usize,
    pub p: PNorm,
    pub claimed_r: f64,
    pub flow: VectorFlow,
    pub provenance: String,
}

/// Rescales `flow` so its smallest norm is 1 and records `r = 1 + max/min`.
pub fn certify(g: &MultiGraph, flow: &VectorFlow, p: PNorm, provenance: &str) -> Result<FlowCertificate> {
    if flow.values.len() != g.edge_count() {
        return Err(Error::DimensionMismatch {
            expected: g.edge_count(),
            found: flow.values.len(),
        });
    }
    let norms = flow.norms(p);
    if let Some(e) = (0..norms.len()).find(|&e| !flow.support[e] || norms[e] == 0.0) {
        return Err(Error::ZeroValue(e));
    }
    let scale = flow.max_coordinate().max(1.0);
    let residuals = flow.residuals(g);
    for (v, r) in residuals.iter().enumerate() {
        let worst = r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if worst > DEFAULT_TOLERANCE * scale {
            return Err(Error::Conservation {
                vertex: v,
                residual: worst,
            });
        }
    }
    let min = norms.iter().copied().fold(f64::INFINITY, f64::min);
    let max = norms.iter().copied().fold(0.0, f64::max);
    let mut scaled = flow.clone();
    if norms.is_empty() {
        return Err(Error::Degenerate("graph has no edges".into()));
    }
    scaled.scale(1.0 / min);
    Ok(FlowCertificate {
        graph: g.clone(),
        d: flow.d,
        p,
        claimed_r: 1.0 + max / min,
        flow: scaled,
        provenance: provenance.to_string(),
    })
}

/// Instantiates a symbolic flow and certifies it.
pub fn certify_omega(
    g: &MultiGraph,
    flow: &SymbolicFlow,
    assignment: &[Vec<f64>],
    p: PNorm,
    provenance: &str,
) -> Result<FlowCertificate> {
    let f = flow.instantiate(g, assignment)?;
    certify(g, &f, p, provenance)
}

/// Recomputes conservation and every norm against `claimed_r`.
pub fn verify_certificate(cert: &FlowCertificate, tolerance: f64) -> Report {
    let mut report = Report::default();
    let g = &cert.graph;
    let f = &cert.flow;
    if f.values.len() != g.edge_count() || f.orientation.len() != g.edge_count() {
        report.push(format!(
            "flow has {} values for {} edges",
            f.values.len(),
            g.edge_count()
        ));
        return report;
    }
    if let Some(e) = f.values.iter().position(|v| v.len() != cert.d) {
        report.push(format!("value at edge {e} does not have dimension {}", cert.d));
        return report;
    }
    for (e, &(t, h)) in f.orientation.arcs().iter().enumerate() {
        let (a, b) = g.endpoints(e);
        if (t, h) != (a, b) && (t, h) != (b, a) {
            report.push(format!("orientation of edge {e} does not match its endpoints"));
        }
    }
    if !report.is_ok() {
        return report;
    }
    if !(cert.claimed_r >= 2.0 - tolerance) {
        report.push(format!("claimed r = {} is below 2", cert.claimed_r));
    }
    let scale = f.max_coordinate().max(1.0);
    for (v, r) in f.residuals(g).iter().enumerate() {
        let worst = r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if !(worst <= tolerance * scale) {
            report.push(format!("conservation residual {worst:e} at vertex {v}"));
        }
    }
    for (e, n) in f.norms(cert.p).into_iter().enumerate() {
        if !(n >= 1.0 - tolerance) {
            report.push(format!("norm below 1 at edge {e}"));
        } else if !(n <= cert.claimed_r - 1.0 + tolerance) {
            report.push(format!("norm above r - 1 at edge {e}"));
        }
    }
    report
}

impl FlowCertificate {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{HEADER}").unwrap();
        writeln!(s, "graph:").unwrap();
        s.push_str(&self.graph.to_text());
        writeln!(s, "d: {}", self.d).unwrap();
        writeln!(s, "p: {}", self.p).unwrap();
        writeln!(s, "r: {}", fmt17(self.claimed_r)).unwrap();
        writeln!(s, "orientation:").unwrap();
        for &(t, h) in self.flow.orientation.arcs() {
            writeln!(s, "{t} {h}").unwrap();
        }
        writeln!(s, "values:").unwrap();
        for v in &self.flow.values {
            let parts: Vec<String> = v.iter().map(|&x| fmt17(x)).collect();
            writeln!(s, "{}", parts.join(" ")).unwrap();
        }
        writeln!(s, "provenance:").unwrap();
        s.push_str(&self.provenance);
        s.push('\n');
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.split('\n').collect();
        let mut pos = 0usize;
        let mut next = |what: &str| -> Result<(usize, &str)> {
            let line = lines
                .get(pos)
                .ok_or_else(|| Error::format(pos + 1, format!("missing section {what}")))?;
            pos += 1;
            Ok((pos, line.trim_end_matches('\r')))
        };
        let (ln, line) = next("header")?;
        if line != HEADER {
            return Err(Error::format(ln, format!("expected {HEADER:?}")));
        }
        expect_label(next("graph:")?, "graph:")?;

        let (ln, head) = next("graph")?;
        let (n, m) = parse_two::<usize>(head).ok_or_else(|| Error::format(ln, "expected graph header `n m`"))?;
        let graph_start = ln;
        let mut graph_text = format!("{head}\n");
        for _ in 0..m {
            let (_, l) = next("graph")?;
            graph_text.push_str(l);
            graph_text.push('\n');
        }
        let graph = parse_graph(&graph_text).map_err(|e| match e {
            Error::Parse { line, kind } => Error::Parse {
                line: line + graph_start - 1,
                kind,
            },
            other => other,
        })?;
        debug_assert_eq!(graph.vertex_count(), n);

        let (ln, line) = next("d:")?;
        let d: usize = field(ln, line, "d:")?
            .parse()
            .map_err(|_| Error::format(ln, "d must be a positive integer"))?;
        let (ln, line) = next("p:")?;
        let p: PNorm = field(ln, line, "p:")?
            .parse()
            .map_err(|e| Error::format(ln, format!("{e}")))?;
        let (ln, line) = next("r:")?;
        let claimed_r: f64 = field(ln, line, "r:")?
            .parse()
            .map_err(|_| Error::format(ln, "r must be a decimal number"))?;

        expect_label(next("orientation:")?, "orientation:")?;
        let mut arcs = Vec::with_capacity(m);
        for _ in 0..m {
            let (ln, l) = next("orientation")?;
            arcs.push(parse_two::<usize>(l).ok_or_else(|| Error::format(ln, "expected `tail head`"))?);
        }
        let orientation = Orientation::from_arcs(&graph, arcs)?;

        expect_label(next("values:")?, "values:")?;
        let mut values = Vec::with_capacity(m);
        for _ in 0..m {
            let (ln, l) = next("values")?;
            let v: Vec<f64> = l
                .split_whitespace()
                .map(|x| x.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::format(ln, "malformed number"))?;
            if v.len() != d {
                return Err(Error::format(ln, format!("expected {d} values, found {}", v.len())));
            }
            values.push(v);
        }
        expect_label(next("provenance:")?, "provenance:")?;
        let mut provenance = lines[pos..].join("\n");
        if provenance.ends_with('\n') {
            provenance.pop();
        }
        let flow = VectorFlow {
            d,
            orientation,
            values,
            support: vec![true; m],
        };
        Ok(FlowCertificate {
            graph,
            d,
            p,
            claimed_r,
            flow,
            provenance,
        })
    }
}

fn expect_label((ln, line): (usize, &str), label: &str) -> Result<()> {
    if line.trim() == label {
        Ok(())
    } else {
        Err(Error::format(ln, format!("missing section {label}")))
    }
}

fn field<'a>(ln: usize, line: &'a str, label: &str) -> Result<&'a str> {
    line.strip_prefix(label)
        .map(str::trim)
        .ok_or_else(|| Error::format(ln, format!("missing section {label}")))
}

fn parse_two<T: std::str::FromStr>(line: &str) -> Option<(T, T)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}
