use crate::cycles::DirectedEvenSubgraph;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, Orientation};
use crate::intflow::IntFlow;
use crate::vector::norm::{pnorm, PNorm};

/// An orientation plus an `R^d` value on every edge of the support.
/// Edges outside the support carry the zero vector and the reference
/// direction.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFlow {
    pub d: usize,
    pub orientation: Orientation,
    pub values: Vec<Vec<f64>>,
    pub support: Vec<bool>,
}

impl VectorFlow {
    pub fn zero(g: &MultiGraph, d: usize) -> Self {
        VectorFlow {
            d,
            orientation: Orientation::reference(g),
            values: vec![vec![0.0; d]; g.edge_count()],
            support: vec![false; g.edge_count()],
        }
    }

    /// Total flow from explicit arcs and values.
    pub fn new(g: &MultiGraph, orientation: Orientation, values: Vec<Vec<f64>>) -> Result<Self> {
        if values.len() != g.edge_count() || orientation.len() != g.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: g.edge_count(),
                found: values.len(),
            });
        }
        let d = values.first().map_or(0, |v| v.len());
        if let Some(v) = values.iter().find(|v| v.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.len(),
            });
        }
        Ok(VectorFlow {
            d,
            orientation,
            support: vec![true; values.len()],
            values,
        })
    }

    /// The constant flow `value` around a directed even subgraph.
    pub fn on_cycle(g: &MultiGraph, cycle: &DirectedEvenSubgraph, value: &[f64]) -> Self {
        let mut f = VectorFlow::zero(g, value.len());
        for (e, t, h) in cycle.directed_arcs(g) {
            f.orientation.set(e, (t, h));
            f.values[e] = value.to_vec();
            f.support[e] = true;
        }
        f
    }

    /// An integer flow viewed as a one-dimensional vector flow.
    pub fn from_int_flow(g: &MultiGraph, flow: &IntFlow) -> Result<Self> {
        let values = flow.values.iter().map(|&v| vec![v as f64]).collect();
        VectorFlow::new(g, flow.orientation.clone(), values)
    }

    /// Re-indexes a flow on the spanning subgraph `sub_edges` of `g`.
    pub fn lift(g: &MultiGraph, sub_edges: &[EdgeId], sub: &VectorFlow) -> Self {
        let mut f = VectorFlow::zero(g, sub.d);
        for (i, &e) in sub_edges.iter().enumerate() {
            f.orientation.set(e, sub.orientation.arcs()[i]);
            f.values[e] = sub.values[i].clone();
            f.support[e] = sub.support[i];
        }
        f
    }

    pub fn is_total(&self) -> bool {
        self.support.iter().all(|&s| s)
    }

    /// Per-vertex, per-coordinate net outflow.
    pub fn residuals(&self, g: &MultiGraph) -> Vec<Vec<f64>> {
        let mut r = vec![vec![0.0; self.d]; g.vertex_count()];
        for (e, val) in self.values.iter().enumerate() {
            let (t, h) = self.orientation.arcs()[e];
            for j in 0..self.d {
                r[t][j] += val[j];
                r[h][j] -= val[j];
            }
        }
        r
    }

    pub fn max_residual(&self, g: &MultiGraph) -> f64 {
        self.residuals(g).iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_coordinate(&self) -> f64 {
        self.values.iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Residual relative to `max(1, largest coordinate)`.
    pub fn relative_residual(&self, g: &MultiGraph) -> f64 {
        self.max_residual(g) / self.max_coordinate().max(1.0)
    }

    pub fn norms(&self, p: PNorm) -> Vec<f64> {
        self.values.iter().map(|v| pnorm(v, p)).collect()
    }

    pub fn scale(&mut self, c: f64) {
        self.values.iter_mut().flatten().for_each(|x| *x *= c);
    }
}

/// Combines flows on two edge sets. Shared edges keep the first flow's
/// direction and carry `f1 + f2` when the directions agree, `f1 - f2`
/// otherwise.
pub fn compose_flows(g: &MultiGraph, f1: &VectorFlow, f2: &VectorFlow) -> Result<VectorFlow> {
    if f1.d != f2.d {
        return Err(Error::DimensionMismatch {
            expected: f1.d,
            found: f2.d,
        });
    }
    let m = g.edge_count();
    if f1.values.len() != m || f2.values.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: f1.values.len().min(f2.values.len()),
        });
    }
    let mut out = VectorFlow::zero(g, f1.d);
    for e in 0..m {
        match (f1.support[e], f2.support[e]) {
            (false, false) => {}
            (true, false) => {
                out.orientation.set(e, f1.orientation.arcs()[e]);
                out.values[e] = f1.values[e].clone();
            }
            (false, true) => {
                out.orientation.set(e, f2.orientation.arcs()[e]);
                out.values[e] = f2.values[e].clone();
            }
            (true, true) => {
                let same = f1.orientation.arcs()[e] == f2.orientation.arcs()[e];
                let s = if same { 1.0 } else { -1.0 };
                out.orientation.set(e, f1.orientation.arcs()[e]);
                out.values[e] = f1.values[e].iter().zip(&f2.values[e]).map(|(a, b)| a + s * b).collect();
            }
        }
        out.support[e] = f1.support[e] || f2.support[e];
    }
    Ok(out)
}
