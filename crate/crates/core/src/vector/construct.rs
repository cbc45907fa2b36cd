use crate::cycles::{
    cycles_from_4nzf_with, find_occ_with, lty_decompose_3_with, orient_even_subgraph, verify_occ, DirectedEvenSubgraph,
    OrientedCycleCover,
};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, Orientation};
use crate::intflow::{find_int_nzf_with, normalize_positive, six_flow_decomposition_with, SearchOptions};
use crate::vector::flow::VectorFlow;
use crate::vector::omega::{instantiate_omega, OmegaSet};

/// A flow whose value on each edge is a row of an [`OmegaSet`], still in
/// terms of the formal vectors `P1, ..., Pt`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicFlow {
    pub omega: OmegaSet,
    pub orientation: Orientation,
    /// index into `omega.rows()` for every edge
    pub rows: Vec<usize>,
}

impl SymbolicFlow {
    /// Builds a symbolic flow from per-edge coefficient vectors taken with
    /// respect to the reference orientation. Edges whose coefficients match
    /// the negative of a row are reversed.
    pub fn from_coefficients(g: &MultiGraph, omega: OmegaSet, coeffs: &[Vec<i32>]) -> Result<Self> {
        let mut orientation = Orientation::reference(g);
        let mut rows = Vec::with_capacity(coeffs.len());
        for (e, c) in coeffs.iter().enumerate() {
            let neg: Vec<i32> = c.iter().map(|x| -x).collect();
            if let Some(i) = omega.rows().iter().position(|r| r == c) {
                rows.push(i);
            } else if let Some(i) = omega.rows().iter().position(|r| *r == neg) {
                orientation.reverse(e);
                rows.push(i);
            } else {
                return Err(Error::Internal(format!(
                    "edge {e} has coefficients {c:?} outside the vector set"
                )));
            }
        }
        Ok(SymbolicFlow {
            omega,
            orientation,
            rows,
        })
    }

    /// Substitutes concrete vectors for `P1, ..., Pt`.
    pub fn instantiate(&self, g: &MultiGraph, assignment: &[Vec<f64>]) -> Result<VectorFlow> {
        let table = instantiate_omega(&self.omega, assignment)?;
        let values = self.rows.iter().map(|&i| table[i].clone()).collect();
        VectorFlow::new(g, self.orientation.clone(), values)
    }
}

fn add_cycle(coeffs: &mut [Vec<i32>], slot: usize, cycle: &DirectedEvenSubgraph) {
    for &(e, forward) in cycle.arcs() {
        coeffs[e][slot] += if forward { 1 } else { -1 };
    }
}

fn map_cycle(
    g: &MultiGraph,
    sub: &MultiGraph,
    sub_edges: &[EdgeId],
    c: &DirectedEvenSubgraph,
) -> Result<DirectedEvenSubgraph> {
    let arcs = c
        .arcs()
        .iter()
        .map(|&(i, fwd)| {
            let e = sub_edges[i];
            // edge_subgraph keeps endpoint order, so directions carry over
            debug_assert_eq!(sub.endpoints(i), g.endpoints(e));
            (e, fwd)
        })
        .collect();
    DirectedEvenSubgraph::new(g, arcs)
}

/// A flow with values in `{P1, P2, P1+P2}` from a nowhere-zero 3-flow.
pub fn omega_flow_from_3nzf(g: &MultiGraph, opts: &SearchOptions) -> Result<SymbolicFlow> {
    let f = find_int_nzf_with(g, 3, opts)?.ok_or_else(|| Error::NotFound("nowhere-zero 3-flow".into()))?;
    let pos = normalize_positive(&f)?;
    let (c1, c2) = lty_decompose_3_with(g, &pos, opts)?;
    let mut coeffs = vec![vec![0; 2]; g.edge_count()];
    add_cycle(&mut coeffs, 0, &c1);
    add_cycle(&mut coeffs, 1, &c2);
    SymbolicFlow::from_coefficients(g, OmegaSet::three_flow(), &coeffs)
}

/// A flow with values in `{P1, P2, P1+P2, P1-P2}` from a nowhere-zero 4-flow.
pub fn omega_flow_from_4nzf(g: &MultiGraph, opts: &SearchOptions) -> Result<SymbolicFlow> {
    let (e1, e2) = cycles_from_4nzf_with(g, opts)?;
    let c1 = orient_even_subgraph(g, &e1)?;
    let c2 = orient_even_subgraph(g, &e2)?;
    let mut coeffs = vec![vec![0; 2]; g.edge_count()];
    add_cycle(&mut coeffs, 0, &c1);
    add_cycle(&mut coeffs, 1, &c2);
    SymbolicFlow::from_coefficients(g, OmegaSet::four_flow(), &coeffs)
}

/// A flow with values in the ten-element set built from `P1, P2, P3`:
/// a 3-flow on `G1` split into two directed cycles carrying `P1` and `P2`,
/// plus the even subgraph `G2` carrying `P3`.
pub fn six_flow_omega(g: &MultiGraph, opts: &SearchOptions) -> Result<SymbolicFlow> {
    let dec = six_flow_decomposition_with(g, opts)?;
    let pos = normalize_positive(&dec.g1_flow)?;
    let (s1, s2) = lty_decompose_3_with(&dec.g1, &pos, opts)?;
    let c1 = map_cycle(g, &dec.g1, &dec.g1_edges, &s1)?;
    let c2 = map_cycle(g, &dec.g1, &dec.g1_edges, &s2)?;
    let c3 = orient_even_subgraph(g, &dec.g2_edges)?;
    let mut coeffs = vec![vec![0; 3]; g.edge_count()];
    add_cycle(&mut coeffs, 0, &c1);
    add_cycle(&mut coeffs, 1, &c2);
    add_cycle(&mut coeffs, 2, &c3);
    SymbolicFlow::from_coefficients(g, OmegaSet::six_flow(), &coeffs)
}

/// The flow `sum_{i in I} P_i - sum_{j in J} P_j` of an oriented
/// `(k, l)` cycle cover.
pub fn occ_flow(g: &MultiGraph, occ: &OrientedCycleCover) -> Result<SymbolicFlow> {
    let check = verify_occ(g, occ);
    if !check.is_ok() {
        return Err(Error::InvalidParameter(format!("invalid cycle cover: {check}")));
    }
    let mut coeffs = vec![vec![0; occ.k]; g.edge_count()];
    for (i, c) in occ.cycles.iter().enumerate() {
        add_cycle(&mut coeffs, i, c);
    }
    SymbolicFlow::from_coefficients(g, OmegaSet::occ(occ.k, occ.l), &coeffs)
}

/// Searches for an oriented `(k, l)` cycle cover and returns its flow.
pub fn find_occ_flow(g: &MultiGraph, k: usize, l: usize, opts: &SearchOptions) -> Result<SymbolicFlow> {
    let occ =
        find_occ_with(g, k, l, opts)?.ok_or_else(|| Error::NotFound(format!("oriented ({k}, {l}) cycle cover")))?;
    occ_flow(g, &occ)
}
