//! Integer and group-valued nowhere-zero flows by cotree enumeration.
//!
//! A flow is determined by its values on the cotree edges of a spanning
//! forest: every tree edge carries the signed sum of the cotree values whose
//! fundamental cycles pass through it. The search enumerates cotree values
//! and checks each tree edge as soon as all cycles through it are assigned,
//! which makes it complete for the value set.

use crate::error::{Error, Result};
use crate::graph::{spanning_structure, CycleBasis, EdgeId, MultiGraph, Orientation};
use crate::report::Report;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Environment variable overriding the default node budget.
pub const BUDGET_ENV: &str = "FLOWDEX_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub node_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl SearchOptions {
    pub fn from_env() -> Self {
        let node_budget = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_NODE_BUDGET);
        SearchOptions { node_budget }
    }
}

/// An integer (or `Z_k`) valued flow. `modulus == None` means integer valued.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFlow {
    pub orientation: Orientation,
    pub values: Vec<i64>,
    pub modulus: Option<u64>,
}

impl IntFlow {
    pub fn max_abs(&self) -> i64 {
        self.values.iter().map(|v| v.abs()).max().unwrap_or(0)
    }
}

/// A flow valued in `Z_{k1} x ... x Z_{kt}`, all edges in reference orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGroupFlow {
    pub orientation: Orientation,
    pub moduli: Vec<u64>,
    pub values: Vec<Vec<u64>>,
}

impl ProductGroupFlow {
    /// Edges where component `i` is nonzero.
    pub fn support(&self, i: usize) -> Vec<EdgeId> {
        (0..self.values.len()).filter(|&e| self.values[e][i] != 0).collect()
    }

    /// Component `i` as a `Z_{k_i}` flow.
    pub fn component(&self, i: usize) -> IntFlow {
        IntFlow {
            orientation: self.orientation.clone(),
            values: self.values.iter().map(|v| v[i] as i64).collect(),
            modulus: Some(self.moduli[i]),
        }
    }
}

#[derive(Debug, Clone)]
enum ValueGroup {
    Integer { k: i64 },
    Product { moduli: Vec<i64> },
}

impl ValueGroup {
    /// Cotree candidates: integers by |v| then sign; product tuples
    /// lexicographically, zero excluded.
    fn candidates(&self) -> Vec<Vec<i64>> {
        match self {
            ValueGroup::Integer { k } => (1..*k).flat_map(|v| [vec![v], vec![-v]]).collect(),
            ValueGroup::Product { moduli } => {
                let mut out = vec![vec![]];
                for &q in moduli {
                    out = out
                        .into_iter()
                        .flat_map(|prefix: Vec<i64>| {
                            (0..q).map(move |x| {
                                let mut p = prefix.clone();
                                p.push(x);
                                p
                            })
                        })
                        .collect();
                }
                out.retain(|t| t.iter().any(|&x| x != 0));
                out
            }
        }
    }

    fn width(&self) -> usize {
        match self {
            ValueGroup::Integer { .. } => 1,
            ValueGroup::Product { moduli } => moduli.len(),
        }
    }

    fn reduce(&self, v: &mut [i64]) {
        if let ValueGroup::Product { moduli } = self {
            for (x, &q) in v.iter_mut().zip(moduli) {
                *x = x.rem_euclid(q);
            }
        }
    }

    fn admissible(&self, v: &[i64]) -> bool {
        match self {
            ValueGroup::Integer { k } => {
                let a = v[0].abs();
                a >= 1 && a < *k
            }
            ValueGroup::Product { .. } => v.iter().any(|&x| x != 0),
        }
    }
}

struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Search restricted to one connected component.
struct ComponentSearch<'a> {
    group: &'a ValueGroup,
    candidates: &'a [Vec<i64>],
    /// cotree row indices in search order
    order: Vec<usize>,
    /// tree edges checked right after assigning position `i`
    checks: Vec<Vec<(EdgeId, Vec<(usize, i8)>)>>,
    assigned: Vec<usize>,
}

impl ComponentSearch<'_> {
    fn run(&mut self, budget: &mut Budget) -> Result<bool> {
        self.assigned = vec![0; self.order.len()];
        self.descend(0, budget)
    }

    fn descend(&mut self, pos: usize, budget: &mut Budget) -> Result<bool> {
        if pos == self.order.len() {
            return Ok(true);
        }
        let width = self.group.width();
        let mut value = vec![0i64; width];
        'cand: for ci in 0..self.candidates.len() {
            budget.tick()?;
            self.assigned[pos] = ci;
            for (_, terms) in &self.checks[pos] {
                value.iter_mut().for_each(|x| *x = 0);
                for &(p, s) in terms {
                    let x = &self.candidates[self.assigned[p]];
                    for j in 0..width {
                        value[j] += s as i64 * x[j];
                    }
                }
                self.group.reduce(&mut value);
                if !self.group.admissible(&value) {
                    continue 'cand;
                }
            }
            if self.descend(pos + 1, budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Runs the cotree search on every component. Returns per-edge values in the
/// reference orientation, or `None` if some component has no flow.
fn cotree_search(
    g: &MultiGraph,
    basis: &CycleBasis,
    group: &ValueGroup,
    opts: &SearchOptions,
) -> Result<Option<Vec<Vec<i64>>>> {
    let (label, ncomp) = g.component_labels();
    let candidates = group.candidates();
    let mut budget = Budget {
        limit: opts.node_budget,
        used: 0,
    };
    let m = g.edge_count();
    let mut values = vec![vec![0i64; group.width()]; m];

    // rows touching each edge
    let mut touching: Vec<Vec<(usize, i8)>> = vec![Vec::new(); m];
    for (c, row) in basis.rows.iter().enumerate() {
        for (e, &s) in row.iter().enumerate() {
            if s != 0 {
                touching[e].push((c, s));
            }
        }
    }
    let is_cotree: Vec<bool> = {
        let mut v = vec![false; m];
        basis.cotree_edges.iter().for_each(|&e| v[e] = true);
        v
    };

    for comp in 0..ncomp {
        let mut order: Vec<usize> = (0..basis.cotree_edges.len())
            .filter(|&c| label[g.endpoints(basis.cotree_edges[c]).0] == comp)
            .collect();
        // fail-first: longest fundamental cycles first
        order.sort_by_key(|&c| std::cmp::Reverse(basis.cycle_len(c)));
        let mut pos_of = vec![usize::MAX; basis.cotree_edges.len()];
        for (p, &c) in order.iter().enumerate() {
            pos_of[c] = p;
        }
        let mut checks = vec![Vec::new(); order.len()];
        for &e in &basis.tree_edges {
            if label[g.endpoints(e).0] != comp {
                continue;
            }
            if touching[e].is_empty() {
                // bridge: forced to zero
                return Ok(None);
            }
            let terms: Vec<(usize, i8)> = touching[e].iter().map(|&(c, s)| (pos_of[c], s)).collect();
            let ready = terms.iter().map(|t| t.0).max().unwrap();
            checks[ready].push((e, terms));
        }
        let mut search = ComponentSearch {
            group,
            candidates: &candidates,
            order,
            checks,
            assigned: Vec::new(),
        };
        if !search.run(&mut budget)? {
            return Ok(None);
        }
        for (p, &c) in search.order.iter().enumerate() {
            values[basis.cotree_edges[c]] = candidates[search.assigned[p]].clone();
        }
        for e in 0..m {
            if is_cotree[e] || label[g.endpoints(e).0] != comp {
                continue;
            }
            let mut v = vec![0i64; group.width()];
            for &(c, s) in &touching[e] {
                let x = &candidates[search.assigned[pos_of[c]]];
                for j in 0..v.len() {
                    v[j] += s as i64 * x[j];
                }
            }
            group.reduce(&mut v);
            values[e] = v;
        }
    }
    Ok(Some(values))
}

/// Searches for a nowhere-zero `k`-flow (integer values `1 <= |f| <= k-1`).
pub fn find_int_nzf(g: &MultiGraph, k: u32) -> Result<Option<IntFlow>> {
    find_int_nzf_with(g, k, &SearchOptions::default())
}

pub fn find_int_nzf_with(g: &MultiGraph, k: u32, opts: &SearchOptions) -> Result<Option<IntFlow>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k} must be at least 2")));
    }
    let basis = spanning_structure(g);
    let group = ValueGroup::Integer { k: k as i64 };
    Ok(cotree_search(g, &basis, &group, opts)?.map(|vals| IntFlow {
        orientation: Orientation::reference(g),
        values: vals.into_iter().map(|v| v[0]).collect(),
        modulus: None,
    }))
}

/// Searches for a jointly nowhere-zero flow in `Z_{k1} x ... x Z_{kt}`.
pub fn find_product_flow(g: &MultiGraph, moduli: &[u64]) -> Result<Option<ProductGroupFlow>> {
    find_product_flow_with(g, moduli, &SearchOptions::default())
}

pub fn find_product_flow_with(
    g: &MultiGraph,
    moduli: &[u64],
    opts: &SearchOptions,
) -> Result<Option<ProductGroupFlow>> {
    if moduli.is_empty() || moduli.iter().any(|&q| q < 2) {
        return Err(Error::InvalidParameter(format!(
            "moduli {moduli:?} must be nonempty and each at least 2"
        )));
    }
    let basis = spanning_structure(g);
    let group = ValueGroup::Product {
        moduli: moduli.iter().map(|&q| q as i64).collect(),
    };
    Ok(cotree_search(g, &basis, &group, opts)?.map(|vals| ProductGroupFlow {
        orientation: Orientation::reference(g),
        moduli: moduli.to_vec(),
        values: vals
            .into_iter()
            .map(|v| v.into_iter().map(|x| x as u64).collect())
            .collect(),
    }))
}

/// Covering of `E(G)` by a subgraph with a 3-flow and an even subgraph.
#[derive(Debug, Clone)]
pub struct SixFlowDecomposition {
    /// support of the `Z3` component
    pub g1_edges: Vec<EdgeId>,
    /// support of the `Z2` component; every vertex has even degree in it
    pub g2_edges: Vec<EdgeId>,
    /// `G1` as a spanning subgraph; edge `i` is `g1_edges[i]`
    pub g1: MultiGraph,
    /// a nowhere-zero 3-flow on `g1`
    pub g1_flow: IntFlow,
    pub product: ProductGroupFlow,
}

pub fn six_flow_decomposition(g: &MultiGraph) -> Result<SixFlowDecomposition> {
    six_flow_decomposition_with(g, &SearchOptions::default())
}

pub fn six_flow_decomposition_with(g: &MultiGraph, opts: &SearchOptions) -> Result<SixFlowDecomposition> {
    let product = find_product_flow_with(g, &[2, 3], opts)?
        .ok_or_else(|| Error::NotFound("Z2 x Z3 nowhere-zero flow (graph has a bridge)".into()))?;
    let g2_edges = product.support(0);
    let g1_edges = product.support(1);
    let g1 = g.edge_subgraph(&g1_edges);
    let g1_flow = find_int_nzf_with(&g1, 3, opts)?
        .ok_or_else(|| Error::Internal("support of a nowhere-zero Z3 flow has no 3-flow".into()))?;
    Ok(SixFlowDecomposition {
        g1_edges,
        g2_edges,
        g1,
        g1_flow,
        product,
    })
}

/// Reverses every negatively valued edge so all values become positive.
pub fn normalize_positive(flow: &IntFlow) -> Result<IntFlow> {
    if flow.modulus.is_some() {
        return Err(Error::InvalidParameter(
            "only integer-valued flows can be made positive".into(),
        ));
    }
    let mut out = flow.clone();
    for (e, v) in out.values.iter_mut().enumerate() {
        if *v == 0 {
            return Err(Error::ZeroValue(e));
        }
        if *v < 0 {
            *v = -*v;
            out.orientation.reverse(e);
        }
    }
    Ok(out)
}

/// Checks conservation, nowhere-zero and `|f| <= k-1` (integer flows), or
/// conservation and nonzero residues modulo the flow's modulus.
pub fn verify_int_flow(g: &MultiGraph, flow: &IntFlow, k: u32) -> Report {
    let mut report = Report::default();
    let m = g.edge_count();
    if flow.values.len() != m || flow.orientation.len() != m {
        report.push(format!(
            "flow has {} values / {} arcs for {m} edges",
            flow.values.len(),
            flow.orientation.len()
        ));
        return report;
    }
    if let Err(e) = Orientation::from_arcs(g, flow.orientation.arcs().to_vec()) {
        report.push(format!("orientation does not match graph: {e}"));
        return report;
    }
    let mut balance = vec![0i64; g.vertex_count()];
    for (e, &v) in flow.values.iter().enumerate() {
        balance[flow.orientation.tail(e)] += v;
        balance[flow.orientation.head(e)] -= v;
        match flow.modulus {
            None => {
                if v == 0 {
                    report.push(format!("zero value at edge {e}"));
                } else if v.unsigned_abs() > (k as u64).saturating_sub(1) {
                    report.push(format!("value {v} at edge {e} exceeds k-1 = {}", k - 1));
                }
            }
            Some(q) => {
                if v.rem_euclid(q as i64) == 0 {
                    report.push(format!("zero value at edge {e} (mod {q})"));
                }
            }
        }
    }
    for (v, &b) in balance.iter().enumerate() {
        let bad = match flow.modulus {
            None => b != 0,
            Some(q) => b.rem_euclid(q as i64) != 0,
        };
        if bad {
            report.push(format!("conservation violated at vertex {v} (net {b})"));
        }
    }
    report
}

/// Componentwise conservation modulo each `k_i` and joint nowhere-zero.
pub fn verify_product_flow(g: &MultiGraph, flow: &ProductGroupFlow) -> Report {
    let mut report = Report::default();
    if flow.values.len() != g.edge_count() {
        report.push("value count does not match edge count");
        return report;
    }
    for (i, &q) in flow.moduli.iter().enumerate() {
        let mut balance = vec![0i64; g.vertex_count()];
        for (e, v) in flow.values.iter().enumerate() {
            balance[flow.orientation.tail(e)] += v[i] as i64;
            balance[flow.orientation.head(e)] -= v[i] as i64;
        }
        for (v, &b) in balance.iter().enumerate() {
            if b.rem_euclid(q as i64) != 0 {
                report.push(format!("component {i}: conservation violated at vertex {v}"));
            }
        }
    }
    for (e, v) in flow.values.iter().enumerate() {
        if v.iter().zip(&flow.moduli).all(|(&x, &q)| x % q == 0) {
            report.push(format!("zero value at edge {e}"));
        }
    }
    report
}
