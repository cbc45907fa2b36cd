//! Directed even subgraphs, the positive 3-flow decomposition into two
//! directed cycles, and oriented k-cycle 2l-covers.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::intflow::{find_product_flow_with, verify_int_flow, IntFlow, SearchOptions};
use crate::report::Report;

/// A set of arcs, each edge used at most once, with in-degree equal to
/// out-degree at every vertex. `forward` means the arc runs from the edge's
/// first endpoint to its second.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DirectedEvenSubgraph {
    arcs: Vec<(EdgeId, bool)>,
}

impl DirectedEvenSubgraph {
    pub fn new(g: &MultiGraph, mut arcs: Vec<(EdgeId, bool)>) -> Result<Self> {
        arcs.sort_unstable();
        if let Some(w) = arcs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidParameter(format!("edge {} used twice", w[0].0)));
        }
        if let Some(&(e, _)) = arcs.iter().find(|a| a.0 >= g.edge_count()) {
            return Err(Error::InvalidParameter(format!("edge {e} out of range")));
        }
        let s = DirectedEvenSubgraph { arcs };
        if let Some(v) = s.unbalanced_vertex(g) {
            return Err(Error::InvalidParameter(format!(
                "vertex {v} has unequal in- and out-degree"
            )));
        }
        Ok(s)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn arcs(&self) -> &[(EdgeId, bool)] {
        &self.arcs
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        self.arcs.iter().map(|a| a.0).collect()
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Direction of `e` in this subgraph, if present.
    pub fn direction(&self, e: EdgeId) -> Option<bool> {
        self.arcs.binary_search_by_key(&e, |a| a.0).ok().map(|i| self.arcs[i].1)
    }

    /// `(tail, head)` of every arc.
    pub fn directed_arcs(&self, g: &MultiGraph) -> Vec<(EdgeId, VertexId, VertexId)> {
        self.arcs
            .iter()
            .map(|&(e, fwd)| {
                let (a, b) = g.endpoints(e);
                if fwd {
                    (e, a, b)
                } else {
                    (e, b, a)
                }
            })
            .collect()
    }

    fn unbalanced_vertex(&self, g: &MultiGraph) -> Option<VertexId> {
        let mut net = vec![0i64; g.vertex_count()];
        for (_, t, h) in self.directed_arcs(g) {
            net[t] += 1;
            net[h] -= 1;
        }
        net.iter().position(|&x| x != 0)
    }

    pub fn is_balanced(&self, g: &MultiGraph) -> bool {
        self.unbalanced_vertex(g).is_none()
    }
}

/// Orients an even-degree edge set as a union of edge-disjoint closed
/// trails, each traversed consistently.
pub fn orient_even_subgraph(g: &MultiGraph, edges: &[EdgeId]) -> Result<DirectedEvenSubgraph> {
    let m = g.edge_count();
    let mut member = vec![false; m];
    for &e in edges {
        if e >= m {
            return Err(Error::InvalidParameter(format!("edge {e} out of range")));
        }
        member[e] = true;
    }
    let mut deg = vec![0usize; g.vertex_count()];
    for e in (0..m).filter(|&e| member[e]) {
        let (a, b) = g.endpoints(e);
        deg[a] += 1;
        deg[b] += 1;
    }
    if let Some(v) = deg.iter().position(|d| d % 2 == 1) {
        return Err(Error::OddDegree(v));
    }
    let mut used = vec![false; m];
    let mut next = vec![0usize; g.vertex_count()];
    let mut arcs = Vec::with_capacity(edges.len());
    for start in 0..m {
        if !member[start] || used[start] {
            continue;
        }
        let (a, b) = g.endpoints(start);
        used[start] = true;
        arcs.push((start, true));
        let mut at = b;
        // even degrees: the walk can only get stuck back at `a`
        while at != a || has_unused(g, a, &member, &used, &mut next) {
            let Some((e, w)) = take_unused(g, at, &member, &mut used, &mut next) else {
                return Err(Error::Internal("closed-trail walk got stuck".into()));
            };
            arcs.push((e, g.endpoints(e).0 == at));
            at = w;
        }
    }
    DirectedEvenSubgraph::new(g, arcs)
}

fn has_unused(g: &MultiGraph, v: VertexId, member: &[bool], used: &[bool], next: &mut [usize]) -> bool {
    let inc = g.incident(v);
    while next[v] < inc.len() && (!member[inc[next[v]].0] || used[inc[next[v]].0]) {
        next[v] += 1;
    }
    next[v] < inc.len()
}

fn take_unused(
    g: &MultiGraph,
    v: VertexId,
    member: &[bool],
    used: &mut [bool],
    next: &mut [usize],
) -> Option<(EdgeId, VertexId)> {
    if !has_unused(g, v, member, used, next) {
        return None;
    }
    let (e, w) = g.incident(v)[next[v]];
    used[e] = true;
    Some((e, w))
}

/// Splits a positive flow with values in `{1, 2}` into two directed even
/// subgraphs `C1`, `C2` that follow the flow's orientation, with each edge in
/// exactly `f(e)` of them.
pub fn lty_decompose_3(g: &MultiGraph, flow: &IntFlow) -> Result<(DirectedEvenSubgraph, DirectedEvenSubgraph)> {
    lty_decompose_3_with(g, flow, &SearchOptions::default())
}

pub fn lty_decompose_3_with(
    g: &MultiGraph,
    flow: &IntFlow,
    opts: &SearchOptions,
) -> Result<(DirectedEvenSubgraph, DirectedEvenSubgraph)> {
    if flow.values.iter().any(|&v| v != 1 && v != 2) {
        return Err(Error::InvalidParameter("flow values must lie in {1, 2}".into()));
    }
    let check = verify_int_flow(g, flow, 3);
    if !check.is_ok() {
        return Err(Error::InvalidParameter(format!("not a 3-flow: {check}")));
    }
    let m = g.edge_count();
    let n = g.vertex_count();
    let mut x = vec![false; m];
    let mut net = vec![0i64; n];
    let mut remaining = vec![0usize; n];
    let mut free = Vec::new();
    for e in 0..m {
        let (t, h) = (flow.orientation.tail(e), flow.orientation.head(e));
        if flow.values[e] == 2 {
            x[e] = true;
            net[t] += 1;
            net[h] -= 1;
        } else {
            free.push(e);
            remaining[t] += 1;
            remaining[h] += 1;
        }
    }
    let mut nodes = 0u64;
    let found = assign_binary(
        flow,
        &free,
        0,
        &mut x,
        &mut net,
        &mut remaining,
        &mut nodes,
        opts.node_budget,
    )?;
    if !found {
        return Err(Error::Internal(
            "positive 3-flow admits no decomposition into two directed cycles".into(),
        ));
    }
    let dir = |e: EdgeId| flow.orientation.tail(e) == g.endpoints(e).0;
    let c1 = (0..m).filter(|&e| x[e]).map(|e| (e, dir(e))).collect();
    let c2 = (0..m)
        .filter(|&e| flow.values[e] - x[e] as i64 == 1)
        .map(|e| (e, dir(e)))
        .collect();
    Ok((DirectedEvenSubgraph::new(g, c1)?, DirectedEvenSubgraph::new(g, c2)?))
}

#[allow(clippy::too_many_arguments)]
fn assign_binary(
    flow: &IntFlow,
    free: &[EdgeId],
    i: usize,
    x: &mut [bool],
    net: &mut [i64],
    remaining: &mut [usize],
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    if i == free.len() {
        return Ok(net.iter().all(|&b| b == 0));
    }
    let e = free[i];
    let (t, h) = (flow.orientation.tail(e), flow.orientation.head(e));
    remaining[t] -= 1;
    remaining[h] -= 1;
    for take in [true, false] {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let d = take as i64;
        net[t] += d;
        net[h] -= d;
        x[e] = take;
        let feasible = [t, h].iter().all(|&v| net[v].unsigned_abs() as usize <= remaining[v]);
        if feasible && assign_binary(flow, free, i + 1, x, net, remaining, nodes, budget)? {
            return Ok(true);
        }
        net[t] -= d;
        net[h] += d;
        x[e] = false;
    }
    remaining[t] += 1;
    remaining[h] += 1;
    Ok(false)
}

/// Two even subgraphs covering every edge, read off a nowhere-zero
/// `Z2 x Z2` flow.
pub fn cycles_from_4nzf(g: &MultiGraph) -> Result<(Vec<EdgeId>, Vec<EdgeId>)> {
    cycles_from_4nzf_with(g, &SearchOptions::default())
}

pub fn cycles_from_4nzf_with(g: &MultiGraph, opts: &SearchOptions) -> Result<(Vec<EdgeId>, Vec<EdgeId>)> {
    let f = find_product_flow_with(g, &[2, 2], opts)?.ok_or_else(|| Error::NotFound("nowhere-zero 4-flow".into()))?;
    Ok((f.support(0), f.support(1)))
}

/// `k` directed even subgraphs covering every edge exactly `l` times in
/// each direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedCycleCover {
    pub k: usize,
    pub l: usize,
    pub cycles: Vec<DirectedEvenSubgraph>,
}

impl OrientedCycleCover {
    /// Cycles using `e` along / against its reference direction.
    pub fn split(&self, e: EdgeId) -> (Vec<usize>, Vec<usize>) {
        let mut fwd = Vec::new();
        let mut bwd = Vec::new();
        for (i, c) in self.cycles.iter().enumerate() {
            match c.direction(e) {
                Some(true) => fwd.push(i),
                Some(false) => bwd.push(i),
                None => {}
            }
        }
        (fwd, bwd)
    }

    /// Text form: a header, then one block per cycle listing `edge dir`
    /// lines with `dir` either `+` (reference direction) or `-`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "flowdex-occ v1").unwrap();
        writeln!(s, "k: {}", self.k).unwrap();
        writeln!(s, "l: {}", self.l).unwrap();
        for (i, c) in self.cycles.iter().enumerate() {
            writeln!(s, "cycle {i}: {}", c.len()).unwrap();
            for &(e, fwd) in c.arcs() {
                writeln!(s, "{e} {}", if fwd { '+' } else { '-' }).unwrap();
            }
        }
        s
    }

    pub fn from_text(g: &MultiGraph, text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let mut expect = |what: &str| -> Result<(usize, &str)> {
            lines.next().ok_or_else(|| Error::format(0, format!("missing {what}")))
        };
        let (ln, head) = expect("header")?;
        if head != "flowdex-occ v1" {
            return Err(Error::format(ln, "expected \"flowdex-occ v1\""));
        }
        let k = field(expect("k")?, "k:")?;
        let l = field(expect("l")?, "l:")?;
        let mut cycles = Vec::with_capacity(k);
        for i in 0..k {
            let (ln, h) = expect("cycle block")?;
            let count = h
                .strip_prefix(&format!("cycle {i}:"))
                .and_then(|r| r.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::format(ln, format!("expected \"cycle {i}: <count>\"")))?;
            let mut arcs = Vec::with_capacity(count);
            for _ in 0..count {
                let (ln, a) = expect("arc line")?;
                let mut it = a.split_whitespace();
                let e = it.next().and_then(|x| x.parse::<usize>().ok());
                let d = match it.next() {
                    Some("+") => Some(true),
                    Some("-") => Some(false),
                    _ => None,
                };
                match (e, d, it.next()) {
                    (Some(e), Some(d), None) => arcs.push((e, d)),
                    _ => return Err(Error::format(ln, "expected \"<edge> +|-\"")),
                }
            }
            cycles.push(DirectedEvenSubgraph::new(g, arcs).map_err(|e| Error::format(ln, e.to_string()))?);
        }
        Ok(OrientedCycleCover { k, l, cycles })
    }
}

fn field((ln, line): (usize, &str), key: &str) -> Result<usize> {
    line.strip_prefix(key)
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| Error::format(ln, format!("expected \"{key} <integer>\"")))
}

/// Backtracking search for a `(k, 2l)`-OCC. Each edge picks disjoint
/// `l`-sets of cycles using it forwards and backwards; per-cycle vertex
/// balance is propagated incrementally. Cycle labels are introduced in
/// first-use order, which removes the `k!` relabelling symmetry.
pub fn find_occ(g: &MultiGraph, k: usize, l: usize) -> Result<Option<OrientedCycleCover>> {
    find_occ_with(g, k, l, &SearchOptions::default())
}

pub fn find_occ_with(g: &MultiGraph, k: usize, l: usize, opts: &SearchOptions) -> Result<Option<OrientedCycleCover>> {
    if l == 0 || k < 2 * l || k > 31 {
        return Err(Error::InvalidParameter(format!(
            "need l >= 1 and 2l <= k <= 31 (k = {k}, l = {l})"
        )));
    }
    let options = split_options(k, l);
    let order = edge_order(g);
    let n = g.vertex_count();
    let mut remaining: Vec<i32> = (0..n).map(|v| g.degree(v) as i32).collect();
    let mut state = OccState {
        g,
        k,
        order: &order,
        options: &options,
        net: vec![0; k * n],
        remaining: &mut remaining,
        choice: vec![0; g.edge_count()],
        nodes: 0,
        budget: opts.node_budget,
    };
    if !state.descend(0, 0)? {
        return Ok(None);
    }
    let choice = state.choice;
    let mut cycles = vec![Vec::new(); k];
    for (e, &c) in choice.iter().enumerate() {
        let (fwd, bwd) = options[c];
        for (i, cyc) in cycles.iter_mut().enumerate() {
            if fwd >> i & 1 == 1 {
                cyc.push((e, true));
            } else if bwd >> i & 1 == 1 {
                cyc.push((e, false));
            }
        }
    }
    let cycles = cycles
        .into_iter()
        .map(|arcs| DirectedEvenSubgraph::new(g, arcs))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(OrientedCycleCover { k, l, cycles }))
}

/// All (forward mask, backward mask) pairs of disjoint `l`-subsets of `0..k`.
fn split_options(k: usize, l: usize) -> Vec<(u32, u32)> {
    let subsets: Vec<u32> = (0u32..1 << k).filter(|s| s.count_ones() as usize == l).collect();
    let mut out = Vec::new();
    for &a in &subsets {
        for &b in &subsets {
            if a & b == 0 {
                out.push((a, b));
            }
        }
    }
    out
}

/// Edges in BFS discovery order so that vertices are completed early.
fn edge_order(g: &MultiGraph) -> Vec<EdgeId> {
    let mut seen_v = vec![false; g.vertex_count()];
    let mut seen_e = vec![false; g.edge_count()];
    let mut order = Vec::with_capacity(g.edge_count());
    for root in 0..g.vertex_count() {
        if seen_v[root] {
            continue;
        }
        seen_v[root] = true;
        let mut q = VecDeque::from([root]);
        while let Some(v) = q.pop_front() {
            for &(e, w) in g.incident(v) {
                if !seen_e[e] {
                    seen_e[e] = true;
                    order.push(e);
                }
                if !seen_v[w] {
                    seen_v[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    order
}

struct OccState<'a> {
    g: &'a MultiGraph,
    k: usize,
    order: &'a [EdgeId],
    options: &'a [(u32, u32)],
    /// net[i * n + v]: out minus in of cycle i at v
    net: Vec<i32>,
    remaining: &'a mut Vec<i32>,
    choice: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl OccState<'_> {
    fn descend(&mut self, pos: usize, used: usize) -> Result<bool> {
        if pos == self.order.len() {
            return Ok(true);
        }
        let e = self.order[pos];
        let (a, b) = self.g.endpoints(e);
        let n = self.g.vertex_count();
        self.remaining[a] -= 1;
        self.remaining[b] -= 1;
        for (ci, &(fwd, bwd)) in self.options.iter().enumerate() {
            let Some(next_used) = canonical_extension(fwd, bwd, used) else {
                continue;
            };
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            self.apply(fwd, bwd, a, b, 1);
            let ok = (0..self.k).all(|i| [a, b].iter().all(|&v| self.net[i * n + v].abs() <= self.remaining[v]));
            if ok {
                self.choice[e] = ci;
                if self.descend(pos + 1, next_used)? {
                    return Ok(true);
                }
            }
            self.apply(fwd, bwd, a, b, -1);
        }
        self.remaining[a] += 1;
        self.remaining[b] += 1;
        Ok(false)
    }

    fn apply(&mut self, fwd: u32, bwd: u32, a: VertexId, b: VertexId, sign: i32) {
        let n = self.g.vertex_count();
        for i in 0..self.k {
            let d = if fwd >> i & 1 == 1 {
                1
            } else if bwd >> i & 1 == 1 {
                -1
            } else {
                continue;
            };
            self.net[i * n + a] += sign * d;
            self.net[i * n + b] -= sign * d;
        }
    }
}

/// Labels `>= used` must be fresh and consecutive, forward ones first.
/// Returns the new count of used labels.
fn canonical_extension(fwd: u32, bwd: u32, used: usize) -> Option<usize> {
    let fresh_f = fwd >> used;
    let fresh_b = bwd >> used;
    let nf = fresh_f.count_ones();
    let nb = fresh_b.count_ones();
    let want_f = (1u32 << nf) - 1;
    let want_b = ((1u32 << nb) - 1) << nf;
    (fresh_f == want_f && fresh_b == want_b).then_some(used + (nf + nb) as usize)
}

/// Checks cycle count, per-cycle balance, and exact `l`-per-direction coverage.
pub fn verify_occ(g: &MultiGraph, occ: &OrientedCycleCover) -> Report {
    let mut report = Report::default();
    if occ.cycles.len() != occ.k {
        report.push(format!("expected {} cycles, found {}", occ.k, occ.cycles.len()));
    }
    for (i, c) in occ.cycles.iter().enumerate() {
        if c.arcs().iter().any(|a| a.0 >= g.edge_count()) {
            report.push(format!("cycle {i} references a missing edge"));
            return report;
        }
        if let Some(v) = c.unbalanced_vertex(g) {
            report.push(format!("cycle {i} is unbalanced at vertex {v}"));
        }
    }
    for e in 0..g.edge_count() {
        let (fwd, bwd) = occ.split(e);
        if fwd.len() != occ.l || bwd.len() != occ.l {
            report.push(format!(
                "edge {e} covered {} times forward and {} times backward (want {} each)",
                fwd.len(),
                bwd.len(),
                occ.l
            ));
        }
    }
    report
}
