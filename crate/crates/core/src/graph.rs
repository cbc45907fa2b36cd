//! Edge-indexed multigraphs, orientations, spanning trees and fundamental
//! cycles.
//!
//! Vertices are dense `0..n` indices. Edges carry stable indices `0..m` in
//! insertion order, so every orientation and flow in the crate refers to an
//! edge by index rather than by its endpoint pair (parallel edges make the
//! pair ambiguous).

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, ParseErrorKind, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// A finite loopless multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<(EdgeId, VertexId)>>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::InvalidParameter(format!(
                        "edge {i}: vertex {v} out of range for {n} vertices"
                    )));
                }
            }
            if a == b {
                return Err(Error::InvalidParameter(format!("edge {i} is a loop at {a}")));
            }
            adj[a].push((i, b));
            adj[b].push((i, a));
        }
        Ok(MultiGraph { n, edges, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// Incident `(edge, other endpoint)` pairs, ordered by edge index.
    pub fn incident(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// Component label for every vertex, labels assigned in order of the
    /// lowest vertex of each component.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(_, w) in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().1
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// The spanning subgraph on the same vertex set keeping only `edges`,
    /// in the given order. Edge `i` of the result is `edges[i]` of `self`.
    pub fn edge_subgraph(&self, edges: &[EdgeId]) -> MultiGraph {
        let list = edges.iter().map(|&e| self.edges[e]).collect();
        MultiGraph::new(self.n, list).expect("subgraph of a valid graph is valid")
    }

    /// Serializes in the graph file format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{} {}", self.n, self.edges.len()).unwrap();
        for &(a, b) in &self.edges {
            writeln!(s, "{a} {b}").unwrap();
        }
        s
    }
}

/// Parses the graph file format: a header line `n m` followed by `m` lines
/// `u v`. Blank lines and lines starting with `#` are ignored.
pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (x, y) =
            parse_pair(line).ok_or_else(|| Error::parse(line_no, ParseErrorKind::Malformed(line.to_string())))?;
        match header {
            None => header = Some((x, y)),
            Some((n, m)) => {
                if edges.len() == m {
                    return Err(Error::parse(
                        line_no,
                        ParseErrorKind::EdgeCount {
                            expected: m,
                            found: m + 1,
                        },
                    ));
                }
                for v in [x, y] {
                    if v >= n {
                        return Err(Error::parse(line_no, ParseErrorKind::VertexOutOfRange { vertex: v, n }));
                    }
                }
                if x == y {
                    return Err(Error::parse(line_no, ParseErrorKind::Loop(x)));
                }
                edges.push((x, y));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| Error::parse(last_line.max(1), ParseErrorKind::MissingHeader))?;
    if edges.len() != m {
        return Err(Error::parse(
            last_line.max(1),
            ParseErrorKind::EdgeCount {
                expected: m,
                found: edges.len(),
            },
        ));
    }
    MultiGraph::new(n, edges)
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

/// A direction on every edge: `arcs[e] = (tail, head)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    arcs: Vec<(VertexId, VertexId)>,
}

impl Orientation {
    /// The reference orientation: every edge points `endpoint_a -> endpoint_b`.
    pub fn reference(g: &MultiGraph) -> Self {
        Orientation {
            arcs: g.edges().to_vec(),
        }
    }

    pub fn from_arcs(g: &MultiGraph, arcs: Vec<(VertexId, VertexId)>) -> Result<Self> {
        if arcs.len() != g.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: g.edge_count(),
                found: arcs.len(),
            });
        }
        for (e, &(t, h)) in arcs.iter().enumerate() {
            let (a, b) = g.endpoints(e);
            if !((t, h) == (a, b) || (t, h) == (b, a)) {
                return Err(Error::InvalidParameter(format!(
                    "arc {t}->{h} does not match edge {e} = {{{a},{b}}}"
                )));
            }
        }
        Ok(Orientation { arcs })
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    pub fn tail(&self, e: EdgeId) -> VertexId {
        self.arcs[e].0
    }

    pub fn head(&self, e: EdgeId) -> VertexId {
        self.arcs[e].1
    }

    /// +1 if edge `e` points like the reference orientation of `g`, -1 otherwise.
    pub fn sign(&self, g: &MultiGraph, e: EdgeId) -> i64 {
        if self.arcs[e].0 == g.endpoints(e).0 {
            1
        } else {
            -1
        }
    }

    pub fn reverse(&mut self, e: EdgeId) {
        let (t, h) = self.arcs[e];
        self.arcs[e] = (h, t);
    }

    pub(crate) fn set(&mut self, e: EdgeId, arc: (VertexId, VertexId)) {
        self.arcs[e] = arc;
    }
}

/// Spanning forest plus the signed fundamental cycle of every cotree edge.
///
/// Row `c` describes the fundamental cycle of `cotree_edges[c]`, traversed
/// along that edge in its reference direction. Entry `+1` means the cycle
/// uses the edge in reference direction, `-1` against it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBasis {
    pub tree_edges: Vec<EdgeId>,
    pub cotree_edges: Vec<EdgeId>,
    pub rows: Vec<Vec<i8>>,
    pub components: usize,
}

impl CycleBasis {
    pub fn cycle_len(&self, c: usize) -> usize {
        self.rows[c].iter().filter(|&&s| s != 0).count()
    }
}

/// BFS spanning forest (roots are the lowest vertex of each component,
/// neighbours scanned by increasing edge index) and its fundamental cycles.
pub fn spanning_structure(g: &MultiGraph) -> CycleBasis {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut parent: Vec<Option<(EdgeId, VertexId)>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut in_tree = vec![false; m];
    let mut components = 0;
    for root in 0..n {
        if seen[root] {
            continue;
        }
        components += 1;
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(e, w) in g.incident(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((e, v));
                    depth[w] = depth[v] + 1;
                    in_tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    let tree_edges: Vec<EdgeId> = (0..m).filter(|&e| in_tree[e]).collect();
    let cotree_edges: Vec<EdgeId> = (0..m).filter(|&e| !in_tree[e]).collect();
    let mut rows = Vec::with_capacity(cotree_edges.len());
    for &c in &cotree_edges {
        let mut row = vec![0i8; m];
        let (a, b) = g.endpoints(c);
        row[c] = 1;
        // close the cycle with the tree path b -> a
        let (mut u, mut v) = (b, a);
        let mut descent = Vec::new();
        while u != v {
            if depth[u] >= depth[v] {
                let (e, pu) = parent[u].expect("non-root has a parent");
                // traversed u -> pu
                row[e] += if g.endpoints(e).0 == u { 1 } else { -1 };
                u = pu;
            } else {
                let (e, pv) = parent[v].expect("non-root has a parent");
                descent.push((e, pv));
                v = pv;
            }
        }
        for (e, from) in descent.into_iter().rev() {
            // traversed from -> child
            row[e] += if g.endpoints(e).0 == from { 1 } else { -1 };
        }
        rows.push(row);
    }
    CycleBasis {
        tree_edges,
        cotree_edges,
        rows,
        components,
    }
}

/// All cut edges, sorted by index.
pub fn bridges(g: &MultiGraph) -> Vec<EdgeId> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, edge used to enter it, next incident position)
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        while let Some(&mut (v, via, ref mut pos)) = stack.last_mut() {
            if let Some(&(e, w)) = g.incident(v).get(*pos) {
                *pos += 1;
                if Some(e) == via {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, Some(e), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let (Some(e), Some(&(p, _, _))) = (via, stack.last()) {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        out.push(e);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Default number of 4-class set partitions `contract_check_k4` will scan.
pub const DEFAULT_PARTITION_BUDGET: u128 = 10_000_000;

/// Whether `g` can be turned into a graph containing `K4` by identifying
/// vertices and deleting loops, i.e. whether some partition of the vertices
/// into four nonempty classes has an edge between every pair of classes.
pub fn contract_check_k4(g: &MultiGraph) -> Result<bool> {
    contract_check_k4_with_budget(g, DEFAULT_PARTITION_BUDGET)
}

pub fn contract_check_k4_with_budget(g: &MultiGraph, budget: u128) -> Result<bool> {
    let n = g.vertex_count();
    if n < 4 {
        return Ok(false);
    }
    let partitions = stirling2(n, 4);
    if partitions > budget {
        return Err(Error::InstanceTooLarge(format!(
            "{partitions} partitions of {n} vertices exceed the budget of {budget}"
        )));
    }
    let mut class = vec![usize::MAX; n];
    Ok(k4_partition_search(g, &mut class, 0, 0))
}

fn stirling2(n: usize, k: usize) -> u128 {
    let mut s = vec![vec![0u128; k + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for j in 1..=k.min(i) {
            s[i][j] = j as u128 * s[i - 1][j] + s[i - 1][j - 1];
        }
    }
    s[n][k]
}

// Restricted-growth enumeration: vertex v joins an existing class or opens
// the next one.
fn k4_partition_search(g: &MultiGraph, class: &mut [usize], v: usize, used: usize) -> bool {
    let n = class.len();
    if n - v < 4 - used {
        return false;
    }
    if !pairs_still_reachable(g, class) {
        return false;
    }
    if v == n {
        return used == 4;
    }
    for c in 0..(used + 1).min(4) {
        class[v] = c;
        if k4_partition_search(g, class, v + 1, used.max(c + 1)) {
            return true;
        }
    }
    class[v] = usize::MAX;
    false
}

fn pairs_still_reachable(g: &MultiGraph, class: &[usize]) -> bool {
    // bit (i*4+j) set once classes i<j are adjacent; a free endpoint can
    // still connect anything
    let mut have = [[false; 4]; 4];
    let mut open = false;
    for &(a, b) in g.edges() {
        let (ca, cb) = (class[a], class[b]);
        if ca == usize::MAX || cb == usize::MAX {
            open = true;
            continue;
        }
        if ca != cb {
            have[ca][cb] = true;
            have[cb][ca] = true;
        }
    }
    if open {
        return true;
    }
    (0..4).all(|i| (i + 1..4).all(|j| have[i][j]))
}
