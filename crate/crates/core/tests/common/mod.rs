#![allow(dead_code)]

use std::collections::BTreeSet;

use flowdex::MultiGraph;

pub type EdgeList = Vec<(usize, usize)>;

/// Color refinement followed by a search over orderings that respect the
/// final colors. Exact, and cheap for the tiny graphs used here.
fn canonical(n: usize, edges: &[(usize, usize)]) -> EdgeList {
    let mut adj = vec![vec![0usize; n]; n];
    for &(a, b) in edges {
        adj[a][b] += 1;
        adj[b][a] += 1;
    }
    let mut color: Vec<usize> = (0..n).map(|v| adj[v].iter().sum()).collect();
    loop {
        let sigs: Vec<(usize, Vec<(usize, usize)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, usize)> = (0..n)
                    .filter(|&u| adj[v][u] > 0)
                    .map(|u| (color[u], adj[v][u]))
                    .collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let distinct: BTreeSet<_> = sigs.iter().cloned().collect();
        let ranked: Vec<_> = distinct.into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|s| ranked.binary_search(s).unwrap()).collect();
        let before = color.iter().collect::<BTreeSet<_>>().len();
        let after = next.iter().collect::<BTreeSet<_>>().len();
        color = next;
        if after == before {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| color[v]);
    let mut best: Option<EdgeList> = None;
    permute_within(&order, &color, 0, &mut order.clone(), &mut |perm| {
        let mut pos = vec![0; n];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        let mut e: EdgeList = edges
            .iter()
            .map(|&(a, b)| (pos[a].min(pos[b]), pos[a].max(pos[b])))
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
    });
    best.unwrap()
}

fn permute_within(base: &[usize], color: &[usize], start: usize, cur: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    if start == base.len() {
        visit(cur);
        return;
    }
    let end = (start..base.len())
        .find(|&i| color[base[i]] != color[base[start]])
        .unwrap_or(base.len());
    heap_permutations(&mut cur[start..end].to_vec(), end - start, &mut |block| {
        let mut next = cur.to_vec();
        next[start..end].copy_from_slice(block);
        permute_within(base, color, end, &mut next, visit);
    });
}

fn heap_permutations(a: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        visit(a);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(a, k - 1, visit);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permutations(a, k - 1, visit);
}

/// All connected loopless multigraphs with `1..=max_edges` edges, up to
/// isomorphism, as `(n, edges)`. Each graph with `m` edges arises from one
/// with `m - 1` edges by adding a parallel/new edge or a pendant vertex.
pub fn connected_multigraphs(max_edges: usize) -> Vec<(usize, EdgeList)> {
    let mut all = Vec::new();
    let mut level: BTreeSet<(usize, EdgeList)> = BTreeSet::new();
    level.insert((2, vec![(0, 1)]));
    for _ in 1..max_edges {
        let mut next = BTreeSet::new();
        for (n, edges) in &level {
            let n = *n;
            for a in 0..n {
                for b in a + 1..n {
                    let mut e = edges.clone();
                    e.push((a, b));
                    next.insert((n, canonical(n, &e)));
                }
                let mut e = edges.clone();
                e.push((a, n));
                next.insert((n + 1, canonical(n + 1, &e)));
            }
        }
        all.extend(level);
        level = next;
    }
    all.extend(level);
    all
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> MultiGraph {
    MultiGraph::new(n, edges.to_vec()).unwrap()
}

/// Exhaustive search for a nowhere-zero `Z_k` flow on the reference
/// orientation. Existence is equivalent to that of an integer `k`-flow.
pub fn has_zk_flow(n: usize, edges: &[(usize, usize)], k: i64) -> bool {
    let m = edges.len();
    let mut vals = vec![1i64; m];
    loop {
        let mut net = vec![0i64; n];
        for (&(a, b), &v) in edges.iter().zip(&vals) {
            net[a] += v;
            net[b] -= v;
        }
        if net.iter().all(|x| x.rem_euclid(k) == 0) {
            return true;
        }
        let mut i = 0;
        while i < m && vals[i] == k - 1 {
            vals[i] = 1;
            i += 1;
        }
        if i == m {
            return false;
        }
        vals[i] += 1;
    }
}

/// Exhaustive search over integer values `±1..=±(k-1)`.
pub fn has_int_flow(n: usize, edges: &[(usize, usize)], k: i64) -> bool {
    let choices: Vec<i64> = (1..k).flat_map(|v| [v, -v]).collect();
    let m = edges.len();
    let mut idx = vec![0usize; m];
    loop {
        let mut net = vec![0i64; n];
        for (&(a, b), &i) in edges.iter().zip(&idx) {
            net[a] += choices[i];
            net[b] -= choices[i];
        }
        if net.iter().all(|&x| x == 0) {
            return true;
        }
        let mut i = 0;
        while i < m && idx[i] == choices.len() - 1 {
            idx[i] = 0;
            i += 1;
        }
        if i == m {
            return false;
        }
        idx[i] += 1;
    }
}
