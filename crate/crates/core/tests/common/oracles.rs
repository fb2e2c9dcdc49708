//! Brute-force reference computations, written against a plain
//! `(n, edge list)` representation so they share no code with the library.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

/// Undirected simple graph on nodes `0..n`.
#[derive(Debug, Clone)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl EdgeList {
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v, w) in &self.edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        adj
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn weight_matrix(&self) -> Vec<Vec<f64>> {
        let mut a = vec![vec![0.0; self.n]; self.n];
        for &(u, v, w) in &self.edges {
            a[u][v] += w;
            a[v][u] += w;
        }
        a
    }
}

/// Every simple path from `s` to `t`, as node sequences.
fn simple_paths(adj: &[Vec<(usize, f64)>], s: usize, t: usize) -> Vec<(Vec<usize>, f64, usize)> {
    fn dfs(
        adj: &[Vec<(usize, f64)>],
        t: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        length: f64,
        out: &mut Vec<(Vec<usize>, f64, usize)>,
    ) {
        let v = *path.last().unwrap();
        if v == t {
            out.push((path.clone(), length, path.len() - 1));
            return;
        }
        for &(u, w) in &adj[v] {
            if !on_path[u] {
                on_path[u] = true;
                path.push(u);
                dfs(adj, t, path, on_path, length + 1.0 / w, out);
                path.pop();
                on_path[u] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; adj.len()];
    on_path[s] = true;
    dfs(adj, t, &mut vec![s], &mut on_path, 0.0, &mut out);
    out
}

/// Betweenness by explicit enumeration of all shortest paths between every
/// unordered pair. `weighted` uses path length `sum 1 / w`, otherwise hop count.
pub fn brute_force_betweenness(g: &EdgeList, weighted: bool) -> Vec<f64> {
    let adj = g.adjacency();
    let mut scores = vec![0.0; g.n];
    for s in 0..g.n {
        for t in s + 1..g.n {
            let paths = simple_paths(&adj, s, t);
            if paths.is_empty() {
                continue;
            }
            let len = |p: &(Vec<usize>, f64, usize)| if weighted { p.1 } else { p.2 as f64 };
            let best = paths.iter().map(len).fold(f64::INFINITY, f64::min);
            let shortest: Vec<&Vec<usize>> = paths
                .iter()
                .filter(|p| (len(p) - best).abs() <= 1e-9 * best.max(1.0))
                .map(|p| &p.0)
                .collect();
            let total = shortest.len() as f64;
            for u in 0..g.n {
                if u == s || u == t {
                    continue;
                }
                let through = shortest.iter().filter(|p| p.contains(&u)).count() as f64;
                scores[u] += through / total;
            }
        }
    }
    scores
}

/// Modularity as the double sum over ordered node pairs:
/// `Q = 1/(2m) sum_ij [A_ij - gamma k_i k_j / 2m] delta(c_i, c_j)`.
pub fn pairwise_modularity(g: &EdgeList, membership: &[usize], gamma: f64) -> f64 {
    let a = g.weight_matrix();
    let k: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    let mut q = 0.0;
    for i in 0..g.n {
        for j in 0..g.n {
            if membership[i] == membership[j] {
                q += a[i][j] - gamma * k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

/// All set partitions of `0..n` as restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for c in 0..=max + 1 {
            prefix.push(c);
            extend(prefix, max.max(c), n, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    extend(&mut vec![0], 0, n, &mut out);
    out
}

/// Highest-modularity partition by exhaustive search (first one found on ties).
pub fn best_partition(g: &EdgeList, gamma: f64) -> (Vec<usize>, f64) {
    let mut best = (Vec::new(), f64::NEG_INFINITY);
    for p in all_partitions(g.n) {
        let q = pairwise_modularity(g, &p, gamma);
        if q > best.1 + 1e-12 {
            best = (p, q);
        }
    }
    best
}

/// Canonical form of a membership vector: communities as sorted node sets.
pub fn blocks(membership: &[usize]) -> Vec<Vec<usize>> {
    let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in membership.iter().enumerate() {
        map.entry(c).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = map.into_values().collect();
    out.sort();
    out
}

/// Two triangles `{0,1,2}` and `{3,4,5}` joined by the bridge `2-3`.
pub fn two_triangles() -> EdgeList {
    EdgeList {
        n: 6,
        edges: vec![
            (0, 1, 1.0),
            (1, 2, 1.0),
            (0, 2, 1.0),
            (3, 4, 1.0),
            (4, 5, 1.0),
            (3, 5, 1.0),
            (2, 3, 1.0),
        ],
    }
}
