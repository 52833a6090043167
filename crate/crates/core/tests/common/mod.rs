#![allow(dead_code)]

use girth_search::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Pairs `(u, v)`, `u < v`, in the order used for bitmask enumeration.
pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for v in 1..n {
        for u in 0..v {
            out.push((u, v));
        }
    }
    out
}

pub fn from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &p)| p);
    Graph::from_edges(n, edges).unwrap()
}

pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    let mut m = vec![vec![false; n]; n];
    for p in g.edges() {
        m[p.u()][p.v()] = true;
        m[p.v()][p.u()] = true;
    }
    m
}

/// Shortest cycle length by enumerating simple cycles from their smallest vertex.
pub fn naive_girth(g: &Graph) -> Option<usize> {
    let adj = adjacency_matrix(g);
    let n = g.order();
    let mut best: Option<usize> = None;
    fn walk(
        adj: &[Vec<bool>],
        start: usize,
        at: usize,
        len: usize,
        on_path: &mut Vec<bool>,
        best: &mut Option<usize>,
    ) {
        for next in 0..adj.len() {
            if !adj[at][next] {
                continue;
            }
            if next == start && len >= 3 {
                *best = Some(best.map_or(len, |b| b.min(len)));
            } else if next > start && !on_path[next] {
                on_path[next] = true;
                walk(adj, start, next, len + 1, on_path, best);
                on_path[next] = false;
            }
        }
    }
    for s in 0..n {
        let mut on_path = vec![false; n];
        on_path[s] = true;
        walk(&adj, s, s, 1, &mut on_path, &mut best);
    }
    best
}

/// Plain BFS distances from `src`; `usize::MAX` when unreachable.
pub fn bfs_distances(g: &Graph, src: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.order()];
    dist[src] = 0;
    let mut queue = std::collections::VecDeque::from([src]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Free of triangles and 4-cycles, checked on the adjacency matrix.
pub fn no_c3_c4(g: &Graph) -> bool {
    let adj = adjacency_matrix(g);
    let n = g.order();
    for a in 0..n {
        for b in a + 1..n {
            let common = (0..n).filter(|&c| adj[a][c] && adj[b][c]).count();
            if common >= 2 || (adj[a][b] && common >= 1) {
                return false;
            }
        }
    }
    true
}

pub fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let edges: Vec<_> = all_pairs(n)
        .into_iter()
        .filter(|_| rng.gen_bool(density))
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Random edge-maximal graph of girth at least five.
pub fn random_maximal_girth5(rng: &mut impl Rng, n: usize) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    loop {
        let legal = g.legal_edges();
        let Some(&p) = legal.choose(rng) else {
            return g;
        };
        g.add_edge(p).unwrap();
    }
}
