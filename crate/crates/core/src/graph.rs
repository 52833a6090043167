//! Simple undirected graphs with girth-constrained editing.
//!
//! A pair `{u, v}` is *legal* for girth `g` when it is not an edge and
//! `dist(u, v) >= g - 1`; inserting it closes no cycle shorter than `g`.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Girth threshold used everywhere unless a caller asks otherwise.
pub const DEFAULT_GIRTH: usize = 5;

/// Largest supported order.
pub const MAX_ORDER: usize = 4096;

/// Unordered vertex pair, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexPair {
    u: usize,
    v: usize,
}

impl VertexPair {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Self { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Self { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(Error::SelfLoop(a)),
        }
    }

    /// Caller guarantees `u < v`.
    pub(crate) fn ordered(u: usize, v: usize) -> Self {
        debug_assert!(u < v);
        Self { u, v }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }
}

impl fmt::Display for VertexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

/// Simple undirected graph on vertices `0..n` with sorted neighbor lists.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph of order `n`.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::Capacity {
                order: n,
                max: MAX_ORDER,
            });
        }
        Ok(Self {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        })
    }

    /// Builds a simple graph from an edge list. No girth check is made.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (a, b) in edges {
            g.check_vertex(a)?;
            g.check_vertex(b)?;
            let p = VertexPair::new(a, b)?;
            if g.contains(p.u, p.v) {
                return Err(Error::DuplicateEdge { u: p.u, v: p.v });
            }
            g.insert_unchecked(p);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Self::from_edges(10, outer.chain(spokes).chain(inner)).expect("static edge list")
    }

    /// The Hoffman–Singleton graph, built from five pentagons and five
    /// pentagrams (Robertson's construction).
    pub fn hoffman_singleton() -> Self {
        // Vertex (kind, i, j): kind 0 = pentagon P_i, kind 1 = pentagram Q_i.
        let id = |kind: usize, i: usize, j: usize| kind * 25 + i * 5 + j;
        let mut edges = Vec::with_capacity(175);
        for h in 0..5 {
            for j in 0..5 {
                edges.push((id(0, h, j), id(0, h, (j + 1) % 5)));
                edges.push((id(1, h, j), id(1, h, (j + 2) % 5)));
            }
        }
        for h in 0..5 {
            for i in 0..5 {
                for j in 0..5 {
                    edges.push((id(0, h, j), id(1, i, (h * i + j) % 5)));
                }
            }
        }
        Self::from_edges(50, edges).expect("static edge list")
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.iter().map(Vec::len)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> Result<bool> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        Ok(self.contains(a, b))
    }

    pub(crate) fn contains(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges in ascending pair order.
    pub fn edges(&self) -> impl Iterator<Item = VertexPair> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let start = nbrs.partition_point(|&w| w <= u);
            nbrs[start..]
                .iter()
                .map(move |&w| VertexPair::ordered(u, w))
        })
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    /// True iff some path of length at most `d` joins `u` and `v`.
    pub fn distance_at_most(&self, u: usize, v: usize, d: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.within(u, v, d))
    }

    fn within(&self, u: usize, v: usize, d: usize) -> bool {
        if u == v {
            return true;
        }
        if d == 0 {
            return false;
        }
        // expand from the endpoint with the smaller neighborhood
        let (src, dst) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        if self.contains(src, dst) {
            return true;
        }
        let mut frontier = vec![src];
        let mut seen = vec![src];
        for _ in 1..d {
            let mut next = Vec::new();
            for &x in &frontier {
                for &y in &self.adjacency[x] {
                    if seen.contains(&y) {
                        continue;
                    }
                    if self.contains(y, dst) {
                        return true;
                    }
                    seen.push(y);
                    next.push(y);
                }
            }
            if next.is_empty() {
                return false;
            }
            frontier = next;
        }
        false
    }

    /// Legality of `{u, v}` for girth [`DEFAULT_GIRTH`].
    pub fn is_legal_edge(&self, u: usize, v: usize) -> Result<bool> {
        self.is_legal_edge_for_girth(u, v, DEFAULT_GIRTH)
    }

    pub fn is_legal_edge_for_girth(&self, u: usize, v: usize, girth: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(u != v && !self.within(u, v, girth.saturating_sub(2)))
    }

    /// All legal pairs for girth [`DEFAULT_GIRTH`], ascending.
    pub fn legal_edges(&self) -> Vec<VertexPair> {
        self.legal_edges_for_girth(DEFAULT_GIRTH)
    }

    pub fn legal_edges_for_girth(&self, girth: usize) -> Vec<VertexPair> {
        let radius = girth.saturating_sub(2);
        let n = self.order();
        let mut out = Vec::new();
        let mut dist = vec![usize::MAX; n];
        for u in 0..n {
            self.bounded_bfs(u, radius, &mut dist);
            out.extend(
                (u + 1..n)
                    .filter(|&v| dist[v] == usize::MAX)
                    .map(|v| VertexPair::ordered(u, v)),
            );
        }
        out
    }

    /// Fills `dist` with BFS distances from `src`, leaving `usize::MAX` past `radius`.
    fn bounded_bfs(&self, src: usize, radius: usize, dist: &mut [usize]) {
        dist.fill(usize::MAX);
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            if dist[x] == radius {
                continue;
            }
            for &y in &self.adjacency[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }

    /// Legal pairs attaining the largest degree sum. Ties are all returned, ascending.
    pub fn max_degree_sum_legal_edges(&self) -> Result<Vec<VertexPair>> {
        let legal = self.legal_edges();
        let best = legal
            .iter()
            .map(|p| self.degree(p.u) + self.degree(p.v))
            .max()
            .ok_or(Error::NoLegalEdge)?;
        Ok(legal
            .into_iter()
            .filter(|p| self.degree(p.u) + self.degree(p.v) == best)
            .collect())
    }

    /// Adds a legal edge (girth [`DEFAULT_GIRTH`]).
    pub fn add_edge(&mut self, p: VertexPair) -> Result<()> {
        self.add_edge_for_girth(p, DEFAULT_GIRTH)
    }

    pub fn add_edge_for_girth(&mut self, p: VertexPair, girth: usize) -> Result<()> {
        self.check_vertex(p.v)?;
        if self.contains(p.u, p.v) {
            return Err(Error::DuplicateEdge { u: p.u, v: p.v });
        }
        if !self.is_legal_edge_for_girth(p.u, p.v, girth)? {
            return Err(Error::IllegalEdge {
                u: p.u,
                v: p.v,
                girth,
            });
        }
        self.insert_unchecked(p);
        Ok(())
    }

    pub fn remove_edge(&mut self, p: VertexPair) -> Result<()> {
        self.check_vertex(p.v)?;
        if !self.contains(p.u, p.v) {
            return Err(Error::MissingEdge { u: p.u, v: p.v });
        }
        self.remove_unchecked(p);
        Ok(())
    }

    pub(crate) fn insert_unchecked(&mut self, p: VertexPair) {
        for (a, b) in [(p.u, p.v), (p.v, p.u)] {
            let list = &mut self.adjacency[a];
            let at = list.partition_point(|&w| w < b);
            list.insert(at, b);
        }
        self.edge_count += 1;
    }

    pub(crate) fn remove_unchecked(&mut self, p: VertexPair) {
        for (a, b) in [(p.u, p.v), (p.v, p.u)] {
            let list = &mut self.adjacency[a];
            let at = list.binary_search(&b).expect("edge present");
            list.remove(at);
        }
        self.edge_count -= 1;
    }

    /// Length of a shortest cycle, or `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        self.shortest_cycle_below(usize::MAX)
    }

    /// True iff no cycle is shorter than `threshold`.
    pub fn girth_at_least(&self, threshold: usize) -> bool {
        self.shortest_cycle_below(threshold).is_none()
    }

    /// Shortest cycle length when it is below `limit`.
    fn shortest_cycle_below(&self, limit: usize) -> Option<usize> {
        let n = self.order();
        let mut best = limit;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            dist.fill(usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            'bfs: while let Some(x) = queue.pop_front() {
                // any cycle found deeper than this cannot beat `best`
                if 2 * dist[x] >= best {
                    break;
                }
                for &y in &self.adjacency[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        if len < best {
                            best = len;
                        }
                        if 2 * dist[x] >= best {
                            break 'bfs;
                        }
                    }
                }
            }
        }
        (best < limit).then_some(best)
    }

    /// Copy with one extra isolated vertex, numbered `n`.
    pub fn with_isolated_vertex(&self) -> Result<Graph> {
        if self.order() + 1 > MAX_ORDER {
            return Err(Error::Capacity {
                order: self.order() + 1,
                max: MAX_ORDER,
            });
        }
        let mut g = self.clone();
        g.adjacency.push(Vec::new());
        Ok(g)
    }

    /// Copy with `v` removed; ids above `v` shift down by one.
    pub fn without_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let shift = |w: usize| if w > v { w - 1 } else { w };
        let adjacency = self
            .adjacency
            .iter()
            .enumerate()
            .filter(|&(x, _)| x != v)
            .map(|(_, nbrs)| {
                nbrs.iter()
                    .filter(|&&w| w != v)
                    .map(|&w| shift(w))
                    .collect()
            })
            .collect();
        Ok(Graph {
            adjacency,
            edge_count: self.edge_count - self.degree(v),
        })
    }

    /// Image of the graph under `perm`, where vertex `x` becomes `perm[x]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.order();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Usage("relabeling is not a permutation".into()));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (x, nbrs) in self.adjacency.iter().enumerate() {
            let mut mapped: Vec<usize> = nbrs.iter().map(|&w| perm[w]).collect();
            mapped.sort_unstable();
            adjacency[perm[x]] = mapped;
        }
        Ok(Graph {
            adjacency,
            edge_count: self.edge_count,
        })
    }
}
