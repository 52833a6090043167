//! Canonical labeling by individualization and refinement.
//!
//! The search tree starts from the equitable refinement of the degree
//! partition. Each node individualizes one vertex of the first smallest
//! non-singleton cell and refines again. Every discrete leaf yields a
//! relabeled adjacency bit string; the lexicographically smallest one is the
//! canonical form. Leaves whose strings coincide reveal automorphisms, which
//! prune sibling subtrees lying in one orbit of the pointwise stabilizer of
//! the current prefix.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};
use crate::io::graph6;

/// Isomorphism-invariant key: the graph6 string of the canonically relabeled graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Decodes the key back to the canonical representative.
    pub fn to_graph(&self) -> Graph {
        graph6::decode_graph6(&self.0).expect("canonical keys are valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.0)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let (labeling, raw) = canonical_search(g)?;
    debug_assert_eq!(labeling.len(), g.order());
    Ok(CanonicalForm(graph6::encode_raw(g.order(), &raw)))
}

/// Permutation sending each vertex to its canonical label.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>> {
    canonical_search(g).map(|(labeling, _)| labeling)
}

fn canonical_search(g: &Graph) -> Result<(Vec<usize>, Vec<u8>)> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(Error::Capacity {
            order: n,
            max: MAX_ORDER,
        });
    }
    let mut search = Search::new(g);
    let mut partition = Partition::by_degree(g);
    let all: Vec<usize> = partition.cell_starts().collect();
    partition.refine(g, all);
    search.descend(partition, &mut Vec::new());
    let best = search.best.expect("search visits at least one leaf");
    let mut labeling = vec![0; n];
    for (pos, &v) in best.lab.iter().enumerate() {
        labeling[v] = pos;
    }
    Ok((labeling, best.cert))
}

/// Ordered partition stored nauty-style: `lab` lists vertices, cells are
/// contiguous runs identified by their start position.
#[derive(Clone, Debug)]
struct Partition {
    lab: Vec<usize>,
    /// `cell_end[s]` is one past the last position of the cell starting at `s`.
    cell_end: Vec<usize>,
    /// Start position of the cell containing each vertex.
    cell_of: Vec<usize>,
}

impl Partition {
    fn by_degree(g: &Graph) -> Self {
        let n = g.order();
        let mut lab: Vec<usize> = (0..n).collect();
        lab.sort_by_key(|&v| (g.degree(v), v));
        let mut p = Self {
            lab,
            cell_end: vec![0; n],
            cell_of: vec![0; n],
        };
        let mut start = 0;
        while start < n {
            let d = g.degree(p.lab[start]);
            let mut end = start + 1;
            while end < n && g.degree(p.lab[end]) == d {
                end += 1;
            }
            p.set_cell(start, end);
            start = end;
        }
        p
    }

    fn set_cell(&mut self, start: usize, end: usize) {
        self.cell_end[start] = end;
        for pos in start..end {
            self.cell_of[self.lab[pos]] = start;
        }
    }

    fn cell_starts(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.lab.len();
        let mut s = 0;
        std::iter::from_fn(move || {
            (s < n).then(|| {
                let cur = s;
                s = self.cell_end[s];
                cur
            })
        })
    }

    fn is_discrete(&self) -> bool {
        self.cell_starts().all(|s| self.cell_end[s] == s + 1)
    }

    /// First non-singleton cell of minimum size.
    fn target_cell(&self) -> Option<usize> {
        self.cell_starts()
            .filter(|&s| self.cell_end[s] - s > 1)
            .min_by_key(|&s| (self.cell_end[s] - s, s))
    }

    /// Moves `v` to the front of its cell as a singleton.
    fn individualize(&mut self, v: usize) -> usize {
        let s = self.cell_of[v];
        let end = self.cell_end[s];
        let pos = self.lab[s..end].iter().position(|&x| x == v).unwrap() + s;
        self.lab[s..=pos].rotate_right(1);
        self.set_cell(s, s + 1);
        self.set_cell(s + 1, end);
        s
    }

    /// Equitable refinement driven by a queue of splitter cells.
    fn refine(&mut self, g: &Graph, splitters: Vec<usize>) {
        let n = self.lab.len();
        let mut in_queue = vec![false; n];
        let mut queue = VecDeque::new();
        for s in splitters {
            if !in_queue[s] {
                in_queue[s] = true;
                queue.push_back(s);
            }
        }
        let mut count = vec![0usize; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut fragments = Vec::new();

        while let Some(splitter) = queue.pop_front() {
            in_queue[splitter] = false;
            touched.clear();
            for pos in splitter..self.cell_end[splitter] {
                for &w in g.neighbors(self.lab[pos]) {
                    if count[w] == 0 {
                        touched.push(w);
                    }
                    count[w] += 1;
                }
            }
            let mut cells: Vec<usize> = touched.iter().map(|&w| self.cell_of[w]).collect();
            cells.sort_unstable();
            cells.dedup();

            for start in cells {
                let end = self.cell_end[start];
                if end - start == 1 {
                    continue;
                }
                let first = count[self.lab[start]];
                if self.lab[start..end].iter().all(|&v| count[v] == first) {
                    continue;
                }
                self.lab[start..end].sort_by_key(|&v| count[v]);
                fragments.clear();
                let mut s = start;
                while s < end {
                    let c = count[self.lab[s]];
                    let mut e = s + 1;
                    while e < end && count[self.lab[e]] == c {
                        e += 1;
                    }
                    fragments.push((s, e));
                    s = e;
                }
                for &(s, e) in &fragments {
                    self.set_cell(s, e);
                }
                let largest = fragments
                    .iter()
                    .max_by_key(|&&(s, e)| (e - s, std::cmp::Reverse(s)))
                    .map(|&(s, _)| s)
                    .unwrap();
                let parent_queued = in_queue[start];
                for &(s, _) in &fragments {
                    // the largest piece is implied by the others unless the
                    // parent cell was itself still waiting as a splitter
                    if (parent_queued || s != largest) && !in_queue[s] {
                        in_queue[s] = true;
                        queue.push_back(s);
                    }
                }
            }
            for &w in &touched {
                count[w] = 0;
            }
        }
    }
}

struct Leaf {
    lab: Vec<usize>,
    cert: Vec<u8>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        Self {
            g,
            first: None,
            best: None,
            generators: Vec::new(),
        }
    }

    fn certificate(&self, lab: &[usize]) -> Vec<u8> {
        let n = lab.len();
        let mut pos = vec![0; n];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        let pairs = self.g.edges().map(|p| {
            let (a, b) = (pos[p.u()], pos[p.v()]);
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        });
        graph6::raw_body(n, pairs)
    }

    fn descend(&mut self, partition: Partition, prefix: &mut Vec<usize>) {
        let Some(target) = partition.target_cell() else {
            debug_assert!(partition.is_discrete());
            self.leaf(partition.lab);
            return;
        };
        let mut candidates = partition.lab[target..partition.cell_end[target]].to_vec();
        candidates.sort_unstable();
        for (i, &v) in candidates.iter().enumerate() {
            if i > 0 && self.equivalent_to_smaller(v, &candidates, prefix) {
                continue;
            }
            let mut child = partition.clone();
            let s = child.individualize(v);
            child.refine(self.g, vec![s]);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
        }
    }

    /// True when an automorphism fixing `prefix` maps `v` to a smaller candidate.
    fn equivalent_to_smaller(&self, v: usize, candidates: &[usize], prefix: &[usize]) -> bool {
        let stabilizer: Vec<&Vec<usize>> = self
            .generators
            .iter()
            .filter(|gen| prefix.iter().all(|&x| gen[x] == x))
            .collect();
        if stabilizer.is_empty() {
            return false;
        }
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for gen in stabilizer {
            for (x, &y) in gen.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let root = find(&mut parent, v);
        candidates
            .iter()
            .take_while(|&&c| c < v)
            .any(|&c| find(&mut parent, c) == root)
    }

    fn leaf(&mut self, lab: Vec<usize>) {
        let cert = self.certificate(&lab);
        for reference in [&self.first, &self.best].into_iter().flatten() {
            if reference.cert == cert {
                let mut gen = vec![0; lab.len()];
                for (i, &v) in reference.lab.iter().enumerate() {
                    gen[v] = lab[i];
                }
                if gen.iter().enumerate().any(|(x, &y)| x != y) {
                    self.generators.push(gen);
                }
                return;
            }
        }
        let better = match &self.best {
            None => true,
            Some(best) => cert.cmp(&best.cert) == Ordering::Less,
        };
        if self.first.is_none() {
            self.first = Some(Leaf {
                lab: lab.clone(),
                cert: cert.clone(),
            });
        }
        if better {
            self.best = Some(Leaf { lab, cert });
        }
    }
}

/// Exact isomorphism test by backtracking over color-compatible bijections.
///
/// Colors come from 1-dimensional Weisfeiler-Leman refinement run jointly
/// on both graphs; this path shares no code with [`canonical_form`].
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.order();
    if n != b.order() || a.size() != b.size() {
        return false;
    }
    let mut da: Vec<usize> = a.degrees().collect();
    let mut db: Vec<usize> = b.degrees().collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let (ca, cb) = joint_colors(a, b);
    let mut ha = ca.clone();
    let mut hb = cb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return false;
    }

    // match rarest colors first, then stay connected to mapped vertices
    let mut freq = BTreeMap::new();
    for &c in &ca {
        *freq.entry(c).or_insert(0usize) += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = a.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (links, std::cmp::Reverse(freq[&ca[v]]), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(a, b, &ca, &cb, &order, 0, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Graph,
    b: &Graph,
    ca: &[u32],
    cb: &[u32],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    'candidates: for w in 0..b.order() {
        if used[w] || ca[v] != cb[w] {
            continue;
        }
        let mut mapped_nbrs = 0;
        for &x in a.neighbors(v) {
            if map[x] != usize::MAX {
                if !b.contains(w, map[x]) {
                    continue 'candidates;
                }
                mapped_nbrs += 1;
            }
        }
        let image_nbrs = b.neighbors(w).iter().filter(|&&y| used[y]).count();
        if image_nbrs != mapped_nbrs {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[w] = false;
    }
    false
}

fn joint_colors(a: &Graph, b: &Graph) -> (Vec<u32>, Vec<u32>) {
    let mut ca: Vec<u32> = a.degrees().map(|d| d as u32).collect();
    let mut cb: Vec<u32> = b.degrees().map(|d| d as u32).collect();
    let mut classes = usize::MAX;
    loop {
        let sig = |g: &Graph, c: &[u32], v: usize| {
            let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| c[w]).collect();
            nb.sort_unstable();
            (c[v], nb)
        };
        let sa: Vec<_> = (0..a.order()).map(|v| sig(a, &ca, v)).collect();
        let sb: Vec<_> = (0..b.order()).map(|v| sig(b, &cb, v)).collect();
        let mut ids = BTreeMap::new();
        for s in sa.iter().chain(sb.iter()) {
            let next = ids.len() as u32;
            ids.entry(s.clone()).or_insert(next);
        }
        ca = sa.iter().map(|s| ids[s]).collect();
        cb = sb.iter().map(|s| ids[s]).collect();
        if ids.len() == classes {
            return (ca, cb);
        }
        classes = ids.len();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn shuffled(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(rng);
        g.relabeled(&perm).unwrap()
    }

    #[test]
    fn relabeling_keeps_key() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for g in [
            Graph::petersen(),
            Graph::cycle(5).unwrap(),
            Graph::hoffman_singleton(),
        ] {
            let key = canonical_form(&g).unwrap();
            for _ in 0..5 {
                assert_eq!(canonical_form(&shuffled(&g, &mut rng)).unwrap(), key);
            }
        }
    }

    #[test]
    fn distinguishes_simple_pairs() {
        let c5 = canonical_form(&Graph::cycle(5).unwrap()).unwrap();
        let p5 = canonical_form(&Graph::path(5).unwrap()).unwrap();
        assert_ne!(c5, p5);
        let k2 = Graph::from_edges(4, [(0, 1)]).unwrap();
        let p3 = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        assert_ne!(canonical_form(&k2).unwrap(), canonical_form(&p3).unwrap());
    }

    #[test]
    fn key_decodes_to_isomorphic_graph() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let n = rng.gen_range(1..25);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.3))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let key = canonical_form(&g).unwrap();
            assert!(are_isomorphic(&key.to_graph(), &g));
            let lab = canonical_labeling(&g).unwrap();
            assert_eq!(
                graph6::encode_graph6(&g.relabeled(&lab).unwrap()).unwrap(),
                key.as_str()
            );
        }
    }

    #[test]
    fn isomorphism_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c5 = Graph::cycle(5).unwrap();
        assert!(are_isomorphic(&c5, &shuffled(&c5, &mut rng)));
        let two_c5 = Graph::from_edges(
            10,
            (0..5).flat_map(|i| [(i, (i + 1) % 5), (5 + i, 5 + (i + 1) % 5)]),
        )
        .unwrap();
        assert!(!are_isomorphic(&Graph::petersen(), &two_c5));
        // C6 and two triangles: same degrees, different structure
        let c6 = Graph::cycle(6).unwrap();
        let tt = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!are_isomorphic(&c6, &tt));
        assert_ne!(canonical_form(&c6).unwrap(), canonical_form(&tt).unwrap());
    }
}
