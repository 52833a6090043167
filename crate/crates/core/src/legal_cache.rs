//! Bitset cache of legal pairs for the fill loop.
//!
//! Row `u` holds the ball of radius `girth - 2` around `u`; a pair is legal
//! exactly when neither endpoint lies in the other's ball. Insertions are
//! applied incrementally, deletions need a [`LegalEdgeCache::rebuild`].

use crate::graph::{Graph, VertexPair};

#[derive(Clone, Debug)]
pub struct LegalEdgeCache {
    n: usize,
    words: usize,
    radius: usize,
    near: Vec<u64>,
    row_legal: Vec<usize>,
    legal: usize,
    scratch: Vec<u64>,
    // graded balls around the endpoints of the last inserted edge
    balls_a: Vec<u64>,
    balls_b: Vec<u64>,
    touched: Vec<u64>,
    ties: Vec<VertexPair>,
    // bits for vertices v with u < v < n, row by row
    upper: Vec<u64>,
}

#[inline]
fn or_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= *s;
    }
}

#[inline]
fn set_bit(row: &mut [u64], v: usize) {
    row[v / 64] |= 1 << (v % 64);
}

fn for_each_bit(row: &[u64], mut f: impl FnMut(usize)) {
    for (k, &word) in row.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            f(k * 64 + bits.trailing_zeros() as usize);
            bits &= bits - 1;
        }
    }
}

fn upper_mask(n: usize, u: usize, k: usize) -> u64 {
    let lo = k * 64;
    let mut mask = u64::MAX;
    if u + 1 > lo {
        let skip = u + 1 - lo;
        mask = if skip >= 64 { 0 } else { mask << skip };
    }
    if n < lo + 64 {
        let keep = n.saturating_sub(lo);
        mask &= if keep == 0 {
            0
        } else {
            u64::MAX >> (64 - keep)
        };
    }
    mask
}

impl LegalEdgeCache {
    pub fn new(g: &Graph, girth: usize) -> Self {
        let n = g.order();
        let words = n.div_ceil(64).max(1);
        let radius = girth.saturating_sub(2);
        let mut cache = Self {
            n,
            words,
            radius,
            near: vec![0; n * words],
            row_legal: vec![0; n],
            legal: 0,
            scratch: vec![0; n * words],
            balls_a: vec![0; radius * words],
            balls_b: vec![0; radius * words],
            touched: vec![0; words],
            ties: Vec::new(),
            upper: Vec::with_capacity(n * words),
        };
        for u in 0..n {
            for k in 0..words {
                let mask = upper_mask(n, u, k);
                cache.upper.push(mask);
            }
        }
        cache.rebuild(g);
        cache
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.near[u * self.words..(u + 1) * self.words]
    }

    /// Recomputes every ball from scratch.
    pub fn rebuild(&mut self, g: &Graph) {
        debug_assert_eq!(g.order(), self.n);
        let w = self.words;
        if w == 1 {
            self.rebuild_single(g);
            return;
        }
        self.near.fill(0);
        if self.radius > 0 {
            // radius 1: closed neighborhoods
            for (u, row) in self.near.chunks_exact_mut(w).enumerate() {
                set_bit(row, u);
                for &x in g.neighbors(u) {
                    set_bit(row, x);
                }
            }
        } else {
            for (u, row) in self.near.chunks_exact_mut(w).enumerate() {
                set_bit(row, u);
            }
        }
        for _ in 1..self.radius {
            self.scratch.copy_from_slice(&self.near);
            for (u, row) in self.near.chunks_exact_mut(w).enumerate() {
                for &x in g.neighbors(u) {
                    or_into(row, &self.scratch[x * w..(x + 1) * w]);
                }
            }
        }
        self.legal = 0;
        for u in 0..self.n {
            let c = self.count_row(u);
            self.row_legal[u] = c;
            self.legal += c;
        }
    }

    fn rebuild_single(&mut self, g: &Graph) {
        for (u, m) in self.near.iter_mut().enumerate() {
            *m = 1 << u;
            if self.radius > 0 {
                for &x in g.neighbors(u) {
                    *m |= 1 << x;
                }
            }
        }
        for _ in 1..self.radius {
            self.scratch.copy_from_slice(&self.near);
            for (u, m) in self.near.iter_mut().enumerate() {
                for &x in g.neighbors(u) {
                    *m |= self.scratch[x];
                }
            }
        }
        self.legal = 0;
        for u in 0..self.n {
            let c = (!self.near[u] & self.upper_mask(u, 0)).count_ones() as usize;
            self.row_legal[u] = c;
            self.legal += c;
        }
    }

    fn edge_added_single(&mut self, g: &Graph, a: usize, b: usize) {
        let r = self.radius;
        for (src, balls) in [(a, &mut self.balls_a), (b, &mut self.balls_b)] {
            balls[0] = 1 << src;
            for level in 1..r {
                let prev = balls[level - 1];
                let mut frontier = prev & !if level >= 2 { balls[level - 2] } else { 0 };
                let mut cur = prev;
                while frontier != 0 {
                    let x = frontier.trailing_zeros() as usize;
                    frontier &= frontier - 1;
                    for &y in g.neighbors(x) {
                        cur |= 1 << y;
                    }
                }
                balls[level] = cur;
            }
        }
        for (from, to) in [
            (&self.balls_a, &self.balls_b),
            (&self.balls_b, &self.balls_a),
        ] {
            for i in 0..r {
                let mut layer = from[i] & !if i > 0 { from[i - 1] } else { 0 };
                let target = to[r - 1 - i];
                while layer != 0 {
                    let x = layer.trailing_zeros() as usize;
                    layer &= layer - 1;
                    self.near[x] |= target;
                }
            }
        }
        let mut touched = self.balls_a[r - 1] | self.balls_b[r - 1];
        while touched != 0 {
            let x = touched.trailing_zeros() as usize;
            touched &= touched - 1;
            let c = (!self.near[x] & self.upper_mask(x, 0)).count_ones() as usize;
            self.legal = self.legal + c - self.row_legal[x];
            self.row_legal[x] = c;
        }
    }

    /// Writes balls of radius `0..radius` around `src` into `out`, one row each.
    fn graded_balls(g: &Graph, src: usize, words: usize, out: &mut [u64]) {
        out.fill(0);
        let levels = out.len() / words;
        set_bit(&mut out[..words], src);
        for level in 1..levels {
            let (done, rest) = out.split_at_mut(level * words);
            let prev = &done[(level - 1) * words..];
            let cur = &mut rest[..words];
            cur.copy_from_slice(prev);
            let before = if level >= 2 {
                Some(&done[(level - 2) * words..(level - 1) * words])
            } else {
                None
            };
            // expand only the newest layer
            for (k, &word) in prev.iter().enumerate() {
                let mut bits = word & !before.map_or(0, |b| b[k]);
                while bits != 0 {
                    let x = k * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for &y in g.neighbors(x) {
                        set_bit(cur, y);
                    }
                }
            }
        }
    }

    /// Marks pairs that became illegal after `{a, b}` was inserted into `g`.
    pub fn edge_added(&mut self, g: &Graph, a: usize, b: usize) {
        if self.radius == 0 {
            return;
        }
        if self.words == 1 {
            self.edge_added_single(g, a, b);
            return;
        }
        let w = self.words;
        let r = self.radius;
        Self::graded_balls(g, a, w, &mut self.balls_a);
        Self::graded_balls(g, b, w, &mut self.balls_b);
        // x at distance i from a joins everything within r - 1 - i of b
        for (from, to) in [
            (&self.balls_a, &self.balls_b),
            (&self.balls_b, &self.balls_a),
        ] {
            for i in 0..r {
                let layer = &from[i * w..(i + 1) * w];
                let inner = (i > 0).then(|| &from[(i - 1) * w..i * w]);
                let target = &to[(r - 1 - i) * w..(r - i) * w];
                for k in 0..w {
                    let mut bits = layer[k] & !inner.map_or(0, |b| b[k]);
                    while bits != 0 {
                        let x = k * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        or_into(&mut self.near[x * w..(x + 1) * w], target);
                    }
                }
            }
        }
        self.touched.copy_from_slice(&self.balls_a[(r - 1) * w..]);
        or_into(&mut self.touched, &self.balls_b[(r - 1) * w..]);
        let touched = std::mem::take(&mut self.touched);
        for_each_bit(&touched, |x| {
            let c = self.count_row(x);
            self.legal = self.legal + c - self.row_legal[x];
            self.row_legal[x] = c;
        });
        self.touched = touched;
    }

    #[inline]
    fn upper_mask(&self, u: usize, k: usize) -> u64 {
        self.upper[u * self.words + k]
    }

    fn count_row(&self, u: usize) -> usize {
        let row = self.row(u);
        (u / 64..self.words)
            .map(|k| (!row[k] & self.upper_mask(u, k)).count_ones() as usize)
            .sum()
    }

    pub fn count(&self) -> usize {
        self.legal
    }

    pub fn is_legal(&self, u: usize, v: usize) -> bool {
        u != v && self.row(u)[v / 64] >> (v % 64) & 1 == 0
    }

    /// Legal pairs `(u, v)`, `u < v`, ascending.
    pub fn pairs(&self) -> impl Iterator<Item = VertexPair> + '_ {
        (0..self.n)
            .filter(|&u| self.row_legal[u] > 0)
            .flat_map(move |u| self.row_pairs(u))
    }

    fn row_pairs(&self, u: usize) -> impl Iterator<Item = VertexPair> + '_ {
        let row = self.row(u);
        (u / 64..self.words).flat_map(move |k| {
            let mut bits = !row[k] & self.upper_mask(u, k);
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(VertexPair::ordered(u, k * 64 + t))
            })
        })
    }

    /// The `index`-th legal pair in ascending order.
    pub fn nth(&self, mut index: usize) -> Option<VertexPair> {
        for u in 0..self.n {
            if index < self.row_legal[u] {
                if self.words == 1 {
                    let mut bits = !self.near[u] & self.upper_mask(u, 0);
                    for _ in 0..index {
                        bits &= bits - 1;
                    }
                    return Some(VertexPair::ordered(u, bits.trailing_zeros() as usize));
                }
                return self.row_pairs(u).nth(index);
            }
            index -= self.row_legal[u];
        }
        None
    }

    /// Legal pairs of largest degree sum, ascending.
    pub fn max_degree_sum(&mut self, g: &Graph) -> &[VertexPair] {
        let mut ties = std::mem::take(&mut self.ties);
        ties.clear();
        let mut best = 0;
        let mut consider = |p: VertexPair| {
            let s = g.degree(p.u()) + g.degree(p.v());
            if s > best || ties.is_empty() {
                best = s;
                ties.clear();
                ties.push(p);
            } else if s == best {
                ties.push(p);
            }
        };
        if self.words == 1 {
            for u in 0..self.n {
                let mut bits = !self.near[u] & self.upper_mask(u, 0);
                while bits != 0 {
                    consider(VertexPair::ordered(u, bits.trailing_zeros() as usize));
                    bits &= bits - 1;
                }
            }
        } else {
            self.pairs().for_each(consider);
        }
        self.ties = ties;
        &self.ties
    }
}
