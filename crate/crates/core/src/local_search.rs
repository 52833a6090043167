//! Randomized fill-and-perturb hill climbing at a fixed order.
//!
//! Each outer iteration fills the working graph with legal edges until it is
//! edge-maximal, records it if it beats every recorded size, then deletes a
//! few random edges that were not deleted recently.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPair, DEFAULT_GIRTH};
use crate::legal_cache::LegalEdgeCache;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchParams {
    pub total_num_iters: u64,
    /// Edges deleted within this many iterations are not deleted again.
    pub num_iters_too_recent: u64,
    pub k_max: usize,
    /// Probability of taking a max-degree-sum edge instead of a uniform one.
    pub p: f64,
    pub rng_seed: u64,
}

impl SearchParams {
    pub fn new(
        total_num_iters: u64,
        num_iters_too_recent: u64,
        k_max: usize,
        p: f64,
        rng_seed: u64,
    ) -> Result<Self> {
        let params = Self {
            total_num_iters,
            num_iters_too_recent,
            k_max,
            p,
            rng_seed,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.total_num_iters == 0 || self.num_iters_too_recent == 0 || self.k_max == 0 {
            return Err(Error::Usage(
                "iteration budget, window and k_max must all be at least 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::Usage(format!("p = {} is not a probability", self.p)));
        }
        Ok(())
    }

    /// First parameter template of the propagation runs: `(1000n, n, 3, 0.5)`.
    pub fn wide_window(n: usize, rng_seed: u64) -> Self {
        let n = n.max(1) as u64;
        Self {
            total_num_iters: 1000 * n,
            num_iters_too_recent: n,
            k_max: 3,
            p: 0.5,
            rng_seed,
        }
    }

    /// Second template: `(1000n, floor(n/3), max(3, floor(n/10)), 0.5)`.
    pub fn narrow_window(n: usize, rng_seed: u64) -> Self {
        let n = n.max(1);
        Self {
            total_num_iters: 1000 * n as u64,
            num_iters_too_recent: (n as u64 / 3).max(1),
            k_max: (n / 10).max(3),
            p: 0.5,
            rng_seed,
        }
    }
}

/// Most recent deletion iteration per vertex pair.
#[derive(Clone, Debug)]
pub struct DeletionLedger {
    n: usize,
    last: Vec<u64>,
}

const NEVER: u64 = u64::MAX;

impl DeletionLedger {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            last: vec![NEVER; n * n.saturating_sub(1) / 2],
        }
    }

    fn slot(&self, p: VertexPair) -> usize {
        let (u, v) = (p.u(), p.v());
        debug_assert!(v < self.n);
        // row-major upper triangle without the diagonal
        u * (2 * self.n - u - 1) / 2 + (v - u - 1)
    }

    pub fn record(&mut self, p: VertexPair, iteration: u64) {
        let s = self.slot(p);
        self.last[s] = iteration;
    }

    pub fn last_deleted(&self, p: VertexPair) -> Option<u64> {
        let t = self.last[self.slot(p)];
        (t != NEVER).then_some(t)
    }

    /// Deleted at most `window` iterations before `current`.
    pub fn is_recent(&self, p: VertexPair, current: u64, window: u64) -> bool {
        self.last_deleted(p)
            .is_some_and(|t| current.saturating_sub(t) <= window)
    }
}

/// Current edges whose last deletion, if any, lies more than `window` iterations back.
pub fn eligible_deletions(
    g: &Graph,
    ledger: &DeletionLedger,
    current_iter: u64,
    window: u64,
) -> Vec<VertexPair> {
    g.edges()
        .filter(|&p| !ledger.is_recent(p, current_iter, window))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    /// The seed followed by each strictly larger graph found.
    pub graphs: Vec<Graph>,
    pub iterations_run: u64,
    pub best_size: usize,
}

/// Hooks into a running search; all methods default to no-ops.
pub trait SearchObserver {
    /// Called before `edge` is inserted into `before`.
    fn edge_added(&mut self, _before: &Graph, _edge: VertexPair, _greedy: bool) {}
    /// Called once the fill loop leaves `g` edge-maximal.
    fn filled(&mut self, _g: &Graph, _iteration: u64) {}
    /// Called after `edge` was removed, leaving `after`.
    fn edge_deleted(&mut self, _after: &Graph, _edge: VertexPair, _iteration: u64) {}
}

impl SearchObserver for () {}

pub fn local_search(seed: &Graph, params: &SearchParams) -> Result<SearchResult> {
    local_search_observed(seed, params, &mut ())
}

pub fn local_search_observed<O: SearchObserver>(
    seed: &Graph,
    params: &SearchParams,
    observer: &mut O,
) -> Result<SearchResult> {
    params.validate()?;
    if seed.order() == 0 {
        return Err(Error::Usage(
            "local search needs at least one vertex".into(),
        ));
    }
    if !seed.girth_at_least(DEFAULT_GIRTH) {
        return Err(Error::GirthViolation {
            threshold: DEFAULT_GIRTH,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let mut g = seed.clone();
    let mut cache = LegalEdgeCache::new(&g, DEFAULT_GIRTH);
    let mut ledger = DeletionLedger::new(g.order());
    let mut found = vec![seed.clone()];
    let mut best = seed.size();
    // an edgeless seed would otherwise stop before its first fill
    let mut eligible_count = seed.size().max(1);
    let mut iteration = 0u64;

    let mut eligible = Vec::new();
    while iteration < params.total_num_iters && eligible_count > 0 {
        while cache.count() > 0 {
            let greedy = rng.gen::<f64>() < params.p;
            let edge = if greedy {
                let ties = cache.max_degree_sum(&g);
                ties[rng.gen_range(0..ties.len())]
            } else {
                let i = rng.gen_range(0..cache.count());
                cache.nth(i).expect("index below legal count")
            };
            debug_assert!(!g
                .distance_at_most(edge.u(), edge.v(), DEFAULT_GIRTH - 2)
                .unwrap());
            observer.edge_added(&g, edge, greedy);
            g.insert_unchecked(edge);
            cache.edge_added(&g, edge.u(), edge.v());
        }
        observer.filled(&g, iteration);

        if g.size() > best {
            best = g.size();
            found.push(g.clone());
        }

        eligible.clear();
        eligible.extend(
            g.edges()
                .filter(|&p| !ledger.is_recent(p, iteration, params.num_iters_too_recent)),
        );
        eligible_count = eligible.len();
        if eligible_count >= 1 {
            let k = rng.gen_range(1..=params.k_max).min(eligible_count);
            // partial Fisher-Yates: the first k slots become a uniform k-subset
            for j in 0..k {
                let pick = rng.gen_range(j..eligible_count);
                eligible.swap(j, pick);
                let edge = eligible[j];
                g.remove_unchecked(edge);
                ledger.record(edge, iteration);
                observer.edge_deleted(&g, edge, iteration);
            }
            cache.rebuild(&g);
        }
        iteration += 1;
    }

    Ok(SearchResult {
        graphs: found,
        iterations_run: iteration,
        best_size: best,
    })
}
