mod common;

use std::collections::HashMap;

use girth_search::local_search::{local_search_observed, SearchObserver};
use girth_search::{local_search, Graph, SearchParams, VertexPair};
use proptest::prelude::*;

/// Checks every step against the graph-level definitions.
#[derive(Default)]
struct Auditor {
    window: u64,
    k_max: usize,
    additions: usize,
    greedy_additions: usize,
    deleted_at: HashMap<VertexPair, u64>,
    deletions_this_iter: (u64, usize),
    fills: u64,
}

impl SearchObserver for Auditor {
    fn edge_added(&mut self, before: &Graph, edge: VertexPair, greedy: bool) {
        assert!(before.is_legal_edge(edge.u(), edge.v()).unwrap());
        if greedy {
            let ties = before.max_degree_sum_legal_edges().unwrap();
            assert!(ties.contains(&edge));
            self.greedy_additions += 1;
        }
        self.additions += 1;
    }

    fn filled(&mut self, g: &Graph, iteration: u64) {
        assert!(g.legal_edges().is_empty());
        assert!(g.girth_at_least(5));
        assert_eq!(iteration, self.fills);
        self.fills += 1;
    }

    fn edge_deleted(&mut self, after: &Graph, edge: VertexPair, iteration: u64) {
        assert!(!after.has_edge(edge.u(), edge.v()).unwrap());
        if let Some(&t) = self.deleted_at.get(&edge) {
            assert!(
                iteration - t > self.window,
                "{edge:?} deleted at {t} and {iteration}"
            );
        }
        self.deleted_at.insert(edge, iteration);
        if self.deletions_this_iter.0 != iteration {
            self.deletions_this_iter = (iteration, 0);
        }
        self.deletions_this_iter.1 += 1;
        assert!(self.deletions_this_iter.1 <= self.k_max);
    }
}

fn audited(seed: &Graph, params: &SearchParams) -> (girth_search::SearchResult, Auditor) {
    let mut a = Auditor {
        window: params.num_iters_too_recent,
        k_max: params.k_max,
        deletions_this_iter: (u64::MAX, 0),
        ..Default::default()
    };
    let r = local_search_observed(seed, params, &mut a).unwrap();
    (r, a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_step_follows_the_rules(
        n in 3usize..16,
        window in 1u64..8,
        k_max in 1usize..5,
        p in 0.0f64..=1.0,
        rng_seed in any::<u64>(),
    ) {
        let params = SearchParams::new(300, window, k_max, p, rng_seed).unwrap();
        let (r, audit) = audited(&Graph::empty(n).unwrap(), &params);
        prop_assert_eq!(audit.fills, r.iterations_run);
        prop_assert!(r.iterations_run <= 300);
        let sizes: Vec<_> = r.graphs.iter().map(Graph::size).collect();
        prop_assert!(sizes.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(*sizes.last().unwrap(), r.best_size);
    }

    #[test]
    fn same_seed_same_result(n in 5usize..14, rng_seed in any::<u64>()) {
        let params = SearchParams::wide_window(n, rng_seed);
        let seed = Graph::empty(n).unwrap();
        prop_assert_eq!(local_search(&seed, &params).unwrap(), local_search(&seed, &params).unwrap());
    }
}

#[test]
fn greedy_only_takes_max_degree_sum_edges() {
    for rng_seed in 0..20 {
        let params = SearchParams::new(200, 2, 3, 1.0, rng_seed).unwrap();
        let (_, audit) = audited(&Graph::empty(12).unwrap(), &params);
        assert_eq!(audit.additions, audit.greedy_additions);
    }
}

#[test]
fn uniform_only_never_greedy() {
    let params = SearchParams::new(200, 2, 3, 0.0, 9).unwrap();
    let (_, audit) = audited(&Graph::empty(12).unwrap(), &params);
    assert!(audit.additions > 0);
    assert_eq!(audit.greedy_additions, 0);
}

/// First insertion into an edgeless graph: every pair is legal and every
/// pair ties on degree sum, so both selection modes must be uniform.
fn first_edge_counts(p: f64) -> HashMap<VertexPair, usize> {
    struct First(Option<VertexPair>);
    impl SearchObserver for First {
        fn edge_added(&mut self, _: &Graph, edge: VertexPair, _: bool) {
            self.0.get_or_insert(edge);
        }
    }
    let seed = Graph::empty(6).unwrap();
    let mut counts = HashMap::new();
    for rng_seed in 0..15_000 {
        let params = SearchParams::new(1, 1, 1, p, rng_seed).unwrap();
        let mut first = First(None);
        local_search_observed(&seed, &params, &mut first).unwrap();
        *counts.entry(first.0.unwrap()).or_insert(0) += 1;
    }
    counts
}

#[test]
fn selection_is_uniform() {
    for p in [0.0, 1.0] {
        let counts = first_edge_counts(p);
        assert_eq!(counts.len(), 15);
        // 15 000 draws over 15 pairs: mean 1000, sd about 30.6
        for (pair, &c) in &counts {
            assert!(
                (c as f64 - 1000.0).abs() < 4.0 * 30.6,
                "p={p} {pair:?}: {c}"
            );
        }
    }
}

#[test]
fn uniform_over_legal_edges_of_a_partial_graph() {
    // P4 on 0-1-2-3 plus two isolated vertices: legal pairs exclude the
    // edges themselves and any pair at distance at most 3 (all of the path)
    let seed = Graph::path(4)
        .unwrap()
        .with_isolated_vertex()
        .unwrap()
        .with_isolated_vertex()
        .unwrap();
    let legal = seed.legal_edges();
    assert_eq!(legal.len(), 9);
    struct First(Option<VertexPair>);
    impl SearchObserver for First {
        fn edge_added(&mut self, _: &Graph, edge: VertexPair, _: bool) {
            self.0.get_or_insert(edge);
        }
    }
    let mut counts: HashMap<VertexPair, usize> = HashMap::new();
    let draws = 9_000;
    for rng_seed in 0..draws {
        let params = SearchParams::new(1, 1, 1, 0.0, rng_seed).unwrap();
        let mut first = First(None);
        local_search_observed(&seed, &params, &mut first).unwrap();
        *counts.entry(first.0.unwrap()).or_insert(0) += 1;
    }
    let mean = draws as f64 / 9.0;
    let sd = (draws as f64 * (1.0 / 9.0) * (8.0 / 9.0)).sqrt();
    for p in &legal {
        let c = counts.get(p).copied().unwrap_or(0) as f64;
        assert!((c - mean).abs() < 4.0 * sd, "{p:?}: {c}");
    }
    assert_eq!(counts.len(), 9);
}
