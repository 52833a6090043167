//! Per-order collections of pairwise non-isomorphic graphs.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{Graph, DEFAULT_GIRTH};

pub const DEFAULT_CAPACITY: usize = 500;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoreEntry {
    pub key: CanonicalForm,
    pub graph: Graph,
}

impl StoreEntry {
    pub fn size(&self) -> usize {
        self.graph.size()
    }
}

type Rank = (Reverse<usize>, CanonicalForm);

#[derive(Clone, Debug, Default)]
struct Bucket {
    // iteration order is the ranking: size descending, then key ascending
    ranked: BTreeMap<Rank, Graph>,
    keys: BTreeSet<CanonicalForm>,
}

#[derive(Clone, Debug)]
pub struct BestStore {
    by_order: BTreeMap<usize, Bucket>,
    capacity: usize,
}

impl BestStore {
    pub fn new(capacity: usize) -> Self {
        Self {
            by_order: BTreeMap::new(),
            capacity: capacity.max(1),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Inserts `g` unless an isomorphic graph of the same order is stored.
    pub fn insert(&mut self, g: Graph) -> Result<bool> {
        if !g.girth_at_least(DEFAULT_GIRTH) {
            return Err(Error::GirthViolation {
                threshold: DEFAULT_GIRTH,
            });
        }
        let key = canonical_form(&g)?;
        Ok(self.insert_keyed(key, g))
    }

    /// Insert with a precomputed key. The caller vouches for the girth.
    pub(crate) fn insert_keyed(&mut self, key: CanonicalForm, g: Graph) -> bool {
        debug_assert!(g.girth_at_least(DEFAULT_GIRTH));
        let bucket = self.by_order.entry(g.order()).or_default();
        if bucket.keys.contains(&key) {
            return false;
        }
        let rank = (Reverse(g.size()), key.clone());
        bucket.keys.insert(key);
        bucket.ranked.insert(rank.clone(), g);
        if bucket.ranked.len() > self.capacity {
            let (evicted, _) = bucket.ranked.pop_last().expect("bucket over capacity");
            bucket.keys.remove(&evicted.1);
            return evicted != rank;
        }
        true
    }

    pub fn contains(&self, n: usize, key: &CanonicalForm) -> bool {
        self.by_order.get(&n).is_some_and(|b| b.keys.contains(key))
    }

    /// Orders holding at least one graph, ascending.
    pub fn orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_order
            .iter()
            .filter(|(_, b)| !b.ranked.is_empty())
            .map(|(&n, _)| n)
    }

    pub fn len(&self, n: usize) -> usize {
        self.by_order.get(&n).map_or(0, |b| b.ranked.len())
    }

    pub fn is_empty(&self) -> bool {
        self.by_order.values().all(|b| b.ranked.is_empty())
    }

    pub fn max_size(&self, n: usize) -> Option<usize> {
        self.by_order
            .get(&n)
            .and_then(|b| b.ranked.keys().next())
            .map(|(Reverse(s), _)| *s)
    }

    /// Entries of order `n`, size descending, ties by ascending key.
    pub fn ranked(&self, n: usize) -> impl Iterator<Item = StoreEntry> + '_ {
        self.by_order.get(&n).into_iter().flat_map(|b| {
            b.ranked.iter().map(|((_, key), g)| StoreEntry {
                key: key.clone(),
                graph: g.clone(),
            })
        })
    }

    /// The `ell` largest graphs of order `n`.
    pub fn top_ell(&self, n: usize, ell: usize) -> Vec<Graph> {
        self.ranked(n).take(ell).map(|e| e.graph).collect()
    }

    pub fn keys(&self, n: usize) -> BTreeSet<CanonicalForm> {
        self.by_order
            .get(&n)
            .map(|b| b.keys.clone())
            .unwrap_or_default()
    }
}
