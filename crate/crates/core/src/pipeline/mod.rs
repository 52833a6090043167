//! Multi-order propagation: up runs grow the best graphs of order `n` into
//! order `n + 1` through an isolated vertex, down runs shrink them into order
//! `n - 1` by vertex deletion, and both re-optimize with local search.

pub mod report;
pub mod store;

use std::collections::BTreeMap;
use std::path::PathBuf;

use log::info;
use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::files::{load_seed_store, save_store_snapshot};
use crate::local_search::{local_search, SearchParams};
pub use report::{BoundsRow, BoundsTable};
pub use store::{BestStore, StoreEntry, DEFAULT_CAPACITY};

/// Local search parameters as a function of the order `n`:
/// `(iters_per_order * n, max(1, n / window_divisor), max(k_max_floor, n / k_max_divisor), p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamTemplate {
    pub iters_per_order: u64,
    pub window_divisor: u64,
    pub k_max_floor: usize,
    pub k_max_divisor: Option<usize>,
    pub p: f64,
}

impl ParamTemplate {
    /// `(1000n, n, 3, 0.5)`
    pub const WIDE: Self = Self {
        iters_per_order: 1000,
        window_divisor: 1,
        k_max_floor: 3,
        k_max_divisor: None,
        p: 0.5,
    };

    /// `(1000n, floor(n/3), max(3, floor(n/10)), 0.5)`
    pub const NARROW: Self = Self {
        iters_per_order: 1000,
        window_divisor: 3,
        k_max_floor: 3,
        k_max_divisor: Some(10),
        p: 0.5,
    };

    pub fn instantiate(&self, n: usize, rng_seed: u64) -> SearchParams {
        let n64 = n.max(1) as u64;
        SearchParams {
            total_num_iters: (self.iters_per_order * n64).max(1),
            num_iters_too_recent: (n64 / self.window_divisor.max(1)).max(1),
            k_max: self
                .k_max_divisor
                .map_or(self.k_max_floor, |d| self.k_max_floor.max(n / d.max(1)))
                .max(1),
            p: self.p,
            rng_seed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n_low: usize,
    pub n_high: usize,
    pub ell: usize,
    pub passes: usize,
    pub seed_dir: Option<PathBuf>,
    /// Snapshots are written here after every half-pass when set.
    pub out_dir: Option<PathBuf>,
    pub params_a: ParamTemplate,
    pub params_b: ParamTemplate,
    pub master_seed: u64,
    pub threads: usize,
    pub capacity: usize,
    /// Stop before the configured pass count once a full pass improves no order.
    pub stop_when_stalled: bool,
}

impl RunConfig {
    pub fn new(n_low: usize, n_high: usize) -> Self {
        Self {
            n_low,
            n_high,
            ell: 150,
            passes: 2,
            seed_dir: None,
            out_dir: None,
            params_a: ParamTemplate::WIDE,
            params_b: ParamTemplate::NARROW,
            master_seed: 0,
            threads: 1,
            capacity: DEFAULT_CAPACITY,
            stop_when_stalled: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_low >= self.n_high {
            return Err(Error::Usage(format!(
                "order range {}..{} is empty or degenerate",
                self.n_low, self.n_high
            )));
        }
        if self.n_low == 0 {
            return Err(Error::Usage("orders start at 1".into()));
        }
        if self.n_high > crate::graph::MAX_ORDER {
            return Err(Error::Capacity {
                order: self.n_high,
                max: crate::graph::MAX_ORDER,
            });
        }
        if self.ell == 0 || self.threads == 0 || self.capacity == 0 {
            return Err(Error::Usage(
                "ell, threads and capacity must be positive".into(),
            ));
        }
        for t in [&self.params_a, &self.params_b] {
            if !(0.0..=1.0).contains(&t.p) || t.iters_per_order == 0 {
                return Err(Error::Usage("invalid local search template".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    fn tag(self) -> &'static str {
        match self {
            Direction::Up => "up",
            Direction::Down => "down",
        }
    }
}

/// Half-pass label used in snapshot names and report columns, e.g. `1up`.
pub fn half_pass_tag(pass: usize, direction: Direction) -> String {
    format!("{pass}{}", direction.tag())
}

/// Mixes a stream identifier into a seed (SplitMix64 finalizer).
fn mix(seed: u64, value: u64) -> u64 {
    let mut z = seed ^ value.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of one local search call, independent of scheduling.
pub fn task_seed(
    master: u64,
    pass: usize,
    direction: Direction,
    n: usize,
    index: usize,
    template: usize,
) -> u64 {
    [
        pass as u64,
        direction as u64,
        n as u64,
        index as u64,
        template as u64,
    ]
    .into_iter()
    .fold(mix(master, 0x6769_7274_6835), mix)
}

/// Runs local search with both templates on every start graph and returns
/// the keyed results in task order.
fn search_all(
    cfg: &RunConfig,
    starts: &[Graph],
    param_order: usize,
    pass: usize,
    direction: Direction,
) -> Result<Vec<(CanonicalForm, Graph)>> {
    let tasks: Vec<(usize, SearchParams)> = starts
        .iter()
        .enumerate()
        .flat_map(|(i, _)| {
            [cfg.params_a, cfg.params_b]
                .into_iter()
                .enumerate()
                .map(move |(t, template)| {
                    let seed = task_seed(cfg.master_seed, pass, direction, param_order, i, t);
                    (i, template.instantiate(param_order, seed))
                })
        })
        .collect();
    let run = |(i, params): &(usize, SearchParams)| -> Result<Vec<(CanonicalForm, Graph)>> {
        let result = local_search(&starts[*i], params)?;
        result
            .graphs
            .into_iter()
            .map(|g| Ok((canonical_form(&g)?, g)))
            .collect()
    };
    let batches: Vec<Result<Vec<_>>> = if cfg.threads > 1 {
        pool(cfg.threads)?.install(|| tasks.par_iter().map(run).collect())
    } else {
        tasks.iter().map(run).collect()
    };
    let mut out = Vec::new();
    for batch in batches {
        out.extend(batch?);
    }
    Ok(out)
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start worker pool: {e}")))
}

/// Grows order `n` into `n + 1` for `n` in `n_low..n_high`, ascending.
pub fn up_run(store: &mut BestStore, cfg: &RunConfig, pass: usize) -> Result<()> {
    for n in cfg.n_low..cfg.n_high {
        let starts = store
            .top_ell(n, cfg.ell)
            .iter()
            .map(Graph::with_isolated_vertex)
            .collect::<Result<Vec<_>>>()?;
        if starts.is_empty() {
            continue;
        }
        let found = search_all(cfg, &starts, n, pass, Direction::Up)?;
        let added = found
            .into_iter()
            .filter(|(key, g)| store.insert_keyed(key.clone(), g.clone()))
            .count();
        info!(
            "pass {pass} up n={n}: {} starts, {added} new graphs at n={}, best {:?}",
            starts.len(),
            n + 1,
            store.max_size(n + 1)
        );
    }
    Ok(())
}

/// All single-vertex deletions of `graphs`, deduplicated, largest first.
pub fn deletion_candidates(graphs: &[Graph], ell: usize, threads: usize) -> Result<Vec<Graph>> {
    let deletions: Vec<Graph> = graphs
        .iter()
        .flat_map(|g| (0..g.order()).map(move |v| g.without_vertex(v)))
        .collect::<Result<_>>()?;
    let key = |g: &Graph| canonical_form(g);
    let keys: Vec<CanonicalForm> = if threads > 1 {
        pool(threads)?.install(|| deletions.par_iter().map(key).collect::<Result<_>>())?
    } else {
        deletions.iter().map(key).collect::<Result<_>>()?
    };
    let mut unique: BTreeMap<(std::cmp::Reverse<usize>, CanonicalForm), Graph> = BTreeMap::new();
    for (k, g) in keys.into_iter().zip(deletions) {
        unique.entry((std::cmp::Reverse(g.size()), k)).or_insert(g);
    }
    Ok(unique.into_values().take(ell).collect())
}

/// Shrinks order `n` into `n - 1` for `n` from `n_high` down to `n_low + 1`.
pub fn down_run(store: &mut BestStore, cfg: &RunConfig, pass: usize) -> Result<()> {
    for n in (cfg.n_low + 1..=cfg.n_high).rev() {
        let top = store.top_ell(n, cfg.ell);
        if top.is_empty() {
            continue;
        }
        let starts = deletion_candidates(&top, cfg.ell, cfg.threads)?;
        let found = search_all(cfg, &starts, n, pass, Direction::Down)?;
        let added = found
            .into_iter()
            .filter(|(key, g)| store.insert_keyed(key.clone(), g.clone()))
            .count();
        info!(
            "pass {pass} down n={n}: {} starts, {added} new graphs at n={}, best {:?}",
            starts.len(),
            n - 1,
            store.max_size(n - 1)
        );
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub table: BoundsTable,
    pub store: BestStore,
}

/// Seeds the store, alternates up and down runs, and tabulates per-order maxima.
pub fn compute_lower_bounds(cfg: &RunConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let store = load_seed_store(cfg.seed_dir.as_deref(), cfg.n_low, cfg.n_high, cfg.capacity)?;
    run_passes(cfg, store)
}

/// Runs the configured passes starting from an already populated store.
pub fn run_passes(cfg: &RunConfig, mut store: BestStore) -> Result<RunOutcome> {
    cfg.validate()?;
    let orders: Vec<usize> = (cfg.n_low..=cfg.n_high).collect();
    let snapshot = |store: &BestStore| -> Vec<Option<usize>> {
        orders.iter().map(|&n| store.max_size(n)).collect()
    };
    let seeds = snapshot(&store);
    let mut half_passes: Vec<(String, Vec<Option<usize>>)> = Vec::new();

    for pass in 1..=cfg.passes {
        let before = snapshot(&store);
        for direction in [Direction::Up, Direction::Down] {
            match direction {
                Direction::Up => up_run(&mut store, cfg, pass)?,
                Direction::Down => down_run(&mut store, cfg, pass)?,
            }
            let tag = half_pass_tag(pass, direction);
            if let Some(dir) = &cfg.out_dir {
                save_store_snapshot(&store, dir, &tag)?;
            }
            half_passes.push((tag, snapshot(&store)));
        }
        if cfg.stop_when_stalled && snapshot(&store) == before {
            info!("pass {pass} improved no order; stopping");
            break;
        }
    }

    let rows = orders
        .iter()
        .enumerate()
        .map(|(i, &n)| BoundsRow {
            n,
            seed: seeds[i],
            half_passes: half_passes.iter().map(|(_, sizes)| sizes[i]).collect(),
            final_size: store.max_size(n),
        })
        .collect();
    let table = BoundsTable {
        columns: half_passes.into_iter().map(|(tag, _)| tag).collect(),
        rows,
    };
    Ok(RunOutcome { table, store })
}
