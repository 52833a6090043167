//! Ground truth for small orders and bound bookkeeping.
//!
//! The exact solver builds girth-5 graphs one vertex at a time. Any graph on
//! `n` vertices with at least `m` edges loses at most `2m/n` edges when a
//! minimum-degree vertex is removed, so it extends some graph on `n - 1`
//! vertices with at least `ceil(m (n - 2) / n)` edges by a new vertex whose
//! degree does not exceed any other degree. Families are deduplicated by
//! canonical form at every order.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPair, DEFAULT_GIRTH};

/// Default work limit for [`exact_max_size`], in extension steps.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Exact,
    /// The search ran out of budget; the value is only a lower bound.
    Lower,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRecord {
    pub n: usize,
    pub kind: BoundKind,
    pub value: usize,
    pub witness: Option<CanonicalForm>,
}

impl BoundRecord {
    pub fn is_exact(&self) -> bool {
        self.kind == BoundKind::Exact
    }
}

/// Moore bound on the order of a `k`-regular graph of girth `g`.
pub fn moore_bound(k: u64, g: u64) -> Result<u64> {
    if k < 2 || g < 3 {
        return Err(Error::Usage(format!(
            "Moore bound needs k >= 2 and g >= 3, got k = {k}, g = {g}"
        )));
    }
    let overflow = || Error::Usage(format!("Moore bound M({k},{g}) overflows"));
    let t = g / 2;
    let mut sum = 0u64;
    let mut term = 1u64;
    for i in 0..t {
        sum = sum.checked_add(term).ok_or_else(overflow)?;
        if i + 1 < t {
            term = term.checked_mul(k - 1).ok_or_else(overflow)?;
        }
    }
    if g % 2 == 1 {
        k.checked_mul(sum)
            .and_then(|x| x.checked_add(1))
            .ok_or_else(overflow)
    } else {
        sum.checked_mul(2).ok_or_else(overflow)
    }
}

struct ExactSolver {
    budget: u64,
    spent: u64,
    memo: HashMap<(usize, i64), Vec<Graph>>,
}

struct OutOfBudget;

impl ExactSolver {
    fn charge(&mut self, amount: u64) -> Result<(), OutOfBudget> {
        self.spent += amount;
        if self.spent > self.budget {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }

    /// All girth-5 graphs on `k` vertices with at least `m` edges, up to isomorphism.
    fn family(&mut self, k: usize, m: i64) -> Result<Vec<Graph>, OutOfBudget> {
        let m = m.max(0);
        if let Some(found) = self.memo.get(&(k, m)) {
            return Ok(found.clone());
        }
        let result = if k <= 1 {
            if m == 0 {
                vec![Graph::empty(k).expect("tiny order")]
            } else {
                Vec::new()
            }
        } else {
            let kk = k as i64;
            let parent_min = (m * (kk - 2) + kk - 1) / kk;
            let parents = self.family(k - 1, parent_min)?;
            let mut seen: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
            for parent in &parents {
                let need = (m - parent.size() as i64).max(0) as usize;
                for set in self.attachment_sets(parent, need)? {
                    let mut child = parent.with_isolated_vertex().expect("small order");
                    let new = k - 1;
                    for &x in &set {
                        child.insert_unchecked(VertexPair::ordered(x, new));
                    }
                    self.charge(k as u64)?;
                    let key = canonical_form(&child).expect("small order");
                    seen.entry(key).or_insert(child);
                }
            }
            seen.into_values().collect()
        };
        self.memo.insert((k, m), result.clone());
        Ok(result)
    }

    /// Vertex sets of `parent`, pairwise at distance at least 3, whose size
    /// `d >= need` does not exceed any degree after attaching a new vertex to them.
    fn attachment_sets(
        &mut self,
        parent: &Graph,
        need: usize,
    ) -> Result<Vec<Vec<usize>>, OutOfBudget> {
        let n = parent.order();
        let cap = (0..n).map(|x| parent.degree(x) + 1).min().unwrap_or(0);
        let mut far = vec![vec![false; n]; n];
        for (x, row) in far.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                *cell = x != y && !parent.distance_at_most(x, y, 2).unwrap();
            }
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.grow(parent, &far, need, cap, 0, &mut current, &mut out)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn grow(
        &mut self,
        parent: &Graph,
        far: &[Vec<bool>],
        need: usize,
        cap: usize,
        from: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<(), OutOfBudget> {
        self.charge(1)?;
        let n = parent.order();
        if current.len() >= need && Self::min_degree_ok(parent, current) {
            out.push(current.clone());
        }
        if current.len() == cap {
            return Ok(());
        }
        // not enough vertices left to reach `need`
        if current.len() + (n - from) < need {
            return Ok(());
        }
        for x in from..n {
            if current.iter().all(|&y| far[x][y]) {
                current.push(x);
                self.grow(parent, far, need, cap, x + 1, current, out)?;
                current.pop();
            }
        }
        Ok(())
    }

    fn min_degree_ok(parent: &Graph, set: &[usize]) -> bool {
        let d = set.len();
        (0..parent.order()).all(|x| {
            let deg = parent.degree(x) + usize::from(set.contains(&x));
            deg >= d
        })
    }
}

/// Exact maximum size of an `n`-vertex graph of girth at least 5.
///
/// Returns a [`BoundKind::Lower`] record when `budget` extension steps do not
/// suffice; such a record never claims exactness.
pub fn exact_max_size(n: usize, budget: u64) -> BoundRecord {
    let mut solver = ExactSolver {
        budget,
        spent: 0,
        memo: HashMap::new(),
    };
    let mut best = Graph::empty(0).expect("order 0");
    for k in 1..=n {
        // ex is non-decreasing, so graphs beating the previous optimum suffice
        match solver.family(k, best.size() as i64) {
            Ok(family) => {
                best = family
                    .into_iter()
                    .max_by_key(|g| g.size())
                    .expect("the previous optimum plus an isolated vertex qualifies");
            }
            Err(OutOfBudget) => {
                let lower = best.with_isolated_vertex().expect("small order");
                let mut lower = (k..n).fold(lower, |g, _| g.with_isolated_vertex().unwrap());
                fill_greedily(&mut lower);
                return BoundRecord {
                    n,
                    kind: BoundKind::Lower,
                    value: lower.size(),
                    witness: canonical_form(&lower).ok(),
                };
            }
        }
    }
    BoundRecord {
        n,
        kind: BoundKind::Exact,
        value: best.size(),
        witness: canonical_form(&best).ok(),
    }
}

fn fill_greedily(g: &mut Graph) {
    while let Some(&p) = g.legal_edges().first() {
        g.insert_unchecked(p);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessVerdict {
    pub order_ok: bool,
    pub size_ok: bool,
    pub girth_ok: bool,
}

impl WitnessVerdict {
    pub fn passed(&self) -> bool {
        self.order_ok && self.size_ok && self.girth_ok
    }
}

pub fn verify_witness(
    g: &Graph,
    claimed_n: usize,
    claimed_size: usize,
    girth_threshold: usize,
) -> WitnessVerdict {
    WitnessVerdict {
        order_ok: g.order() == claimed_n,
        size_ok: g.size() == claimed_size,
        girth_ok: g.girth_at_least(girth_threshold),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSetReport {
    pub order: usize,
    pub degree_set: Vec<usize>,
    /// `None` for forests.
    pub girth: Option<usize>,
}

impl DegreeSetReport {
    /// Exactly two degrees `r < m` and girth exactly 5.
    pub fn is_biregular_candidate(&self) -> bool {
        self.degree_set.len() == 2 && self.girth == Some(DEFAULT_GIRTH)
    }
}

pub fn degree_set_report(g: &Graph) -> DegreeSetReport {
    let set: BTreeSet<usize> = g.degrees().collect();
    DegreeSetReport {
        order: g.order(),
        degree_set: set.into_iter().collect(),
        girth: g.girth(),
    }
}

/// Smallest order seen for each bi-regular degree set `{r, m}` of girth 5.
pub fn biregular_upper_bounds<'a, I>(graphs: I) -> BTreeMap<(usize, usize), usize>
where
    I: IntoIterator<Item = &'a Graph>,
{
    let mut out = BTreeMap::new();
    for g in graphs {
        let report = degree_set_report(g);
        if report.is_biregular_candidate() {
            let key = (report.degree_set[0], report.degree_set[1]);
            out.entry(key)
                .and_modify(|n: &mut usize| *n = (*n).min(report.order))
                .or_insert(report.order);
        }
    }
    out
}
