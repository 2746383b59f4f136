//! Exact small-scale optimizers and construction verification.

pub mod clique;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::canon::canonical_bytes;
use crate::constructions::{ConstructionOutput, ExpectedCount};
use crate::copies::{copy_sets, count_copies, CountMode};
use crate::error::{Error, Result, MAX_ORDER};
use crate::family::{
    ap_envelope, associated_family, atom_decomposition, common_core, def_bound, is_l_intersecting, link_family,
    IntersectionSpec, SetFamily, Violation,
};
use crate::generate::{enumerate_graphs_with, EnumBudget, GraphConstraint, Prune};
use crate::graph::{Graph, VertexSet};
use clique::{max_clique, BitGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Graph(Graph),
    Family(SetFamily),
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(1))?;
        match self {
            Witness::Graph(g) => m.serialize_entry("graph6", g)?,
            Witness::Family(f) => m.serialize_entry("family", &f.edges())?,
        }
        m.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchOutcome {
    /// The optimum, or only a lower bound when `budget_exhausted` is set.
    pub value: u64,
    pub witnesses: Vec<Witness>,
    pub nodes_explored: u64,
    pub budget_exhausted: bool,
}

fn binom(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// All `r`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, r: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    if r > n {
        return out;
    }
    loop {
        out.push(VertexSet::from_slice(&idx));
        let Some(i) = (0..r).rev().find(|&i| idx[i] < n - r + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct PhiOptions {
    /// Largest allowed `C(n, r)`.
    pub max_subsets: usize,
    /// Node cap for each branch-and-bound task.
    pub node_cap: u64,
    pub workers: usize,
}

impl Default for PhiOptions {
    fn default() -> Self {
        PhiOptions { max_subsets: 2000, node_cap: 10_000_000, workers: 0 }
    }
}

/// Largest `L`-intersecting `r`-uniform family on `n` points, as a maximum
/// clique of the graph on `r`-subsets joining pairs that meet in `L`.
pub fn phi_exact(n: usize, spec: &IntersectionSpec, opts: &PhiOptions) -> Result<SearchOutcome> {
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge { order: n, max: MAX_ORDER });
    }
    let r = spec.r();
    let total = binom(n, r).filter(|&t| t <= opts.max_subsets).ok_or_else(|| {
        Error::Budget(format!("C({n}, {r}) exceeds the cap of {} subsets", opts.max_subsets))
    })?;
    let sets = subsets(n, r);
    debug_assert_eq!(sets.len(), total);
    let mut g = BitGraph::new(total);
    for i in 0..total {
        for j in i + 1..total {
            if spec.allows(sets[i].intersection(sets[j]).len()) {
                g.add_edge(i, j);
            }
        }
    }
    let res = max_clique(&g, opts.node_cap, opts.workers);
    let family = SetFamily::new(n, r, res.clique.iter().map(|&i| sets[i]).collect())?;
    Ok(SearchOutcome {
        value: res.clique.len() as u64,
        witnesses: vec![Witness::Family(family)],
        nodes_explored: res.nodes,
        budget_exhausted: res.exhausted,
    })
}

#[derive(Clone, Debug)]
pub struct PsiOptions {
    pub mode: CountMode,
    /// Required size of the common intersection of all copies.
    pub min_core: usize,
    /// Skip extensions of graphs whose copies already violate `L`.
    pub prune: bool,
    pub workers: usize,
    pub witness_cap: usize,
    /// Largest `n` accepted.
    pub max_order: usize,
    /// Maximum number of complete graphs to evaluate.
    pub graph_budget: Option<u64>,
}

impl Default for PsiOptions {
    fn default() -> Self {
        PsiOptions {
            mode: CountMode::Induced,
            min_core: 0,
            prune: false,
            workers: 0,
            witness_cap: 1,
            max_order: 9,
            graph_budget: None,
        }
    }
}

const BATCH: usize = 512;

/// Largest pattern count over `n`-vertex graphs whose copies form an
/// `L`-intersecting family (with common core of size at least `min_core`).
///
/// Ties between witnesses are broken by smallest canonical form.
pub fn psi_exact(n: usize, pattern: &Graph, spec: &IntersectionSpec, opts: &PsiOptions) -> Result<SearchOutcome> {
    if pattern.order() != spec.r() {
        return Err(Error::InvalidParams(format!(
            "pattern has {} vertices, spec expects r = {}",
            pattern.order(),
            spec.r()
        )));
    }
    if n > opts.max_order {
        return Err(Error::Budget(format!("n = {n} exceeds the configured maximum {}", opts.max_order)));
    }
    let mode = opts.mode;
    let consistent = |g: &Graph| -> bool {
        let fam = copy_sets(g, pattern, mode);
        fam.iter()
            .enumerate()
            .all(|(i, a)| fam[i + 1..].iter().all(|b| spec.allows(a.intersection(*b).len())))
    };
    let prune: Option<&Prune> = if opts.prune { Some(&consistent) } else { None };
    let budget = EnumBudget { max_order_all: opts.max_order, ..EnumBudget::default() };
    let mut stream = enumerate_graphs_with(n, GraphConstraint::All, budget, prune)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;

    let evaluate = |g: &Graph| -> Option<u64> {
        let sets = copy_sets(g, pattern, mode);
        let ok = sets
            .iter()
            .enumerate()
            .all(|(i, a)| sets[i + 1..].iter().all(|b| spec.allows(a.intersection(*b).len())));
        if !ok {
            return None;
        }
        if opts.min_core > 0 {
            let core = sets.iter().fold(g.vertices(), |acc, s| acc.intersection(*s));
            if !sets.is_empty() && core.len() < opts.min_core {
                return None;
            }
        }
        Some(match mode {
            CountMode::Induced => sets.len() as u64,
            CountMode::Span => count_copies(g, pattern, CountMode::Span),
        })
    };

    let limit = opts.graph_budget.unwrap_or(u64::MAX);
    let mut evaluated = 0u64;
    let mut exhausted = false;
    let mut best_value = 0u64;
    // (canonical bytes, graph) of the best value, sorted, at most witness_cap
    let mut best: Vec<(Vec<u8>, Graph)> = Vec::new();
    let mut any = false;
    loop {
        let room = (limit - evaluated).min(BATCH as u64) as usize;
        let batch: Vec<Graph> = stream.by_ref().take(room).collect();
        if batch.is_empty() {
            break;
        }
        evaluated += batch.len() as u64;
        let scores: Vec<Option<u64>> = pool.install(|| batch.par_iter().map(evaluate).collect());
        for (g, score) in batch.into_iter().zip(scores) {
            let Some(v) = score else { continue };
            if !any || v > best_value {
                any = true;
                best_value = v;
                best.clear();
            }
            if v == best_value {
                let key = canonical_bytes(&g);
                let pos = best.partition_point(|(k, _)| *k < key);
                if pos < opts.witness_cap {
                    best.insert(pos, (key, g));
                    best.truncate(opts.witness_cap);
                }
            }
        }
        if evaluated >= limit {
            exhausted = stream.next().is_some();
            break;
        }
    }
    Ok(SearchOutcome {
        value: best_value,
        witnesses: best.into_iter().map(|(_, g)| Witness::Graph(g)).collect(),
        nodes_explored: stream.nodes + evaluated,
        budget_exhausted: exhausted,
    })
}

/// A vertex split `(X, Y)` with `X` cut into equal-size blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardPartition {
    pub x: VertexSet,
    pub y: VertexSet,
    pub blocks: Vec<VertexSet>,
}

impl StandardPartition {
    /// Validates that the blocks are disjoint, equally sized and cover `x`,
    /// and that `x` and `y` are disjoint.
    pub fn new(y: VertexSet, blocks: Vec<VertexSet>) -> Result<Self> {
        let mut x = VertexSet::EMPTY;
        for b in &blocks {
            if !x.is_disjoint(*b) || !y.is_disjoint(*b) {
                return Err(Error::InvalidParams(format!("block {b:?} overlaps another part")));
            }
            if b.len() != blocks[0].len() || b.is_empty() {
                return Err(Error::InvalidParams("blocks must be nonempty and of equal size".into()));
            }
            x = x.union(*b);
        }
        Ok(StandardPartition { x, y, blocks })
    }
}

/// Induced `C_r` whose vertex set is `y` plus exactly `s` whole blocks,
/// where `r = |y| + s * (block size)`.
pub fn count_standard(g: &Graph, part: &StandardPartition, r: usize) -> Result<u64> {
    let Some(first) = part.blocks.first() else {
        return Ok(0);
    };
    let b = first.len();
    let y = part.y.len();
    if r < y || !(r - y).is_multiple_of(b) {
        return Err(Error::InvalidParams(format!("r - |Y| = {r} - {y} is not a multiple of the block size {b}")));
    }
    let s = (r - y) / b;
    let m = part.blocks.len();
    if s > m {
        return Ok(0);
    }
    let mut count = 0;
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        let set = idx.iter().fold(part.y, |acc, &i| acc.union(part.blocks[i]));
        if g.induces_cycle(set) {
            count += 1;
        }
        let Some(i) = (0..s).rev().find(|&i| idx[i] < m - s + i) else {
            return Ok(count);
        };
        idx[i] += 1;
        for j in i + 1..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AtomSummary {
    pub w: VertexSet,
    pub d: usize,
    pub atom_count: usize,
    pub d_atoms: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphReport {
    pub count: u64,
    pub l_intersecting: bool,
    pub violation: Option<Violation>,
    pub common_core: Option<VertexSet>,
    pub atoms: Option<AtomSummary>,
    /// Exact rationals rendered as `p/q` (or an integer).
    pub def_bound: Option<String>,
    pub ap_envelope: Option<String>,
}

/// Induced-copy family of `pattern` in `g`, checked against `spec`.
pub fn check_graph(g: &Graph, pattern: &Graph, spec: &IntersectionSpec) -> Result<GraphReport> {
    let fam = associated_family(g, pattern, CountMode::Induced);
    let violation = is_l_intersecting(&fam, spec)?;
    let core = common_core(&fam).ok();
    let atoms = match (core, spec.ap_difference()) {
        (Some(core), Some(d)) if core.len() >= spec.min() => {
            let w: VertexSet = core.iter().take(spec.min()).collect();
            let link = link_family(g, pattern, w)?;
            let a = atom_decomposition(&link, w, d);
            Some(AtomSummary { w, d, atom_count: a.atoms.len(), d_atoms: a.d_atoms })
        }
        _ => None,
    };
    let n = g.order();
    Ok(GraphReport {
        count: fam.len() as u64,
        l_intersecting: violation.is_none(),
        violation,
        common_core: core,
        atoms,
        def_bound: def_bound(n, spec).ok().map(|q| q.to_string()),
        ap_envelope: ap_envelope(n, spec).ok().map(|q| q.to_string()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub name: String,
    pub expected_count: ExpectedCount,
    /// `None` when the expected count is left to the counter.
    pub count_matches: Option<bool>,
    #[serde(flatten)]
    pub report: GraphReport,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.report.l_intersecting && self.count_matches != Some(false)
    }
}

pub fn verify_construction(c: &ConstructionOutput, pattern: &Graph) -> Result<VerificationReport> {
    let report = check_graph(&c.graph, pattern, &c.spec)?;
    let count_matches = match c.expected_count {
        ExpectedCount::Exact(e) => Some(e == report.count),
        ExpectedCount::Oracle => None,
    };
    Ok(VerificationReport { name: c.name.clone(), expected_count: c.expected_count, count_matches, report })
}
