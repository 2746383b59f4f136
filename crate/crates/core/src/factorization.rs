//! 1-factorizations of regular graphs and the flawless property.
//!
//! A 1-factorization is flawless when every pair of factors forms a
//! Hamiltonian cycle and every Hamiltonian cycle of the host is such a pair.
//! Since an even cycle splits into perfect matchings in exactly one way,
//! a flawless `k`-factorization forces exactly `C(k, 2)` Hamiltonian cycles;
//! the search uses that count as a filter before looking at factorizations.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::generate::{enumerate_graphs_with, EnumBudget, GraphConstraint};
use crate::graph::Graph;
use crate::hamilton::{count_hamiltonian_cycles_up_to, enumerate_hamiltonian_cycles, CycleWitness};

pub type Matching = Vec<(usize, usize)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneFactorization {
    pub host: Graph,
    /// Edges `(u, v)` with `u < v`, sorted within each factor.
    pub factors: Vec<Matching>,
}

fn normalize(m: &[(usize, usize)]) -> Matching {
    let mut m: Matching = m.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    m.sort_unstable();
    m
}

/// Checks that `m` is a perfect matching of `host`; returns its vertex cover mask.
fn check_matching(host: &Graph, m: &[(usize, usize)]) -> Result<()> {
    let mut seen = 0u64;
    for &(a, b) in m {
        if a >= host.order() || b >= host.order() || !host.has_edge(a, b) {
            return Err(Error::InvalidFactorization(format!("({a}, {b}) is not an edge of the host")));
        }
        if seen >> a & 1 == 1 || seen >> b & 1 == 1 {
            return Err(Error::InvalidFactorization(format!("({a}, {b}) reuses a matched vertex")));
        }
        seen |= 1 << a | 1 << b;
    }
    if seen != host.vertices().bits() {
        return Err(Error::InvalidFactorization("matching is not perfect".into()));
    }
    Ok(())
}

impl OneFactorization {
    /// Validates that `factors` are perfect matchings partitioning the edges of `host`.
    pub fn new(host: Graph, factors: Vec<Matching>) -> Result<Self> {
        let factors: Vec<Matching> = factors.iter().map(|m| normalize(m)).collect();
        let mut all = HashSet::new();
        for m in &factors {
            check_matching(&host, m)?;
            for &e in m {
                if !all.insert(e) {
                    return Err(Error::InvalidFactorization(format!("edge {e:?} lies in two factors")));
                }
            }
        }
        if all.len() != host.edge_count() {
            return Err(Error::InvalidFactorization(format!(
                "factors cover {} of {} edges",
                all.len(),
                host.edge_count()
            )));
        }
        Ok(OneFactorization { host, factors })
    }

    pub fn k(&self) -> usize {
        self.factors.len()
    }
}

/// Whether the union of two disjoint perfect matchings is one spanning cycle.
pub fn is_perfect_pair(host: &Graph, m1: &[(usize, usize)], m2: &[(usize, usize)]) -> Result<bool> {
    check_matching(host, m1)?;
    check_matching(host, m2)?;
    let a = normalize(m1);
    if normalize(m2).iter().any(|e| a.binary_search(e).is_ok()) {
        return Err(Error::InvalidFactorization("matchings share an edge".into()));
    }
    Ok(union_is_hamiltonian(host.order(), m1, m2))
}

fn union_is_hamiltonian(n: usize, m1: &[(usize, usize)], m2: &[(usize, usize)]) -> bool {
    let mut g = Graph::empty(n).expect("order already validated");
    for &(a, b) in m1.iter().chain(m2) {
        g.add_edge(a, b).expect("valid edge");
    }
    g.is_connected()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FlawlessVerdict {
    pub is_perfect: bool,
    pub is_flawless: bool,
    /// First factor pair (by index) whose union is not Hamiltonian.
    pub bad_pair: Option<(usize, usize)>,
    /// A Hamiltonian cycle that is not the union of two factors.
    pub uncovered_cycle: Option<CycleWitness>,
    pub hamiltonian_count: usize,
}

pub fn check_flawless(fact: &OneFactorization) -> FlawlessVerdict {
    let n = fact.host.order();
    let k = fact.k();
    let mut bad_pair = None;
    let mut unions = HashSet::new();
    for i in 0..k {
        for j in i + 1..k {
            if bad_pair.is_none() && !union_is_hamiltonian(n, &fact.factors[i], &fact.factors[j]) {
                bad_pair = Some((i, j));
            }
            let mut u: Matching = fact.factors[i].iter().chain(&fact.factors[j]).copied().collect();
            u.sort_unstable();
            unions.insert(u);
        }
    }
    let cycles = enumerate_hamiltonian_cycles(&fact.host);
    let uncovered_cycle = cycles.iter().find(|c| !unions.contains(&c.edges)).cloned();
    let is_perfect = bad_pair.is_none();
    FlawlessVerdict {
        is_perfect,
        is_flawless: is_perfect && uncovered_cycle.is_none(),
        bad_pair,
        uncovered_cycle,
        hamiltonian_count: cycles.len(),
    }
}

/// Host degree for a factorization search, validating the preconditions.
fn factor_degree(host: &Graph) -> Result<usize> {
    if host.order() % 2 == 1 {
        return Err(Error::InvalidParams(format!("host has odd order {}", host.order())));
    }
    host.regular_degree()
        .ok_or_else(|| Error::InvalidParams("host is not regular".into()))
}

struct Colorer<'a> {
    edges: Vec<(usize, usize)>,
    k: usize,
    /// colours used at each vertex
    used: Vec<u64>,
    colour: Vec<usize>,
    nodes: u64,
    cap: u64,
    exhausted: bool,
    visit: &'a mut dyn FnMut(&[Matching]) -> bool,
}

impl Colorer<'_> {
    /// Returns `false` to stop the whole search.
    fn run(&mut self, idx: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.cap {
            self.exhausted = true;
            return false;
        }
        if idx == self.edges.len() {
            let mut factors = vec![Vec::new(); self.k];
            for (e, &c) in self.edges.iter().zip(&self.colour) {
                factors[c].push(*e);
            }
            return (self.visit)(&factors);
        }
        let (u, v) = self.edges[idx];
        // edges at vertex 0 come first and take colours 0, 1, ... in order
        let choices: u64 = if u == 0 { 1 << idx } else { !(self.used[u] | self.used[v]) & ((1u64 << self.k) - 1) };
        let mut c = choices;
        while c != 0 {
            let col = c.trailing_zeros() as usize;
            c &= c - 1;
            self.used[u] |= 1 << col;
            self.used[v] |= 1 << col;
            self.colour[idx] = col;
            let go = self.run(idx + 1);
            self.used[u] &= !(1 << col);
            self.used[v] &= !(1 << col);
            if !go {
                return false;
            }
        }
        true
    }
}

/// Calls `visit` on each 1-factorization (as an unordered partition, factors
/// indexed by the colour of vertex 0's edges); stops early when it returns
/// `false`. Returns the node count.
fn for_each_factorization(host: &Graph, node_cap: u64, visit: &mut dyn FnMut(&[Matching]) -> bool) -> Result<u64> {
    let k = factor_degree(host)?;
    if k > 63 {
        return Err(Error::InvalidParams("degree too large".into()));
    }
    let mut c = Colorer {
        edges: host.edges(),
        k,
        used: vec![0; host.order()],
        colour: vec![0; host.edge_count()],
        nodes: 0,
        cap: node_cap,
        exhausted: false,
        visit,
    };
    c.run(0);
    if c.exhausted {
        return Err(Error::Budget(format!("1-factorization search exceeded {node_cap} nodes")));
    }
    Ok(c.nodes)
}

/// Every 1-factorization of a regular host of even order, each once.
pub fn enumerate_one_factorizations(host: &Graph, node_cap: u64) -> Result<Vec<OneFactorization>> {
    let mut out = Vec::new();
    for_each_factorization(host, node_cap, &mut |f| {
        out.push(OneFactorization { host: host.clone(), factors: f.to_vec() });
        true
    })?;
    Ok(out)
}

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Outcome of a flawless search on one host.
#[derive(Clone, Debug)]
pub struct HostSearch {
    pub witness: Option<OneFactorization>,
    /// Hamiltonian cycles, counted up to `C(k, 2) + 1`.
    pub hamiltonian_count: usize,
    pub factorizations_tried: u64,
    pub nodes: u64,
}

/// Hamiltonian-count filter, then factorization search on one host.
/// Hosts whose count differs from `C(k, 2)` are rejected without
/// enumerating any factorization.
pub fn search_host(host: &Graph, node_cap: u64) -> Result<HostSearch> {
    let k = factor_degree(host)?;
    let target = binom2(k);
    let hamiltonian_count = count_hamiltonian_cycles_up_to(host, target + 1);
    let mut out = HostSearch { witness: None, hamiltonian_count, factorizations_tried: 0, nodes: 0 };
    if hamiltonian_count != target {
        return Ok(out);
    }
    let mut witness = None;
    let mut tried = 0;
    out.nodes = for_each_factorization(host, node_cap, &mut |f| {
        tried += 1;
        let fact = OneFactorization { host: host.clone(), factors: f.to_vec() };
        if check_flawless(&fact).is_flawless {
            witness = Some(fact);
            return false;
        }
        true
    })?;
    out.witness = witness;
    out.factorizations_tried = tried;
    Ok(out)
}

/// A flawless 1-factorization of `host`, if one exists.
pub fn has_flawless_1f(host: &Graph, node_cap: u64) -> Result<Option<OneFactorization>> {
    Ok(search_host(host, node_cap)?.witness)
}

#[derive(Clone, Debug)]
pub struct FSearchOptions {
    /// Largest degree to try (default `n - 1`).
    pub k_max: Option<usize>,
    /// Node cap for each host's factorization search.
    pub node_cap: u64,
    pub workers: usize,
    /// Largest `n` accepted.
    pub max_order: usize,
}

impl Default for FSearchOptions {
    fn default() -> Self {
        FSearchOptions { k_max: None, node_cap: 50_000_000, workers: 0, max_order: 8 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KStats {
    pub k: usize,
    /// Isomorphism classes of `k`-regular graphs on `n` vertices.
    pub graphs: usize,
    /// Classes with exactly `C(k, 2)` Hamiltonian cycles.
    pub passed_count_filter: usize,
    pub factorizations_tried: u64,
    pub found: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FSearchResult {
    pub n: usize,
    pub f: usize,
    pub witness: OneFactorization,
    pub per_k: Vec<KStats>,
}

/// Largest `k` such that some `k`-regular graph on `n` vertices has a
/// flawless 1-factorization, scanning `k` downwards.
///
/// Among witnesses at the optimal `k`, the host with the smallest canonical
/// form is reported (with its first flawless factorization in search order),
/// so the result does not depend on `workers`.
pub fn f_of_n(n: usize, opts: &FSearchOptions) -> Result<FSearchResult> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidParams(format!("f(n) needs an even n >= 4, got {n}")));
    }
    if n > opts.max_order {
        return Err(Error::Budget(format!("n = {n} exceeds the configured maximum {}", opts.max_order)));
    }
    let k_max = opts.k_max.unwrap_or(n - 1).min(n - 1);
    let budget = EnumBudget { max_order_all: n, max_order_regular: n.max(EnumBudget::default().max_order_regular) };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
    let mut per_k = Vec::new();
    let mut undecided: Option<usize> = None;
    for k in (0..=k_max).rev() {
        let mut hosts: Vec<(Vec<u8>, Graph)> = enumerate_graphs_with(n, GraphConstraint::Regular(k), budget, None)?
            .map(|g| (canonical_form(&g).expect("n within cap").bytes, g))
            .collect();
        hosts.sort_by(|a, b| a.0.cmp(&b.0));
        let graphs = hosts.len();
        let results: Vec<Result<HostSearch>> =
            pool.install(|| hosts.par_iter().map(|(_, g)| search_host(g, opts.node_cap)).collect());
        let mut stats = KStats { k, graphs, passed_count_filter: 0, factorizations_tried: 0, found: false };
        let mut witness = None;
        let mut exhausted = false;
        // hosts are in canonical order, so the first witness is the tie-break winner
        for res in results {
            match res {
                Ok(h) => {
                    stats.passed_count_filter += usize::from(h.hamiltonian_count == binom2(k));
                    stats.factorizations_tried += h.factorizations_tried;
                    if witness.is_none() {
                        witness = h.witness;
                    }
                }
                Err(Error::Budget(_)) => exhausted = true,
                Err(e) => return Err(e),
            }
        }
        stats.found = witness.is_some();
        per_k.push(stats);
        if let Some(w) = witness {
            if let Some(u) = undecided {
                return Err(Error::FlawlessBudget { n, lower_bound: k, undecided_k: u });
            }
            return Ok(FSearchResult { n, f: k, witness: w, per_k });
        }
        if exhausted {
            undecided = Some(k);
        }
    }
    // k = 0 always succeeds (no factors, no Hamiltonian cycle), so this is
    // reached only when every level up to k_max ran out of budget.
    Err(Error::FlawlessBudget { n, lower_bound: 0, undecided_k: undecided.unwrap_or(0) })
}
