//! Enumeration of pattern copies in a host graph.
//!
//! Pattern vertices are mapped one at a time in a connected order; the
//! candidate set for the next pattern vertex is the intersection of the
//! host neighbourhoods (and, for induced copies, non-neighbourhoods) of the
//! already-mapped vertices. Induced copies are reported as vertex sets, so
//! automorphic images of the same copy collapse to one entry.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::graph::{low_mask, Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    /// `host[S]` is isomorphic to the pattern.
    Induced,
    /// `host[S]` contains the pattern as a (not necessarily induced) subgraph.
    Span,
}

impl std::str::FromStr for CountMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "induced" => Ok(CountMode::Induced),
            "span" => Ok(CountMode::Span),
            _ => Err(crate::Error::InvalidParams(format!("unknown mode '{s}' (induced|span)"))),
        }
    }
}

/// Pattern vertex order: start from a maximum-degree vertex, then repeatedly
/// take the vertex with most already-ordered neighbours.
fn pattern_order(p: &Graph) -> Vec<usize> {
    let r = p.order();
    let mut order = Vec::with_capacity(r);
    let mut placed = 0u64;
    while order.len() < r {
        let next = (0..r)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| ((p.rows()[v] & placed).count_ones(), p.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        order.push(next);
        placed |= 1 << next;
    }
    order
}

struct Matcher<'a> {
    host: &'a Graph,
    /// per step: (indices of earlier steps adjacent, indices of earlier steps non-adjacent)
    steps: Vec<(Vec<usize>, Vec<usize>)>,
    induced: bool,
    mapped: Vec<usize>,
}

impl<'a> Matcher<'a> {
    fn new(host: &'a Graph, pattern: &Graph, induced: bool) -> Self {
        let order = pattern_order(pattern);
        let steps = order
            .iter()
            .enumerate()
            .map(|(i, &pv)| {
                let (adj, non): (Vec<usize>, Vec<usize>) =
                    (0..i).partition(|&j| pattern.has_edge(pv, order[j]));
                (adj, non)
            })
            .collect();
        Matcher { host, steps, induced, mapped: Vec::with_capacity(order.len()) }
    }

    fn candidates(&self, used: u64) -> u64 {
        let i = self.mapped.len();
        let rows = self.host.rows();
        let mut cand = low_mask(self.host.order()) & !used;
        let (adj, non) = &self.steps[i];
        for &j in adj {
            cand &= rows[self.mapped[j]];
        }
        if self.induced {
            for &j in non {
                cand &= !rows[self.mapped[j]];
            }
        }
        cand
    }

    fn run(&mut self, used: u64, visit: &mut dyn FnMut(u64)) {
        if self.mapped.len() == self.steps.len() {
            visit(used);
            return;
        }
        let mut cand = self.candidates(used);
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.mapped.push(v);
            self.run(used | 1 << v, visit);
            self.mapped.pop();
        }
    }
}

/// All vertex sets `S` with `host[S]` isomorphic to `pattern`, sorted by bit mask.
pub fn enumerate_induced_copies(host: &Graph, pattern: &Graph) -> Vec<VertexSet> {
    copy_sets(host, pattern, CountMode::Induced)
}

/// Vertex sets of copies: induced copies, or in span mode the `r`-sets
/// whose induced subgraph contains the pattern.
pub fn copy_sets(host: &Graph, pattern: &Graph, mode: CountMode) -> Vec<VertexSet> {
    if pattern.order() > host.order() {
        return Vec::new();
    }
    let mut sets = HashSet::new();
    let mut m = Matcher::new(host, pattern, mode == CountMode::Induced);
    m.run(0, &mut |s| {
        sets.insert(s);
    });
    let mut out: Vec<VertexSet> = sets.into_iter().map(VertexSet).collect();
    out.sort_unstable();
    out
}

/// Number of labelled embeddings (injective maps preserving edges, and
/// non-edges too when `induced`).
pub fn count_embeddings(host: &Graph, pattern: &Graph, induced: bool) -> u64 {
    if pattern.order() > host.order() {
        return 0;
    }
    let mut count = 0u64;
    let mut m = Matcher::new(host, pattern, induced);
    m.run(0, &mut |_| count += 1);
    count
}

pub fn automorphism_count(pattern: &Graph) -> u64 {
    count_embeddings(pattern, pattern, true)
}

/// Induced mode: number of induced copies. Span mode: number of subgraph
/// copies of the pattern, i.e. embeddings divided by automorphisms.
pub fn count_copies(host: &Graph, pattern: &Graph, mode: CountMode) -> u64 {
    match mode {
        CountMode::Induced => copy_sets(host, pattern, CountMode::Induced).len() as u64,
        CountMode::Span => count_embeddings(host, pattern, false) / automorphism_count(pattern),
    }
}
