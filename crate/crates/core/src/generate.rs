//! Isomorph-free graph generation by canonical vertex augmentation.
//!
//! A graph on `m + 1` vertices is accepted as a child of its parent `P`
//! (obtained by appending a new vertex to `P`) only if deleting the vertex the
//! canonical labelling places last yields a graph isomorphic to `P`. Each
//! isomorphism class therefore has exactly one parent class; duplicates under
//! the same parent are removed with a per-parent table, so memory stays
//! bounded by one generation level at a time.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_bytes, canonical_rows};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphConstraint {
    All,
    Regular(usize),
    /// Multiset of degrees (any order).
    DegreeSequence(Vec<usize>),
}

/// Order caps for the generator.
#[derive(Clone, Copy, Debug)]
pub struct EnumBudget {
    pub max_order_all: usize,
    pub max_order_regular: usize,
}

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget { max_order_all: 10, max_order_regular: 12 }
    }
}

/// A necessary condition checked on every intermediate graph.
pub type Prune<'a> = dyn Fn(&Graph) -> bool + Sync + 'a;

#[derive(Clone)]
struct Frame {
    children: Vec<Graph>,
    next: usize,
}

/// Deterministic stream of one representative per isomorphism class.
pub struct GraphStream<'a> {
    order: usize,
    filter: Filter,
    complement: bool,
    extra: Option<&'a Prune<'a>>,
    stack: Vec<Frame>,
    started: bool,
    /// Graphs whose children were generated (search nodes).
    pub nodes: u64,
}

#[derive(Clone, Debug)]
enum Filter {
    All,
    /// target degree multiset, sorted descending
    Degrees(Vec<usize>),
}

pub fn enumerate_graphs(order: usize, constraint: GraphConstraint) -> Result<GraphStream<'static>> {
    enumerate_graphs_with(order, constraint, EnumBudget::default(), None)
}

/// As [`enumerate_graphs`], with explicit caps and an optional hereditary
/// pruning predicate: if it returns `false` for a graph, no graph containing
/// it as an induced subgraph is generated.
pub fn enumerate_graphs_with<'a>(
    order: usize,
    constraint: GraphConstraint,
    budget: EnumBudget,
    prune: Option<&'a Prune<'a>>,
) -> Result<GraphStream<'a>> {
    let (cap, filter, complement) = match &constraint {
        GraphConstraint::All => (budget.max_order_all, Filter::All, false),
        GraphConstraint::Regular(k) => {
            if order > 0 && *k >= order {
                return Err(Error::InvalidParams(format!("no {k}-regular graph on {order} vertices")));
            }
            // Generate the sparser of the graph and its complement. The
            // extra predicate sees the generated graph, so complementing is
            // only allowed without one.
            let flip = prune.is_none() && order > 0 && 2 * k > order - 1;
            let kk = if flip { order - 1 - k } else { *k };
            (budget.max_order_regular, Filter::Degrees(vec![kk; order]), flip)
        }
        GraphConstraint::DegreeSequence(ds) => {
            if ds.len() != order {
                return Err(Error::InvalidParams(format!(
                    "degree sequence has {} entries, order is {order}",
                    ds.len()
                )));
            }
            let mut ds = ds.clone();
            ds.sort_unstable_by(|a, b| b.cmp(a));
            (budget.max_order_regular, Filter::Degrees(ds), false)
        }
    };
    if order > cap {
        return Err(Error::Budget(format!(
            "graph enumeration for order {order} exceeds the configured cap {cap} ({constraint:?})"
        )));
    }
    Ok(GraphStream { order, filter, complement, extra: prune, stack: Vec::new(), started: false, nodes: 0 })
}

impl Filter {
    /// Can `g` (on `m` vertices) still be extended to a graph of `n` vertices
    /// meeting the constraint? Only necessary conditions, all hereditary.
    fn feasible(&self, g: &Graph, n: usize) -> bool {
        let Filter::Degrees(target) = self else {
            return true;
        };
        let m = g.order();
        let rest = n - m;
        // Matching the largest current degree with the largest target is
        // necessary for any assignment of targets to current vertices.
        let mut cur = g.degrees();
        cur.sort_unstable_by(|a, b| b.cmp(a));
        if cur.iter().zip(target).any(|(c, t)| c > t) {
            return false;
        }
        let k = target[0];
        if target.iter().any(|&t| t != k) {
            return true;
        }
        // Regular target: the deficit D must be filled by edges to the
        // `rest` outside vertices, which then need `rest*k - D` endpoints
        // among themselves.
        let mut deficit = 0usize;
        for c in &cur {
            if k - c > rest {
                return false;
            }
            deficit += k - c;
        }
        let outside = rest * k;
        if deficit > outside {
            return false;
        }
        let inner = outside - deficit;
        inner.is_multiple_of(2) && inner <= rest * rest.saturating_sub(1)
    }

    fn accepts(&self, g: &Graph) -> bool {
        match self {
            Filter::All => true,
            Filter::Degrees(target) => {
                let mut d = g.degrees();
                d.sort_unstable_by(|a, b| b.cmp(a));
                &d == target
            }
        }
    }
}

impl<'a> GraphStream<'a> {
    /// Starts the stream over from the beginning.
    pub fn restart(&mut self) {
        self.stack.clear();
        self.started = false;
        self.nodes = 0;
    }

    fn admissible(&self, g: &Graph) -> bool {
        self.filter.feasible(g, self.order) && self.extra.is_none_or(|p| p(g))
    }

    /// Canonical children of `parent` (itself canonically labelled) on one more vertex.
    fn children(&mut self, parent: &Graph) -> Vec<Graph> {
        self.nodes += 1;
        let m = parent.order();
        let parent_key = crate::io::to_graph6(parent).into_bytes();
        let mut kids: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
        for bits in 0..(1u64 << m) {
            let child = parent
                .with_vertex(VertexSet(bits))
                .expect("order checked against cap");
            if !self.admissible(&child) {
                continue;
            }
            let (rows, pos) = canonical_rows(&child);
            let last = pos.iter().position(|&p| p == m).unwrap();
            if last != m && canonical_bytes(&child.delete_vertex(last)) != parent_key {
                continue;
            }
            let canon = Graph::from_rows_unchecked(rows);
            let key = crate::io::to_graph6(&canon).into_bytes();
            kids.entry(key).or_insert(canon);
        }
        kids.into_values().collect()
    }

    fn emit(&self, g: Graph) -> Graph {
        if self.complement {
            let c = g.complement();
            Graph::from_rows_unchecked(canonical_rows(&c).0)
        } else {
            g
        }
    }
}

impl Iterator for GraphStream<'_> {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if !self.started {
            self.started = true;
            let root = Graph::empty(0).unwrap();
            if !self.admissible(&root) {
                return None;
            }
            if self.order == 0 {
                return self.filter.accepts(&root).then(|| self.emit(root));
            }
            let children = self.children(&root);
            self.stack.push(Frame { children, next: 0 });
        }
        loop {
            let depth = self.stack.len();
            let frame = self.stack.last_mut()?;
            if frame.next == frame.children.len() {
                self.stack.pop();
                continue;
            }
            let g = frame.children[frame.next].clone();
            frame.next += 1;
            // children of the root have order 1, so depth == order of g
            if depth == self.order {
                if self.filter.accepts(&g) {
                    return Some(self.emit(g));
                }
                continue;
            }
            let children = self.children(&g);
            self.stack.push(Frame { children, next: 0 });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Brute force: all labelled graphs, deduplicated by canonical form.
    fn brute_classes(n: usize) -> HashSet<Vec<u8>> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let mut out = HashSet::new();
        for mask in 0u64..(1 << pairs.len()) {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            out.insert(canonical_bytes(&Graph::from_edges(n, &edges).unwrap()));
        }
        out
    }

    #[test]
    fn matches_brute_force_up_to_six() {
        for n in 0..=6 {
            let got: Vec<Vec<u8>> = enumerate_graphs(n, GraphConstraint::All)
                .unwrap()
                .map(|g| canonical_bytes(&g))
                .collect();
            let set: HashSet<_> = got.iter().cloned().collect();
            assert_eq!(set.len(), got.len(), "duplicates at n={n}");
            assert_eq!(set, brute_classes(n), "n={n}");
        }
    }

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (0..=7)
            .map(|n| enumerate_graphs(n, GraphConstraint::All).unwrap().count())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn regular_examples() {
        let k5: Vec<Graph> = enumerate_graphs(6, GraphConstraint::Regular(5)).unwrap().collect();
        assert_eq!(k5.len(), 1);
        assert_eq!(k5[0].edge_count(), 15);
        let four: Vec<Graph> = enumerate_graphs(6, GraphConstraint::Regular(4)).unwrap().collect();
        assert_eq!(four.len(), 1);
        assert!(crate::canon::are_isomorphic(&four[0], &Graph::complete_multipartite(&[2, 2, 2]).unwrap()).unwrap());
        // cubic graphs, connected or not: 2 on 6 vertices, 5 + 1 on 8, 19 + 2 on 10
        assert_eq!(enumerate_graphs(6, GraphConstraint::Regular(3)).unwrap().count(), 2);
        assert_eq!(enumerate_graphs(8, GraphConstraint::Regular(3)).unwrap().count(), 6);
        let ten: Vec<Graph> = enumerate_graphs(10, GraphConstraint::Regular(3)).unwrap().collect();
        assert_eq!(ten.len(), 21);
        assert_eq!(ten.iter().filter(|g| g.is_connected()).count(), 19);
        // 4-regular on 8 vertices: 6
        assert_eq!(enumerate_graphs(8, GraphConstraint::Regular(4)).unwrap().count(), 6);
        assert_eq!(enumerate_graphs(5, GraphConstraint::Regular(3)).unwrap().count(), 0);
    }

    #[test]
    fn degree_sequence_filter() {
        // degree sequence (2,2,1,1): only P4
        let gs: Vec<Graph> = enumerate_graphs(4, GraphConstraint::DegreeSequence(vec![1, 2, 2, 1]))
            .unwrap()
            .collect();
        assert_eq!(gs.len(), 1);
        assert!(crate::canon::are_isomorphic(&gs[0], &Graph::path(4).unwrap()).unwrap());
    }

    #[test]
    fn budget_errors() {
        assert!(matches!(enumerate_graphs(11, GraphConstraint::All), Err(Error::Budget(_))));
        assert!(matches!(enumerate_graphs(13, GraphConstraint::Regular(3)), Err(Error::Budget(_))));
    }

    #[test]
    fn restartable_and_deterministic() {
        let mut s = enumerate_graphs(5, GraphConstraint::All).unwrap();
        let a: Vec<Graph> = s.by_ref().collect();
        s.restart();
        let b: Vec<Graph> = s.collect();
        assert_eq!(a, b);
        let c: Vec<Graph> = enumerate_graphs(5, GraphConstraint::All).unwrap().collect();
        assert_eq!(a, c);
    }
}
