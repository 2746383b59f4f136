//! Canonical labelling by individualisation-refinement.
//!
//! The search tree is the usual one: refine the current ordered partition to
//! an equitable one, individualise each vertex of the first non-singleton
//! cell in turn, recurse. Every leaf is a discrete partition and hence a
//! relabelling; the canonical form is the lexicographically smallest relabelled
//! adjacency matrix over all leaves. Automorphisms discovered on the way
//! (two leaves giving the same matrix) prune children that lie in a common
//! orbit of the pointwise stabiliser of the current path.

use serde::Serialize;

use crate::error::{Error, Result, MAX_ORDER};
use crate::graph::{BitIter, Graph};

/// A total-order key for the isomorphism class of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm {
    /// graph6 encoding of the canonically relabelled graph.
    pub bytes: Vec<u8>,
    /// `relabeling[v]` is the canonical position of vertex `v`.
    pub relabeling: Vec<usize>,
}

impl CanonicalForm {
    /// The canonically relabelled graph.
    pub fn graph(&self, g: &Graph) -> Graph {
        g.permuted(&self.relabeling)
    }

    /// The vertex placed last by the canonical labelling.
    pub fn last_vertex(&self) -> Option<usize> {
        let n = self.relabeling.len();
        self.relabeling.iter().position(|&p| p + 1 == n)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    if g.order() > MAX_ORDER {
        return Err(Error::OrderTooLarge { order: g.order(), max: MAX_ORDER });
    }
    let (rows, relabeling) = canonical_rows(g);
    let canon = Graph::from_rows_unchecked(rows);
    Ok(CanonicalForm { bytes: crate::io::to_graph6(&canon).into_bytes(), relabeling })
}

/// Canonical key bytes only.
pub fn canonical_bytes(g: &Graph) -> Vec<u8> {
    let (rows, _) = canonical_rows(g);
    crate::io::to_graph6(&Graph::from_rows_unchecked(rows)).into_bytes()
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    for g in [g1, g2] {
        if g.order() > MAX_ORDER {
            return Err(Error::OrderTooLarge { order: g.order(), max: MAX_ORDER });
        }
    }
    if g1.order() != g2.order() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let mut d1 = g1.degrees();
    let mut d2 = g2.degrees();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(false);
    }
    Ok(canonical_rows(g1).0 == canonical_rows(g2).0)
}

/// Returns the canonical adjacency rows and the relabelling vertex -> position.
pub(crate) fn canonical_rows(g: &Graph) -> (Vec<u64>, Vec<usize>) {
    let n = g.order();
    if n <= 1 {
        return (g.rows().to_vec(), (0..n).collect());
    }
    let mut search = Search::new(g);
    let mut cells = vec![crate::graph::low_mask(n)];
    refine(g.rows(), &mut cells);
    let mut path = Vec::new();
    search.explore(cells, &mut path);
    let best = search.best.expect("search visits at least one leaf");
    (best.rows, best.pos)
}

/// Splits cells until the ordered partition is equitable.
///
/// Cells are split by neighbour counts into the splitter cell, new pieces
/// ordered by count. Depends only on the partition structure, never on labels.
fn refine(adj: &[u64], cells: &mut Vec<u64>) {
    let n = adj.len();
    let mut counts = vec![0u32; n];
    loop {
        let mut changed = false;
        let mut wi = 0;
        while wi < cells.len() {
            let w = cells[wi];
            for (v, c) in counts.iter_mut().enumerate() {
                *c = (adj[v] & w).count_ones();
            }
            let mut next: Vec<u64> = Vec::with_capacity(cells.len() + 4);
            let mut split = false;
            for &cell in cells.iter() {
                if cell & (cell - 1) == 0 {
                    next.push(cell);
                    continue;
                }
                let mut keys: Vec<u32> = BitIter(cell).map(|v| counts[v]).collect();
                keys.sort_unstable();
                keys.dedup();
                if keys.len() == 1 {
                    next.push(cell);
                    continue;
                }
                split = true;
                for k in keys {
                    let piece = BitIter(cell)
                        .filter(|&v| counts[v] == k)
                        .fold(0u64, |acc, v| acc | 1 << v);
                    next.push(piece);
                }
            }
            if split {
                *cells = next;
                changed = true;
            }
            wi += 1;
        }
        if !changed || cells.len() == n {
            break;
        }
    }
}

struct Leaf {
    rows: Vec<u64>,
    /// vertex -> position
    pos: Vec<usize>,
    /// position -> vertex
    seq: Vec<usize>,
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    first: Option<Leaf>,
    first_path: Vec<usize>,
    best: Option<Leaf>,
    /// Discovered automorphisms as vertex maps.
    autos: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        Search {
            adj: g.rows(),
            n: g.order(),
            first: None,
            first_path: Vec::new(),
            best: None,
            autos: Vec::new(),
        }
    }

    fn leaf(&self, cells: &[u64]) -> Leaf {
        let seq: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = vec![0usize; self.n];
        for (p, &v) in seq.iter().enumerate() {
            pos[v] = p;
        }
        let rows = seq
            .iter()
            .map(|&v| BitIter(self.adj[v]).fold(0u64, |acc, u| acc | 1 << pos[u]))
            .collect();
        Leaf { rows, pos, seq }
    }

    /// Orbit representatives (union-find roots) under the automorphisms that
    /// fix every vertex of `path`.
    fn orbits(&self, path: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in &self.autos {
            if path.iter().all(|&v| a[v] == v) {
                for (v, &av) in a.iter().enumerate().take(self.n) {
                    let (x, y) = (find(&mut parent, v), find(&mut parent, av));
                    if x != y {
                        parent[x.max(y)] = x.min(y);
                    }
                }
            }
        }
        (0..self.n).map(|v| find(&mut parent, v)).collect()
    }

    /// Returns `Some(level)` when the caller should unwind to `level`.
    fn explore(&mut self, cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        if cells.len() == self.n {
            return self.visit_leaf(&cells, path);
        }
        let depth = path.len();
        let (ci, target) = cells
            .iter()
            .enumerate()
            .find(|(_, c)| c.count_ones() > 1)
            .map(|(i, &c)| (i, c))
            .expect("non-discrete partition has a non-singleton cell");
        let mut explored: Vec<usize> = Vec::new();
        let mut orbit_cache: Option<(usize, Vec<usize>)> = None;
        for v in BitIter(target) {
            if !explored.is_empty() && !self.autos.is_empty() {
                let stale = orbit_cache.as_ref().is_none_or(|(k, _)| *k != self.autos.len());
                if stale {
                    orbit_cache = Some((self.autos.len(), self.orbits(path)));
                }
                let orb = &orbit_cache.as_ref().unwrap().1;
                if explored.iter().any(|&u| orb[u] == orb[v]) {
                    continue;
                }
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..ci]);
            child.push(1u64 << v);
            child.push(target & !(1u64 << v));
            child.extend_from_slice(&cells[ci + 1..]);
            refine(self.adj, &mut child);
            path.push(v);
            let jump = self.explore(child, path);
            path.pop();
            explored.push(v);
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn visit_leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let leaf = self.leaf(cells);
        let Some(first) = &self.first else {
            self.first_path = path.to_vec();
            self.best = Some(Leaf { rows: leaf.rows.clone(), pos: leaf.pos.clone(), seq: leaf.seq.clone() });
            self.first = Some(leaf);
            return None;
        };
        if leaf.rows == first.rows {
            let auto: Vec<usize> = (0..self.n).map(|v| first.seq[leaf.pos[v]]).collect();
            self.autos.push(auto);
            let common = path
                .iter()
                .zip(&self.first_path)
                .take_while(|(a, b)| a == b)
                .count();
            return Some(common);
        }
        let best = self.best.as_ref().unwrap();
        match leaf.rows.cmp(&best.rows) {
            std::cmp::Ordering::Equal => {
                let auto: Vec<usize> = (0..self.n).map(|v| best.seq[leaf.pos[v]]).collect();
                self.autos.push(auto);
            }
            std::cmp::Ordering::Less => self.best = Some(leaf),
            std::cmp::Ordering::Greater => {}
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::empty(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn relabelled_c5_equal() {
        let c5 = Graph::cycle(5).unwrap();
        let other = c5.permuted(&[3, 0, 4, 1, 2]);
        assert_eq!(canonical_form(&c5).unwrap().bytes, canonical_form(&other).unwrap().bytes);
    }

    #[test]
    fn c4_vs_star() {
        let c4 = Graph::cycle(4).unwrap();
        let star = Graph::complete_multipartite(&[1, 3]).unwrap();
        assert_ne!(canonical_form(&c4).unwrap().bytes, canonical_form(&star).unwrap().bytes);
        assert!(!are_isomorphic(&c4, &star).unwrap());
    }

    #[test]
    fn p4_self_complementary() {
        let p4 = Graph::path(4).unwrap();
        let comp = p4.complement();
        // explicit isomorphism 0-1-2-3  ->  complement path 1-3-0-2
        let perm = [1, 3, 0, 2];
        assert_eq!(p4.permuted(&perm), comp);
        assert_eq!(canonical_form(&p4).unwrap().bytes, canonical_form(&comp).unwrap().bytes);
    }

    #[test]
    fn isomorphism_examples() {
        let c3 = Graph::cycle(3).unwrap();
        let k3 = Graph::complete(3).unwrap();
        assert!(are_isomorphic(&c3, &k3).unwrap());
        let c6 = Graph::cycle(6).unwrap();
        let two_k3 = k3.disjoint_union(&k3).unwrap();
        assert!(!are_isomorphic(&c6, &two_k3).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        // pentagon -> pentagram: i -> 2i mod 5
        let perm: Vec<usize> = (0..5).map(|i| 2 * i % 5).collect();
        assert_eq!(c5.permuted(&perm), c5.complement());
        assert!(are_isomorphic(&c5, &c5.complement()).unwrap());
    }

    #[test]
    fn relabeling_reproduces_bytes() {
        let g = Graph::complete_multipartite(&[2, 3, 1]).unwrap();
        let cf = canonical_form(&g).unwrap();
        let relabelled = cf.graph(&g);
        assert_eq!(crate::io::to_graph6(&relabelled).into_bytes(), cf.bytes);
    }

    #[test]
    fn invariant_under_random_permutations() {
        let mut rng = rand_chacha_like(7);
        for trial in 0..200 {
            let n = 1 + trial % 14;
            let g = random_graph(&mut rng, n, 0.4);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let h = g.permuted(&perm);
            assert_eq!(canonical_bytes(&g), canonical_bytes(&h), "trial {trial}");
        }
    }

    #[test]
    fn symmetric_graphs_are_fast() {
        for g in [
            Graph::empty(64).unwrap(),
            Graph::complete(64).unwrap(),
            Graph::complete_multipartite(&[8; 8]).unwrap(),
            Graph::cycle(64).unwrap(),
        ] {
            let cf = canonical_form(&g).unwrap();
            let mut perm: Vec<usize> = (0..g.order()).collect();
            perm.reverse();
            assert_eq!(cf.bytes, canonical_form(&g.permuted(&perm)).unwrap().bytes);
        }
    }

    #[test]
    fn distinguishes_non_isomorphic_regular_graphs() {
        // K_{3,3} and the triangular prism are both 3-regular on 6 vertices.
        let k33 = Graph::complete_multipartite(&[3, 3]).unwrap();
        let prism = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert!(!are_isomorphic(&k33, &prism).unwrap());
        let c6 = Graph::cycle(6).unwrap();
        let two_c3 = Graph::cycle(3).unwrap().disjoint_union(&Graph::cycle(3).unwrap()).unwrap();
        assert!(!are_isomorphic(&c6, &two_c3).unwrap());
        let _ = VertexSet::EMPTY;
    }

    fn rand_chacha_like(seed: u64) -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(seed)
    }
}
