//! Exact maximum clique by branch and bound with greedy-colouring bounds.
//!
//! Vertices are relabelled in reverse degeneracy order. The search is split
//! into one task per vertex `i` (cliques whose first vertex is `i`); every
//! task starts from the same greedy lower bound and keeps its own incumbent,
//! so node counts, budget exhaustion and the reported witness do not depend
//! on how tasks are scheduled across threads.

use rayon::prelude::*;

/// Dense bit-set adjacency for graphs with more than 64 vertices.
#[derive(Clone, Debug)]
pub struct BitGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitGraph { n, words, rows: vec![0; n * words] }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueResult {
    /// Vertices of the best clique found, sorted.
    pub clique: Vec<usize>,
    pub nodes: u64,
    /// A task hit its node cap; `clique` is then only a lower bound.
    pub exhausted: bool,
}

type Bits = Vec<u64>;

#[inline]
fn is_empty(b: &[u64]) -> bool {
    b.iter().all(|&w| w == 0)
}

#[inline]
fn first(b: &[u64]) -> Option<usize> {
    b.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

#[inline]
fn clear(b: &mut [u64], v: usize) {
    b[v / 64] &= !(1 << (v % 64));
}

fn popcount(b: &[u64]) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

/// Removal order of repeated minimum-degree deletion, reversed.
fn degeneracy_order(g: &BitGraph) -> Vec<usize> {
    let n = g.n;
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        removed[v] = true;
        order.push(v);
        for u in 0..n {
            if !removed[u] && g.has_edge(u, v) {
                deg[u] -= 1;
            }
        }
    }
    order.reverse();
    order
}

struct Task<'a> {
    g: &'a BitGraph,
    cap: u64,
    nodes: u64,
    exhausted: bool,
    best: usize,
    witness: Option<Vec<usize>>,
}

impl Task<'_> {
    fn color_sort(&self, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored: Bits = cand.to_vec();
        let mut order = Vec::with_capacity(popcount(cand));
        let mut bounds = Vec::with_capacity(order.capacity());
        let mut color = 0;
        while !is_empty(&uncolored) {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = first(&avail) {
                clear(&mut uncolored, v);
                clear(&mut avail, v);
                for (a, r) in avail.iter_mut().zip(self.g.row(v)) {
                    *a &= !r;
                }
                order.push(v);
                bounds.push(color);
            }
        }
        (order, bounds)
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut cand: Bits) {
        self.nodes += 1;
        if self.nodes > self.cap {
            self.exhausted = true;
            return;
        }
        let (order, bounds) = self.color_sort(&cand);
        for idx in (0..order.len()).rev() {
            if self.exhausted || clique.len() + bounds[idx] <= self.best {
                return;
            }
            let v = order[idx];
            clique.push(v);
            let next: Bits = cand.iter().zip(self.g.row(v)).map(|(a, b)| a & b).collect();
            if is_empty(&next) {
                if clique.len() > self.best {
                    self.best = clique.len();
                    self.witness = Some(clique.clone());
                }
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            clear(&mut cand, v);
        }
    }
}

fn greedy(g: &BitGraph) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for i in 0..g.n {
        let mut clique = vec![i];
        let mut cand: Bits = g.row(i).to_vec();
        while let Some(v) = first(&cand) {
            clique.push(v);
            for (a, r) in cand.iter_mut().zip(g.row(v)) {
                *a &= r;
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// Maximum clique of `graph`. `node_cap` bounds the search nodes of each
/// per-vertex task; `workers` is the thread count (0 = rayon default).
pub fn max_clique(graph: &BitGraph, node_cap: u64, workers: usize) -> CliqueResult {
    let n = graph.n;
    if n == 0 {
        return CliqueResult { clique: Vec::new(), nodes: 0, exhausted: false };
    }
    let order = degeneracy_order(graph);
    let mut g = BitGraph::new(n);
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for u in 0..n {
        for v in u + 1..n {
            if graph.has_edge(u, v) {
                g.add_edge(pos[u], pos[v]);
            }
        }
    }
    let initial = greedy(&g);
    let lb = initial.len();

    let run = |i: usize| {
        let mut cand: Bits = g.row(i).to_vec();
        for v in 0..=i {
            clear(&mut cand, v);
        }
        let mut task = Task { g: &g, cap: node_cap, nodes: 0, exhausted: false, best: lb, witness: None };
        if 1 + popcount(&cand) > lb {
            let mut clique = vec![i];
            task.expand(&mut clique, cand);
        }
        (task.witness, task.nodes, task.exhausted)
    };

    let results: Vec<_> = if workers == 1 {
        (0..n).map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(|| (0..n).into_par_iter().map(run).collect())
    };

    let mut best = initial;
    let mut nodes = 0;
    let mut exhausted = false;
    for (w, k, e) in results {
        nodes += k;
        exhausted |= e;
        if let Some(w) = w {
            if w.len() > best.len() {
                best = w;
            }
        }
    }
    let mut clique: Vec<usize> = best.into_iter().map(|v| order[v]).collect();
    clique.sort_unstable();
    CliqueResult { clique, nodes, exhausted }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn brute(g: &BitGraph) -> usize {
        let n = g.order();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if vs.len() > best && g.is_clique(&vs) {
                best = vs.len();
            }
        }
        best
    }

    #[test]
    fn random_graphs_match_brute_force() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..80 {
            let n = rng.gen_range(1..=14);
            let p = rng.gen_range(0.1..0.9);
            let mut g = BitGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v);
                    }
                }
            }
            let r = max_clique(&g, u64::MAX, 1);
            assert_eq!(r.clique.len(), brute(&g));
            assert!(g.is_clique(&r.clique));
            assert_eq!(r, max_clique(&g, u64::MAX, 3));
        }
    }

    #[test]
    fn wide_graph() {
        // 150 vertices, complete 5-partite: clique number 5
        let n = 150;
        let mut g = BitGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if u % 5 != v % 5 {
                    g.add_edge(u, v);
                }
            }
        }
        let r = max_clique(&g, u64::MAX, 2);
        assert_eq!(r.clique.len(), 5);
        assert!(!r.exhausted);
    }
}
