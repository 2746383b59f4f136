//! Hamiltonian cycle enumeration by path extension from vertex 0.

use serde::Serialize;

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    /// Cyclic vertex sequence starting at the smallest vertex.
    pub vertices: Vec<usize>,
    /// Edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl CycleWitness {
    pub fn from_sequence(vertices: Vec<usize>) -> Self {
        let n = vertices.len();
        let mut edges: Vec<(usize, usize)> = (0..n)
            .map(|i| {
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        CycleWitness { vertices, edges }
    }
}

struct Walker<'a> {
    adj: &'a [u64],
    n: usize,
    path: Vec<usize>,
    limit: Option<usize>,
    found: usize,
}

impl Walker<'_> {
    /// Calls `emit` on each cycle; each undirected cycle once, by requiring
    /// the second vertex to be smaller than the last.
    fn extend(&mut self, visited: u64, emit: &mut dyn FnMut(&[usize])) -> bool {
        if self.limit.is_some_and(|l| self.found >= l) {
            return false;
        }
        let last = *self.path.last().unwrap();
        if self.path.len() == self.n {
            if self.adj[last] & 1 == 1 && self.path[1] < last {
                self.found += 1;
                emit(&self.path);
            }
            return true;
        }
        // every unvisited vertex needs two usable neighbours
        let unvisited = !visited & crate::graph::low_mask(self.n);
        let open = unvisited | 1 | 1 << last;
        let mut rest = unvisited;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (self.adj[v] & open).count_ones() < 2 {
                return true;
            }
        }
        let mut cand = self.adj[last] & unvisited;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.path.push(v);
            let go_on = self.extend(visited | 1 << v, emit);
            self.path.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn walk(g: &Graph, limit: Option<usize>, emit: &mut dyn FnMut(&[usize])) -> usize {
    let n = g.order();
    if n < 3 {
        return 0;
    }
    let mut w = Walker { adj: g.rows(), n, path: vec![0], limit, found: 0 };
    w.extend(1, emit);
    w.found
}

/// Every Hamiltonian cycle of `g`, one witness per edge set.
pub fn enumerate_hamiltonian_cycles(g: &Graph) -> Vec<CycleWitness> {
    let mut out = Vec::new();
    walk(g, None, &mut |p| out.push(CycleWitness::from_sequence(p.to_vec())));
    out
}

pub fn count_hamiltonian_cycles(g: &Graph) -> usize {
    walk(g, None, &mut |_| {})
}

/// Counts Hamiltonian cycles, stopping once `limit` have been seen.
pub fn count_hamiltonian_cycles_up_to(g: &Graph, limit: usize) -> usize {
    walk(g, Some(limit), &mut |_| {})
}
