//! Simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` row per vertex, so neighbourhood
//! intersections and induced-subgraph tests are single word operations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, MAX_ORDER};

/// A subset of vertex ids `0..64`, stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_slice(vertices: &[usize]) -> Self {
        vertices.iter().copied().collect()
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Compares by the sorted member lists, the order used for family edges.
    pub fn lex_cmp(self, other: VertexSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&x| x >= MAX_ORDER) {
            return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
        }
        Ok(VertexSet::from_slice(&v))
    }
}

/// Iterator over set bits, lowest first.
#[derive(Clone)]
pub struct BitIter(pub(crate) u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for BitIter {}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A finite simple undirected graph on vertices `0..order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge { order, max: MAX_ORDER });
        }
        Ok(Graph { order, adj: vec![0; order] })
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(order)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, validating symmetry and loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let order = rows.len();
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge { order, max: MAX_ORDER });
        }
        let mask = low_mask(order);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::VertexOutOfRange { vertex: 63 - row.leading_zeros() as usize, order });
            }
            if row >> v & 1 == 1 {
                return Err(Error::SelfLoop(v));
            }
            for u in BitIter(row) {
                if rows[u] >> v & 1 == 0 {
                    return Err(Error::Parse(format!("adjacency not symmetric at ({v},{u})")));
                }
            }
        }
        Ok(Graph { order, adj: rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        Graph { order: rows.len(), adj: rows }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order {
            Err(Error::VertexOutOfRange { vertex: v, order: self.order })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order).map(|v| self.degree(v)).collect()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order {
            for v in BitIter(self.adj[u] & !low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = if self.order == 0 { 0 } else { self.degree(0) };
        (0..self.order).all(|v| self.degree(v) == k).then_some(k)
    }

    /// Number of edges inside `set`.
    pub fn edges_within(&self, set: VertexSet) -> usize {
        set.iter()
            .map(|v| (self.adj[v] & set.0).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn complement(&self) -> Graph {
        let mask = low_mask(self.order);
        let rows = (0..self.order)
            .map(|v| !self.adj[v] & mask & !(1 << v))
            .collect();
        Graph::from_rows_unchecked(rows)
    }

    /// Relabels so that vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.order);
        let mut rows = vec![0u64; self.order];
        for u in 0..self.order {
            let mut r = 0u64;
            for v in BitIter(self.adj[u]) {
                r |= 1 << perm[v];
            }
            rows[perm[u]] = r;
        }
        Graph::from_rows_unchecked(rows)
    }

    /// The subgraph induced on `set`, relabeled to `0..|set|` in increasing order.
    pub fn induced(&self, set: VertexSet) -> Graph {
        let verts = set.to_vec();
        let rows = verts
            .iter()
            .map(|&u| {
                let mut r = 0u64;
                for (j, &v) in verts.iter().enumerate() {
                    if self.adj[u] >> v & 1 == 1 {
                        r |= 1 << j;
                    }
                }
                r
            })
            .collect();
        Graph::from_rows_unchecked(rows)
    }

    /// Removes vertex `v`, shifting higher ids down by one.
    pub fn delete_vertex(&self, v: usize) -> Graph {
        self.induced(self.vertices().difference(VertexSet(1 << v)))
    }

    /// Appends a vertex adjacent to `nbrs` and returns the extended graph.
    pub fn with_vertex(&self, nbrs: VertexSet) -> Result<Graph> {
        let n = self.order;
        if n + 1 > MAX_ORDER {
            return Err(Error::OrderTooLarge { order: n + 1, max: MAX_ORDER });
        }
        let mut rows = self.adj.clone();
        for u in nbrs.iter() {
            self.check_vertex(u)?;
            rows[u] |= 1 << n;
        }
        rows.push(nbrs.0);
        Ok(Graph::from_rows_unchecked(rows))
    }

    pub fn is_connected_on(&self, set: VertexSet) -> bool {
        let Some(start) = set.iter().next() else {
            return true;
        };
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in BitIter(frontier) {
                next |= self.adj[v];
            }
            next &= set.0 & !seen;
            seen |= next;
            frontier = next;
        }
        seen == set.0
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_on(self.vertices())
    }

    /// Whether `set` induces a cycle through all of its vertices.
    pub fn induces_cycle(&self, set: VertexSet) -> bool {
        set.len() >= 3
            && set.iter().all(|v| (self.adj[v] & set.0).count_ones() == 2)
            && self.is_connected_on(set)
    }

    // --- named graphs -----------------------------------------------------

    pub fn complete(n: usize) -> Result<Graph> {
        Ok(Graph::empty(n)?.complement())
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Complete multipartite graph with the given part sizes, parts laid out consecutively.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
        let n: usize = parts.iter().sum();
        let mut g = Graph::empty(n)?;
        let mut part_of = Vec::with_capacity(n);
        for (i, &p) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(i, p));
        }
        for u in 0..n {
            for v in u + 1..n {
                if part_of[u] != part_of[v] {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }

    /// Disjoint union, `self` first.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.order + other.order;
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge { order: n, max: MAX_ORDER });
        }
        let mut rows = self.adj.clone();
        rows.extend(other.adj.iter().map(|r| r << self.order));
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        let a = low_mask(self.order);
        let b = low_mask(g.order) & !a;
        for v in 0..self.order {
            g.adj[v] |= b;
        }
        for v in self.order..g.order {
            g.adj[v] |= a;
        }
        Ok(g)
    }
}

/// Graphs serialize as their graph6 string.
impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&crate::io::to_graph6(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        crate::io::from_graph6(&s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order, self.edges())
    }
}
