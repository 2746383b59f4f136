//! Generators for the extremal graphs, each with the spec it is meant to
//! satisfy and the number of pattern copies it is expected to carry.
//!
//! Positions and indices in parameters (`singleton_positions`, `I`) are
//! 1-based, as are the part labels; vertex ids are 0-based.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result, MAX_ORDER};
use crate::factorization::{check_flawless, OneFactorization};
use crate::family::IntersectionSpec;
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternKind {
    Cycle(usize),
    Clique(usize),
}

impl PatternKind {
    pub fn graph(self) -> Graph {
        match self {
            PatternKind::Cycle(r) => Graph::cycle(r).expect("r >= 3"),
            PatternKind::Clique(r) => Graph::complete(r).expect("r <= 64"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpectedCount {
    Exact(u64),
    /// No closed form is claimed; the copy counter decides.
    Oracle,
}

impl Serialize for ExpectedCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExpectedCount::Exact(v) => s.serialize_u64(*v),
            ExpectedCount::Oracle => s.serialize_str("oracle"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Part {
    pub label: String,
    pub vertices: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConstructionOutput {
    pub name: String,
    pub graph: Graph,
    pub spec: IntersectionSpec,
    pub pattern: PatternKind,
    /// Labelled vertex groups partitioning the vertex set.
    pub parts: Vec<Part>,
    pub expected_count: ExpectedCount,
    pub requested_order: usize,
    pub actual_order: usize,
    /// Vertex sets of the intended pattern copies, when the construction names them.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub good_cycles: Option<Vec<VertexSet>>,
}

/// Incremental vertex allocation with labelled parts.
struct Layout {
    n: usize,
    edges: Vec<(usize, usize)>,
    parts: Vec<Part>,
}

impl Layout {
    fn new() -> Self {
        Layout { n: 0, edges: Vec::new(), parts: Vec::new() }
    }

    fn block(&mut self, label: String, size: usize) -> Result<Vec<usize>> {
        if self.n + size > MAX_ORDER {
            return Err(Error::OrderTooLarge { order: self.n + size, max: MAX_ORDER });
        }
        let ids: Vec<usize> = (self.n..self.n + size).collect();
        self.n += size;
        self.parts.push(Part { label, vertices: VertexSet::from_slice(&ids) });
        Ok(ids)
    }

    fn path(&mut self, label: String, size: usize) -> Result<Vec<usize>> {
        let ids = self.block(label, size)?;
        for w in ids.windows(2) {
            self.edges.push((w[0], w[1]));
        }
        Ok(ids)
    }

    fn connect(&mut self, a: &[usize], b: &[usize]) {
        for &u in a {
            for &v in b {
                self.edges.push((u, v));
            }
        }
    }

    fn clique(&mut self, a: &[usize]) {
        for (i, &u) in a.iter().enumerate() {
            for &v in &a[i + 1..] {
                self.edges.push((u, v));
            }
        }
    }

    fn graph(&self) -> Result<Graph> {
        let mut g = Graph::empty(self.n)?;
        for &(u, v) in &self.edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }
}

fn invalid<T>(msg: String) -> Result<T> {
    Err(Error::InvalidParams(msg))
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Part sizes of `T(n, t)`, largest first.
fn turan_parts(n: usize, t: usize) -> Vec<usize> {
    (0..t).map(|i| n / t + usize::from(i < n % t)).collect()
}

/// Balanced complete `t`-partite graph on `n` vertices.
pub fn turan(n: usize, t: usize) -> Result<Graph> {
    if t == 0 || t > n {
        return invalid(format!("Turan graph needs 1 <= t <= n, got t={t}, n={n}"));
    }
    Graph::complete_multipartite(&turan_parts(n, t))
}

/// `K_t + T(n - t, r - t)` with `r = t + r_minus_t`; extremal for cliques
/// with `L = [t, r - 1]`.
pub fn clique_join_turan(t: usize, r_minus_t: usize, n: usize) -> Result<ConstructionOutput> {
    if t < 1 || r_minus_t < 2 || n <= t + r_minus_t {
        return invalid(format!(
            "clique_join_turan needs t >= 1, r - t >= 2, n > r; got t={t}, r-t={r_minus_t}, n={n}"
        ));
    }
    let r = t + r_minus_t;
    let sizes = turan_parts(n - t, r_minus_t);
    let mut lay = Layout::new();
    let k = lay.block("K".into(), t)?;
    lay.clique(&k);
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for (i, &sz) in sizes.iter().enumerate() {
        parts.push(lay.block(format!("T{}", i + 1), sz)?);
    }
    for (i, a) in parts.iter().enumerate() {
        lay.connect(&k, a);
        for b in &parts[i + 1..] {
            lay.connect(a, b);
        }
    }
    let graph = lay.graph()?;
    Ok(ConstructionOutput {
        name: "clique-join-turan".into(),
        actual_order: graph.order(),
        graph,
        spec: IntersectionSpec::t_intersecting(r, t)?,
        pattern: PatternKind::Clique(r),
        parts: lay.parts,
        expected_count: ExpectedCount::Exact(sizes.iter().map(|&s| s as u64).product()),
        requested_order: n,
        good_cycles: None,
    })
}

/// Cyclic blow-up of `C_r`, `r = l1 + s`: `l1` singleton parts and `s` independent
/// parts of size `floor((n - l1) / s)`, consecutive parts completely joined.
pub fn cycle_blowup(l1: usize, s: usize, n: usize, singleton_positions: Option<&[usize]>) -> Result<ConstructionOutput> {
    let r = l1 + s;
    if l1 < 1 || s < 2 || r < 4 {
        return invalid(format!("cycle_blowup needs l1 >= 1, s >= 2, l1 + s >= 4; got l1={l1}, s={s}"));
    }
    if n < r {
        return invalid(format!("cycle_blowup needs n >= r = {r}, got {n}"));
    }
    let m = (n - l1) / s;
    if r == 4 && m > 1 {
        return invalid(format!(
            "r = 4 with parts of size {m}: use cycle_blowup_22 for (l1, s) = (2, 2) or cycle_blowup_13 for (1, 3)"
        ));
    }
    let positions: Vec<usize> = match singleton_positions {
        Some(p) => p.to_vec(),
        None => (0..l1).map(|i| i * r / l1 + 1).collect(),
    };
    let mut sorted = positions.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != l1 || positions.len() != l1 || sorted.iter().any(|&p| p < 1 || p > r) {
        return invalid(format!("singleton positions {positions:?} must be {l1} distinct values in [1, {r}]"));
    }
    let mut lay = Layout::new();
    let mut parts = Vec::with_capacity(r);
    for p in 1..=r {
        let size = if sorted.binary_search(&p).is_ok() { 1 } else { m };
        parts.push(lay.block(format!("U{p}"), size)?);
    }
    for i in 0..r {
        lay.connect(&parts[i], &parts[(i + 1) % r]);
    }
    let graph = lay.graph()?;
    Ok(ConstructionOutput {
        name: "cycle-blowup".into(),
        actual_order: graph.order(),
        graph,
        spec: IntersectionSpec::t_intersecting(r, l1)?,
        pattern: PatternKind::Cycle(r),
        parts: lay.parts,
        expected_count: ExpectedCount::Exact((m as u64).pow(s as u32)),
        requested_order: n,
        good_cycles: None,
    })
}

/// `K_{2, n-2}`: the `C_4` blow-up with two opposite singleton parts.
pub fn cycle_blowup_22(n: usize) -> Result<ConstructionOutput> {
    if n < 5 {
        return invalid(format!("cycle_blowup_22 needs n >= 5, got {n}"));
    }
    let mut lay = Layout::new();
    let w = lay.block("U1+U3".into(), 2)?;
    let x = lay.block("U2+U4".into(), n - 2)?;
    lay.connect(&w, &x);
    let graph = lay.graph()?;
    Ok(ConstructionOutput {
        name: "cycle-blowup-22".into(),
        actual_order: graph.order(),
        graph,
        spec: IntersectionSpec::new(4, &[2, 3])?,
        pattern: PatternKind::Cycle(4),
        parts: lay.parts,
        expected_count: ExpectedCount::Exact(binom(n as u64 - 2, 2)),
        requested_order: n,
        good_cycles: None,
    })
}

/// `C_4` blow-up with `|U1| = 1`, three parts of size `m = floor((n-1)/3)`,
/// and `U3` turned into a clique.
pub fn cycle_blowup_13(n: usize) -> Result<ConstructionOutput> {
    if n < 4 {
        return invalid(format!("cycle_blowup_13 needs n >= 4, got {n}"));
    }
    let m = (n - 1) / 3;
    let mut lay = Layout::new();
    let u1 = lay.block("U1".into(), 1)?;
    let u2 = lay.block("U2".into(), m)?;
    let u3 = lay.block("U3".into(), m)?;
    let u4 = lay.block("U4".into(), m)?;
    lay.connect(&u1, &u2);
    lay.connect(&u2, &u3);
    lay.connect(&u3, &u4);
    lay.connect(&u4, &u1);
    lay.clique(&u3);
    let graph = lay.graph()?;
    let m = m as u64;
    Ok(ConstructionOutput {
        name: "cycle-blowup-13".into(),
        actual_order: graph.order(),
        graph,
        spec: IntersectionSpec::new(4, &[1, 2, 3])?,
        pattern: PatternKind::Cycle(4),
        parts: lay.parts,
        expected_count: ExpectedCount::Exact(m * m * m + 2 * binom(m, 2) * m),
        requested_order: n,
        good_cycles: None,
    })
}

struct PathBlowup {
    lay: Layout,
    /// per position: `None` for singletons, else the `k` paths
    bundles: Vec<Option<Vec<Vec<usize>>>>,
    k: usize,
    r: usize,
}

fn build_path_blowup(l1: usize, s: usize, d: usize, n: usize, positions: &[usize]) -> Result<PathBlowup> {
    let r0 = l1 + s;
    if l1 < 1 || s < 2 || d < 2 {
        return invalid(format!("path_blowup needs l1 >= 1, s >= 2, d >= 2; got l1={l1}, s={s}, d={d}"));
    }
    let mut set = positions.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() != l1 || positions.len() != l1 || set.iter().any(|&p| p < 1 || p > r0) {
        return invalid(format!("I = {positions:?} must be {l1} distinct positions in [1, {r0}]"));
    }
    let k = n.saturating_sub(l1) / (s * d);
    if k < 1 {
        return invalid(format!("path_blowup needs n >= l1 + s*d = {}, got {n}", l1 + s * d));
    }
    let mut lay = Layout::new();
    let mut ends: Vec<(Vec<usize>, Vec<usize>)> = Vec::with_capacity(r0);
    let mut bundles = Vec::with_capacity(r0);
    for p in 1..=r0 {
        if set.binary_search(&p).is_ok() {
            let u = lay.block(format!("U{p}"), 1)?;
            ends.push((u.clone(), u));
            bundles.push(None);
        } else {
            let mut paths = Vec::with_capacity(k);
            for j in 1..=k {
                paths.push(lay.path(format!("P{p},{j}"), d)?);
            }
            let first = paths.iter().map(|p| p[0]).collect();
            let last = paths.iter().map(|p| p[d - 1]).collect();
            ends.push((first, last));
            bundles.push(Some(paths));
        }
    }
    // The four wiring cases reduce to: last vertices of position p joined
    // to first vertices of position p + 1.
    for p in 0..r0 {
        let (a, b) = (ends[p].1.clone(), ends[(p + 1) % r0].0.clone());
        lay.connect(&a, &b);
    }
    Ok(PathBlowup { lay, bundles, k, r: l1 + s * d })
}

/// Blow-up of `C_{l1+s}` where the positions in `I` are single vertices and
/// every other position holds `k` disjoint paths on `d` vertices.
pub fn path_blowup(l1: usize, s: usize, d: usize, n: usize, positions: &[usize]) -> Result<ConstructionOutput> {
    let pb = build_path_blowup(l1, s, d, n, positions)?;
    let graph = pb.lay.graph()?;
    let sizes: Vec<usize> = (0..s).map(|i| l1 + i * d).collect();
    Ok(ConstructionOutput {
        name: "path-blowup".into(),
        actual_order: graph.order(),
        graph,
        spec: IntersectionSpec::new(pb.r, &sizes)?,
        pattern: PatternKind::Cycle(pb.r),
        parts: pb.lay.parts,
        expected_count: ExpectedCount::Exact((pb.k as u64).pow(s as u32)),
        requested_order: n,
        good_cycles: None,
    })
}

/// The two `s = 2` variants: for `l1 = 1`, `I = {1}` with the path ends next
/// to the junction between positions 2 and 3 forming one clique; for
/// `l1 = 2`, `I = {1, 3}` unchanged.
pub fn path_blowup_clique_s2(l1: usize, d: usize, n: usize) -> Result<ConstructionOutput> {
    if d < 2 || !(1..=2).contains(&l1) {
        return invalid(format!("path_blowup_clique_s2 needs l1 in {{1, 2}} and d >= 2; got l1={l1}, d={d}"));
    }
    let positions: &[usize] = if l1 == 1 { &[1] } else { &[1, 3] };
    let mut pb = build_path_blowup(l1, 2, d, n, positions)?;
    if l1 == 1 {
        let b2 = pb.bundles[1].as_ref().unwrap();
        let b3 = pb.bundles[2].as_ref().unwrap();
        let mut block: Vec<usize> = b2.iter().map(|p| p[d - 1]).collect();
        block.extend(b3.iter().map(|p| p[0]));
        pb.lay.clique(&block);
    }
    let graph = pb.lay.graph()?;
    Ok(ConstructionOutput {
        name: "path-blowup-clique-s2".into(),
        actual_order: graph.order(),
        graph,
        spec: IntersectionSpec::new(pb.r, &[l1, l1 + d])?,
        pattern: PatternKind::Cycle(pb.r),
        parts: pb.lay.parts,
        expected_count: ExpectedCount::Oracle,
        requested_order: n,
        good_cycles: None,
    })
}

/// Smallest valid path lengths in lexicographic order: `(2, ..., 2, d - 2(l-1))`.
pub fn default_path_lengths(l: usize, d: usize) -> Vec<usize> {
    let mut p = vec![2; l];
    if let Some(last) = p.last_mut() {
        *last = d.saturating_sub(2 * (l - 1));
    }
    p
}

/// `W = {w_1..w_l}`, `k` paths of `p_i` edges from each `w_i`, ends joined
/// in a staircase between consecutive `i`. Spec `(l + 2d, {l, l + d})`.
pub fn staircase(l: usize, d: usize, n: usize, path_lengths: Option<&[usize]>) -> Result<ConstructionOutput> {
    if !(3..=4).contains(&l) {
        return invalid(format!("staircase needs l in {{3, 4}}, got {l}"));
    }
    if 2 * l >= d {
        return invalid(format!("staircase requires l < d/2, got l={l}, d={d}"));
    }
    let p = path_lengths.map_or_else(|| default_path_lengths(l, d), <[usize]>::to_vec);
    if p.len() != l || p.iter().sum::<usize>() != d || p.iter().any(|&x| x < 2) {
        return invalid(format!("path lengths {p:?} must be {l} values >= 2 summing to d = {d}"));
    }
    let k = n.saturating_sub(l) / d;
    if k < 2 {
        return invalid(format!("staircase needs k = floor((n - l)/d) >= 2, got n={n}"));
    }
    let mut lay = Layout::new();
    let w = lay.block("W".into(), l)?;
    // paths[i][j]: vertices after w_i, ending at v_j^(i)
    let mut paths: Vec<Vec<Vec<usize>>> = vec![Vec::with_capacity(k); l];
    for j in 0..k {
        for i in 0..l {
            let path = lay.path(format!("P{},{}", i + 1, j + 1), p[i])?;
            lay.edges.push((w[i], path[0]));
            paths[i].push(path);
        }
    }
    for t in 0..l {
        let next = (t + 1) % l;
        for j in 0..k {
            for i in 0..j {
                let a = *paths[t][j].last().unwrap();
                let b = *paths[next][i].last().unwrap();
                lay.edges.push((a, b));
            }
        }
    }
    let mut good = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let mut set = VertexSet::from_slice(&w);
            for bundle in &paths {
                set = set.union(VertexSet::from_slice(&bundle[i])).union(VertexSet::from_slice(&bundle[j]));
            }
            good.push(set);
        }
    }
    let graph = lay.graph()?;
    let r = l + 2 * d;
    Ok(ConstructionOutput {
        name: "staircase".into(),
        actual_order: graph.order(),
        graph,
        spec: IntersectionSpec::new(r, &[l, l + d])?,
        pattern: PatternKind::Cycle(r),
        parts: lay.parts,
        expected_count: ExpectedCount::Exact(binom(k as u64, 2)),
        requested_order: n,
        good_cycles: Some(good),
    })
}

/// The cubic graph on `u_1..u_l` whose three perfect matchings form a
/// flawless 1-factorization, for even `l >= 4`.
pub fn flawless_triple(l: usize) -> Result<OneFactorization> {
    if l < 4 || l % 2 == 1 || l > MAX_ORDER {
        return invalid(format!("flawless_triple needs an even l with 4 <= l <= {MAX_ORDER}, got {l}"));
    }
    // 0-based: u_i is vertex i - 1
    let m1: Vec<(usize, usize)> = (0..l).step_by(2).map(|i| (i, i + 1)).collect();
    let mut m2: Vec<(usize, usize)> = (1..l - 1).step_by(2).map(|i| (i, i + 1)).collect();
    m2.push((0, l - 1));
    let m3: Vec<(usize, usize)> = if l == 4 {
        vec![(0, 2), (1, 3)]
    } else {
        let mut m = vec![(0, 2), (3, 5)];
        m.extend((5..=l - 3).step_by(2).map(|i| (i - 1, i + 2)));
        m.push((1, l - 2));
        m
    };
    let edges: Vec<(usize, usize)> = m1.iter().chain(&m2).chain(&m3).copied().collect();
    let host = Graph::from_edges(l, &edges)?;
    OneFactorization::new(host, vec![m1, m2, m3])
}

/// How cross edges between clique blocks of the same matching are placed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossEdges {
    /// `v_{e1}^{t1} ~ v_{e2}^{t2}` for `t1 != t2`.
    #[default]
    DistinctSuperscripts,
    /// `v_{e1}^{t} ~ v_{e2}^{t}`.
    SameSuperscript,
}

/// Subdivide every edge of a flawless cubic base graph on `2d` vertices,
/// blow each subdivision vertex up into a `k`-clique, and join blocks whose
/// edges share a matching.
pub fn flawless_expansion(base: &OneFactorization, d: usize, k: usize, cross: CrossEdges) -> Result<ConstructionOutput> {
    let l = base.host.order();
    if d < 2 || l != 2 * d {
        return invalid(format!("flawless_expansion needs d >= 2 and a base on 2d vertices; got d={d}, order {l}"));
    }
    if base.factors.len() != 3 {
        return invalid(format!("flawless_expansion needs 3 matchings, got {}", base.factors.len()));
    }
    if k < 1 {
        return invalid("flawless_expansion needs k >= 1".into());
    }
    if !check_flawless(base).is_flawless {
        return invalid("base factorization is not flawless".into());
    }
    let mut lay = Layout::new();
    let u = lay.block("U".into(), l)?;
    // blocks[i][e]: the k vertices replacing edge e of matching i
    let mut blocks: Vec<Vec<Vec<usize>>> = Vec::with_capacity(3);
    for (i, m) in base.factors.iter().enumerate() {
        let mut row = Vec::with_capacity(m.len());
        for &(a, b) in m {
            let vs = lay.block(format!("M{}:u{}u{}", i + 1, a + 1, b + 1), k)?;
            lay.clique(&vs);
            lay.connect(&[u[a], u[b]], &vs);
            row.push(vs);
        }
        blocks.push(row);
    }
    for row in &blocks {
        for (x, bx) in row.iter().enumerate() {
            for by in &row[x + 1..] {
                for (t1, &p) in bx.iter().enumerate() {
                    for (t2, &q) in by.iter().enumerate() {
                        let join = match cross {
                            CrossEdges::DistinctSuperscripts => t1 != t2,
                            CrossEdges::SameSuperscript => t1 == t2,
                        };
                        if join {
                            lay.edges.push((p, q));
                        }
                    }
                }
            }
        }
    }
    let layer = |i: usize, t: usize| -> VertexSet { blocks[i].iter().map(|b| b[t]).collect() };
    let mut good = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            for t1 in 0..k {
                for t2 in 0..k {
                    good.push(VertexSet::full(l).union(layer(i, t1)).union(layer(j, t2)));
                }
            }
        }
    }
    let graph = lay.graph()?;
    Ok(ConstructionOutput {
        name: "flawless-expansion".into(),
        actual_order: graph.order(),
        requested_order: graph.order(),
        graph,
        spec: IntersectionSpec::new(4 * d, &[2 * d, 3 * d])?,
        pattern: PatternKind::Cycle(4 * d),
        parts: lay.parts,
        expected_count: ExpectedCount::Oracle,
        good_cycles: Some(good),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::copies::{count_copies, CountMode};
    use crate::family::{associated_family, is_l_intersecting};

    fn count(c: &ConstructionOutput) -> u64 {
        count_copies(&c.graph, &c.pattern.graph(), CountMode::Induced)
    }

    fn assert_sound(c: &ConstructionOutput) {
        let fam = associated_family(&c.graph, &c.pattern.graph(), CountMode::Induced);
        assert_eq!(is_l_intersecting(&fam, &c.spec).unwrap(), None, "{}", c.name);
        if let ExpectedCount::Exact(e) = c.expected_count {
            assert_eq!(fam.len() as u64, e, "{}", c.name);
        }
        let mut covered = VertexSet::EMPTY;
        for p in &c.parts {
            assert!(covered.is_disjoint(p.vertices), "{}", p.label);
            covered = covered.union(p.vertices);
        }
        assert_eq!(covered, c.graph.vertices());
        assert!(c.actual_order <= c.requested_order);
    }

    #[test]
    fn turan_examples() {
        let k333 = Graph::complete_multipartite(&[3, 3, 3]).unwrap();
        assert!(are_isomorphic(&turan(9, 3).unwrap(), &k333).unwrap());
        assert!(are_isomorphic(&turan(4, 4).unwrap(), &Graph::complete(4).unwrap()).unwrap());
        let k34 = Graph::complete_multipartite(&[3, 4]).unwrap();
        assert!(are_isomorphic(&turan(7, 2).unwrap(), &k34).unwrap());
        assert!(turan(3, 4).is_err());
    }

    #[test]
    fn clique_join_examples() {
        for (t, rt, n, e) in [(1, 2, 7, 9), (2, 2, 8, 9), (1, 2, 4, 2)] {
            let c = clique_join_turan(t, rt, n).unwrap();
            assert_eq!(c.expected_count, ExpectedCount::Exact(e));
            assert_eq!(count(&c), e);
            assert_sound(&c);
        }
        assert!(clique_join_turan(1, 2, 3).is_err());
    }

    #[test]
    fn cycle_blowup_examples() {
        let c = cycle_blowup(2, 3, 14, None).unwrap();
        assert_eq!(c.expected_count, ExpectedCount::Exact(64));
        assert_sound(&c);
        let c = cycle_blowup(1, 3, 4, None).unwrap();
        assert!(are_isomorphic(&c.graph, &Graph::cycle(4).unwrap()).unwrap());
        assert_sound(&c);
        let c = cycle_blowup(3, 2, 9, None).unwrap();
        assert_eq!(c.expected_count, ExpectedCount::Exact(9));
        assert_eq!(c.spec.sizes(), &[3, 4]);
        assert_sound(&c);
        let c = cycle_blowup(2, 3, 14, Some(&[1, 2])).unwrap();
        assert_eq!(count(&c), 64);
        assert!(cycle_blowup(2, 2, 8, None).is_err());
        assert!(cycle_blowup(2, 3, 14, Some(&[1, 1])).is_err());
    }

    #[test]
    fn special_c4_blowups() {
        for (n, e) in [(8, 15), (5, 3), (6, 6)] {
            let c = cycle_blowup_22(n).unwrap();
            assert_eq!(c.expected_count, ExpectedCount::Exact(e));
            assert_sound(&c);
        }
        for (n, e) in [(10, 45), (7, 12), (4, 1)] {
            let c = cycle_blowup_13(n).unwrap();
            assert_eq!(c.expected_count, ExpectedCount::Exact(e));
            assert_sound(&c);
        }
    }

    #[test]
    fn path_blowup_examples() {
        let c = path_blowup(1, 2, 2, 13, &[1]).unwrap();
        assert_eq!(c.actual_order, 13);
        assert_eq!(c.expected_count, ExpectedCount::Exact(9));
        assert_eq!(c.spec.sizes(), &[1, 3]);
        assert_sound(&c);
        let c = path_blowup(2, 3, 2, 26, &[1, 3]).unwrap();
        assert_eq!(c.expected_count, ExpectedCount::Exact(64));
        assert_sound(&c);
        let c = path_blowup(1, 3, 2, 7, &[2]).unwrap();
        assert_eq!(c.expected_count, ExpectedCount::Exact(1));
        assert_sound(&c);
        assert!(path_blowup(2, 3, 2, 26, &[1]).is_err());
    }

    #[test]
    fn path_blowup_s2_variants() {
        let base = count(&path_blowup(1, 2, 2, 13, &[1]).unwrap());
        let c = path_blowup_clique_s2(1, 2, 13).unwrap();
        assert!(count(&c) >= base);
        assert_sound(&c);
        let c = path_blowup_clique_s2(2, 2, 14).unwrap();
        assert_sound(&c);
        let c = path_blowup_clique_s2(1, 2, 5).unwrap();
        assert!(count(&c) >= 1);
    }

    #[test]
    fn staircase_examples() {
        let c = staircase(3, 7, 24, Some(&[2, 2, 3])).unwrap();
        assert_eq!(c.actual_order, 24);
        assert_eq!(c.expected_count, ExpectedCount::Exact(3));
        assert_sound(&c);
        for s in c.good_cycles.as_ref().unwrap() {
            assert!(c.graph.induces_cycle(*s));
        }
        let c = staircase(3, 7, 17, None).unwrap();
        assert_eq!(c.expected_count, ExpectedCount::Exact(1));
        assert_sound(&c);
        let c = staircase(4, 9, 22, None).unwrap();
        assert_eq!(c.actual_order, 22);
        assert_eq!(count(&c), 1);
        assert!(c.graph.induces_cycle(c.graph.vertices()));
        assert!(staircase(3, 5, 20, None).is_err());
        assert!(staircase(3, 7, 24, Some(&[2, 2, 2])).is_err());
    }

    #[test]
    fn flawless_triple_shape() {
        for l in (4..=16).step_by(2) {
            let f = flawless_triple(l).unwrap();
            assert_eq!(f.host.regular_degree(), Some(3));
            assert_eq!(f.host.edge_count(), 3 * l / 2);
        }
        assert!(are_isomorphic(&flawless_triple(4).unwrap().host, &Graph::complete(4).unwrap()).unwrap());
        let six = flawless_triple(6).unwrap();
        let mut expected = Graph::cycle(6).unwrap();
        for (a, b) in [(0, 2), (3, 5), (1, 4)] {
            expected.add_edge(a, b).unwrap();
        }
        assert_eq!(six.host, expected);
        assert!(flawless_triple(5).is_err());
    }

    #[test]
    fn expansion_small() {
        let base = flawless_triple(4).unwrap();
        let c = flawless_expansion(&base, 2, 2, CrossEdges::default()).unwrap();
        assert_eq!(c.actual_order, 16);
        assert_sound(&c);
        let good = c.good_cycles.as_ref().unwrap();
        assert_eq!(good.len(), 12);
        assert!(good.iter().all(|s| c.graph.induces_cycle(*s)));
        assert!(count(&c) >= 3);
        let bad = OneFactorization::new(
            Graph::complete_multipartite(&[3, 3]).unwrap(),
            vec![vec![(0, 3), (1, 4), (2, 5)], vec![(0, 4), (1, 5), (2, 3)], vec![(0, 5), (1, 3), (2, 4)]],
        )
        .unwrap();
        assert!(flawless_expansion(&bad, 3, 2, CrossEdges::default()).is_err());
    }
}
