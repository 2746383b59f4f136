//! Uniform set families and the hypergraphs attached to a (graph, pattern) pair.

mod atoms;
mod bounds;

pub use atoms::{atom_decomposition, attachment_profile, AtomDecomposition, AttachmentProfile, ContractedEdge};
pub use bounds::{ap_envelope, def_bound};

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::copies::{copy_sets, CountMode};
use crate::error::{Error, Result, MAX_ORDER};
use crate::graph::{Graph, VertexSet};
use crate::search::clique::{max_clique, BitGraph};

/// Uniformity `r` together with the allowed intersection sizes `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct IntersectionSpec {
    r: usize,
    sizes: Vec<usize>,
    /// Common difference when `l_1, ..., l_s, r` is an arithmetic progression.
    ap_difference: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    r: usize,
    #[serde(rename = "L")]
    l: Vec<usize>,
}

impl TryFrom<RawSpec> for IntersectionSpec {
    type Error = Error;
    fn try_from(raw: RawSpec) -> Result<Self> {
        IntersectionSpec::new(raw.r, &raw.l)
    }
}

impl From<IntersectionSpec> for RawSpec {
    fn from(s: IntersectionSpec) -> Self {
        RawSpec { r: s.r, l: s.sizes }
    }
}

impl IntersectionSpec {
    /// Validates `r >= 3` and `L ⊆ [0, r-1]` nonempty; `L` is sorted and deduplicated.
    pub fn new(r: usize, sizes: &[usize]) -> Result<Self> {
        if r < 3 {
            return Err(Error::InvalidParams(format!("uniformity must be at least 3, got {r}")));
        }
        let mut sizes = sizes.to_vec();
        sizes.sort_unstable();
        sizes.dedup();
        if sizes.is_empty() {
            return Err(Error::InvalidParams("L must be nonempty".into()));
        }
        if let Some(&bad) = sizes.iter().find(|&&l| l >= r) {
            return Err(Error::InvalidParams(format!("intersection size {bad} not in [0, {}]", r - 1)));
        }
        let d = r - sizes[sizes.len() - 1];
        let ap = sizes.windows(2).all(|w| w[1] - w[0] == d);
        Ok(IntersectionSpec { r, sizes, ap_difference: ap.then_some(d) })
    }

    /// `L = [t, r-1]`.
    pub fn t_intersecting(r: usize, t: usize) -> Result<Self> {
        IntersectionSpec::new(r, &(t..r).collect::<Vec<_>>())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn s(&self) -> usize {
        self.sizes.len()
    }

    pub fn min(&self) -> usize {
        self.sizes[0]
    }

    pub fn ap_with_r(&self) -> bool {
        self.ap_difference.is_some()
    }

    pub fn ap_difference(&self) -> Option<usize> {
        self.ap_difference
    }

    pub fn allows(&self, k: usize) -> bool {
        self.sizes.binary_search(&k).is_ok()
    }

    /// Sizes allowed for the link family over a common set of size `l`.
    pub fn link_sizes(&self, l: usize) -> Vec<usize> {
        self.sizes.iter().filter(|&&x| x >= l).map(|&x| x - l).collect()
    }
}

impl std::fmt::Display for IntersectionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let l: Vec<String> = self.sizes.iter().map(|x| x.to_string()).collect();
        write!(f, "r={} L={{{}}}", self.r, l.join(","))
    }
}

/// An `r`-uniform family of distinct subsets of `0..ground_size`.
///
/// Edges are kept sorted by their member lists, which fixes the order used
/// for diagnostics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SetFamily {
    ground_size: usize,
    r: usize,
    edges: Vec<VertexSet>,
    /// For link families: ground index -> original vertex id.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertex_map: Option<Vec<usize>>,
}

impl SetFamily {
    pub fn new(ground_size: usize, r: usize, mut edges: Vec<VertexSet>) -> Result<Self> {
        if ground_size > MAX_ORDER {
            return Err(Error::OrderTooLarge { order: ground_size, max: MAX_ORDER });
        }
        for e in &edges {
            if e.len() != r {
                return Err(Error::InvalidParams(format!("edge {e:?} does not have {r} members")));
            }
            if !e.is_subset(VertexSet::full(ground_size)) {
                return Err(Error::InvalidParams(format!("edge {e:?} leaves ground set 0..{ground_size}")));
            }
        }
        edges.sort_by(|a, b| a.lex_cmp(*b));
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidParams(format!("duplicate edge {:?}", w[0])));
        }
        Ok(SetFamily { ground_size, r, edges, vertex_map: None })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertex_map(&self) -> Option<&[usize]> {
        self.vertex_map.as_deref()
    }

    /// Translates a ground-set subset back to original vertex ids.
    pub fn to_original(&self, set: VertexSet) -> VertexSet {
        match &self.vertex_map {
            Some(map) => set.iter().map(|i| map[i]).collect(),
            None => set,
        }
    }

    /// The first pair (in edge order) whose intersection size is not allowed.
    pub fn first_violation(&self, allowed: &[usize]) -> Option<Violation> {
        for (i, a) in self.edges.iter().enumerate() {
            for b in &self.edges[i + 1..] {
                let k = a.intersection(*b).len();
                if !allowed.contains(&k) {
                    return Some(Violation { first: *a, second: *b, size: k });
                }
            }
        }
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub first: VertexSet,
    pub second: VertexSet,
    pub size: usize,
}

/// `Ok(None)` when every pair of distinct edges meets in a size from `L`;
/// otherwise the first offending pair.
pub fn is_l_intersecting(fam: &SetFamily, spec: &IntersectionSpec) -> Result<Option<Violation>> {
    if fam.r != spec.r {
        return Err(Error::UniformityMismatch { family: fam.r, spec: spec.r });
    }
    Ok(fam.first_violation(&spec.sizes))
}

pub fn common_core(fam: &SetFamily) -> Result<VertexSet> {
    let mut it = fam.edges.iter();
    let first = *it.next().ok_or(Error::EmptyFamily)?;
    Ok(it.fold(first, |acc, e| acc.intersection(*e)))
}

/// `H^r_{G,F}`: the `r`-subsets inducing (or, in span mode, containing) `pattern`.
pub fn associated_family(g: &Graph, pattern: &Graph, mode: CountMode) -> SetFamily {
    let edges = copy_sets(g, pattern, mode);
    SetFamily::new(g.order(), pattern.order(), edges).expect("copy sets are distinct r-subsets")
}

/// `H^{r-|w|}_{G,F,W}` over the ground set `V(g) \ w`, re-indexed in
/// increasing vertex order; the mapping is kept in [`SetFamily::vertex_map`].
pub fn link_family(g: &Graph, pattern: &Graph, w: VertexSet) -> Result<SetFamily> {
    if w.len() > pattern.order() {
        return Err(Error::InvalidParams(format!(
            "|W| = {} exceeds pattern order {}",
            w.len(),
            pattern.order()
        )));
    }
    if !w.is_subset(g.vertices()) {
        return Err(Error::InvalidParams(format!("W = {w:?} is not a vertex subset")));
    }
    let rest = g.vertices().difference(w);
    let map: Vec<usize> = rest.to_vec();
    let mut index = [usize::MAX; MAX_ORDER];
    for (i, &v) in map.iter().enumerate() {
        index[v] = i;
    }
    let edges: Vec<VertexSet> = copy_sets(g, pattern, CountMode::Induced)
        .into_iter()
        .filter(|s| w.is_subset(*s))
        .map(|s| s.difference(w).iter().map(|v| index[v]).collect())
        .collect();
    let mut fam = SetFamily::new(map.len(), pattern.order() - w.len(), edges)?;
    fam.vertex_map = Some(map);
    Ok(fam)
}

/// A maximum sub-family of edges containing `core` whose pairwise
/// intersections are exactly `core`.
pub fn max_sunflower_with_core(fam: &SetFamily, core: VertexSet, node_cap: u64) -> Result<SetFamily> {
    if core.len() >= fam.r {
        return Err(Error::InvalidParams(format!(
            "core size {} must be below the uniformity {}",
            core.len(),
            fam.r
        )));
    }
    let petals: Vec<VertexSet> = fam.edges.iter().copied().filter(|e| core.is_subset(*e)).collect();
    let mut compat = BitGraph::new(petals.len());
    for i in 0..petals.len() {
        for j in i + 1..petals.len() {
            if petals[i].intersection(petals[j]) == core {
                compat.add_edge(i, j);
            }
        }
    }
    let res = max_clique(&compat, node_cap, 1);
    if res.exhausted {
        return Err(Error::Budget(format!(
            "sunflower search exceeded {node_cap} nodes (best so far {})",
            res.clique.len()
        )));
    }
    let mut out = SetFamily::new(fam.ground_size, fam.r, res.clique.iter().map(|&i| petals[i]).collect())?;
    out.vertex_map = fam.vertex_map.clone();
    Ok(out)
}

impl PartialOrd for Violation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Violation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.first
            .lex_cmp(other.first)
            .then(self.second.lex_cmp(other.second))
            .then(self.size.cmp(&other.size))
    }
}
