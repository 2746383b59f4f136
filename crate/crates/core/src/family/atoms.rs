//! Atoms of a link family and how atoms attach to the common set `W`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::SetFamily;
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AtomDecomposition {
    /// Classes of covered vertices with identical edge membership, ordered by smallest member.
    pub atoms: Vec<VertexSet>,
    /// Atoms of size exactly `d`.
    pub d_atoms: Vec<VertexSet>,
    /// Union of `d_atoms`.
    pub covered_union: VertexSet,
    /// Ground vertices outside `W` and outside `covered_union`.
    pub remainder: VertexSet,
}

/// Groups the vertices covered by `fam` by the set of edges containing them.
///
/// Vertices are reported in original ids when the family carries a vertex
/// map (as link families do). Vertices in no edge are not part of any atom.
pub fn atom_decomposition(fam: &SetFamily, w: VertexSet, d: usize) -> AtomDecomposition {
    let words = fam.len().div_ceil(64);
    let mut prints: Vec<Vec<u64>> = vec![vec![0; words]; fam.ground_size()];
    for (i, e) in fam.edges().iter().enumerate() {
        for v in e.iter() {
            prints[v][i / 64] |= 1 << (i % 64);
        }
    }
    let mut classes: BTreeMap<&[u64], VertexSet> = BTreeMap::new();
    for (v, p) in prints.iter().enumerate() {
        if p.iter().any(|&x| x != 0) {
            classes.entry(p.as_slice()).or_default().insert(v);
        }
    }
    let mut atoms: Vec<VertexSet> = classes.into_values().map(|a| fam.to_original(a)).collect();
    atoms.sort_by_key(|a| a.iter().next());
    let d_atoms: Vec<VertexSet> = atoms.iter().copied().filter(|a| a.len() == d).collect();
    let covered_union = d_atoms.iter().fold(VertexSet::EMPTY, |acc, a| acc.union(*a));
    let ground = fam.to_original(VertexSet::full(fam.ground_size()));
    let remainder = ground.difference(w).difference(covered_union);
    AtomDecomposition { atoms, d_atoms, covered_union, remainder }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractedEdge {
    pub a: usize,
    pub b: usize,
    /// The vertex of `S` adjacent to both ends (smallest such).
    pub via: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AttachmentProfile {
    /// `(w, alpha(w, S))` for each `w` in increasing order.
    pub per_w: Vec<(usize, usize)>,
    /// The contraction graph on `W`, present when every alpha equals 1.
    pub matching: Option<Vec<ContractedEdge>>,
    /// Vertices of `W` with more than two neighbours in `S`.
    pub over_attached: Vec<usize>,
}

/// Neighbour counts of each `w` in `S`, plus the graph on `W` obtained by
/// contracting vertices of `S` that join two members of `W`.
pub fn attachment_profile(g: &Graph, s: VertexSet, w: VertexSet) -> AttachmentProfile {
    let per_w: Vec<(usize, usize)> = w.iter().map(|x| (x, g.neighbors(x).intersection(s).len())).collect();
    let over_attached = per_w.iter().filter(|p| p.1 > 2).map(|p| p.0).collect();
    let matching = (!per_w.is_empty() && per_w.iter().all(|p| p.1 == 1)).then(|| {
        let ws = w.to_vec();
        let mut out = Vec::new();
        for (i, &a) in ws.iter().enumerate() {
            for &b in &ws[i + 1..] {
                let common = g.neighbors(a).intersection(g.neighbors(b)).intersection(s);
                if let Some(via) = common.iter().next() {
                    out.push(ContractedEdge { a, b, via });
                }
            }
        }
        out
    });
    AttachmentProfile { per_w, matching, over_attached }
}
