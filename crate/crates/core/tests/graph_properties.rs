use lfam::canon::{are_isomorphic, canonical_form};
use lfam::copies::{count_copies, enumerate_induced_copies, CountMode};
use lfam::generate::{enumerate_graphs, GraphConstraint};
use lfam::io::{from_edge_list, from_graph6, to_edge_list, to_graph6};
use lfam::{Graph, VertexSet};
use proptest::prelude::*;

fn graph_strategy(min: usize, max: usize) -> impl Strategy<Value = Graph> {
    (min..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n).unwrap();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        })
    })
}

/// Naive: test every r-subset for isomorphism with the pattern.
fn naive_copies(host: &Graph, pattern: &Graph) -> Vec<VertexSet> {
    let n = host.order();
    let r = pattern.order();
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == r)
        .map(VertexSet)
        .filter(|s| are_isomorphic(&host.induced(*s), pattern).unwrap())
        .collect()
}

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn induced_copies_match_naive(host in graph_strategy(0, 9), pattern in graph_strategy(0, 4)) {
        let mut fast = enumerate_induced_copies(&host, &pattern);
        let mut slow = naive_copies(&host, &pattern);
        fast.sort();
        slow.sort();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn complement_duality(host in graph_strategy(0, 8), pattern in graph_strategy(1, 4)) {
        prop_assert_eq!(
            count_copies(&host, &pattern, CountMode::Induced),
            count_copies(&host.complement(), &pattern.complement(), CountMode::Induced)
        );
    }

    #[test]
    fn r_subsets_partition(host in graph_strategy(0, 8), r in 0usize..=4) {
        let total: u64 = enumerate_graphs(r, GraphConstraint::All)
            .unwrap()
            .map(|f| count_copies(&host, &f, CountMode::Induced))
            .sum();
        prop_assert_eq!(total, binom(host.order(), r));
    }

    #[test]
    fn canonical_form_relabel_invariant(g in graph_strategy(0, 12), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let h = g.permuted(&perm);
        let a = canonical_form(&g).unwrap();
        let b = canonical_form(&h).unwrap();
        prop_assert_eq!(&a.bytes, &b.bytes);
        prop_assert_eq!(to_graph6(&a.graph(&g)).into_bytes(), a.bytes);
    }

    #[test]
    fn span_count_bounds_induced(host in graph_strategy(0, 8), pattern in graph_strategy(1, 4)) {
        prop_assert!(count_copies(&host, &pattern, CountMode::Span) >= count_copies(&host, &pattern, CountMode::Induced));
    }

    #[test]
    fn text_round_trips(g in graph_strategy(0, 64)) {
        prop_assert_eq!(&from_graph6(&to_graph6(&g)).unwrap(), &g);
        prop_assert_eq!(&from_edge_list(&to_edge_list(&g)).unwrap(), &g);
    }
}

#[test]
fn enumeration_matches_labelled_dedup() {
    use std::collections::HashSet;
    for n in 0..=6 {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let mut brute = HashSet::new();
        for mask in 0u64..1 << pairs.len() {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
            brute.insert(canonical_form(&Graph::from_edges(n, &edges).unwrap()).unwrap().bytes);
        }
        let gen: HashSet<Vec<u8>> = enumerate_graphs(n, GraphConstraint::All)
            .unwrap()
            .map(|g| canonical_form(&g).unwrap().bytes)
            .collect();
        assert_eq!(gen, brute, "n = {n}");
    }
    assert_eq!(enumerate_graphs(4, GraphConstraint::All).unwrap().count(), 11);
}
