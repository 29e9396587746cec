use cutcube_core::pipeline::build_pipeline;
use cutcube_core::random::random_instance;
use cutcube_core::{Caps, SpaceGraph, VertexId, VertexSet};
use proptest::prelude::*;

/// Strategy: a connected graph on `n` vertices built from a spanning cycle
/// plus a handful of chords, together with a proper subset of vertices to
/// delete.
fn graph_and_removal() -> impl Strategy<Value = (SpaceGraph, VertexSet)> {
    (4usize..12).prop_flat_map(|n| {
        let chords = proptest::collection::vec((0..n as u32, 0..n as u32), 0..5);
        let removed = proptest::collection::btree_set(0..n as u32, 0..n - 1);
        (chords, removed).prop_map(move |(chords, removed)| {
            let mut edges: std::collections::BTreeSet<(u32, u32)> = (0..n as u32)
                .map(|i| (i.min((i + 1) % n as u32), i.max((i + 1) % n as u32)))
                .collect();
            for (a, b) in chords {
                if a != b {
                    edges.insert((a.min(b), a.max(b)));
                }
            }
            let edges: Vec<(u32, u32)> = edges.into_iter().collect();
            let g = SpaceGraph::from_edges(n, &edges).unwrap();
            let removed: VertexSet = removed.into_iter().collect();
            (g, removed)
        })
    })
}

proptest! {
    /// Deleting any proper vertex subset partitions the remaining vertices
    /// into components: every survivor lies in exactly one component, no
    /// deleted vertex lies in any, and every component spans a connected
    /// subgraph.
    #[test]
    fn components_partition_the_survivors((g, removed) in graph_and_removal()) {
        let comps = g.components(&removed).unwrap();
        let mut seen = vec![0usize; g.vertex_count()];
        for comp in &comps {
            prop_assert!(!comp.is_empty());
            prop_assert!(g.is_connected_subset(comp));
            for v in comp.iter() {
                prop_assert!(!removed.contains(v));
                seen[v as usize] += 1;
            }
        }
        for v in 0..g.vertex_count() as VertexId {
            let expected = usize::from(!removed.contains(v));
            prop_assert_eq!(seen[v as usize], expected);
        }
    }

    /// The dimension of the dual complex equals the size of the largest
    /// set of pairwise-crossing walls, computed from the transversality
    /// graph rather than from the cubes themselves.
    #[test]
    fn complex_dimension_is_the_largest_crossing_clique(seed in 0u64..500) {
        let model = random_instance(seed).into_model();
        let built = build_pipeline(model, &Caps::default(), false).unwrap();
        let (clique, witness) = built.wallspace.max_transverse_clique();
        prop_assert_eq!(built.complex.dimension, clique);
        for (i, &a) in witness.iter().enumerate() {
            for &b in &witness[i + 1..] {
                prop_assert!(built.wallspace.transverse(a, b));
            }
        }
    }
}
