//! Models sized for benchmarking: each one leans on a different stage of
//! the construction (triple scans, orientation search, cube filling, or
//! the tree comparison).

use cutcube_core::instances::{grid, ids, rotation_pow, theta, theta_arc_swap, vset};
use cutcube_core::{instances::cycle, Model, Perm, SpaceGraph};

/// Theta graph with `k` interior vertices per arc, the arc-swapping S₃
/// action, and the junction pair as the single cut set. Growing `k` grows
/// the off-the-wall triple count cubically while the wall count stays 3.
pub fn theta_model(k: usize) -> Model {
    let graph = theta(k);
    let generators = vec![
        theta_arc_swap(&graph, k, "p", "q"),
        theta_arc_swap(&graph, k, "q", "r"),
    ];
    let cut_sets = vec![vset(&graph, &["a", "b"])];
    Model {
        graph,
        generators,
        cut_sets,
    }
}

/// Cycle on `6·pairs` vertices with the short cut pairs `{6i, 6i+3}`.
/// The walls are pairwise nested, so the complex is a star-shaped tree,
/// while the exhaustive orientation scan still wades through
/// `2^pairs` candidates. Rotation by 6 closes the family.
pub fn nested_cycle_model(pairs: usize) -> Model {
    let n = 6 * pairs;
    let graph = cycle(n);
    let generators = vec![rotation_pow(n, 6)];
    let cut_sets = (0..pairs as u32)
        .map(|i| ids(&[6 * i, 6 * i + 3]))
        .collect();
    Model {
        graph,
        generators,
        cut_sets,
    }
}

/// Cycle on `8·pairs` vertices with evenly spread antipodal cut pairs
/// `{4i, 4i + n/2}`: every two walls cross, so the complex is a solid
/// `pairs`-dimensional cube and the cube-filling stage dominates.
/// Rotation by the spacing closes the family.
pub fn crossing_cycle_model(pairs: usize) -> Model {
    let n = 8 * pairs;
    let spacing = (n / (2 * pairs)) as u32;
    let graph = cycle(n);
    let generators = vec![rotation_pow(n, spacing as usize)];
    let cut_sets = (0..pairs as u32)
        .map(|i| ids(&[i * spacing, i * spacing + n as u32 / 2]))
        .collect();
    Model {
        graph,
        generators,
        cut_sets,
    }
}

/// 3×9 grid with columns 2, 4, 6 as cut sets and the two flips as
/// generators; the dual tree alternates principal vertices with the
/// three cut-set classes, so the full comparison pipeline runs.
pub fn grid_columns_model() -> Model {
    let graph = grid(3, 9);
    let generators = vec![
        relabel(&graph, |i, j| (2 - i, j)),
        relabel(&graph, |i, j| (i, 8 - j)),
    ];
    let column = |j: usize| {
        let names: Vec<String> = (0..3).map(|i| format!("r{i}c{j}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        vset(&graph, &refs)
    };
    let cut_sets = vec![column(2), column(4), column(6)];
    Model {
        graph,
        generators,
        cut_sets,
    }
}

/// Permutation of grid vertices given by a coordinate map.
fn relabel(graph: &SpaceGraph, map: impl Fn(usize, usize) -> (usize, usize)) -> Perm {
    let images = graph
        .names()
        .iter()
        .map(|name| {
            let bytes = name.as_bytes();
            let (i, j) = ((bytes[1] - b'0') as usize, (bytes[3] - b'0') as usize);
            let (i2, j2) = map(i, j);
            graph
                .index_of(&format!("r{i2}c{j2}"))
                .expect("flip stays inside the grid")
        })
        .collect();
    Perm(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cutcube_core::pipeline::{build_pipeline, tree_pipeline};
    use cutcube_core::Caps;

    #[test]
    fn benchmark_models_build_and_agree_with_the_oracle() {
        let caps = Caps::default();
        for (model, walls, dimension) in [
            (theta_model(3), 3, 1),
            (nested_cycle_model(6), 6, 1),
            (crossing_cycle_model(4), 4, 4),
        ] {
            let built = build_pipeline(model, &caps, true).unwrap();
            assert_eq!(built.wallspace.wall_count(), walls);
            assert_eq!(built.complex.dimension, dimension);
        }
    }

    #[test]
    fn grid_model_runs_the_whole_tree_comparison() {
        let outcome = tree_pipeline(grid_columns_model(), &Caps::default(), false).unwrap();
        assert!(outcome.skipped.is_none());
        assert!(outcome.comparison.is_some());
    }
}
