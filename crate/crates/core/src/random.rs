//! Seeded random instances: 2-connected chordal cycles with randomly
//! chosen valid cut-set families, for fuzzing the oracle comparisons and
//! the tree theorem. Same seed, same instance.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::division::{
    canonical_divisions, close_under_action, enumerate_cut_sets, mutually_non_separating,
};
use crate::graph::{SpaceGraph, VertexSet};
use crate::group::Group;
use crate::input::Model;
use crate::wallspace::Wallspace;

pub struct RandomModel {
    pub graph: SpaceGraph,
    pub cut_sets: Vec<VertexSet>,
}

impl RandomModel {
    pub fn into_model(self) -> Model {
        Model {
            graph: self.graph,
            generators: Vec::new(),
            cut_sets: self.cut_sets,
        }
    }
}

/// A cycle on 6–16 vertices with a few random chords: always connected,
/// always 2-connected.
fn random_graph(rng: &mut ChaCha8Rng) -> SpaceGraph {
    let n = rng.gen_range(6..=16usize);
    let mut edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
    let chords = rng.gen_range(0..=n / 3);
    let mut added = 0;
    for _ in 0..40 {
        if added == chords {
            break;
        }
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        if u == v {
            continue;
        }
        let (a, b) = (u.min(v), u.max(v));
        if b - a == 1 || (a == 0 && b == n as u32 - 1) || edges.contains(&(a, b)) {
            continue;
        }
        edges.push((a, b));
        added += 1;
    }
    SpaceGraph::from_edges(n, &edges).expect("a cycle with chords is a simple graph")
}

/// Active wall count of this cut-set choice under the trivial group, or
/// `None` when the wall system is unbuildable or oversized.
fn active_walls(graph: &SpaceGraph, chosen: &[VertexSet]) -> Option<usize> {
    let mut seeds = Vec::new();
    for c in chosen {
        seeds.extend(canonical_divisions(graph, c).ok()?);
    }
    let group = Group::trivial(graph.vertex_count());
    let family = close_under_action(&seeds, &group, 4096).ok()?;
    let ws = Wallspace::build(graph, &family).ok()?;
    (1..=12).contains(&ws.wall_count()).then(|| ws.wall_count())
}

fn generate(seed: u64, mns_only: bool) -> RandomModel {
    for attempt in 0u64..10_000 {
        let mut rng = ChaCha8Rng::seed_from_u64(
            seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15)),
        );
        let graph = random_graph(&mut rng);
        let mut candidates = enumerate_cut_sets(&graph, 3);
        if candidates.is_empty() {
            continue;
        }
        candidates.shuffle(&mut rng);
        let want = rng.gen_range(2..=4usize);
        let mut chosen: Vec<VertexSet> = Vec::new();
        for c in candidates {
            if chosen.len() == want {
                break;
            }
            if mns_only
                && !chosen
                    .iter()
                    .all(|d| mutually_non_separating(&graph, &c, d).holds)
            {
                continue;
            }
            let mut next = chosen.clone();
            next.push(c);
            if active_walls(&graph, &next).is_some() {
                chosen = next;
            }
        }
        // The first few attempts insist on at least two walls so the
        // corpus is not dominated by single-wall instances; afterwards
        // any buildable choice is accepted.
        let min_walls = if attempt < 3 { 2 } else { 1 };
        if chosen.is_empty() || active_walls(&graph, &chosen).is_none_or(|w| w < min_walls) {
            continue;
        }
        chosen.sort();
        return RandomModel {
            graph,
            cut_sets: chosen,
        };
    }
    panic!("random instance generation failed for seed {seed}");
}

/// A random model with 1–3 valid cut sets; walls may cross.
pub fn random_instance(seed: u64) -> RandomModel {
    generate(seed, false)
}

/// A random model whose cut sets are pairwise mutually non-separating,
/// as the tree theorem requires.
pub fn random_mns_instance(seed: u64) -> RandomModel {
    generate(seed, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{build_pipeline, tree_pipeline, Caps};

    #[test]
    fn same_seed_same_instance() {
        let a = random_instance(7);
        let b = random_instance(7);
        assert_eq!(a.graph.edges(), b.graph.edges());
        assert_eq!(a.cut_sets, b.cut_sets);
        let c = random_instance(8);
        let changed = a.graph.edges() != c.graph.edges() || a.cut_sets != c.cut_sets;
        assert!(changed);
    }

    #[test]
    fn random_instances_survive_the_oracle() {
        for seed in 0..10 {
            let model = random_instance(seed).into_model();
            let built = build_pipeline(model, &Caps::default(), true)
                .unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            assert!(built.wallspace.wall_count() <= 12);
        }
    }

    #[test]
    fn mns_instances_run_the_tree_pipeline() {
        for seed in 100..105 {
            let inst = random_mns_instance(seed);
            for (i, c) in inst.cut_sets.iter().enumerate() {
                for d in &inst.cut_sets[i + 1..] {
                    assert!(mutually_non_separating(&inst.graph, c, d).holds);
                }
            }
            let outcome = tree_pipeline(inst.into_model(), &Caps::default(), true)
                .unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            if let Some(cmp) = &outcome.comparison {
                assert!(cmp.success);
            }
        }
    }
}
