//! End-to-end assembly: model → group → division family → wallspace →
//! cube complex (with oracle cross-checks), and the tree pipeline that
//! carries a mutually-non-separating family through subdivision,
//! classification, pinching, and the equivariant tree comparison.

use crate::complex::{
    build_complex, check_principal_equivariance, induced_action, oracle_enumerate, ComplexAction,
    CubeComplex, Hyperplane,
};
use crate::cutpoint::{
    build_cutpoint_tree, compare_trees, lemma_checks, pinch, CutPointTree, LemmaReport,
    PinchedSpace, TreeComparison,
};
use crate::division::{
    canonical_divisions, close_under_action, mutually_non_separating, DivisionFamily,
};
use crate::error::{ModelError, Result};
use crate::group::{is_automorphism, Group};
use crate::input::Model;
use crate::tree::{
    adjacency_laws, check_tree_hypotheses, classify_vertices, is_tree, subdivide,
    subdivision_stabilizer_report, tree_check, AdjacencyReport, SubdividedTree,
    SubdivisionStabCheck, TreeCheck, TreeHypotheses, TypedTree,
};
use crate::wallspace::Wallspace;

/// Resource caps. Exceeding one is reported as its own error class, never
/// silently truncated.
#[derive(Clone, Debug)]
pub struct Caps {
    /// Maximum group order the closure may reach.
    pub group: usize,
    /// Maximum number of divisions in the closed family.
    pub family: usize,
    /// Maximum number of complex vertices the dual construction may emit.
    pub complex_vertices: usize,
    /// Maximum wall count for the exponential orientation oracle.
    pub oracle_walls: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            group: 1_000_000,
            family: 4096,
            complex_vertices: 100_000,
            oracle_walls: 20,
        }
    }
}

/// Everything the build pipeline produces.
#[derive(Debug)]
pub struct Built {
    pub model: Model,
    pub group: Group,
    pub family: DivisionFamily,
    pub wallspace: Wallspace,
    pub complex: CubeComplex,
    pub hyperplanes: Vec<Hyperplane>,
    pub action: ComplexAction,
}

/// Run the construction. With `run_oracle` the independent routes are
/// also run and compared: the triple-scan wallspace relations, the
/// exhaustive orientation enumeration, and principal-triple equivariance.
pub fn build_pipeline(model: Model, caps: &Caps, run_oracle: bool) -> Result<Built> {
    for (i, g) in model.generators.iter().enumerate() {
        if !is_automorphism(&model.graph, g) {
            return Err(ModelError::ActionMismatch(format!(
                "generator {i} ({}) is not a graph automorphism",
                g.cycles_string(model.graph.names())
            )));
        }
    }
    let group = model.group(caps.group)?;
    let mut seeds = Vec::new();
    for c in &model.cut_sets {
        seeds.extend(canonical_divisions(&model.graph, c)?);
    }
    let family = close_under_action(&seeds, &group, caps.family)?;
    let wallspace = Wallspace::build(&model.graph, &family)?;
    let complex = build_complex(&wallspace, caps.complex_vertices)?;
    let hyperplanes = complex.hyperplanes()?;
    let action = induced_action(&complex, &wallspace, &family, &group)?;
    if run_oracle {
        wallspace.check_against_scan()?;
        let oracle = oracle_enumerate(&wallspace, caps.oracle_walls)?;
        if oracle != complex.orientations {
            return Err(ModelError::OracleMismatch(format!(
                "orientation enumeration finds {} consistent orientations, the search \
                 from principal ones reaches {}",
                oracle.len(),
                complex.vertex_count()
            )));
        }
        check_principal_equivariance(&complex, &wallspace, &action, &group)?;
    }
    Ok(Built {
        model,
        group,
        family,
        wallspace,
        complex,
        hyperplanes,
        action,
    })
}

/// The tree pipeline's results. `skipped` carries the reason when thin
/// classes or degenerate walls made the classification and comparison
/// inapplicable; the theorem-level stages are then `None`.
#[derive(Debug)]
pub struct TreeOutcome {
    pub built: Built,
    pub hypotheses: TreeHypotheses,
    pub tree_check: TreeCheck,
    pub tree: SubdividedTree,
    pub typed: TypedTree,
    pub skipped: Option<String>,
    pub adjacency: Option<AdjacencyReport>,
    pub stab_checks: Vec<SubdivisionStabCheck>,
    pub pinched: Option<PinchedSpace>,
    pub cutpoint: Option<CutPointTree>,
    pub lemmas: Option<LemmaReport>,
    pub comparison: Option<TreeComparison>,
}

/// Run the full tree theorem on a model whose cut sets are pairwise
/// mutually non-separating. Failing that prerequisite is a validation
/// error; a transverse wall pair, a broken classification, or a failed
/// comparison falsifies a theorem-level assertion.
pub fn tree_pipeline(model: Model, caps: &Caps, run_oracle: bool) -> Result<TreeOutcome> {
    let built = build_pipeline(model, caps, run_oracle)?;
    let graph = &built.model.graph;
    let cuts = built.family.cut_sets();
    for i in 0..cuts.len() {
        for j in i + 1..cuts.len() {
            let mns = mutually_non_separating(graph, &cuts[i], &cuts[j]);
            if !mns.holds {
                let reason = if mns.overlap {
                    "they overlap"
                } else {
                    "one separates the other"
                };
                return Err(ModelError::Validation(format!(
                    "cut sets {} and {} are not mutually non-separating: {reason}",
                    cuts[i].display(graph.names()),
                    cuts[j].display(graph.names()),
                )));
            }
        }
    }

    let hypotheses = check_tree_hypotheses(graph, &built.family);
    let check = tree_check(&built.wallspace, &built.complex);
    if !is_tree(&built.wallspace, &built.complex)? {
        let detail = match check.transverse_pairs.first() {
            Some(&(i, j)) => format!("walls {i} and {j} are transverse"),
            None => "the 1-skeleton is not connected and acyclic".to_string(),
        };
        return Err(ModelError::NotATree(format!(
            "the dual complex of a mutually non-separating family must be a tree, but {detail}"
        )));
    }

    let tree = subdivide(graph, &built.wallspace, &built.family, &built.complex)?;
    let typed = classify_vertices(
        graph,
        &built.wallspace,
        &built.family,
        &built.complex,
        &tree,
    )?;
    if !typed.complete {
        let skipped = format!(
            "classification skipped: {} thin classes, {} excluded walls, {} coincident walls",
            typed.thin_classes.len(),
            built.wallspace.excluded.len(),
            built.wallspace.coincident_walls().len()
        );
        return Ok(TreeOutcome {
            built,
            hypotheses,
            tree_check: check,
            tree,
            typed,
            skipped: Some(skipped),
            adjacency: None,
            stab_checks: Vec::new(),
            pinched: None,
            cutpoint: None,
            lemmas: None,
            comparison: None,
        });
    }

    let adjacency = adjacency_laws(graph, &tree, &typed)?;
    let stab_checks =
        subdivision_stabilizer_report(graph, &built.wallspace, &built.family, &built.group)?;
    let pinched = pinch(graph, &cuts, &built.group)?;
    let cutpoint = build_cutpoint_tree(&pinched.quotient)?;
    let lemmas = lemma_checks(graph, &pinched, &cutpoint, &typed.classes, true)?;
    let comparison = compare_trees(
        graph,
        &tree,
        &typed,
        &pinched,
        &cutpoint,
        &built.action,
        &built.group,
    )?;
    if !comparison.success {
        return Err(ModelError::Isomorphism(
            comparison
                .failure
                .unwrap_or_else(|| "no certificate recorded".into()),
        ));
    }

    Ok(TreeOutcome {
        built,
        hypotheses,
        tree_check: check,
        tree,
        typed,
        skipped: None,
        adjacency: Some(adjacency),
        stab_checks,
        pinched: Some(pinched),
        cutpoint: Some(cutpoint),
        lemmas: Some(lemmas),
        comparison: Some(comparison),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    fn model(
        graph: crate::graph::SpaceGraph,
        generators: Vec<crate::group::Perm>,
        cuts: Vec<crate::graph::VertexSet>,
    ) -> Model {
        Model {
            graph,
            generators,
            cut_sets: cuts,
        }
    }

    #[test]
    fn theta_runs_end_to_end_with_oracle() {
        let th = instances::theta(2);
        let gens = vec![
            instances::theta_arc_swap(&th, 2, "p", "q"),
            instances::theta_arc_swap(&th, 2, "q", "r"),
        ];
        let cut = instances::vset(&th, &["a", "b"]);
        let outcome = tree_pipeline(model(th, gens, vec![cut]), &Caps::default(), true).unwrap();
        assert!(outcome.skipped.is_none());
        let cmp = outcome.comparison.unwrap();
        assert!(cmp.success);
        assert_eq!(outcome.built.group.order(), 6);
        assert_eq!(outcome.built.action.stabilizers_match, Some(true));
    }

    #[test]
    fn crossing_family_is_rejected_before_tree_stages() {
        let c8 = instances::cycle(8);
        let cuts = vec![instances::ids(&[0, 4]), instances::ids(&[2, 6])];
        let err = tree_pipeline(model(c8, vec![], cuts), &Caps::default(), false).unwrap_err();
        assert!(matches!(err, ModelError::Validation(_)));
    }

    #[test]
    fn degenerate_walls_skip_the_classification() {
        let c8 = instances::cycle(8);
        let cuts = vec![instances::ids(&[1, 3]), instances::ids(&[5, 7])];
        let outcome = tree_pipeline(model(c8, vec![], cuts), &Caps::default(), true).unwrap();
        let reason = outcome.skipped.unwrap();
        assert!(reason.contains("2 thin classes"));
        assert!(reason.contains("2 excluded walls"));
        assert!(outcome.comparison.is_none());
    }

    #[test]
    fn vertex_cap_is_enforced() {
        let c8 = instances::cycle(8);
        let cuts = vec![instances::ids(&[0, 4]), instances::ids(&[2, 6])];
        let caps = Caps {
            complex_vertices: 3,
            ..Caps::default()
        };
        let err = build_pipeline(model(c8, vec![], cuts), &caps, false).unwrap_err();
        assert!(err.is_cap());
    }

    #[test]
    fn non_automorphism_generators_are_an_action_mismatch() {
        let th = instances::theta(2);
        let n = th.vertex_count();
        let mut swap = (0..n as u32).collect::<Vec<_>>();
        swap.swap(0, 2); // junction ↔ arc interior: not an automorphism
        let err = build_pipeline(
            model(th, vec![crate::group::Perm(swap)], vec![]),
            &Caps::default(),
            false,
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::ActionMismatch(_)));
    }
}
