//! Deterministic exports: DOT drawings of the complex 1-skeleton, the
//! wall crossing graph, the typed tree, and the cut point tree, plus JSON
//! summaries of the complex, the transversality relations, and the tree
//! comparison certificate. Identical inputs produce identical bytes.

use serde_json::json;

use crate::complex::orientation_string;
use crate::cutpoint::CutPointTree;
use crate::graph::SpaceGraph;
use crate::pipeline::{Built, TreeOutcome};
use crate::tree::{SubdividedTree, TypedTree, VertexType};
use crate::wallspace::{Halfspace, Sign};

fn names_of(set: &crate::graph::VertexSet, graph: &SpaceGraph) -> Vec<String> {
    set.iter().map(|v| graph.name(v).to_string()).collect()
}

fn pretty(value: serde_json::Value) -> String {
    let mut out = serde_json::to_string_pretty(&value).expect("JSON export is infallible");
    out.push('\n');
    out
}

pub fn complex_json(built: &Built) -> String {
    let graph = &built.model.graph;
    let ws = &built.wallspace;
    let cx = &built.complex;
    let walls: Vec<_> = ws
        .walls
        .iter()
        .map(|w| {
            json!({
                "cut_set": names_of(&w.cut_set, graph),
                "otw_plus": names_of(&w.otw_plus, graph),
                "otw_minus": names_of(&w.otw_minus, graph),
                "divisions": w.divisions.len(),
            })
        })
        .collect();
    let excluded: Vec<_> = ws
        .excluded
        .iter()
        .map(|w| json!(names_of(&w.cut_set, graph)))
        .collect();
    pretty(json!({
        "walls": walls,
        "excluded_walls": excluded,
        "orientations": cx
            .orientations
            .iter()
            .map(|&m| orientation_string(m, cx.wall_count))
            .collect::<Vec<_>>(),
        "edges": cx.edges,
        "squares": cx
            .squares
            .iter()
            .map(|&(m, w1, w2)| json!([orientation_string(m, cx.wall_count), w1, w2]))
            .collect::<Vec<_>>(),
        "cubes_by_dim": cx.cubes_by_dim,
        "dimension": cx.dimension,
        "hyperplanes": built
            .hyperplanes
            .iter()
            .map(|h| json!({"wall": h.wall, "edges": h.edges}))
            .collect::<Vec<_>>(),
        "inversions": built.action.inversions,
        "hyperplane_orbits": built.action.hyperplane_orbits,
        "division_orbits": built.action.division_orbits,
        "stabilizers_match": built.action.stabilizers_match,
        "group_order": built.group.order(),
    }))
}

pub fn transversality_json(built: &Built) -> String {
    let ws = &built.wallspace;
    let n = ws.wall_count();
    let mut transverse = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if ws.transverse(i, j) {
                transverse.push(json!([i, j]));
            }
        }
    }
    let mut subsets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for si in [Sign::Plus, Sign::Minus] {
                for sj in [Sign::Plus, Sign::Minus] {
                    if ws.halfspace_subset(Halfspace::new(i, si), Halfspace::new(j, sj)) {
                        subsets.push(json!([
                            i,
                            si.symbol().to_string(),
                            j,
                            sj.symbol().to_string()
                        ]));
                    }
                }
            }
        }
    }
    let (clique_size, clique) = ws.max_transverse_clique();
    pretty(json!({
        "wall_count": n,
        "transverse_pairs": transverse,
        "halfspace_subsets": subsets,
        "max_transverse_clique": {"size": clique_size, "walls": clique},
    }))
}

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('"', "\\\""))
}

pub fn complex_dot(built: &Built) -> String {
    let cx = &built.complex;
    let mut out = String::from("graph complex {\n  node [shape=circle];\n");
    for (i, &mask) in cx.orientations.iter().enumerate() {
        out.push_str(&format!(
            "  o{i} [label={}];\n",
            quote(&orientation_string(mask, cx.wall_count))
        ));
    }
    for &(u, v, w) in &cx.edges {
        out.push_str(&format!(
            "  o{u} -- o{v} [label={}];\n",
            quote(&format!("w{w}"))
        ));
    }
    out.push_str("}\n");
    out
}

pub fn crossing_dot(built: &Built) -> String {
    let graph = &built.model.graph;
    let ws = &built.wallspace;
    let mut out = String::from("graph crossing {\n  node [shape=box];\n");
    for (i, w) in ws.walls.iter().enumerate() {
        out.push_str(&format!(
            "  w{i} [label={}];\n",
            quote(&w.cut_set.display(graph.names()))
        ));
    }
    for i in 0..ws.wall_count() {
        for j in i + 1..ws.wall_count() {
            if ws.transverse(i, j) {
                out.push_str(&format!("  w{i} -- w{j};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

fn type_label(t: &VertexType, typed: &TypedTree, graph: &SpaceGraph) -> (String, &'static str) {
    match t {
        VertexType::Principal { class } => (
            format!("P{}", typed.classes[*class].display(graph.names())),
            "circle",
        ),
        VertexType::SemiPrincipal { cut_set } => (
            format!("S{}", cut_set.display(graph.names())),
            "doublecircle",
        ),
        VertexType::Midpoint { cut_set } => {
            (format!("M{}", cut_set.display(graph.names())), "square")
        }
        VertexType::Unresolved => ("?".to_string(), "diamond"),
    }
}

pub fn tree_dot(graph: &SpaceGraph, tree: &SubdividedTree, typed: &TypedTree) -> String {
    let mut out = String::from("graph tree {\n");
    for (v, t) in typed.types.iter().enumerate() {
        let (label, shape) = type_label(t, typed, graph);
        out.push_str(&format!(
            "  t{v} [label={}, shape={shape}];\n",
            quote(&label)
        ));
    }
    for &(u, v) in &tree.edges {
        out.push_str(&format!("  t{u} -- t{v};\n"));
    }
    out.push_str("}\n");
    out
}

pub fn cutpoint_dot(quotient: &SpaceGraph, cpt: &CutPointTree) -> String {
    let mut out = String::from("graph cutpoint {\n");
    for (i, e) in cpt.elements.iter().enumerate() {
        out.push_str(&format!(
            "  e{i} [label={}, shape=box];\n",
            quote(&format!("K{}", e.display(quotient.names())))
        ));
    }
    for (j, &p) in cpt.cut_points.iter().enumerate() {
        out.push_str(&format!(
            "  c{j} [label={}, shape=circle];\n",
            quote(quotient.name(p))
        ));
    }
    for &(e, c) in &cpt.edges {
        out.push_str(&format!("  e{e} -- c{c};\n"));
    }
    out.push_str("}\n");
    out
}

pub fn certificate_json(outcome: &TreeOutcome) -> String {
    let graph = &outcome.built.model.graph;
    let hyp = &outcome.hypotheses;
    let hypotheses = json!({
        "all_hold": hyp.all_hold,
        "cut_sets_connected": hyp
            .cut_set_connected
            .iter()
            .map(|(c, ok)| json!([names_of(c, graph), ok]))
            .collect::<Vec<_>>(),
        "pairs": hyp
            .pairs
            .iter()
            .map(|p| {
                json!({
                    "cuts": [names_of(&p.cuts.0, graph), names_of(&p.cuts.1, graph)],
                    "differences_connected": [p.difference_connected.0, p.difference_connected.1],
                    "complement_connected": p.complement_connected,
                })
            })
            .collect::<Vec<_>>(),
    });
    let tree = json!({
        "vertices": outcome.tree.vertex_count(),
        "edges": outcome.tree.edges,
        "midpoints": outcome
            .tree
            .midpoints
            .iter()
            .map(|m| json!({"wall": m.wall, "cut_set": names_of(&m.cut_set, graph)}))
            .collect::<Vec<_>>(),
    });
    let comparison = outcome.comparison.as_ref().map(|cmp| {
        json!({
            "success": cmp.success,
            "failure": cmp.failure,
            "vertex_map": cmp.vertex_map,
            "principal_vertices": cmp.principal_count,
            "cyclic_elements": cmp.element_count,
            "cut_typed_vertices": cmp.cut_typed_count,
            "cut_points": cmp.cut_point_count,
        })
    });
    let lemmas = outcome.lemmas.as_ref().map(|l| {
        json!({
            "pinch_count": l.pinch_count,
            "cut_point_count": l.cut_point_count,
            "fat_class_count": l.fat_class_count,
            "element_count": l.element_count,
            "checked_class_correspondence": l.checked_class_correspondence,
        })
    });
    let adjacency = outcome.adjacency.as_ref().map(|a| {
        json!({
            "edges_checked": a.edges_checked,
            "valence_checks": a.valence_checks,
        })
    });
    pretty(json!({
        "skipped": outcome.skipped,
        "is_tree": outcome.tree_check.via_transversality(),
        "hypotheses": hypotheses,
        "tree": tree,
        "classes": outcome
            .typed
            .classes
            .iter()
            .map(|c| names_of(c, graph))
            .collect::<Vec<_>>(),
        "thin_classes": outcome.typed.thin_classes,
        "adjacency": adjacency,
        "lemmas": lemmas,
        "comparison": comparison,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::pipeline::{build_pipeline, tree_pipeline, Caps};

    fn theta_outcome() -> TreeOutcome {
        let th = instances::theta(2);
        let gens = vec![
            instances::theta_arc_swap(&th, 2, "p", "q"),
            instances::theta_arc_swap(&th, 2, "q", "r"),
        ];
        let cut = instances::vset(&th, &["a", "b"]);
        let model = crate::input::Model {
            graph: th,
            generators: gens,
            cut_sets: vec![cut],
        };
        tree_pipeline(model, &Caps::default(), false).unwrap()
    }

    #[test]
    fn exports_are_byte_stable() {
        let a = theta_outcome();
        let b = theta_outcome();
        assert_eq!(certificate_json(&a), certificate_json(&b));
        assert_eq!(complex_json(&a.built), complex_json(&b.built));
        assert_eq!(complex_dot(&a.built), complex_dot(&b.built));
        assert_eq!(
            tree_dot(&a.built.model.graph, &a.tree, &a.typed),
            tree_dot(&b.built.model.graph, &b.tree, &b.typed)
        );
    }

    #[test]
    fn dot_files_have_the_expected_shape() {
        let outcome = theta_outcome();
        let dot = tree_dot(&outcome.built.model.graph, &outcome.tree, &outcome.typed);
        assert!(dot.starts_with("graph tree {"));
        assert!(dot.contains("shape=doublecircle"));
        assert_eq!(dot.matches(" -- ").count(), 3);

        let cpt = outcome.cutpoint.as_ref().unwrap();
        let quotient = &outcome.pinched.as_ref().unwrap().quotient;
        let cdot = cutpoint_dot(quotient, cpt);
        assert!(cdot.contains("[a+b]"));
        assert_eq!(cdot.matches(" -- ").count(), 3);
    }

    #[test]
    fn crossing_square_appears_in_json() {
        let c8 = instances::cycle(8);
        let model = crate::input::Model {
            graph: c8,
            generators: vec![],
            cut_sets: vec![instances::ids(&[0, 4]), instances::ids(&[2, 6])],
        };
        let built = build_pipeline(model, &Caps::default(), true).unwrap();
        let text = complex_json(&built);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["dimension"], 2);
        assert_eq!(value["cubes_by_dim"], serde_json::json!([4, 4, 1]));
        let tv = transversality_json(&built);
        let value: serde_json::Value = serde_json::from_str(&tv).unwrap();
        assert_eq!(value["transverse_pairs"], serde_json::json!([[0, 1]]));
    }
}
