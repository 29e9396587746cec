//! Plain-text reports. Every line is derived from canonically ordered
//! data so a fixed input always renders the same bytes.

use cutcube_core::pipeline::{Built, TreeOutcome};
use std::fmt::Write;

fn model_lines(out: &mut String, built: &Built) {
    let g = &built.model.graph;
    writeln!(
        out,
        "model: {} vertices, {} edges, {} cut set(s), group order {}",
        g.vertex_count(),
        g.edges().len(),
        built.model.cut_sets.len(),
        built.group.order()
    )
    .unwrap();
    writeln!(
        out,
        "family: {} division(s) in {} orbit(s)",
        built.family.len(),
        built.family.orbits.len()
    )
    .unwrap();
    writeln!(
        out,
        "walls: {} active, {} excluded, {} off-the-wall vertices",
        built.wallspace.wall_count(),
        built.wallspace.excluded.len(),
        built.wallspace.off_the_wall.len()
    )
    .unwrap();
}

pub fn build_report(built: &Built, oracle_ran: bool) -> String {
    let mut out = String::new();
    model_lines(&mut out, built);
    let cx = &built.complex;
    writeln!(
        out,
        "complex: {} vertices, {} edges, {} square(s), dimension {}",
        cx.vertex_count(),
        cx.edges.len(),
        cx.squares.len(),
        cx.dimension
    )
    .unwrap();
    writeln!(out, "cubes by dimension: {:?}", cx.cubes_by_dim).unwrap();
    writeln!(
        out,
        "hyperplanes: {} in {} orbit(s), division orbits: {}",
        built.hyperplanes.len(),
        built.action.hyperplane_orbits,
        built.action.division_orbits
    )
    .unwrap();
    let stab = match built.action.stabilizers_match {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "skipped (excluded or coincident walls)",
    };
    writeln!(out, "stabilizer multisets match: {stab}").unwrap();
    writeln!(out, "inversions: {}", built.action.inversions.len()).unwrap();
    if oracle_ran {
        writeln!(out, "oracle: agreement").unwrap();
    }
    out
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn tree_report(outcome: &TreeOutcome) -> String {
    let mut out = String::new();
    let built = &outcome.built;
    let names = built.model.graph.names();
    model_lines(&mut out, built);

    let hyp = &outcome.hypotheses;
    writeln!(
        out,
        "hypotheses: {}",
        if hyp.all_hold {
            "all hold"
        } else {
            "not all hold (sufficient, not necessary)"
        }
    )
    .unwrap();
    for (cut, connected) in &hyp.cut_set_connected {
        writeln!(
            out,
            "  cut set {}: connected subgraph {}",
            cut.display(names),
            yes(*connected)
        )
        .unwrap();
    }
    for pair in &hyp.pairs {
        writeln!(
            out,
            "  pair {} / {}: differences connected {}/{}, complement connected {}",
            pair.cuts.0.display(names),
            pair.cuts.1.display(names),
            yes(pair.difference_connected.0),
            yes(pair.difference_connected.1),
            yes(pair.complement_connected)
        )
        .unwrap();
    }

    let tc = &outcome.tree_check;
    writeln!(
        out,
        "tree check: {} transverse pair(s), 1-skeleton connected {}, acyclic {}",
        tc.transverse_pairs.len(),
        yes(tc.connected),
        yes(tc.acyclic)
    )
    .unwrap();
    writeln!(
        out,
        "tree: {} base vertices + {} midpoint(s), {} edges",
        outcome.tree.base_count,
        outcome.tree.midpoints.len(),
        outcome.tree.edges.len()
    )
    .unwrap();
    writeln!(
        out,
        "classes: {} total, {} thin",
        outcome.typed.classes.len(),
        outcome.typed.thin_classes.len()
    )
    .unwrap();

    if let Some(reason) = &outcome.skipped {
        writeln!(out, "SKIPPED: {reason}").unwrap();
        return out;
    }

    let mut principal = 0usize;
    let mut semi = 0usize;
    let mut mid = 0usize;
    for t in &outcome.typed.types {
        match t.kind() {
            "principal" => principal += 1,
            "semi-principal" => semi += 1,
            "midpoint" => mid += 1,
            _ => {}
        }
    }
    writeln!(
        out,
        "types: {principal} principal, {semi} semi-principal, {mid} midpoint(s)"
    )
    .unwrap();

    if let Some(adj) = &outcome.adjacency {
        writeln!(
            out,
            "adjacency: {} edge(s) checked, {} valence check(s) passed",
            adj.edges_checked,
            adj.valence_checks.len()
        )
        .unwrap();
    }
    for check in &outcome.stab_checks {
        writeln!(
            out,
            "wall {}: valence-2 {}, edge stabilizer order {}, cut set stabilizer order {}, equal {}",
            check.wall,
            yes(check.valence2),
            check.edge_stabilizer.order(),
            check.cut_stabilizer.order(),
            yes(check.edge_stabilizer == check.cut_stabilizer)
        )
        .unwrap();
    }

    if let (Some(pinched), Some(cpt)) = (&outcome.pinched, &outcome.cutpoint) {
        writeln!(
            out,
            "pinched quotient: {} vertices, {} pinch vertices",
            pinched.quotient.vertex_count(),
            pinched.pinch_vertices.len()
        )
        .unwrap();
        writeln!(
            out,
            "cut point tree: {} cut point(s), {} cyclic element(s), {} edge(s)",
            cpt.cut_points.len(),
            cpt.elements.len(),
            cpt.edges.len()
        )
        .unwrap();
    }
    if let Some(lemmas) = &outcome.lemmas {
        writeln!(
            out,
            "pinch vertices = cut points: {} = {}",
            lemmas.pinch_count, lemmas.cut_point_count
        )
        .unwrap();
        if lemmas.checked_class_correspondence {
            writeln!(
                out,
                "fat classes = cyclic elements: {} = {}",
                lemmas.fat_class_count, lemmas.element_count
            )
            .unwrap();
        }
    }
    if let Some(cmp) = &outcome.comparison {
        writeln!(
            out,
            "comparison: SUCCESS ({} vertices mapped, {} group element(s) checked)",
            cmp.vertex_map.len(),
            cmp.elements_checked
        )
        .unwrap();
        for (from, to) in &cmp.vertex_map {
            writeln!(out, "  {from} -> {to}").unwrap();
        }
    }
    out
}
