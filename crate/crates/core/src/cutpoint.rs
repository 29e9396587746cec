//! The pinched quotient and its cut point tree: collapse each cut set of
//! the family to a single vertex, find the cut points and cyclic elements
//! of the quotient, assemble the bipartite incidence tree, and compare it
//! equivariantly with the typed subdivided tree.

use std::collections::BTreeSet;

use crate::complex::ComplexAction;
use crate::error::{ModelError, Result};
use crate::graph::{SpaceGraph, VertexId, VertexSet};
use crate::group::{is_automorphism, Group, Perm};
use crate::tree::{SubdividedTree, TypedTree, VertexType};

/// The quotient obtained by collapsing each cut set to a point, with the
/// projection map and the induced action.
#[derive(Debug)]
pub struct PinchedSpace {
    pub quotient: SpaceGraph,
    /// Original vertex → quotient vertex.
    pub projection: Vec<VertexId>,
    /// `(quotient vertex, collapsed cut set)`, sorted by quotient vertex.
    pub pinch_vertices: Vec<(VertexId, VertexSet)>,
    /// Per group element, the induced automorphism of the quotient.
    pub induced: Vec<Perm>,
}

impl PinchedSpace {
    pub fn pinch_vertex_of(&self, cut_set: &VertexSet) -> Option<VertexId> {
        self.pinch_vertices
            .iter()
            .find(|(_, c)| c == cut_set)
            .map(|&(q, _)| q)
    }
}

/// Collapse each listed cut set to a vertex named `[a+b+…]` after its
/// members. Loops are dropped and parallel edges merged. Every group
/// element must permute the listed family; the action it induces on the
/// quotient is computed and verified to be by automorphisms.
pub fn pinch(graph: &SpaceGraph, cuts: &[VertexSet], group: &Group) -> Result<PinchedSpace> {
    for (i, c) in cuts.iter().enumerate() {
        if c.is_empty() {
            return Err(ModelError::Input("cannot pinch an empty cut set".into()));
        }
        for d in &cuts[i + 1..] {
            if !c.is_disjoint(d) {
                return Err(ModelError::OverlappingCutSets(format!(
                    "{} and {} intersect",
                    c.display(graph.names()),
                    d.display(graph.names())
                )));
            }
        }
    }
    let pinch_name = |c: &VertexSet| -> String {
        let parts: Vec<&str> = c.iter().map(|v| graph.name(v)).collect();
        format!("[{}]", parts.join("+"))
    };
    let mut vertex_name: Vec<String> = Vec::with_capacity(graph.vertex_count());
    for v in 0..graph.vertex_count() as VertexId {
        match cuts.iter().find(|c| c.contains(v)) {
            Some(c) => vertex_name.push(pinch_name(c)),
            None => vertex_name.push(graph.name(v).to_string()),
        }
    }
    let names: Vec<String> = vertex_name
        .iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .cloned()
        .collect();
    let mut edge_names: BTreeSet<(String, String)> = BTreeSet::new();
    for &(u, v) in graph.edges() {
        let (nu, nv) = (&vertex_name[u as usize], &vertex_name[v as usize]);
        if nu == nv {
            continue;
        }
        let pair = if nu < nv {
            (nu.clone(), nv.clone())
        } else {
            (nv.clone(), nu.clone())
        };
        edge_names.insert(pair);
    }
    let edge_list: Vec<(String, String)> = edge_names.into_iter().collect();
    let quotient = SpaceGraph::new(names, &edge_list)?;
    let projection: Vec<VertexId> = vertex_name
        .iter()
        .map(|n| {
            quotient
                .index_of(n)
                .expect("every image name is a quotient vertex")
        })
        .collect();
    let mut pinch_vertices: Vec<(VertexId, VertexSet)> = cuts
        .iter()
        .map(|c| {
            let q = quotient
                .index_of(&pinch_name(c))
                .expect("pinch names are quotient vertices");
            (q, c.clone())
        })
        .collect();
    pinch_vertices.sort_by_key(|&(q, _)| q);

    let family: BTreeSet<&VertexSet> = cuts.iter().collect();
    let mut induced = Vec::with_capacity(group.order());
    for g in group.elements() {
        for c in cuts {
            let img = g.apply_set(c);
            if !family.contains(&img) {
                return Err(ModelError::ActionMismatch(format!(
                    "element {} does not permute the pinched family: it sends {} to {}",
                    g.cycles_string(graph.names()),
                    c.display(graph.names()),
                    img.display(graph.names())
                )));
            }
        }
        let mut map: Vec<Option<VertexId>> = vec![None; quotient.vertex_count()];
        for v in 0..graph.vertex_count() as VertexId {
            let src = projection[v as usize];
            let dst = projection[g.apply(v) as usize];
            match map[src as usize] {
                Some(prev) if prev != dst => {
                    return Err(ModelError::OracleMismatch(format!(
                        "induced map of {} is not well defined on quotient vertex {}",
                        g.cycles_string(graph.names()),
                        quotient.name(src)
                    )))
                }
                _ => map[src as usize] = Some(dst),
            }
        }
        let perm = Perm(
            map.into_iter()
                .map(|d| d.expect("projection is onto"))
                .collect(),
        );
        perm.validate(quotient.vertex_count())?;
        if !is_automorphism(&quotient, &perm) {
            return Err(ModelError::OracleMismatch(format!(
                "induced map of {} is not an automorphism of the quotient",
                g.cycles_string(graph.names())
            )));
        }
        induced.push(perm);
    }

    Ok(PinchedSpace {
        quotient,
        projection,
        pinch_vertices,
        induced,
    })
}

/// The cyclic elements of a connected graph, by the separation test: two
/// vertices share a cyclic element when no third vertex separates them,
/// and each element is the closure of a non-cut vertex under that
/// relation. Cross-checked against the biconnected blocks containing at
/// least one non-cut vertex.
pub fn cyclic_elements(graph: &SpaceGraph) -> Result<Vec<VertexSet>> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(ModelError::Input(
            "empty graph has no cyclic elements".into(),
        ));
    }
    if n == 1 {
        return Ok(vec![graph.all_vertices()]);
    }
    let cut_vertices = graph.cut_vertices();
    let mut labels: Vec<(VertexId, Vec<usize>)> = Vec::new();
    for w in cut_vertices.iter() {
        let comps = graph.components(&VertexSet::singleton(w))?;
        let mut label = vec![usize::MAX; n];
        for (ci, comp) in comps.iter().enumerate() {
            for v in comp.iter() {
                label[v as usize] = ci;
            }
        }
        labels.push((w, label));
    }
    let mut elements: BTreeSet<VertexSet> = BTreeSet::new();
    for p in 0..n as VertexId {
        if cut_vertices.contains(p) {
            continue;
        }
        let mut members = vec![p];
        for q in 0..n as VertexId {
            if q == p {
                continue;
            }
            let inseparable = labels
                .iter()
                .all(|(w, label)| *w == q || label[p as usize] == label[q as usize]);
            if inseparable {
                members.push(q);
            }
        }
        elements.insert(VertexSet::new(members));
    }
    let separation_route: Vec<VertexSet> = elements.into_iter().collect();

    let block_route: BTreeSet<VertexSet> = graph
        .biconnected_blocks()
        .into_iter()
        .filter(|b| b.iter().any(|v| !cut_vertices.contains(v)))
        .collect();
    let block_route: Vec<VertexSet> = block_route.into_iter().collect();
    if separation_route != block_route {
        return Err(ModelError::OracleMismatch(format!(
            "cyclic elements disagree: separation test finds {}, block filter finds {}",
            separation_route.len(),
            block_route.len()
        )));
    }
    Ok(separation_route)
}

/// The cut point tree: one node per cut point, one per cyclic element,
/// an edge for each incidence. Node `i < elements.len()` is element `i`;
/// node `elements.len() + j` is cut point `j`.
#[derive(Debug)]
pub struct CutPointTree {
    pub cut_points: Vec<VertexId>,
    pub elements: Vec<VertexSet>,
    /// `(element index, cut point index)` incidences, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl CutPointTree {
    pub fn node_count(&self) -> usize {
        self.elements.len() + self.cut_points.len()
    }

    pub fn node_label(&self, quotient: &SpaceGraph, node: usize) -> String {
        if node < self.elements.len() {
            format!("K{}", self.elements[node].display(quotient.names()))
        } else {
            quotient
                .name(self.cut_points[node - self.elements.len()])
                .to_string()
        }
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count()];
        for &(e, c) in &self.edges {
            adj[e].push(self.elements.len() + c);
            adj[self.elements.len() + c].push(e);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

pub fn build_cutpoint_tree(quotient: &SpaceGraph) -> Result<CutPointTree> {
    if !quotient.is_connected() {
        return Err(ModelError::Input(
            "the cut point tree is defined for connected graphs".into(),
        ));
    }
    let cut_vertex_set = quotient.cut_vertices();
    for block in quotient.biconnected_blocks() {
        if block.iter().all(|v| cut_vertex_set.contains(v)) {
            return Err(ModelError::NotATree(format!(
                "block {} of the quotient consists of cut points only, so the cut point \
                 tree cannot cover it; this falsifies the model's fitness",
                block.display(quotient.names())
            )));
        }
    }
    let cut_points: Vec<VertexId> = cut_vertex_set.iter().collect();
    let elements = cyclic_elements(quotient)?;
    let mut edges = Vec::new();
    for (e, elem) in elements.iter().enumerate() {
        for (c, &p) in cut_points.iter().enumerate() {
            if elem.contains(p) {
                edges.push((e, c));
            }
        }
    }
    let node_count = elements.len() + cut_points.len();
    let mut adj = vec![Vec::new(); node_count];
    for &(e, c) in &edges {
        adj[e].push(elements.len() + c);
        adj[elements.len() + c].push(e);
    }
    let mut seen = vec![false; node_count];
    let mut queue = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(u) = queue.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                reached += 1;
                queue.push(v);
            }
        }
    }
    if reached != node_count || edges.len() + 1 != node_count {
        return Err(ModelError::OracleMismatch(format!(
            "cut point incidence graph is not a tree: {} nodes, {} edges, {} reached",
            node_count,
            edges.len(),
            reached
        )));
    }
    Ok(CutPointTree {
        cut_points,
        elements,
        edges,
    })
}

/// Per-instance analogs of the supporting identification lemmas: pinch
/// vertices and quotient cut points coincide, and (when the instance has
/// no thin classes and no degenerate walls) the fat classes correspond
/// one-to-one with the cyclic elements through the projection.
#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub pinch_count: usize,
    pub cut_point_count: usize,
    pub fat_class_count: usize,
    pub element_count: usize,
    /// False when thin classes or degenerate walls made the class/element
    /// correspondence inapplicable.
    pub checked_class_correspondence: bool,
}

pub fn lemma_checks(
    original: &SpaceGraph,
    pinched: &PinchedSpace,
    cpt: &CutPointTree,
    classes: &[VertexSet],
    strict: bool,
) -> Result<LemmaReport> {
    let quotient = &pinched.quotient;
    for &(q, ref c) in &pinched.pinch_vertices {
        if cpt.cut_points.binary_search(&q).is_err() {
            return Err(ModelError::LemmaViolation(format!(
                "pinch image {} of cut set {} is not a cut point of the quotient",
                quotient.name(q),
                c.display(quotient.names())
            )));
        }
    }
    for &p in &cpt.cut_points {
        if !pinched.pinch_vertices.iter().any(|&(q, _)| q == p) {
            return Err(ModelError::LemmaViolation(format!(
                "quotient cut point {} is not the image of any pinched cut set",
                quotient.name(p)
            )));
        }
    }
    let fat: Vec<&VertexSet> = classes.iter().filter(|c| c.len() >= 2).collect();
    if strict {
        if fat.len() != cpt.elements.len() {
            return Err(ModelError::LemmaViolation(format!(
                "{} fat classes but {} cyclic elements",
                fat.len(),
                cpt.elements.len()
            )));
        }
        for class in &fat {
            let image: VertexSet = class
                .iter()
                .map(|v| pinched.projection[v as usize])
                .collect();
            let containing = cpt.elements.iter().filter(|e| image.is_subset(e)).count();
            if containing != 1 {
                return Err(ModelError::LemmaViolation(format!(
                    "class {} projects into {} cyclic elements instead of exactly one",
                    class.display(original.names()),
                    containing
                )));
            }
        }
    }
    Ok(LemmaReport {
        pinch_count: pinched.pinch_vertices.len(),
        cut_point_count: cpt.cut_points.len(),
        fat_class_count: fat.len(),
        element_count: cpt.elements.len(),
        checked_class_correspondence: strict,
    })
}

/// The verdict of the equivariant comparison between the typed
/// subdivided tree and the cut point tree, with a human-readable
/// certificate for the first failure found.
#[derive(Debug)]
pub struct TreeComparison {
    pub success: bool,
    pub failure: Option<String>,
    /// Subdivided-tree vertex label → cut-point-tree node label.
    pub vertex_map: Vec<(String, String)>,
    pub principal_count: usize,
    pub element_count: usize,
    pub cut_typed_count: usize,
    pub cut_point_count: usize,
    /// Group elements the equivariance loop ran through.
    pub elements_checked: usize,
}

/// Build the type-directed map φ from the subdivided tree to the cut
/// point tree and verify it is an equivariant isomorphism: principal
/// vertices go to the cyclic element their class projects into, and
/// cut-set-typed vertices go to the pinch image of their cut set.
pub fn compare_trees(
    original: &SpaceGraph,
    tree: &SubdividedTree,
    typed: &TypedTree,
    pinched: &PinchedSpace,
    cpt: &CutPointTree,
    action: &ComplexAction,
    group: &Group,
) -> Result<TreeComparison> {
    if !typed.complete {
        return Err(ModelError::Input(
            "tree comparison requires a completely classified tree".into(),
        ));
    }
    let quotient = &pinched.quotient;
    let elements_len = cpt.elements.len();
    let tree_label = |v: usize| -> String {
        match &typed.types[v] {
            VertexType::Principal { class } => {
                format!("P{}", typed.classes[*class].display(original.names()))
            }
            VertexType::SemiPrincipal { cut_set } => {
                format!("S{}", cut_set.display(original.names()))
            }
            VertexType::Midpoint { cut_set } => {
                format!("M{}", cut_set.display(original.names()))
            }
            VertexType::Unresolved => format!("?{v}"),
        }
    };
    let fail = |msg: String, partial: &[Option<usize>]| -> TreeComparison {
        let vertex_map = partial
            .iter()
            .enumerate()
            .filter_map(|(v, phi)| phi.map(|node| (tree_label(v), cpt.node_label(quotient, node))))
            .collect();
        TreeComparison {
            success: false,
            failure: Some(msg),
            vertex_map,
            principal_count: typed
                .types
                .iter()
                .filter(|t| matches!(t, VertexType::Principal { .. }))
                .count(),
            element_count: elements_len,
            cut_typed_count: typed
                .types
                .iter()
                .filter(|t| {
                    matches!(
                        t,
                        VertexType::SemiPrincipal { .. } | VertexType::Midpoint { .. }
                    )
                })
                .count(),
            cut_point_count: cpt.cut_points.len(),
            elements_checked: 0,
        }
    };

    let mut phi: Vec<Option<usize>> = vec![None; tree.vertex_count()];
    let principal_count = typed
        .types
        .iter()
        .filter(|t| matches!(t, VertexType::Principal { .. }))
        .count();
    let cut_typed_count = tree.vertex_count() - principal_count;
    if principal_count != elements_len {
        return Ok(fail(
            format!("{principal_count} principal vertices but {elements_len} cyclic elements"),
            &phi,
        ));
    }
    if cut_typed_count != cpt.cut_points.len() {
        return Ok(fail(
            format!(
                "{cut_typed_count} cut-set-typed vertices but {} cut points",
                cpt.cut_points.len()
            ),
            &phi,
        ));
    }

    for v in 0..tree.vertex_count() {
        match &typed.types[v] {
            VertexType::Principal { class } => {
                let image: VertexSet = typed.classes[*class]
                    .iter()
                    .map(|x| pinched.projection[x as usize])
                    .collect();
                let hits: Vec<usize> = (0..elements_len)
                    .filter(|&k| image.is_subset(&cpt.elements[k]))
                    .collect();
                match hits.as_slice() {
                    [k] => phi[v] = Some(*k),
                    _ => {
                        return Ok(fail(
                            format!(
                                "class {} projects into {} cyclic elements",
                                typed.classes[*class].display(original.names()),
                                hits.len()
                            ),
                            &phi,
                        ))
                    }
                }
            }
            VertexType::SemiPrincipal { cut_set } | VertexType::Midpoint { cut_set } => {
                let Some(q) = pinched.pinch_vertex_of(cut_set) else {
                    return Ok(fail(
                        format!(
                            "cut set {} was never pinched",
                            cut_set.display(original.names())
                        ),
                        &phi,
                    ));
                };
                let Ok(j) = cpt.cut_points.binary_search(&q) else {
                    return Ok(fail(
                        format!(
                            "pinch vertex {} is not a cut point of the quotient",
                            quotient.name(q)
                        ),
                        &phi,
                    ));
                };
                phi[v] = Some(elements_len + j);
            }
            VertexType::Unresolved => {
                return Ok(fail(format!("tree vertex {v} has no type"), &phi))
            }
        }
    }

    let map: Vec<usize> = phi.iter().map(|p| p.unwrap()).collect();
    let mut hit = vec![false; cpt.node_count()];
    for (v, &node) in map.iter().enumerate() {
        if hit[node] {
            return Ok(fail(
                format!(
                    "two tree vertices map to {}; vertex {v} is the second",
                    cpt.node_label(quotient, node)
                ),
                &phi,
            ));
        }
        hit[node] = true;
    }

    let tree_image: BTreeSet<(usize, usize)> = tree
        .edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (map[u], map[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    let cpt_edges: BTreeSet<(usize, usize)> = cpt
        .edges
        .iter()
        .map(|&(e, c)| (e, elements_len + c))
        .collect();
    if tree_image != cpt_edges {
        let diff = tree_image
            .symmetric_difference(&cpt_edges)
            .next()
            .expect("sets differ");
        return Ok(fail(
            format!(
                "edge mismatch at ({}, {})",
                cpt.node_label(quotient, diff.0),
                cpt.node_label(quotient, diff.1)
            ),
            &phi,
        ));
    }

    // Equivariance: φ(g·v) = g·φ(v) for every element and tree vertex.
    for (gi, g) in group.elements().iter().enumerate() {
        let induced = &pinched.induced[gi];
        for v in 0..tree.vertex_count() {
            let gv = if v < tree.base_count {
                action.vertex_maps[gi][v]
            } else {
                let wall = tree.midpoints[v - tree.base_count].wall;
                let image_wall = action.wall_maps[gi][wall].0;
                match tree.midpoint_of_wall(image_wall) {
                    Some(m) => m,
                    None => return Ok(fail(
                        format!(
                            "element {} sends a subdivided wall to unsubdivided wall {image_wall}",
                            g.cycles_string(original.names())
                        ),
                        &phi,
                    )),
                }
            };
            let gnode = if map[v] < elements_len {
                let image: VertexSet = cpt.elements[map[v]]
                    .iter()
                    .map(|x| induced.apply(x))
                    .collect();
                match cpt.elements.iter().position(|e| *e == image) {
                    Some(k) => k,
                    None => {
                        return Ok(fail(
                            format!(
                                "induced map of {} does not permute the cyclic elements",
                                g.cycles_string(original.names())
                            ),
                            &phi,
                        ))
                    }
                }
            } else {
                let p = cpt.cut_points[map[v] - elements_len];
                match cpt.cut_points.binary_search(&induced.apply(p)) {
                    Ok(j) => elements_len + j,
                    Err(_) => {
                        return Ok(fail(
                            format!(
                                "induced map of {} does not permute the cut points",
                                g.cycles_string(original.names())
                            ),
                            &phi,
                        ))
                    }
                }
            };
            if map[gv] != gnode {
                return Ok(fail(
                    format!(
                        "equivariance fails for {} at tree vertex {v}: φ(g·v) = {} but g·φ(v) = {}",
                        g.cycles_string(original.names()),
                        cpt.node_label(quotient, map[gv]),
                        cpt.node_label(quotient, gnode)
                    ),
                    &phi,
                ));
            }
        }
    }

    let vertex_map: Vec<(String, String)> = map
        .iter()
        .enumerate()
        .map(|(v, &node)| (tree_label(v), cpt.node_label(quotient, node)))
        .collect();
    Ok(TreeComparison {
        success: true,
        failure: None,
        vertex_map,
        principal_count,
        element_count: elements_len,
        cut_typed_count,
        cut_point_count: cpt.cut_points.len(),
        elements_checked: group.elements().len(),
    })
}
