//! Tree structure on the dual complex: detection by two routes, the
//! subdivided tree with midpoints on valence-2 walls, equivalence classes
//! of off-the-wall points, the three-type vertex classification, and the
//! adjacency laws the classification must satisfy.

use std::collections::BTreeMap;

use crate::complex::CubeComplex;
use crate::division::{cut_set_stabilizer, DivisionFamily, SmallSide};
use crate::error::{ModelError, Result};
use crate::graph::{SpaceGraph, VertexId, VertexSet};
use crate::group::{Group, Subgroup};
use crate::wallspace::{Sign, Wallspace};

/// Both routes to tree-ness: the transversality route (no transverse
/// wall pair) and the 1-skeleton route (connected and acyclic).
#[derive(Clone, Debug)]
pub struct TreeCheck {
    pub transverse_pairs: Vec<(usize, usize)>,
    pub connected: bool,
    pub acyclic: bool,
}

impl TreeCheck {
    pub fn via_transversality(&self) -> bool {
        self.transverse_pairs.is_empty()
    }

    pub fn via_skeleton(&self) -> bool {
        self.connected && self.acyclic
    }
}

pub fn tree_check(ws: &Wallspace, complex: &CubeComplex) -> TreeCheck {
    let n = ws.wall_count();
    let mut transverse_pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if ws.transverse(i, j) {
                transverse_pairs.push((i, j));
            }
        }
    }
    let v = complex.vertex_count();
    let adj = complex.adjacency_lists();
    let mut seen = vec![false; v];
    let mut components = 0usize;
    for start in 0..v {
        if seen[start] {
            continue;
        }
        components += 1;
        let mut queue = vec![start];
        seen[start] = true;
        while let Some(u) = queue.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
    }
    TreeCheck {
        transverse_pairs,
        connected: components == 1,
        acyclic: complex.edges.len() + components == v,
    }
}

/// Tree detection; the two routes must agree or the call errors.
pub fn is_tree(ws: &Wallspace, complex: &CubeComplex) -> Result<bool> {
    let check = tree_check(ws, complex);
    if check.via_transversality() != check.via_skeleton() {
        return Err(ModelError::OracleMismatch(format!(
            "tree detection disagrees: transversality route {}, skeleton route {} \
             (connected={}, acyclic={})",
            check.via_transversality(),
            check.via_skeleton(),
            check.connected,
            check.acyclic
        )));
    }
    Ok(check.via_transversality())
}

/// The sufficient hypotheses for tree-ness, reported clause by clause:
/// each cut set connected; for each pair, both set-differences across the
/// intersection connected and the complement of the intersection
/// connected. Sufficient, not necessary.
#[derive(Clone, Debug)]
pub struct PairHypotheses {
    pub cuts: (VertexSet, VertexSet),
    pub difference_connected: (bool, bool),
    pub complement_connected: bool,
}

#[derive(Clone, Debug)]
pub struct TreeHypotheses {
    pub cut_set_connected: Vec<(VertexSet, bool)>,
    pub pairs: Vec<PairHypotheses>,
    pub all_hold: bool,
}

pub fn check_tree_hypotheses(graph: &SpaceGraph, family: &DivisionFamily) -> TreeHypotheses {
    let cuts = family.cut_sets();
    let cut_set_connected: Vec<(VertexSet, bool)> = cuts
        .iter()
        .map(|c| (c.clone(), graph.is_connected_subset(c)))
        .collect();
    let mut pairs = Vec::new();
    for i in 0..cuts.len() {
        for j in i + 1..cuts.len() {
            let inter = cuts[i].intersection(&cuts[j]);
            let complement_connected = graph
                .components(&inter)
                .map(|c| c.len() == 1)
                .unwrap_or(false);
            pairs.push(PairHypotheses {
                cuts: (cuts[i].clone(), cuts[j].clone()),
                difference_connected: (
                    graph.is_connected_subset(&cuts[i].difference(&cuts[j])),
                    graph.is_connected_subset(&cuts[j].difference(&cuts[i])),
                ),
                complement_connected,
            });
        }
    }
    let all_hold = cut_set_connected.iter().all(|(_, ok)| *ok)
        && pairs.iter().all(|p| {
            p.difference_connected.0 && p.difference_connected.1 && p.complement_connected
        });
    TreeHypotheses {
        cut_set_connected,
        pairs,
        all_hold,
    }
}

/// Partition of the off-the-wall points by "same side of every division".
/// Classes come back sorted by least member. Divisions are consulted
/// directly (not walls), so excluded walls still separate.
pub fn equivalence_classes(family: &DivisionFamily, off_the_wall: &VertexSet) -> Vec<VertexSet> {
    let mut by_signature: BTreeMap<Vec<bool>, Vec<VertexId>> = BTreeMap::new();
    for v in off_the_wall.iter() {
        let signature: Vec<bool> = family
            .divisions
            .iter()
            .map(|d| d.side_plus.contains(v))
            .collect();
        by_signature.entry(signature).or_default().push(v);
    }
    let mut classes: Vec<VertexSet> = by_signature.into_values().map(VertexSet::new).collect();
    classes.sort_by_key(|c| c.least());
    classes
}

/// Classes with fewer than two members cannot seat a majority triple.
pub fn thin_classes(classes: &[VertexSet]) -> Vec<usize> {
    (0..classes.len())
        .filter(|&i| classes[i].len() < 2)
        .collect()
}

#[derive(Clone, Debug)]
pub struct Midpoint {
    pub wall: usize,
    pub cut_set: VertexSet,
    /// The complex edge this midpoint splits.
    pub base_edge: (usize, usize),
}

/// The dual tree with an added midpoint vertex on every edge dual to a
/// valence-2 cut set. Tree vertices `0..base_count` are the complex
/// vertices; midpoint `i` is vertex `base_count + i`.
#[derive(Debug)]
pub struct SubdividedTree {
    pub base_count: usize,
    pub midpoints: Vec<Midpoint>,
    pub edges: Vec<(usize, usize)>,
    pub subdivided_walls: Vec<usize>,
}

impl SubdividedTree {
    pub fn vertex_count(&self) -> usize {
        self.base_count + self.midpoints.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn midpoint_of_wall(&self, wall: usize) -> Option<usize> {
        self.midpoints
            .iter()
            .position(|m| m.wall == wall)
            .map(|i| self.base_count + i)
    }
}

/// Subdivide the tree complex: insert a midpoint on each edge whose wall
/// comes from a valence-2 cut set.
pub fn subdivide(
    graph: &SpaceGraph,
    ws: &Wallspace,
    family: &DivisionFamily,
    complex: &CubeComplex,
) -> Result<SubdividedTree> {
    if complex.edges.len() + 1 != complex.vertex_count() || complex.dimension > 1 {
        return Err(ModelError::NotATree(
            "subdivision requires the complex to be a tree".into(),
        ));
    }
    let mut valences: BTreeMap<VertexSet, usize> = BTreeMap::new();
    for c in family.cut_sets() {
        let valence = graph.components(&c)?.len();
        valences.insert(c, valence);
    }
    // A wall is subdivided when one of its inducing divisions has a
    // valence-2 cut set. The least such division labels the midpoint.
    let mut midpoints = Vec::new();
    let mut subdivided_walls = Vec::new();
    let mut edges = Vec::new();
    for &(u, v, w) in &complex.edges {
        let valence2_cut = ws.walls[w].divisions.iter().find_map(|&(di, _)| {
            let c = &family.divisions[di].cut_set;
            (valences[c] == 2).then(|| c.clone())
        });
        match valence2_cut {
            Some(cut_set) => {
                subdivided_walls.push(w);
                midpoints.push(Midpoint {
                    wall: w,
                    cut_set,
                    base_edge: (u, v),
                });
            }
            None => edges.push((u, v)),
        }
    }
    midpoints.sort_by_key(|m| m.wall);
    subdivided_walls.sort_unstable();
    let base_count = complex.vertex_count();
    for (i, m) in midpoints.iter().enumerate() {
        let mid = base_count + i;
        edges.push((m.base_edge.0, mid));
        edges.push((m.base_edge.1, mid));
    }
    edges.sort_unstable();
    Ok(SubdividedTree {
        base_count,
        midpoints,
        edges,
        subdivided_walls,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum VertexType {
    /// Principal for the ∼-class with this index.
    Principal { class: usize },
    /// Semi-principal for a cut set of valence ≥ 3.
    SemiPrincipal { cut_set: VertexSet },
    /// Midpoint of the edge dual to a valence-2 cut set.
    Midpoint { cut_set: VertexSet },
    /// Not matched; only allowed on instances with thin classes or
    /// degenerate walls.
    Unresolved,
}

impl VertexType {
    pub fn kind(&self) -> &'static str {
        match self {
            VertexType::Principal { .. } => "principal",
            VertexType::SemiPrincipal { .. } => "semi-principal",
            VertexType::Midpoint { .. } => "midpoint",
            VertexType::Unresolved => "unresolved",
        }
    }
}

#[derive(Debug)]
pub struct TypedTree {
    /// Indexed like the subdivided tree's vertices.
    pub types: Vec<VertexType>,
    pub classes: Vec<VertexSet>,
    pub thin_classes: Vec<usize>,
    /// Excluded or coincident walls were present.
    pub degenerate_walls: bool,
    /// True when every vertex got exactly one type and the type laws
    /// were enforced; false means the instance was logged and skipped.
    pub complete: bool,
}

/// The orientation a fat class's members all induce: their common side
/// of every wall.
fn class_orientation(ws: &Wallspace, class: &VertexSet) -> u64 {
    let rep = class.least().expect("classes are nonempty");
    let mut mask = 0u64;
    for (w, wall) in ws.walls.iter().enumerate() {
        if wall.otw_plus.contains(rep) {
            mask |= 1 << w;
        }
    }
    mask
}

/// The semi-principal orientation of a valence-≥3 cut set: the big
/// halfspace on its own divisions, the side containing it elsewhere.
fn semi_principal_orientation(
    ws: &Wallspace,
    family: &DivisionFamily,
    cut_set: &VertexSet,
) -> Result<u64> {
    let mut mask = 0u64;
    for (w, wall) in ws.walls.iter().enumerate() {
        let own = wall
            .divisions
            .iter()
            .find(|&&(di, _)| &family.divisions[di].cut_set == cut_set);
        let sign = match own {
            Some(&(di, sign)) => {
                let d = &family.divisions[di];
                let big_is_plus = match d.small {
                    SmallSide::Plus => false,
                    SmallSide::Minus => true,
                    SmallSide::Neither => {
                        return Err(ModelError::Classification(format!(
                            "division of {:?} has no big side but valence ≥ 3 was expected",
                            d.cut_set
                        )))
                    }
                };
                if big_is_plus {
                    sign
                } else {
                    sign.flip()
                }
            }
            None => {
                if cut_set.is_subset(&wall.side_plus) {
                    Sign::Plus
                } else if cut_set.is_subset(&wall.side_minus) {
                    Sign::Minus
                } else {
                    return Err(ModelError::Classification(format!(
                        "cut set {:?} straddles wall {w}; the families are not mutually non-separating",
                        cut_set
                    )));
                }
            }
        };
        if sign == Sign::Plus {
            mask |= 1 << w;
        }
    }
    Ok(mask)
}

/// Assign each subdivided-tree vertex its type. On instances with thin
/// classes or degenerate walls the classification is best-effort and
/// `complete` is false; otherwise every base vertex must match exactly
/// one target or the call errors.
pub fn classify_vertices(
    graph: &SpaceGraph,
    ws: &Wallspace,
    family: &DivisionFamily,
    complex: &CubeComplex,
    tree: &SubdividedTree,
) -> Result<TypedTree> {
    let classes = equivalence_classes(family, &ws.off_the_wall);
    let thin = thin_classes(&classes);
    let degenerate_walls = !ws.excluded.is_empty() || !ws.coincident_walls().is_empty();
    let strict = thin.is_empty() && !degenerate_walls;

    let mut targets: BTreeMap<u64, VertexType> = BTreeMap::new();
    let mut collision: Option<String> = None;
    for (i, class) in classes.iter().enumerate() {
        if class.len() < 2 {
            continue;
        }
        let mask = class_orientation(ws, class);
        if let Some(prev) = targets.insert(mask, VertexType::Principal { class: i }) {
            collision = Some(format!(
                "classes {i} and {} induce the same orientation",
                match prev {
                    VertexType::Principal { class } => class.to_string(),
                    _ => prev.kind().to_string(),
                }
            ));
        }
    }
    for c in family.cut_sets() {
        if graph.components(&c)?.len() < 3 {
            continue;
        }
        let mask = semi_principal_orientation(ws, family, &c)?;
        if let Some(prev) = targets.insert(mask, VertexType::SemiPrincipal { cut_set: c.clone() }) {
            collision = Some(format!(
                "semi-principal target of {c:?} collides with a {} target",
                prev.kind()
            ));
        }
    }
    if strict {
        if let Some(msg) = collision {
            return Err(ModelError::Classification(msg));
        }
        if targets.len() != complex.vertex_count() {
            return Err(ModelError::Classification(format!(
                "{} type targets for {} tree vertices",
                targets.len(),
                complex.vertex_count()
            )));
        }
    }

    let mut types = Vec::with_capacity(tree.vertex_count());
    for &mask in &complex.orientations {
        match targets.get(&mask) {
            Some(t) => types.push(t.clone()),
            None if strict => {
                return Err(ModelError::Classification(format!(
                    "vertex {mask:b} matches no type target",
                )));
            }
            None => types.push(VertexType::Unresolved),
        }
    }
    for m in &tree.midpoints {
        types.push(VertexType::Midpoint {
            cut_set: m.cut_set.clone(),
        });
    }

    Ok(TypedTree {
        types,
        classes,
        thin_classes: thin,
        degenerate_walls,
        complete: strict,
    })
}

/// The three adjacency laws of the typed tree: no same-type edge, no
/// semi-principal–midpoint edge, and cut-set-typed vertices have tree
/// degree equal to their cut set's valence.
#[derive(Clone, Debug)]
pub struct AdjacencyReport {
    pub edges_checked: usize,
    /// `(tree vertex, tree degree, cut set valence)` per typed vertex.
    pub valence_checks: Vec<(usize, usize, usize)>,
}

pub fn adjacency_laws(
    graph: &SpaceGraph,
    tree: &SubdividedTree,
    typed: &TypedTree,
) -> Result<AdjacencyReport> {
    let adj = tree.adjacency();
    for &(u, v) in &tree.edges {
        let (tu, tv) = (&typed.types[u], &typed.types[v]);
        if tu.kind() == tv.kind() {
            return Err(ModelError::AdjacencyLaw(format!(
                "vertices {u} and {v} are adjacent and both {}",
                tu.kind()
            )));
        }
        let kinds = (tu.kind(), tv.kind());
        if kinds == ("semi-principal", "midpoint") || kinds == ("midpoint", "semi-principal") {
            return Err(ModelError::AdjacencyLaw(format!(
                "semi-principal vertex adjacent to midpoint ({u}, {v})"
            )));
        }
    }
    let mut valence_checks = Vec::new();
    for (v, t) in typed.types.iter().enumerate() {
        let cut_set = match t {
            VertexType::SemiPrincipal { cut_set } | VertexType::Midpoint { cut_set } => cut_set,
            _ => continue,
        };
        let valence = graph.components(cut_set)?.len();
        let degree = adj[v].len();
        if degree != valence {
            return Err(ModelError::AdjacencyLaw(format!(
                "vertex {v} ({}) has tree degree {degree} but its cut set has valence {valence}",
                t.kind()
            )));
        }
        valence_checks.push((v, degree, valence));
    }
    Ok(AdjacencyReport {
        edges_checked: tree.edges.len(),
        valence_checks,
    })
}

/// Per-wall comparison of the literal subdivision rule (edge stabilizer
/// equals cut-set stabilizer) with the valence-2 rule actually applied.
/// For valence-2 walls the two must agree; for others the report records
/// where a small group makes the literal rule diverge.
#[derive(Clone, Debug)]
pub struct SubdivisionStabCheck {
    pub wall: usize,
    pub valence2: bool,
    pub edge_stabilizer: Subgroup,
    pub cut_stabilizer: Subgroup,
}

pub fn subdivision_stabilizer_report(
    graph: &SpaceGraph,
    ws: &Wallspace,
    family: &DivisionFamily,
    group: &Group,
) -> Result<Vec<SubdivisionStabCheck>> {
    let mut wall_stabs: Vec<Vec<usize>> = vec![Vec::new(); ws.wall_count()];
    for (gi, g) in group.elements().iter().enumerate() {
        for (w, &(iw, _)) in ws.wall_image(g)?.iter().enumerate() {
            if iw == w {
                wall_stabs[w].push(gi);
            }
        }
    }
    let mut out = Vec::new();
    for (w, wall) in ws.walls.iter().enumerate() {
        let lead = wall.divisions[0].0;
        let cut = &family.divisions[lead].cut_set;
        let valence2 = graph.components(cut)?.len() == 2;
        let edge_stabilizer = Subgroup(wall_stabs[w].clone());
        let cut_stabilizer = cut_set_stabilizer(group, cut);
        if valence2 && edge_stabilizer != cut_stabilizer {
            return Err(ModelError::OracleMismatch(format!(
                "valence-2 wall {w}: edge stabilizer differs from cut-set stabilizer"
            )));
        }
        out.push(SubdivisionStabCheck {
            wall: w,
            valence2,
            edge_stabilizer,
            cut_stabilizer,
        });
    }
    Ok(out)
}
