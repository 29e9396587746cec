//! The cube complex dual to a wallspace.
//!
//! Orientations are bit-vectors over the wall list (bit set = plus side),
//! capped at 64 walls. Vertices of the complex are the consistent
//! orientations reachable from principal ones, numbered by ascending
//! bitmask so every downstream artifact is deterministic. A brute-force
//! enumeration of all 2^W orientations serves as the independent oracle
//! for the BFS construction.

use std::collections::{BTreeMap, BTreeSet};

use crate::division::{division_stabilizer, DivisionFamily};
use crate::error::{ModelError, Result};
use crate::graph::VertexSet;
use crate::group::{Group, Subgroup};
use crate::wallspace::{Halfspace, Sign, Wallspace};

/// Hard representation limit: orientations are u64 bitmasks.
pub const MAX_WALLS: usize = 64;

fn sign_of_bit(mask: u64, wall: usize) -> Sign {
    if mask & (1 << wall) != 0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Render an orientation as a +/- string in wall order.
pub fn orientation_string(mask: u64, wall_count: usize) -> String {
    (0..wall_count)
        .map(|w| sign_of_bit(mask, w).symbol())
        .collect()
}

/// The orientation choosing, on every wall, the side of the triple.
pub fn principal_ultrafilter(ws: &Wallspace, triple: &VertexSet) -> Result<u64> {
    let mut mask = 0u64;
    for w in 0..ws.wall_count() {
        if ws.side_of_triple(w, triple)? == Sign::Plus {
            mask |= 1 << w;
        }
    }
    Ok(mask)
}

/// Consistency: no two chosen halfspaces are disjoint — equivalently no
/// chosen halfspace is contained in an unchosen one.
pub fn is_consistent(ws: &Wallspace, mask: u64) -> bool {
    let n = ws.wall_count();
    for w1 in 0..n {
        for w2 in w1 + 1..n {
            if !ws.corner_achievable(w1, sign_of_bit(mask, w1), w2, sign_of_bit(mask, w2)) {
                return false;
            }
        }
    }
    true
}

/// Walls whose chosen halfspace is minimal under inclusion among the
/// chosen halfspaces (the flippable walls of Def.-style adjacency).
pub fn minimal_walls(ws: &Wallspace, mask: u64) -> Vec<usize> {
    let n = ws.wall_count();
    (0..n)
        .filter(|&w| {
            let h = Halfspace::new(w, sign_of_bit(mask, w));
            !(0..n).any(|w2| {
                w2 != w && ws.halfspace_subset(Halfspace::new(w2, sign_of_bit(mask, w2)), h)
            })
        })
        .collect()
}

/// Exhaustive scan of all 2^W orientations; the construction oracle.
pub fn oracle_enumerate(ws: &Wallspace, cap_walls: usize) -> Result<Vec<u64>> {
    let n = ws.wall_count();
    if n > cap_walls || n > MAX_WALLS {
        return Err(ModelError::TooManyWalls {
            walls: n,
            cap: cap_walls.min(MAX_WALLS),
        });
    }
    Ok((0u64..1 << n).filter(|&m| is_consistent(ws, m)).collect())
}

#[derive(Clone, Debug)]
pub struct Hyperplane {
    pub wall: usize,
    /// Indices into the complex edge list, sorted.
    pub edges: Vec<usize>,
}

#[derive(Debug)]
pub struct CubeComplex {
    pub wall_count: usize,
    /// Consistent orientations reachable from principal ones, ascending.
    pub orientations: Vec<u64>,
    /// `(u, v, wall)` with `u < v`, sorted; endpoints differ exactly on
    /// `wall`, whose chosen halfspace is minimal in both.
    pub edges: Vec<(usize, usize, usize)>,
    /// Squares as `(minimum corner mask, w1, w2)` with `w1 < w2`.
    pub squares: Vec<(u64, usize, usize)>,
    /// `cubes_by_dim[k]` = number of k-cubes; entry 0 counts vertices.
    pub cubes_by_dim: Vec<usize>,
    pub dimension: usize,
}

impl CubeComplex {
    pub fn vertex_count(&self) -> usize {
        self.orientations.len()
    }

    pub fn vertex_index(&self, mask: u64) -> Option<usize> {
        self.orientations.binary_search(&mask).ok()
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(u, v, _) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Partition the edges into hyperplanes via the opposite-sides-of-a-
    /// square relation, then verify each class carries one wall and every
    /// wall gets exactly one class.
    pub fn hyperplanes(&self) -> Result<Vec<Hyperplane>> {
        let edge_index: BTreeMap<(usize, usize), usize> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v, _))| ((u, v), i))
            .collect();
        let mut parent: Vec<usize> = (0..self.edges.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        let lookup = |u: usize, v: usize| -> Result<usize> {
            let key = (u.min(v), u.max(v));
            edge_index.get(&key).copied().ok_or_else(|| {
                ModelError::OracleMismatch("square boundary edge missing from the complex".into())
            })
        };
        for &(m, w1, w2) in &self.squares {
            let (b1, b2) = (1u64 << w1, 1u64 << w2);
            let v00 = self.vertex_index(m).expect("square corner present");
            let v10 = self.vertex_index(m | b1).expect("square corner present");
            let v01 = self.vertex_index(m | b2).expect("square corner present");
            let v11 = self
                .vertex_index(m | b1 | b2)
                .expect("square corner present");
            // Opposite edges of the square are dual to the same wall.
            for (a, b) in [
                (lookup(v00, v10)?, lookup(v01, v11)?),
                (lookup(v00, v01)?, lookup(v10, v11)?),
            ] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in 0..self.edges.len() {
            let root = find(&mut parent, e);
            classes.entry(root).or_default().push(e);
        }
        let mut out: Vec<Hyperplane> = Vec::with_capacity(classes.len());
        for (_, edges) in classes {
            let wall = self.edges[edges[0]].2;
            if edges.iter().any(|&e| self.edges[e].2 != wall) {
                return Err(ModelError::OracleMismatch(
                    "hyperplane class mixes edges of different walls".into(),
                ));
            }
            out.push(Hyperplane { wall, edges });
        }
        out.sort_by_key(|h| h.wall);
        if out.len() != self.wall_count || out.iter().enumerate().any(|(i, h)| h.wall != i) {
            return Err(ModelError::OracleMismatch(format!(
                "{} hyperplane classes for {} walls",
                out.len(),
                self.wall_count
            )));
        }
        Ok(out)
    }
}

/// BFS from the principal ultrafilters, expanding by minimal-wall flips,
/// then fill cubes by dimension.
pub fn build_complex(ws: &Wallspace, cap_vertices: usize) -> Result<CubeComplex> {
    let n = ws.wall_count();
    if n > MAX_WALLS {
        return Err(ModelError::TooManyWalls {
            walls: n,
            cap: MAX_WALLS,
        });
    }

    let mut discovered: BTreeSet<u64> = BTreeSet::new();
    let mut queue: Vec<u64> = Vec::new();
    for t in ws.triples() {
        let mask = principal_ultrafilter(ws, &t)?;
        if discovered.insert(mask) {
            if discovered.len() > cap_vertices {
                return Err(ModelError::ComplexTooLarge { cap: cap_vertices });
            }
            queue.push(mask);
        }
    }
    if discovered.is_empty() {
        // No walls and no points would have erred earlier; with zero
        // walls the single empty orientation is the whole complex.
        discovered.insert(0);
    }
    while let Some(mask) = queue.pop() {
        for w in minimal_walls(ws, mask) {
            let flipped = mask ^ (1 << w);
            if discovered.insert(flipped) {
                if discovered.len() > cap_vertices {
                    return Err(ModelError::ComplexTooLarge { cap: cap_vertices });
                }
                queue.push(flipped);
            }
        }
    }

    let orientations: Vec<u64> = discovered.iter().copied().collect();
    let index: BTreeMap<u64, usize> = orientations
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();

    let mut edges: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    for (&mask, &u) in &index {
        for w in minimal_walls(ws, mask) {
            let flipped = mask ^ (1 << w);
            let v = *index.get(&flipped).expect("closed under minimal flips");
            edges.insert((u.min(v), u.max(v), w));
        }
    }
    let edges: Vec<(usize, usize, usize)> = edges.into_iter().collect();

    // Cubes by dimension: a k-cube is (minimum corner, k walls) with all
    // 2^k corners present; grow from (k−1)-cubes to keep it incremental.
    let mut cubes_by_dim = vec![orientations.len(), edges.len()];
    let mut level: BTreeSet<(u64, u64)> = edges
        .iter()
        .map(|&(u, _, w)| (orientations[u] & !(1u64 << w), 1u64 << w))
        .collect();
    let mut squares: Vec<(u64, usize, usize)> = Vec::new();
    while !level.is_empty() {
        let mut next: BTreeSet<(u64, u64)> = BTreeSet::new();
        for &(m, walls) in &level {
            let top = 63 - walls.leading_zeros() as usize;
            for w in top + 1..n {
                let bit = 1u64 << w;
                if m & bit != 0 {
                    continue;
                }
                if level.contains(&(m | bit, walls)) {
                    next.insert((m, walls | bit));
                }
            }
        }
        if cubes_by_dim.len() == 2 {
            squares = next
                .iter()
                .map(|&(m, wset)| {
                    let w1 = wset.trailing_zeros() as usize;
                    let w2 = 63 - wset.leading_zeros() as usize;
                    (m, w1, w2)
                })
                .collect();
        }
        if next.is_empty() {
            break;
        }
        cubes_by_dim.push(next.len());
        level = next;
    }
    if edges.is_empty() {
        cubes_by_dim.truncate(1);
    }
    let dimension = cubes_by_dim.len() - 1;

    Ok(CubeComplex {
        wall_count: n,
        orientations,
        edges,
        squares,
        cubes_by_dim,
        dimension,
    })
}

/// The induced action on the complex, with the stabilizer bookkeeping
/// that the hyperplane/division correspondence is stated in.
#[derive(Debug)]
pub struct ComplexAction {
    /// Per group element: wall → (image wall, sign of the plus side).
    pub wall_maps: Vec<Vec<(usize, Sign)>>,
    /// Per group element: complex vertex → complex vertex.
    pub vertex_maps: Vec<Vec<usize>>,
    /// `(element, wall)` pairs where the element fixes the wall but swaps
    /// its halfspaces.
    pub inversions: Vec<(usize, usize)>,
    /// Per wall: elements mapping the wall to itself (either sign).
    pub hyperplane_stabilizers: Vec<Subgroup>,
    /// Per family division: its unordered stabilizer.
    pub division_stabilizers: Vec<Subgroup>,
    pub hyperplane_orbits: usize,
    pub division_orbits: usize,
    /// Excluded or coincident walls make the wall↔division match-up
    /// inapplicable; the correspondence checks are then skipped.
    pub degenerate: bool,
    /// `Some(result)` of the stabilizer-multiset and orbit-count
    /// comparison; `None` when degenerate.
    pub stabilizers_match: Option<bool>,
}

pub fn induced_action(
    complex: &CubeComplex,
    ws: &Wallspace,
    family: &DivisionFamily,
    group: &Group,
) -> Result<ComplexAction> {
    let n = complex.wall_count;
    let mut wall_maps = Vec::with_capacity(group.order());
    let mut vertex_maps = Vec::with_capacity(group.order());
    let mut inversions = Vec::new();

    for (gi, g) in group.elements().iter().enumerate() {
        let wmap = ws.wall_image(g)?;
        for (w, &(iw, sign)) in wmap.iter().enumerate() {
            if iw == w && sign == Sign::Minus {
                inversions.push((gi, w));
            }
        }
        let mut vmap = Vec::with_capacity(complex.vertex_count());
        for &mask in &complex.orientations {
            let mut image = 0u64;
            for w in 0..n {
                let (iw, sign) = wmap[w];
                let s = match sign {
                    Sign::Plus => sign_of_bit(mask, w),
                    Sign::Minus => sign_of_bit(mask, w).flip(),
                };
                if s == Sign::Plus {
                    image |= 1 << iw;
                }
            }
            let iv = complex.vertex_index(image).ok_or_else(|| {
                ModelError::OracleMismatch(format!(
                    "image of a complex vertex under element {gi} is not a complex vertex"
                ))
            })?;
            vmap.push(iv);
        }
        let mut check: Vec<usize> = vmap.clone();
        check.sort_unstable();
        check.dedup();
        if check.len() != complex.vertex_count() {
            return Err(ModelError::OracleMismatch(format!(
                "element {gi} does not act bijectively on complex vertices"
            )));
        }
        for &(u, v, w) in &complex.edges {
            let (iu, iv) = (vmap[u], vmap[v]);
            let iw = wmap[w].0;
            let key = (iu.min(iv), iu.max(iv), iw);
            if complex.edges.binary_search(&key).is_err() {
                return Err(ModelError::OracleMismatch(format!(
                    "element {gi} maps an edge off the edge set"
                )));
            }
        }
        wall_maps.push(wmap);
        vertex_maps.push(vmap);
    }

    let hyperplane_stabilizers: Vec<Subgroup> = (0..n)
        .map(|w| {
            Subgroup(
                (0..group.order())
                    .filter(|&gi| wall_maps[gi][w].0 == w)
                    .collect(),
            )
        })
        .collect();
    let division_stabilizers: Vec<Subgroup> = family
        .divisions
        .iter()
        .map(|d| division_stabilizer(group, d))
        .collect();

    let mut wall_orbit = vec![usize::MAX; n];
    let mut hyperplane_orbits = 0;
    for w in 0..n {
        if wall_orbit[w] != usize::MAX {
            continue;
        }
        for gi in 0..group.order() {
            wall_orbit[wall_maps[gi][w].0] = hyperplane_orbits;
        }
        hyperplane_orbits += 1;
    }
    let division_orbits = family.orbits.len();

    let degenerate = !ws.excluded.is_empty() || !ws.coincident_walls().is_empty();
    let stabilizers_match = if degenerate {
        None
    } else {
        let mut hs = hyperplane_stabilizers.clone();
        let mut ds = division_stabilizers.clone();
        hs.sort();
        ds.sort();
        Some(hs == ds && hyperplane_orbits == division_orbits)
    };

    Ok(ComplexAction {
        wall_maps,
        vertex_maps,
        inversions,
        hyperplane_stabilizers,
        division_stabilizers,
        hyperplane_orbits,
        division_orbits,
        degenerate,
        stabilizers_match,
    })
}

/// Equivariance of principal ultrafilters: the image of the principal
/// orientation of a triple is the principal orientation of the image.
pub fn check_principal_equivariance(
    complex: &CubeComplex,
    ws: &Wallspace,
    action: &ComplexAction,
    group: &Group,
) -> Result<()> {
    for t in ws.triples() {
        let base = principal_ultrafilter(ws, &t)?;
        let bi = complex.vertex_index(base).ok_or_else(|| {
            ModelError::OracleMismatch("principal orientation missing from complex".into())
        })?;
        for (gi, g) in group.elements().iter().enumerate() {
            let gt = g.apply_set(&t);
            let lhs = principal_ultrafilter(ws, &gt)?;
            let rhs = complex.orientations[action.vertex_maps[gi][bi]];
            if lhs != rhs {
                return Err(ModelError::OracleMismatch(format!(
                    "principal ultrafilter not equivariant at element {gi}, triple {t:?}"
                )));
            }
        }
    }
    Ok(())
}
