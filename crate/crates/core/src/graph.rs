//! Finite graph model of the space under study.
//!
//! Vertices are indexed by their position in the sorted list of vertex
//! names, and every set-valued result comes back sorted, so downstream
//! output is deterministic and diffable.

use std::fmt;

use crate::error::{ModelError, Result};

pub type VertexId = u32;

/// Sorted, deduplicated set of vertex indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    pub fn new(mut members: Vec<VertexId>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn full(n: usize) -> Self {
        VertexSet((0..n as VertexId).collect())
    }

    pub fn singleton(v: VertexId) -> Self {
        VertexSet(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn least(&self) -> Option<VertexId> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        VertexSet::new(out)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Render with the given vertex names, e.g. `{a, b}`.
    pub fn display(&self, names: &[String]) -> String {
        let mut s = String::from("{");
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                s.push_str(", ");
            }
            s.push_str(&names[v as usize]);
        }
        s.push('}');
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<T: IntoIterator<Item = VertexId>>(iter: T) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Outcome of testing a candidate cut set.
#[derive(Clone, Debug)]
pub struct CutSetCheck {
    /// Removal leaves at least two components.
    pub disconnects: bool,
    /// Number of components of the complement.
    pub valence: usize,
    /// Members with no neighbor outside the candidate. Nonempty means the
    /// candidate fails the nowhere-dense analogue (it swallows an open
    /// neighborhood of some vertex).
    pub interior_members: VertexSet,
}

impl CutSetCheck {
    pub fn is_cut_set(&self) -> bool {
        self.disconnects
    }

    pub fn nowhere_dense(&self) -> bool {
        self.interior_members.is_empty()
    }
}

/// Finite simple graph with named vertices.
///
/// Construction sorts the names; all public vertex ids refer to the
/// sorted order.
#[derive(Clone)]
pub struct SpaceGraph {
    names: Vec<String>,
    adj: Vec<Vec<VertexId>>,
    edges: Vec<(VertexId, VertexId)>,
}

impl SpaceGraph {
    pub fn new(mut names: Vec<String>, edges_by_name: &[(String, String)]) -> Result<SpaceGraph> {
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(ModelError::Input(format!("duplicate vertex \"{}\"", w[0])));
            }
        }
        let index_of = |name: &str| -> Result<VertexId> {
            names
                .binary_search_by(|n| n.as_str().cmp(name))
                .map(|i| i as VertexId)
                .map_err(|_| ModelError::Input(format!("unknown vertex \"{name}\" in edge list")))
        };
        let mut edges = Vec::with_capacity(edges_by_name.len());
        for (a, b) in edges_by_name {
            let (ia, ib) = (index_of(a)?, index_of(b)?);
            if ia == ib {
                return Err(ModelError::Input(format!("loop edge at \"{a}\"")));
            }
            edges.push((ia.min(ib), ia.max(ib)));
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(ModelError::Input(format!(
                    "duplicate edge (\"{}\", \"{}\")",
                    names[w[0].0 as usize], names[w[0].1 as usize]
                )));
            }
        }
        let mut adj = vec![Vec::new(); names.len()];
        for &(a, b) in &edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(SpaceGraph { names, adj, edges })
    }

    /// Test helper: vertices `v0..` (zero-padded) with edges given by index.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<SpaceGraph> {
        let width = if n <= 10 { 1 } else { 2 };
        let names: Vec<String> = (0..n).map(|i| format!("v{i:0width$}")).collect();
        let by_name: Vec<(String, String)> = edges
            .iter()
            .map(|&(a, b)| {
                (
                    format!("v{a:0width$}", a = a as usize),
                    format!("v{b:0width$}", b = b as usize),
                )
            })
            .collect();
        SpaceGraph::new(names, &by_name)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<VertexId> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| i as VertexId)
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        self.edges.binary_search(&(a, b)).is_ok()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    fn check_in_range(&self, set: &VertexSet) -> Result<()> {
        if let Some(v) = set.iter().find(|&v| v as usize >= self.vertex_count()) {
            return Err(ModelError::Input(format!("vertex index {v} out of range")));
        }
        Ok(())
    }

    /// Connected components of the subgraph induced on `V \ removed`,
    /// ordered by least member.
    pub fn components(&self, removed: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_in_range(removed)?;
        let n = self.vertex_count();
        if removed.len() >= n {
            return Err(ModelError::DegenerateRemoval);
        }
        let mut seen = vec![false; n];
        for v in removed.iter() {
            seen[v as usize] = true;
        }
        let mut out = Vec::new();
        for start in 0..n as VertexId {
            if seen[start as usize] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = vec![start];
            seen[start as usize] = true;
            while let Some(u) = queue.pop() {
                comp.push(u);
                for &w in self.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push(w);
                    }
                }
            }
            out.push(VertexSet::new(comp));
        }
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        self.components(&VertexSet::empty())
            .map(|c| c.len() == 1)
            .unwrap_or(false)
    }

    /// Connectivity of the subgraph induced on `set`. The empty set counts
    /// as connected (vacuously).
    pub fn is_connected_subset(&self, set: &VertexSet) -> bool {
        if set.is_empty() {
            return true;
        }
        let start = set.least().unwrap();
        let mut seen: Vec<VertexId> = vec![start];
        let mut queue = vec![start];
        while let Some(u) = queue.pop() {
            for &w in self.neighbors(u) {
                if set.contains(w) && !seen.contains(&w) {
                    seen.push(w);
                    queue.push(w);
                }
            }
        }
        seen.len() == set.len()
    }

    /// Test a candidate cut set: does its removal disconnect the graph,
    /// with what valence, and does every member keep an outside neighbor?
    pub fn is_cut_set(&self, candidate: &VertexSet) -> Result<CutSetCheck> {
        self.check_in_range(candidate)?;
        if candidate.is_empty() {
            return Err(ModelError::Input("empty cut-set candidate".into()));
        }
        let comps = self.components(candidate)?;
        let interior: VertexSet = candidate
            .iter()
            .filter(|&v| self.neighbors(v).iter().all(|w| candidate.contains(*w)))
            .collect();
        Ok(CutSetCheck {
            disconnects: comps.len() >= 2,
            valence: comps.len(),
            interior_members: interior,
        })
    }

    /// Articulation vertices (cut vertices), via lowlink.
    pub fn cut_vertices(&self) -> VertexSet {
        self.blocks_and_cuts().0
    }

    /// Biconnected blocks as vertex sets (bridges appear as 2-vertex
    /// blocks), ordered by least member then size.
    pub fn biconnected_blocks(&self) -> Vec<VertexSet> {
        self.blocks_and_cuts().1
    }

    /// One lowlink pass computing articulation vertices and biconnected
    /// blocks. Iterative so deep graphs cannot overflow the stack.
    fn blocks_and_cuts(&self) -> (VertexSet, Vec<VertexSet>) {
        let n = self.vertex_count();
        let mut disc = vec![0u32; n];
        let mut low = vec![0u32; n];
        let mut visited = vec![false; n];
        let mut is_cut = vec![false; n];
        let mut time = 1u32;
        let mut edge_stack: Vec<(VertexId, VertexId)> = Vec::new();
        let mut blocks: Vec<VertexSet> = Vec::new();

        let pop_block = |edge_stack: &mut Vec<(VertexId, VertexId)>,
                         blocks: &mut Vec<VertexSet>,
                         until: (VertexId, VertexId)| {
            let mut members = Vec::new();
            while let Some(e) = edge_stack.pop() {
                members.push(e.0);
                members.push(e.1);
                if e == until {
                    break;
                }
            }
            if !members.is_empty() {
                blocks.push(VertexSet::new(members));
            }
        };

        for root in 0..n as VertexId {
            if visited[root as usize] {
                continue;
            }
            visited[root as usize] = true;
            disc[root as usize] = time;
            low[root as usize] = time;
            time += 1;
            let mut root_children = 0usize;
            // (vertex, parent or u32::MAX, next neighbor position)
            let mut stack: Vec<(VertexId, VertexId, usize)> = vec![(root, u32::MAX, 0)];
            loop {
                let Some(top) = stack.last_mut() else { break };
                let (u, parent) = (top.0, top.1);
                if top.2 < self.adj[u as usize].len() {
                    let w = self.adj[u as usize][top.2];
                    top.2 += 1;
                    if w == parent {
                        continue;
                    }
                    if !visited[w as usize] {
                        visited[w as usize] = true;
                        disc[w as usize] = time;
                        low[w as usize] = time;
                        time += 1;
                        edge_stack.push((u, w));
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((w, u, 0));
                    } else if disc[w as usize] < disc[u as usize] {
                        edge_stack.push((u, w));
                        low[u as usize] = low[u as usize].min(disc[w as usize]);
                    }
                } else {
                    stack.pop();
                    if let Some(up) = stack.last() {
                        let p = up.0;
                        low[p as usize] = low[p as usize].min(low[u as usize]);
                        if low[u as usize] >= disc[p as usize] {
                            if p != root {
                                is_cut[p as usize] = true;
                            }
                            pop_block(&mut edge_stack, &mut blocks, (p, u));
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root as usize] = true;
            }
        }

        let cuts: VertexSet = (0..n as VertexId).filter(|&v| is_cut[v as usize]).collect();
        blocks.sort_by(|a, b| (a.least(), a.len()).cmp(&(b.least(), b.len())));
        (cuts, blocks)
    }

    /// Brute-force articulation check: v is a cut vertex iff removing it
    /// increases the component count. Test oracle for `cut_vertices`.
    pub fn cut_vertices_scan(&self) -> VertexSet {
        let base = match self.components(&VertexSet::empty()) {
            Ok(c) => c.len(),
            Err(_) => return VertexSet::empty(),
        };
        (0..self.vertex_count() as VertexId)
            .filter(|&v| {
                self.components(&VertexSet::singleton(v))
                    .map(|c| c.len() > base)
                    .unwrap_or(false)
            })
            .collect()
    }
}

impl fmt::Debug for SpaceGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SpaceGraph({} vertices, {} edges)",
            self.vertex_count(),
            self.edges.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn cycle_components_after_cut_pair() {
        let g = instances::cycle(8);
        let comps = g.components(&VertexSet::new(vec![0, 4])).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], VertexSet::new(vec![1, 2, 3]));
        assert_eq!(comps[1], VertexSet::new(vec![5, 6, 7]));
    }

    #[test]
    fn empty_removal_gives_one_component() {
        let g = instances::cycle(8);
        let comps = g.components(&VertexSet::empty()).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0], g.all_vertices());
    }

    #[test]
    fn removing_everything_is_degenerate() {
        let g = instances::cycle(8);
        let err = g.components(&g.all_vertices()).unwrap_err();
        assert!(matches!(err, ModelError::DegenerateRemoval));
    }

    #[test]
    fn theta_junction_pair_has_valence_three() {
        let g = instances::theta(2);
        let ab = instances::vset(&g, &["a", "b"]);
        let check = g.is_cut_set(&ab).unwrap();
        assert!(check.is_cut_set());
        assert_eq!(check.valence, 3);
        assert!(check.nowhere_dense());
        let comps = g.components(&ab).unwrap();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0], instances::vset(&g, &["p1", "p2"]));
    }

    #[test]
    fn adjacent_cycle_pair_is_not_a_cut_set() {
        let g = instances::cycle(8);
        let check = g.is_cut_set(&VertexSet::new(vec![0, 1])).unwrap();
        assert!(!check.is_cut_set());
        assert_eq!(check.valence, 1);
    }

    #[test]
    fn cut_vertices_of_standard_graphs() {
        assert!(instances::cycle(8).cut_vertices().is_empty());
        assert!(instances::theta(2).cut_vertices().is_empty());
        let p4 = instances::path(4);
        assert_eq!(p4.cut_vertices(), VertexSet::new(vec![1, 2]));
    }

    #[test]
    fn lowlink_matches_brute_force_on_small_graphs() {
        let graphs = [
            instances::cycle(6),
            instances::path(5),
            instances::theta(2),
            instances::wedge_of_triangles(),
            instances::grid(3, 4),
        ];
        for g in &graphs {
            assert_eq!(g.cut_vertices(), g.cut_vertices_scan(), "{g:?}");
        }
    }

    #[test]
    fn blocks_of_a_path_are_its_edges() {
        let p4 = instances::path(4);
        let blocks = p4.biconnected_blocks();
        assert_eq!(blocks.len(), 3);
        assert!(blocks.iter().all(|b| b.len() == 2));
    }

    #[test]
    fn blocks_of_wedge_are_two_triangles() {
        let g = instances::wedge_of_triangles();
        let blocks = g.biconnected_blocks();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.len() == 3));
        assert_eq!(g.cut_vertices().len(), 1);
    }

    #[test]
    fn duplicate_edge_rejected() {
        let err = SpaceGraph::from_edges(4, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 0)]).unwrap_err();
        assert!(matches!(err, ModelError::Input(_)));
    }

    #[test]
    fn loop_rejected() {
        let err = SpaceGraph::from_edges(4, &[(0, 0), (1, 2), (2, 3)]).unwrap_err();
        assert!(matches!(err, ModelError::Input(_)));
    }
}
