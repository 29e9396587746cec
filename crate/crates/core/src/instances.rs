//! Ready-made graphs and permutations for tests and benchmarks.
//!
//! Vertex names are chosen so the sorted-name order matches the natural
//! numbering (zero-padded where needed), which keeps indices readable in
//! assertions.

use crate::graph::{SpaceGraph, VertexId, VertexSet};
use crate::group::Perm;

/// Cycle on `n` vertices `v0 — v1 — … — v{n-1} — v0`.
pub fn cycle(n: usize) -> SpaceGraph {
    let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
    SpaceGraph::from_edges(n, &edges).expect("cycle is a valid graph")
}

/// Path on `n` vertices.
pub fn path(n: usize) -> SpaceGraph {
    let edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
    SpaceGraph::from_edges(n, &edges).expect("path is a valid graph")
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> SpaceGraph {
    let mut edges = Vec::new();
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            edges.push((i, j));
        }
    }
    SpaceGraph::from_edges(n, &edges).expect("complete graph is a valid graph")
}

/// Theta graph: junctions `a`, `b` joined by three arcs with `k` interior
/// vertices each (`p1..pk`, `q1..qk`, `r1..rk`).
pub fn theta(k: usize) -> SpaceGraph {
    let mut names = vec!["a".to_string(), "b".to_string()];
    let mut edges: Vec<(String, String)> = Vec::new();
    for arc in ["p", "q", "r"] {
        let mut prev = "a".to_string();
        for i in 1..=k {
            let v = format!("{arc}{i}");
            names.push(v.clone());
            edges.push((prev, v.clone()));
            prev = v;
        }
        edges.push((prev, "b".to_string()));
    }
    SpaceGraph::new(names, &edges).expect("theta is a valid graph")
}

/// `rows × cols` grid, vertices `r{i}c{j}` (single-digit coordinates).
pub fn grid(rows: usize, cols: usize) -> SpaceGraph {
    assert!(
        rows <= 10 && cols <= 10,
        "grid coordinates must stay single-digit"
    );
    let mut names = Vec::new();
    let mut edges = Vec::new();
    let name = |i: usize, j: usize| format!("r{i}c{j}");
    for i in 0..rows {
        for j in 0..cols {
            names.push(name(i, j));
            if i + 1 < rows {
                edges.push((name(i, j), name(i + 1, j)));
            }
            if j + 1 < cols {
                edges.push((name(i, j), name(i, j + 1)));
            }
        }
    }
    SpaceGraph::new(names, &edges).expect("grid is a valid graph")
}

/// Two triangles sharing the single vertex `c`.
pub fn wedge_of_triangles() -> SpaceGraph {
    let names: Vec<String> = ["c", "x1", "x2", "y1", "y2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let e = |a: &str, b: &str| (a.to_string(), b.to_string());
    let edges = vec![
        e("c", "x1"),
        e("x1", "x2"),
        e("x2", "c"),
        e("c", "y1"),
        e("y1", "y2"),
        e("y2", "c"),
    ];
    SpaceGraph::new(names, &edges).expect("wedge is a valid graph")
}

/// Rotation `i ↦ i+1 (mod n)` in the numbering of [`cycle`].
pub fn rotation(n: usize) -> Perm {
    Perm((0..n as u32).map(|i| (i + 1) % n as u32).collect())
}

/// `rotation` raised to the `k`-th power.
pub fn rotation_pow(n: usize, k: usize) -> Perm {
    Perm((0..n as u32).map(|i| (i + k as u32) % n as u32).collect())
}

/// Reflection `i ↦ k − i (mod n)` in the numbering of [`cycle`].
pub fn reflection_offset(n: usize, k: usize) -> Perm {
    Perm(
        (0..n as u32)
            .map(|i| ((n as u32 + k as u32) - i) % n as u32)
            .collect(),
    )
}

/// Reflection fixing vertex 0.
pub fn reflection(n: usize) -> Perm {
    reflection_offset(n, 0)
}

/// For [`theta`]: swap two arcs pointwise, fixing the junctions and the
/// third arc.
pub fn theta_arc_swap(g: &SpaceGraph, k: usize, arc1: &str, arc2: &str) -> Perm {
    let mut image: Vec<u32> = (0..g.vertex_count() as u32).collect();
    for i in 1..=k {
        let p = g.index_of(&format!("{arc1}{i}")).expect("arc vertex");
        let q = g.index_of(&format!("{arc2}{i}")).expect("arc vertex");
        image[p as usize] = q;
        image[q as usize] = p;
    }
    Perm(image)
}

/// For [`theta`]: exchange the junctions `a ↔ b`, reversing every arc.
pub fn theta_reverse(g: &SpaceGraph, k: usize) -> Perm {
    let mut image: Vec<u32> = (0..g.vertex_count() as u32).collect();
    let a = g.index_of("a").unwrap();
    let b = g.index_of("b").unwrap();
    image[a as usize] = b;
    image[b as usize] = a;
    for arc in ["p", "q", "r"] {
        for i in 1..=k {
            let v = g.index_of(&format!("{arc}{i}")).expect("arc vertex");
            let w = g
                .index_of(&format!("{arc}{j}", j = k + 1 - i))
                .expect("arc vertex");
            image[v as usize] = w;
        }
    }
    Perm(image)
}

/// Look up a set of vertices by name; panics on unknown names (tests only).
pub fn vset(g: &SpaceGraph, names: &[&str]) -> VertexSet {
    names
        .iter()
        .map(|n| {
            g.index_of(n)
                .unwrap_or_else(|| panic!("unknown vertex {n}"))
        })
        .collect()
}

/// Indices as a set, for when the numbering is already the natural one.
pub fn ids(members: &[VertexId]) -> VertexSet {
    VertexSet::new(members.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::is_automorphism;

    #[test]
    fn builders_produce_expected_sizes() {
        assert_eq!(cycle(8).vertex_count(), 8);
        assert_eq!(cycle(8).edges().len(), 8);
        assert_eq!(theta(2).vertex_count(), 8);
        assert_eq!(theta(2).edges().len(), 9);
        assert_eq!(grid(3, 7).vertex_count(), 21);
        assert_eq!(complete(4).edges().len(), 6);
    }

    #[test]
    fn cycle_numbering_matches_names() {
        let g = cycle(12);
        assert_eq!(g.name(0), "v00");
        assert_eq!(g.name(11), "v11");
        assert!(g.has_edge(11, 0));
    }

    #[test]
    fn standard_perms_are_automorphisms() {
        let c8 = cycle(8);
        assert!(is_automorphism(&c8, &rotation(8)));
        assert!(is_automorphism(&c8, &reflection_offset(8, 5)));
        let th = theta(2);
        assert!(is_automorphism(&th, &theta_arc_swap(&th, 2, "p", "q")));
        assert!(is_automorphism(&th, &theta_reverse(&th, 2)));
    }
}
