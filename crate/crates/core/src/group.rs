//! Finite permutation groups acting on the model graph.
//!
//! Groups are materialized as explicit element lists (closed under the
//! generators via breadth-first products) so stabilizers and orbits can be
//! computed exactly. Element order is the discovery order of that closure,
//! which is deterministic for a fixed generator list.

use std::collections::HashMap;
use std::fmt;

use crate::error::{ModelError, Result};
use crate::graph::{SpaceGraph, VertexId, VertexSet};

/// Permutation of `0..n`, stored as the image list: `p[i]` is where `i` goes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub Vec<VertexId>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as VertexId).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i as VertexId == v)
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.0[v as usize]
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&v| other.apply(v)).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as VertexId;
        }
        Perm(inv)
    }

    pub fn apply_set(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|v| self.apply(v)).collect()
    }

    /// Validate that the image list is a bijection on `0..n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(ModelError::Input(format!(
                "permutation has {} entries, expected {n}",
                self.0.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in &self.0 {
            if v as usize >= n || seen[v as usize] {
                return Err(ModelError::Input(format!(
                    "permutation image list is not a bijection (at image {v})"
                )));
            }
            seen[v as usize] = true;
        }
        Ok(())
    }

    /// Cycle notation over the given names, e.g. `(v0 v3)(v1 v2)`; `id`
    /// for the identity.
    pub fn cycles_string(&self, names: &[String]) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut v = start;
            let mut first = true;
            while !seen[v] {
                seen[v] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&names[v]);
                first = false;
                v = self.0[v] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("id");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

/// Does `p` map every edge of `g` to an edge?
pub fn is_automorphism(g: &SpaceGraph, p: &Perm) -> bool {
    p.degree() == g.vertex_count()
        && g.edges()
            .iter()
            .all(|&(a, b)| g.has_edge(p.apply(a), p.apply(b)))
}

/// Explicitly enumerated finite group.
pub struct Group {
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl Group {
    /// Close the generators under products. Generators must already be
    /// validated bijections of degree `n`.
    pub fn generate(n: usize, generators: &[Perm], cap: usize) -> Result<Group> {
        let mut alphabet: Vec<Perm> = Vec::new();
        for g in generators {
            alphabet.push(g.clone());
            alphabet.push(g.inverse());
        }
        let mut elements = vec![Perm::identity(n)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for a in &alphabet {
                let next = current.then(a);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(ModelError::GroupTooLarge { cap });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
        }
        Ok(Group { elements, index })
    }

    pub fn trivial(n: usize) -> Group {
        Group::generate(n, &[], 1).expect("trivial group fits any cap")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `a·b` (apply `a` first). Panics if the group is not closed,
    /// which `generate` guarantees against.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].then(&self.elements[b]);
        *self.index.get(&p).expect("group closed under composition")
    }

    pub fn inverse_of(&self, a: usize) -> usize {
        let p = self.elements[a].inverse();
        *self.index.get(&p).expect("group closed under inverses")
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(order {})", self.order())
    }
}

/// Subgroup given by sorted element indices into the parent group.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subgroup(pub Vec<usize>);

impl Subgroup {
    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }
}

/// Orbit of `seed` under the full element list, plus its stabilizer.
///
/// The orbit comes back sorted (by `T`'s order), so equal orbits compare
/// equal regardless of which member seeded them.
pub fn orbit_and_stabilizer<T, F>(group: &Group, seed: &T, act: F) -> (Vec<T>, Subgroup)
where
    T: Clone + Eq + Ord,
    F: Fn(&Perm, &T) -> T,
{
    let mut orbit: Vec<T> = Vec::new();
    let mut stab = Vec::new();
    for (i, g) in group.elements().iter().enumerate() {
        let image = act(g, seed);
        if image == *seed {
            stab.push(i);
        }
        if !orbit.contains(&image) {
            orbit.push(image);
        }
    }
    orbit.sort();
    (orbit, Subgroup(stab))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn rotation_generates_cyclic_group() {
        let rot = instances::rotation(8);
        let g = Group::generate(8, &[rot], 100).unwrap();
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn rotation_and_reflection_generate_dihedral_group() {
        let gens = [instances::rotation(8), instances::reflection(8)];
        let g = Group::generate(8, &gens, 100).unwrap();
        assert_eq!(g.order(), 16);
    }

    #[test]
    fn cap_is_enforced() {
        let gens = [instances::rotation(8), instances::reflection(8)];
        let err = Group::generate(8, &gens, 10).unwrap_err();
        assert!(matches!(err, ModelError::GroupTooLarge { cap: 10 }));
        assert!(err.is_cap());
    }

    #[test]
    fn compose_then_applies_left_first() {
        let a = Perm(vec![1, 2, 0]); // 0->1->2->0
        let b = Perm(vec![0, 2, 1]); // swap 1,2
        let ab = a.then(&b);
        // 0 -> a -> 1 -> b -> 2
        assert_eq!(ab.apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
    }

    #[test]
    fn rotation_is_cycle_automorphism_but_not_path_automorphism() {
        let c8 = instances::cycle(8);
        assert!(is_automorphism(&c8, &instances::rotation(8)));
        let p4 = instances::path(4);
        assert!(!is_automorphism(&p4, &Perm(vec![1, 2, 3, 0])));
    }

    #[test]
    fn orbit_stabilizer_counting_on_dihedral_pair() {
        // Antipodal pair {0, 4} on the 8-cycle under the dihedral group:
        // orbit has 4 antipodal pairs, so the stabilizer has order 16/4 = 4.
        let gens = [instances::rotation(8), instances::reflection(8)];
        let g = Group::generate(8, &gens, 100).unwrap();
        let seed = VertexSet::new(vec![0, 4]);
        let (orbit, stab) = orbit_and_stabilizer(&g, &seed, |p, s| p.apply_set(s));
        assert_eq!(orbit.len(), 4);
        assert_eq!(stab.order(), 4);
        assert_eq!(orbit.len() * stab.order(), g.order());
    }

    #[test]
    fn cycle_notation_uses_names() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(Perm(vec![1, 0, 2]).cycles_string(&names), "(a b)");
        assert_eq!(Perm::identity(3).cycles_string(&names), "id");
    }
}
