//! Divisions: a cut set together with a two-sided split of its complement.
//!
//! A division carries its sides as an ordered pair for storage, but
//! equality is effectively unordered: construction normalizes so that
//! `side_plus` is the side containing the least vertex of the complement,
//! and the small/big flag is recomputed from component counts rather than
//! trusted from input (stabilizers may swap sides).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{ModelError, Result};
use crate::graph::{SpaceGraph, VertexSet};
use crate::group::{orbit_and_stabilizer, Group, Perm, Subgroup};

/// Which side, if either, is the small side (a single component, the
/// rest of the complement being the big side). `Neither` for valence-2
/// divisions and for splits where both sides bundle several components.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SmallSide {
    Plus,
    Minus,
    Neither,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Division {
    pub cut_set: VertexSet,
    pub side_plus: VertexSet,
    pub side_minus: VertexSet,
    pub small: SmallSide,
}

impl Division {
    /// Normalize an ordered side pair into canonical storage form. Does
    /// not validate; see [`validate_division`].
    pub fn assemble(
        graph: &SpaceGraph,
        cut_set: VertexSet,
        a: VertexSet,
        b: VertexSet,
    ) -> Division {
        let (side_plus, side_minus) = match (a.least(), b.least()) {
            (Some(ma), Some(mb)) if mb < ma => (b, a),
            _ => (a, b),
        };
        let small = Division::recompute_small(graph, &cut_set, &side_plus, &side_minus);
        Division {
            cut_set,
            side_plus,
            side_minus,
            small,
        }
    }

    fn recompute_small(
        graph: &SpaceGraph,
        cut_set: &VertexSet,
        side_plus: &VertexSet,
        _side_minus: &VertexSet,
    ) -> SmallSide {
        let comps = match graph.components(cut_set) {
            Ok(c) => c,
            Err(_) => return SmallSide::Neither,
        };
        if comps.len() < 3 {
            return SmallSide::Neither;
        }
        let plus_comps = comps
            .iter()
            .filter(|c| c.least().map(|m| side_plus.contains(m)).unwrap_or(false))
            .count();
        let minus_comps = comps.len() - plus_comps;
        match (plus_comps, minus_comps) {
            (1, _) => SmallSide::Plus,
            (_, 1) => SmallSide::Minus,
            _ => SmallSide::Neither,
        }
    }

    /// The small side's vertex set, when one is flagged.
    pub fn small_side(&self) -> Option<&VertexSet> {
        match self.small {
            SmallSide::Plus => Some(&self.side_plus),
            SmallSide::Minus => Some(&self.side_minus),
            SmallSide::Neither => None,
        }
    }

    pub fn big_side(&self) -> Option<&VertexSet> {
        match self.small {
            SmallSide::Plus => Some(&self.side_minus),
            SmallSide::Minus => Some(&self.side_plus),
            SmallSide::Neither => None,
        }
    }

    /// Setwise image under a graph automorphism, renormalized.
    pub fn image(&self, p: &Perm) -> Division {
        let cut_set = p.apply_set(&self.cut_set);
        let ia = p.apply_set(&self.side_plus);
        let ib = p.apply_set(&self.side_minus);
        let keep_order = match (ia.least(), ib.least()) {
            (Some(ma), Some(mb)) => ma < mb,
            _ => true,
        };
        let (side_plus, side_minus, small) = if keep_order {
            (ia, ib, self.small)
        } else {
            let flipped = match self.small {
                SmallSide::Plus => SmallSide::Minus,
                SmallSide::Minus => SmallSide::Plus,
                SmallSide::Neither => SmallSide::Neither,
            };
            (ib, ia, flipped)
        };
        Division {
            cut_set,
            side_plus,
            side_minus,
            small,
        }
    }

    pub fn display(&self, names: &[String]) -> String {
        format!(
            "({} : {} | {})",
            self.cut_set.display(names),
            self.side_plus.display(names),
            self.side_minus.display(names)
        )
    }
}

impl fmt::Debug for Division {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Division({:?} : {:?} | {:?})",
            self.cut_set, self.side_plus, self.side_minus
        )
    }
}

/// Clause-by-clause validation report for a division.
#[derive(Clone, Debug, Default)]
pub struct DivisionReport {
    pub failed_clauses: Vec<&'static str>,
}

impl DivisionReport {
    pub fn is_valid(&self) -> bool {
        self.failed_clauses.is_empty()
    }
}

/// Check every division clause by name; reports instead of erroring.
pub fn validate_division(graph: &SpaceGraph, d: &Division) -> DivisionReport {
    let mut failed = Vec::new();
    let mut fail = |clause| failed.push(clause);

    if d.cut_set.is_empty() {
        fail("cut-set-nonempty");
    }
    let check = graph.is_cut_set(&d.cut_set).ok();
    match &check {
        Some(c) => {
            if !c.disconnects {
                fail("cut-set-disconnects");
            }
            if !c.nowhere_dense() {
                fail("cut-set-nowhere-dense");
            }
        }
        None => fail("cut-set-within-graph"),
    }

    let complement = graph.all_vertices().difference(&d.cut_set);
    let both = d.side_plus.union(&d.side_minus);
    if both != complement || !d.side_plus.is_disjoint(&d.side_minus) {
        fail("sides-partition-complement");
    }
    if d.side_plus.is_empty() || d.side_minus.is_empty() {
        fail("sides-nonempty");
    }

    if let Ok(comps) = graph.components(&d.cut_set) {
        let union_of_components = comps.iter().all(|c| {
            let m = c.least().expect("components are nonempty");
            let side = if d.side_plus.contains(m) {
                &d.side_plus
            } else {
                &d.side_minus
            };
            c.is_subset(side)
        });
        if !union_of_components {
            fail("sides-union-of-components");
        }
    }

    let closure_ok = d.cut_set.iter().all(|v| {
        let nb = graph.neighbors(v);
        nb.iter().any(|&w| d.side_plus.contains(w)) && nb.iter().any(|&w| d.side_minus.contains(w))
    });
    if !closure_ok {
        fail("cut-set-adjacent-to-both-sides");
    }

    DivisionReport {
        failed_clauses: failed,
    }
}

/// The canonical divisions of one cut set: one per complement component
/// (that component against the rest) when the valence is at least 3, and
/// the single two-sided split when the valence is exactly 2.
pub fn canonical_divisions(graph: &SpaceGraph, cut_set: &VertexSet) -> Result<Vec<Division>> {
    let check = graph.is_cut_set(cut_set)?;
    if !check.disconnects {
        return Err(ModelError::NotACutSet(format!(
            "{} does not disconnect the graph",
            cut_set.display(graph.names())
        )));
    }
    if !check.nowhere_dense() {
        return Err(ModelError::NotACutSet(format!(
            "{} has members with no outside neighbor: {}",
            cut_set.display(graph.names()),
            check.interior_members.display(graph.names())
        )));
    }
    let comps = graph.components(cut_set)?;
    if comps.len() == 2 {
        return Ok(vec![Division::assemble(
            graph,
            cut_set.clone(),
            comps[0].clone(),
            comps[1].clone(),
        )]);
    }
    let mut out = Vec::with_capacity(comps.len());
    for (i, small) in comps.iter().enumerate() {
        let mut rest = VertexSet::empty();
        for (j, c) in comps.iter().enumerate() {
            if j != i {
                rest = rest.union(c);
            }
        }
        out.push(Division::assemble(
            graph,
            cut_set.clone(),
            small.clone(),
            rest,
        ));
    }
    out.sort();
    Ok(out)
}

/// A family of divisions closed under the group action, with its orbit
/// decomposition (orbits listed by least member index).
#[derive(Debug)]
pub struct DivisionFamily {
    pub divisions: Vec<Division>,
    pub orbits: Vec<Vec<usize>>,
}

impl DivisionFamily {
    pub fn len(&self) -> usize {
        self.divisions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisions.is_empty()
    }

    /// Distinct cut sets underlying the family, sorted.
    pub fn cut_sets(&self) -> Vec<VertexSet> {
        let set: BTreeSet<VertexSet> = self.divisions.iter().map(|d| d.cut_set.clone()).collect();
        set.into_iter().collect()
    }
}

/// Close a seed list of divisions under the whole group, deduplicating
/// unordered-side duplicates, and record the orbit decomposition.
pub fn close_under_action(seeds: &[Division], group: &Group, cap: usize) -> Result<DivisionFamily> {
    let mut closed: BTreeSet<Division> = BTreeSet::new();
    for d in seeds {
        for g in group.elements() {
            closed.insert(d.image(g));
            if closed.len() > cap {
                return Err(ModelError::FamilyTooLarge {
                    size: closed.len(),
                    cap,
                });
            }
        }
    }
    let divisions: Vec<Division> = closed.into_iter().collect();
    let mut orbit_of = vec![usize::MAX; divisions.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..divisions.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let orbit_id = orbits.len();
        let mut members = Vec::new();
        for g in group.elements() {
            let img = divisions[i].image(g);
            let j = divisions
                .binary_search(&img)
                .expect("closed family contains every image");
            if orbit_of[j] == usize::MAX {
                orbit_of[j] = orbit_id;
                members.push(j);
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    Ok(DivisionFamily { divisions, orbits })
}

/// Stabilizer of the division as an unordered object: elements fixing the
/// cut set and fixing or swapping the side pair. This is the subgroup
/// whose order multiplies with the (unordered) orbit size to the group
/// order.
pub fn division_stabilizer(group: &Group, d: &Division) -> Subgroup {
    orbit_and_stabilizer(group, d, |g, x| x.image(g)).1
}

/// The side-preserving part of [`division_stabilizer`]: elements fixing
/// the cut set and each side setwise. Elements of the full stabilizer
/// outside this subgroup swap the two sides (inversions).
pub fn division_side_stabilizer(group: &Group, d: &Division) -> Subgroup {
    let indices = group
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, g)| {
            g.apply_set(&d.cut_set) == d.cut_set && g.apply_set(&d.side_plus) == d.side_plus
        })
        .map(|(i, _)| i)
        .collect();
    Subgroup(indices)
}

pub fn cut_set_stabilizer(group: &Group, c: &VertexSet) -> Subgroup {
    orbit_and_stabilizer(group, c, |g, x| g.apply_set(x)).1
}

/// Index of the division stabilizer inside the cut-set stabilizer
/// (always finite here; the quantity the fullness assumption constrains).
pub fn fullness_index(group: &Group, d: &Division) -> usize {
    let stab_c = cut_set_stabilizer(group, &d.cut_set).order();
    let stab_d = division_stabilizer(group, d).order();
    debug_assert_eq!(stab_c % stab_d, 0);
    stab_c / stab_d
}

/// Disjointness-based non-separation: each cut set must lie inside a
/// single component of the other's complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MnsCheck {
    pub holds: bool,
    pub overlap: bool,
}

pub fn mutually_non_separating(graph: &SpaceGraph, c1: &VertexSet, c2: &VertexSet) -> MnsCheck {
    if !c1.is_disjoint(c2) {
        return MnsCheck {
            holds: false,
            overlap: true,
        };
    }
    let inside_one = |cut: &VertexSet, other: &VertexSet| -> bool {
        match graph.components(cut) {
            Ok(comps) => comps.iter().any(|c| other.is_subset(c)),
            Err(_) => false,
        }
    };
    MnsCheck {
        holds: inside_one(c1, c2) && inside_one(c2, c1),
        overlap: false,
    }
}

/// Plumbing: enumerate all cut sets of size at most `max_size` (bounded
/// search; nowhere-dense candidates only).
pub fn enumerate_cut_sets(graph: &SpaceGraph, max_size: usize) -> Vec<VertexSet> {
    let n = graph.vertex_count();
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    fn recurse(
        graph: &SpaceGraph,
        start: u32,
        remaining: usize,
        current: &mut Vec<u32>,
        out: &mut Vec<VertexSet>,
    ) {
        if !current.is_empty() {
            let set = VertexSet::new(current.clone());
            if let Ok(check) = graph.is_cut_set(&set) {
                if check.disconnects && check.nowhere_dense() {
                    out.push(set);
                }
            }
        }
        if remaining == 0 {
            return;
        }
        for v in start..graph.vertex_count() as u32 {
            current.push(v);
            recurse(graph, v + 1, remaining - 1, current, out);
            current.pop();
        }
    }
    recurse(
        graph,
        0,
        max_size.min(n.saturating_sub(2)),
        &mut current,
        &mut out,
    );
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn theta_junction_pair_gives_three_divisions() {
        let g = instances::theta(2);
        let c = instances::vset(&g, &["a", "b"]);
        let divs = canonical_divisions(&g, &c).unwrap();
        assert_eq!(divs.len(), 3);
        for d in &divs {
            assert!(validate_division(&g, d).is_valid());
            assert_eq!(d.small_side().unwrap().len(), 2);
            assert_eq!(d.big_side().unwrap().len(), 4);
        }
        // The p-arc division: p interior is the least complement side.
        let p_int = instances::vset(&g, &["p1", "p2"]);
        let dp = divs
            .iter()
            .find(|d| *d.small_side().unwrap() == p_int)
            .unwrap();
        assert_eq!(dp.small, SmallSide::Plus);
    }

    #[test]
    fn valence_two_pair_gives_one_division_with_no_small_side() {
        let g = instances::cycle(8);
        let c = instances::ids(&[0, 4]);
        let divs = canonical_divisions(&g, &c).unwrap();
        assert_eq!(divs.len(), 1);
        let d = &divs[0];
        assert_eq!(d.side_plus, instances::ids(&[1, 2, 3]));
        assert_eq!(d.side_minus, instances::ids(&[5, 6, 7]));
        assert_eq!(d.small, SmallSide::Neither);
        assert!(validate_division(&g, d).is_valid());
    }

    #[test]
    fn adjacent_pair_is_rejected() {
        let g = instances::cycle(8);
        let err = canonical_divisions(&g, &instances::ids(&[0, 1])).unwrap_err();
        assert!(matches!(err, ModelError::NotACutSet(_)));
    }

    #[test]
    fn split_component_fails_the_union_clause() {
        let g = instances::cycle(8);
        let d = Division::assemble(
            &g,
            instances::ids(&[0, 4]),
            instances::ids(&[1, 2]),
            instances::ids(&[3, 5, 6, 7]),
        );
        let report = validate_division(&g, &d);
        assert!(report.failed_clauses.contains(&"sides-union-of-components"));
    }

    #[test]
    fn image_renormalizes_orientation_and_small_flag() {
        let g = instances::theta(2);
        let c = instances::vset(&g, &["a", "b"]);
        let divs = canonical_divisions(&g, &c).unwrap();
        let p_int = instances::vset(&g, &["p1", "p2"]);
        let q_int = instances::vset(&g, &["q1", "q2"]);
        let dp = divs
            .iter()
            .find(|d| *d.small_side().unwrap() == p_int)
            .unwrap();
        let swap = instances::theta_arc_swap(&g, 2, "p", "q");
        let dq = dp.image(&swap);
        assert_eq!(*dq.small_side().unwrap(), q_int);
        // q-interior contains no p-vertex, so the big side (holding p1)
        // became side_plus and the small flag points at minus.
        assert_eq!(dq.small, SmallSide::Minus);
        assert!(divs.contains(&dq));
    }

    #[test]
    fn rotation_closure_yields_four_antipodal_divisions() {
        let g = instances::cycle(8);
        let group = Group::generate(8, &[instances::rotation(8)], 100).unwrap();
        let seeds = canonical_divisions(&g, &instances::ids(&[0, 4])).unwrap();
        let family = close_under_action(&seeds, &group, 1000).unwrap();
        assert_eq!(family.len(), 4);
        assert_eq!(family.orbits.len(), 1);
        let cuts = family.cut_sets();
        assert_eq!(cuts.len(), 4);
        assert!(cuts.contains(&instances::ids(&[3, 7])));
    }

    #[test]
    fn trivial_group_leaves_family_unchanged() {
        let g = instances::cycle(8);
        let group = Group::trivial(8);
        let seeds = canonical_divisions(&g, &instances::ids(&[0, 4])).unwrap();
        let family = close_under_action(&seeds, &group, 1000).unwrap();
        assert_eq!(family.len(), 1);
        assert_eq!(family.orbits, vec![vec![0]]);
    }

    #[test]
    fn closure_is_idempotent_and_generator_invariant() {
        let g = instances::cycle(8);
        let gens = [instances::rotation(8), instances::reflection(8)];
        let group = Group::generate(8, &gens, 100).unwrap();
        let seeds = canonical_divisions(&g, &instances::ids(&[0, 4])).unwrap();
        let family = close_under_action(&seeds, &group, 1000).unwrap();
        let again = close_under_action(&family.divisions, &group, 1000).unwrap();
        assert_eq!(family.divisions, again.divisions);
        for gperm in &gens {
            for d in &family.divisions {
                assert!(family.divisions.contains(&d.image(gperm)));
            }
        }
    }

    #[test]
    fn pair_stabilizer_fits_orbit_counting_and_side_stabilizer_halves_it() {
        let g = instances::cycle(8);
        let gens = [instances::rotation(8), instances::reflection(8)];
        let group = Group::generate(8, &gens, 100).unwrap();
        let d = canonical_divisions(&g, &instances::ids(&[0, 4]))
            .unwrap()
            .remove(0);
        let family = close_under_action(&[d.clone()], &group, 1000).unwrap();
        let stab = division_stabilizer(&group, &d);
        assert_eq!(stab.order(), 4);
        assert_eq!(family.len() * stab.order(), group.order());
        let side_stab = division_side_stabilizer(&group, &d);
        assert_eq!(side_stab.order(), 2);
        assert!(side_stab.0.iter().all(|&i| stab.contains(i)));
    }

    #[test]
    fn theta_fullness_index_is_arc_count() {
        let g = instances::theta(2);
        let gens = [
            instances::theta_arc_swap(&g, 2, "p", "q"),
            instances::theta_arc_swap(&g, 2, "q", "r"),
        ];
        let group = Group::generate(g.vertex_count(), &gens, 100).unwrap();
        assert_eq!(group.order(), 6);
        let c = instances::vset(&g, &["a", "b"]);
        let divs = canonical_divisions(&g, &c).unwrap();
        assert_eq!(fullness_index(&group, &divs[0]), 3);
        let family = close_under_action(&divs, &group, 100).unwrap();
        assert_eq!(family.len(), 3);
        assert_eq!(family.orbits.len(), 1);
    }

    #[test]
    fn mutual_non_separation_examples() {
        let g = instances::cycle(8);
        let mns = |a: &[u32], b: &[u32]| {
            mutually_non_separating(&g, &instances::ids(a), &instances::ids(b))
        };
        assert_eq!(
            mns(&[1, 3], &[5, 7]),
            MnsCheck {
                holds: true,
                overlap: false
            }
        );
        assert_eq!(
            mns(&[0, 4], &[2, 6]),
            MnsCheck {
                holds: false,
                overlap: false
            }
        );
        assert_eq!(
            mns(&[0, 4], &[0, 4]),
            MnsCheck {
                holds: false,
                overlap: true
            }
        );
    }

    #[test]
    fn bounded_cut_set_search_finds_all_nonadjacent_pairs() {
        let g = instances::cycle(8);
        let cuts = enumerate_cut_sets(&g, 2);
        assert_eq!(cuts.len(), 20);
        assert!(cuts.contains(&instances::ids(&[0, 4])));
        assert!(!cuts.contains(&instances::ids(&[0, 1])));
    }
}
