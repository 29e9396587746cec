//! Walls on triples of off-the-wall points, with majority-rule sides.
//!
//! A division whose complement partition restricts to the off-the-wall
//! set as `(P, N)` determines the wall whose two halfspaces are the
//! triples with a majority in `P` (resp. `N`). Distinct divisions can
//! induce the same restriction; such coincident divisions are bundled
//! into one wall, and the bundle is reported. Walls with a side holding
//! fewer than two off-the-wall points would have an empty halfspace —
//! they are excluded at construction and listed as diagnostics.
//!
//! Every transversality/inclusion query has two routes: a region-count
//! criterion over the four corner intersections, and a brute-force scan
//! of all triples. The two must agree; [`Wallspace::check_against_scan`]
//! is the cross-check the oracle command runs.

use std::collections::BTreeMap;
use std::fmt;

use crate::division::DivisionFamily;
use crate::error::{ModelError, Result};
use crate::graph::{SpaceGraph, VertexId, VertexSet};
use crate::group::Perm;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A signed wall: one of the two majority-rule halfspaces.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Halfspace {
    pub wall: usize,
    pub sign: Sign,
}

impl Halfspace {
    pub fn new(wall: usize, sign: Sign) -> Halfspace {
        Halfspace { wall, sign }
    }

    pub fn opposite(self) -> Halfspace {
        Halfspace {
            wall: self.wall,
            sign: self.sign.flip(),
        }
    }
}

/// One wall: an unordered two-sided partition of the off-the-wall set,
/// together with the divisions that induce it.
#[derive(Clone, Debug)]
pub struct Wall {
    /// Off-the-wall points on the plus side (the side of the least
    /// off-the-wall vertex, for determinism).
    pub otw_plus: VertexSet,
    pub otw_minus: VertexSet,
    /// Full sides and cut set of the least inducing division, kept for
    /// display and export.
    pub side_plus: VertexSet,
    pub side_minus: VertexSet,
    pub cut_set: VertexSet,
    /// Indices into the family's division list, with the sign telling
    /// whether that division's `side_plus` lies on this wall's plus side.
    pub divisions: Vec<(usize, Sign)>,
}

impl Wall {
    pub fn otw_side(&self, sign: Sign) -> &VertexSet {
        match sign {
            Sign::Plus => &self.otw_plus,
            Sign::Minus => &self.otw_minus,
        }
    }

    /// A side with fewer than two off-the-wall points supports no
    /// majority triple: its halfspace is empty.
    pub fn is_degenerate(&self) -> bool {
        self.otw_plus.len() < 2 || self.otw_minus.len() < 2
    }

    /// More than one division induces this wall.
    pub fn is_coincident(&self) -> bool {
        self.divisions.len() > 1
    }
}

/// The wall system of a division family.
pub struct Wallspace {
    pub off_the_wall: VertexSet,
    /// Active walls, sorted by their off-the-wall partition.
    pub walls: Vec<Wall>,
    /// Walls excluded for having an empty halfspace.
    pub excluded: Vec<Wall>,
    /// For each family division: its active wall and relative sign, or
    /// `None` if its wall was excluded.
    pub division_wall: Vec<Option<(usize, Sign)>>,
    names: Vec<String>,
}

impl Wallspace {
    pub fn build(graph: &SpaceGraph, family: &DivisionFamily) -> Result<Wallspace> {
        let mut off_the_wall = graph.all_vertices();
        for c in family.cut_sets() {
            off_the_wall = off_the_wall.difference(&c);
        }
        if off_the_wall.len() < 3 {
            return Err(ModelError::OffTheWallTooSmall {
                count: off_the_wall.len(),
            });
        }

        // Bundle divisions by their off-the-wall partition, normalized so
        // the side of the least off-the-wall vertex comes first.
        let mut bundles: BTreeMap<(VertexSet, VertexSet), Vec<(usize, Sign)>> = BTreeMap::new();
        for (i, d) in family.divisions.iter().enumerate() {
            let p = off_the_wall.intersection(&d.side_plus);
            let n = off_the_wall.intersection(&d.side_minus);
            let keep = match (p.least(), n.least()) {
                (Some(mp), Some(mn)) => mp < mn,
                (Some(_), None) => true,
                _ => false,
            };
            let (key, sign) = if keep {
                ((p, n), Sign::Plus)
            } else {
                ((n, p), Sign::Minus)
            };
            bundles.entry(key).or_default().push((i, sign));
        }

        let mut walls = Vec::new();
        let mut excluded = Vec::new();
        let mut division_wall = vec![None; family.divisions.len()];
        for ((otw_plus, otw_minus), divisions) in bundles {
            let &(lead, lead_sign) = &divisions[0];
            let d = &family.divisions[lead];
            let (side_plus, side_minus) = match lead_sign {
                Sign::Plus => (d.side_plus.clone(), d.side_minus.clone()),
                Sign::Minus => (d.side_minus.clone(), d.side_plus.clone()),
            };
            let wall = Wall {
                otw_plus,
                otw_minus,
                side_plus,
                side_minus,
                cut_set: d.cut_set.clone(),
                divisions,
            };
            if wall.is_degenerate() {
                excluded.push(wall);
            } else {
                let w = walls.len();
                for &(i, sign) in &wall.divisions {
                    division_wall[i] = Some((w, sign));
                }
                walls.push(wall);
            }
        }

        Ok(Wallspace {
            off_the_wall,
            walls,
            excluded,
            division_wall,
            names: graph.names().to_vec(),
        })
    }

    pub fn wall_count(&self) -> usize {
        self.walls.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Walls whose division bundles have more than one member.
    pub fn coincident_walls(&self) -> Vec<usize> {
        (0..self.walls.len())
            .filter(|&w| self.walls[w].is_coincident())
            .collect()
    }

    fn check_triple(&self, triple: &VertexSet) -> Result<()> {
        if triple.len() != 3 {
            return Err(ModelError::Input(format!(
                "need 3 distinct points, got {}",
                triple.len()
            )));
        }
        for v in triple.iter() {
            if !self.off_the_wall.contains(v) {
                return Err(ModelError::NotOffTheWall(
                    self.names
                        .get(v as usize)
                        .cloned()
                        .unwrap_or_else(|| "<out of range>".into()),
                ));
            }
        }
        Ok(())
    }

    /// Majority side of a triple of off-the-wall points.
    pub fn side_of_triple(&self, wall: usize, triple: &VertexSet) -> Result<Sign> {
        self.check_triple(triple)?;
        let inside = triple
            .iter()
            .filter(|&v| self.walls[wall].otw_plus.contains(v))
            .count();
        Ok(if inside >= 2 { Sign::Plus } else { Sign::Minus })
    }

    /// Number of walls separating two triples.
    pub fn finiteness_condition(&self, t1: &VertexSet, t2: &VertexSet) -> Result<usize> {
        let mut count = 0;
        for w in 0..self.walls.len() {
            if self.side_of_triple(w, t1)? != self.side_of_triple(w, t2)? {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Off-the-wall point counts in the four corners of a wall pair:
    /// `counts[s][t]` is the number of points on side `s` of `w1` and
    /// side `t` of `w2` (0 = plus, 1 = minus).
    pub fn region_counts(&self, w1: usize, w2: usize) -> [[usize; 2]; 2] {
        let mut counts = [[0usize; 2]; 2];
        for v in self.off_the_wall.iter() {
            let s = usize::from(!self.walls[w1].otw_plus.contains(v));
            let t = usize::from(!self.walls[w2].otw_plus.contains(v));
            counts[s][t] += 1;
        }
        counts
    }

    fn side_index(sign: Sign) -> usize {
        match sign {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }

    /// Region-count criterion: does some triple land on side `s1` of `w1`
    /// and side `s2` of `w2`? With corner counts a = |s1 ∩ s2|,
    /// b = |s1 ∩ ¬s2|, c = |¬s1 ∩ s2|, a triple achieving the corner
    /// either has two points in the corner itself (a ≥ 2) or one point in
    /// each of the corner and its two neighbors (a, b, c ≥ 1); two points
    /// outside `s1` or outside `s2` would break that majority.
    pub fn corner_achievable(&self, w1: usize, s1: Sign, w2: usize, s2: Sign) -> bool {
        debug_assert_ne!(w1, w2);
        let counts = self.region_counts(w1, w2);
        let (i, j) = (Self::side_index(s1), Self::side_index(s2));
        let a = counts[i][j];
        let b = counts[i][1 - j];
        let c = counts[1 - i][j];
        a >= 2 || (a >= 1 && b >= 1 && c >= 1)
    }

    /// Transversality: all four corners achievable.
    pub fn transverse(&self, w1: usize, w2: usize) -> bool {
        assert_ne!(
            w1, w2,
            "transversality is a relation between distinct walls"
        );
        [Sign::Plus, Sign::Minus].into_iter().all(|s1| {
            [Sign::Plus, Sign::Minus]
                .into_iter()
                .all(|s2| self.corner_achievable(w1, s1, w2, s2))
        })
    }

    /// Inclusion of majority halfspaces: every triple on `h1` is on `h2`.
    pub fn halfspace_subset(&self, h1: Halfspace, h2: Halfspace) -> bool {
        if h1.wall == h2.wall {
            return h1.sign == h2.sign;
        }
        !self.corner_achievable(h1.wall, h1.sign, h2.wall, h2.sign.flip())
    }

    /// All triples of off-the-wall points (scan order: ascending).
    pub fn triples(&self) -> Vec<VertexSet> {
        let pts: Vec<VertexId> = self.off_the_wall.iter().collect();
        let mut out = Vec::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    out.push(VertexSet::new(vec![pts[i], pts[j], pts[k]]));
                }
            }
        }
        out
    }

    /// Brute-force transversality: scan every triple into its corner.
    pub fn transverse_scan(&self, w1: usize, w2: usize) -> Result<bool> {
        let mut seen = [[false; 2]; 2];
        for t in self.triples() {
            let s = Self::side_index(self.side_of_triple(w1, &t)?);
            let u = Self::side_index(self.side_of_triple(w2, &t)?);
            seen[s][u] = true;
        }
        Ok(seen.iter().all(|row| row.iter().all(|&b| b)))
    }

    /// Brute-force inclusion: no triple on `h1` misses `h2`.
    pub fn halfspace_subset_scan(&self, h1: Halfspace, h2: Halfspace) -> Result<bool> {
        for t in self.triples() {
            if self.side_of_triple(h1.wall, &t)? == h1.sign
                && self.side_of_triple(h2.wall, &t)? != h2.sign
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Cross-check the region-count criteria against the triple scans on
    /// every wall pair and every signed pair. Errors on first mismatch.
    pub fn check_against_scan(&self) -> Result<()> {
        let signs = [Sign::Plus, Sign::Minus];
        for w1 in 0..self.walls.len() {
            for w2 in 0..self.walls.len() {
                if w1 == w2 {
                    continue;
                }
                let fast = self.transverse(w1, w2);
                let slow = self.transverse_scan(w1, w2)?;
                if fast != slow {
                    return Err(ModelError::OracleMismatch(format!(
                        "transverse({w1},{w2}): region-count {fast}, triple scan {slow}"
                    )));
                }
                for s1 in signs {
                    for s2 in signs {
                        let (h1, h2) = (Halfspace::new(w1, s1), Halfspace::new(w2, s2));
                        let fast = self.halfspace_subset(h1, h2);
                        let slow = self.halfspace_subset_scan(h1, h2)?;
                        if fast != slow {
                            return Err(ModelError::OracleMismatch(format!(
                                "halfspace_subset(({w1},{s}),({w2},{t})): region-count {fast}, triple scan {slow}",
                                s = s1.symbol(),
                                t = s2.symbol()
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Exact maximum clique in the transversality graph, with the
    /// lexicographically first witness.
    pub fn max_transverse_clique(&self) -> (usize, Vec<usize>) {
        let n = self.walls.len();
        let mut adj = vec![vec![false; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                if self.transverse(i, j) {
                    adj[i][j] = true;
                    adj[j][i] = true;
                }
            }
        }
        fn extend(
            adj: &[Vec<bool>],
            current: &mut Vec<usize>,
            candidates: &[usize],
            best: &mut Vec<usize>,
        ) {
            if current.len() > best.len() {
                *best = current.clone();
            }
            for (pos, &c) in candidates.iter().enumerate() {
                if current.len() + candidates.len() - pos <= best.len() {
                    break;
                }
                current.push(c);
                let next: Vec<usize> = candidates[pos + 1..]
                    .iter()
                    .copied()
                    .filter(|&x| adj[c][x])
                    .collect();
                extend(adj, current, &next, best);
                current.pop();
            }
        }
        let mut best = Vec::new();
        let all: Vec<usize> = (0..n).collect();
        extend(&adj, &mut Vec::new(), &all, &mut best);
        (best.len(), best)
    }

    /// How a graph automorphism permutes the active walls: for each wall,
    /// the image wall and whether the plus side maps to plus. Errors if
    /// the image partition is not an active wall (the action does not
    /// preserve the family).
    pub fn wall_image(&self, g: &Perm) -> Result<Vec<(usize, Sign)>> {
        let mut out = Vec::with_capacity(self.walls.len());
        for (w, wall) in self.walls.iter().enumerate() {
            let ip = g.apply_set(&wall.otw_plus);
            let io = self
                .walls
                .iter()
                .position(|cand| cand.otw_plus == ip || cand.otw_minus == ip);
            match io {
                Some(j) => {
                    let sign = if self.walls[j].otw_plus == ip {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    };
                    out.push((j, sign));
                }
                None => {
                    return Err(ModelError::ActionMismatch(format!(
                        "image of wall {w} is not a wall of the family"
                    )));
                }
            }
        }
        Ok(out)
    }

    pub fn describe_wall(&self, w: usize) -> String {
        let wall = &self.walls[w];
        format!(
            "wall {w}: cut {} sides {} | {}",
            wall.cut_set.display(&self.names),
            wall.otw_plus.display(&self.names),
            wall.otw_minus.display(&self.names)
        )
    }
}

impl fmt::Debug for Wallspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Wallspace({} walls, {} excluded, {} off-the-wall points)",
            self.walls.len(),
            self.excluded.len(),
            self.off_the_wall.len()
        )
    }
}
