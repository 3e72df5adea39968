//! Exact homology of two-term complexes built from towers
//! `T^+ = F[U, U^-1] / U F[U]` with monomial components.
//!
//! A [`MonomialTowerMap`] is a map `D: ⊕_a T^+ -> ⊕_b T^+` whose components
//! are powers of `U`, each tower carrying a grading offset (the grading of
//! its bottom element `U^0`). The homology of the mapping cone of `D` is
//! `ker D ⊕ coker D`; for a zig-zag path diagram this is one tower plus a
//! finite list of cyclic `F[U]`-torsion summands, and both are computed
//! exactly by iterated two-node reductions — no truncation is involved.

use std::collections::BTreeMap;

use thiserror::Error;

/// A direct sum of at most one tower `T^+` and finitely many cyclic torsion
/// summands `F[U]/U^k`, each graded.
///
/// `tower_bottom` is the grading of the bottom element of the tower;
/// each torsion summand records `(k, q)` where `k >= 1` is the `U`-length
/// and `q` the grading of its highest non-zero element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    pub tower_bottom: Option<i64>,
    pub torsion: Vec<(u64, i64)>,
}

impl GradedModule {
    pub fn tower_only(bottom: i64) -> Self {
        Self {
            tower_bottom: Some(bottom),
            torsion: Vec::new(),
        }
    }

    fn normalized(mut self) -> Self {
        self.torsion.retain(|&(k, _)| k > 0);
        self.torsion.sort_unstable_by_key(|&(k, q)| (q, k));
        self
    }

    /// Dimension over F_2 of the piece in a single grading.
    pub fn dim_at(&self, grading: i64) -> usize {
        let mut d = 0;
        if let Some(b) = self.tower_bottom {
            if grading >= b && (grading - b) % 2 == 0 {
                d += 1;
            }
        }
        for &(k, top) in &self.torsion {
            let bottom = top - 2 * (k as i64 - 1);
            if grading >= bottom && grading <= top && (top - grading) % 2 == 0 {
                d += 1;
            }
        }
        d
    }

    /// Graded dimensions of `coker(U)`. `U` is surjective on the tower, so
    /// only torsion contributes: one line per summand, at its top grading.
    pub fn coker_u_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &(_, top) in &self.torsion {
            *out.entry(top).or_insert(0) += 1;
        }
        out
    }

    /// Total dimension of the `U`-torsion part.
    pub fn torsion_dim(&self) -> u64 {
        self.torsion.iter().map(|&(k, _)| k).sum()
    }

    /// Shift every grading so the tower bottom sits at 0.
    ///
    /// # Panics
    /// Panics if there is no tower.
    pub fn relative_to_tower(&self) -> Self {
        let b = self.tower_bottom.expect("no tower to anchor gradings");
        Self {
            tower_bottom: Some(0),
            torsion: self.torsion.iter().map(|&(k, q)| (k, q - b)).collect(),
        }
        .normalized()
    }

    /// The isomorphism-class data of the module as a relatively-graded
    /// `F[U]`-module: tower count and the multiset of
    /// `(torsion length, top grading - tower bottom)`.
    pub fn relative_shape(&self) -> (bool, Vec<(u64, i64)>) {
        match self.tower_bottom {
            Some(_) => {
                let n = self.relative_to_tower();
                (true, n.torsion)
            }
            None => {
                let mut t = self.torsion.clone();
                t.sort_unstable_by_key(|&(k, q)| (q, k));
                (false, t)
            }
        }
    }
}

/// Identifier of a tower node: `A(i)` indexes the domain, `B(i)` the
/// codomain of the map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    A(usize),
    B(usize),
}

/// A map `⊕_a T^+ -> ⊕_b T^+` with `U`-power entries.
///
/// Offsets give the grading of each tower's bottom element. Every entry
/// `U^e: T^+(a) -> T^+(b)` must be homogeneous of degree -1, i.e.
/// `offset(b) = offset(a) + 2e - 1`.
#[derive(Clone, Debug)]
pub struct MonomialTowerMap {
    a_offsets: Vec<i64>,
    b_offsets: Vec<i64>,
    entries: Vec<(usize, usize, u64)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TowerError {
    #[error("node index out of range in entry ({0}, {1})")]
    BadIndex(usize, usize),
    #[error("domain node {0} has more than two entries")]
    TooManyEntries(usize),
    #[error("codomain node {0} receives more than two entries")]
    TooManyIncoming(usize),
    #[error("entry ({a}, {b}): U^{exp} is not homogeneous of degree -1 for offsets {da} -> {db}")]
    GradingInconsistent {
        a: usize,
        b: usize,
        exp: u64,
        da: i64,
        db: i64,
    },
    #[error("node graph contains a cycle")]
    CyclicGraph,
    #[error("node graph is not connected")]
    Disconnected,
    #[error("duplicate entry for node pair ({0}, {1})")]
    DuplicateEntry(usize, usize),
}

impl MonomialTowerMap {
    pub fn new(
        a_offsets: Vec<i64>,
        b_offsets: Vec<i64>,
        entries: Vec<(usize, usize, u64)>,
    ) -> Result<Self, TowerError> {
        let m = Self {
            a_offsets,
            b_offsets,
            entries,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn a_offsets(&self) -> &[i64] {
        &self.a_offsets
    }

    pub fn b_offsets(&self) -> &[i64] {
        &self.b_offsets
    }

    pub fn entries(&self) -> &[(usize, usize, u64)] {
        &self.entries
    }

    fn validate(&self) -> Result<(), TowerError> {
        let (na, nb) = (self.a_offsets.len(), self.b_offsets.len());
        let mut deg_a = vec![0usize; na];
        let mut deg_b = vec![0usize; nb];
        let mut seen = std::collections::BTreeSet::new();
        for &(a, b, e) in &self.entries {
            if a >= na || b >= nb {
                return Err(TowerError::BadIndex(a, b));
            }
            if !seen.insert((a, b)) {
                return Err(TowerError::DuplicateEntry(a, b));
            }
            deg_a[a] += 1;
            deg_b[b] += 1;
            let (da, db) = (self.a_offsets[a], self.b_offsets[b]);
            if db != da + 2 * e as i64 - 1 {
                return Err(TowerError::GradingInconsistent {
                    a,
                    b,
                    exp: e,
                    da,
                    db,
                });
            }
        }
        if let Some(a) = deg_a.iter().position(|&d| d > 2) {
            return Err(TowerError::TooManyEntries(a));
        }
        if let Some(b) = deg_b.iter().position(|&d| d > 2) {
            return Err(TowerError::TooManyIncoming(b));
        }
        // Path shape: acyclic and connected. Union-find over nodes.
        let total = na + nb;
        let idx = |n: Node| match n {
            Node::A(i) => i,
            Node::B(i) => na + i,
        };
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b, _) in &self.entries {
            let (ra, rb) = (
                find(&mut parent, idx(Node::A(a))),
                find(&mut parent, idx(Node::B(b))),
            );
            if ra == rb {
                return Err(TowerError::CyclicGraph);
            }
            parent[ra] = rb;
        }
        if total > 0 {
            let root = find(&mut parent, 0);
            for x in 1..total {
                if find(&mut parent, x) != root {
                    return Err(TowerError::Disconnected);
                }
            }
        }
        Ok(())
    }
}

/// Exact kernel-plus-cokernel of a monomial tower map, as a graded module.
///
/// The diagram is consumed by repeatedly splitting off the edge of smallest
/// exponent `e`: a graded unipotent change of basis on each side isolates
/// the two-node cone `[U^e: T^+ -> T^+]`, whose homology is the torsion
/// summand `F[U]/U^e` (empty for `e = 0`), and splices the neighbours with
/// the composite exponent. Isolated nodes contribute towers. The output is
/// independent of the order in which ties are broken; summands are reported
/// sorted by `(top grading, length)`.
pub fn tower_cone_homology(map: &MonomialTowerMap) -> Result<GradedModule, TowerError> {
    map.validate()?;
    let na = map.a_offsets.len();

    // Mutable adjacency: per node, the ids of incident edges (at most 2).
    #[derive(Clone)]
    struct Edge {
        a: usize,
        b: usize,
        exp: u64,
        alive: bool,
    }
    let mut edges: Vec<Edge> = map
        .entries
        .iter()
        .map(|&(a, b, exp)| Edge {
            a,
            b,
            exp,
            alive: true,
        })
        .collect();
    let mut adj_a: Vec<Vec<usize>> = vec![Vec::new(); na];
    let mut adj_b: Vec<Vec<usize>> = vec![Vec::new(); map.b_offsets.len()];
    for (id, e) in edges.iter().enumerate() {
        adj_a[e.a].push(id);
        adj_b[e.b].push(id);
    }
    let mut alive_a = vec![true; na];
    let mut alive_b = vec![true; map.b_offsets.len()];

    let mut torsion: Vec<(u64, i64)> = Vec::new();
    // Smallest exponent first; ties broken lexicographically for
    // determinism (the resulting multiset does not depend on this).
    let min_alive = |edges: &[Edge]| {
        edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.alive)
            .min_by_key(|(_, e)| (e.exp, e.a, e.b))
            .map(|(id, _)| id)
    };
    while let Some(best) = min_alive(&edges) {
        let Edge { a, b, exp, .. } = edges[best];
        let other_a = adj_a[a]
            .iter()
            .copied()
            .find(|&id| id != best && edges[id].alive);
        let other_b = adj_b[b]
            .iter()
            .copied()
            .find(|&id| id != best && edges[id].alive);

        if exp > 0 {
            // ker(U^exp) = F[U]/U^exp with top element U^{-(exp-1)}.
            torsion.push((exp, map.a_offsets[a] + 2 * (exp as i64 - 1)));
        }
        edges[best].alive = false;
        alive_a[a] = false;
        alive_b[b] = false;

        match (other_a, other_b) {
            (Some(fa), Some(hb)) => {
                // Splice: the neighbour of `a` through its other edge and the
                // neighbour of `b` through its other edge become adjacent with
                // the composite exponent f + h - exp.
                let f = edges[fa].exp;
                let h = edges[hb].exp;
                debug_assert!(f >= exp && h >= exp, "split edge was not minimal");
                let (bp, ap) = (edges[fa].b, edges[hb].a);
                edges[fa].alive = false;
                edges[hb].alive = false;
                let id = edges.len();
                edges.push(Edge {
                    a: ap,
                    b: bp,
                    exp: f + h - exp,
                    alive: true,
                });
                adj_a[ap].push(id);
                adj_b[bp].push(id);
            }
            (Some(fa), None) => {
                edges[fa].alive = false;
            }
            (None, Some(hb)) => {
                edges[hb].alive = false;
            }
            (None, None) => {}
        }
    }

    let mut towers: Vec<i64> = Vec::new();
    for (i, &alive) in alive_a.iter().enumerate() {
        if alive {
            towers.push(map.a_offsets[i]);
        }
    }
    for (i, &alive) in alive_b.iter().enumerate() {
        if alive {
            towers.push(map.b_offsets[i]);
        }
    }
    debug_assert!(towers.len() <= 1, "connected path yields at most one tower");
    Ok(GradedModule {
        tower_bottom: towers.first().copied(),
        torsion,
    }
    .normalized())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_a_node_is_a_tower() {
        let m = MonomialTowerMap::new(vec![5], vec![], vec![]).unwrap();
        let h = tower_cone_homology(&m).unwrap();
        assert_eq!(h, GradedModule::tower_only(5));
    }

    #[test]
    fn u_power_one_gives_single_torsion_piece() {
        // [U^1: T^+(0) -> T^+(1)]: ker = F at grading 0, coker = 0.
        let m = MonomialTowerMap::new(vec![0], vec![1], vec![(0, 0, 1)]).unwrap();
        let h = tower_cone_homology(&m).unwrap();
        assert_eq!(h.tower_bottom, None);
        assert_eq!(h.torsion, vec![(1, 0)]);
        assert_eq!(h.coker_u_dims().get(&0), Some(&1));
    }

    #[test]
    fn u_power_zero_is_acyclic() {
        let m = MonomialTowerMap::new(vec![0], vec![-1], vec![(0, 0, 0)]).unwrap();
        let h = tower_cone_homology(&m).unwrap();
        assert_eq!(h.tower_bottom, None);
        assert!(h.torsion.is_empty());
    }

    #[test]
    fn three_node_zigzag() {
        // B(0) <-U^2- A(0) -U^1-> B(1):
        // ker = ker U^1 (length 1, top at offset 0), coker = far tower.
        let m = MonomialTowerMap::new(vec![0], vec![3, 1], vec![(0, 0, 2), (0, 1, 1)]).unwrap();
        let h = tower_cone_homology(&m).unwrap();
        assert_eq!(h.tower_bottom, Some(3));
        assert_eq!(h.torsion, vec![(1, 0)]);
    }

    #[test]
    fn grading_consistency_is_enforced() {
        let err = MonomialTowerMap::new(vec![0], vec![0], vec![(0, 0, 1)]).unwrap_err();
        assert!(matches!(err, TowerError::GradingInconsistent { .. }));
    }

    #[test]
    fn cycle_rejected() {
        // Two A's both mapping to the same two B's: a 4-cycle.
        let m = MonomialTowerMap::new(
            vec![0, 0],
            vec![1, 1],
            vec![(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)],
        );
        assert_eq!(m.unwrap_err(), TowerError::CyclicGraph);
    }

    #[test]
    fn disconnected_rejected() {
        let m = MonomialTowerMap::new(vec![0, 0], vec![], vec![]);
        assert_eq!(m.unwrap_err(), TowerError::Disconnected);
    }

    #[test]
    fn coker_u_counts_torsion_summands() {
        let m = GradedModule {
            tower_bottom: Some(-2),
            torsion: vec![(3, 5), (1, 5), (2, -1)],
        };
        let d = m.coker_u_dims();
        assert_eq!(d[&5], 2);
        assert_eq!(d[&-1], 1);
        assert_eq!(d.values().sum::<usize>(), m.torsion.len());
    }

    #[test]
    fn dim_at_reads_off_graded_pieces() {
        let m = GradedModule {
            tower_bottom: Some(0),
            torsion: vec![(2, -1)],
        };
        // Tower: 0, 2, 4, ...; torsion: gradings -3, -1.
        assert_eq!(m.dim_at(-3), 1);
        assert_eq!(m.dim_at(-1), 1);
        assert_eq!(m.dim_at(0), 1);
        assert_eq!(m.dim_at(1), 0);
        assert_eq!(m.dim_at(2), 1);
        assert_eq!(m.dim_at(-5), 0);
    }
}
