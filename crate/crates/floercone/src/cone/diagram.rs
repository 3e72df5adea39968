//! Index combinatorics of the truncated mapping cone and, for staircase
//! knots, the grading offsets of its tower nodes.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::MonomialTowerMap;
use crate::staircase::StaircaseKnot;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("surgery slope must be non-zero")]
    ZeroSlope,
    #[error("slope {p} outside the range 1 < |p| <= 2g-1 = {max} required here")]
    SlopeOutOfRange { p: i64, max: i64 },
    #[error("Spin^c class {class} outside [0, {count})")]
    BadClass { class: i64, count: i64 },
    #[error("plus flavor requires a staircase knot")]
    PlusNeedsStaircase,
    #[error("large-surgery d-invariant needs N >= 2g-1 (N = {n}, 2g-1 = {min})")]
    SlopeTooSmallForD { n: i64, min: i64 },
    #[error("Spin^c parameter s = {s} outside |s| <= (N-1)/2 for N = {n}")]
    SpincOutOfSymmetricRange { s: i64, n: i64 },
    #[error("the trivial-knot sentinel has no surgery diagram data")]
    TrivialKnot,
    #[error("engines disagree for p = {p}, class {class}: {detail}")]
    EngineMismatch { p: i64, class: i64, detail: String },
    #[error(
        "counting formulas require |p| dividing 2g-1 with p != +/-(2g-1); got p = {p}, g = {g}"
    )]
    CountingOutOfDomain { p: i64, g: i64 },
}

/// The truncated mapping cone diagram for one Spin^c class.
///
/// `a_nodes` and `b_nodes` list the surviving indices `t` congruent to the
/// class mod `p`; `v_edges`/`h_edges` list the `t` whose map
/// `A_t -> B_t` / `A_t -> B_{t+p}` has both endpoints in the diagram.
/// For `p >= 2g-1` (and for the trivial sentinel) each class retains a
/// single `A` node, the quasi-isomorphic representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDiagram {
    pub p: i64,
    pub class: i64,
    pub genus: i64,
    pub a_nodes: Vec<i64>,
    pub b_nodes: Vec<i64>,
    pub v_edges: Vec<i64>,
    pub h_edges: Vec<i64>,
    /// `t0 = 1 - g + max(0, p)`: the smallest index whose `v`-map has both
    /// endpoints in the untruncated band.
    pub truncation_base: i64,
}

fn residue(t: i64, p: i64) -> i64 {
    t.rem_euclid(p.abs())
}

fn indices_in(lo: i64, hi: i64, p: i64, class: i64) -> Vec<i64> {
    (lo..=hi).filter(|&t| residue(t, p) == class).collect()
}

/// Builds the truncated cone diagram for slope `p` and class `class`.
pub fn build_truncated_cone(genus: i64, p: i64, class: i64) -> Result<ConeDiagram, ConeError> {
    if p == 0 {
        return Err(ConeError::ZeroSlope);
    }
    if class < 0 || class >= p.abs() {
        return Err(ConeError::BadClass {
            class,
            count: p.abs(),
        });
    }
    let g = genus;
    let truncation_base = 1 - g + p.max(0);

    // Wide positive surgeries (and the trivial sentinel, where the generic
    // band is empty) keep one quasi-isomorphic A-representative per class.
    let single_rep = if p > 0 { p >= 2 * g - 1 } else { g == 0 };
    if single_rep {
        let window = if p > 0 {
            (1 - g)..=(p - g)
        } else {
            (p + g)..=(g - 1)
        };
        let reps: Vec<i64> = window.filter(|&t| residue(t, p) == class).collect();
        debug_assert_eq!(reps.len(), 1);
        return Ok(ConeDiagram {
            p,
            class,
            genus: g,
            a_nodes: reps,
            b_nodes: Vec::new(),
            v_edges: Vec::new(),
            h_edges: Vec::new(),
            truncation_base,
        });
    }

    let a_nodes = indices_in(1 - g, g - 1, p, class);
    let b_nodes = indices_in(1 - g + p, g - 1, p, class);
    let (v_lo, v_hi, h_lo, h_hi) = if p > 0 {
        (1 - g + p, g - 1, 1 - g, g - 1 - p)
    } else {
        (1 - g, g - 1, 1 - g, g - 1)
    };
    let v_edges = indices_in(v_lo, v_hi, p, class);
    let h_edges = indices_in(h_lo, h_hi, p, class);
    Ok(ConeDiagram {
        p,
        class,
        genus: g,
        a_nodes,
        b_nodes,
        v_edges,
        h_edges,
        truncation_base,
    })
}

impl ConeDiagram {
    pub fn node_count(&self) -> usize {
        self.a_nodes.len() + self.b_nodes.len()
    }
}

/// A cone diagram together with the tower data of a staircase knot: the
/// `U`-exponents `V_t`/`H_t` on its edges and the grading offset of every
/// node, propagated from the anchor along the zig-zag (each edge is
/// homogeneous of degree -1).
///
/// The anchor is the `B` node of smallest index, set to offset 0; a
/// single-representative diagram anchors its `A` node at 0 instead. All
/// reported gradings are therefore relative within the class.
#[derive(Clone, Debug)]
pub struct PlusCone {
    pub diagram: ConeDiagram,
    pub v_exp: BTreeMap<i64, u64>,
    pub h_exp: BTreeMap<i64, u64>,
    pub a_offsets: BTreeMap<i64, i64>,
    pub b_offsets: BTreeMap<i64, i64>,
}

impl PlusCone {
    pub fn new(knot: &StaircaseKnot, p: i64, class: i64) -> Result<Self, ConeError> {
        let diagram = build_truncated_cone(knot.genus(), p, class)?;
        let v_exp: BTreeMap<i64, u64> = diagram.v_edges.iter().map(|&t| (t, knot.v(t))).collect();
        let h_exp: BTreeMap<i64, u64> = diagram.h_edges.iter().map(|&t| (t, knot.h(t))).collect();

        // Propagate offsets along the zig-zag from the anchor; the diagram
        // is a path, so a few sweeps reach everything and no conflicts can
        // arise (asserted all the same).
        let mut a_offsets: BTreeMap<i64, i64> = BTreeMap::new();
        let mut b_offsets: BTreeMap<i64, i64> = BTreeMap::new();
        if diagram.b_nodes.is_empty() {
            for &t in &diagram.a_nodes {
                a_offsets.insert(t, 0);
            }
        } else {
            b_offsets.insert(diagram.b_nodes[0], 0);
            let mut changed = true;
            while changed {
                changed = false;
                for (&t, &e) in &v_exp {
                    changed |= propagate(&mut a_offsets, &mut b_offsets, t, t, e);
                }
                for (&t, &e) in &h_exp {
                    changed |= propagate(&mut a_offsets, &mut b_offsets, t, t + p, e);
                }
            }
        }
        assert_eq!(
            a_offsets.len(),
            diagram.a_nodes.len(),
            "offsets reach every A node"
        );
        assert_eq!(
            b_offsets.len(),
            diagram.b_nodes.len(),
            "offsets reach every B node"
        );
        Ok(Self {
            diagram,
            v_exp,
            h_exp,
            a_offsets,
            b_offsets,
        })
    }

    /// The diagram as a map of towers, ready for the cone-homology engine.
    pub fn tower_map(&self) -> MonomialTowerMap {
        let a_index: BTreeMap<i64, usize> = self
            .diagram
            .a_nodes
            .iter()
            .enumerate()
            .map(|(k, &t)| (t, k))
            .collect();
        let b_index: BTreeMap<i64, usize> = self
            .diagram
            .b_nodes
            .iter()
            .enumerate()
            .map(|(k, &t)| (t, k))
            .collect();
        let mut entries = Vec::new();
        for (&t, &e) in &self.v_exp {
            entries.push((a_index[&t], b_index[&t], e));
        }
        for (&t, &e) in &self.h_exp {
            entries.push((a_index[&t], b_index[&(t + self.diagram.p)], e));
        }
        let a_offsets = self
            .diagram
            .a_nodes
            .iter()
            .map(|t| self.a_offsets[t])
            .collect();
        let b_offsets = self
            .diagram
            .b_nodes
            .iter()
            .map(|t| self.b_offsets[t])
            .collect();
        MonomialTowerMap::new(a_offsets, b_offsets, entries)
            .expect("truncated cone is a consistent path diagram")
    }

    /// Gradings of the distinguished tower elements of `A_t`:
    /// `x_t = U^{-max(V_t, H_t)}`, `y_t = U^{-min}`, `z_t = U^{-min+1}`.
    pub fn xyz(&self, knot: &StaircaseKnot, t: i64) -> (i64, i64, i64) {
        let d = self.a_offsets[&t];
        let (v, h) = (knot.v(t) as i64, knot.h(t) as i64);
        let (mn, mx) = (v.min(h), v.max(h));
        (d + 2 * mx, d + 2 * mn, d + 2 * (mn - 1))
    }
}

fn propagate(
    a_offsets: &mut BTreeMap<i64, i64>,
    b_offsets: &mut BTreeMap<i64, i64>,
    a: i64,
    b: i64,
    exp: u64,
) -> bool {
    let degree = 2 * exp as i64 - 1;
    match (a_offsets.get(&a).copied(), b_offsets.get(&b).copied()) {
        (Some(da), Some(db)) => {
            assert_eq!(db, da + degree, "offset conflict along the zig-zag");
            false
        }
        (Some(da), None) => {
            b_offsets.insert(b, da + degree);
            true
        }
        (None, Some(db)) => {
            a_offsets.insert(a, db - degree);
            true
        }
        (None, None) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotio::torus_knot_alexander;

    fn torus(a: u64, b: u64) -> StaircaseKnot {
        StaircaseKnot::from_alexander(&torus_knot_alexander(a, b).unwrap()).unwrap()
    }

    #[test]
    fn t25_p3_class0_is_a_single_a_node() {
        // g = 2, p = 3 = 2g-1: one representative per class.
        let d = build_truncated_cone(2, 3, 0).unwrap();
        assert_eq!(d.a_nodes, vec![0]);
        assert!(d.b_nodes.is_empty() && d.v_edges.is_empty() && d.h_edges.is_empty());
    }

    #[test]
    fn t211_p3_class0_is_a_five_node_zigzag() {
        // g = 5, p = 3: A nodes {-3, 0, 3}, B nodes {0, 3},
        // edges h_{-3}, v_0, h_0, v_3.
        let d = build_truncated_cone(5, 3, 0).unwrap();
        assert_eq!(d.a_nodes, vec![-3, 0, 3]);
        assert_eq!(d.b_nodes, vec![0, 3]);
        assert_eq!(d.v_edges, vec![0, 3]);
        assert_eq!(d.h_edges, vec![-3, 0]);
        assert_eq!(d.node_count(), 5);
        assert_eq!(d.truncation_base, -1);
    }

    #[test]
    fn wide_positive_slopes_have_one_node_per_class() {
        for g in 1..6 {
            for p in (2 * g - 1)..(2 * g + 4) {
                for class in 0..p {
                    let d = build_truncated_cone(g, p, class).unwrap();
                    assert_eq!(d.node_count(), 1, "g={g}, p={p}, class={class}");
                }
            }
        }
    }

    #[test]
    fn negative_slope_counts_t25_p_minus_2() {
        // Classes [0]: A_0, B_{-2}, B_0 and [1]: A_{-1}, A_1, B_{-3}, B_{-1}, B_1.
        let d0 = build_truncated_cone(2, -2, 0).unwrap();
        assert_eq!(d0.node_count(), 3);
        let d1 = build_truncated_cone(2, -2, 1).unwrap();
        assert_eq!(d1.node_count(), 5);
    }

    #[test]
    fn zero_slope_rejected() {
        assert_eq!(
            build_truncated_cone(2, 0, 0).unwrap_err(),
            ConeError::ZeroSlope
        );
    }

    #[test]
    fn offsets_reproduce_worked_example() {
        // T(2,11), p = 3, class 0, anchored at B_0 = 0.
        let k = torus(2, 11);
        let cone = PlusCone::new(&k, 3, 0).unwrap();
        assert_eq!(cone.b_offsets[&0], 0);
        assert_eq!(cone.a_offsets[&-3], -1);
        assert_eq!(cone.a_offsets[&0], -5);
        assert_eq!(cone.b_offsets[&3], 0);
        assert_eq!(cone.a_offsets[&3], -1);
    }

    #[test]
    fn tower_map_round_trips_validation() {
        let k = torus(2, 7);
        for p in [-5i64, -3, -2, 2, 3, 5, 7] {
            for class in 0..p.abs() {
                let cone = PlusCone::new(&k, p, class).unwrap();
                cone.tower_map(); // must validate as a path with consistent offsets
            }
        }
    }
}
