//! Hat-flavor dimensions of surgeries, by three routes: node counting on
//! the truncated cone (staircase knots), the closed-form per-class
//! dimension formula, and full Gaussian elimination on the assembled
//! chain-level cone (arbitrary bifiltered complexes).

use serde::Serialize;

use super::diagram::{build_truncated_cone, ConeError};
use super::Knot;
use crate::algebra::F2Matrix;
use crate::knotio::{BifilteredComplex, SubquotientKind};
use crate::staircase::StaircaseKnot;

/// Per-class dimensions of the hat-flavor homology of `p`-surgery; index
/// `s` holds the class `[s]`, `0 <= s < |p|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HatTable {
    pub p: i64,
    pub dims: Vec<usize>,
}

impl HatTable {
    pub fn class_dim(&self, s: i64) -> usize {
        self.dims[s.rem_euclid(self.p.abs()) as usize]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Hat-flavor dimensions per Spin^c class.
///
/// For a staircase knot every map in the truncated diagram vanishes on the
/// hat flavor, so each class contributes one dimension per surviving node.
/// For a general complex the cone is assembled generator by generator and
/// eliminated (engine C).
pub fn hat_dims(knot: &Knot, p: i64) -> Result<HatTable, ConeError> {
    if p == 0 {
        return Err(ConeError::ZeroSlope);
    }
    let dims = match knot {
        Knot::Staircase(k) => (0..p.abs())
            .map(|class| build_truncated_cone(k.genus(), p, class).map(|d| d.node_count()))
            .collect::<Result<_, _>>()?,
        Knot::Complex(cx) => (0..p.abs())
            .map(|class| chain_cone_dim(cx, p, class))
            .collect::<Result<_, _>>()?,
    };
    Ok(HatTable { p, dims })
}

/// The closed-form per-class dimensions for a knot with a positive L-space
/// surgery, valid on the reducing-slope range `1 < |p| <= 2g-1`.
///
/// With `k = (2g-1) mod |p|` and `m = floor((2g-1)/|p|)`, classes `[s]` for
/// `g-k <= s < g` have dimension `2m+1` (positive `p`) or `2m+3` (negative),
/// and the remaining classes `2m-1` resp. `2m+1`.
pub fn closed_form_hat_dims(knot: &StaircaseKnot, p: i64) -> Result<HatTable, ConeError> {
    if p == 0 {
        return Err(ConeError::ZeroSlope);
    }
    let g = knot.genus();
    if !(1 < p.abs() && p.abs() <= 2 * g - 1) {
        return Err(ConeError::SlopeOutOfRange { p, max: 2 * g - 1 });
    }
    let q = p.abs();
    let k = (2 * g - 1).rem_euclid(q);
    let m = (2 * g - 1).div_euclid(q);
    let mut dims = vec![0usize; q as usize];
    for s in (g - k)..(g - k + q) {
        let first_band = s < g;
        let dim = match (p > 0, first_band) {
            (true, true) => 2 * m + 1,
            (true, false) => 2 * m - 1,
            (false, true) => 2 * m + 3,
            (false, false) => 2 * m + 1,
        };
        dims[s.rem_euclid(q) as usize] = dim as usize;
    }
    Ok(HatTable { p, dims })
}

/// Engine C: the hat cone of one class as an explicit F_2 complex, reduced
/// by Gaussian elimination.
fn chain_cone_dim(cx: &BifilteredComplex, p: i64, class: i64) -> Result<usize, ConeError> {
    let diagram = build_truncated_cone(cx.genus(), p, class)?;

    // One block of basis elements per node; the B complex is the same for
    // every B node.
    let a_subs: Vec<_> = diagram
        .a_nodes
        .iter()
        .map(|&t| (t, cx.subquotient(SubquotientKind::HatA(t), 0)))
        .collect();
    let b_sub = cx.subquotient(SubquotientKind::HatB, 0);

    let mut offset = 0usize;
    let mut a_base = Vec::new();
    for (_, sub) in &a_subs {
        a_base.push(offset);
        offset += sub.complex.len();
    }
    let mut b_base = std::collections::BTreeMap::new();
    for &t in &diagram.b_nodes {
        b_base.insert(t, offset);
        offset += b_sub.complex.len();
    }
    let total = offset;

    let mut d = F2Matrix::new(total, total);
    // Internal differentials.
    for (idx, (_, sub)) in a_subs.iter().enumerate() {
        let base = a_base[idx];
        for x in 0..sub.complex.len() {
            for &y in sub.complex.differential(x) {
                d.set(base + y, base + x);
            }
        }
    }
    for &base in b_base.values() {
        for x in 0..b_sub.complex.len() {
            for &y in b_sub.complex.differential(x) {
                d.set(base + y, base + x);
            }
        }
    }
    // Edge maps v_t: A_t -> B_t and h_t: A_t -> B_{t+p}.
    for (idx, &(t, ref sub)) in a_subs.iter().enumerate() {
        let base = a_base[idx];
        if diagram.v_edges.contains(&t) {
            let tb = b_base[&t];
            for (x, img) in cx.v_map(sub, &b_sub).into_iter().enumerate() {
                if let Some(y) = img {
                    d.set(tb + y, base + x);
                }
            }
        }
        if diagram.h_edges.contains(&t) {
            let tb = b_base[&(t + p)];
            for (x, img) in cx.h_map(t, sub, &b_sub).into_iter().enumerate() {
                if let Some(y) = img {
                    d.set(tb + y, base + x);
                }
            }
        }
    }
    Ok(total - 2 * d.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotio::torus_knot_alexander;

    fn torus(a: u64, b: u64) -> StaircaseKnot {
        StaircaseKnot::from_alexander(&torus_knot_alexander(a, b).unwrap()).unwrap()
    }

    #[test]
    fn t25_hat_dims_both_signs() {
        let k = Knot::Staircase(torus(2, 5));
        let t = hat_dims(&k, 2).unwrap();
        assert_eq!(t.dims, vec![1, 3]);
        let t = hat_dims(&k, -2).unwrap();
        assert_eq!(t.dims, vec![3, 5]);
    }

    #[test]
    fn closed_form_matches_worked_cases() {
        let k25 = torus(2, 5);
        assert_eq!(closed_form_hat_dims(&k25, 2).unwrap().dims, vec![1, 3]);
        assert_eq!(closed_form_hat_dims(&k25, 3).unwrap().dims, vec![1, 1, 1]);
        assert_eq!(closed_form_hat_dims(&k25, -2).unwrap().dims, vec![3, 5]);
        let k211 = torus(2, 11);
        assert_eq!(closed_form_hat_dims(&k211, -9).unwrap().dims, vec![3; 9]);
    }

    #[test]
    fn closed_form_rejects_out_of_range_slopes() {
        let k = torus(2, 5);
        assert!(matches!(
            closed_form_hat_dims(&k, 7),
            Err(ConeError::SlopeOutOfRange { .. })
        ));
        assert!(matches!(
            closed_form_hat_dims(&k, 1),
            Err(ConeError::SlopeOutOfRange { .. })
        ));
    }

    #[test]
    fn chain_engine_agrees_with_node_count_on_staircases() {
        for (a, b) in [(2, 3), (2, 5), (2, 7)] {
            let k = torus(a, b);
            let g = k.genus();
            let stair = Knot::Staircase(k.clone());
            let chain = Knot::Complex(k.complex().clone());
            for p in (-(2 * g - 1))..=(2 * g - 1) {
                if p == 0 {
                    continue;
                }
                assert_eq!(
                    hat_dims(&stair, p).unwrap(),
                    hat_dims(&chain, p).unwrap(),
                    "T({a},{b}), p = {p}"
                );
            }
        }
    }

    #[test]
    fn large_surgery_on_staircase_is_an_l_space() {
        let k = Knot::Staircase(torus(2, 7));
        for p in [5, 6, 9] {
            let t = hat_dims(&k, p).unwrap();
            assert!(t.dims.iter().all(|&d| d == 1), "p = {p}: {:?}", t.dims);
        }
    }
}
