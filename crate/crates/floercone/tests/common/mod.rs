#![allow(dead_code)] // each test target uses its own slice of these helpers
#![allow(clippy::manual_is_multiple_of)]

//! Shared helpers for the integration suites: fixture loading, a small
//! deterministic RNG, random staircase generation, and the truncated-model
//! oracle that double-checks the exact tower-cone engine.

use std::collections::BTreeMap;
use std::path::PathBuf;

use floercone::algebra::{GradedComplex, MonomialTowerMap};
use floercone::knotio::{torus_knot_alexander, BifilteredComplex, SymmetricLaurent};
use floercone::staircase::StaircaseKnot;

pub fn torus(a: u64, b: u64) -> StaircaseKnot {
    StaircaseKnot::from_alexander(&torus_knot_alexander(a, b).unwrap()).unwrap()
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn load_fixture(name: &str) -> BifilteredComplex {
    let text = std::fs::read_to_string(fixture_path(name))
        .unwrap_or_else(|e| panic!("cannot read fixture {name}: {e}"));
    BifilteredComplex::parse_json(&text)
        .unwrap_or_else(|e| panic!("fixture {name} does not validate: {e}"))
}

/// xorshift64*: deterministic, seedable, no dependencies.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self(seed.max(1))
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform in `[0, n)`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// A random admissible Alexander polynomial from a random symmetric gap
/// sequence: `m` gaps on the positive side, mirrored, signs alternating
/// from +1 at the top.
pub fn random_admissible(rng: &mut Rng, max_halfsteps: u64, max_gap: u64) -> SymmetricLaurent {
    let m = 1 + rng.below(max_halfsteps);
    let gaps: Vec<i64> = (0..m).map(|_| 1 + rng.below(max_gap) as i64).collect();
    let g: i64 = gaps.iter().sum();
    let mut exps = vec![g];
    let mut e = g;
    for &d in &gaps {
        e -= d;
        exps.push(e);
    }
    for k in (0..gaps.len()).rev() {
        e -= gaps[k];
        exps.push(e);
    }
    assert_eq!(*exps.last().unwrap(), -g);
    SymmetricLaurent::new(
        exps.iter()
            .enumerate()
            .map(|(k, &e)| (e, if k % 2 == 0 { 1 } else { -1 })),
    )
    .expect("alternating symmetric data is a valid polynomial")
}

pub fn random_staircase(rng: &mut Rng, max_halfsteps: u64, max_gap: u64) -> StaircaseKnot {
    StaircaseKnot::from_alexander(&random_admissible(rng, max_halfsteps, max_gap))
        .expect("admissible polynomial builds a staircase")
}

/// The U-truncated model of a monomial tower map: each tower becomes
/// `F[U]/U^n` (its bottom `n` elements), and the cone differential is the
/// induced one. Returns the graded homology dimensions.
///
/// The model is exact below its ceiling; callers must restrict comparisons
/// to gradings at most `min(offset) + 2(n - 1) - 2(total exponent + 1)`.
pub fn truncated_cone_dims(
    a_offsets: &[i64],
    b_offsets: &[i64],
    edges: &[(usize, usize, u64)],
    n: u64,
) -> BTreeMap<i64, usize> {
    let n = n as i64;
    let mut gradings = Vec::new();
    let mut index_a = Vec::new();
    for &off in a_offsets {
        let base = gradings.len();
        index_a.push(base);
        for m in 0..n {
            gradings.push(off + 2 * m);
        }
    }
    let mut index_b = Vec::new();
    for &off in b_offsets {
        let base = gradings.len();
        index_b.push(base);
        for m in 0..n {
            gradings.push(off + 2 * m);
        }
    }
    // Cone differential: A-element (a, m) maps to (b, m - e) when m >= e.
    // Gradings drop by one along every component by the offset relation.
    let mut d: Vec<Vec<usize>> = vec![Vec::new(); gradings.len()];
    for &(a, b, e) in edges {
        for m in 0..n {
            if m >= e as i64 {
                d[index_a[a] + m as usize].push(index_b[b] + (m - e as i64) as usize);
            }
        }
    }
    let complex = GradedComplex::new(gradings, d).expect("truncated model is a complex");
    complex.homology().dims().iter().collect()
}

/// A random zig-zag path diagram with consistent offsets.
///
/// Nodes alternate A and B along the path; whether the path starts (ends)
/// with an A or a B node is random, as are the exponents in `[0, max_exp]`.
/// Returns the validated map.
pub fn random_path_diagram(rng: &mut Rng, max_nodes: u64, max_exp: u64) -> MonomialTowerMap {
    let nodes = 1 + rng.below(max_nodes);
    let start_with_a = rng.below(2) == 0;
    // Node k is A iff (k even) == start_with_a.
    let is_a = |k: u64| (k % 2 == 0) == start_with_a;
    let mut a_offsets = Vec::new();
    let mut b_offsets = Vec::new();
    let mut node_ref = Vec::new(); // (is_a, index)
    for k in 0..nodes {
        if is_a(k) {
            node_ref.push((true, a_offsets.len()));
            a_offsets.push(0);
        } else {
            node_ref.push((false, b_offsets.len()));
            b_offsets.push(0);
        }
    }
    // Offsets propagate from node 0 at offset 0 along the path.
    let mut offset = 0i64;
    let mut edges = Vec::new();
    let set =
        |node_ref: &[(bool, usize)], a_off: &mut Vec<i64>, b_off: &mut Vec<i64>, k: u64, v: i64| {
            let (a, i) = node_ref[k as usize];
            if a {
                a_off[i] = v;
            } else {
                b_off[i] = v;
            }
        };
    set(&node_ref, &mut a_offsets, &mut b_offsets, 0, 0);
    for k in 1..nodes {
        let e = rng.below(max_exp + 1);
        let degree = 2 * e as i64 - 1;
        let (prev_is_a, prev_i) = node_ref[(k - 1) as usize];
        let (_, cur_i) = node_ref[k as usize];
        if prev_is_a {
            edges.push((prev_i, cur_i, e));
            offset += degree;
        } else {
            edges.push((cur_i, prev_i, e));
            offset -= degree;
        }
        set(&node_ref, &mut a_offsets, &mut b_offsets, k, offset);
    }
    MonomialTowerMap::new(a_offsets, b_offsets, edges).expect("random path diagram is valid")
}
