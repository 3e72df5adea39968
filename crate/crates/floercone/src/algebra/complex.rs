//! Finite chain complexes over F_2 graded by an integer (Maslov) grading,
//! with homology, cycle representatives, and induced maps.

use std::collections::BTreeMap;

use thiserror::Error;

use super::bits::{BitVec, Echelon};
use super::f2::F2Matrix;

/// A graded vector space over F_2, as a finite map grading -> dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedVectorSpace {
    dims: BTreeMap<i64, usize>,
}

impl GradedVectorSpace {
    pub fn from_dims(dims: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut out = BTreeMap::new();
        for (g, d) in dims {
            if d > 0 {
                *out.entry(g).or_insert(0) += d;
            }
        }
        Self { dims: out }
    }

    pub fn dim(&self, grading: i64) -> usize {
        self.dims.get(&grading).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.dims.iter().map(|(&g, &d)| (g, d))
    }

    pub fn min_grading(&self) -> Option<i64> {
        self.dims.keys().next().copied()
    }

    pub fn max_grading(&self) -> Option<i64> {
        self.dims.keys().next_back().copied()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("differential does not square to zero (basis element {0})")]
    DifferentialSquare(usize),
    #[error(
        "differential must drop the grading by 1: {from} -> {to} (gradings {g_from} -> {g_to})"
    )]
    GradingStep {
        from: usize,
        to: usize,
        g_from: i64,
        g_to: i64,
    },
    #[error("target index {0} out of range")]
    BadTarget(usize),
    #[error("composite of consecutive differentials is non-zero: corrupt complex")]
    CompositeNonZero,
    #[error("dimension mismatch between consecutive differentials ({0} vs {1})")]
    DimensionMismatch(usize, usize),
}

/// A finite F_2 chain complex with a basis, each basis element carrying an
/// integer grading; the differential drops the grading by exactly one.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    gradings: Vec<i64>,
    /// Differential, one sorted target list per basis element.
    d: Vec<Vec<usize>>,
}

impl GradedComplex {
    pub fn new(gradings: Vec<i64>, mut d: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        assert_eq!(gradings.len(), d.len());
        for (from, targets) in d.iter_mut().enumerate() {
            targets.sort_unstable();
            targets.dedup();
            for &to in targets.iter() {
                if to >= gradings.len() {
                    return Err(ComplexError::BadTarget(to));
                }
                if gradings[to] != gradings[from] - 1 {
                    return Err(ComplexError::GradingStep {
                        from,
                        to,
                        g_from: gradings[from],
                        g_to: gradings[to],
                    });
                }
            }
        }
        let cx = Self { gradings, d };
        cx.check_d_squared()?;
        Ok(cx)
    }

    fn check_d_squared(&self) -> Result<(), ComplexError> {
        for x in 0..self.len() {
            let mut count: BTreeMap<usize, usize> = BTreeMap::new();
            for &y in &self.d[x] {
                for &z in &self.d[y] {
                    *count.entry(z).or_insert(0) += 1;
                }
            }
            if count.values().any(|c| c % 2 != 0) {
                return Err(ComplexError::DifferentialSquare(x));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.gradings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gradings.is_empty()
    }

    pub fn grading(&self, i: usize) -> i64 {
        self.gradings[i]
    }

    pub fn differential(&self, i: usize) -> &[usize] {
        &self.d[i]
    }

    /// Total dimension of the homology, gradings ignored: `n - 2 rank(d)`.
    pub fn total_homology_dim(&self) -> usize {
        let n = self.len();
        let mut m = F2Matrix::new(n, n);
        for (x, targets) in self.d.iter().enumerate() {
            for &y in targets {
                m.set(y, x);
            }
        }
        n - 2 * m.rank()
    }

    /// Homology of the complex with cycle representatives, grading by grading.
    pub fn homology(&self) -> Homology {
        let mut by_grading: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &g) in self.gradings.iter().enumerate() {
            by_grading.entry(g).or_default().push(i);
        }
        let mut levels = BTreeMap::new();
        for (&g, basis) in &by_grading {
            let n = basis.len();
            let pos: BTreeMap<usize, usize> =
                basis.iter().enumerate().map(|(k, &i)| (i, k)).collect();

            // Cycles: kernel of the differential restricted to this grading.
            let lower = by_grading.get(&(g - 1));
            let mut dmat = F2Matrix::new(lower.map_or(0, |l| l.len()), n);
            if let Some(lower) = lower {
                let lpos: BTreeMap<usize, usize> =
                    lower.iter().enumerate().map(|(k, &i)| (i, k)).collect();
                for (k, &i) in basis.iter().enumerate() {
                    for &t in &self.d[i] {
                        dmat.set(lpos[&t], k);
                    }
                }
            }
            let cycles = kernel_basis(&dmat);

            // Boundaries: images of the differential from the grading above.
            let mut boundaries = Vec::new();
            if let Some(upper) = by_grading.get(&(g + 1)) {
                for &i in upper {
                    let mut v = BitVec::zeros(n);
                    for &t in &self.d[i] {
                        v.set(pos[&t]);
                    }
                    if !v.is_zero() {
                        boundaries.push(v);
                    }
                }
            }

            // Echelon of boundaries first, then independent cycle reps marked.
            let mut ech = Echelon::new(n, cycles.len());
            for b in &boundaries {
                ech.insert(b.clone(), None);
            }
            let mut reps = Vec::new();
            for z in cycles {
                let mark = reps.len();
                if ech.insert(z.clone(), Some(mark)) {
                    reps.push(z);
                }
            }
            levels.insert(
                g,
                HomologyLevel {
                    basis: basis.clone(),
                    reps,
                    ech,
                },
            );
        }
        Homology { levels }
    }
}

/// Basis of the kernel of an F_2 matrix (columns = domain).
fn kernel_basis(m: &F2Matrix) -> Vec<BitVec> {
    let (rows, cols) = (m.rows(), m.cols());
    // Column echelon with coordinate tracking: insert columns one by one into
    // a row space; a column that reduces to zero yields a kernel vector.
    let mut ech = Echelon::new(rows, cols);
    let mut kernel = Vec::new();
    for c in 0..cols {
        let mut v = BitVec::zeros(rows);
        for r in 0..rows {
            if m.get(r, c) {
                v.set(r);
            }
        }
        let mut coord = BitVec::zeros(cols);
        coord.set(c);
        match ech.coordinates(v.clone()) {
            Some(prev) => {
                coord.xor_assign(&prev);
                kernel.push(coord);
            }
            None => {
                // Column is independent; remember how it was formed.
                ech.insert(v, Some(c));
            }
        }
    }
    kernel
}

struct HomologyLevel {
    /// Global basis indices at this grading, in order.
    basis: Vec<usize>,
    /// Cycle representatives of a homology basis (vectors over `basis`).
    reps: Vec<BitVec>,
    /// Boundaries plus reps in echelon form, coordinates marked on the reps.
    ech: Echelon,
}

/// Homology of a [`GradedComplex`], retaining enough structure to express an
/// arbitrary cycle in the homology basis and to push maps forward.
pub struct Homology {
    levels: BTreeMap<i64, HomologyLevel>,
}

impl Homology {
    pub fn dims(&self) -> GradedVectorSpace {
        GradedVectorSpace::from_dims(self.levels.iter().map(|(&g, l)| (g, l.reps.len())))
    }

    pub fn dim_at(&self, grading: i64) -> usize {
        self.levels.get(&grading).map_or(0, |l| l.reps.len())
    }

    /// Representative cycles at a grading, as global-index supports.
    pub fn representatives(&self, grading: i64) -> Vec<Vec<usize>> {
        self.levels.get(&grading).map_or_else(Vec::new, |l| {
            l.reps
                .iter()
                .map(|r| r.ones().map(|k| l.basis[k]).collect())
                .collect()
        })
    }

    /// Coordinates of a cycle (given by its global-index support) in the
    /// homology basis at `grading`. Returns `None` if the vector is not a
    /// cycle of the recorded complex.
    pub fn class_of(&self, grading: i64, support: &[usize]) -> Option<Vec<bool>> {
        let level = self.levels.get(&grading)?;
        let mut v = BitVec::zeros(level.basis.len());
        for &i in support {
            let k = level.basis.iter().position(|&b| b == i)?;
            v.set(k);
        }
        let coords = level.ech.coordinates(v)?;
        Some((0..level.reps.len()).map(|m| coords.get(m)).collect())
    }
}

/// The rank of the map induced on homology at each grading by a chain map
/// `f` between two complexes, where `f` sends basis element `i` of the
/// source to the (possibly empty) set `f(i)` of basis elements of the
/// target. `f` must preserve the grading and commute with the differentials.
pub fn induced_map_ranks(
    source: &GradedComplex,
    target: &GradedComplex,
    f: impl Fn(usize) -> Vec<usize>,
) -> BTreeMap<i64, (usize, usize)> {
    let hs = source.homology();
    let ht = target.homology();
    let mut out = BTreeMap::new();
    for (&g, level) in &hs.levels {
        let n = level.reps.len();
        if n == 0 {
            continue;
        }
        let m = ht.dim_at(g);
        let mut mat = F2Matrix::new(m, n);
        for (col, rep) in hs.representatives(g).iter().enumerate() {
            let mut image: BTreeMap<usize, usize> = BTreeMap::new();
            for &i in rep {
                for t in f(i) {
                    *image.entry(t).or_insert(0) += 1;
                }
            }
            let support: Vec<usize> = image
                .into_iter()
                .filter_map(|(t, c)| (c % 2 == 1).then_some(t))
                .collect();
            if support.is_empty() {
                continue;
            }
            let coords = ht
                .class_of(g, &support)
                .expect("chain map image is not a cycle: not a chain map");
            for (row, &bit) in coords.iter().enumerate() {
                if bit {
                    mat.set(row, col);
                }
            }
        }
        let rank = mat.rank();
        out.insert(g, (rank, n - rank));
    }
    out
}

/// Homology dimension in the middle of a two-step complex
/// `C_high --d_in--> C_mid --d_out--> C_low`:
/// `dim ker(d_out) - rank(d_in)`.
///
/// Rejects pairs whose composite is non-zero, which signals a corrupt
/// complex rather than a computable answer.
pub fn chain_homology_f2(d_out: &F2Matrix, d_in: &F2Matrix) -> Result<usize, ComplexError> {
    if d_out.cols() != d_in.rows() {
        return Err(ComplexError::DimensionMismatch(d_out.cols(), d_in.rows()));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(ComplexError::CompositeNonZero);
    }
    let ker = d_out.cols() - d_out.rank();
    Ok(ker - d_in.rank())
}
