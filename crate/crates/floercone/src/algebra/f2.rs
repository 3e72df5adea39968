//! Sparse matrices over F_2.

use std::collections::BTreeSet;

use super::bits::{BitVec, Echelon};

/// A matrix over F_2 stored as the set of positions holding a 1.
///
/// The complexes in this crate are tiny but are built thousands of times
/// during scans, so the representation favours cheap construction over
/// arithmetic throughput; elimination packs rows into machine words first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeSet<(usize, usize)>,
}

impl F2Matrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeSet::new(),
        }
    }

    /// # Panics
    /// Panics if any position lies outside `rows x cols`.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut m = Self::new(rows, cols);
        for (r, c) in entries {
            m.set(r, c);
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        Self::from_entries(n, n, (0..n).map(|i| (i, i)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Toggles no bits; sets (r, c) to 1.
    pub fn set(&mut self, r: usize, c: usize) {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r},{c}) out of bounds"
        );
        self.entries.insert((r, c));
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.entries.contains(&(r, c))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        Self::from_entries(self.cols, self.rows, self.entries().map(|(r, c)| (c, r)))
    }

    /// Matrix product over F_2.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::new(self.rows, other.cols);
        for &(r, k) in &self.entries {
            for &(k2, c) in other.entries.range((k, 0)..(k + 1, 0)) {
                debug_assert_eq!(k, k2);
                if !out.entries.remove(&(r, c)) {
                    out.entries.insert((r, c));
                }
            }
        }
        out
    }

    /// Rank over F_2 by Gaussian elimination on packed rows.
    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols, 0);
        let mut row_of: Vec<Option<BitVec>> = vec![None; self.rows];
        for &(r, c) in &self.entries {
            row_of[r]
                .get_or_insert_with(|| BitVec::zeros(self.cols))
                .set(c);
        }
        for row in row_of.into_iter().flatten() {
            ech.insert(row, None);
        }
        ech.rank()
    }
}

/// Rank of an F_2 matrix; `0 <= rank <= min(rows, cols)`.
pub fn f2_rank(m: &F2Matrix) -> usize {
    m.rank()
}
