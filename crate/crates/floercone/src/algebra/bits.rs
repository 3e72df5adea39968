//! Packed bit vectors and echelon bases, the workhorses behind every
//! Gaussian elimination in the crate.

/// A vector over F_2, packed 64 bits to a word.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                let i = wi * 64 + w.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitVec[")?;
        for (k, i) in self.ones().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

/// A row-echelon basis of a subspace of F_2^n, optionally tracking how each
/// inserted vector decomposes over a set of marked generators.
///
/// Rows are kept with distinct pivots (lowest set bit). Inserting a vector
/// reduces it against the existing rows first, so `insert` doubles as a
/// membership test for the span.
pub(crate) struct Echelon {
    n: usize,
    rows: Vec<BitVec>,
    /// Coordinates of each row over the marked generators, same length as
    /// `rows`. Unmarked insertions carry the zero coordinate vector.
    coords: Vec<BitVec>,
    marked: usize,
}

impl Echelon {
    pub fn new(n: usize, marked: usize) -> Self {
        Self {
            n,
            rows: Vec::new(),
            coords: Vec::new(),
            marked,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis, XOR-ing the coordinate vectors of the
    /// rows used into `c`. Afterwards `v` is zero iff it was in the span.
    fn reduce_into(&self, v: &mut BitVec, c: &mut BitVec) {
        while let Some(p) = v.first_one() {
            match self.rows.iter().position(|r| r.first_one() == Some(p)) {
                Some(k) => {
                    v.xor_assign(&self.rows[k]);
                    c.xor_assign(&self.coords[k]);
                }
                None => break,
            }
        }
    }

    /// Inserts `v` with coordinate label `mark` (an index among the marked
    /// generators, or `None` for an unmarked vector). Returns `true` if the
    /// vector enlarged the span.
    pub fn insert(&mut self, mut v: BitVec, mark: Option<usize>) -> bool {
        debug_assert_eq!(v.len(), self.n);
        let mut c = BitVec::zeros(self.marked);
        if let Some(m) = mark {
            c.set(m);
        }
        self.reduce_into(&mut v, &mut c);
        if v.is_zero() {
            return false;
        }
        self.rows.push(v);
        self.coords.push(c);
        true
    }

    /// Expresses `v` over the marked generators modulo the unmarked rows.
    /// Returns `None` if `v` is not in the span at all.
    pub fn coordinates(&self, mut v: BitVec) -> Option<BitVec> {
        let mut c = BitVec::zeros(self.marked);
        self.reduce_into(&mut v, &mut c);
        v.is_zero().then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(n: usize, ones: &[usize]) -> BitVec {
        let mut v = BitVec::zeros(n);
        for &i in ones {
            v.set(i);
        }
        v
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new(4, 0);
        assert!(e.insert(bv(4, &[0, 1]), None));
        assert!(e.insert(bv(4, &[1, 2]), None));
        assert!(!e.insert(bv(4, &[0, 2]), None)); // sum of the first two
        assert_eq!(e.rank(), 2);
        assert!(e.coordinates(bv(4, &[0, 2])).is_some());
        assert!(e.coordinates(bv(4, &[3])).is_none());
    }

    #[test]
    fn echelon_coordinates_of_marked_rows() {
        // Span of b = {0,1} (unmarked) and g0 = {1,2}, g1 = {2,3} (marked).
        let mut e = Echelon::new(4, 2);
        e.insert(bv(4, &[0, 1]), None);
        e.insert(bv(4, &[1, 2]), Some(0));
        e.insert(bv(4, &[2, 3]), Some(1));
        // {0,2} = b + g0, so coordinates (1, 0).
        let c = e.coordinates(bv(4, &[0, 2])).unwrap();
        assert!(c.get(0) && !c.get(1));
        // {1,3} = g0 + g1.
        let c = e.coordinates(bv(4, &[1, 3])).unwrap();
        assert!(c.get(0) && c.get(1));
    }
}
