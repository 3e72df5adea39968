//! Bifiltered model complexes: validation, JSON serialisation, and the
//! subquotient complexes the surgery formula is built from.
//!
//! A [`BifilteredComplex`] models a finitely generated, doubly filtered
//! chain complex over `F_2[U, U^-1]`, presented by one generator per
//! `U`-orbit. Each generator carries a filtration position `(i, j)` and a
//! Maslov grading; `U` translates the position by `(-1, -1)` and drops the
//! grading by 2. The flip involution exchanges the two filtration axes and
//! realises the conjugation symmetry of the complex at the chain level.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::GradedComplex;

/// A generator with its bifiltration position and Maslov grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub i: i64,
    pub j: i64,
    pub gr: i64,
}

/// A finite bifiltered complex with a flip involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BifilteredComplex {
    gens: Vec<Generator>,
    /// Differential, sorted target indices per generator.
    diff: Vec<Vec<usize>>,
    /// Flip involution as a permutation of generator indices.
    flip: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CfkError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("generator name `{0}` is not of the form [A-Za-z0-9_]+")]
    BadName(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("unknown generator name `{0}`")]
    UnknownName(String),
    #[error(
        "differential violates the bifiltration: {from} at ({fi},{fj}) -> {to} at ({ti},{tj})"
    )]
    Filtration {
        from: String,
        to: String,
        fi: i64,
        fj: i64,
        ti: i64,
        tj: i64,
    },
    #[error("differential must drop the Maslov grading by 1: {from} (gr {gf}) -> {to} (gr {gt})")]
    GradingDrop {
        from: String,
        to: String,
        gf: i64,
        gt: i64,
    },
    #[error("d^2 != 0 at generator `{0}`")]
    DifferentialSquare(String),
    #[error("flip is not an involution at `{0}`")]
    FlipInvolution(String),
    #[error("flip must exchange the filtration coordinates: `{from}` at ({fi},{fj}) maps to `{to}` at ({ti},{tj})")]
    FlipPosition {
        from: String,
        to: String,
        fi: i64,
        fj: i64,
        ti: i64,
        tj: i64,
    },
    #[error("flip must preserve the Maslov grading: `{from}` (gr {gf}) -> `{to}` (gr {gt})")]
    FlipGrading {
        from: String,
        to: String,
        gf: i64,
        gt: i64,
    },
    #[error("flip does not commute with the differential at `{0}`")]
    FlipDifferential(String),
    #[error("no flip given for `{0}`, which is off the diagonal (i != j)")]
    MissingFlip(String),
}

#[derive(Serialize, Deserialize)]
struct CfkFile {
    generators: Vec<Generator>,
    differential: BTreeMap<String, Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    flip: Option<BTreeMap<String, String>>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl BifilteredComplex {
    /// Builds and fully validates a complex. The flip table may be partial:
    /// generators on the diagonal `i = j` may be omitted and are then fixed
    /// by the involution; any generator off the diagonal must be paired
    /// explicitly.
    pub fn new(
        gens: Vec<Generator>,
        differential: &BTreeMap<String, Vec<String>>,
        flip: Option<&BTreeMap<String, String>>,
    ) -> Result<Self, CfkError> {
        let mut by_name: BTreeMap<&str, usize> = BTreeMap::new();
        for (k, g) in gens.iter().enumerate() {
            if !valid_name(&g.name) {
                return Err(CfkError::BadName(g.name.clone()));
            }
            if by_name.insert(&g.name, k).is_some() {
                return Err(CfkError::DuplicateName(g.name.clone()));
            }
        }
        let lookup = |name: &str| -> Result<usize, CfkError> {
            by_name
                .get(name)
                .copied()
                .ok_or_else(|| CfkError::UnknownName(name.to_string()))
        };

        let mut diff = vec![Vec::new(); gens.len()];
        for (from, tos) in differential {
            let f = lookup(from)?;
            let mut targets = BTreeSet::new();
            for to in tos {
                targets.insert(lookup(to)?);
            }
            diff[f] = targets.into_iter().collect();
        }

        let mut flip_perm: Vec<Option<usize>> = vec![None; gens.len()];
        if let Some(table) = flip {
            for (from, to) in table {
                flip_perm[lookup(from)?] = Some(lookup(to)?);
            }
        }
        let flip: Vec<usize> = gens
            .iter()
            .enumerate()
            .map(|(k, g)| match flip_perm[k] {
                Some(t) => Ok(t),
                None if g.i == g.j => Ok(k),
                None => Err(CfkError::MissingFlip(g.name.clone())),
            })
            .collect::<Result<_, _>>()?;

        let cx = Self { gens, diff, flip };
        cx.validate()?;
        Ok(cx)
    }

    fn validate(&self) -> Result<(), CfkError> {
        let name = |k: usize| self.gens[k].name.clone();
        for (f, targets) in self.diff.iter().enumerate() {
            let gf = &self.gens[f];
            for &t in targets {
                let gt = &self.gens[t];
                if gt.i > gf.i || gt.j > gf.j {
                    return Err(CfkError::Filtration {
                        from: name(f),
                        to: name(t),
                        fi: gf.i,
                        fj: gf.j,
                        ti: gt.i,
                        tj: gt.j,
                    });
                }
                if gt.gr != gf.gr - 1 {
                    return Err(CfkError::GradingDrop {
                        from: name(f),
                        to: name(t),
                        gf: gf.gr,
                        gt: gt.gr,
                    });
                }
            }
        }
        // d^2 = 0 over F_2.
        for f in 0..self.gens.len() {
            let mut count: BTreeMap<usize, usize> = BTreeMap::new();
            for &m in &self.diff[f] {
                for &t in &self.diff[m] {
                    *count.entry(t).or_insert(0) += 1;
                }
            }
            if count.values().any(|c| c % 2 != 0) {
                return Err(CfkError::DifferentialSquare(name(f)));
            }
        }
        // Flip: involution, conjugates (i, j) -> (j, i), preserves gr,
        // commutes with d.
        for k in 0..self.gens.len() {
            let fk = self.flip[k];
            if self.flip[fk] != k {
                return Err(CfkError::FlipInvolution(name(k)));
            }
            let (g, h) = (&self.gens[k], &self.gens[fk]);
            if (h.i, h.j) != (g.j, g.i) {
                return Err(CfkError::FlipPosition {
                    from: name(k),
                    to: name(fk),
                    fi: g.i,
                    fj: g.j,
                    ti: h.i,
                    tj: h.j,
                });
            }
            if h.gr != g.gr {
                return Err(CfkError::FlipGrading {
                    from: name(k),
                    to: name(fk),
                    gf: g.gr,
                    gt: h.gr,
                });
            }
            let mut lhs: Vec<usize> = self.diff[k].iter().map(|&t| self.flip[t]).collect();
            lhs.sort_unstable();
            if lhs != self.diff[fk] {
                return Err(CfkError::FlipDifferential(name(k)));
            }
        }
        Ok(())
    }

    pub fn parse_json(text: &str) -> Result<Self, CfkError> {
        let file: CfkFile =
            serde_json::from_str(text).map_err(|e| CfkError::Schema(e.to_string()))?;
        Self::new(file.generators, &file.differential, file.flip.as_ref())
    }

    /// Deterministic JSON form; `parse_json` of the output reproduces the
    /// complex exactly.
    pub fn to_json(&self) -> String {
        let differential: BTreeMap<String, Vec<String>> = self
            .diff
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_empty())
            .map(|(k, targets)| {
                (
                    self.gens[k].name.clone(),
                    targets.iter().map(|&t| self.gens[t].name.clone()).collect(),
                )
            })
            .collect();
        let flip: BTreeMap<String, String> = self
            .flip
            .iter()
            .enumerate()
            .filter(|&(k, &f)| k != f)
            .map(|(k, &f)| (self.gens[k].name.clone(), self.gens[f].name.clone()))
            .collect();
        let file = CfkFile {
            generators: self.gens.clone(),
            differential,
            flip: if flip.is_empty() { None } else { Some(flip) },
        };
        serde_json::to_string_pretty(&file).expect("serialisation cannot fail")
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn differential(&self, k: usize) -> &[usize] {
        &self.diff[k]
    }

    pub fn flip(&self, k: usize) -> usize {
        self.flip[k]
    }

    /// Alexander grading `j - i` of a generator.
    pub fn alexander(&self, k: usize) -> i64 {
        self.gens[k].j - self.gens[k].i
    }

    /// Graded dimensions of the knot Floer homology, keyed by Alexander
    /// grading: homology of the vertical column with respect to the
    /// position-preserving part of the differential.
    pub fn hfk_dims(&self) -> BTreeMap<i64, usize> {
        // Work in the i = 0 column; the associated-graded differential keeps
        // both filtration levels, which for column translates means the
        // target sits at the same position.
        let n = self.len();
        let translate: Vec<i64> = (0..n).map(|k| self.gens[k].i).collect();
        let gradings: Vec<i64> = (0..n).map(|k| self.gens[k].gr - 2 * translate[k]).collect();
        let mut d: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, targets) in self.diff.iter().enumerate() {
            for &t in targets {
                let same_i = self.gens[t].i - translate[k] == 0;
                let same_j = self.gens[t].j == self.gens[k].j;
                if same_i && same_j {
                    d[k].push(t);
                }
            }
        }
        let cx = GradedComplex::new(gradings, d).expect("column complex is valid");
        // The Alexander grading is preserved by the associated-graded
        // differential, so homology splits over it; count per A by running
        // the homology of each A-summand separately.
        let mut out: BTreeMap<i64, usize> = BTreeMap::new();
        let mut by_a: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for k in 0..n {
            by_a.entry(self.alexander(k)).or_default().push(k);
        }
        for (a, ks) in by_a {
            let reindex: BTreeMap<usize, usize> = ks
                .iter()
                .enumerate()
                .map(|(new, &old)| (old, new))
                .collect();
            let gr = ks.iter().map(|&k| cx.grading(k)).collect();
            let dd = ks
                .iter()
                .map(|&k| {
                    cx.differential(k)
                        .iter()
                        .filter_map(|t| reindex.get(t).copied())
                        .collect()
                })
                .collect();
            let sub = GradedComplex::new(gr, dd).expect("A-graded summand is valid");
            let dim = sub.total_homology_dim();
            if dim > 0 {
                out.insert(a, dim);
            }
        }
        out
    }

    /// Seifert genus as read off the knot Floer homology: the top Alexander
    /// grading supporting it.
    pub fn genus(&self) -> i64 {
        self.hfk_dims().keys().next_back().copied().unwrap_or(0)
    }
}

/// Which subquotient of the bifiltered complex to realise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubquotientKind {
    /// `C{max(i, j - s) = 0}` — the hat-flavor complex at level `s`.
    HatA(i64),
    /// `C{i = 0}` — the hat-flavor target complex.
    HatB,
    /// `C{max(i, j - s) >= 0}`, `U`-translates capped below by `floor`.
    PlusA(i64),
    /// `C{i >= 0}`, capped likewise.
    PlusB,
}

/// A finite model of a subquotient complex. Basis elements are pairs
/// `(generator, n)` representing the `U^n`-translate of the generator, at
/// position `(i - n, j - n)` and grading `gr - 2n`.
pub struct SubComplex {
    pub complex: GradedComplex,
    pub elems: Vec<(usize, i64)>,
    index: BTreeMap<(usize, i64), usize>,
}

impl SubComplex {
    pub fn index_of(&self, gen: usize, n: i64) -> Option<usize> {
        self.index.get(&(gen, n)).copied()
    }
}

impl BifilteredComplex {
    /// The largest translate level at which a generator still lies in the
    /// region (for the `max(i, j - s)` regions this is where the maximum
    /// equals zero).
    fn level_cap(&self, k: usize, kind: SubquotientKind) -> i64 {
        let g = &self.gens[k];
        match kind {
            SubquotientKind::HatA(s) | SubquotientKind::PlusA(s) => g.i.max(g.j - s),
            SubquotientKind::HatB | SubquotientKind::PlusB => g.i,
        }
    }

    /// Builds the subquotient complex. For the hat kinds each generator
    /// contributes exactly one translate; for the plus kinds the translates
    /// `floor <= n <= cap` are kept (`floor` is ignored for hat kinds).
    pub fn subquotient(&self, kind: SubquotientKind, floor: i64) -> SubComplex {
        let mut elems: Vec<(usize, i64)> = Vec::new();
        for k in 0..self.len() {
            let cap = self.level_cap(k, kind);
            match kind {
                SubquotientKind::HatA(_) | SubquotientKind::HatB => elems.push((k, cap)),
                SubquotientKind::PlusA(_) | SubquotientKind::PlusB => {
                    for n in floor..=cap {
                        elems.push((k, n));
                    }
                }
            }
        }
        let index: BTreeMap<(usize, i64), usize> =
            elems.iter().enumerate().map(|(idx, &e)| (e, idx)).collect();
        let in_region = |k: usize, n: i64| -> bool {
            let cap = self.level_cap(k, kind);
            match kind {
                SubquotientKind::HatA(_) | SubquotientKind::HatB => n == cap,
                SubquotientKind::PlusA(_) | SubquotientKind::PlusB => n <= cap && n >= floor,
            }
        };
        let gradings = elems
            .iter()
            .map(|&(k, n)| self.gens[k].gr - 2 * n)
            .collect();
        let d = elems
            .iter()
            .map(|&(k, n)| {
                self.diff[k]
                    .iter()
                    .filter(|&&t| in_region(t, n))
                    .map(|&t| index[&(t, n)])
                    .collect()
            })
            .collect();
        let complex = GradedComplex::new(gradings, d).expect("subquotient complex is valid");
        SubComplex {
            complex,
            elems,
            index,
        }
    }

    /// The canonical map `v_s` from an `A`-type subquotient to the matching
    /// `B`-type one: projection onto the `i`-region. Returns, per basis
    /// element of `source`, its image in `target` (at most one element).
    pub fn v_map(&self, source: &SubComplex, target: &SubComplex) -> Vec<Option<usize>> {
        source
            .elems
            .iter()
            .map(|&(k, n)| target.index_of(k, n))
            .collect()
    }

    /// The canonical map `h_s`: projection onto the `j`-region, vertical
    /// `U^s`-identification with the `j = 0` region, then the flip.
    ///
    /// A translate `(k, n)` at position `(i, j)` survives iff its `j`-part
    /// carries the region (hat: `j = s`; plus: `j >= s` with `i < `cap-side
    /// handled by the target's own membership), and lands on the flipped
    /// generator at the translate matching position `(j - s, i - s)`.
    pub fn h_map(&self, s: i64, source: &SubComplex, target: &SubComplex) -> Vec<Option<usize>> {
        source
            .elems
            .iter()
            .map(|&(k, n)| {
                let g = &self.gens[k];
                let (i, j) = (g.i - n, g.j - n);
                if j - s < 0 {
                    return None;
                }
                // (i, j) -> (i - s, j - s) -> flipped position (j - s, i - s).
                let fk = self.flip[k];
                let fg = &self.gens[fk];
                // Want translate m with (fg.i - m, fg.j - m) = (j - s, i - s).
                let m = fg.i - (j - s);
                debug_assert_eq!(fg.j - m, i - s, "flip is position-conjugating");
                target.index_of(fk, m)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_plus_dot() -> BifilteredComplex {
        // The standard genus-one model with dim A_0 = 3: a box and a dot.
        let gens = vec![
            Generator {
                name: "o".into(),
                i: 0,
                j: 0,
                gr: 0,
            },
            Generator {
                name: "sw".into(),
                i: 0,
                j: 0,
                gr: 0,
            },
            Generator {
                name: "nw".into(),
                i: 0,
                j: 1,
                gr: 1,
            },
            Generator {
                name: "se".into(),
                i: 1,
                j: 0,
                gr: 1,
            },
            Generator {
                name: "ne".into(),
                i: 1,
                j: 1,
                gr: 2,
            },
        ];
        let mut d = BTreeMap::new();
        d.insert("ne".to_string(), vec!["nw".to_string(), "se".to_string()]);
        d.insert("nw".to_string(), vec!["sw".to_string()]);
        d.insert("se".to_string(), vec!["sw".to_string()]);
        let mut flip = BTreeMap::new();
        flip.insert("nw".to_string(), "se".to_string());
        flip.insert("se".to_string(), "nw".to_string());
        BifilteredComplex::new(gens, &d, Some(&flip)).unwrap()
    }

    #[test]
    fn unknot_complex_is_valid() {
        let gens = vec![Generator {
            name: "x0".into(),
            i: 0,
            j: 0,
            gr: 0,
        }];
        let cx = BifilteredComplex::new(gens, &BTreeMap::new(), None).unwrap();
        assert_eq!(cx.genus(), 0);
        assert_eq!(cx.hfk_dims()[&0], 1);
    }

    #[test]
    fn square_plus_dot_validates_and_has_genus_one() {
        let cx = square_plus_dot();
        assert_eq!(cx.genus(), 1);
        let hfk = cx.hfk_dims();
        assert_eq!(hfk[&1], 1);
        assert_eq!(hfk[&0], 3);
        assert_eq!(hfk[&-1], 1);
    }

    #[test]
    fn grading_drop_violation_is_reported() {
        let gens = vec![
            Generator {
                name: "a".into(),
                i: 0,
                j: 0,
                gr: 0,
            },
            Generator {
                name: "b".into(),
                i: 0,
                j: 0,
                gr: 0,
            },
        ];
        let mut d = BTreeMap::new();
        d.insert("a".to_string(), vec!["b".to_string()]);
        let err = BifilteredComplex::new(gens, &d, None).unwrap_err();
        assert!(matches!(err, CfkError::GradingDrop { .. }));
    }

    #[test]
    fn filtration_violation_is_reported() {
        let gens = vec![
            Generator {
                name: "a".into(),
                i: 0,
                j: 0,
                gr: 1,
            },
            Generator {
                name: "b".into(),
                i: 1,
                j: 1,
                gr: 0,
            },
        ];
        let mut d = BTreeMap::new();
        d.insert("a".to_string(), vec!["b".to_string()]);
        let err = BifilteredComplex::new(gens, &d, None).unwrap_err();
        assert!(matches!(err, CfkError::Filtration { .. }));
    }

    #[test]
    fn off_diagonal_generator_requires_flip() {
        let gens = vec![Generator {
            name: "a".into(),
            i: 0,
            j: 1,
            gr: 0,
        }];
        let err = BifilteredComplex::new(gens, &BTreeMap::new(), None).unwrap_err();
        assert_eq!(err, CfkError::MissingFlip("a".into()));
    }

    #[test]
    fn json_round_trip_is_identity() {
        let cx = square_plus_dot();
        let json = cx.to_json();
        let back = BifilteredComplex::parse_json(&json).unwrap();
        assert_eq!(cx, back);
        // And serialisation is deterministic.
        assert_eq!(json, back.to_json());
    }

    #[test]
    fn hat_a0_of_square_plus_dot_has_dim_three() {
        let cx = square_plus_dot();
        let a0 = cx.subquotient(SubquotientKind::HatA(0), 0);
        assert_eq!(a0.complex.len(), 5);
        assert_eq!(a0.complex.total_homology_dim(), 3);
    }

    #[test]
    fn hat_b_of_square_plus_dot_is_one_dimensional() {
        let cx = square_plus_dot();
        let b = cx.subquotient(SubquotientKind::HatB, 0);
        let h = b.complex.homology();
        assert_eq!(h.dims().total_dim(), 1);
        assert_eq!(h.dims().dim(0), 1);
    }
}
