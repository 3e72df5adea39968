//! Executable reducibility obstructions.
//!
//! A reducible surgery has a lens-space connected summand, and the homology
//! of a connected sum with a summand of order `r` repeats with period `r`
//! across Spin^c classes, as relatively-graded modules. Everything here
//! plays that periodicity against the graded data the cone engines compute,
//! and reports exactly one of: `Obstructed` (the data rules the scenario
//! out, with a reproducible witness), `Consistent`/not obstructed (the data
//! cannot tell), or `Inconclusive` for gates that simply do not apply.
//!
//! Verdicts speak only about the graded Floer data; topological hypotheses
//! (hyperbolicity, non-cabledness) are outside their reach.

use serde::Serialize;
use thiserror::Error;

use crate::cone::{check_hf, hat_dims, hf_plus, CheckTable, ConeError, HatTable, Knot, PlusTable};
use crate::knotio::SubquotientKind;
use crate::staircase::StaircaseKnot;

pub const FLOER_ONLY_CAVEAT: &str = "verdicts reflect graded Heegaard Floer data only; \
topological hypotheses such as hyperbolicity or non-cabledness are not checked";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ObstructError {
    #[error("candidate summand order r = {r} must satisfy 1 <= r < |p| and r | |p| (p = {p})")]
    BadCandidate { r: u64, p: i64 },
    #[error("rank of theta must be 0 or 1, got {0}")]
    BadTheta(u8),
    #[error("hypotheses violated: {0}")]
    Hypotheses(String),
    #[error("general complexes support only the genus-one obstruction; model the knot as a staircase for the full pipeline")]
    UnsupportedComplex,
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// The concrete data line behind an `Obstructed` verdict: the two Spin^c
/// classes whose graded data should agree under the lens-summand
/// periodicity but do not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub class_a: i64,
    pub class_b: i64,
    pub detail: String,
}

impl Witness {
    fn pair(a: i64, b: i64, detail: String) -> Self {
        Self {
            class_a: a.min(b),
            class_b: a.max(b),
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Obstructed { witness: Witness },
    Consistent,
    Inconclusive,
}

impl Verdict {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, Verdict::Obstructed { .. })
    }
}

/// A Spin^c table the periodicity test can compare across classes.
pub enum SpincTable<'a> {
    Hat(&'a HatTable),
    Plus(&'a PlusTable),
}

impl SpincTable<'_> {
    fn slope(&self) -> i64 {
        match self {
            SpincTable::Hat(t) => t.p,
            SpincTable::Plus(t) => t.p,
        }
    }
}

fn check_candidate(r: u64, p: i64) -> Result<(), ObstructError> {
    let q = p.unsigned_abs();
    if r == 0 || r >= q || q % r != 0 {
        return Err(ObstructError::BadCandidate { r, p });
    }
    Ok(())
}

/// Divisors `r` of `|p|` with `r < |p|`, i.e. the candidate orders
/// `|H^2(R)|` for a decomposition with a lens summand of order `|p|/r >= 2`.
pub fn candidate_orders(p: i64) -> Vec<u64> {
    let q = p.unsigned_abs();
    (1..q).filter(|r| q % r == 0).collect()
}

/// Tests whether the table is invariant under shifting Spin^c classes by
/// `r`: equal dimensions in the hat flavor, isomorphic relatively-graded
/// modules in the plus flavor. A failure is reported with the first class
/// pair that breaks, as an unordered pair.
pub fn periodicity_test(table: &SpincTable, r: u64) -> Result<Verdict, ObstructError> {
    let p = table.slope();
    check_candidate(r, p)?;
    let q = p.abs();
    for s in 0..q {
        let s2 = (s + r as i64).rem_euclid(q);
        match table {
            SpincTable::Hat(t) => {
                let (a, b) = (t.class_dim(s), t.class_dim(s2));
                if a != b {
                    return Ok(Verdict::Obstructed {
                        witness: Witness::pair(
                            s,
                            s2,
                            format!("dim in class [{s}] is {a} but in [{s2}] is {b}"),
                        ),
                    });
                }
            }
            SpincTable::Plus(t) => {
                let (a, b) = (t.class(s), t.class(s2));
                if a.relative_shape() != b.relative_shape() {
                    return Ok(Verdict::Obstructed {
                        witness: Witness::pair(
                            s,
                            s2,
                            format!(
                                "relatively-graded modules differ: class [{s}] has torsion {:?}, class [{s2}] has {:?} (length, top grading relative to the tower bottom)",
                                a.relative_shape().1,
                                b.relative_shape().1
                            ),
                        ),
                    });
                }
            }
        }
    }
    Ok(Verdict::Consistent)
}

fn reducing_range_gate(knot: &StaircaseKnot, p: i64) -> Result<(), ObstructError> {
    if p == 0 {
        return Err(ConeError::ZeroSlope.into());
    }
    if knot.is_trivial() {
        return Err(ConeError::TrivialKnot.into());
    }
    let g = knot.genus();
    if !(1 < p.abs() && p.abs() <= 2 * g - 1) {
        return Err(ConeError::SlopeOutOfRange { p, max: 2 * g - 1 }.into());
    }
    Ok(())
}

/// The divisibility obstruction: when `p` does not divide `2g-1`, the hat
/// dimensions descend at exactly one class (the class of `g`), while a lens
/// summand of any admissible order `r` would force a second descent at
/// `[g+r]` — so every `r` is ruled out at once.
pub fn divisibility_obstruction(knot: &StaircaseKnot, p: i64) -> Result<Verdict, ObstructError> {
    reducing_range_gate(knot, p)?;
    let g = knot.genus();
    if (2 * g - 1) % p.abs() == 0 {
        return Ok(Verdict::Inconclusive);
    }
    let dims = hat_dims_of(knot, p)?;
    let q = p.abs();
    let descents: Vec<i64> = (0..q)
        .filter(|&s| dims.class_dim(s - 1) > dims.class_dim(s))
        .collect();
    if descents.len() == 1 {
        let s = descents[0];
        debug_assert_eq!(s, g.rem_euclid(q));
        Ok(Verdict::Obstructed {
            witness: Witness::pair(
                (s - 1).rem_euclid(q),
                s,
                format!(
                    "dim descends only from class [{}] ({}) to [{}] ({}); a summand of order r would force the same descent shifted by r, impossible for every candidate r",
                    (s - 1).rem_euclid(q),
                    dims.class_dim(s - 1),
                    s,
                    dims.class_dim(s)
                ),
            ),
        })
    } else {
        // Cannot happen for a staircase knot; answering conservatively keeps
        // the obstruction sound.
        Ok(Verdict::Inconclusive)
    }
}

fn hat_dims_of(knot: &StaircaseKnot, p: i64) -> Result<HatTable, ObstructError> {
    Ok(hat_dims(&Knot::Staircase(knot.clone()), p)?)
}

/// The graded eliminator for slopes with `p | 2g-1`: per candidate `r`,
/// compare the graded data that a lens summand of order `r` would have to
/// repeat.
///
/// * `p = 2g-1`: full plus-flavor periodicity (every class is a bare tower,
///   so every candidate passes — the one slope these tests leave open).
/// * `p = 1-2g`: plus-flavor periodicity; the torsion offsets `-(2s+1)`
///   below the tower separate every class pair.
/// * `|p| < 2g-1`: the `coker(U)` line: positive slopes compare the
///   dimension at `gr_bot` of `[0]` against `[-r]`, negative slopes the
///   dimension at `gr_top - 2|p|` of `[0]` against `[r]`.
pub fn graded_slope_eliminator(knot: &StaircaseKnot, p: i64) -> Result<Verdict, ObstructError> {
    let per_r = eliminator_candidates(knot, p)?;
    Ok(combine_candidates(&per_r))
}

/// Per-candidate verdicts of the graded eliminator.
pub fn eliminator_candidates(
    knot: &StaircaseKnot,
    p: i64,
) -> Result<Vec<CandidateVerdict>, ObstructError> {
    reducing_range_gate(knot, p)?;
    let g = knot.genus();
    if (2 * g - 1) % p.abs() != 0 {
        return Err(ObstructError::Hypotheses(format!(
            "graded eliminator needs p | 2g-1 (p = {p}, 2g-1 = {})",
            2 * g - 1
        )));
    }
    let candidates = candidate_orders(p);
    let mut out = Vec::with_capacity(candidates.len());
    if p.abs() == 2 * g - 1 {
        let table = hf_plus(knot, p)?;
        for r in candidates {
            let verdict = periodicity_test(&SpincTable::Plus(&table), r)?;
            out.push(CandidateVerdict { r, verdict });
        }
    } else {
        let table = check_hf(knot, p)?;
        for r in candidates {
            let verdict = coker_line_verdict(&table, p, r)?;
            out.push(CandidateVerdict { r, verdict });
        }
    }
    Ok(out)
}

/// The single `coker(U)` comparison the positive/negative slope arguments
/// hinge on.
fn coker_line_verdict(table: &CheckTable, p: i64, r: u64) -> Result<Verdict, ObstructError> {
    check_candidate(r, p)?;
    let r = r as i64;
    let (other, depth_from_top) = if p > 0 {
        (-r, None)
    } else {
        (r, Some(2 * p.abs()))
    };
    let dim_on_line = |class: &crate::cone::CheckClass| -> usize {
        match depth_from_top {
            None => class.gr_bot().map_or(0, |b| class.dim_at(b)),
            Some(d) => class.gr_top().map_or(0, |t| class.dim_at(t - d)),
        }
    };
    let d0 = dim_on_line(table.class(0));
    let dr = dim_on_line(table.class(other));
    let line = if p > 0 {
        "dim of coker(U) at gr_bot"
    } else {
        "dim of coker(U) at gr_top - 2|p|"
    };
    if d0 != dr {
        Ok(Verdict::Obstructed {
            witness: Witness::pair(
                0,
                other.rem_euclid(p.abs()),
                format!("{line}: class [0] has {d0}, class [{other}] has {dr}"),
            ),
        })
    } else {
        Ok(Verdict::Consistent)
    }
}

/// The genus-one gate: a reducible surgery on a genus-one knot forces
/// `dim A_0 = 1`, so any larger dimension is an immediate obstruction.
pub fn genus_one_check(a0_dim: usize) -> Verdict {
    if a0_dim > 1 {
        Verdict::Obstructed {
            witness: Witness::pair(
                0,
                1,
                format!(
                    "a lens summand would force some class [s] != [0] with dim = dim A_0 = {a0_dim}, but every such class has dim 1"
                ),
            ),
        }
    } else {
        Verdict::Inconclusive
    }
}

/// Outcome of the simultaneous two-slope constraint system for a genus-two
/// knot with purported reducing slopes 2 and 3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum TwoSlopesOutcome {
    /// The periodicity equations have no solution with these dimensions.
    Inconsistent {
        equation: String,
        lhs: i64,
        rhs: i64,
    },
    /// The equations force `dim A_0 = 1`: the 3-surgery is an L-space, and
    /// the staircase pipeline at slope 2 finishes the contradiction.
    ForcesLSpace,
}

/// Checks the two constraints a pair of reducing slopes 2 and 3 on a
/// genus-two knot would impose: equal dimensions across the 3-surgery
/// classes, and `dim A_{-1} + dim A_1 + 1 - 2 rank(theta) = dim A_0` from
/// the 2-surgery.
pub fn two_slopes_check(
    dims: (usize, usize, usize),
    rank_theta: u8,
) -> Result<TwoSlopesOutcome, ObstructError> {
    if rank_theta > 1 {
        return Err(ObstructError::BadTheta(rank_theta));
    }
    let (dm1, d0, d1) = (dims.0 as i64, dims.1 as i64, dims.2 as i64);
    if !(dm1 == d0 && d0 == d1) {
        return Ok(TwoSlopesOutcome::Inconsistent {
            equation: "3-surgery periodicity: dim A_{-1} = dim A_0 = dim A_1".into(),
            lhs: dm1,
            rhs: d1,
        });
    }
    let lhs = dm1 + d1 + 1 - 2 * rank_theta as i64;
    if lhs != d0 {
        return Ok(TwoSlopesOutcome::Inconsistent {
            equation: "2-surgery periodicity: dim A_{-1} + dim A_1 + 1 - 2 rank(theta) = dim A_0"
                .into(),
            lhs,
            rhs: d0,
        });
    }
    assert_eq!(
        d0, 1,
        "a consistent solution forces dim A_0 = 2 rank(theta) - 1 = 1"
    );
    Ok(TwoSlopesOutcome::ForcesLSpace)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateVerdict {
    pub r: u64,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OverallVerdict {
    /// Every candidate summand order is ruled out: the surgery cannot be a
    /// connected sum with a lens space on this graded data.
    Obstructed,
    /// At least one candidate order is consistent with the data.
    NotObstructed,
    /// The slope lies outside the range where reducibility is possible at
    /// all (`1 < |p| <= 2g-1`), so there is nothing to obstruct.
    SlopeOutsideRange,
    /// The applicable gates could not decide.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub p: i64,
    pub genus: i64,
    pub overall: OverallVerdict,
    pub candidates: Vec<CandidateVerdict>,
    pub caveat: String,
}

fn combine_candidates(per_r: &[CandidateVerdict]) -> Verdict {
    match per_r.iter().find(|c| !c.verdict.is_obstructed()) {
        Some(open) => open.verdict.clone(),
        None => per_r
            .first()
            .map(|c| c.verdict.clone())
            .unwrap_or(Verdict::Inconclusive),
    }
}

/// The full decision tree for one knot and slope: range gate, then the
/// divisibility obstruction, then the graded eliminator per candidate
/// order. For explicit complexes only the genus-one gate applies.
pub fn full_report(knot: &Knot, p: i64) -> Result<ObstructionReport, ObstructError> {
    if p == 0 {
        return Err(ConeError::ZeroSlope.into());
    }
    match knot {
        Knot::Staircase(k) => staircase_report(k, p),
        Knot::Complex(cx) => {
            if cx.genus() != 1 {
                return Err(ObstructError::UnsupportedComplex);
            }
            let a0 = cx
                .subquotient(SubquotientKind::HatA(0), 0)
                .complex
                .total_homology_dim();
            let verdict = genus_one_check(a0);
            let candidates: Vec<CandidateVerdict> = candidate_orders(p)
                .into_iter()
                .map(|r| CandidateVerdict {
                    r,
                    verdict: verdict.clone(),
                })
                .collect();
            let overall = match &verdict {
                Verdict::Obstructed { .. } => OverallVerdict::Obstructed,
                _ => OverallVerdict::Inconclusive,
            };
            Ok(ObstructionReport {
                p,
                genus: 1,
                overall,
                candidates,
                caveat: FLOER_ONLY_CAVEAT.into(),
            })
        }
    }
}

fn staircase_report(knot: &StaircaseKnot, p: i64) -> Result<ObstructionReport, ObstructError> {
    if knot.is_trivial() {
        return Err(ConeError::TrivialKnot.into());
    }
    let g = knot.genus();
    if !(1 < p.abs() && p.abs() <= 2 * g - 1) {
        return Ok(ObstructionReport {
            p,
            genus: g,
            overall: OverallVerdict::SlopeOutsideRange,
            candidates: Vec::new(),
            caveat: FLOER_ONLY_CAVEAT.into(),
        });
    }
    let candidates = if (2 * g - 1) % p.abs() != 0 {
        let verdict = divisibility_obstruction(knot, p)?;
        candidate_orders(p)
            .into_iter()
            .map(|r| CandidateVerdict {
                r,
                verdict: verdict.clone(),
            })
            .collect()
    } else {
        eliminator_candidates(knot, p)?
    };
    let all_obstructed =
        !candidates.is_empty() && candidates.iter().all(|c| c.verdict.is_obstructed());
    let overall = if all_obstructed {
        OverallVerdict::Obstructed
    } else {
        OverallVerdict::NotObstructed
    };
    Ok(ObstructionReport {
        p,
        genus: g,
        overall,
        candidates,
        caveat: FLOER_ONLY_CAVEAT.into(),
    })
}
