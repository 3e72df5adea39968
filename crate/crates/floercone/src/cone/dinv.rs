//! Correction terms of large integer surgeries.

use num_rational::Rational64;

use super::diagram::ConeError;
use crate::staircase::StaircaseKnot;

/// The d-invariant of `N`-surgery in the class `[s]`, for `N >= 2g-1` and
/// `|s| <= (N-1)/2`:
///
/// `d(S^3_N(K), [s]) = -2 V_s - s + (4 s^2 + N^2 - N) / 4N`,
///
/// returned as an exact rational (denominator dividing `4N`).
pub fn d_invariant_large(knot: &StaircaseKnot, n: i64, s: i64) -> Result<Rational64, ConeError> {
    let g = knot.genus();
    if n < 2 * g - 1 || n <= 0 {
        return Err(ConeError::SlopeTooSmallForD { n, min: 2 * g - 1 });
    }
    if 2 * s.abs() > n - 1 {
        return Err(ConeError::SpincOutOfSymmetricRange { s, n });
    }
    let v = knot.v(s) as i64;
    Ok(Rational64::new(-2 * v - s, 1) + Rational64::new(4 * s * s + n * n - n, 4 * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotio::{torus_knot_alexander, SymmetricLaurent};

    fn torus(a: u64, b: u64) -> StaircaseKnot {
        StaircaseKnot::from_alexander(&torus_knot_alexander(a, b).unwrap()).unwrap()
    }

    #[test]
    fn unknot_one_surgery_is_zero() {
        let one = SymmetricLaurent::new([(0, 1)]).unwrap();
        let k = StaircaseKnot::from_alexander(&one).unwrap();
        assert_eq!(d_invariant_large(&k, 1, 0).unwrap(), Rational64::from(0));
    }

    #[test]
    fn trefoil_one_surgery_is_minus_two() {
        let k = torus(2, 3);
        assert_eq!(d_invariant_large(&k, 1, 0).unwrap(), Rational64::from(-2));
    }

    #[test]
    fn conjugation_symmetry() {
        let k = torus(2, 7);
        for n in [5, 6, 9, 12] {
            let mut s = 0;
            while 2 * s <= n - 1 {
                assert_eq!(
                    d_invariant_large(&k, n, s).unwrap(),
                    d_invariant_large(&k, n, -s).unwrap(),
                    "N = {n}, s = {s}"
                );
                s += 1;
            }
        }
    }

    #[test]
    fn domain_errors() {
        let k = torus(2, 7); // g = 3
        assert!(matches!(
            d_invariant_large(&k, 4, 0),
            Err(ConeError::SlopeTooSmallForD { .. })
        ));
        assert!(matches!(
            d_invariant_large(&k, 5, 3),
            Err(ConeError::SpincOutOfSymmetricRange { .. })
        ));
    }
}
