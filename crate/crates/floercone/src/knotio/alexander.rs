//! Symmetric integer Laurent polynomials and their ingestion.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// An integer Laurent polynomial `Δ(t)` with `Δ(t) = Δ(t^-1)` and
/// `Δ(1) = 1` — the (suitably normalised) Alexander polynomial of a knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricLaurent {
    /// Non-zero coefficients only, keyed by exponent.
    coeffs: BTreeMap<i64, i64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlexanderError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("polynomial is not symmetric: coefficient of t^{exp} is {a} but of t^{neg} is {b}")]
    Asymmetric { exp: i64, neg: i64, a: i64, b: i64 },
    #[error("polynomial evaluates to {0} at t = 1, expected 1")]
    NotNormalized(i64),
    #[error("torus parameters ({0}, {1}) must satisfy 2 <= a < b")]
    TorusRange(u64, u64),
    #[error("torus parameters ({0}, {1}) are not coprime")]
    TorusNotCoprime(u64, u64),
}

impl SymmetricLaurent {
    /// Builds and validates a symmetric Laurent polynomial. Violations are
    /// reported, never repaired.
    pub fn new(coeffs: impl IntoIterator<Item = (i64, i64)>) -> Result<Self, AlexanderError> {
        let mut map: BTreeMap<i64, i64> = BTreeMap::new();
        for (e, c) in coeffs {
            *map.entry(e).or_insert(0) += c;
        }
        map.retain(|_, c| *c != 0);
        for (&e, &c) in &map {
            let mirror = map.get(&-e).copied().unwrap_or(0);
            if mirror != c {
                return Err(AlexanderError::Asymmetric {
                    exp: e,
                    neg: -e,
                    a: c,
                    b: mirror,
                });
            }
        }
        let at_one: i64 = map.values().sum();
        if at_one != 1 {
            return Err(AlexanderError::NotNormalized(at_one));
        }
        Ok(Self { coeffs: map })
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    /// The top exponent; 0 for the constant polynomial 1.
    pub fn genus(&self) -> i64 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0) == 1
    }

    /// Classical torsion coefficients `t_s = Σ_{j >= 1} j * a_{|s|+j}`,
    /// for `0 <= s <= genus` (zero beyond the genus).
    pub fn torsion_coefficients(&self) -> BTreeMap<i64, i64> {
        let g = self.genus();
        let mut out = BTreeMap::new();
        for s in 0..=g {
            let mut t = 0;
            for j in 1..=(g - s) {
                t += j * self.coeff(s + j);
            }
            out.insert(s, t);
        }
        out
    }
}

impl fmt::Display for SymmetricLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in self.coeffs.iter().rev() {
            let mag = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (mag, e) {
                (m, 0) => write!(f, "{m}")?,
                (1, 1) => write!(f, "t")?,
                (1, e) => write!(f, "t^{e}")?,
                (m, 1) => write!(f, "{m}*t")?,
                (m, e) => write!(f, "{m}*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Parses an integer Laurent polynomial in `t`.
///
/// Terms look like `c`, `c*t^k`, `t^-k`, `2t`, joined by `+`/`-`;
/// whitespace is ignored. The result is validated as a
/// [`SymmetricLaurent`].
pub fn parse_alexander(text: &str) -> Result<SymmetricLaurent, AlexanderError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut terms: Vec<(i64, i64)> = Vec::new();

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let parse_int = |pos: &mut usize| -> Option<i64> {
        let start = *pos;
        if *pos < bytes.len() && (bytes[*pos] == b'-' || bytes[*pos] == b'+') {
            *pos += 1;
        }
        let digits = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if *pos == digits {
            *pos = start;
            return None;
        }
        text[start..*pos].parse().ok()
    };

    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(AlexanderError::Syntax {
            pos,
            msg: "empty polynomial".into(),
        });
    }
    let mut first_term = true;
    while pos < bytes.len() {
        // Sign / separator.
        let mut sign = 1i64;
        skip_ws(&mut pos);
        match bytes.get(pos) {
            Some(b'+') => {
                pos += 1;
            }
            Some(b'-') => {
                sign = -1;
                pos += 1;
            }
            _ if first_term => {}
            Some(_) => {
                return Err(AlexanderError::Syntax {
                    pos,
                    msg: "expected `+` or `-` between terms".into(),
                })
            }
            None => break,
        }
        first_term = false;
        skip_ws(&mut pos);

        // Coefficient (optional when the term starts with `t`).
        let coeff = parse_int(&mut pos);
        skip_ws(&mut pos);
        if let Some(b'*') = bytes.get(pos) {
            if coeff.is_none() {
                return Err(AlexanderError::Syntax {
                    pos,
                    msg: "`*` without a coefficient".into(),
                });
            }
            pos += 1;
            skip_ws(&mut pos);
        }

        let has_t = matches!(bytes.get(pos), Some(b't'));
        if has_t {
            pos += 1;
        }
        if !has_t {
            match coeff {
                Some(c) => {
                    terms.push((0, sign * c));
                    continue;
                }
                None => {
                    return Err(AlexanderError::Syntax {
                        pos,
                        msg: "expected a term".into(),
                    })
                }
            }
        }
        let mut exp = 1i64;
        if let Some(b'^') = bytes.get(pos) {
            pos += 1;
            skip_ws(&mut pos);
            exp = parse_int(&mut pos).ok_or(AlexanderError::Syntax {
                pos,
                msg: "expected an integer exponent after `^`".into(),
            })?;
        }
        terms.push((exp, sign * coeff.unwrap_or(1)));
        skip_ws(&mut pos);
    }
    SymmetricLaurent::new(terms)
}

/// The symmetric Alexander polynomial of the torus knot T(a, b),
/// `Δ(t) = t^{-g} (t^{ab} - 1)(t - 1) / ((t^a - 1)(t^b - 1))` with
/// `g = (a-1)(b-1)/2`.
pub fn torus_knot_alexander(a: u64, b: u64) -> Result<SymmetricLaurent, AlexanderError> {
    if !(2 <= a && a < b) {
        return Err(AlexanderError::TorusRange(a, b));
    }
    if gcd(a, b) != 1 {
        return Err(AlexanderError::TorusNotCoprime(a, b));
    }
    // Dense coefficient vectors indexed by exponent 0..
    let cyclo_like = |n: u64| -> Vec<i64> {
        // (t^n - 1)
        let mut v = vec![0i64; n as usize + 1];
        v[0] = -1;
        v[n as usize] = 1;
        v
    };
    let num = poly_mul(&cyclo_like(a * b), &cyclo_like(1));
    let den = poly_mul(&cyclo_like(a), &cyclo_like(b));
    let q = poly_div_exact(&num, &den);
    let g = ((a - 1) * (b - 1) / 2) as i64;
    SymmetricLaurent::new(q.iter().enumerate().map(|(e, &c)| (e as i64 - g, c)))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn poly_mul(p: &[i64], q: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Exact division of integer polynomials; panics on a non-zero remainder
/// (the torus-knot quotient is exact by construction).
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "monic divisor expected");
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "non-exact polynomial division");
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_trefoil() {
        let p = parse_alexander("t - 1 + t^-1").unwrap();
        assert_eq!(p.coeff(1), 1);
        assert_eq!(p.coeff(0), -1);
        assert_eq!(p.coeff(-1), 1);
        assert_eq!(p.genus(), 1);
    }

    #[test]
    fn parse_t25_polynomial() {
        let p = parse_alexander("t^2 - t + 1 - t^-1 + t^-2").unwrap();
        assert_eq!(p.genus(), 2);
        assert_eq!(p, torus_knot_alexander(2, 5).unwrap());
    }

    #[test]
    fn parse_rejects_asymmetric() {
        assert!(matches!(
            parse_alexander("t + 1"),
            Err(AlexanderError::Asymmetric { .. })
        ));
    }

    #[test]
    fn parse_rejects_unnormalized() {
        assert!(matches!(
            parse_alexander("t + 1 + t^-1"),
            Err(AlexanderError::NotNormalized(3))
        ));
    }

    #[test]
    fn parse_reports_syntax_position() {
        let err = parse_alexander("t^2 - & + t^-2").unwrap_err();
        match err {
            AlexanderError::Syntax { pos, .. } => assert_eq!(pos, 6),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_accepts_explicit_star_and_coefficients() {
        let q = parse_alexander("2*t^2-3*t+3-3*t^-1+2*t^-2").unwrap();
        assert_eq!(q.coeff(2), 2);
        assert_eq!(q.coeff(-1), -3);
        // Compact form without `*`.
        let r = parse_alexander("2t^2-3t+3-3t^-1+2t^-2").unwrap();
        assert_eq!(q, r);
    }

    #[test]
    fn torus_trefoil_textbook() {
        let p = torus_knot_alexander(2, 3).unwrap();
        let expected = SymmetricLaurent::new([(1, 1), (0, -1), (-1, 1)]).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn torus_t34_genus_three() {
        let p = torus_knot_alexander(3, 4).unwrap();
        assert_eq!(p.genus(), 3);
        assert_eq!(p.coeff(3), 1);
        // t^3 - t^2 + 1 - t^-2 + t^-3
        assert_eq!(p.coeff(2), -1);
        assert_eq!(p.coeff(1), 0);
        assert_eq!(p.coeff(0), 1);
    }

    #[test]
    fn torus_rejects_bad_parameters() {
        assert!(matches!(
            torus_knot_alexander(2, 4),
            Err(AlexanderError::TorusNotCoprime(2, 4))
        ));
        assert!(matches!(
            torus_knot_alexander(1, 5),
            Err(AlexanderError::TorusRange(1, 5))
        ));
        assert!(matches!(
            torus_knot_alexander(5, 3),
            Err(AlexanderError::TorusRange(5, 3))
        ));
    }

    #[test]
    fn torsion_coefficients_trefoil_and_t25() {
        let tre = torus_knot_alexander(2, 3).unwrap().torsion_coefficients();
        assert_eq!(tre[&0], 1);
        assert_eq!(tre[&1], 0);
        let t25 = torus_knot_alexander(2, 5).unwrap().torsion_coefficients();
        assert_eq!(t25[&0], 1);
        assert_eq!(t25[&1], 1);
        assert_eq!(t25[&2], 0);
    }

    #[test]
    fn torsion_coefficients_of_one_vanish() {
        let one = SymmetricLaurent::new([(0, 1)]).unwrap();
        assert!(one.torsion_coefficients().values().all(|&t| t == 0));
    }

    #[test]
    fn display_round_trips_through_parser() {
        for (a, b) in [(2, 3), (2, 7), (3, 4), (3, 5), (4, 5)] {
            let p = torus_knot_alexander(a, b).unwrap();
            assert_eq!(parse_alexander(&p.to_string()).unwrap(), p);
        }
    }
}
