//! Exact rationals and rational matrices.

use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Why a rational literal was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    Empty,
    ZeroDenominator,
    Malformed,
}

impl core::fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ParseRationalError::Empty => f.write_str("empty rational literal"),
            ParseRationalError::ZeroDenominator => f.write_str("zero denominator"),
            ParseRationalError::Malformed => f.write_str("malformed rational literal"),
        }
    }
}

impl core::error::Error for ParseRationalError {}

/// Parses `"p"`, `"-p"`, `"p/q"` or `"-p/q"` (surrounding whitespace allowed).
/// Decimal points, exponents and signs on the denominator are rejected.
pub fn parse_rational(s: &str) -> core::result::Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numerator = parse_integer(num, true)?;
    let denominator = match den {
        Some(d) => parse_integer(d, false)?,
        None => BigInt::one(),
    };
    if denominator.is_zero() {
        return Err(ParseRationalError::ZeroDenominator);
    }
    Ok(Rational::new(numerator, denominator))
}

fn parse_integer(s: &str, allow_sign: bool) -> core::result::Result<BigInt, ParseRationalError> {
    let digits = match s.strip_prefix('-').or_else(|| s.strip_prefix('+')) {
        Some(rest) if allow_sign => rest,
        Some(_) => return Err(ParseRationalError::Malformed),
        None => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::Malformed);
    }
    BigInt::from_str(s).map_err(|_| ParseRationalError::Malformed)
}

/// Least common multiple of the denominators of `values` (1 for an empty list).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Dense rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: (rows, cols),
                found: (entries.len(), 1),
            });
        }
        Ok(RationalMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: alloc::vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.entries[r * m.cols() + c] = Rational::from_integer(m[(r, c)].clone());
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Least common multiple of all entry denominators.
    pub fn common_denominator(&self) -> BigInt {
        denominator_lcm(&self.entries)
    }

    /// `ell * self` as an integer matrix, failing if some entry stays fractional.
    pub fn scaled_to_integer(&self, ell: &BigInt) -> Result<IntMatrix> {
        let mut out = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let v = e * Rational::from_integer(ell.clone());
            if !v.is_integer() {
                return Err(Error::NotIntegral);
            }
            out.push(v.to_integer());
        }
        IntMatrix::new(self.rows, self.cols, out)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(Rational::is_integer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(parse_rational("-3/7").unwrap(), r(-3, 7));
        assert_eq!(parse_rational(" 4/6 ").unwrap(), r(2, 3));
        assert_eq!(parse_rational("5").unwrap(), r(5, 1));
        assert_eq!(parse_rational("+1/2").unwrap(), r(1, 2));
        assert_eq!(parse_rational("0/9").unwrap(), Rational::zero());
        assert_eq!(*parse_rational("0/9").unwrap().denom(), BigInt::one());
    }

    #[test]
    fn rejects_bad_literals() {
        assert_eq!(parse_rational(""), Err(ParseRationalError::Empty));
        assert_eq!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator)
        );
        assert_eq!(parse_rational("0.5"), Err(ParseRationalError::Malformed));
        assert_eq!(parse_rational("1/-2"), Err(ParseRationalError::Malformed));
        assert_eq!(parse_rational("a/b"), Err(ParseRationalError::Malformed));
        assert_eq!(parse_rational("1//2"), Err(ParseRationalError::Malformed));
        assert_eq!(parse_rational("-"), Err(ParseRationalError::Malformed));
    }

    #[test]
    fn denominators_and_scaling() {
        let m = RationalMatrix::new(1, 3, alloc::vec![r(1, 2), r(1, 3), r(5, 1)]).unwrap();
        let ell = m.common_denominator();
        assert_eq!(ell, BigInt::from(6));
        let h = m.scaled_to_integer(&ell).unwrap();
        assert_eq!(h, IntMatrix::from_i64(&[&[3, 2, 30]]));
        assert_eq!(
            m.scaled_to_integer(&BigInt::from(2)),
            Err(Error::NotIntegral)
        );
    }
}
