//! Exact quantum query complexity of symmetric partial Boolean functions.
//!
//! The crate bundles a phase-oracle state-vector simulator, the exact
//! query algorithms built on it together with an exhaustive exactness
//! verifier, polynomial degree by exact-rational linear programming,
//! classical deterministic query complexity, and a binomial determinant
//! identity checked in big-integer arithmetic.

pub mod algos;
pub mod binomial;
pub mod bits;
pub mod classical;
pub mod error;
pub mod identities;
pub mod polydeg;
pub mod qsim;
pub mod symfun;

/// Exact arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

pub use bits::BitString;
pub use error::{Error, Result};
pub use polydeg::{FeasibilityResult, PolyV};
pub use symfun::{Classification, FamilyTag, FnValue, Isomorph, SymPartialFn};

/// Parses `"p/q"`, `"p"` or a decimal such as `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    use num_bigint::BigInt;
    use num_traits::{One, Signed, Zero};
    let s = s.trim();
    let bad = |reason: &str| Error::Parse {
        spec: s.to_string(),
        reason: reason.to_string(),
    };
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad("bad numerator"))?;
        let q: BigInt = q.trim().parse().map_err(|_| bad("bad denominator"))?;
        if q.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad("bad decimal"));
        }
        let negative = int.starts_with('-');
        let int_part: BigInt = match int {
            "" | "-" | "+" => BigInt::zero(),
            _ => int.parse().map_err(|_| bad("bad integer part"))?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part: BigInt = frac.parse().map_err(|_| bad("bad fraction"))?;
        let magnitude = Rational::new(int_part.abs() * &scale + frac_part, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let p: BigInt = s.parse().map_err(|_| bad("not a rational"))?;
    Ok(Rational::new(p, BigInt::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals() {
        let r = |p: i64, q: i64| Rational::new(p.into(), q.into());
        assert_eq!(parse_rational("1/3").unwrap(), r(1, 3));
        assert_eq!(parse_rational("2/4").unwrap(), r(1, 2));
        assert_eq!(parse_rational("0").unwrap(), r(0, 1));
        assert_eq!(parse_rational("0.25").unwrap(), r(1, 4));
        assert_eq!(parse_rational("-.5").unwrap(), r(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
