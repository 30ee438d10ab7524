//! A binomial determinant identity and the helper identity behind it,
//! checked in exact big-integer arithmetic.
//!
//! For `n >= 2k + 1`, the `(k+1) x (k+1)` matrix with entries
//! `C(n - r, k + 1 + c)` has determinant
//!
//! ```text
//! (-1)^{k(k+5)/2} · Π_{i=k+1}^{2k+1} C(n, i) / Π_{i=1}^{k} C(n, i)
//! ```
//!
//! which in particular never vanishes.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binomial::{binomial, PascalTable};
use crate::error::{Error, Result};
use crate::Rational;

/// The matrix `M[r][c] = C(n - r, k + 1 + c)`, `0 <= r, c <= k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomMatrix {
    pub n: usize,
    pub k: usize,
    pub entries: Vec<Vec<BigInt>>,
}

fn check_range(n: usize, k: usize) -> Result<()> {
    if n < 2 * k + 1 {
        return Err(Error::Parameter(format!(
            "the determinant identity needs n >= 2k + 1, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

impl BinomMatrix {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_range(n, k)?;
        let table = PascalTable::new(n);
        let entries = (0..=k)
            .map(|r| (0..=k).map(|c| table.get(n - r, k + 1 + c)).collect())
            .collect();
        Ok(BinomMatrix { n, k, entries })
    }

    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(self.entries.clone())
    }
}

/// Determinant of a square integer matrix by Bareiss fraction-free
/// elimination; every intermediate value is an exact minor.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let size = m.len();
    assert!(m.iter().all(|row| row.len() == size), "matrix must be square");
    if size == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for p in 0..size - 1 {
        if m[p][p].is_zero() {
            match (p + 1..size).find(|&r| !m[r][p].is_zero()) {
                Some(r) => {
                    m.swap(p, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in p + 1..size {
            for j in p + 1..size {
                let v = (&m[i][j] * &m[p][p] - &m[i][p] * &m[p][j]) / &prev;
                m[i][j] = v;
            }
            m[i][p] = BigInt::zero();
        }
        prev = m[p][p].clone();
    }
    sign * &m[size - 1][size - 1]
}

/// `(p + 1) · C(p, l) = (l + 1) · C(p + 1, l + 1)`, with `C(p, l) = 0`
/// whenever `l < 0` or `p < l`.
pub fn helper_identity(p: i64, l: i64) -> bool {
    BigInt::from(p + 1) * binomial(p, l) == BigInt::from(l + 1) * binomial(p + 1, l + 1)
}

/// The determinant of [`BinomMatrix`] `(n, k)`.
pub fn binom_det(n: usize, k: usize) -> Result<Rational> {
    Ok(Rational::from_integer(BinomMatrix::new(n, k)?.determinant()))
}

/// The closed form of the determinant.
pub fn binom_det_closed(n: usize, k: usize) -> Result<Rational> {
    check_range(n, k)?;
    let table = PascalTable::new(n);
    let numerator: BigInt = (k + 1..=2 * k + 1).map(|i| table.get(n, i)).product();
    let denominator: BigInt = (1..=k).map(|i| table.get(n, i)).product();
    let value = Rational::new(numerator, denominator);
    Ok(if (k * (k + 5) / 2) % 2 == 1 { -value } else { value })
}

/// Whether the determinant equals its closed form.
pub fn check_identity(n: usize, k: usize) -> Result<bool> {
    Ok(binom_det(n, k)? == binom_det_closed(n, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn examples() {
        assert_eq!(binom_det(6, 1).unwrap(), int(-50));
        assert_eq!(binom_det_closed(6, 1).unwrap(), int(-50));
        assert_eq!(binom_det(4, 0).unwrap(), int(4));
        assert_eq!(binom_det_closed(4, 0).unwrap(), int(4));
        assert!(check_identity(12, 3).unwrap());
        assert!(!binom_det(12, 3).unwrap().is_zero());
        assert!(check_identity(25, 5).unwrap());
        assert!(binom_det(4, 2).is_err());
        assert!(binom_det_closed(4, 2).is_err());
    }

    #[test]
    fn sign_for_k_two_is_negative() {
        assert!(binom_det_closed(9, 2).unwrap() < int(0));
    }

    #[test]
    fn helper_examples() {
        assert!(helper_identity(5, 2));
        assert!(helper_identity(3, 5));
        assert!(helper_identity(4, -1));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        fn cofactor(m: &[Vec<BigInt>]) -> BigInt {
            if m.len() == 1 {
                return m[0][0].clone();
            }
            let mut total = BigInt::zero();
            for c in 0..m.len() {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != c)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][c] * cofactor(&minor);
                total += if c % 2 == 0 { term } else { -term };
            }
            total
        }
        let rows: Vec<Vec<BigInt>> = vec![
            vec![0.into(), 2.into(), 1.into(), 3.into()],
            vec![4.into(), 0.into(), (-1).into(), 2.into()],
            vec![1.into(), 1.into(), 0.into(), 0.into()],
            vec![2.into(), (-3).into(), 5.into(), 1.into()],
        ];
        assert_eq!(bareiss_determinant(rows.clone()), cofactor(&rows));
        for n in 3..=12 {
            for k in 0..=(n - 1) / 2 {
                let m = BinomMatrix::new(n, k).unwrap();
                assert_eq!(m.determinant(), cofactor(&m.entries), "n = {n}, k = {k}");
            }
        }
    }
}
