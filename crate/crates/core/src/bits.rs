use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An oracle input `x = x_1 ... x_n`.
///
/// Positions are 1-based in the public API to match the query model, where
/// index 0 of the query register is the non-querying slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn zeros(n: usize) -> Self {
        BitString(vec![false; n])
    }

    /// Builds the `n`-bit string whose first bit is the most significant bit of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        BitString((0..n).map(|i| (mask >> (n - 1 - i)) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Hamming weight `|x|`.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Bit `x_i` for `1 <= i <= n`.
    pub fn bit(&self, i: usize) -> bool {
        self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    pub fn complemented(&self) -> Self {
        BitString(self.0.iter().map(|b| !b).collect())
    }

    /// `x` with the 1-based positions in `drop` removed.
    pub fn without(&self, drop: &[usize]) -> Self {
        BitString(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| !drop.contains(&(i + 1)))
                .map(|(_, &b)| b)
                .collect(),
        )
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        BitString(bits)
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse {
                    spec: s.to_string(),
                    reason: format!("invalid bit `{c}`"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let x: BitString = "01101".parse().unwrap();
        assert_eq!(x.len(), 5);
        assert_eq!(x.weight(), 3);
        assert!(x.bit(2) && !x.bit(1));
        assert_eq!(x.to_string(), "01101");
        assert!("0121".parse::<BitString>().is_err());
    }

    #[test]
    fn mask_order_is_lexicographic() {
        assert_eq!(BitString::from_mask(3, 0b001).to_string(), "001");
        assert_eq!(BitString::from_mask(3, 0b100).to_string(), "100");
    }

    #[test]
    fn without_drops_positions() {
        let x: BitString = "110100".parse().unwrap();
        assert_eq!(x.without(&[1, 3]).to_string(), "1100");
        assert_eq!(x.without(&[2, 3]).to_string(), "1100");
    }
}
