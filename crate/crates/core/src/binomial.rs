//! Exact binomial coefficients built by Pascal's recurrence.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rows `0..=max_n` of Pascal's triangle.
#[derive(Debug, Clone)]
pub struct PascalTable {
    rows: Vec<Vec<BigInt>>,
}

impl PascalTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        PascalTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(n, k)`, zero when `k > n`. Panics if `n` exceeds the table.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.rows[n].get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }
}

/// `C(p, l)` over all integers with `C(p, l) = 0` whenever `l < 0` or `p < l`.
///
/// Negative `p` with `l >= 0` never arises under that convention except when
/// `p < l`, so it is zero as well.
pub fn binomial(p: i64, l: i64) -> BigInt {
    if l < 0 || p < l {
        return BigInt::zero();
    }
    let p = p as usize;
    let l = l as usize;
    let l = l.min(p - l);
    // Walk the Pascal recurrence along a single diagonal band.
    let mut row = vec![BigInt::zero(); l + 1];
    row[0] = BigInt::one();
    for i in 1..=p {
        for j in (1..=l.min(i)).rev() {
            let left = row[j - 1].clone();
            row[j] += left;
        }
    }
    row[l].clone()
}
