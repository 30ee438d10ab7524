//! Deterministic query complexity `D(f)` of symmetric partial functions.
//!
//! For a symmetric promise, which index is queried next does not matter:
//! an adversary answering by counts sees the same game from every
//! unqueried position. So the decision-tree game reduces to the pair
//! `(a, b)` of 1-answers and 0-answers seen so far.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::symfun::{SymPartialFn, MAX_ENUMERATION_N};

/// `a` ones and `b` zeros answered so far.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QueryGameState {
    pub a: usize,
    pub b: usize,
}

impl QueryGameState {
    /// Promised weights still consistent with the answers: `a <= w <= n - b`.
    pub fn consistent_weights(&self, f: &SymPartialFn) -> Vec<usize> {
        let n = f.n();
        f.domain_weights()
            .into_iter()
            .filter(|&w| self.a <= w && w + self.b <= n)
            .collect()
    }

    /// Whether the answers already determine `f(x)` on every consistent promised input.
    pub fn is_decided(&self, f: &SymPartialFn) -> bool {
        let mut values = self
            .consistent_weights(f)
            .into_iter()
            .filter_map(|w| f.at(w).bit());
        match values.next() {
            None => true,
            Some(first) => values.all(|v| v == first),
        }
    }
}

/// `D(f)`: the worst-case number of queries of an optimal deterministic
/// decision tree that is correct on the promise.
pub fn d_complexity(f: &SymPartialFn) -> Result<usize> {
    if f.n() > MAX_ENUMERATION_N {
        return Err(Error::TooLarge {
            n: f.n(),
            cap: MAX_ENUMERATION_N,
        });
    }
    let mut memo = HashMap::new();
    Ok(cost(f, QueryGameState { a: 0, b: 0 }, &mut memo))
}

fn cost(f: &SymPartialFn, s: QueryGameState, memo: &mut HashMap<QueryGameState, usize>) -> usize {
    if let Some(&c) = memo.get(&s) {
        return c;
    }
    let c = if s.is_decided(f) {
        0
    } else {
        let one = cost(f, QueryGameState { a: s.a + 1, ..s }, memo);
        let zero = cost(f, QueryGameState { b: s.b + 1, ..s }, memo);
        1 + one.max(zero)
    };
    memo.insert(s, c);
    c
}
