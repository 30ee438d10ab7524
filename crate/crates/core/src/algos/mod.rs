//! Exact query algorithms as branch-enumerating procedures over [`crate::qsim`].
//!
//! Every intermediate measurement is expanded into all outcomes with
//! probability above [`PRUNE_TOL`](crate::qsim::PRUNE_TOL), so a run is the
//! complete list of leaves of the algorithm's outcome tree. Oracle calls
//! inside Xquery or one-iteration Grover search cost one query each, as
//! does every classical read `x_i`, including reads of padded positions.

mod explorer;
mod verify;

use std::fmt;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::symfun::{
    family_dj, family_dw, family_f1, family_f2, family_f3, family_f4, Isomorph, SymPartialFn,
};

pub use verify::{verify_exact, Failure, VerificationReport};

/// A position seen by a subroutine: an original input bit, or a constant
/// bit appended by padding (`slot` is its 1-based index in the padded
/// instance).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pos {
    Input(usize),
    Pad { slot: usize, value: bool },
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pos::Input(i) => write!(f, "{i}"),
            Pos::Pad { slot, value } => write!(f, "pad{slot}={}", u8::from(*value)),
        }
    }
}

/// One measured outcome or classical read along a branch.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// Xquery on `m` bits; `None` is the `(0,0)` outcome.
    Xquery { m: usize, pair: Option<(Pos, Pos)> },
    /// One-iteration Grover search on `n` bits returned `index`.
    Grover { n: usize, index: Pos },
    /// Classical read; `bit` is the value the subroutine saw (after any
    /// input negation applied by a reduction).
    Query { pos: Pos, bit: bool },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Xquery { m, pair: None } => write!(f, "X{m}(0,0)"),
            Step::Xquery { m, pair: Some((i, j)) } => write!(f, "X{m}({i},{j})"),
            Step::Grover { n, index } => write!(f, "G{n}[{index}]"),
            Step::Query { pos, bit } => write!(f, "x{pos}={}", u8::from(*bit)),
        }
    }
}

/// What a branch returns: a bit, an Xquery outcome (`(0,0)` or a pair
/// `i < j`), or a Grover index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Output {
    Bit(bool),
    Pair(usize, usize),
    Index(usize),
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Output::Bit(b) => write!(f, "{}", u8::from(*b)),
            Output::Pair(i, j) => write!(f, "({i},{j})"),
            Output::Index(i) => write!(f, "{i}"),
        }
    }
}

/// One leaf of the outcome tree.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchTrace {
    pub path: Vec<Step>,
    pub probability: f64,
    pub output: Output,
    pub queries: usize,
}

/// Every branch of one algorithm run on one input, in basis-index order.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmRun {
    pub input: BitString,
    pub branches: Vec<BranchTrace>,
}

impl AlgorithmRun {
    pub fn total_probability(&self) -> f64 {
        self.branches.iter().map(|b| b.probability).sum()
    }

    pub fn max_queries(&self) -> usize {
        self.branches.iter().map(|b| b.queries).max().unwrap_or(0)
    }

    /// The output if every branch agrees on it.
    pub fn certain_output(&self) -> Option<Output> {
        let first = self.branches.first()?.output;
        self.branches.iter().all(|b| b.output == first).then_some(first)
    }
}

/// How [`Algorithm::Dw`] reduces its instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DwRoute {
    /// Pad zeros and ones to reach weights `N/4` and `3N/4` on `N = 2(l-k)` bits, then run `dw1`.
    Balanced { zeros: usize, ones: usize },
    /// `k = 0`: pad zeros up to `4l` bits, then run `dw2`.
    FromZero { zeros: usize },
}

/// Picks the two-query reduction for `DW_n^{k,l}`, if one applies.
pub fn dw_route(n: usize, k: usize, l: usize) -> Result<DwRoute> {
    let unsupported = Error::Unsupported { n, k, l };
    if !(k < l && l <= n) {
        return Err(unsupported);
    }
    if k > 0 {
        let ok = 3 * k < n && 3 * l >= 2 * n + k && l >= 3 * k && (l - k) % 2 == 0;
        if ok {
            return Ok(DwRoute::Balanced {
                zeros: (3 * l - k) / 2 - n,
                ones: (l - 3 * k) / 2,
            });
        }
        return Err(unsupported);
    }
    if 4 * l >= n && l < n / 2 {
        return Ok(DwRoute::FromZero { zeros: 4 * l - n });
    }
    Err(unsupported)
}

/// An algorithm together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// One query; outputs `(0,0)` only if `|x| != m/2`, else a pair with `x_i != x_j`.
    Xquery { m: usize },
    /// Generalized Deutsch–Jozsa with `k + 1` queries.
    Dj { n: usize, k: usize },
    /// `F1(n, k)` for `k >= ⌈n/2⌉` in one query, by padding to `2k` bits.
    Dhw { n: usize, k: usize },
    /// `F1(n, ⌊n/2⌋)` for odd `n`, two queries.
    F1 { n: usize },
    /// `F3(n, ⌈n/2⌉)` for odd `n`, two queries.
    F3 { n: usize },
    /// One Grover iteration from the uniform state; outputs an index.
    Grover1 { n: usize },
    /// `DW_n^{n/4, 3n/4}`, two queries.
    Dw1 { n: usize },
    /// `DW_n^{0, n/4}`, two queries.
    Dw2 { n: usize },
    /// `DW_n^{k,l}` through a padding reduction to `dw1` or `dw2`.
    Dw { n: usize, k: usize, l: usize },
    /// `F2(n, k)` for `n/4 <= k < n`, at most four queries.
    F2 { n: usize, k: usize },
    /// `F4(n)` for odd `n >= 5`, at most five queries.
    F4 { n: usize },
    /// `inner` run on the negated input and/or with negated output; it
    /// computes `inner.promise().transformed(iso)` with the same queries.
    Transformed { inner: Box<Algorithm>, iso: Isomorph },
}

/// Names accepted by [`Algorithm::from_id`].
pub const ALGORITHM_IDS: [&str; 11] = [
    "xquery", "dj", "dhw", "f1", "f3", "grover1", "dw1", "dw2", "dw", "f2", "f4",
];

impl Algorithm {
    /// Builds and validates an algorithm from its identifier and the
    /// parameters it uses (`m` is passed as `n` for `xquery`).
    pub fn from_id(id: &str, n: usize, k: Option<usize>, l: Option<usize>) -> Result<Self> {
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| Error::Parameter(format!("algorithm `{id}` needs --{name}")))
        };
        let alg = match id.to_ascii_lowercase().as_str() {
            "xquery" => Algorithm::Xquery { m: n },
            "dj" => Algorithm::Dj { n, k: need(k, "k")? },
            "dhw" => Algorithm::Dhw { n, k: need(k, "k")? },
            "f1" => Algorithm::F1 { n },
            "f3" => Algorithm::F3 { n },
            "grover1" => Algorithm::Grover1 { n },
            "dw1" => Algorithm::Dw1 { n },
            "dw2" => Algorithm::Dw2 { n },
            "dw" => Algorithm::Dw { n, k: need(k, "k")?, l: need(l, "l")? },
            "f2" => Algorithm::F2 { n, k: need(k, "k")? },
            "f4" => Algorithm::F4 { n },
            other => {
                return Err(Error::Parameter(format!(
                    "unknown algorithm `{other}` (expected one of {})",
                    ALGORITHM_IDS.join(", ")
                )))
            }
        };
        alg.validate()?;
        Ok(alg)
    }

    /// Wraps `self` in the isomorphism transform `iso`.
    pub fn transformed(self, iso: Isomorph) -> Self {
        Algorithm::Transformed { inner: Box::new(self), iso }
    }

    /// Input length.
    pub fn n(&self) -> usize {
        match self {
            Algorithm::Xquery { m } => *m,
            Algorithm::Dj { n, .. }
            | Algorithm::Dhw { n, .. }
            | Algorithm::F1 { n }
            | Algorithm::F3 { n }
            | Algorithm::Grover1 { n }
            | Algorithm::Dw1 { n }
            | Algorithm::Dw2 { n }
            | Algorithm::Dw { n, .. }
            | Algorithm::F2 { n, .. }
            | Algorithm::F4 { n } => *n,
            Algorithm::Transformed { inner, .. } => inner.n(),
        }
    }

    /// Worst-case number of queries the construction promises.
    pub fn query_budget(&self) -> usize {
        match self {
            Algorithm::Xquery { .. } | Algorithm::Dhw { .. } | Algorithm::Grover1 { .. } => 1,
            Algorithm::Dj { k, .. } => k + 1,
            Algorithm::F1 { .. }
            | Algorithm::F3 { .. }
            | Algorithm::Dw1 { .. }
            | Algorithm::Dw2 { .. }
            | Algorithm::Dw { .. } => 2,
            Algorithm::F2 { .. } => 4,
            Algorithm::F4 { .. } => 5,
            Algorithm::Transformed { inner, .. } => inner.query_budget(),
        }
    }

    /// Whether branches output bits (as opposed to pairs or indices).
    pub fn outputs_bits(&self) -> bool {
        match self {
            Algorithm::Xquery { .. } | Algorithm::Grover1 { .. } => false,
            Algorithm::Transformed { inner, .. } => inner.outputs_bits(),
            _ => true,
        }
    }

    /// Checks parameter ranges.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Parameter(msg));
        match *self {
            Algorithm::Xquery { m } if m == 0 => bad("xquery needs m >= 1".into()),
            Algorithm::Dj { n, k } if n == 0 || n % 2 == 1 || k >= n / 2 => {
                bad(format!("dj needs even n > 0 and k < n/2, got n = {n}, k = {k}"))
            }
            Algorithm::Dhw { n, k } if n == 0 || k < n.div_ceil(2) || k > n => {
                bad(format!("dhw needs ⌈n/2⌉ <= k <= n, got n = {n}, k = {k}"))
            }
            Algorithm::F1 { n } | Algorithm::F3 { n } if n < 3 || n % 2 == 0 => {
                bad(format!("f1/f3 need odd n >= 3, got n = {n}"))
            }
            Algorithm::Grover1 { n } if n == 0 => bad("grover1 needs n >= 1".into()),
            Algorithm::Dw1 { n } | Algorithm::Dw2 { n } if n == 0 || n % 4 != 0 => {
                bad(format!("dw1/dw2 need n divisible by 4, got n = {n}"))
            }
            Algorithm::Dw { n, k, l } => dw_route(n, k, l).map(|_| ()),
            Algorithm::F2 { n, k } if k == 0 || k >= n || 4 * k < n => {
                bad(format!("f2 needs n/4 <= k < n, got n = {n}, k = {k}"))
            }
            Algorithm::F4 { n } if n < 5 || n % 2 == 0 => {
                bad(format!("f4 needs odd n >= 5, got n = {n}"))
            }
            Algorithm::Transformed { ref inner, .. } => {
                if !inner.outputs_bits() {
                    return bad("only bit-valued algorithms can be transformed".into());
                }
                inner.validate()
            }
            _ => Ok(()),
        }
    }

    /// The function a bit-valued algorithm computes, `None` for `xquery`
    /// and `grover1`.
    pub fn promise(&self) -> Result<Option<SymPartialFn>> {
        self.validate()?;
        Ok(Some(match *self {
            Algorithm::Xquery { .. } | Algorithm::Grover1 { .. } => return Ok(None),
            Algorithm::Dj { n, k } => family_dj(n, k)?,
            Algorithm::Dhw { n, k } => family_f1(n, k)?,
            Algorithm::F1 { n } => family_f1(n, n / 2)?,
            Algorithm::F3 { n } => family_f3(n, n.div_ceil(2))?,
            Algorithm::Dw1 { n } => family_dw(n, n / 4, 3 * n / 4)?,
            Algorithm::Dw2 { n } => family_dw(n, 0, n / 4)?,
            Algorithm::Dw { n, k, l } => family_dw(n, k, l)?,
            Algorithm::F2 { n, k } => family_f2(n, k)?,
            Algorithm::F4 { n } => family_f4(n)?,
            Algorithm::Transformed { ref inner, iso } => inner
                .promise()?
                .expect("validated as bit-valued")
                .transformed(iso),
        }))
    }

    /// Whether an output of a contract algorithm (`xquery`, `grover1`) is
    /// allowed on input `x`. Bit-valued algorithms are checked against a
    /// function instead and always return `true` here.
    pub fn contract_holds(&self, x: &BitString, output: Output) -> bool {
        let t = x.weight();
        match (self, output) {
            (Algorithm::Xquery { m }, Output::Pair(0, 0)) => 2 * t != *m,
            (Algorithm::Xquery { .. }, Output::Pair(i, j)) => {
                i < j && j <= x.len() && x.bit(i) != x.bit(j)
            }
            (Algorithm::Grover1 { n }, Output::Index(i)) => {
                if 4 * t == *n {
                    x.bit(i)
                } else if 4 * t == 3 * n {
                    !x.bit(i)
                } else {
                    true
                }
            }
            (Algorithm::Xquery { .. } | Algorithm::Grover1 { .. }, _) => false,
            _ => true,
        }
    }

    /// The weights on which the contract of `xquery`/`grover1` says
    /// something; the function's promise for the others.
    pub fn default_domain(&self) -> Result<SymPartialFn> {
        use crate::symfun::FnValue;
        if let Some(f) = self.promise()? {
            return Ok(f);
        }
        let n = self.n();
        let values = match *self {
            Algorithm::Grover1 { n } if n % 4 == 0 => (0..=n)
                .map(|w| {
                    if 4 * w == n {
                        FnValue::One
                    } else if 4 * w == 3 * n {
                        FnValue::Zero
                    } else {
                        FnValue::Undefined
                    }
                })
                .collect(),
            // Every input carries a contract; the values are placeholders.
            _ => (0..=n)
                .map(|w| FnValue::from_bit(2 * w != n))
                .collect(),
        };
        SymPartialFn::new(values)
    }

    /// Every branch on input `x`, with full outcome paths. Inputs outside
    /// the promise are accepted; what the algorithm returns on them is not
    /// constrained.
    pub fn run(&self, x: &BitString) -> Result<AlgorithmRun> {
        self.validate()?;
        if x.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: x.len(),
            });
        }
        let branches = explorer::Explorer::new(true).run(self, x)?;
        Ok(AlgorithmRun {
            input: x.clone(),
            branches,
        })
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Xquery { m } => write!(f, "xquery(m={m})"),
            Algorithm::Dj { n, k } => write!(f, "dj(n={n},k={k})"),
            Algorithm::Dhw { n, k } => write!(f, "dhw(n={n},k={k})"),
            Algorithm::F1 { n } => write!(f, "f1(n={n})"),
            Algorithm::F3 { n } => write!(f, "f3(n={n})"),
            Algorithm::Grover1 { n } => write!(f, "grover1(n={n})"),
            Algorithm::Dw1 { n } => write!(f, "dw1(n={n})"),
            Algorithm::Dw2 { n } => write!(f, "dw2(n={n})"),
            Algorithm::Dw { n, k, l } => write!(f, "dw(n={n},k={k},l={l})"),
            Algorithm::F2 { n, k } => write!(f, "f2(n={n},k={k})"),
            Algorithm::F4 { n } => write!(f, "f4(n={n})"),
            Algorithm::Transformed { inner, iso } => write!(f, "{iso}[{inner}]"),
        }
    }
}
