use rayon::prelude::*;

use super::explorer::Explorer;
use super::{Algorithm, BranchTrace, Output};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::symfun::SymPartialFn;

/// At most this many failing inputs are kept with their branches.
pub const MAX_REPORTED_FAILURES: usize = 32;

/// A wrong branch on a promised input.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub input: BitString,
    pub branch: BranchTrace,
}

/// Outcome of running an algorithm on every promised input.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub algorithm: Algorithm,
    pub function: SymPartialFn,
    pub inputs_checked: usize,
    pub all_exact: bool,
    pub worst_case_queries: usize,
    pub query_budget: usize,
    /// Largest `|Σ_b p_b - 1|` over all inputs.
    pub max_probability_deviation: f64,
    /// Number of wrong branches over all inputs (after merging branches
    /// with equal output and query count).
    pub failure_count: usize,
    /// Wrong branches with full paths, for up to [`MAX_REPORTED_FAILURES`] inputs.
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn within_budget(&self) -> bool {
        self.worst_case_queries <= self.query_budget
    }

    /// Exact on every branch, within budget, and probability-conserving.
    pub fn holds(&self) -> bool {
        self.all_exact && self.within_budget() && self.max_probability_deviation <= 1e-9
    }
}

struct InputSummary {
    worst: usize,
    deviation: f64,
    wrong: usize,
}

fn branch_ok(alg: &Algorithm, f: &SymPartialFn, x: &BitString, output: Output) -> bool {
    match f.eval(x).ok().flatten() {
        Some(expected) if alg.outputs_bits() => output == Output::Bit(expected),
        _ => alg.contract_holds(x, output),
    }
}

/// Runs `alg` on every `x` in the domain of `f` and checks every branch
/// against `f(x)`; for `xquery` and `grover1` the values of `f` are ignored
/// and each branch is checked against the subroutine's contract.
///
/// Inputs are processed in parallel, each worker with its own caches.
pub fn verify_exact(alg: &Algorithm, f: &SymPartialFn) -> Result<VerificationReport> {
    alg.validate()?;
    if f.n() != alg.n() {
        return Err(Error::DomainMismatch(format!(
            "{alg} acts on {} bits but the function has n = {}",
            alg.n(),
            f.n()
        )));
    }
    if let Some(promise) = alg.promise()? {
        let allowed = promise.domain_weights();
        if let Some(w) = f.domain_weights().into_iter().find(|w| !allowed.contains(w)) {
            return Err(Error::DomainMismatch(format!(
                "weight {w} is in the domain of {f} but outside the promise {promise} of {alg}"
            )));
        }
    }

    let inputs: Vec<BitString> = f.domain_inputs()?.collect();
    let summaries: Vec<InputSummary> = inputs
        .par_iter()
        .map_init(
            || Explorer::new(false),
            |ex, x| -> Result<InputSummary> {
                let branches = ex.run(alg, x)?;
                let total: f64 = branches.iter().map(|b| b.probability).sum();
                Ok(InputSummary {
                    worst: branches.iter().map(|b| b.queries).max().unwrap_or(0),
                    deviation: (total - 1.0).abs(),
                    wrong: branches
                        .iter()
                        .filter(|b| !branch_ok(alg, f, x, b.output))
                        .count(),
                })
            },
        )
        .collect::<Result<_>>()?;

    let mut failures = Vec::new();
    let failing_inputs = inputs
        .iter()
        .zip(&summaries)
        .filter(|(_, s)| s.wrong > 0)
        .take(MAX_REPORTED_FAILURES);
    for (x, _) in failing_inputs {
        let run = alg.run(x)?;
        failures.extend(
            run.branches
                .into_iter()
                .filter(|b| !branch_ok(alg, f, x, b.output))
                .map(|branch| Failure {
                    input: x.clone(),
                    branch,
                }),
        );
    }

    let failure_count = summaries.iter().map(|s| s.wrong).sum();
    Ok(VerificationReport {
        algorithm: alg.clone(),
        function: f.clone(),
        inputs_checked: inputs.len(),
        all_exact: failure_count == 0,
        worst_case_queries: summaries.iter().map(|s| s.worst).max().unwrap_or(0),
        query_budget: alg.query_budget(),
        max_probability_deviation: summaries.iter().map(|s| s.deviation).fold(0.0, f64::max),
        failure_count,
        failures,
    })
}
