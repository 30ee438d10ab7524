//! Exact and approximate polynomial degree of symmetric partial functions.
//!
//! A symmetric polynomial of degree `d` that approximates `f` can always be
//! written in the elementary basis `q(x) = Σ_k c_k V_k`, where on an input of
//! Hamming weight `w`, `V_k = C(w, k)`. Deciding whether such a `q` exists is
//! therefore a linear feasibility problem in the `d + 1` coefficients, one
//! pair of bounds per weight:
//!
//! | `b_w` | constraint on `q(w)` |
//! |-------|----------------------|
//! | `0`   | `0 <= q(w) <= eps`   |
//! | `1`   | `1 - eps <= q(w) <= 1` |
//! | `*`   | `0 <= q(w) <= 1`     |
//!
//! [`lp_feasible`] solves the system directly with a phase-one simplex.
//! The reference formulation instead writes the bounds as `A c <= h` and
//! solves `max Z s.t. A c + e Z <= h, Z <= 0`; the system is feasible iff the
//! optimum is `Z* = 0`. That route is kept as [`feasible_by_max_z`] and used
//! to cross-check verdicts.

pub mod simplex;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::binomial::PascalTable;
use crate::error::{Error, Result};
use crate::symfun::{
    family_f1, family_f2, family_f3, family_f4, Classification, FamilyTag, FnValue, Isomorph,
    SymPartialFn,
};
use crate::Rational;
use simplex::{Constraint, LinearProgram, LpOutcome, Relation, VarDomain};

/// A symmetric polynomial `c_0 + c_1 V_1 + ... + c_d V_d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyV {
    coeffs: Vec<Rational>,
}

impl PolyV {
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a V-basis polynomial needs at least c_0");
        PolyV { coeffs }
    }

    /// Nominal degree `d` (the number of coefficients minus one).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `q(w) = Σ_k c_k C(w, k)`.
    pub fn eval_at_weight(&self, w: usize) -> Rational {
        let table = PascalTable::new(w);
        self.eval_with(&table, w)
    }

    fn eval_with(&self, table: &PascalTable, w: usize) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .take(w + 1)
            .fold(Rational::zero(), |acc, (k, c)| {
                acc + c * Rational::from_integer(table.get(w, k))
            })
    }

    /// The unique polynomial of degree `values.len() - 1` with `q(w) = values[w]`.
    ///
    /// In the V-basis the coefficients are the forward differences at zero,
    /// `c_k = Δ^k q(0)`.
    pub fn interpolate(values: &[Rational]) -> Self {
        assert!(!values.is_empty());
        let mut diffs = values.to_vec();
        let mut coeffs = Vec::with_capacity(values.len());
        for _ in 0..values.len() {
            coeffs.push(diffs[0].clone());
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        PolyV { coeffs }
    }

    /// `1 - q`, the witness for the complemented function.
    pub fn complement(&self) -> Self {
        let mut coeffs: Vec<Rational> = self.coeffs.iter().map(|c| -c).collect();
        coeffs[0] += Rational::one();
        PolyV { coeffs }
    }

    /// `w ↦ q(n - w)` re-expanded in the V-basis, the witness for the
    /// reversed function. The degree is unchanged.
    pub fn reflect(&self, n: usize) -> Self {
        let d = self.degree();
        assert!(d <= n, "reflecting a degree-{d} polynomial about n = {n}");
        let table = PascalTable::new(n);
        let values: Vec<Rational> = (0..=d).map(|w| self.eval_with(&table, n - w)).collect();
        Self::interpolate(&values)
    }

    /// The same polynomial with zero coefficients appended up to degree `d`.
    pub fn extended(&self, d: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < d + 1 {
            coeffs.resize(d + 1, Rational::zero());
        }
        PolyV { coeffs }
    }
}

impl fmt::Display for PolyV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Verdict of [`lp_feasible`]; `witness` is present exactly when feasible.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityResult {
    pub feasible: bool,
    pub witness: Option<PolyV>,
}

impl FeasibilityResult {
    fn infeasible() -> Self {
        FeasibilityResult {
            feasible: false,
            witness: None,
        }
    }
}

fn check_eps(eps: &Rational) -> Result<()> {
    if eps.is_negative() || *eps >= Rational::new(1.into(), 2.into()) {
        return Err(Error::Epsilon(eps.to_string()));
    }
    Ok(())
}

/// `(lower, upper)` bounds on `q(w)` for the entry `b_w`.
fn bounds(value: FnValue, eps: &Rational) -> (Rational, Rational) {
    match value {
        FnValue::Zero => (Rational::zero(), eps.clone()),
        FnValue::One => (Rational::one() - eps, Rational::one()),
        FnValue::Undefined => (Rational::zero(), Rational::one()),
    }
}

/// Whether `q` approximates `f` with error `eps`: `q(w) ∈ [0, 1]` at every
/// weight, within `eps` of `b_w` where defined.
pub fn check_representation(q: &PolyV, f: &SymPartialFn, eps: &Rational) -> Result<bool> {
    check_eps(eps)?;
    let n = f.n();
    let table = PascalTable::new(n);
    Ok((0..=n).all(|w| {
        let (lo, hi) = bounds(f.at(w), eps);
        let v = q.eval_with(&table, w);
        lo <= v && v <= hi
    }))
}

fn bound_rows(f: &SymPartialFn, d: usize) -> Vec<Vec<Rational>> {
    let table = PascalTable::new(f.n());
    (0..=f.n())
        .map(|w| {
            (0..=d)
                .map(|k| Rational::from_integer(table.get(w, k)))
                .collect()
        })
        .collect()
}

fn check_degree(f: &SymPartialFn, d: usize) -> Result<()> {
    if d > f.n() {
        return Err(Error::Parameter(format!(
            "degree {d} exceeds n = {}",
            f.n()
        )));
    }
    Ok(())
}

/// Decides whether some `q = Σ_{k<=d} c_k V_k` approximates `f` with error
/// `eps`, returning a witness when one exists.
pub fn lp_feasible(f: &SymPartialFn, eps: &Rational, d: usize) -> Result<FeasibilityResult> {
    check_eps(eps)?;
    check_degree(f, d)?;
    let mut lp = LinearProgram::new(vec![VarDomain::Free; d + 1]);
    for (w, row) in bound_rows(f, d).into_iter().enumerate() {
        let (lo, hi) = bounds(f.at(w), eps);
        if lo == hi {
            lp.add(Constraint::new(row, Relation::Eq, lo));
        } else {
            lp.add(Constraint::new(row.clone(), Relation::Ge, lo));
            lp.add(Constraint::new(row, Relation::Le, hi));
        }
    }
    Ok(match lp.feasible_point() {
        Some(coeffs) => {
            let witness = PolyV::new(coeffs);
            debug_assert!(check_representation(&witness, f, eps).unwrap_or(false));
            FeasibilityResult {
                feasible: true,
                witness: Some(witness),
            }
        }
        None => FeasibilityResult::infeasible(),
    })
}

/// The same verdict as [`lp_feasible`], reached through the `max Z`
/// reformulation.
pub fn feasible_by_max_z(f: &SymPartialFn, eps: &Rational, d: usize) -> Result<bool> {
    check_eps(eps)?;
    check_degree(f, d)?;
    // Variables: c_0..c_d (free) then Z (free, bounded above by 0).
    let mut lp = LinearProgram::new(vec![VarDomain::Free; d + 2]);
    for (w, row) in bound_rows(f, d).into_iter().enumerate() {
        let (lo, hi) = bounds(f.at(w), eps);
        let mut upper = row.clone();
        upper.push(Rational::one());
        lp.add(Constraint::new(upper, Relation::Le, hi));
        let mut lower: Vec<Rational> = row.into_iter().map(|a| -a).collect();
        lower.push(Rational::one());
        lp.add(Constraint::new(lower, Relation::Le, -lo));
    }
    let mut z_cap = vec![Rational::zero(); d + 1];
    z_cap.push(Rational::one());
    lp.add(Constraint::new(z_cap.clone(), Relation::Le, Rational::zero()));
    match lp.maximize(&z_cap) {
        LpOutcome::Optimal { value, .. } => Ok(value.is_zero()),
        // Z -> -inf always satisfies the rows, and Z <= 0 bounds the objective.
        LpOutcome::Infeasible | LpOutcome::Unbounded => {
            unreachable!("max-Z program is always feasible and bounded")
        }
    }
}

/// The approximate degree `deg_eps(f)`, by binary search over `d ∈ [0, n]`.
pub fn degree(f: &SymPartialFn, eps: &Rational) -> Result<usize> {
    Ok(degree_with_witness(f, eps)?.0)
}

/// [`degree`] together with a witness polynomial of that degree.
pub fn degree_with_witness(f: &SymPartialFn, eps: &Rational) -> Result<(usize, PolyV)> {
    check_eps(eps)?;
    let mut lo: isize = 0;
    let mut hi: isize = f.n() as isize;
    let mut witness: Option<PolyV> = None;
    while lo <= hi {
        let mid = (lo + hi) / 2;
        let result = lp_feasible(f, eps, mid as usize)?;
        if result.feasible {
            witness = result.witness;
            hi = mid - 1;
        } else {
            lo = mid + 1;
        }
    }
    let d = lo as usize;
    // Degree n is always feasible (interpolate b_w, * ↦ 0), so the search
    // ends with a witness at d.
    let witness = match witness {
        Some(w) if w.degree() == d => w,
        _ => lp_feasible(f, eps, d)?
            .witness
            .expect("binary search ends on a feasible degree"),
    };
    Ok((d, witness))
}

/// `⌈deg_0(f) / 2⌉`, the polynomial-method lower bound on exact quantum
/// query complexity.
pub fn qe_lower_bound(f: &SymPartialFn) -> Result<usize> {
    Ok(degree(f, &Rational::zero())?.div_ceil(2))
}

/// Matches `f` against the complete list of exact-degree <= 2 shapes, up to
/// isomorphism.
///
/// Returns `None` when `f` matches none of them (its exact degree is then
/// at least 3).
pub fn classify_deg2(f: &SymPartialFn) -> Result<Option<Classification>> {
    let n = f.n();
    if n <= 1 {
        return Err(Error::Parameter(format!("classification needs n > 1, got {n}")));
    }
    if f.is_constant_compatible() {
        return Ok(Some(Classification {
            family: FamilyTag::ConstantOrEmpty,
            transform: Isomorph::Identity,
        }));
    }

    let mut candidates: Vec<(FamilyTag, SymPartialFn)> = vec![(FamilyTag::Deg1F1nn, family_f1(n, n)?)];
    let lo = n / 2;
    for k in lo.max(1)..n {
        candidates.push((FamilyTag::F1 { k }, family_f1(n, k)?));
    }
    for k in lo.max(1)..n {
        candidates.push((FamilyTag::F2 { k }, family_f2(n, k)?));
    }
    for l in lo.max(1)..=n.div_ceil(2).min(n - 1) {
        candidates.push((FamilyTag::F3 { l }, family_f3(n, l)?));
    }
    // For even n this equals F3 at l = n/2, which is already listed.
    if n % 2 == 1 {
        candidates.push((FamilyTag::F4, family_f4(n)?));
    }

    for (family, representative) in &candidates {
        for iso in Isomorph::ALL {
            if f.transformed(iso) == *representative {
                return Ok(Some(Classification {
                    family: *family,
                    transform: iso,
                }));
            }
        }
    }
    Ok(None)
}
