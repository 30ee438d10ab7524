//! State-vector simulation of the phase-oracle query model.
//!
//! States live on an explicit list of basis labels `|i, j⟩`. The oracle
//! `O_x` multiplies the amplitude of `|i, j⟩` by `(-1)^{x_i}` for `i >= 1`
//! and leaves `|0, j⟩` alone. Unitaries are dense complex matrices checked
//! for unitarity once, when they are built.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::Rational;

/// Tolerance for unitarity and normalization checks.
pub const UNITARY_TOL: f64 = 1e-9;
/// Outcomes with smaller probability are dropped by [`QState::measure`].
pub const PRUNE_TOL: f64 = 1e-12;

/// A basis label `(i, j)`: `i` is the query index, `j` the workspace index.
pub type Label = (usize, usize);

/// An ordered list of basis labels. Order fixes both the amplitude layout
/// and the order of measurement outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    n: usize,
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
}

impl Basis {
    /// A basis over arbitrary labels; `n` is the oracle input length and
    /// every query index must be at most `n`.
    pub fn new(n: usize, labels: Vec<Label>) -> Result<Arc<Self>> {
        let mut index = HashMap::with_capacity(labels.len());
        for (pos, &label) in labels.iter().enumerate() {
            if label.0 > n {
                return Err(Error::UnknownLabel(label.0, label.1));
            }
            if index.insert(label, pos).is_some() {
                return Err(Error::Parameter(format!("duplicate basis label {label:?}")));
            }
        }
        Ok(Arc::new(Basis { n, labels, index }))
    }

    /// The full grid `|i, j⟩`, `0 <= i <= n`, `1 <= j <= m`, ordered by `i` then `j`.
    pub fn grid(n: usize, m: usize) -> Arc<Self> {
        let labels = (0..=n).flat_map(|i| (1..=m).map(move |j| (i, j))).collect();
        Self::new(n, labels).expect("grid labels are distinct")
    }

    /// The Xquery basis on `m` bits: `|0,0⟩`, then `|i,0⟩` for `1 <= i <= m`,
    /// then `|i,j⟩` for `1 <= i < j <= m` in lexicographic order.
    pub fn xquery(m: usize) -> Arc<Self> {
        let mut labels = vec![(0, 0)];
        labels.extend((1..=m).map(|i| (i, 0)));
        for i in 1..=m {
            labels.extend((i + 1..=m).map(|j| (i, j)));
        }
        Self::new(m, labels).expect("xquery labels are distinct")
    }

    /// A bare index register `|i⟩`, `1 <= i <= n`, modelled as `|i, 1⟩`.
    pub fn index_register(n: usize) -> Arc<Self> {
        Self::new(n, (1..=n).map(|i| (i, 1)).collect()).expect("index labels are distinct")
    }

    /// Oracle input length.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn position(&self, label: Label) -> Result<usize> {
        self.index
            .get(&label)
            .copied()
            .ok_or(Error::UnknownLabel(label.0, label.1))
    }
}

/// A dense square matrix that has been checked to be unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    dim: usize,
    /// Row-major entries.
    data: Vec<Complex64>,
}

fn max_unitarity_deviation(dim: usize, data: &[Complex64]) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..dim {
        for b in a..dim {
            let mut dot = Complex64::zero();
            for r in 0..dim {
                dot += data[r * dim + a].conj() * data[r * dim + b];
            }
            let target = if a == b { Complex64::one() } else { Complex64::zero() };
            worst = worst.max((dot - target).norm());
        }
    }
    worst
}

impl Unitary {
    /// Validates `U† U = I` to within [`UNITARY_TOL`].
    pub fn new(dim: usize, row_major: Vec<Complex64>) -> Result<Self> {
        if row_major.len() != dim * dim {
            return Err(Error::LengthMismatch {
                expected: dim * dim,
                actual: row_major.len(),
            });
        }
        let max_deviation = max_unitarity_deviation(dim, &row_major);
        if !(max_deviation <= UNITARY_TOL) {
            return Err(Error::NotUnitary { max_deviation });
        }
        Ok(Unitary { dim, data: row_major })
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::zero(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::one();
        }
        Unitary { dim, data }
    }

    /// A unitary whose columns at the given indices are fixed; the remaining
    /// columns are filled in by Gram–Schmidt over the standard basis.
    ///
    /// Fails with [`Error::NotUnitary`] if the fixed columns are not
    /// orthonormal.
    pub fn complete(dim: usize, fixed: &[(usize, Vec<Complex64>)]) -> Result<Self> {
        let mut columns: Vec<Option<Vec<Complex64>>> = vec![None; dim];
        for (idx, col) in fixed {
            if col.len() != dim {
                return Err(Error::LengthMismatch {
                    expected: dim,
                    actual: col.len(),
                });
            }
            columns[*idx] = Some(col.clone());
        }
        let mut span: Vec<Vec<Complex64>> = fixed.iter().map(|(_, c)| c.clone()).collect();
        let mut candidates = 0..dim;
        for slot in columns.iter_mut().filter(|c| c.is_none()) {
            loop {
                let e = candidates
                    .next()
                    .ok_or(Error::NotUnitary { max_deviation: 1.0 })?;
                let mut v = vec![Complex64::zero(); dim];
                v[e] = Complex64::one();
                // Two passes of modified Gram–Schmidt keep the result
                // orthogonal to machine precision.
                for _ in 0..2 {
                    for u in &span {
                        let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                        for (vi, ui) in v.iter_mut().zip(u) {
                            *vi -= proj * ui;
                        }
                    }
                }
                let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                if norm > 1e-6 {
                    for a in &mut v {
                        *a /= norm;
                    }
                    span.push(v.clone());
                    *slot = Some(v);
                    break;
                }
            }
        }
        let mut data = vec![Complex64::zero(); dim * dim];
        for (c, col) in columns.into_iter().enumerate() {
            for (r, a) in col.expect("every column filled").into_iter().enumerate() {
                data[r * dim + c] = a;
            }
        }
        Self::new(dim, data)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    /// `U v`.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `self · other`, unchecked beyond dimensions (products of unitaries are unitary).
    pub fn compose(&self, other: &Unitary) -> Result<Unitary> {
        if self.dim != other.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        let d = self.dim;
        let mut data = vec![Complex64::zero(); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == Complex64::zero() {
                    continue;
                }
                for c in 0..d {
                    data[r * d + c] += a * other.data[k * d + c];
                }
            }
        }
        Ok(Unitary { dim: d, data })
    }

    pub fn scaled(&self, phase: Complex64) -> Unitary {
        Unitary {
            dim: self.dim,
            data: self.data.iter().map(|a| a * phase).collect(),
        }
    }

    pub fn adjoint(&self) -> Unitary {
        let d = self.dim;
        let mut data = vec![Complex64::zero(); d * d];
        for r in 0..d {
            for c in 0..d {
                data[c * d + r] = self.data[r * d + c].conj();
            }
        }
        Unitary { dim: d, data }
    }
}

/// A pure state over a [`Basis`].
#[derive(Debug, Clone)]
pub struct QState {
    basis: Arc<Basis>,
    amps: Vec<Complex64>,
}

impl QState {
    /// Checks the length and normalization of `amps`.
    pub fn new(basis: Arc<Basis>, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != basis.dim() {
            return Err(Error::LengthMismatch {
                expected: basis.dim(),
                actual: amps.len(),
            });
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > UNITARY_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(QState { basis, amps })
    }

    pub fn basis_state(basis: Arc<Basis>, label: Label) -> Result<Self> {
        let pos = basis.position(label)?;
        let mut amps = vec![Complex64::zero(); basis.dim()];
        amps[pos] = Complex64::one();
        Ok(QState { basis, amps })
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, label: Label) -> Result<Complex64> {
        Ok(self.amps[self.basis.position(label)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `O_x`: phase `(-1)^{x_i}` on every label with `i >= 1`.
    pub fn apply_oracle(&self, x: &BitString) -> Result<Self> {
        if x.len() != self.basis.n() {
            return Err(Error::LengthMismatch {
                expected: self.basis.n(),
                actual: x.len(),
            });
        }
        let amps = self
            .basis
            .labels()
            .iter()
            .zip(&self.amps)
            .map(|(&(i, _), &a)| if i >= 1 && x.bit(i) { -a } else { a })
            .collect();
        Ok(QState {
            basis: Arc::clone(&self.basis),
            amps,
        })
    }

    pub fn apply_map(&self, u: &Unitary) -> Result<Self> {
        if u.dim() != self.basis.dim() {
            return Err(Error::LengthMismatch {
                expected: self.basis.dim(),
                actual: u.dim(),
            });
        }
        Ok(QState {
            basis: Arc::clone(&self.basis),
            amps: u.apply(&self.amps),
        })
    }

    /// Standard-basis measurement statistics in basis order.
    pub fn measure(&self) -> OutcomeDistribution {
        let outcomes = self
            .basis
            .labels()
            .iter()
            .zip(&self.amps)
            .map(|(&label, a)| (label, a.norm_sqr()))
            .filter(|&(_, p)| p >= PRUNE_TOL)
            .collect();
        OutcomeDistribution { outcomes }
    }
}

/// Probabilities of basis outcomes, pruned below [`PRUNE_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    pub outcomes: Vec<(Label, f64)>,
}

impl OutcomeDistribution {
    pub fn total(&self) -> f64 {
        self.outcomes.iter().map(|(_, p)| p).sum()
    }

    pub fn probability(&self, label: Label) -> f64 {
        self.outcomes
            .iter()
            .find(|(l, _)| *l == label)
            .map_or(0.0, |(_, p)| *p)
    }
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// The two fixed unitaries of the Xquery subroutine on `m` bits.
#[derive(Debug, Clone)]
pub struct XqueryCircuit {
    basis: Arc<Basis>,
    u1: Unitary,
    u2: Unitary,
}

impl XqueryCircuit {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Parameter("Xquery needs m >= 1".into()));
        }
        let basis = Basis::xquery(m);
        let dim = basis.dim();
        let s = 1.0 / (m as f64).sqrt();

        let mut uniform = vec![Complex64::zero(); dim];
        for i in 1..=m {
            uniform[basis.position((i, 0))?] = real(s);
        }
        let u1 = Unitary::complete(dim, &[(basis.position((0, 0))?, uniform)])?;

        let mut fixed = Vec::with_capacity(m);
        for i in 1..=m {
            let mut col = vec![Complex64::zero(); dim];
            col[basis.position((0, 0))?] = real(s);
            for j in i + 1..=m {
                col[basis.position((i, j))?] = real(s);
            }
            for j in 1..i {
                col[basis.position((j, i))?] = real(-s);
            }
            fixed.push((basis.position((i, 0))?, col));
        }
        let u2 = Unitary::complete(dim, &fixed)?;
        Ok(XqueryCircuit { basis, u1, u2 })
    }

    pub fn m(&self) -> usize {
        self.basis.n()
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn u1(&self) -> &Unitary {
        &self.u1
    }

    pub fn u2(&self) -> &Unitary {
        &self.u2
    }

    /// The state just before measurement: `U_2 O_x U_1 |0,0⟩`.
    pub fn final_state(&self, x: &BitString) -> Result<QState> {
        QState::basis_state(Arc::clone(&self.basis), (0, 0))?
            .apply_map(&self.u1)?
            .apply_oracle(x)?
            .apply_map(&self.u2)
    }

    pub fn distribution(&self, x: &BitString) -> Result<OutcomeDistribution> {
        Ok(self.final_state(x)?.measure())
    }
}

/// One Grover iteration `G = -W Z_1 W† Z_f` on an `n`-dimensional index
/// register, started from `W|1⟩`, the uniform superposition.
#[derive(Debug, Clone)]
pub struct GroverCircuit {
    basis: Arc<Basis>,
    w: Unitary,
    /// `-W Z_1 W†`, applied after the oracle.
    diffusion: Unitary,
}

impl GroverCircuit {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("Grover search needs n >= 1".into()));
        }
        let basis = Basis::index_register(n);
        let s = 1.0 / (n as f64).sqrt();
        // Householder reflection exchanging e_1 and the uniform vector u:
        // W = I - 2 v v^T / (v^T v), v = e_1 - u.
        let mut v = vec![-s; n];
        v[0] += 1.0;
        let vv: f64 = v.iter().map(|a| a * a).sum();
        let mut data = vec![Complex64::zero(); n * n];
        for r in 0..n {
            for c in 0..n {
                let delta = if r == c { 1.0 } else { 0.0 };
                let reflect = if vv > 0.0 { 2.0 * v[r] * v[c] / vv } else { 0.0 };
                data[r * n + c] = real(delta - reflect);
            }
        }
        let w = Unitary::new(n, data)?;
        let mut z1 = Unitary::identity(n);
        z1.data[0] = real(-1.0);
        let diffusion = w.compose(&z1)?.compose(&w.adjoint())?.scaled(real(-1.0));
        Ok(GroverCircuit { basis, w, diffusion })
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn w(&self) -> &Unitary {
        &self.w
    }

    /// `G W|1⟩`.
    pub fn final_state(&self, x: &BitString) -> Result<QState> {
        QState::basis_state(Arc::clone(&self.basis), (1, 1))?
            .apply_map(&self.w)?
            .apply_oracle(x)?
            .apply_map(&self.diffusion)
    }

    /// Distribution over indices `i` (the workspace label is dropped).
    pub fn distribution(&self, x: &BitString) -> Result<Vec<(usize, f64)>> {
        Ok(self
            .final_state(x)?
            .measure()
            .outcomes
            .into_iter()
            .map(|((i, _), p)| (i, p))
            .collect())
    }
}

/// Closed-form Xquery outcome probabilities in exact arithmetic:
/// `((m - 2t)/m)^2` on `(0,0)` and `4/m^2` on each pair `(i,j)` with
/// `x_i != x_j`. Zero-probability outcomes are omitted; order matches
/// [`Basis::xquery`].
pub fn xquery_exact(x: &BitString) -> Vec<(Label, Rational)> {
    let m = x.len() as i64;
    let t = x.weight() as i64;
    let mut out = Vec::new();
    let p00 = Rational::new(((m - 2 * t) * (m - 2 * t)).into(), (m * m).into());
    if !p00.is_zero() {
        out.push(((0, 0), p00));
    }
    let pair = Rational::new(4.into(), (m * m).into());
    for i in 1..=x.len() {
        for j in i + 1..=x.len() {
            if x.bit(i) != x.bit(j) {
                out.push(((i, j), pair.clone()));
            }
        }
    }
    out
}

/// Closed-form one-iteration Grover probabilities in exact arithmetic:
/// `(1/n) ((2/n) Σ_j (-1)^{x_j} - (-1)^{x_i})^2` for each index `i`.
pub fn grover1_exact(x: &BitString) -> Vec<(usize, Rational)> {
    let n = x.len() as i64;
    let sign = |b: bool| if b { -1i64 } else { 1 };
    let total: i64 = x.iter().map(sign).sum();
    (1..=x.len())
        .filter_map(|i| {
            // amplitude * n * sqrt(n) = 2 Σ - n s_i
            let scaled = 2 * total - n * sign(x.bit(i));
            let p = Rational::new((scaled * scaled).into(), (n * n * n).into());
            (!p.is_zero()).then_some((i, p))
        })
        .collect()
}
