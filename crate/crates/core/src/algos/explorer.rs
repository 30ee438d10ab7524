//! Depth-first expansion of measurement outcomes.
//!
//! With `keep_paths` off the explorer runs in summary mode: branches that
//! agree on output and query count are merged, paths are dropped, and the
//! Deutsch–Jozsa loop is memoized on the remaining bits. The number of
//! leaves of the DJ tree grows like a product of pair counts, so the
//! verifier relies on this mode.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{dw_route, Algorithm, BranchTrace, DwRoute, Output, Pos, Step};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::qsim::{GroverCircuit, Label, XqueryCircuit};

/// Circuits are shared by every explorer in the process; building one
/// costs far more than simulating it.
fn cached<C>(
    cache: &'static OnceLock<Mutex<HashMap<usize, Arc<C>>>>,
    size: usize,
    build: impl FnOnce(usize) -> Result<C>,
) -> Result<Arc<C>> {
    let map = cache.get_or_init(Default::default);
    if let Some(c) = map.lock().expect("circuit cache poisoned").get(&size) {
        return Ok(Arc::clone(c));
    }
    let circuit = Arc::new(build(size)?);
    let mut guard = map.lock().expect("circuit cache poisoned");
    Ok(Arc::clone(guard.entry(size).or_insert(circuit)))
}

fn xquery_circuit(m: usize) -> Result<Arc<XqueryCircuit>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<XqueryCircuit>>>> = OnceLock::new();
    cached(&CACHE, m, XqueryCircuit::new)
}

fn grover_circuit(n: usize) -> Result<Arc<GroverCircuit>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GroverCircuit>>>> = OnceLock::new();
    cached(&CACHE, n, GroverCircuit::new)
}

/// The bits a subroutine sees, with where each came from.
#[derive(Debug, Clone)]
struct View {
    bits: Vec<bool>,
    pos: Vec<Pos>,
}

impl View {
    fn top(x: &BitString) -> Self {
        View {
            bits: x.as_slice().to_vec(),
            pos: (1..=x.len()).map(Pos::Input).collect(),
        }
    }

    fn len(&self) -> usize {
        self.bits.len()
    }

    /// Local 1-based index `i`.
    fn bit(&self, i: usize) -> bool {
        self.bits[i - 1]
    }

    fn at(&self, i: usize) -> Pos {
        self.pos[i - 1]
    }

    fn without_pair(&self, i: usize, j: usize) -> Self {
        let keep = |idx: &usize| *idx != i - 1 && *idx != j - 1;
        View {
            bits: (0..self.len()).filter(keep).map(|t| self.bits[t]).collect(),
            pos: (0..self.len()).filter(keep).map(|t| self.pos[t]).collect(),
        }
    }

    fn rest(&self) -> Self {
        View {
            bits: self.bits[1..].to_vec(),
            pos: self.pos[1..].to_vec(),
        }
    }

    fn negated(&self) -> Self {
        View {
            bits: self.bits.iter().map(|b| !b).collect(),
            pos: self.pos.clone(),
        }
    }

    /// Appends `zeros` constant-0 bits, then `ones` constant-1 bits.
    fn padded(&self, zeros: usize, ones: usize) -> Self {
        let mut v = self.clone();
        for value in std::iter::repeat_n(false, zeros).chain(std::iter::repeat_n(true, ones)) {
            v.bits.push(value);
            v.pos.push(Pos::Pad {
                slot: v.bits.len(),
                value,
            });
        }
        v
    }
}

type XDist = Arc<[(Label, f64)]>;
type GDist = Arc<[(usize, f64)]>;

pub(super) struct Explorer {
    keep_paths: bool,
    xdists: HashMap<Vec<bool>, XDist>,
    gdists: HashMap<Vec<bool>, GDist>,
    dj_memo: HashMap<(Vec<bool>, usize), Arc<[BranchTrace]>>,
}

fn leaf(output: Output) -> Vec<BranchTrace> {
    vec![BranchTrace {
        path: Vec::new(),
        probability: 1.0,
        output,
        queries: 0,
    }]
}

impl Explorer {
    pub(super) fn new(keep_paths: bool) -> Self {
        Explorer {
            keep_paths,
            xdists: HashMap::new(),
            gdists: HashMap::new(),
            dj_memo: HashMap::new(),
        }
    }

    /// All branches of `alg` on `x`, in outcome order.
    pub(super) fn run(&mut self, alg: &Algorithm, x: &BitString) -> Result<Vec<BranchTrace>> {
        self.run_view(alg, &View::top(x))
    }

    fn run_view(&mut self, alg: &Algorithm, v: &View) -> Result<Vec<BranchTrace>> {
        match alg {
            Algorithm::Xquery { .. } => self.xquery_raw(v),
            Algorithm::Grover1 { .. } => self.grover_raw(v),
            Algorithm::Dj { k, .. } => self.dj(v, *k),
            Algorithm::Dhw { k, .. } => self.dhw(v, *k),
            Algorithm::F1 { n } => self.query(v, 1, |ex, bit| {
                if bit {
                    Ok(leaf(Output::Bit(true)))
                } else {
                    ex.dhw(&v.rest(), n / 2)
                }
            }),
            Algorithm::F3 { n } => self.query(v, 1, |ex, bit| {
                if bit {
                    ex.dj(&v.rest(), 0)
                } else {
                    ex.dhw(&v.rest(), n.div_ceil(2))
                }
            }),
            Algorithm::Dw1 { .. } => self.grover_then_read(v, true),
            Algorithm::Dw2 { .. } => self.grover_then_read(v, false),
            Algorithm::Dw { n, k, l } => match dw_route(*n, *k, *l)? {
                DwRoute::Balanced { zeros, ones } => {
                    self.grover_then_read(&v.padded(zeros, ones), true)
                }
                DwRoute::FromZero { zeros } => self.grover_then_read(&v.padded(zeros, 0), false),
            },
            Algorithm::F2 { k, .. } => self.f2(v, *k),
            Algorithm::F4 { n } => self.query(v, 1, |ex, bit| {
                let rest = v.rest();
                if bit {
                    ex.f2(&rest.negated(), n / 2)
                } else {
                    ex.f2(&rest, n / 2)
                }
            }),
            Algorithm::Transformed { inner, iso } => {
                let seen = if iso.negates_input() { v.negated() } else { v.clone() };
                let mut branches = self.run_view(inner, &seen)?;
                if iso.negates_output() {
                    for b in &mut branches {
                        if let Output::Bit(bit) = b.output {
                            b.output = Output::Bit(!bit);
                        }
                    }
                }
                Ok(self.finish(branches))
            }
        }
    }

    /// Prepends `step` (taken with probability `p`, costing `queries`) to every branch of `sub`.
    fn prefix(&self, step: Step, p: f64, queries: usize, sub: &[BranchTrace], out: &mut Vec<BranchTrace>) {
        out.extend(sub.iter().map(|b| BranchTrace {
            path: if self.keep_paths {
                std::iter::once(step.clone()).chain(b.path.iter().cloned()).collect()
            } else {
                Vec::new()
            },
            probability: p * b.probability,
            output: b.output,
            queries: b.queries + queries,
        }));
    }

    /// In summary mode, merges branches with equal output and query count.
    fn finish(&self, branches: Vec<BranchTrace>) -> Vec<BranchTrace> {
        if self.keep_paths {
            return branches;
        }
        let mut merged: Vec<BranchTrace> = Vec::new();
        for b in branches {
            match merged
                .iter_mut()
                .find(|m| m.output == b.output && m.queries == b.queries)
            {
                Some(m) => m.probability += b.probability,
                None => merged.push(b),
            }
        }
        merged.sort_by_key(|b| (b.output, b.queries));
        merged
    }

    fn xquery_dist(&mut self, bits: &[bool]) -> Result<XDist> {
        if let Some(d) = self.xdists.get(bits) {
            return Ok(Arc::clone(d));
        }
        let dist: XDist = xquery_circuit(bits.len())?
            .distribution(&BitString::new(bits.to_vec()))?
            .outcomes
            .into();
        for &((i, j), _) in dist.iter() {
            if (i == 0) != (j == 0) || (i != 0 && i >= j) {
                return Err(Error::Simulation(format!("Xquery outcome ({i},{j})")));
            }
        }
        self.xdists.insert(bits.to_vec(), Arc::clone(&dist));
        Ok(dist)
    }

    fn grover_dist(&mut self, bits: &[bool]) -> Result<GDist> {
        if let Some(d) = self.gdists.get(bits) {
            return Ok(Arc::clone(d));
        }
        let dist: GDist = grover_circuit(bits.len())?
            .distribution(&BitString::new(bits.to_vec()))?
            .into();
        self.gdists.insert(bits.to_vec(), Arc::clone(&dist));
        Ok(dist)
    }

    fn xstep(v: &View, (i, j): Label) -> Step {
        Step::Xquery {
            m: v.len(),
            pair: (i != 0).then(|| (v.at(i), v.at(j))),
        }
    }

    fn xquery_raw(&mut self, v: &View) -> Result<Vec<BranchTrace>> {
        let dist = self.xquery_dist(&v.bits)?;
        let mut out = Vec::new();
        for &(label, p) in dist.iter() {
            let step = Self::xstep(v, label);
            self.prefix(step, p, 1, &leaf(Output::Pair(label.0, label.1)), &mut out);
        }
        Ok(self.finish(out))
    }

    fn grover_raw(&mut self, v: &View) -> Result<Vec<BranchTrace>> {
        let dist = self.grover_dist(&v.bits)?;
        let mut out = Vec::new();
        for &(i, p) in dist.iter() {
            let step = Step::Grover {
                n: v.len(),
                index: v.at(i),
            };
            self.prefix(step, p, 1, &leaf(Output::Index(i)), &mut out);
        }
        Ok(self.finish(out))
    }

    /// Reads local bit `i` and continues with `then(bit)`.
    fn query(
        &mut self,
        v: &View,
        i: usize,
        then: impl FnOnce(&mut Self, bool) -> Result<Vec<BranchTrace>>,
    ) -> Result<Vec<BranchTrace>> {
        let bit = v.bit(i);
        let sub = then(self, bit)?;
        let mut out = Vec::with_capacity(sub.len());
        self.prefix(Step::Query { pos: v.at(i), bit }, 1.0, 1, &sub, &mut out);
        Ok(out)
    }

    /// The DJ loop with `loops` pair removals still allowed: Xquery, return
    /// 0 on `(0,0)`; otherwise drop the pair and repeat, or return 1 when
    /// no removals remain.
    fn dj(&mut self, v: &View, loops: usize) -> Result<Vec<BranchTrace>> {
        let key = (!self.keep_paths).then(|| (v.bits.clone(), loops));
        if let Some(hit) = key.as_ref().and_then(|k| self.dj_memo.get(k)) {
            return Ok(hit.to_vec());
        }
        let dist = self.xquery_dist(&v.bits)?;
        let mut out = Vec::new();
        for &((i, j), p) in dist.iter() {
            let step = Self::xstep(v, (i, j));
            if i == 0 {
                self.prefix(step, p, 1, &leaf(Output::Bit(false)), &mut out);
            } else if loops == 0 {
                self.prefix(step, p, 1, &leaf(Output::Bit(true)), &mut out);
            } else {
                let sub = self.dj(&v.without_pair(i, j), loops - 1)?;
                self.prefix(step, p, 1, &sub, &mut out);
            }
        }
        let out = self.finish(out);
        if let Some(k) = key {
            self.dj_memo.insert(k, out.clone().into());
        }
        Ok(out)
    }

    /// Pads to `2k` bits with zeros and runs one Xquery: `(0,0)` means weight 0.
    fn dhw(&mut self, v: &View, k: usize) -> Result<Vec<BranchTrace>> {
        let padded = v.padded(2 * k - v.len(), 0);
        let dist = self.xquery_dist(&padded.bits)?;
        let mut out = Vec::new();
        for &(label, p) in dist.iter() {
            let step = Self::xstep(&padded, label);
            self.prefix(step, p, 1, &leaf(Output::Bit(label.0 != 0)), &mut out);
        }
        Ok(self.finish(out))
    }

    /// Grover search, then read the returned position; output the bit, or
    /// its negation when `negate` is set.
    fn grover_then_read(&mut self, v: &View, negate: bool) -> Result<Vec<BranchTrace>> {
        let dist = self.grover_dist(&v.bits)?;
        let mut out = Vec::new();
        for &(i, p) in dist.iter() {
            let step = Step::Grover {
                n: v.len(),
                index: v.at(i),
            };
            let sub = self.query(v, i, |_, bit| Ok(leaf(Output::Bit(bit != negate))))?;
            self.prefix(step, p, 1, &sub, &mut out);
        }
        Ok(self.finish(out))
    }

    /// Search on `4k` zero-padded bits; a hit means output 1, otherwise
    /// search again on `4(k+1)` bits and output what is read.
    fn f2(&mut self, v: &View, k: usize) -> Result<Vec<BranchTrace>> {
        let first = v.padded(4 * k - v.len(), 0);
        let dist = self.grover_dist(&first.bits)?;
        let mut out = Vec::new();
        for &(i, p) in dist.iter() {
            let step = Step::Grover {
                n: first.len(),
                index: first.at(i),
            };
            let sub = self.query(&first, i, |ex, bit| {
                if bit {
                    Ok(leaf(Output::Bit(true)))
                } else {
                    ex.grover_then_read(&v.padded(4 * (k + 1) - v.len(), 0), false)
                }
            })?;
            self.prefix(step, p, 1, &sub, &mut out);
        }
        Ok(self.finish(out))
    }
}
