//! Symmetric partial Boolean functions.
//!
//! A symmetric partial function on `n` bits is fully described by the vector
//! `(b_0, ..., b_n)` over `{0, 1, *}`: `f(x) = b_{|x|}`, and `f` is undefined
//! (outside the promise) wherever `b_{|x|} = *`.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitString;
use crate::error::{Error, Result};

/// Input-enumerating operations refuse functions on more than this many bits.
pub const MAX_ENUMERATION_N: usize = 30;

/// One entry `b_w` of the value vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FnValue {
    Zero,
    One,
    Undefined,
}

impl FnValue {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            FnValue::One
        } else {
            FnValue::Zero
        }
    }

    /// `Some(bit)` for defined entries.
    pub fn bit(self) -> Option<bool> {
        match self {
            FnValue::Zero => Some(false),
            FnValue::One => Some(true),
            FnValue::Undefined => None,
        }
    }

    pub fn is_defined(self) -> bool {
        self != FnValue::Undefined
    }

    /// Swaps Zero and One; Undefined is fixed.
    pub fn complement(self) -> Self {
        match self {
            FnValue::Zero => FnValue::One,
            FnValue::One => FnValue::Zero,
            FnValue::Undefined => FnValue::Undefined,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            FnValue::Zero => '0',
            FnValue::One => '1',
            FnValue::Undefined => '*',
        }
    }
}

impl fmt::Display for FnValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// The four isomorphisms that act on symmetric functions: identity, input
/// negation (which reverses the value vector), output negation, and both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Isomorph {
    Identity,
    Reverse,
    Complement,
    ReverseComplement,
}

impl Isomorph {
    pub const ALL: [Isomorph; 4] = [
        Isomorph::Identity,
        Isomorph::Reverse,
        Isomorph::Complement,
        Isomorph::ReverseComplement,
    ];

    /// Whether the transform negates every input bit.
    pub fn negates_input(self) -> bool {
        matches!(self, Isomorph::Reverse | Isomorph::ReverseComplement)
    }

    /// Whether the transform negates the output bit.
    pub fn negates_output(self) -> bool {
        matches!(self, Isomorph::Complement | Isomorph::ReverseComplement)
    }

    pub fn name(self) -> &'static str {
        match self {
            Isomorph::Identity => "identity",
            Isomorph::Reverse => "reverse",
            Isomorph::Complement => "complement",
            Isomorph::ReverseComplement => "reverse-complement",
        }
    }
}

impl fmt::Display for Isomorph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Families of functions with exact degree at most two, up to isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    /// All defined values agree, or nothing is defined (degree 0).
    ConstantOrEmpty,
    /// `(0, *, ..., *, 1)`, the unique degree-1 shape.
    Deg1F1nn,
    F1 { k: usize },
    F2 { k: usize },
    F3 { l: usize },
    F4,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::ConstantOrEmpty => write!(f, "constant"),
            FamilyTag::Deg1F1nn => write!(f, "F1(k=n)"),
            FamilyTag::F1 { k } => write!(f, "F1(k={k})"),
            FamilyTag::F2 { k } => write!(f, "F2(k={k})"),
            FamilyTag::F3 { l } => write!(f, "F3(l={l})"),
            FamilyTag::F4 => write!(f, "F4"),
        }
    }
}

/// A family tag together with the transform that maps the classified
/// function onto the family representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Classification {
    pub family: FamilyTag,
    pub transform: Isomorph,
}

/// Total symmetric functions available through [`family_named`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedFamily {
    Or,
    And,
    Parity,
    Majority,
    Exact,
    Threshold,
}

impl FromStr for NamedFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "OR" => NamedFamily::Or,
            "AND" => NamedFamily::And,
            "PARITY" => NamedFamily::Parity,
            "MAJ" => NamedFamily::Majority,
            "EXACT" => NamedFamily::Exact,
            "THRESHOLD" => NamedFamily::Threshold,
            _ => {
                return Err(Error::Parse {
                    spec: s.to_string(),
                    reason: "unknown family name".into(),
                })
            }
        })
    }
}

/// A symmetric partial Boolean function on `n >= 1` bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymPartialFn {
    values: Vec<FnValue>,
}

impl SymPartialFn {
    /// Builds a function from its value vector `(b_0, ..., b_n)`.
    pub fn new(values: Vec<FnValue>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Parameter(format!(
                "value vector needs length >= 2, got {}",
                values.len()
            )));
        }
        Ok(SymPartialFn { values })
    }

    /// The everywhere-undefined function on `n` bits.
    pub fn undefined(n: usize) -> Result<Self> {
        Self::new(vec![FnValue::Undefined; n + 1])
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[FnValue] {
        &self.values
    }

    /// `b_w`, panicking when `w > n`.
    pub fn at(&self, w: usize) -> FnValue {
        self.values[w]
    }

    pub fn value_at_weight(&self, w: usize) -> Result<FnValue> {
        self.values
            .get(w)
            .copied()
            .ok_or(Error::WeightOutOfRange { weight: w, n: self.n() })
    }

    /// Weights `w` with `b_w` defined, ascending.
    pub fn domain_weights(&self) -> Vec<usize> {
        (0..=self.n()).filter(|&w| self.values[w].is_defined()).collect()
    }

    /// `f(x)` for a promised `x`, `None` outside the promise.
    pub fn eval(&self, x: &BitString) -> Result<Option<bool>> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: x.len(),
            });
        }
        Ok(self.values[x.weight()].bit())
    }

    /// Every promised input in lexicographic order.
    pub fn domain_inputs(&self) -> Result<DomainInputs<'_>> {
        let n = self.n();
        if n > MAX_ENUMERATION_N {
            return Err(Error::TooLarge { n, cap: MAX_ENUMERATION_N });
        }
        Ok(DomainInputs {
            f: self,
            next: 0,
            end: 1u64 << n,
        })
    }

    /// `sum over promised weights w of C(n, w)`.
    pub fn domain_size(&self) -> u128 {
        let n = self.n() as u128;
        self.domain_weights()
            .into_iter()
            .map(|w| {
                let w = w as u128;
                (0..w).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
            })
            .sum()
    }

    /// `(b_n, ..., b_0)`: the function of the negated input.
    pub fn reverse(&self) -> Self {
        SymPartialFn {
            values: self.values.iter().rev().copied().collect(),
        }
    }

    /// `(b̄_0, ..., b̄_n)`: the negated output.
    pub fn complement(&self) -> Self {
        SymPartialFn {
            values: self.values.iter().map(|v| v.complement()).collect(),
        }
    }

    pub fn transformed(&self, iso: Isomorph) -> Self {
        match iso {
            Isomorph::Identity => self.clone(),
            Isomorph::Reverse => self.reverse(),
            Isomorph::Complement => self.complement(),
            Isomorph::ReverseComplement => self.complement().reverse(),
        }
    }

    /// `[f, reverse(f), complement(f), reverse(complement(f))]`.
    pub fn isomorphs(&self) -> [SymPartialFn; 4] {
        Isomorph::ALL.map(|iso| self.transformed(iso))
    }

    /// Whether `other` is one of the four isomorphs of `self`.
    pub fn is_isomorphic(&self, other: &SymPartialFn) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: other.n(),
            });
        }
        Ok(self.isomorphs().iter().any(|g| g == other))
    }

    /// `self` with every weight outside `keep` marked undefined.
    pub fn restricted_to(&self, keep: &[usize]) -> Self {
        SymPartialFn {
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(w, &v)| if keep.contains(&w) { v } else { FnValue::Undefined })
                .collect(),
        }
    }

    /// Whether all defined entries carry the same value (vacuously true when
    /// nothing is defined).
    pub fn is_constant_compatible(&self) -> bool {
        let mut defined = self.values.iter().filter_map(|v| v.bit());
        match defined.next() {
            None => true,
            Some(first) => defined.all(|b| b == first),
        }
    }
}

impl fmt::Display for SymPartialFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.values {
            write!(f, "{}", v.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for SymPartialFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        from_string(s)
    }
}

/// Iterator over the promised inputs of a function, see [`SymPartialFn::domain_inputs`].
pub struct DomainInputs<'a> {
    f: &'a SymPartialFn,
    next: u64,
    end: u64,
}

impl Iterator for DomainInputs<'_> {
    type Item = BitString;

    fn next(&mut self) -> Option<BitString> {
        let n = self.f.n();
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            if self.f.values[mask.count_ones() as usize].is_defined() {
                return Some(BitString::from_mask(n, mask));
            }
        }
        None
    }
}

fn parse_err(spec: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

/// Parses a literal value vector such as `0***1***0`, or a family expression
/// such as `DJ:8,1`, `F4:7`, `DW:8,2,6` or `EXACT:4,2`.
pub fn from_string(spec: &str) -> Result<SymPartialFn> {
    let spec = spec.trim();
    if let Some((name, args)) = spec.split_once(':') {
        let params = args
            .split(',')
            .map(|a| {
                a.trim()
                    .parse::<usize>()
                    .map_err(|_| parse_err(spec, format!("`{a}` is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        let want = |count: usize| -> Result<()> {
            if params.len() == count {
                Ok(())
            } else {
                Err(parse_err(
                    spec,
                    format!("{name} takes {count} parameter(s), got {}", params.len()),
                ))
            }
        };
        return match name.trim().to_ascii_uppercase().as_str() {
            "DJ" => want(2).and_then(|_| family_dj(params[0], params[1])),
            "F1" => want(2).and_then(|_| family_f1(params[0], params[1])),
            "F2" => want(2).and_then(|_| family_f2(params[0], params[1])),
            "F3" => want(2).and_then(|_| family_f3(params[0], params[1])),
            "F4" => want(1).and_then(|_| family_f4(params[0])),
            "DW" => want(3).and_then(|_| family_dw(params[0], params[1], params[2])),
            "EXACT" | "THRESHOLD" => {
                want(2)?;
                family_named(name.parse()?, params[0], Some(params[1]))
            }
            "OR" | "AND" | "PARITY" | "MAJ" => {
                want(1)?;
                family_named(name.parse()?, params[0], None)
            }
            other => Err(parse_err(spec, format!("unknown family `{other}`"))),
        };
    }

    if spec.len() < 2 {
        return Err(parse_err(spec, "literal needs at least two symbols"));
    }
    let values = spec
        .chars()
        .map(|c| match c {
            '0' => Ok(FnValue::Zero),
            '1' => Ok(FnValue::One),
            '*' => Ok(FnValue::Undefined),
            _ => Err(parse_err(spec, format!("invalid symbol `{c}`"))),
        })
        .collect::<Result<Vec<_>>>()?;
    SymPartialFn::new(values)
}

fn build(n: usize, value: impl Fn(usize) -> FnValue) -> Result<SymPartialFn> {
    SymPartialFn::new((0..=n).map(value).collect())
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Parameter(msg()))
    }
}

/// Generalized Deutsch–Jozsa: 1 on `|x| = n/2`, 0 on `|x| <= k` or `|x| >= n - k`.
pub fn family_dj(n: usize, k: usize) -> Result<SymPartialFn> {
    check(n > 0 && n % 2 == 0, || format!("DJ needs even n > 0, got n = {n}"))?;
    check(k < n / 2, || format!("DJ needs k < n/2, got n = {n}, k = {k}"))?;
    build(n, |w| {
        if w == n / 2 {
            FnValue::One
        } else if w <= k || w >= n - k {
            FnValue::Zero
        } else {
            FnValue::Undefined
        }
    })
}

/// 0 on `|x| = 0`, 1 on `|x| = k`.
pub fn family_f1(n: usize, k: usize) -> Result<SymPartialFn> {
    check(n >= 1 && k > 0 && k <= n, || format!("F1 needs 0 < k <= n, got n = {n}, k = {k}"))?;
    build(n, |w| match w {
        0 => FnValue::Zero,
        w if w == k => FnValue::One,
        _ => FnValue::Undefined,
    })
}

/// 0 on `|x| = 0`, 1 on `|x| ∈ {k, k+1}`.
pub fn family_f2(n: usize, k: usize) -> Result<SymPartialFn> {
    check(k > 0 && k < n, || format!("F2 needs 0 < k < n, got n = {n}, k = {k}"))?;
    build(n, |w| match w {
        0 => FnValue::Zero,
        w if w == k || w == k + 1 => FnValue::One,
        _ => FnValue::Undefined,
    })
}

/// 0 on `|x| ∈ {0, n}`, 1 on `|x| = l`.
pub fn family_f3(n: usize, l: usize) -> Result<SymPartialFn> {
    check(l > 0 && l < n, || format!("F3 needs 0 < l < n, got n = {n}, l = {l}"))?;
    build(n, |w| {
        if w == 0 || w == n {
            FnValue::Zero
        } else if w == l {
            FnValue::One
        } else {
            FnValue::Undefined
        }
    })
}

/// 0 on `|x| ∈ {0, n}`, 1 on `|x| ∈ {⌊n/2⌋, ⌈n/2⌉}`.
pub fn family_f4(n: usize) -> Result<SymPartialFn> {
    check(n > 1, || format!("F4 needs n > 1, got n = {n}"))?;
    build(n, |w| {
        if w == 0 || w == n {
            FnValue::Zero
        } else if w == n / 2 || w == n.div_ceil(2) {
            FnValue::One
        } else {
            FnValue::Undefined
        }
    })
}

/// Two-weight discrimination: 0 on `|x| = k`, 1 on `|x| = l`.
pub fn family_dw(n: usize, k: usize, l: usize) -> Result<SymPartialFn> {
    check(n >= 1 && k < l && l <= n, || {
        format!("DW needs 0 <= k < l <= n, got n = {n}, k = {k}, l = {l}")
    })?;
    build(n, |w| {
        if w == k {
            FnValue::Zero
        } else if w == l {
            FnValue::One
        } else {
            FnValue::Undefined
        }
    })
}

/// Total symmetric functions: OR, AND, PARITY, MAJ, EXACT_k, THRESHOLD_k.
pub fn family_named(name: NamedFamily, n: usize, k: Option<usize>) -> Result<SymPartialFn> {
    check(n >= 1, || "named families need n >= 1".to_string())?;
    let param = || -> Result<usize> {
        let k = k.ok_or_else(|| Error::Parameter(format!("{name:?} needs a parameter k")))?;
        check(k <= n, || format!("{name:?} needs 0 <= k <= n, got n = {n}, k = {k}"))?;
        Ok(k)
    };
    let rule: Box<dyn Fn(usize) -> bool> = match name {
        NamedFamily::Or => Box::new(|w| w >= 1),
        NamedFamily::And => Box::new(move |w| w == n),
        NamedFamily::Parity => Box::new(|w| w % 2 == 1),
        NamedFamily::Majority => Box::new(move |w| 2 * w > n),
        NamedFamily::Exact => {
            let k = param()?;
            Box::new(move |w| w == k)
        }
        NamedFamily::Threshold => {
            let k = param()?;
            Box::new(move |w| w >= k)
        }
    };
    build(n, |w| FnValue::from_bit(rule(w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> SymPartialFn {
        s.parse().unwrap()
    }

    #[test]
    fn literal_and_family_parsing() {
        let dj = f("0***1***0");
        assert_eq!(dj.n(), 8);
        assert_eq!(dj, family_dj(8, 0).unwrap());
        assert_eq!(f("DJ:8,1").to_string(), "00**1**00");
        assert!(from_string("XYZ").is_err());
        assert!(from_string("0").is_err());
        assert!(from_string("DJ:8").is_err());
        assert!(from_string("DJ:8,4").is_err());
        assert!(from_string("NOPE:3").is_err());
    }

    #[test]
    fn dj_examples() {
        assert_eq!(family_dj(4, 0).unwrap().to_string(), "0*1*0");
        assert!(family_dj(4, 2).is_err());
        assert!(family_dj(5, 0).is_err());
    }

    #[test]
    fn degree_two_families() {
        assert_eq!(family_f1(5, 3).unwrap().to_string(), "0**1**");
        assert_eq!(family_f2(4, 2).unwrap().to_string(), "0*11*");
        assert_eq!(family_dw(4, 1, 3).unwrap().to_string(), "*0*1*");
        assert_eq!(family_f3(5, 2).unwrap().to_string(), "0*1**0");
        assert_eq!(family_f4(5).unwrap().to_string(), "0*11*0");
        // even n: F4 coincides with F3 at l = n/2
        assert_eq!(family_f4(6).unwrap(), family_f3(6, 3).unwrap());
        assert!(family_f1(4, 0).is_err());
        assert!(family_f2(4, 4).is_err());
        assert!(family_f3(4, 4).is_err());
        assert!(family_f4(1).is_err());
        assert!(family_dw(4, 3, 3).is_err());
    }

    #[test]
    fn named_families() {
        assert_eq!(f("OR:3").to_string(), "0111");
        assert_eq!(f("AND:3").to_string(), "0001");
        assert_eq!(f("EXACT:4,2").to_string(), "00100");
        assert_eq!(f("PARITY:3").to_string(), "0101");
        assert_eq!(f("MAJ:4").to_string(), "00011");
        assert_eq!(f("THRESHOLD:4,2").to_string(), "00111");
        assert!(from_string("EXACT:4,5").is_err());
        assert!(family_named(NamedFamily::Exact, 4, None).is_err());
    }

    #[test]
    fn isomorph_examples() {
        let iso: Vec<String> = f("01*").isomorphs().iter().map(|g| g.to_string()).collect();
        assert_eq!(iso, ["01*", "*10", "10*", "*01"]);
        let iso: Vec<String> = f("00").isomorphs().iter().map(|g| g.to_string()).collect();
        assert_eq!(iso, ["00", "00", "11", "11"]);
        let pal = f("0*1*0");
        assert_eq!(pal.reverse(), pal);
        assert_eq!(pal.complement().reverse(), pal.complement());
    }

    #[test]
    fn is_isomorphic_examples() {
        assert!(f("0*1").is_isomorphic(&f("1*0")).unwrap());
        assert!(!f("01*").is_isomorphic(&f("0*1")).unwrap());
        assert!(f("01*").is_isomorphic(&f("01*")).unwrap());
        assert!(f("01*").is_isomorphic(&f("01*0")).is_err());
    }

    #[test]
    fn value_and_domain() {
        let dj = family_dj(4, 0).unwrap();
        assert_eq!(dj.value_at_weight(2).unwrap(), FnValue::One);
        assert!(dj.value_at_weight(5).is_err());
        let inputs: Vec<_> = dj.domain_inputs().unwrap().collect();
        // 2 + C(4,2)
        assert_eq!(inputs.len(), 8);
        assert_eq!(dj.domain_size(), 8);
        assert_eq!(inputs[0].to_string(), "0000");
        assert_eq!(inputs[1].to_string(), "0011");
        assert!(inputs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(SymPartialFn::undefined(5).unwrap().domain_inputs().unwrap().count(), 0);
        assert!(SymPartialFn::undefined(31).unwrap().domain_inputs().is_err());
    }
}
