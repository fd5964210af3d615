//! Indeterminate-length quantum strings.
//!
//! A [`FockVector`] is a finite superposition of classical bitstrings of any
//! length, i.e. an element of the Fock space `H⊕ = ⊕ₙ H^{⊗n}`. Basis strings of
//! different lengths are orthogonal, so `⟨0|00⟩ = 0`. Amplitudes with magnitude
//! at or below [`TOLERANCE`] are dropped on construction, which keeps the
//! length functionals ([`FockVector::base_length`], [`FockVector::average_length`])
//! deterministic.
//!
//! A [`RegisterVector`] is the fixed-width picture of the same data: every
//! support string has exactly `width` bits. The zero-extended form maps one to
//! the other by right-padding each branch with zeros.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::format::fmt_amplitude;

/// Magnitude at or below which an amplitude counts as zero.
pub const TOLERANCE: f64 = 1e-9;

/// Longest classical string any operation will build.
pub const MAX_STRING_LEN: usize = 24;

/// Accepted deviation of a parsed state's norm from 1 before it is rejected.
pub const PARSE_NORM_TOLERANCE: f64 = 1e-6;

/// A classical bitstring of length at most [`MAX_STRING_LEN`].
///
/// Bits are stored most-significant-first so the derived ordering is
/// length-first, then lexicographic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString {
    len: u8,
    value: u64,
}

impl BitString {
    pub const EMPTY: BitString = BitString { len: 0, value: 0 };

    /// Builds a string from the low `len` bits of `value`, leftmost bit most significant.
    pub fn from_value(value: u64, len: usize) -> Result<Self> {
        if len > MAX_STRING_LEN {
            return Err(Error::StringTooLong { len, max: MAX_STRING_LEN });
        }
        let mask = if len == 0 { 0 } else { u64::MAX >> (64 - len) };
        Ok(BitString { len: len as u8, value: value & mask })
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let value = bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        Self::from_value(value, bits.len())
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::from_value(0, len)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Integer value with the leftmost bit most significant.
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Bit at position `i`, counting from the left.
    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.len(), "bit index {i} out of range for length {}", self.len);
        (self.value >> (self.len() - 1 - i)) & 1 == 1
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.bit(i))
    }

    pub fn concat(&self, other: &BitString) -> Result<BitString> {
        let len = self.len() + other.len();
        if len > MAX_STRING_LEN {
            return Err(Error::StringTooLong { len, max: MAX_STRING_LEN });
        }
        Ok(BitString { len: len as u8, value: (self.value << other.len()) | other.value })
    }

    /// Bits `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> BitString {
        assert!(start <= end && end <= self.len());
        let len = end - start;
        let shifted = self.value >> (self.len() - end);
        let mask = if len == 0 { 0 } else { u64::MAX >> (64 - len) };
        BitString { len: len as u8, value: shifted & mask }
    }

    /// True when `self` is a (not necessarily proper) prefix of `other`.
    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        self.len <= other.len && other.slice(0, self.len()) == *self
    }

    /// Number of bits after the last one bit (all bits for the zero string).
    pub fn trailing_zeros(&self) -> usize {
        if self.value == 0 {
            self.len()
        } else {
            self.value.trailing_zeros() as usize
        }
    }

    /// Right-pads with zeros to `width`.
    pub fn pad_to(&self, width: usize) -> Result<BitString> {
        if width < self.len() {
            return Err(Error::RegisterTooSmall { width, base_length: self.len() });
        }
        self.concat(&BitString::zeros(width - self.len())?)
    }

    pub fn with_bit(&self, i: usize, b: bool) -> BitString {
        let shift = self.len() - 1 - i;
        let value = if b { self.value | (1 << shift) } else { self.value & !(1 << shift) };
        BitString { len: self.len, value }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("eps");
        }
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{self}⟩")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "eps" || s == "ε" {
            return Ok(BitString::EMPTY);
        }
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidArgument(format!("invalid bitstring {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        BitString::from_bits(&bits)
    }
}

fn canonical_terms(terms: impl IntoIterator<Item = (BitString, Complex64)>) -> BTreeMap<BitString, Complex64> {
    let mut map: BTreeMap<BitString, Complex64> = BTreeMap::new();
    for (s, a) in terms {
        *map.entry(s).or_default() += a;
    }
    map.retain(|_, a| a.norm() > TOLERANCE);
    map
}

/// A sparse vector in the Fock space of variable-length bitstrings.
#[derive(Clone, PartialEq, Default)]
pub struct FockVector {
    terms: BTreeMap<BitString, Complex64>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    /// Canonicalizes the given terms: duplicates summed, negligible amplitudes dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (BitString, Complex64)>) -> Self {
        FockVector { terms: canonical_terms(terms) }
    }

    /// Convenience constructor from `(bitstring, real amplitude)` pairs; panics on bad bitstrings.
    pub fn from_real(terms: &[(&str, f64)]) -> Self {
        Self::from_terms(terms.iter().map(|(s, a)| (s.parse().expect("valid bitstring"), Complex64::new(*a, 0.0))))
    }

    pub fn basis(s: BitString) -> Self {
        Self::from_terms([(s, Complex64::new(1.0, 0.0))])
    }

    pub fn terms(&self) -> &BTreeMap<BitString, Complex64> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BitString, &Complex64)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &BitString> {
        self.terms.keys()
    }

    pub fn amplitude(&self, s: &BitString) -> Complex64 {
        self.terms.get(s).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Within 1e-9 of unit norm.
    pub fn is_state(&self) -> bool {
        (self.norm() - 1.0).abs() <= TOLERANCE
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= TOLERANCE {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_terms(self.terms.iter().map(|(s, a)| (*s, a * c)))
    }

    /// Length of the longest branch with nonzero amplitude.
    pub fn base_length(&self) -> Result<usize> {
        self.terms.keys().map(BitString::len).max().ok_or(Error::ZeroVector)
    }

    /// `Σ |αᵢ|² l(i)`.
    pub fn average_length(&self) -> Result<f64> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.terms.iter().map(|(s, a)| a.norm_sqr() * s.len() as f64).sum())
    }

    /// All branches share one length.
    pub fn is_determinate(&self) -> bool {
        let mut lens = self.terms.keys().map(BitString::len);
        match lens.next() {
            Some(first) => lens.all(|l| l == first),
            None => true,
        }
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &FockVector) -> Complex64 {
        let (small, large, conj_small) =
            if self.terms.len() <= other.terms.len() { (self, other, true) } else { (other, self, false) };
        small
            .terms
            .iter()
            .filter_map(|(s, a)| large.terms.get(s).map(|b| if conj_small { a.conj() * b } else { b.conj() * a }))
            .sum()
    }

    /// Bilinear extension of classical concatenation.
    pub fn concat(&self, other: &FockVector) -> Result<FockVector> {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                terms.push((x.concat(y)?, a * b));
            }
        }
        Ok(Self::from_terms(terms))
    }

    /// Right-pads every branch with zeros to a register of `width` qubits.
    pub fn zero_extended_form(&self, width: usize) -> Result<RegisterVector> {
        let base_length = self.base_length()?;
        if width < base_length {
            return Err(Error::RegisterTooSmall { width, base_length });
        }
        let terms = self.terms.iter().map(|(s, a)| Ok((s.pad_to(width)?, *a))).collect::<Result<Vec<_>>>()?;
        RegisterVector::new(width, terms)
    }

    /// Parses the textual literal: one `<bitstring|eps> <re> <im>` term per line.
    ///
    /// The result is renormalized to unit norm; inputs whose norm deviates
    /// from 1 by more than [`PARSE_NORM_TOLERANCE`] are rejected.
    pub fn parse_literal(text: &str) -> Result<Self> {
        parse_state_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
    }

    /// Renders the literal format, one term per line in canonical order.
    pub fn to_literal(&self) -> String {
        terms_literal(&self.terms)
    }
}

pub(crate) fn terms_literal(terms: &BTreeMap<BitString, Complex64>) -> String {
    let mut out = String::new();
    for (s, a) in terms {
        out.push_str(&format!("{} {} {}\n", s, fmt_amplitude(a.re), fmt_amplitude(a.im)));
    }
    out
}

fn parse_term(line_no: usize, line: &str) -> Result<(BitString, Complex64)> {
    let err = |msg: String| Error::Parse { line: line_no, msg };
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(err(format!("expected `<bitstring> <re> <im>`, got {line:?}")));
    }
    let s: BitString = fields[0].parse().map_err(|e: Error| err(e.to_string()))?;
    let re: f64 = fields[1].parse().map_err(|_| err(format!("bad real part {:?}", fields[1])))?;
    let im: f64 = fields[2].parse().map_err(|_| err(format!("bad imaginary part {:?}", fields[2])))?;
    if !re.is_finite() || !im.is_finite() {
        return Err(err("non-finite amplitude".into()));
    }
    Ok((s, Complex64::new(re, im)))
}

/// Parses numbered term lines, skipping blanks and `#` comments.
pub(crate) fn parse_state_lines<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<FockVector> {
    let mut terms = Vec::new();
    let mut last_line = 0;
    for (no, raw) in lines {
        last_line = no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        terms.push(parse_term(no, line)?);
    }
    let v = FockVector::from_terms(terms);
    let norm = v.norm();
    if (norm - 1.0).abs() > PARSE_NORM_TOLERANCE {
        return Err(Error::Parse { line: last_line, msg: format!("state norm {norm} deviates from 1") });
    }
    v.normalized()
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(s, a)| format!("({:.6}{:+.6}i){:?}", a.re, a.im, s)).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &FockVector {
    type Output = FockVector;

    fn add(self, rhs: &FockVector) -> FockVector {
        FockVector::from_terms(self.terms.iter().chain(rhs.terms.iter()).map(|(s, a)| (*s, *a)))
    }
}

impl Sub for &FockVector {
    type Output = FockVector;

    fn sub(self, rhs: &FockVector) -> FockVector {
        FockVector::from_terms(self.terms.iter().map(|(s, a)| (*s, *a)).chain(rhs.terms.iter().map(|(s, a)| (*s, -a))))
    }
}

impl Mul<Complex64> for &FockVector {
    type Output = FockVector;

    fn mul(self, rhs: Complex64) -> FockVector {
        self.scale(rhs)
    }
}

/// A superposition of strings that all have exactly `width` bits.
#[derive(Clone, PartialEq)]
pub struct RegisterVector {
    width: usize,
    terms: BTreeMap<BitString, Complex64>,
}

impl RegisterVector {
    pub fn new(width: usize, terms: impl IntoIterator<Item = (BitString, Complex64)>) -> Result<Self> {
        if width > MAX_STRING_LEN {
            return Err(Error::StringTooLong { len: width, max: MAX_STRING_LEN });
        }
        let terms = canonical_terms(terms);
        if let Some(bad) = terms.keys().find(|s| s.len() != width) {
            return Err(Error::InvalidArgument(format!("register string {bad} does not have width {width}")));
        }
        Ok(RegisterVector { width, terms })
    }

    /// `|0…0⟩` on `width` qubits.
    pub fn zeros(width: usize) -> Result<Self> {
        Self::new(width, [(BitString::zeros(width)?, Complex64::new(1.0, 0.0))])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn terms(&self) -> &BTreeMap<BitString, Complex64> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BitString, &Complex64)> {
        self.terms.iter()
    }

    pub fn amplitude(&self, s: &BitString) -> Complex64 {
        self.terms.get(s).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &RegisterVector) -> Complex64 {
        self.terms.iter().filter_map(|(s, a)| other.terms.get(s).map(|b| a.conj() * b)).sum()
    }

    /// Tensor product `self ⊗ other`, with `self` occupying the leftmost qubits.
    pub fn tensor(&self, other: &RegisterVector) -> Result<RegisterVector> {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                terms.push((x.concat(y)?, a * b));
            }
        }
        RegisterVector::new(self.width + other.width, terms)
    }

    /// The register contents viewed as a determinate-length Fock vector.
    pub fn to_fock(&self) -> FockVector {
        FockVector::from_terms(self.terms.iter().map(|(s, a)| (*s, *a)))
    }

    /// Smallest prefix width holding every one bit; zero-padding beyond it is implicit.
    pub fn occupied_width(&self) -> usize {
        self.terms.keys().map(|s| s.len() - s.trailing_zeros()).max().unwrap_or(0)
    }

    /// Parses a register literal; every term must have the same length.
    pub fn parse_literal(text: &str) -> Result<Self> {
        Self::from_state_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
    }

    pub(crate) fn from_state_lines<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Self> {
        let v = parse_state_lines(lines)?;
        let width = v.base_length()?;
        if !v.is_determinate() {
            return Err(Error::Parse { line: 0, msg: "register terms must all have the same width".into() });
        }
        RegisterVector::new(width, v.terms)
    }

    pub fn to_literal(&self) -> String {
        terms_literal(&self.terms)
    }
}

impl fmt::Debug for RegisterVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {:?}", self.width, self.to_fock())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn bitstring_order_is_length_then_lex() {
        let mut v = vec![bs("10"), bs("0"), bs("eps"), bs("01"), bs("000")];
        v.sort();
        assert_eq!(v, vec![bs("eps"), bs("0"), bs("01"), bs("10"), bs("000")]);
    }

    #[test]
    fn bitstring_slices_and_prefixes() {
        let s = bs("10110");
        assert_eq!(s.slice(1, 4), bs("011"));
        assert!(bs("101").is_prefix_of(&s));
        assert!(!bs("11").is_prefix_of(&s));
        assert!(BitString::EMPTY.is_prefix_of(&s));
        assert_eq!(bs("1100").trailing_zeros(), 2);
        assert_eq!(bs("000").trailing_zeros(), 3);
        assert_eq!(s.to_string(), "10110");
        assert_eq!(BitString::EMPTY.to_string(), "eps");
    }

    #[test]
    fn bitstring_length_cap() {
        assert!(BitString::zeros(MAX_STRING_LEN).is_ok());
        assert!(matches!(BitString::zeros(MAX_STRING_LEN + 1), Err(Error::StringTooLong { .. })));
        let long = BitString::zeros(20).unwrap();
        assert!(long.concat(&long).is_err());
    }

    #[test]
    fn base_length_examples() {
        assert_eq!(FockVector::from_real(&[("00", H), ("111", H)]).base_length().unwrap(), 3);
        assert_eq!(FockVector::basis(BitString::EMPTY).base_length().unwrap(), 0);
        let v = FockVector::from_real(&[("0", 0.99f64.sqrt()), ("111111", 0.01f64.sqrt())]);
        assert_eq!(v.base_length().unwrap(), 6);
        assert_eq!(FockVector::zero().base_length(), Err(Error::ZeroVector));
    }

    #[test]
    fn average_length_examples() {
        let v = FockVector::from_real(&[("00", H), ("111", H)]);
        assert!((v.average_length().unwrap() - 2.5).abs() < 1e-12);
        assert_eq!(FockVector::from_real(&[("0110", 1.0)]).average_length().unwrap(), 4.0);
        let w = FockVector::from_real(&[("eps", 0.5), ("11", 0.75f64.sqrt())]);
        assert!((w.average_length().unwrap() - 1.5).abs() < 1e-12);
        assert_eq!(FockVector::zero().average_length(), Err(Error::ZeroVector));
    }

    #[test]
    fn tiny_amplitudes_do_not_count() {
        let v = FockVector::from_terms([(bs("0"), c(1.0)), (bs("1111"), c(1e-10))]);
        assert_eq!(v.base_length().unwrap(), 1);
        assert_eq!(v.terms().len(), 1);
    }

    #[test]
    fn zero_extended_form_examples() {
        let v = FockVector::from_real(&[("0", H), ("10", H)]);
        let z = v.zero_extended_form(3).unwrap();
        assert_eq!(z.width(), 3);
        assert_eq!(z.amplitude(&bs("000")), c(H));
        assert_eq!(z.amplitude(&bs("100")), c(H));

        let e = FockVector::basis(BitString::EMPTY).zero_extended_form(2).unwrap();
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.amplitude(&bs("00")), c(1.0));

        let w = FockVector::from_real(&[("00", H), ("111", H)]).zero_extended_form(3).unwrap();
        assert_eq!(w.amplitude(&bs("000")), c(H));
        assert_eq!(w.amplitude(&bs("111")), c(H));

        assert_eq!(
            FockVector::from_real(&[("00", H), ("111", H)]).zero_extended_form(2),
            Err(Error::RegisterTooSmall { width: 2, base_length: 3 })
        );
    }

    #[test]
    fn concatenate_examples() {
        let u = FockVector::from_real(&[("0", 1.0)]);
        let v = FockVector::from_real(&[("1", 1.0)]);
        assert_eq!(u.concat(&v).unwrap(), FockVector::from_real(&[("01", 1.0)]));

        let w = FockVector::from_real(&[("0", H), ("00", H)]);
        assert_eq!(w.concat(&FockVector::basis(BitString::EMPTY)).unwrap(), w);

        let plus = FockVector::from_real(&[("0", H), ("1", H)]);
        let pp = plus.concat(&plus).unwrap();
        for s in ["00", "01", "10", "11"] {
            assert!((pp.amplitude(&bs(s)) - c(0.5)).norm() < 1e-15);
        }
    }

    #[test]
    fn concatenate_collisions_interfere() {
        // (|0⟩ - |00⟩)·(|0⟩ + |ε⟩) puts +1 and -1 on |00⟩
        let u = FockVector::from_real(&[("0", 1.0), ("00", -1.0)]);
        let v = FockVector::from_real(&[("0", 1.0), ("eps", 1.0)]);
        let w = u.concat(&v).unwrap();
        assert_eq!(w.amplitude(&bs("00")), c(0.0));
        assert_eq!(w, FockVector::from_real(&[("0", 1.0), ("000", -1.0)]));
    }

    #[test]
    fn inner_product_examples() {
        let zero = FockVector::from_real(&[("0", 1.0)]);
        let zz = FockVector::from_real(&[("00", 1.0)]);
        assert_eq!(zero.inner(&zz), c(0.0));
        let w = FockVector::from_real(&[("0", H), ("00", H)]);
        assert!((w.inner(&w) - c(1.0)).norm() < 1e-12);
        assert!((w.inner(&zz) - c(H)).norm() < 1e-15);
        let iw = w.scale(Complex64::new(0.0, 1.0));
        assert!((iw.inner(&zz) - Complex64::new(0.0, -H)).norm() < 1e-15);
        assert!((zz.inner(&iw) - Complex64::new(0.0, H)).norm() < 1e-15);
    }

    #[test]
    fn literal_round_trip_and_errors() {
        let text = "# a comment\n00 0.7071067811865476 0\n\n111 0 0.7071067811865476\n";
        let v = FockVector::parse_literal(text).unwrap();
        assert_eq!(v.base_length().unwrap(), 3);
        assert!(v.is_state());
        assert_eq!(FockVector::parse_literal(&v.to_literal()).unwrap().to_literal(), v.to_literal());

        assert!(matches!(FockVector::parse_literal("0 0.5 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(FockVector::parse_literal("0 1 0\n2 1 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(FockVector::parse_literal("0 1\n"), Err(Error::Parse { line: 1, .. })));
        let eps = FockVector::parse_literal("eps 1 0\n").unwrap();
        assert_eq!(eps, FockVector::basis(BitString::EMPTY));
    }

    #[test]
    fn parser_renormalizes_small_deviations() {
        let v = FockVector::parse_literal("0 0.7071068 0\n1 0.7071068 0\n").unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn register_literal_requires_common_width() {
        let r = RegisterVector::parse_literal("010 1 0\n").unwrap();
        assert_eq!(r.width(), 3);
        assert!(RegisterVector::parse_literal("01 0.7071067811865476 0\n1 0.7071067811865476 0\n").is_err());
    }

    #[test]
    fn register_tensor_and_occupied_width() {
        let a = FockVector::from_real(&[("10", 1.0)]).zero_extended_form(3).unwrap();
        let b = RegisterVector::zeros(2).unwrap();
        let t = a.tensor(&b).unwrap();
        assert_eq!(t.width(), 5);
        assert_eq!(t.amplitude(&bs("10000")), c(1.0));
        assert_eq!(t.occupied_width(), 1);
    }
}
