//! Prefix relations between quantum strings and condensation of prefix-free messages.
//!
//! `φ` is a prefix of `ψ` when some state `χ` with no `|ε⟩` component makes
//! `⟨φχ|ψ⟩` nonzero. Writing `⟨φχ|ψ⟩ = ⟨χ|w⟩` with
//!
//! ```text
//! w_y = Σ_x conj(φ_x) ψ_{x·y}    (y nonempty)
//! ```
//!
//! such a `χ` exists exactly when the witness `w` is nonzero, and `w/‖w‖` is
//! the maximizing choice. Unlike classical strings, a quantum string can be a
//! prefix of itself, e.g. `(|0⟩+|00⟩)/√2`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fockstring::{BitString, FockVector, RegisterVector, TOLERANCE};

/// Witness vector `w` over nonempty suffixes; zero iff `phi` is not a prefix of `psi`.
pub fn prefix_witness(phi: &FockVector, psi: &FockVector) -> FockVector {
    let mut w: BTreeMap<BitString, Complex64> = BTreeMap::new();
    for (x, a) in phi.iter() {
        for (s, b) in psi.iter() {
            if s.len() > x.len() && x.is_prefix_of(s) {
                *w.entry(s.slice(x.len(), s.len())).or_default() += a.conj() * b;
            }
        }
    }
    FockVector::from_terms(w)
}

pub fn is_prefix(phi: &FockVector, psi: &FockVector) -> bool {
    prefix_witness(phi, psi).norm() > TOLERANCE
}

/// First ordered pair `(i, j)`, self-pairs included, with `xs[i]` a prefix of `xs[j]`.
pub fn find_prefix_violation(xs: &[FockVector]) -> Option<(usize, usize)> {
    (0..xs.len()).flat_map(|i| (0..xs.len()).map(move |j| (i, j))).find(|&(i, j)| is_prefix(&xs[i], &xs[j]))
}

pub fn is_prefix_free_set(xs: &[FockVector]) -> bool {
    find_prefix_violation(xs).is_none()
}

/// An orthonormal list of strings checked to be pairwise and self prefix free.
#[derive(Clone, Debug, PartialEq)]
pub struct PrefixFreeBasis {
    vectors: Vec<FockVector>,
    verified: bool,
}

impl PrefixFreeBasis {
    pub fn vectors(&self) -> &[FockVector] {
        &self.vectors
    }

    pub fn verified(&self) -> bool {
        self.verified
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Union of the basis supports, required to be a classical prefix-free set.
    pub fn classical_codewords(&self) -> Result<Vec<BitString>> {
        let mut words: Vec<BitString> = self.vectors.iter().flat_map(|v| v.support().copied()).collect();
        words.sort();
        words.dedup();
        for (i, a) in words.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::NotDecodable("empty codeword in basis support".into()));
            }
            if let Some(b) = words[i + 1..].iter().find(|b| a.is_prefix_of(b)) {
                return Err(Error::NotDecodable(format!(
                    "support strings {a} and {b} are not classically prefix free"
                )));
            }
        }
        Ok(words)
    }

    /// Residual of `v` after projecting onto the span of the basis.
    fn residual_norm(&self, v: &FockVector) -> f64 {
        let proj = self.vectors.iter().fold(FockVector::zero(), |acc, b| &acc + &b.scale(b.inner(v)));
        (v - &proj).norm()
    }
}

pub(crate) fn check_orthonormal(vectors: &[FockVector]) -> Result<()> {
    for (i, u) in vectors.iter().enumerate() {
        for (j, v) in vectors.iter().enumerate().skip(i) {
            let expected = if i == j { 1.0 } else { 0.0 };
            let ip = u.inner(v);
            if (ip - Complex64::new(expected, 0.0)).norm() > TOLERANCE {
                return Err(Error::NotOrthonormal(format!("⟨{i}|{j}⟩ = {ip}")));
            }
        }
    }
    Ok(())
}

/// Verifies that an orthonormal basis is prefix free, which certifies its whole span.
pub fn is_prefix_free_space(basis: &[FockVector]) -> Result<PrefixFreeBasis> {
    if basis.is_empty() {
        return Err(Error::NotOrthonormal("empty basis".into()));
    }
    check_orthonormal(basis)?;
    if let Some((i, j)) = find_prefix_violation(basis) {
        return Err(Error::PrefixViolation(i, j));
    }
    Ok(PrefixFreeBasis { vectors: basis.to_vec(), verified: true })
}

/// `(Σ 2^-L, Σ 2^-l̄)` over the given strings.
pub fn kraft_sums(xs: &[FockVector]) -> Result<(f64, f64)> {
    let mut base = 0.0;
    let mut avg = 0.0;
    for x in xs {
        base += 2f64.powi(-(x.base_length()? as i32));
        avg += 2f64.powf(-x.average_length()?);
    }
    Ok((base, avg))
}

/// Several zero-extended messages packed into one register: payloads left, padding right.
#[derive(Clone, PartialEq)]
pub struct CondensedBlock {
    pub register: RegisterVector,
    pub message_count: usize,
    pub widths: Vec<usize>,
}

impl fmt::Debug for CondensedBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "count={} widths={:?} {:?}", self.message_count, self.widths, self.register)
    }
}

impl CondensedBlock {
    /// `count=<n> widths=<w1,..,wn>` followed by the register literal.
    pub fn to_text(&self) -> String {
        let widths: Vec<String> = self.widths.iter().map(usize::to_string).collect();
        format!("count={} widths={}\n{}", self.message_count, widths.join(","), self.register.to_literal())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (no, header) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .ok_or(Error::Parse { line: 1, msg: "missing block header".into() })?;
        let err = |msg: &str| Error::Parse { line: no, msg: msg.into() };
        let mut count = None;
        let mut widths = None;
        for field in header.split_whitespace() {
            match field.split_once('=') {
                Some(("count", v)) => count = Some(v.parse::<usize>().map_err(|_| err("bad count"))?),
                Some(("widths", v)) => {
                    widths = Some(
                        v.split(',')
                            .map(|w| w.parse::<usize>().map_err(|_| err("bad width")))
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                _ => return Err(err("expected `count=<n> widths=<w1,..,wn>`")),
            }
        }
        let (message_count, widths) = count.zip(widths).ok_or_else(|| err("header needs count and widths"))?;
        if widths.len() != message_count {
            return Err(err("widths list does not match count"));
        }
        let register = RegisterVector::from_state_lines(lines)?;
        if register.width() != widths.iter().sum::<usize>() {
            return Err(err("register width does not match sum of widths"));
        }
        Ok(CondensedBlock { register, message_count, widths })
    }
}

/// Finds the codeword `c` with `r = c·0…0`; `None` if there is none.
fn unpad(r: &BitString, words: &[BitString]) -> Option<BitString> {
    let occupied = r.len() - r.trailing_zeros();
    words.iter().copied().find(|w| w.len() >= occupied && w.len() <= r.len() && r.slice(0, w.len()) == *w)
}

/// Packs zero-extended messages from the span of `basis` into a single zero-extended register.
///
/// Each classical branch `c₁0…0 ⊗ … ⊗ cₙ0…0` is mapped to `c₁…cₙ0…0`; the map is
/// a permutation of basis states on the valid subspace and is extended linearly.
pub fn condense(messages: &[RegisterVector], basis: &PrefixFreeBasis) -> Result<CondensedBlock> {
    if !basis.verified() {
        return Err(Error::NotDecodable("basis has not been verified prefix free".into()));
    }
    if messages.is_empty() {
        return Err(Error::InvalidArgument("no messages to condense".into()));
    }
    let words = basis.classical_codewords()?;
    let mut acc: Vec<(BitString, Complex64)> = vec![(BitString::EMPTY, Complex64::new(1.0, 0.0))];
    for (k, m) in messages.iter().enumerate() {
        let mut payload = Vec::with_capacity(m.terms().len());
        for (r, a) in m.iter() {
            let c = unpad(r, &words)
                .ok_or_else(|| Error::NotDecodable(format!("message {k}: branch {r} is not a padded codeword")))?;
            payload.push((c, *a));
        }
        let unpadded = FockVector::from_terms(payload.iter().copied());
        let residual = basis.residual_norm(&unpadded);
        if residual > TOLERANCE {
            return Err(Error::NotDecodable(format!(
                "message {k} lies outside the basis span (residual {residual:e})"
            )));
        }
        let mut next = Vec::with_capacity(acc.len() * payload.len());
        for (x, a) in &acc {
            for (c, b) in &payload {
                next.push((x.concat(c)?, a * b));
            }
        }
        acc = next;
    }
    let widths: Vec<usize> = messages.iter().map(RegisterVector::width).collect();
    let total: usize = widths.iter().sum();
    let register = RegisterVector::new(
        total,
        acc.into_iter().map(|(s, a)| Ok((s.pad_to(total)?, a))).collect::<Result<Vec<_>>>()?,
    )?;
    Ok(CondensedBlock { register, message_count: messages.len(), widths })
}

/// Inverse of [`condense`] as a joint register `zef₁ ⊗ … ⊗ zefₙ`.
pub fn expand_joint(block: &CondensedBlock, basis: &PrefixFreeBasis) -> Result<RegisterVector> {
    if block.widths.len() != block.message_count {
        return Err(Error::InvalidArgument("widths list does not match message count".into()));
    }
    let words = basis.classical_codewords()?;
    let total = block.register.width();
    let mut terms = Vec::with_capacity(block.register.terms().len());
    for (r, a) in block.register.iter() {
        let mut pos = 0;
        let mut unpacked = BitString::EMPTY;
        for (k, &w) in block.widths.iter().enumerate() {
            let c = words.iter().find(|c| pos + c.len() <= total && r.slice(pos, pos + c.len()) == **c).ok_or_else(
                || Error::NotDecodable(format!("branch {r}: no codeword at offset {pos} for message {k}")),
            )?;
            if c.len() > w {
                return Err(Error::NotDecodable(format!("branch {r}: codeword {c} exceeds width {w} of message {k}")));
            }
            unpacked = unpacked.concat(&c.pad_to(w)?)?;
            pos += c.len();
        }
        if r.slice(pos, total).trailing_zeros() != total - pos {
            return Err(Error::NotDecodable(format!(
                "branch {r}: nonzero bits after {} messages",
                block.message_count
            )));
        }
        terms.push((unpacked, *a));
    }
    RegisterVector::new(total, terms)
}

/// Inverse of [`condense`], split back into one register per message.
///
/// The joint state must be a product across messages. Each factor except the
/// last is phase-normalized so its first amplitude is real and positive; the
/// overall phase is carried by the last factor.
pub fn expand(block: &CondensedBlock, basis: &PrefixFreeBasis) -> Result<Vec<RegisterVector>> {
    let joint = expand_joint(block, basis)?;
    factor_register(&joint, &block.widths)
}

/// Splits a product register into factors of the given widths.
pub fn factor_register(joint: &RegisterVector, widths: &[usize]) -> Result<Vec<RegisterVector>> {
    if widths.iter().sum::<usize>() != joint.width() {
        return Err(Error::InvalidArgument("widths do not sum to register width".into()));
    }
    let mut factors = Vec::with_capacity(widths.len());
    let mut rest = joint.clone();
    for (k, &w) in widths.iter().enumerate() {
        if k + 1 == widths.len() {
            factors.push(rest.clone());
            break;
        }
        let (head, tail) = split_product(&rest, w)?;
        factors.push(head);
        rest = tail;
    }
    Ok(factors)
}

/// Writes `v` (width `w + t`) as `head ⊗ tail` with `head` of width `w`.
fn split_product(v: &RegisterVector, w: usize) -> Result<(RegisterVector, RegisterVector)> {
    let t = v.width() - w;
    let mut rows: BTreeMap<BitString, Vec<(BitString, Complex64)>> = BTreeMap::new();
    for (s, a) in v.iter() {
        rows.entry(s.slice(0, w)).or_default().push((s.slice(w, s.len()), *a));
    }
    let (&first_head, first_row) = rows.iter().next().ok_or(Error::ZeroVector)?;
    let tail_ref = RegisterVector::new(t, first_row.iter().copied())?;
    let tail_norm = tail_ref.norm_sqr().sqrt();
    let mut head_terms = Vec::new();
    for (h, row) in &rows {
        let r = RegisterVector::new(t, row.iter().copied())?;
        let coeff = tail_ref.inner(&r) / (tail_norm * tail_norm);
        let recon = RegisterVector::new(t, tail_ref.iter().map(|(s, a)| (*s, a * coeff)))?;
        let diff: f64 = r
            .iter()
            .map(|(s, a)| (a - recon.amplitude(s)).norm_sqr())
            .chain(recon.iter().filter(|(s, _)| r.amplitude(s) == Complex64::default()).map(|(_, a)| a.norm_sqr()))
            .sum();
        if diff.sqrt() > TOLERANCE {
            return Err(Error::NotDecodable("messages are entangled; cannot split into registers".into()));
        }
        head_terms.push((*h, coeff * tail_norm));
    }
    let head = RegisterVector::new(w, head_terms)?;
    let lead = head.amplitude(&first_head);
    let phase = lead / lead.norm();
    let head = RegisterVector::new(w, head.iter().map(|(s, a)| (*s, a / phase)))?;
    let tail = RegisterVector::new(t, tail_ref.iter().map(|(s, a)| (*s, a * phase / tail_norm)))?;
    Ok((head, tail))
}
