//! Subspace probabilities and the greedy decomposition of an ensemble's span.
//!
//! For an ensemble `{(pᵢ, |ψᵢ⟩)}` the probability of a subspace `X` is the
//! weight of the states lying entirely inside it, and its average probability
//! divides that by `dim X`. Relative to an orthogonal `Y`, `P(X:Y)` counts the
//! states inside `X ⊕ Y` that are not already inside `Y`.
//!
//! [`decompose`] picks `X₁` with the largest average probability, then each
//! `Xᵢ₊₁` in the orthogonal complement of `X₁ ⊕ … ⊕ Xᵢ` with the largest
//! relative average probability, until the span of the ensemble is exhausted.
//! The search is exhaustive over spans of residual subsets: any maximizer can
//! be taken to be the span of the residuals of the states it captures, since
//! adding directions that capture no new state only lowers the average.

use std::collections::HashSet;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fockstring::{FockVector, TOLERANCE};
use crate::linalg::{self, Dense, Frame};
use crate::prefix::check_orthonormal;

/// Default limit on ensemble size for the exhaustive subset search.
pub const DEFAULT_STATE_CAP: usize = 12;

/// Probabilities closer than this compare equal when ranking candidates.
const TIE_EPS: f64 = 1e-10;

/// Accepted deviation of ensemble weights from a total of 1.
const WEIGHT_TOLERANCE: f64 = 1e-9;

/// A finite mixture of pure states.
#[derive(Clone, Debug, PartialEq)]
pub struct Ensemble {
    items: Vec<(f64, FockVector)>,
}

impl Ensemble {
    pub fn new(items: Vec<(f64, FockVector)>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::InvalidEnsemble("no states".into()));
        }
        for (k, (p, psi)) in items.iter().enumerate() {
            if !(*p > 0.0 && *p <= 1.0) {
                return Err(Error::InvalidEnsemble(format!("state {k}: probability {p} outside (0, 1]")));
            }
            if !psi.is_state() {
                return Err(Error::InvalidEnsemble(format!("state {k}: norm {} is not 1", psi.norm())));
            }
        }
        let total: f64 = items.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > WEIGHT_TOLERANCE {
            return Err(Error::InvalidEnsemble(format!("probabilities sum to {total}")));
        }
        Ok(Ensemble { items })
    }

    pub fn items(&self) -> &[(f64, FockVector)] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn states(&self) -> impl Iterator<Item = &FockVector> + Clone {
        self.items.iter().map(|(_, s)| s)
    }

    /// Coordinate frame covering every state's support.
    pub fn frame(&self) -> Frame {
        Frame::new(self.states())
    }

    /// Dimension of the span of the states.
    pub fn span_dim(&self) -> usize {
        let frame = self.frame();
        let mut basis = Vec::new();
        let dense: Vec<Dense> = self.states().map(|s| frame.to_dense(s).expect("frame covers states")).collect();
        linalg::extend_orthonormal(&mut basis, &dense);
        basis.len()
    }

    /// Orthonormal basis of the span, in state order.
    pub fn span(&self) -> Subspace {
        Subspace::spanned_by(self.states()).expect("ensemble states are nonzero")
    }

    /// Parses the ensemble file format.
    ///
    /// Each state starts with a `state <weight>` line followed by its term
    /// lines. Blank lines and `#` comments are ignored. Weights within 1e-6 of
    /// summing to 1 are renormalized.
    pub fn parse(text: &str) -> Result<Self> {
        // (header line, weight, term lines)
        type Block<'a> = (usize, f64, Vec<(usize, &'a str)>);
        let mut blocks: Vec<Block> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("state") {
                let w: f64 = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse { line: no, msg: format!("bad state weight {:?}", rest.trim()) })?;
                if !(w > 0.0 && w.is_finite()) {
                    return Err(Error::Parse { line: no, msg: format!("state weight {w} must be positive") });
                }
                blocks.push((no, w, Vec::new()));
            } else {
                let block = blocks
                    .last_mut()
                    .ok_or(Error::Parse { line: no, msg: "term line before any `state` header".into() })?;
                block.2.push((no, line));
            }
        }
        if blocks.is_empty() {
            return Err(Error::Parse { line: 1, msg: "no `state` blocks".into() });
        }
        let total: f64 = blocks.iter().map(|b| b.1).sum();
        if (total - 1.0).abs() > crate::fockstring::PARSE_NORM_TOLERANCE {
            return Err(Error::Parse { line: blocks[0].0, msg: format!("state weights sum to {total}, not 1") });
        }
        let mut items = Vec::with_capacity(blocks.len());
        for (no, w, lines) in blocks {
            if lines.is_empty() {
                return Err(Error::Parse { line: no, msg: "state has no terms".into() });
            }
            let psi = crate::fockstring::parse_state_lines(lines.into_iter())?;
            items.push((w / total, psi));
        }
        Ensemble::new(items)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, (p, psi)) in self.items.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            out.push_str(&format!("state {}\n", crate::format::fmt_amplitude(*p)));
            out.push_str(&psi.to_literal());
        }
        out
    }
}

/// A subspace given by an orthonormal basis of Fock vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    basis: Vec<FockVector>,
}

impl Subspace {
    pub fn new(basis: Vec<FockVector>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::NotOrthonormal("empty basis".into()));
        }
        check_orthonormal(&basis)?;
        Ok(Subspace { basis })
    }

    /// Gram-Schmidt span of the given vectors.
    pub fn spanned_by<'a>(vectors: impl IntoIterator<Item = &'a FockVector> + Clone) -> Result<Self> {
        let frame = Frame::new(vectors.clone());
        let dense: Vec<Dense> = vectors.into_iter().map(|v| frame.to_dense(v).expect("frame covers vectors")).collect();
        let mut basis = Vec::new();
        linalg::extend_orthonormal(&mut basis, &dense);
        if basis.is_empty() {
            return Err(Error::ZeroVector);
        }
        Ok(Subspace { basis: basis.iter().map(|b| frame.to_fock(b)).collect() })
    }

    pub fn basis(&self) -> &[FockVector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn project(&self, psi: &FockVector) -> FockVector {
        self.basis.iter().fold(FockVector::zero(), |acc, b| &acc + &b.scale(b.inner(psi)))
    }

    pub fn is_orthogonal_to(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|a| other.basis.iter().all(|b| a.inner(b).norm() <= TOLERANCE))
    }

    /// `self ⊕ other` for orthogonal subspaces.
    pub fn direct_sum(&self, other: &Subspace) -> Result<Subspace> {
        if !self.is_orthogonal_to(other) {
            return Err(Error::NotOrthogonal);
        }
        Ok(Subspace { basis: self.basis.iter().chain(&other.basis).cloned().collect() })
    }
}

/// `‖ψ − Proj_X ψ‖ ≤ 1e-9`.
pub fn lies_within(psi: &FockVector, x: &Subspace) -> bool {
    (psi - &x.project(psi)).norm() <= TOLERANCE
}

/// `P(X)`: total weight of states lying entirely within `x`.
pub fn subspace_probability(e: &Ensemble, x: &Subspace) -> f64 {
    e.items.iter().filter(|(_, psi)| lies_within(psi, x)).map(|(p, _)| p).sum()
}

/// `P̄(X) = P(X) / dim X`.
pub fn average_probability(e: &Ensemble, x: &Subspace) -> f64 {
    subspace_probability(e, x) / x.dim() as f64
}

/// `P(X:Y)`: weight of states inside `X ⊕ Y` but not inside `Y`. `None` is the zero subspace.
pub fn relative_probability(e: &Ensemble, x: &Subspace, y: Option<&Subspace>) -> Result<f64> {
    let Some(y) = y else {
        return Ok(subspace_probability(e, x));
    };
    let sum = x.direct_sum(y)?;
    Ok(e.items.iter().filter(|(_, psi)| lies_within(psi, &sum) && !lies_within(psi, y)).map(|(p, _)| p).sum())
}

/// `P̄(X:Y) = P(X:Y) / dim X`.
pub fn relative_average_probability(e: &Ensemble, x: &Subspace, y: Option<&Subspace>) -> Result<f64> {
    Ok(relative_probability(e, x, y)? / x.dim() as f64)
}

/// One subspace of a decomposition with its conditional average probability.
#[derive(Clone, Debug, PartialEq)]
pub struct Part {
    pub subspace: Subspace,
    /// `P̄(Xᵢ : X₁ ⊕ … ⊕ Xᵢ₋₁)`.
    pub cond_avg_prob: f64,
    /// Indices of the ensemble states first captured by this part.
    pub members: Vec<usize>,
}

impl Part {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

/// Ordered orthogonal subspaces `X₁, …, X_m` spanning the ensemble, with the
/// density operator `ρ = Σᵢ P̄(Xᵢ : X₁…ᵢ₋₁) Pᵢ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub parts: Vec<Part>,
    /// Set when two distinct subspaces tied on both average probability and
    /// dimension and the subset order decided between them.
    pub tie_broken: bool,
}

impl Decomposition {
    /// Eigenvalues of `ρ` as `(value, multiplicity)`.
    pub fn density_eigenvalues(&self) -> Vec<(f64, usize)> {
        self.parts.iter().map(|p| (p.cond_avg_prob, p.dim())).collect()
    }

    /// `Σ λ · multiplicity`; 1 for a valid decomposition.
    pub fn trace(&self) -> f64 {
        self.parts.iter().map(|p| p.cond_avg_prob * p.dim() as f64).sum()
    }

    /// `S(ρ) = −Σ λ log₂ λ`, counting multiplicity.
    pub fn von_neumann_entropy(&self) -> f64 {
        von_neumann_entropy(&self.density_eigenvalues())
    }

    pub fn total_dim(&self) -> usize {
        self.parts.iter().map(Part::dim).sum()
    }

    /// Tab-separated `part dim cond_avg_prob length` table.
    pub fn report(&self) -> String {
        let mut out = String::from("part\tdim\tcond_avg_prob\tlength\n");
        for (i, p) in self.parts.iter().enumerate() {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                i + 1,
                p.dim(),
                crate::format::fmt_report(p.cond_avg_prob),
                crate::codec::codeword_length(p.cond_avg_prob)
            ));
        }
        out
    }
}

/// Eigenvalues of the decomposition operator; see [`Decomposition::density_eigenvalues`].
pub fn density_operator(d: &Decomposition) -> Vec<(f64, usize)> {
    d.density_eigenvalues()
}

/// Entropy in bits of a spectrum given as `(value, multiplicity)`; zero eigenvalues contribute nothing.
pub fn von_neumann_entropy(spectrum: &[(f64, usize)]) -> f64 {
    spectrum.iter().filter(|(l, _)| *l > 0.0).map(|(l, m)| -(*m as f64) * l * l.log2()).sum()
}

struct Candidate {
    closure: u64,
    basis: Vec<Dense>,
    prob: f64,
}

impl Candidate {
    fn avg(&self) -> f64 {
        self.prob / self.basis.len() as f64
    }
}

pub fn decompose(e: &Ensemble) -> Result<Decomposition> {
    decompose_with_cap(e, DEFAULT_STATE_CAP)
}

pub fn decompose_with_cap(e: &Ensemble, cap: usize) -> Result<Decomposition> {
    if e.len() > cap || e.len() > 63 {
        return Err(Error::TooManyStates { items: e.len(), cap });
    }
    let frame = e.frame();
    let states: Vec<Dense> = e.states().map(|s| frame.to_dense(s).expect("frame covers states")).collect();
    let probs: Vec<f64> = e.items.iter().map(|(p, _)| *p).collect();

    let mut covered: Vec<Dense> = Vec::new();
    let mut remaining: Vec<usize> = (0..e.len()).collect();
    let mut parts: Vec<Part> = Vec::new();
    let mut tie_broken = false;

    while !remaining.is_empty() {
        let residuals: Vec<Dense> = remaining.iter().map(|&i| linalg::residual(&states[i], &covered)).collect();
        let (best, tied) = best_candidate(&residuals, &remaining, &probs);
        tie_broken |= tied;

        let captured: Vec<usize> = bits(best.closure).map(|k| remaining[k]).collect();
        let avg = best.avg();
        let basis: Vec<FockVector> = best.basis.iter().map(|b| frame.to_fock(b)).collect();
        covered.extend(best.basis);
        remaining.retain(|i| !captured.contains(i));

        match parts.last_mut() {
            Some(last) if (last.cond_avg_prob - avg).abs() <= TIE_EPS => {
                let merged = last.subspace.basis.iter().cloned().chain(basis).collect();
                last.subspace = Subspace { basis: merged };
                last.members.extend(captured);
                let captured_prob: f64 = last.members.iter().map(|&i| probs[i]).sum();
                last.cond_avg_prob = captured_prob / last.subspace.dim() as f64;
            }
            _ => parts.push(Part { subspace: Subspace { basis }, cond_avg_prob: avg, members: captured }),
        }
    }
    Ok(Decomposition { parts, tie_broken })
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |k| mask >> k & 1 == 1)
}

/// Best span of residual subsets, ordered by average probability, then dimension,
/// then the first subset (in mask order) generating it. Also reports whether a
/// distinct subspace tied on both keys.
fn best_candidate(residuals: &[Dense], remaining: &[usize], probs: &[f64]) -> (Candidate, bool) {
    let k = residuals.len();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut best: Option<Candidate> = None;
    let mut tied = false;
    for mask in 1u64..(1u64 << k) {
        let mut basis = Vec::new();
        linalg::extend_orthonormal(&mut basis, bits(mask).map(|j| &residuals[j]));
        if basis.is_empty() {
            continue;
        }
        let closure = (0..k).filter(|&j| linalg::within(&residuals[j], &basis)).fold(0u64, |m, j| m | 1 << j);
        if !seen.insert(closure) {
            continue;
        }
        let prob: f64 = bits(closure).map(|j| probs[remaining[j]]).sum();
        let cand = Candidate { closure, basis, prob };
        match &best {
            None => best = Some(cand),
            Some(b) => {
                let (ca, ba) = (cand.avg(), b.avg());
                if ca > ba + TIE_EPS || ((ca - ba).abs() <= TIE_EPS && cand.basis.len() > b.basis.len()) {
                    best = Some(cand);
                    tied = false;
                } else if (ca - ba).abs() <= TIE_EPS && cand.basis.len() == b.basis.len() {
                    tied = true;
                }
            }
        }
    }
    let best = best.expect("at least one remaining state has a nonzero residual");
    // rebuild the basis from the whole closure, in state order, for a canonical frame
    let mut basis = Vec::new();
    linalg::extend_orthonormal(&mut basis, bits(best.closure).map(|j| &residuals[j]));
    (Candidate { basis, ..best }, tied)
}

/// Identity used in tests and reports: the coordinates of `psi` in a part's basis.
pub fn coordinates(psi: &FockVector, x: &Subspace) -> Vec<Complex64> {
    x.basis.iter().map(|b| b.inner(psi)).collect()
}
