//! Always-open swap channel, per-qubit noise reports and lossy truncation.
//!
//! The channel is a chain of qubits: Alice's memory, one transmission cell and
//! Bob's memory, all starting at zero apart from Alice's message. At step `i`
//! Alice swaps her qubit `i` with the cell and the cell is then swapped with
//! Bob's qubit `i`, so after `i` steps Bob holds the first `i` message qubits.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codec::{codeword_length, LosslessCode};
use crate::decomposition::{von_neumann_entropy, Ensemble};
use crate::error::{Error, Result};
use crate::fockstring::{BitString, FockVector, RegisterVector, TOLERANCE};
use crate::format::fmt_report;
use crate::linalg::{self, Dense};

pub const DEFAULT_QUBIT_CAP: usize = 16;

/// Eigenvalues at or below this are treated as outside the support of ρ.
const EIGEN_FLOOR: f64 = 1e-12;
/// Eigenvalues closer than this are grouped into one degenerate eigenspace.
const DEGENERACY_TOLERANCE: f64 = 1e-9;
/// Upper bound on (state sequences × branches) visited by [`lossy_truncate`].
const LOSSY_WORK_CAP: u128 = 1 << 24;

/// Joint state of Alice's memory, the cell and Bob's memory, in that qubit order.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelState {
    joint: RegisterVector,
    alice_width: usize,
    bob_width: usize,
    step: usize,
}

impl ChannelState {
    pub fn joint(&self) -> &RegisterVector {
        &self.joint
    }

    pub fn alice_width(&self) -> usize {
        self.alice_width
    }

    pub fn bob_width(&self) -> usize {
        self.bob_width
    }

    pub fn step(&self) -> usize {
        self.step
    }

    fn cell_index(&self) -> usize {
        self.alice_width
    }

    fn bob_offset(&self) -> usize {
        self.alice_width + 1
    }

    /// True when Alice's memory and the cell are `|0…0⟩` in every branch.
    pub fn sender_cleared(&self) -> bool {
        let n = self.bob_offset();
        self.joint.iter().all(|(s, _)| s.slice(0, n).value() == 0)
    }

    /// Bob's memory as a pure state, available once the sender side has factored out.
    pub fn bob_state(&self) -> Option<RegisterVector> {
        if !self.sender_cleared() {
            return None;
        }
        let (lo, hi) = (self.bob_offset(), self.joint.width());
        RegisterVector::new(self.bob_width, self.joint.iter().map(|(s, a)| (s.slice(lo, hi), *a))).ok()
    }

    /// `⟨m|ρ_Bob|m⟩` for a target Bob register `m`.
    pub fn bob_fidelity(&self, target: &RegisterVector) -> f64 {
        assert_eq!(target.width(), self.bob_width);
        let (lo, hi) = (self.bob_offset(), self.joint.width());
        // group joint amplitudes by the sender-side substring and overlap each group with the target
        let mut groups: std::collections::BTreeMap<BitString, Complex64> = Default::default();
        for (s, a) in self.joint.iter() {
            let overlap = target.amplitude(&s.slice(lo, hi)).conj() * a;
            *groups.entry(s.slice(0, lo)).or_default() += overlap;
        }
        groups.values().map(|z| z.norm_sqr()).sum()
    }
}

/// Loads `message` into Alice's memory with the cell and Bob's `bob_width` qubits zeroed.
pub fn channel_init(message: &RegisterVector, bob_width: usize, cap: usize) -> Result<ChannelState> {
    let total = message.width() + 1 + bob_width;
    if total > cap {
        return Err(Error::CapExceeded(format!("channel needs {total} qubits, cap is {cap}")));
    }
    let rest = RegisterVector::zeros(1 + bob_width)?;
    Ok(ChannelState { joint: message.tensor(&rest)?, alice_width: message.width(), bob_width, step: 0 })
}

fn swap_bits(s: &BitString, i: usize, j: usize) -> BitString {
    let (a, b) = (s.bit(i), s.bit(j));
    s.with_bit(i, b).with_bit(j, a)
}

/// Swaps Alice's qubit `step` with the cell, then the cell with Bob's qubit `step`.
pub fn channel_step(s: &ChannelState) -> Result<ChannelState> {
    if s.step >= s.alice_width || s.step >= s.bob_width {
        return Err(Error::StepsExhausted(s.step));
    }
    let (a, c, b) = (s.step, s.cell_index(), s.bob_offset() + s.step);
    let terms = s.joint.iter().map(|(x, amp)| (swap_bits(&swap_bits(x, a, c), c, b), *amp));
    Ok(ChannelState { joint: RegisterVector::new(s.joint.width(), terms)?, step: s.step + 1, ..s.clone() })
}

/// Writes `message` into Alice's qubits `offset..offset + width` during transmission.
///
/// The target qubits must not have been sent yet and must be zero in every branch.
pub fn append_message(s: &ChannelState, message: &RegisterVector, offset: usize) -> Result<ChannelState> {
    let w = message.width();
    if offset < s.step || offset + w > s.alice_width {
        return Err(Error::InvalidArgument(format!(
            "append region {offset}..{} must lie in Alice's unsent qubits {}..{}",
            offset + w,
            s.step,
            s.alice_width
        )));
    }
    if s.joint.iter().any(|(x, _)| x.slice(offset, offset + w).value() != 0) {
        return Err(Error::InvalidArgument("append region is not zero in every branch".into()));
    }
    let mut terms = Vec::with_capacity(s.joint.terms().len() * message.terms().len());
    for (x, a) in s.joint.iter() {
        for (m, b) in message.iter() {
            let y = (0..w).fold(*x, |y, i| y.with_bit(offset + i, m.bit(i)));
            terms.push((y, a * b));
        }
    }
    Ok(ChannelState { joint: RegisterVector::new(s.joint.width(), terms)?, ..s.clone() })
}

/// Outcome of [`transmit`].
#[derive(Clone, Debug)]
pub struct TransmitReport {
    pub steps: usize,
    /// Bob's state when the transfer is complete.
    pub bob: Option<RegisterVector>,
    /// The joint state, kept for incomplete transfers.
    pub joint: RegisterVector,
    /// `⟨m|ρ_Bob|m⟩` against the message placed in Bob's memory.
    pub fidelity: f64,
}

impl TransmitReport {
    pub fn complete(&self) -> bool {
        self.bob.is_some()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "steps\t{}\nstatus\t{}\nfidelity\t{}\n",
            self.steps,
            if self.complete() { "complete" } else { "transfer incomplete" },
            fmt_report(self.fidelity)
        );
        match &self.bob {
            Some(bob) => {
                out.push_str("# bob\n");
                out.push_str(&bob.to_literal());
            }
            None => {
                out.push_str("# joint alice|cell|bob\n");
                out.push_str(&self.joint.to_literal());
            }
        }
        out
    }
}

/// Moves `message` into a `width`-qubit register, dropping branches that do not fit.
fn place(message: &RegisterVector, width: usize) -> Result<RegisterVector> {
    let terms = message.iter().filter_map(|(s, a)| {
        if s.len() <= width {
            Some(s.pad_to(width).map(|p| (p, *a)))
        } else if s.slice(width, s.len()).value() == 0 {
            Some(Ok((s.slice(0, width), *a)))
        } else {
            None
        }
    });
    RegisterVector::new(width, terms.collect::<Result<Vec<_>>>()?)
}

/// Runs `steps` channel steps with Bob's memory as wide as the message.
pub fn transmit(message: &RegisterVector, steps: usize, cap: usize) -> Result<TransmitReport> {
    let mut s = channel_init(message, message.width(), cap)?;
    for _ in 0..steps {
        s = channel_step(&s)?;
    }
    let target = place(message, s.bob_width)?;
    Ok(TransmitReport { steps, fidelity: s.bob_fidelity(&target), bob: s.bob_state(), joint: s.joint })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoiseModel {
    /// Each qubit is independently flagged as disturbed.
    Erasure,
    /// Each qubit is independently flipped; used by the Monte Carlo check.
    BitFlip,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseConfig {
    pub per_qubit_prob: f64,
    pub model: NoiseModel,
}

impl NoiseConfig {
    pub fn new(per_qubit_prob: f64, model: NoiseModel) -> Result<Self> {
        if !(0.0..=1.0).contains(&per_qubit_prob) {
            return Err(Error::InvalidArgument(format!("noise probability {per_qubit_prob} outside [0, 1]")));
        }
        Ok(NoiseConfig { per_qubit_prob, model })
    }

    /// Probability that at least one of `len` qubits is disturbed; `len` may be fractional.
    pub fn touch_probability(&self, len: f64) -> f64 {
        1.0 - (1.0 - self.per_qubit_prob).powf(len)
    }

    /// `Σ_{k<len} p(1−p)^k`, equal to `1 − (1−p)^len` but exact for a single qubit.
    pub fn touch_probability_qubits(&self, len: usize) -> f64 {
        let p = self.per_qubit_prob;
        (0..len).map(|k| p * (1.0 - p).powi(k as i32)).sum()
    }

    /// Probability that `len` qubits all survive.
    pub fn survival(&self, len: f64) -> f64 {
        (1.0 - self.per_qubit_prob).powf(len)
    }
}

/// Code from the eigenbasis of `ρ = Σ pᵢ|ψᵢ⟩⟨ψᵢ|`, one codeword per eigenvector.
#[derive(Clone, Debug)]
pub struct EigenCode {
    /// Eigenvalues in decreasing order, matching the code's source basis.
    pub eigenvalues: Vec<f64>,
    /// `−log₂ λₖ`.
    pub ideal_lengths: Vec<f64>,
    /// `max(1, ⌈−log₂ λₖ⌉)`.
    pub lengths: Vec<usize>,
    pub code: LosslessCode,
}

impl EigenCode {
    pub fn entropy(&self) -> f64 {
        let spectrum: Vec<(f64, usize)> = self.eigenvalues.iter().map(|l| (*l, 1)).collect();
        von_neumann_entropy(&spectrum)
    }
}

/// Diagonalizes the ensemble density matrix and codes each eigenvector by its eigenvalue.
///
/// Eigenvectors are ordered by decreasing eigenvalue. A degenerate eigenspace
/// gets the basis obtained by projecting the frame's unit vectors in string
/// order, and each vector's first nonzero coordinate is made real positive.
pub fn average_length_code(e: &Ensemble) -> Result<EigenCode> {
    let frame = e.frame();
    let n = frame.dim();
    let mut rho = DMatrix::<Complex64>::zeros(n, n);
    for (p, psi) in e.items() {
        let v = frame.to_dense(psi).expect("frame covers states");
        for i in 0..n {
            for j in 0..n {
                rho[(i, j)] += v[i] * v[j].conj() * *p;
            }
        }
    }
    let eig = rho.symmetric_eigen();
    let mut pairs: Vec<(f64, Dense)> = (0..n)
        .filter(|&k| eig.eigenvalues[k] > EIGEN_FLOOR)
        .map(|k| (eig.eigenvalues[k], eig.eigenvectors.column(k).iter().copied().collect()))
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut eigenvalues = Vec::with_capacity(pairs.len());
    let mut vectors: Vec<Dense> = Vec::with_capacity(pairs.len());
    let mut start = 0;
    while start < pairs.len() {
        let end =
            (start..pairs.len()).find(|&k| pairs[start].0 - pairs[k].0 > DEGENERACY_TOLERANCE).unwrap_or(pairs.len());
        let space: Vec<Dense> = pairs[start..end].iter().map(|(_, v)| v.clone()).collect();
        let mean = pairs[start..end].iter().map(|(l, _)| l).sum::<f64>() / (end - start) as f64;
        let mut canonical: Vec<Dense> = Vec::with_capacity(space.len());
        for i in 0..n {
            if canonical.len() == space.len() {
                break;
            }
            let projected = project(&unit(n, i), &space);
            linalg::extend_orthonormal(&mut canonical, [&projected]);
        }
        for v in canonical {
            eigenvalues.push(mean);
            vectors.push(fix_phase(v));
        }
        start = end;
    }

    let ideal_lengths: Vec<f64> = eigenvalues.iter().map(|l: &f64| -l.log2()).collect();
    let lengths: Vec<usize> = eigenvalues.iter().map(|l| codeword_length(l.min(1.0))).collect();
    let parts: Vec<(Vec<FockVector>, usize)> =
        vectors.iter().zip(&lengths).map(|(v, l)| (vec![frame.to_fock(v)], *l)).collect();
    let code = LosslessCode::from_parts(&parts)?;
    Ok(EigenCode { eigenvalues, ideal_lengths, lengths, code })
}

fn unit(n: usize, i: usize) -> Dense {
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[i] = Complex64::new(1.0, 0.0);
    v
}

fn project(v: &[Complex64], basis: &[Dense]) -> Dense {
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for b in basis {
        let c = linalg::dot(b, v);
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

fn fix_phase(mut v: Dense) -> Dense {
    if let Some(first) = v.iter().find(|z| z.norm() > TOLERANCE).copied() {
        let phase = first.conj() / first.norm();
        v.iter_mut().for_each(|z| *z *= phase);
    }
    v
}

/// Per-state disturbance figures for one coding arm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArmMetrics {
    pub base_length: usize,
    /// `1 − (1−p)^L`.
    pub touch_probability: f64,
    /// `Σ |α|² (1−p)^l` over the encoded branches.
    pub untouched_weight: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateDisturbance {
    pub weight: f64,
    pub base_code: ArmMetrics,
    pub eigen_code: ArmMetrics,
    /// Untouched weight with the ideal real-valued lengths `−log₂ λₖ`.
    pub eigen_ideal_untouched: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DisturbanceReport {
    pub noise: NoiseConfig,
    pub states: Vec<StateDisturbance>,
}

impl DisturbanceReport {
    fn mean(&self, f: impl Fn(&StateDisturbance) -> f64) -> f64 {
        self.states.iter().map(|s| s.weight * f(s)).sum()
    }

    pub fn expected_touch_probability(&self) -> f64 {
        self.mean(|s| s.base_code.touch_probability)
    }

    pub fn expected_untouched_weight(&self) -> f64 {
        self.mean(|s| s.base_code.untouched_weight)
    }

    pub fn expected_eigen_touch_probability(&self) -> f64 {
        self.mean(|s| s.eigen_code.touch_probability)
    }

    pub fn expected_eigen_untouched_weight(&self) -> f64 {
        self.mean(|s| s.eigen_code.untouched_weight)
    }

    pub fn expected_eigen_ideal_untouched(&self) -> f64 {
        self.mean(|s| s.eigen_ideal_untouched)
    }

    /// Tab-separated table with one row per state and a final `mean` row.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from(
            "state\tweight\tbase_L\ttouch_prob\tuntouched_weight\teigen_L\teigen_touch_prob\teigen_untouched_weight\teigen_ideal_untouched_weight\n",
        );
        for (i, s) in self.states.iter().enumerate() {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                i + 1,
                fmt_report(s.weight),
                s.base_code.base_length,
                fmt_report(s.base_code.touch_probability),
                fmt_report(s.base_code.untouched_weight),
                s.eigen_code.base_length,
                fmt_report(s.eigen_code.touch_probability),
                fmt_report(s.eigen_code.untouched_weight),
                fmt_report(s.eigen_ideal_untouched),
            ));
        }
        out.push_str(&format!(
            "mean\t1\t-\t{}\t{}\t-\t{}\t{}\t{}\n",
            fmt_report(self.expected_touch_probability()),
            fmt_report(self.expected_untouched_weight()),
            fmt_report(self.expected_eigen_touch_probability()),
            fmt_report(self.expected_eigen_untouched_weight()),
            fmt_report(self.expected_eigen_ideal_untouched()),
        ));
        out
    }
}

fn arm_metrics(encoded: &FockVector, noise: &NoiseConfig) -> Result<ArmMetrics> {
    let base_length = encoded.base_length()?;
    let untouched_weight = encoded.iter().map(|(s, a)| a.norm_sqr() * noise.survival(s.len() as f64)).sum();
    Ok(ArmMetrics { base_length, touch_probability: noise.touch_probability_qubits(base_length), untouched_weight })
}

/// Analytic disturbance figures for `code` and for the eigenbasis code of `e`.
///
/// A state is "touched" when any of its `L` base-length qubits is disturbed.
pub fn disturbance_report(code: &LosslessCode, e: &Ensemble, noise: NoiseConfig) -> Result<DisturbanceReport> {
    let eigen = average_length_code(e)?;
    let mut states = Vec::with_capacity(e.len());
    for (p, psi) in e.items() {
        let base_code = arm_metrics(&code.encode(psi)?, &noise)?;
        let coeffs = eigen.code.coefficients(psi)?;
        let eigen_code = arm_metrics(&eigen.code.encode(psi)?, &noise)?;
        let eigen_ideal_untouched =
            coeffs.iter().zip(&eigen.ideal_lengths).map(|(c, l)| c.norm_sqr() * noise.survival(*l)).sum();
        states.push(StateDisturbance { weight: *p, base_code, eigen_code, eigen_ideal_untouched });
    }
    Ok(DisturbanceReport { noise, states })
}

/// Sampled counterpart of the base-code touch probability and average fidelity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub trials: usize,
    /// Fraction of trials in which some base-length qubit was hit.
    pub touched_fraction: f64,
    /// Mean `|⟨C(ψ)|N(C(ψ))⟩|²`; erasures count as fidelity 0 when they hit.
    pub mean_fidelity: f64,
}

/// Samples states from `e` and noise events on the first `L` qubits of their encodings.
pub fn monte_carlo_disturbance(
    code: &LosslessCode,
    e: &Ensemble,
    noise: NoiseConfig,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    let encoded: Vec<RegisterVector> = e
        .states()
        .map(|psi| {
            let enc = code.encode(psi)?;
            enc.zero_extended_form(enc.base_length()?)
        })
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut touched, mut fidelity) = (0usize, 0.0);
    for _ in 0..trials {
        let mut r: f64 = rng.gen();
        let k = e.items().iter().position(|(p, _)| {
            r -= p;
            r < 0.0
        });
        let reg = &encoded[k.unwrap_or(e.len() - 1)];
        let hits: Vec<usize> = (0..reg.width()).filter(|_| rng.gen_bool(noise.per_qubit_prob)).collect();
        if hits.is_empty() {
            fidelity += 1.0;
            continue;
        }
        touched += 1;
        if noise.model == NoiseModel::BitFlip {
            let flipped = RegisterVector::new(
                reg.width(),
                reg.iter().map(|(s, a)| (hits.iter().fold(*s, |s, &i| s.with_bit(i, !s.bit(i))), *a)),
            )?;
            fidelity += reg.inner(&flipped).norm_sqr();
        }
    }
    Ok(MonteCarloEstimate {
        trials,
        touched_fraction: touched as f64 / trials as f64,
        mean_fidelity: fidelity / trials as f64,
    })
}

/// Outcome of [`lossy_truncate`].
#[derive(Clone, Debug, PartialEq)]
pub struct LossyReport {
    pub copies: usize,
    pub delta: f64,
    /// `S(ρ)` of the ordinary density matrix.
    pub entropy: f64,
    /// Number of condensed qubits kept, `max(0, ⌈n(S+δ)⌉)`.
    pub cut: usize,
    /// `Σ p ‖ΠΨ‖²`.
    pub success_probability: f64,
    /// `Σ p |⟨Ψ|D(ΠC(Ψ))⟩|²`.
    pub fidelity: f64,
}

impl LossyReport {
    pub fn to_tsv(&self) -> String {
        format!(
            "copies\tdelta\tentropy\tcut\tsuccess_prob\tfidelity\n{}\t{}\t{}\t{}\t{}\t{}\n",
            self.copies,
            fmt_report(self.delta),
            fmt_report(self.entropy),
            self.cut,
            fmt_report(self.success_probability),
            fmt_report(self.fidelity)
        )
    }
}

/// Splits a concatenation of codewords into codeword indices.
fn split_codewords(code: &LosslessCode, s: &BitString) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < s.len() {
        let (k, c) = code
            .codewords()
            .iter()
            .enumerate()
            .find(|(_, c)| pos + c.len() <= s.len() && s.slice(pos, pos + c.len()) == **c)?;
        out.push(k);
        pos += c.len();
    }
    Some(out)
}

/// Branches of the concatenation of `encoded[seq[0]]`, `encoded[seq[1]]`, … no longer than `cut`.
fn concat_within(
    seq: &[usize],
    encoded: &[Vec<(BitString, Complex64)>],
    cut: usize,
    prefix: BitString,
    amp: Complex64,
    out: &mut Vec<(BitString, Complex64)>,
) -> Result<()> {
    let Some((&i, rest)) = seq.split_first() else {
        out.push((prefix, amp));
        return Ok(());
    };
    for (s, a) in &encoded[i] {
        if prefix.len() + s.len() <= cut {
            concat_within(rest, encoded, cut, prefix.concat(s)?, amp * a, out)?;
        }
    }
    Ok(())
}

/// Encodes `n` copies with the eigenbasis code, keeps only branches of at most
/// `⌈n(S+δ)⌉` qubits and decodes.
///
/// Every sequence of ensemble states is treated exactly, so the work grows as
/// `(states × dim)^n` and is capped.
pub fn lossy_truncate(e: &Ensemble, n: usize, delta: f64, cap: usize) -> Result<LossyReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("at least one copy is required".into()));
    }
    let eigen = average_length_code(e)?;
    let max_len = eigen.code.max_length();
    if n * max_len > cap {
        return Err(Error::CapExceeded(format!("{n} copies of length up to {max_len} exceed {cap} qubits")));
    }
    let work = (e.len() as u128 * eigen.code.dim() as u128).checked_pow(n as u32);
    if work.is_none_or(|w| w > LOSSY_WORK_CAP) {
        return Err(Error::CapExceeded(format!("{n} copies of a {}-state ensemble is too much work", e.len())));
    }
    let entropy = eigen.entropy();
    let cut = (n as f64 * (entropy + delta) - TOLERANCE).ceil().max(0.0) as usize;

    let encoded: Vec<Vec<(BitString, Complex64)>> = e
        .states()
        .map(|psi| Ok(eigen.code.encode(psi)?.iter().map(|(s, a)| (*s, *a)).collect()))
        .collect::<Result<_>>()?;
    let coeffs: Vec<Vec<Complex64>> = e.states().map(|psi| eigen.code.coefficients(psi)).collect::<Result<_>>()?;

    let (mut success, mut fidelity) = (0.0, 0.0);
    let mut seq = vec![0usize; n];
    let mut kept: Vec<(BitString, Complex64)> = Vec::new();
    loop {
        let weight: f64 = seq.iter().map(|&i| e.items()[i].0).product();
        kept.clear();
        concat_within(&seq, &encoded, cut, BitString::EMPTY, Complex64::new(1.0, 0.0), &mut kept)?;
        // decode in the product eigenbasis and overlap with the original coordinates
        let (mut norm_sqr, mut overlap) = (0.0, Complex64::new(0.0, 0.0));
        for (s, a) in &kept {
            let ks = split_codewords(&eigen.code, s).ok_or_else(|| Error::NotDecodable(s.to_string()))?;
            let original: Complex64 = seq.iter().zip(&ks).map(|(&i, &k)| coeffs[i][k]).product();
            overlap += original.conj() * a;
            norm_sqr += a.norm_sqr();
        }
        success += weight * norm_sqr;
        fidelity += weight * overlap.norm_sqr();

        // next sequence in odometer order
        let mut j = 0;
        while j < n && seq[j] + 1 == e.len() {
            seq[j] = 0;
            j += 1;
        }
        if j == n {
            break;
        }
        seq[j] += 1;
    }
    Ok(LossyReport { copies: n, delta, entropy, cut, success_probability: success, fidelity })
}
