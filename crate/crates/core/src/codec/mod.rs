//! Prefix-free lossless codes built from a [`Decomposition`].
//!
//! Every basis vector of part `i` is mapped to a classical codeword of length
//! `lᵢ = ⌈−log₂ P̄ᵢ⌉`, where `P̄ᵢ` is the part's conditional average probability.
//! Encoding expresses a state in the source basis and substitutes codewords,
//! so a state with components in several parts becomes an indeterminate-length
//! string whose base length is the longest of those parts' lengths. Since the
//! `P̄ᵢ` sum to one with multiplicity, the lengths satisfy Kraft's inequality
//! and the expected base length lies within one qubit of `S(ρ)`.

mod optimal;
mod side_channel;

pub use optimal::{brute_force_optimal, OptimalCode, DEFAULT_DIM_CAP, DEFAULT_LEN_CAP};
pub use side_channel::{
    encode_header, length_field_width, make_side_channel, parse_header, parse_header_stream, parse_side_channel,
    SideChannelMessage,
};

use std::collections::HashMap;

use num_complex::Complex64;

use crate::decomposition::{Decomposition, Ensemble};
use crate::error::{Error, Result};
use crate::fockstring::{BitString, FockVector, MAX_STRING_LEN, TOLERANCE};
use crate::format::fmt_report;
use crate::prefix::{check_orthonormal, is_prefix_free_space, PrefixFreeBasis};

/// Slack below an integer at which `−log₂ P̄` is treated as that integer.
const LENGTH_SLACK: f64 = 1e-9;

/// `max(1, ⌈−log₂ p⌉)`. Length zero is excluded because superpositions of `|ε⟩` are self-prefix.
pub fn codeword_length(p: f64) -> usize {
    assert!(p > 0.0 && p <= 1.0 + LENGTH_SLACK, "probability {p} outside (0, 1]");
    ((-p.log2() - LENGTH_SLACK).ceil().max(1.0)) as usize
}

/// Canonical prefix code for the given `(length, multiplicity)` pairs.
///
/// Codewords are allocated in order of increasing length (stable for equal
/// lengths), each taking the lexicographically smallest string that keeps the
/// set prefix free. The result follows the input order, multiplicities expanded.
pub fn assign_codewords(lengths: &[(usize, usize)]) -> Result<Vec<BitString>> {
    let max_len = lengths.iter().map(|&(l, _)| l).max().unwrap_or(0);
    if max_len > MAX_STRING_LEN {
        return Err(Error::StringTooLong { len: max_len, max: MAX_STRING_LEN });
    }
    if lengths.iter().any(|&(l, m)| l == 0 && m > 0) {
        return Err(Error::InvalidArgument("codewords must have length at least 1".into()));
    }
    // exact Kraft check in units of 2^-max_len
    let used: u128 = lengths.iter().map(|&(l, m)| (m as u128) << (max_len - l)).sum();
    if used > 1u128 << max_len {
        let sum = lengths.iter().map(|&(l, m)| m as f64 * 2f64.powi(-(l as i32))).sum();
        return Err(Error::KraftViolated { sum });
    }
    let mut order: Vec<(usize, usize)> =
        lengths.iter().enumerate().flat_map(|(k, &(l, m))| std::iter::repeat_n((l, k), m)).collect();
    let mut slots: Vec<Vec<BitString>> = lengths.iter().map(|&(_, m)| Vec::with_capacity(m)).collect();
    order.sort_by_key(|&(l, _)| l);
    let mut next = 0u64;
    let mut prev_len = 0;
    for (l, k) in order {
        next <<= l - prev_len;
        prev_len = l;
        slots[k].push(BitString::from_value(next, l)?);
        next += 1;
    }
    Ok(slots.into_iter().flatten().collect())
}

/// A unitary map from an orthonormal source basis onto classical prefix-free codewords.
#[derive(Clone, Debug, PartialEq)]
pub struct LosslessCode {
    source_basis: Vec<FockVector>,
    part_of: Vec<usize>,
    part_lengths: Vec<usize>,
    codewords: Vec<BitString>,
    index: HashMap<BitString, usize>,
}

impl LosslessCode {
    /// Builds a code from ordered parts, each an orthonormal basis with one codeword length.
    pub fn from_parts(parts: &[(Vec<FockVector>, usize)]) -> Result<Self> {
        let source_basis: Vec<FockVector> = parts.iter().flat_map(|(b, _)| b.iter().cloned()).collect();
        check_orthonormal(&source_basis)?;
        let part_of = parts.iter().enumerate().flat_map(|(i, (b, _))| std::iter::repeat_n(i, b.len())).collect();
        let part_lengths: Vec<usize> = parts.iter().map(|(_, l)| *l).collect();
        let spec: Vec<(usize, usize)> = parts.iter().map(|(b, l)| (*l, b.len())).collect();
        let codewords = assign_codewords(&spec)?;
        let index = codewords.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        Ok(LosslessCode { source_basis, part_of, part_lengths, codewords, index })
    }

    pub fn source_basis(&self) -> &[FockVector] {
        &self.source_basis
    }

    pub fn codewords(&self) -> &[BitString] {
        &self.codewords
    }

    pub fn part_lengths(&self) -> &[usize] {
        &self.part_lengths
    }

    /// Part index of each source basis vector.
    pub fn part_of(&self) -> &[usize] {
        &self.part_of
    }

    pub fn dim(&self) -> usize {
        self.source_basis.len()
    }

    pub fn max_length(&self) -> usize {
        self.codewords.iter().map(BitString::len).max().unwrap_or(0)
    }

    /// `Σ 2^-l` over all codewords.
    pub fn kraft_sum(&self) -> f64 {
        self.codewords.iter().map(|c| 2f64.powi(-(c.len() as i32))).sum()
    }

    /// Codeword basis states `|c_k⟩`, the image of the source basis.
    pub fn image_basis(&self) -> Vec<FockVector> {
        self.codewords.iter().map(|c| FockVector::basis(*c)).collect()
    }

    /// Checks the image basis with the quantum prefix-free test.
    pub fn verify_image(&self) -> Result<PrefixFreeBasis> {
        is_prefix_free_space(&self.image_basis())
    }

    /// Coordinates of `psi` in the source basis, rejecting states outside its span.
    pub fn coefficients(&self, psi: &FockVector) -> Result<Vec<Complex64>> {
        let coeffs: Vec<Complex64> = self.source_basis.iter().map(|b| b.inner(psi)).collect();
        let recon = self.source_basis.iter().zip(&coeffs).fold(FockVector::zero(), |acc, (b, c)| &acc + &b.scale(*c));
        let residual = (psi - &recon).norm();
        if residual > TOLERANCE {
            return Err(Error::OutsideDomain { residual });
        }
        Ok(coeffs)
    }

    pub fn encode(&self, psi: &FockVector) -> Result<FockVector> {
        let coeffs = self.coefficients(psi)?;
        Ok(FockVector::from_terms(self.codewords.iter().copied().zip(coeffs)))
    }

    pub fn decode(&self, encoded: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero();
        let mut stray = 0.0;
        for (s, a) in encoded.iter() {
            match self.index.get(s) {
                Some(&k) => out = &out + &self.source_basis[k].scale(*a),
                None => stray += a.norm_sqr(),
            }
        }
        if stray.sqrt() > TOLERANCE {
            return Err(Error::OutsideDomain { residual: stray.sqrt() });
        }
        Ok(out)
    }

    /// Tab-separated `basis_vector_index part length codeword` table.
    pub fn table(&self) -> String {
        let mut out = String::from("basis_vector_index\tpart\tlength\tcodeword\n");
        for (k, c) in self.codewords.iter().enumerate() {
            out.push_str(&format!("{}\t{}\t{}\t{}\n", k, self.part_of[k] + 1, c.len(), c));
        }
        out
    }
}

/// The optimal code for a decomposition: part `i` gets length `⌈−log₂ P̄ᵢ⌉`.
pub fn build_code(d: &Decomposition) -> Result<LosslessCode> {
    let parts: Vec<(Vec<FockVector>, usize)> =
        d.parts.iter().map(|p| (p.subspace.basis().to_vec(), codeword_length(p.cond_avg_prob))).collect();
    let code = LosslessCode::from_parts(&parts)?;
    debug_assert!(code.kraft_sum() <= 1.0 + 1e-12);
    Ok(code)
}

/// `Σ pᵢ L(C(ψᵢ))`.
pub fn expected_base_length(code: &LosslessCode, e: &Ensemble) -> Result<f64> {
    e.items().iter().map(|(p, psi)| Ok(p * code.encode(psi)?.base_length()? as f64)).sum()
}

/// `Σ pᵢ l̄(C(ψᵢ))`.
pub fn expected_average_length(code: &LosslessCode, e: &Ensemble) -> Result<f64> {
    e.items().iter().map(|(p, psi)| Ok(p * code.encode(psi)?.average_length()?)).sum()
}

/// Outcome of checking `S(ρ) ≤ E[L] ≤ S(ρ) + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    pub entropy: f64,
    pub expected_length: f64,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.lower_holds && self.upper_holds
    }

    pub fn to_tsv(&self) -> String {
        let verdict = |b: bool| if b { "PASS" } else { "FAIL" };
        format!(
            "entropy\texpected_base_length\tlower_bound\tupper_bound\n{}\t{}\t{}\t{}\n",
            fmt_report(self.entropy),
            fmt_report(self.expected_length),
            verdict(self.lower_holds),
            verdict(self.upper_holds)
        )
    }
}

pub fn check_theorem_bounds(code: &LosslessCode, e: &Ensemble, d: &Decomposition) -> Result<TheoremReport> {
    let entropy = d.von_neumann_entropy();
    let expected_length = expected_base_length(code, e)?;
    Ok(TheoremReport {
        entropy,
        expected_length,
        lower_holds: entropy <= expected_length + TOLERANCE,
        upper_holds: expected_length <= entropy + 1.0 + TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::decompose;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn v(terms: &[(&str, f64)]) -> FockVector {
        FockVector::from_real(terms)
    }

    fn words(ws: &[BitString]) -> Vec<String> {
        ws.iter().map(ToString::to_string).collect()
    }

    fn fig2() -> Ensemble {
        Ensemble::new(vec![
            (0.3, v(&[("00", 1.0)])),
            (0.3, v(&[("01", 1.0)])),
            (0.275, v(&[("00", H), ("01", H)])),
            (0.0625, v(&[("10", 1.0)])),
            (0.0625, v(&[("01", H), ("10", H)])),
        ])
        .unwrap()
    }

    fn e_noise(delta: f64) -> Ensemble {
        let (a, b) = ((1.0 - delta).sqrt(), delta.sqrt());
        Ensemble::new(vec![(0.5, v(&[("0", a), ("1", b)])), (0.5, v(&[("0", a), ("1", -b)]))]).unwrap()
    }

    fn classical() -> Ensemble {
        Ensemble::new(vec![(0.5, v(&[("0", 1.0)])), (0.25, v(&[("10", 1.0)])), (0.25, v(&[("11", 1.0)]))]).unwrap()
    }

    #[test]
    fn codeword_lengths() {
        assert_eq!(codeword_length(0.4375), 2);
        assert_eq!(codeword_length(0.125), 3);
        assert_eq!(codeword_length(0.5), 1);
        assert_eq!(codeword_length(1.0), 1);
        assert_eq!(codeword_length(0.125 * (1.0 + 1e-14)), 3);
        assert_eq!(codeword_length(0.125 * (1.0 - 1e-14)), 3);
    }

    #[test]
    fn assign_codewords_examples() {
        assert_eq!(words(&assign_codewords(&[(1, 1), (2, 2)]).unwrap()), ["0", "10", "11"]);
        assert_eq!(words(&assign_codewords(&[(2, 2), (3, 1)]).unwrap()), ["00", "01", "100"]);
        assert!(matches!(assign_codewords(&[(1, 3)]), Err(Error::KraftViolated { .. })));
        // input order is preserved even when lengths are not sorted
        assert_eq!(words(&assign_codewords(&[(3, 1), (1, 1)]).unwrap()), ["100", "0"]);
        let ws = assign_codewords(&[(2, 1), (3, 2), (4, 4)]).unwrap();
        let fs: Vec<_> = ws.iter().map(|w| FockVector::basis(*w)).collect();
        assert!(crate::prefix::is_prefix_free_set(&fs));
    }

    #[test]
    fn build_code_fig2() {
        let code = build_code(&decompose(&fig2()).unwrap()).unwrap();
        assert_eq!(code.part_lengths(), &[2, 3]);
        assert_eq!(words(code.codewords()), ["00", "01", "100"]);
        assert!(code.verify_image().unwrap().verified());
        assert_eq!(
            code.table(),
            "basis_vector_index\tpart\tlength\tcodeword\n0\t1\t2\t00\n1\t1\t2\t01\n2\t2\t3\t100\n"
        );
    }

    #[test]
    fn build_code_noise_and_single_state() {
        let e = e_noise(0.1);
        let code = build_code(&decompose(&e).unwrap()).unwrap();
        assert_eq!(words(code.codewords()), ["0", "1"]);
        for psi in e.states() {
            let enc = code.encode(psi).unwrap();
            assert!(enc.is_determinate());
            assert_eq!(enc.base_length().unwrap(), 1);
        }
        let single = Ensemble::new(vec![(1.0, v(&[("0", 0.6), ("11", 0.8)]))]).unwrap();
        let code = build_code(&decompose(&single).unwrap()).unwrap();
        assert_eq!(code.part_lengths(), &[1]);
        assert_eq!(words(code.codewords()), ["0"]);
    }

    #[test]
    fn encode_fig2() {
        let code = build_code(&decompose(&fig2()).unwrap()).unwrap();
        let enc = code.encode(&v(&[("01", H), ("10", H)])).unwrap();
        let expected = v(&[("01", H), ("100", H)]);
        assert!((enc.inner(&expected).norm() - 1.0).abs() < 1e-12);
        assert_eq!(enc.base_length().unwrap(), 3);
        assert!(!enc.is_determinate());
        let two = code.encode(&v(&[("10", 1.0)])).unwrap();
        assert!((two.inner(&v(&[("100", 1.0)])).norm() - 1.0).abs() < 1e-12);
        assert!(two.is_determinate());
    }

    #[test]
    fn encode_rejects_states_outside_domain() {
        let code = build_code(&decompose(&classical()).unwrap()).unwrap();
        assert!(matches!(code.encode(&v(&[("01", 1.0)])), Err(Error::OutsideDomain { .. })));
        assert!(matches!(code.decode(&v(&[("111", 1.0)])), Err(Error::OutsideDomain { .. })));
    }

    #[test]
    fn expected_lengths() {
        let e = fig2();
        let code = build_code(&decompose(&e).unwrap()).unwrap();
        assert!((expected_base_length(&code, &e).unwrap() - 2.125).abs() < 1e-12);
        let e = e_noise(0.3);
        let code = build_code(&decompose(&e).unwrap()).unwrap();
        assert!((expected_base_length(&code, &e).unwrap() - 1.0).abs() < 1e-12);
        let e = classical();
        let code = build_code(&decompose(&e).unwrap()).unwrap();
        assert!((expected_base_length(&code, &e).unwrap() - 1.5).abs() < 1e-12);
        assert!((expected_average_length(&code, &e).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn theorem_bounds_examples() {
        let uniform = Ensemble::new(["00", "01", "10", "11"].iter().map(|s| (0.25, v(&[(s, 1.0)]))).collect()).unwrap();
        for (e, s, l) in [(fig2(), 1.418564, 2.125), (e_noise(0.2), 1.0, 1.0), (uniform, 2.0, 2.0)] {
            let d = decompose(&e).unwrap();
            let code = build_code(&d).unwrap();
            let r = check_theorem_bounds(&code, &e, &d).unwrap();
            assert!((r.entropy - s).abs() < 1e-6, "{r:?}");
            assert!((r.expected_length - l).abs() < 1e-12);
            assert!(r.passed());
        }
    }

    #[test]
    fn round_trip_random_states_in_span() {
        use rand::{Rng, SeedableRng};
        let e = fig2();
        let code = build_code(&decompose(&e).unwrap()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let psi = FockVector::from_terms(
                ["00", "01", "10"]
                    .iter()
                    .map(|s| (s.parse().unwrap(), Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))),
            )
            .normalized()
            .unwrap();
            let back = code.decode(&code.encode(&psi).unwrap()).unwrap();
            assert!((&back - &psi).norm() < 1e-9);
        }
    }
}
