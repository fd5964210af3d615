//! Exhaustive search for the best prefix-free code on small ensembles.
//!
//! A prefix-free code on the span of an ensemble splits it into orthogonal
//! pieces `W₁ ⊕ … ⊕ W_m`, each encoded with one codeword length. A state's
//! base length is the longest length among the pieces it has a component in.
//! The search enumerates chains of closed state subsets
//! `F₁ ⊂ F₂ ⊂ … ⊂ F_m = all` with `Wₖ = span(Fₖ) ⊖ span(Fₖ₋₁)`, and every
//! Kraft-admissible length assignment to the pieces.

use crate::decomposition::Ensemble;
use crate::error::{Error, Result};
use crate::fockstring::TOLERANCE;
use crate::linalg::{self, Dense};

use super::LosslessCode;

pub const DEFAULT_DIM_CAP: usize = 3;
pub const DEFAULT_LEN_CAP: usize = 4;

const MAX_ITEMS: usize = 12;

/// The best code found by [`brute_force_optimal`].
#[derive(Clone, Debug)]
pub struct OptimalCode {
    pub expected_length: f64,
    pub code: LosslessCode,
    /// Codeword length of each piece of the witness chain.
    pub lengths: Vec<usize>,
    /// Dimension of each piece of the witness chain.
    pub dims: Vec<usize>,
}

#[derive(Clone)]
struct Flat {
    mask: u64,
    rank: usize,
}

pub fn brute_force_optimal(e: &Ensemble, dim_cap: usize, len_cap: usize) -> Result<OptimalCode> {
    if e.len() > MAX_ITEMS {
        return Err(Error::CapExceeded(format!("{} states > {MAX_ITEMS}", e.len())));
    }
    let span_dim = e.span_dim();
    if span_dim > dim_cap {
        return Err(Error::CapExceeded(format!("span dimension {span_dim} > {dim_cap}")));
    }
    let frame = e.frame();
    let states: Vec<Dense> = e.states().map(|s| frame.to_dense(s).expect("frame covers states")).collect();
    let probs: Vec<f64> = e.items().iter().map(|(p, _)| *p).collect();
    let n = states.len();
    let full = (1u64 << n) - 1;

    let span_of = |mask: u64| {
        let mut basis = Vec::new();
        linalg::extend_orthonormal(&mut basis, (0..n).filter(|k| mask >> k & 1 == 1).map(|k| &states[k]));
        basis
    };

    let mut flats: Vec<Flat> = Vec::new();
    for mask in 1..=full {
        let basis = span_of(mask);
        let closure = (0..n).filter(|&k| linalg::within(&states[k], &basis)).fold(0u64, |m, k| m | 1 << k);
        if closure == mask {
            flats.push(Flat { mask, rank: basis.len() });
        }
    }

    let mut best: Option<(f64, Vec<u64>, Vec<usize>)> = None;
    let mut chain = Vec::new();
    search_chains(&flats, 0, 0, full, &mut chain, &mut |chain: &[&Flat]| {
        let pieces = chain_pieces(chain, &span_of);
        let dims: Vec<usize> = pieces.iter().map(Vec::len).collect();
        // components[i][k]: does state i touch piece k
        let touches: Vec<Vec<bool>> = states
            .iter()
            .map(|s| pieces.iter().map(|w| linalg::projected_norm_sqr(s, w).sqrt() > TOLERANCE).collect())
            .collect();
        for_each_lengths(&dims, len_cap, &mut |lengths| {
            let cost: f64 = probs
                .iter()
                .zip(&touches)
                .map(|(p, t)| {
                    p * t.iter().zip(lengths).filter(|(hit, _)| **hit).map(|(_, l)| *l).max().unwrap_or(0) as f64
                })
                .sum();
            if best.as_ref().is_none_or(|(c, _, _)| cost < c - 1e-12) {
                best = Some((cost, chain.iter().map(|f| f.mask).collect(), lengths.to_vec()));
            }
        });
    });

    let (expected_length, masks, lengths) =
        best.ok_or_else(|| Error::CapExceeded(format!("no Kraft-admissible lengths up to {len_cap}")))?;
    let flats_used: Vec<Flat> = masks.iter().map(|&m| flats.iter().find(|f| f.mask == m).cloned().unwrap()).collect();
    let refs: Vec<&Flat> = flats_used.iter().collect();
    let pieces = chain_pieces(&refs, &span_of);
    let dims = pieces.iter().map(Vec::len).collect();
    let parts: Vec<_> =
        pieces.iter().zip(&lengths).map(|(w, l)| (w.iter().map(|b| frame.to_fock(b)).collect(), *l)).collect();
    let code = LosslessCode::from_parts(&parts)?;
    Ok(OptimalCode { expected_length, code, lengths, dims })
}

/// Orthonormal bases of `span(Fₖ) ⊖ span(Fₖ₋₁)` along a chain.
fn chain_pieces(chain: &[&Flat], span_of: &impl Fn(u64) -> Vec<Dense>) -> Vec<Vec<Dense>> {
    let mut covered: Vec<Dense> = Vec::new();
    let mut pieces = Vec::with_capacity(chain.len());
    for f in chain {
        let before = covered.len();
        linalg::extend_orthonormal(&mut covered, &span_of(f.mask));
        pieces.push(covered[before..].to_vec());
    }
    pieces
}

fn search_chains<'a>(
    flats: &'a [Flat],
    current_mask: u64,
    current_rank: usize,
    full: u64,
    chain: &mut Vec<&'a Flat>,
    visit: &mut impl FnMut(&[&'a Flat]),
) {
    if current_mask == full {
        visit(chain);
        return;
    }
    for f in flats {
        if f.mask & current_mask == current_mask && f.mask != current_mask && f.rank > current_rank {
            chain.push(f);
            search_chains(flats, f.mask, f.rank, full, chain, visit);
            chain.pop();
        }
    }
}

/// Every length vector in `1..=len_cap` with `Σ dimₖ 2^-lₖ ≤ 1`.
fn for_each_lengths(dims: &[usize], len_cap: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(dims: &[usize], len_cap: usize, acc: &mut Vec<usize>, used: u128, visit: &mut impl FnMut(&[usize])) {
        let budget = 1u128 << len_cap;
        if acc.len() == dims.len() {
            visit(acc);
            return;
        }
        let d = dims[acc.len()] as u128;
        for l in 1..=len_cap {
            let cost = d << (len_cap - l);
            if used + cost <= budget {
                acc.push(l);
                rec(dims, len_cap, acc, used + cost, visit);
                acc.pop();
            }
        }
    }
    rec(dims, len_cap, &mut Vec::new(), 0, visit);
}
