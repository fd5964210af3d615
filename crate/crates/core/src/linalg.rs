//! Dense complex vectors over a fixed frame of basis strings.
//!
//! Everything the decomposition search touches lives in the span of finitely
//! many support strings, so subspace arithmetic is done on dense coordinate
//! vectors and converted back to [`FockVector`]s at the boundary.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::fockstring::{BitString, FockVector, TOLERANCE};

pub type Dense = Vec<Complex64>;

/// Ordered coordinate system: the union of supports of some vectors, in canonical order.
#[derive(Clone, Debug)]
pub struct Frame {
    strings: Vec<BitString>,
    index: HashMap<BitString, usize>,
}

impl Frame {
    pub fn new<'a>(vectors: impl IntoIterator<Item = &'a FockVector>) -> Self {
        let mut strings: Vec<BitString> = vectors.into_iter().flat_map(|v| v.support().copied()).collect();
        strings.sort();
        strings.dedup();
        let index = strings.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Frame { strings, index }
    }

    pub fn dim(&self) -> usize {
        self.strings.len()
    }

    pub fn strings(&self) -> &[BitString] {
        &self.strings
    }

    /// Coordinates of `v`, or `None` if `v` has support outside the frame.
    pub fn to_dense(&self, v: &FockVector) -> Option<Dense> {
        let mut out = vec![Complex64::default(); self.dim()];
        for (s, a) in v.iter() {
            out[*self.index.get(s)?] = *a;
        }
        Some(out)
    }

    /// Coordinates of the part of `v` inside the frame; the rest is dropped.
    pub fn to_dense_lossy(&self, v: &FockVector) -> Dense {
        let mut out = vec![Complex64::default(); self.dim()];
        for (s, a) in v.iter() {
            if let Some(&i) = self.index.get(s) {
                out[i] = *a;
            }
        }
        out
    }

    pub fn to_fock(&self, v: &[Complex64]) -> FockVector {
        FockVector::from_terms(self.strings.iter().copied().zip(v.iter().copied()))
    }
}

/// `⟨a|b⟩`.
pub fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Component of `v` orthogonal to the orthonormal `basis` (two Gram-Schmidt passes).
pub fn residual(v: &[Complex64], basis: &[Dense]) -> Dense {
    let mut r = v.to_vec();
    for _ in 0..2 {
        for b in basis {
            let c = dot(b, &r);
            for (ri, bi) in r.iter_mut().zip(b) {
                *ri -= c * bi;
            }
        }
    }
    r
}

/// Extends the orthonormal `basis` with the parts of `vectors` it does not yet span.
pub fn extend_orthonormal<'a>(basis: &mut Vec<Dense>, vectors: impl IntoIterator<Item = &'a Dense>) {
    for v in vectors {
        let r = residual(v, basis);
        let n = norm(&r);
        if n > TOLERANCE {
            basis.push(r.into_iter().map(|x| x / n).collect());
        }
    }
}

/// True when `v` lies in the span of the orthonormal `basis`.
pub fn within(v: &[Complex64], basis: &[Dense]) -> bool {
    norm(&residual(v, basis)) <= TOLERANCE
}

/// Squared norm of the projection of `v` onto the orthonormal `basis`.
pub fn projected_norm_sqr(v: &[Complex64], basis: &[Dense]) -> f64 {
    basis.iter().map(|b| dot(b, v).norm_sqr()).sum()
}
