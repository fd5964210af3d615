//! Lossless compression of mixtures of non-orthogonal quantum states into
//! indeterminate-length quantum strings.
//!
//! States live in the Fock space of bit strings ([`fockstring`]). Prefix-free
//! subspaces and the condense/expand transforms are in [`prefix`]. The greedy
//! subspace decomposition of an ensemble and its density operator are in
//! [`decomposition`], and [`codec`] turns a decomposition into a prefix-free
//! code with the entropy bounds checked. [`channelsim`] simulates the
//! always-open swap channel, per-qubit noise and lossy truncation.

pub mod channelsim;
pub mod codec;
pub mod decomposition;
pub mod error;
pub mod fockstring;
pub mod format;
pub mod linalg;
pub mod prefix;

pub use codec::{build_code, check_theorem_bounds, LosslessCode};
pub use decomposition::{decompose, Decomposition, Ensemble, Subspace};
pub use error::{Error, Result};
pub use fockstring::{BitString, FockVector, RegisterVector};
