//! Exact volumes, moments and Selberg-type integrals over the space of monic
//! real polynomials whose roots lie in the closed unit disk, together with
//! exact and Markov-chain samplers for that space (and its Perron subspace),
//! lattice counts of integer polynomials by house, and the statistics used to
//! compare the three against each other.
//!
//! Coefficient convention everywhere: a degree-`N` monic polynomial
//! `x^N + a_1 x^{N-1} + ... + a_N` is stored as `[a_1, ..., a_N]`, so the last
//! entry is `P(0)`.

pub mod error;
pub mod exact;
pub mod lattice;
pub mod poly;
pub mod sampler;
pub mod stats;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{ExactPolyT, ExactScalar, VolumeClass};
pub use poly::{
    DiskClassification, IntMonicPoly, MonicPoly, PerronStatus, RootSet, Signature,
};
