//! Joint C-numerical ranges of matrix tuples.
//!
//! For a tuple `A = (A_1, …, A_m)` of `n×n` complex matrices and a real
//! weight `c`, the joint range is `W_C(A) = {(tr C U*A_jU)_j : U unitary}`
//! with `C = diag(c)`. The crate evaluates its support function, traces
//! planar boundaries, and decides polyhedrality and commutativity questions
//! with certificates.
//!
//! Randomness (direction sampling, random test families) comes from
//! `ChaCha8Rng::seed_from_u64`, so every run is reproducible from its seed.

pub mod cli;
pub mod crange;
pub mod decide;
pub mod error;
pub mod family;
pub mod fixtures;
pub mod linalg;
pub mod structure;

pub use error::{Error, Result};
pub use family::MatrixTuple;
pub use linalg::ComplexMatrix;
