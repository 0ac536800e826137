//! Common eigenvectors, simultaneous diagonalization, conical points and
//! projection pinching.

pub mod blocks;
pub mod conical;
pub mod partition;
pub mod pinch;

pub use blocks::{
    decompose_with, extract_blocks, simultaneous_diagonalize, worst_pair, BlockDecomposition,
    BLOCK_TOL,
};
pub use conical::{
    find_conical, find_conical_with, verify_conical_blocks, BlockCheck, ConicalCertificate,
    ConicalOptions, CONE_THRESHOLD,
};
pub use partition::{partition_support_check, partition_support_residual};
pub use pinch::{pinch, pinch_decompose, PinchDecomposition};
