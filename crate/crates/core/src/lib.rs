//! Classicality certification for symmetric multi-qubit states.
//!
//! A spin-j state is handled as a symmetric state of `N = 2j` qubits. The crate
//! builds its real symmetric tensor representation `X`, rearranges the tensor
//! into the matrices `T^(r)` whose positivity is equivalent to positivity of the
//! partial transpose across an `(N-r : r)` cut, and provides the unitaries
//! `R^(r)` that make the two similar.
//!
//! Conventions used throughout:
//! - qubit 1 is the most significant bit of a computational-basis index;
//! - Dicke columns are ordered by excitation count `k` ascending, with
//!   `k = j - m` so `k = 0` is the all-up state `|00...0>`;
//! - `T^(r)` and `R^(r)` index their `(mu, i)` side as a base-4 `mu` block
//!   followed by a base-2 `i` block, `mu`-major.

pub mod cli;
pub mod correlations;
pub mod error;
pub mod linalg;
pub mod magic;
pub mod ppt;
pub mod states;
pub mod symmetric;
pub mod tensor;

pub use error::{Error, Result};
pub use linalg::CMatrix;
pub use symmetric::{MultiIndex, PauliIndex};
pub use tensor::{DensityMatrix, SymmetricTensor};
