//! Hybrid quantum-classical Viterbi decoding of small binary linear codes.
//!
//! The decoder searches the codespace of an `[n, k, d]` code for the
//! codewords closest to a received vector by training a QAOA circuit:
//!
//! * the initial state is the uniform superposition of all codewords,
//! * the cost Hamiltonian's eigenvalue on a codeword is its Hamming distance
//!   to the received vector,
//! * the mixer is the sum of `X`-strings over the minimum-weight codewords,
//!   which keeps every state inside the codespace.
//!
//! Every quantum result can be checked against the classical trellis Viterbi
//! decoder in [`trellis`].
//!
//! ```
//! use qviterbi::{code, qaoa, statevector::CircuitMode};
//!
//! let code = code::lbc_633();
//! let received = "111011".parse().unwrap();
//! let problem = qaoa::QaoaProblem::new(&code, &received, CircuitMode::default()).unwrap();
//! let result = qaoa::train_upo(&problem, &qaoa::TrainingConfig { seed: 7, ..Default::default() }).unwrap();
//! assert_eq!(result.argmax_states(1e-9), vec!["011011".parse().unwrap()]);
//! ```

pub mod bits;
pub mod cli;
pub mod code;
pub mod error;
pub mod gf2;
pub mod hamiltonian;
pub mod optim;
pub mod qaoa;
pub mod statevector;
pub mod trellis;

pub use bits::{hamming_distance, BitVector};
pub use code::Code;
pub use error::{Error, Result};
pub use gf2::Gf2Matrix;
