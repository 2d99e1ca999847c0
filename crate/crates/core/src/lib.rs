//! Exact and floating computations on limits of Cartan subspaces of sl_n(R).

pub mod error;
pub mod exactlinalg;
pub mod grassmann;
pub mod liealg;
pub mod chabauty;
pub mod cli;
pub mod projective;
pub mod sampling;
pub mod seqs;
pub mod sl3;
pub mod sl4;
pub mod suites;
pub mod topology;

pub use error::{Error, Result};
