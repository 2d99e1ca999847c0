//! Exact and floating points of Grassmannians of sl_n, and limits of sequences.

mod float;
mod limit;
mod subspace;

pub use float::{distance, SubspaceF};
pub use limit::{limit_estimate, Certificate, LimitEstimate, SeqFamily};
pub use subspace::{binomial, for_each_combination, PluckerVec, SubspaceQ};
