//! Exact rational linear algebra.

mod matrix;
mod poly;
mod rat;

pub use matrix::{dot, kernel, lincomb, rank, rref, solve, vec_add, vec_is_zero, vec_scale, vec_sub, MatQ, Rref, VecQ};
pub use poly::{charpoly, is_real_rooted, real_roots_with_multiplicity, sturm_distinct_real_roots, PolyQ};
pub use rat::{frac, from_f64, height, one, parse_rat, pow, rat, rat_from_json, rat_json, rat_to_string, serde_rat, sign, to_f64, zero, Rat};
