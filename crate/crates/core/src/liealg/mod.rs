//! Lie structure of sl_n(Q): brackets, ad, unipotent exponentials, adjoint
//! action, and the root data of sl3 and sl4.

mod coords;
mod element;
mod roots;

pub use coords::{BasisVector, CoordMap};
pub use element::{
    ad_matrix, adjoint, b_family, bracket, diagonal_group, exp_unipotent, Conjugator, GlElement,
    GroupElement, SlElement,
};
pub use roots::{standard_cartan, Root, RootDatum, RootSet, ALPHA, BETA, GAMMA};

use crate::error::{Error, Result};
use crate::exactlinalg::{kernel, one, zero, MatQ, VecQ};
use crate::grassmann::SubspaceQ;

/// Ad g(S), re-canonicalized.
pub fn adjoint_subspace<C: Conjugator + ?Sized>(g: &C, s: &SubspaceQ) -> Result<SubspaceQ> {
    let n = g.mat().rows();
    let cm = CoordMap::new(n);
    if s.ambient() != cm.dim() {
        return Err(Error::SizeMismatch(format!(
            "subspace ambient {} is not sl{n}",
            s.ambient()
        )));
    }
    s.map(|v| {
        let x = SlElement::from_coords(n, v)?;
        Ok(adjoint(g, &x)?.coords())
    })
}

/// Elements of sl_n spanning S, one per echelon basis vector.
pub fn elements_of(s: &SubspaceQ) -> Result<Vec<SlElement>> {
    let n = rank_of_ambient(s.ambient())?;
    s.basis().iter().map(|v| SlElement::from_coords(n, v)).collect()
}

/// Span of the given elements.
pub fn span_of(elems: &[SlElement]) -> Result<SubspaceQ> {
    let n = elems.first().map(SlElement::n).ok_or_else(|| Error::InvalidParameter("empty span".into()))?;
    let vs: Vec<_> = elems.iter().map(SlElement::coords).collect();
    SubspaceQ::from_spanning_set(&vs, n * n - 1)
}

/// n such that n² − 1 = d.
pub fn rank_of_ambient(d: usize) -> Result<usize> {
    (2..=16)
        .find(|n| n * n - 1 == d)
        .ok_or_else(|| Error::SizeMismatch(format!("{d} is not dim sl_n")))
}

/// {X in the span of the first `prefix` coordinates : [X, S] ⊆ S}.
pub fn normalizer_in(s: &SubspaceQ, prefix: usize) -> Result<SubspaceQ> {
    let ann = s.annihilator();
    let d = s.ambient();
    let mut rows: Vec<VecQ> = Vec::new();
    if ann.dim() > 0 {
        let a = MatQ::from_rows(ann.basis())?;
        for x in elements_of(s)? {
            let m = &a * &ad_matrix(&x);
            rows.extend(m.row_vecs());
        }
    }
    kernel_on_prefix(rows, d, prefix)
}

/// {X in the span of the first `prefix` coordinates : [X, S] = 0}.
pub fn centralizer_in(s: &SubspaceQ, prefix: usize) -> Result<SubspaceQ> {
    let mut rows = Vec::new();
    for x in elements_of(s)? {
        rows.extend(ad_matrix(&x).row_vecs());
    }
    kernel_on_prefix(rows, s.ambient(), prefix)
}

fn kernel_on_prefix(rows: Vec<VecQ>, d: usize, prefix: usize) -> Result<SubspaceQ> {
    if rows.is_empty() {
        let vs: Vec<_> = (0..prefix)
            .map(|i| (0..d).map(|j| if i == j { one() } else { zero() }).collect())
            .collect();
        return SubspaceQ::from_spanning_set(&vs, d);
    }
    let restricted: Vec<_> = rows.iter().map(|r| r[..prefix].to_vec()).collect();
    let ker = kernel(&MatQ::from_rows(&restricted)?);
    let lifted: Vec<_> = ker
        .into_iter()
        .map(|mut v| {
            v.resize(d, zero());
            v
        })
        .collect();
    SubspaceQ::from_spanning_set(&lifted, d)
}

#[cfg(test)]
mod tests;
