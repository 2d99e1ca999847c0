//! Elements of sl_n and of SL_n / GL_n over Q.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::coords::CoordMap;
use crate::exactlinalg::{frac, rat, MatQ, Rat, VecQ};
use crate::error::{Error, Result};

/// Trace-zero exact n×n matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SlElement {
    m: MatQ,
}

impl SlElement {
    pub fn new(m: MatQ) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
        }
        if !m.trace().is_zero() {
            return Err(Error::TraceNotZero(m.trace().to_string()));
        }
        Ok(SlElement { m })
    }

    pub fn zero(n: usize) -> Self {
        SlElement { m: MatQ::zeros(n, n) }
    }

    /// E_ij with 1-based indices i ≠ j.
    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        assert!(i != j && (1..=n).contains(&i) && (1..=n).contains(&j));
        let mut m = MatQ::zeros(n, n);
        m.set(i - 1, j - 1, Rat::one());
        SlElement { m }
    }

    /// Diagonal element; the entries must sum to zero.
    pub fn diagonal(d: &[Rat]) -> Result<Self> {
        Self::new(MatQ::diag(d))
    }

    pub fn from_coords(n: usize, v: &[Rat]) -> Result<Self> {
        Ok(SlElement { m: CoordMap::new(n).matrix(v)? })
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &MatQ {
        &self.m
    }

    pub fn coords(&self) -> VecQ {
        CoordMap::new(self.n()).coords(&self.m).expect("trace-zero by construction")
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        SlElement { m: &self.m + &other.m }
    }

    pub fn sub(&self, other: &Self) -> Self {
        SlElement { m: &self.m - &other.m }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        SlElement { m: self.m.scale(c) }
    }

    /// Σ cᵢ Xᵢ.
    pub fn combination(terms: &[(Rat, &SlElement)]) -> Self {
        let n = terms.first().map(|(_, x)| x.n()).expect("nonempty combination");
        let mut acc = MatQ::zeros(n, n);
        for (c, x) in terms {
            if !c.is_zero() {
                acc = &acc + &x.m.scale(c);
            }
        }
        SlElement { m: acc }
    }

    pub fn is_upper_triangular(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..i).all(|j| self.m.get(i, j).is_zero()))
    }

    pub fn is_strictly_upper(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..=i).all(|j| self.m.get(i, j).is_zero()))
    }
}

impl fmt::Debug for SlElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sl{:?}", self.m.to_strings())
    }
}

impl Serialize for SlElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SlElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = MatQ::deserialize(d)?;
        SlElement::new(m).map_err(serde::de::Error::custom)
    }
}

/// Invertible matrix acting by conjugation.
pub trait Conjugator {
    fn mat(&self) -> &MatQ;
    fn inv_mat(&self) -> &MatQ;
}

/// Determinant-one exact matrix with its cached inverse.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupElement {
    m: MatQ,
    inv: MatQ,
}

impl GroupElement {
    pub fn new(m: MatQ) -> Result<Self> {
        let d = m.det()?;
        if !d.is_one() {
            return Err(Error::DetNotOne(d.to_string()));
        }
        let inv = m.inverse().ok_or(Error::NotInvertible)?;
        Ok(GroupElement { m, inv })
    }

    pub fn identity(n: usize) -> Self {
        GroupElement { m: MatQ::identity(n), inv: MatQ::identity(n) }
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &MatQ {
        &self.m
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { m: self.inv.clone(), inv: self.m.clone() }
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement { m: &self.m * &other.m, inv: &other.inv * &self.inv }
    }

    pub fn is_identity(&self) -> bool {
        self.m == MatQ::identity(self.n())
    }

    /// Upper unitriangular.
    pub fn is_unipotent_upper(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| {
            self.m.get(i, i).is_one() && (0..i).all(|j| self.m.get(i, j).is_zero())
        })
    }
}

impl Conjugator for GroupElement {
    fn mat(&self) -> &MatQ {
        &self.m
    }
    fn inv_mat(&self) -> &MatQ {
        &self.inv
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{:?}", self.m.to_strings())
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = MatQ::deserialize(d)?;
        GroupElement::new(m).map_err(serde::de::Error::custom)
    }
}

/// Any invertible exact matrix with its cached inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GlElement {
    m: MatQ,
    inv: MatQ,
}

impl GlElement {
    pub fn new(m: MatQ) -> Result<Self> {
        let inv = m.inverse().ok_or(Error::NotInvertible)?;
        Ok(GlElement { m, inv })
    }

    pub fn matrix(&self) -> &MatQ {
        &self.m
    }

    pub fn compose(&self, other: &GlElement) -> GlElement {
        GlElement { m: &self.m * &other.m, inv: &other.inv * &self.inv }
    }
}

impl From<GroupElement> for GlElement {
    fn from(g: GroupElement) -> Self {
        GlElement { m: g.m, inv: g.inv }
    }
}

impl Conjugator for GlElement {
    fn mat(&self) -> &MatQ {
        &self.m
    }
    fn inv_mat(&self) -> &MatQ {
        &self.inv
    }
}

/// [X, Y] = XY − YX.
pub fn bracket(x: &SlElement, y: &SlElement) -> Result<SlElement> {
    if x.n() != y.n() {
        return Err(Error::SizeMismatch(format!("sl{} vs sl{}", x.n(), y.n())));
    }
    Ok(SlElement { m: &(&x.m * &y.m) - &(&y.m * &x.m) })
}

/// Matrix of ad X = [X, ·] in the coordinate basis.
pub fn ad_matrix(x: &SlElement) -> MatQ {
    let cm = CoordMap::new(x.n());
    let d = cm.dim();
    let mut out = MatQ::zeros(d, d);
    for j in 0..d {
        let e = SlElement { m: cm.basis_matrix(j) };
        let col = bracket(x, &e).expect("same rank").coords();
        for (i, v) in col.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    out
}

/// Exact exponential Σ_{k<n} X^k/k! of a nilpotent X.
pub fn exp_unipotent(x: &SlElement) -> Result<GroupElement> {
    let n = x.n();
    if !x.m.pow(n as u32).is_zero() {
        return Err(Error::NotNilpotent);
    }
    let mut sum = MatQ::identity(n);
    let mut term = MatQ::identity(n);
    let mut neg_sum = MatQ::identity(n);
    let mut fact = Rat::one();
    for k in 1..n {
        term = &term * &x.m;
        fact *= rat(k as i64);
        let t = term.scale(&fact.recip());
        sum = &sum + &t;
        if k % 2 == 1 {
            neg_sum = &neg_sum - &t;
        } else {
            neg_sum = &neg_sum + &t;
        }
    }
    Ok(GroupElement { m: sum, inv: neg_sum })
}

/// Ad g(X) = g X g⁻¹.
pub fn adjoint<C: Conjugator + ?Sized>(g: &C, x: &SlElement) -> Result<SlElement> {
    if g.mat().rows() != x.n() {
        return Err(Error::SizeMismatch("conjugator and element sizes differ".into()));
    }
    Ok(SlElement { m: &(g.mat() * &x.m) * g.inv_mat() })
}

/// The sl3 element b(x, y, z) = exp(x E12 + y E23 + z E13).
pub fn b_family(x: &Rat, y: &Rat, z: &Rat) -> GroupElement {
    let w = z + x * y * frac(1, 2);
    let m = MatQ::from_rows(&[
        vec![rat(1), x.clone(), w.clone()],
        vec![rat(0), rat(1), y.clone()],
        vec![rat(0), rat(0), rat(1)],
    ])
    .expect("3x3");
    let inv = MatQ::from_rows(&[
        vec![rat(1), -x.clone(), x * y - &w],
        vec![rat(0), rat(1), -y.clone()],
        vec![rat(0), rat(0), rat(1)],
    ])
    .expect("3x3");
    GroupElement { m, inv }
}

/// Diagonal group element; entries must multiply to 1.
pub fn diagonal_group(d: &[Rat]) -> Result<GroupElement> {
    GroupElement::new(MatQ::diag(d))
}
