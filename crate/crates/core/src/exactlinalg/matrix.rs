//! Dense exact rational matrices, row reduction and kernels.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::{parse_rat, rat, rat_to_string, to_f64, Rat};
use crate::error::{Error, Result};

pub type VecQ = Vec<Rat>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatQ {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl MatQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatQ { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::SizeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(MatQ { rows, cols, data })
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: &[VecQ]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Ok(MatQ {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().cloned()).collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v: Vec<VecQ> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Self::from_rows(&v).expect("ragged integer rows")
    }

    pub fn diag(d: &[Rat]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn row(&self, i: usize) -> VecQ {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> VecQ {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<VecQ> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        MatQ { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn try_mul(&self, other: &MatQ) -> Result<MatQ> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = MatQ::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<VecQ> {
        if v.len() != self.cols {
            return Err(Error::SizeMismatch("matrix-vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        s += a * x;
                    }
                }
                s
            })
            .collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MatQ::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact determinant by fraction-keeping Gaussian elimination.
    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let pv = a.get(c, c).clone();
            det *= &pv;
            for r in c + 1..n {
                if a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c) / &pv;
                for j in c..n {
                    let v = a.get(c, j) * &f;
                    a.data[r * n + j] -= v;
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<MatQ> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = MatQ::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let r = rref(&aug);
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = MatQ::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.reduced.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(to_f64).collect()
    }

    /// Rows as vectors of "p/q" strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| rat_to_string(self.get(i, j))).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        let v: Result<Vec<VecQ>> =
            rows.iter().map(|r| r.iter().map(|s| parse_rat(s)).collect()).collect();
        Self::from_rows(&v?)
    }

    pub fn hstack(&self, other: &MatQ) -> Result<MatQ> {
        if self.rows != other.rows {
            return Err(Error::SizeMismatch("hstack row counts".into()));
        }
        let mut out = MatQ::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &MatQ) -> Result<MatQ> {
        if self.rows > 0 && other.rows > 0 && self.cols != other.cols {
            return Err(Error::SizeMismatch("vstack column counts".into()));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(MatQ { rows: self.rows + other.rows, cols, data })
    }
}

impl fmt::Debug for MatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatQ{:?}", self.to_strings())
    }
}

impl fmt::Display for MatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.to_strings() {
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for MatQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        let parsed: Result<Vec<VecQ>> = rows
            .iter()
            .map(|r| r.iter().map(super::rat::rat_from_json).collect())
            .collect();
        let parsed = parsed.map_err(serde::de::Error::custom)?;
        MatQ::from_rows(&parsed).map_err(serde::de::Error::custom)
    }
}

impl<'a> Mul<&'a MatQ> for &'a MatQ {
    type Output = MatQ;
    fn mul(self, rhs: &'a MatQ) -> MatQ {
        self.try_mul(rhs).expect("matrix product size mismatch")
    }
}

impl<'a> Add<&'a MatQ> for &'a MatQ {
    type Output = MatQ;
    fn add(self, rhs: &'a MatQ) -> MatQ {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum size mismatch");
        MatQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a MatQ> for &'a MatQ {
    type Output = MatQ;
    fn sub(self, rhs: &'a MatQ) -> MatQ {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference size mismatch");
        MatQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &MatQ {
    type Output = MatQ;
    fn neg(self) -> MatQ {
        MatQ { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: MatQ,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row-echelon form: pivots equal to 1, pivot columns otherwise zero.
pub fn rref(m: &MatQ) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a.get(r, c).recip();
        for j in c..cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..cols {
                if a.get(r, j).is_zero() {
                    continue;
                }
                let v = a.get(r, j) * &f;
                a.data[i * cols + j] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    Rref { reduced: a, pivots, rank }
}

pub fn rank(m: &MatQ) -> usize {
    rref(m).rank
}

/// Basis of {v : m v = 0}, returned as the rows of the reduced echelon form of
/// the solution space.
pub fn kernel(m: &MatQ) -> Vec<VecQ> {
    let r = rref(m);
    let cols = m.cols;
    let free: Vec<usize> = (0..cols).filter(|c| !r.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rat::zero(); cols];
        v[f] = Rat::one();
        for (row, &p) in r.pivots.iter().enumerate() {
            v[p] = -r.reduced.get(row, f).clone();
        }
        basis.push(v);
    }
    if basis.is_empty() {
        return basis;
    }
    let k = MatQ::from_rows(&basis).expect("uniform kernel rows");
    let kr = rref(&k);
    kr.reduced.row_vecs().into_iter().take(kr.rank).collect()
}

/// Solves m x = b exactly; returns one solution when consistent.
pub fn solve(m: &MatQ, b: &[Rat]) -> Option<VecQ> {
    let col = MatQ::from_vec(b.len(), 1, b.to_vec()).ok()?;
    let aug = m.hstack(&col).ok()?;
    let r = rref(&aug);
    if r.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); m.cols];
    for (row, &p) in r.pivots.iter().enumerate() {
        x[p] = r.reduced.get(row, m.cols).clone();
    }
    Some(x)
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> VecQ {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> VecQ {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rat], c: &Rat) -> VecQ {
    a.iter().map(|x| x * c).collect()
}

/// Linear combination Σ cᵢ vᵢ of equally long vectors.
pub fn lincomb(coeffs: &[Rat], vs: &[VecQ]) -> VecQ {
    let d = vs.first().map_or(0, Vec::len);
    let mut out = vec![Rat::zero(); d];
    for (c, v) in coeffs.iter().zip(vs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        let id = MatQ::identity(2);
        let r = rref(&id);
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);

        let r = rref(&MatQ::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.reduced, MatQ::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);

        let z = MatQ::zeros(3, 3);
        let r = rref(&z);
        assert_eq!(r.reduced, z);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&MatQ::identity(3)).is_empty());
        assert_eq!(kernel(&MatQ::from_i64(&[&[1, 1]])), vec![vec![rat(1), rat(-1)]]);
        assert_eq!(kernel(&MatQ::zeros(2, 3)).len(), 3);
    }

    #[test]
    fn inverse_and_det() {
        let m = MatQ::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.det().unwrap(), rat(1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, MatQ::identity(2));
        assert!(MatQ::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(MatQ::from_i64(&[&[0, 1], &[1, 0]]).det().unwrap(), rat(-1));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = MatQ::from_i64(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&m, &[rat(3), rat(1)]).unwrap(), vec![rat(2), rat(1)]);
        let s = MatQ::from_i64(&[&[1, 1], &[2, 2]]);
        assert!(solve(&s, &[rat(1), rat(3)]).is_none());
    }

    #[test]
    fn json_round_trip() {
        let m = MatQ::from_rows(&[vec![super::super::rat::frac(1, 2), rat(-3)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1/2","-3"]]"#);
        let back: MatQ = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
