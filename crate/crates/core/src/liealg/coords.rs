//! Fixed ordered basis of sl_n used as the ambient coordinate space.

use num_traits::Zero;

use crate::exactlinalg::{MatQ, Rat, VecQ};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisVector {
    /// Elementary matrix E_ij (0-based indices, i ≠ j).
    E(usize, usize),
    /// H_k = E_kk − E_{k+1,k+1} (0-based k).
    H(usize),
}

/// Basis order: E_ij with i < j row-major, then H_1..H_{n−1}, then E_ij with
/// i > j row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordMap {
    n: usize,
    basis: Vec<BasisVector>,
}

impl CoordMap {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "sl_n needs n >= 2");
        let mut basis = Vec::with_capacity(n * n - 1);
        for i in 0..n {
            for j in i + 1..n {
                basis.push(BasisVector::E(i, j));
            }
        }
        for k in 0..n - 1 {
            basis.push(BasisVector::H(k));
        }
        for i in 0..n {
            for j in 0..i {
                basis.push(BasisVector::E(i, j));
            }
        }
        CoordMap { n, basis }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of leading coordinates spanning the upper-triangular Borel b.
    pub fn borel_dim(&self) -> usize {
        self.n * (self.n - 1) / 2 + self.n - 1
    }

    /// Number of leading coordinates spanning the strictly upper-triangular n.
    pub fn nilradical_dim(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    /// Coordinate index of E_ij (0-based, i ≠ j).
    pub fn index_of_e(&self, i: usize, j: usize) -> usize {
        self.basis
            .iter()
            .position(|b| *b == BasisVector::E(i, j))
            .expect("E_ij with i != j is a basis vector")
    }

    pub fn index_of_h(&self, k: usize) -> usize {
        self.nilradical_dim() + k
    }

    pub fn label(&self, idx: usize) -> String {
        match self.basis[idx] {
            BasisVector::E(i, j) => format!("E{}{}", i + 1, j + 1),
            BasisVector::H(k) => format!("H{}", k + 1),
        }
    }

    pub fn coords(&self, m: &MatQ) -> Result<VecQ> {
        let n = self.n;
        if m.rows() != n || m.cols() != n {
            return Err(Error::SizeMismatch(format!("expected a {n}x{n} matrix")));
        }
        if !m.trace().is_zero() {
            return Err(Error::TraceNotZero(m.trace().to_string()));
        }
        let mut out = Vec::with_capacity(self.dim());
        let mut partial = Rat::zero();
        for b in &self.basis {
            out.push(match *b {
                BasisVector::E(i, j) => m.get(i, j).clone(),
                BasisVector::H(k) => {
                    partial += m.get(k, k);
                    partial.clone()
                }
            });
        }
        Ok(out)
    }

    pub fn matrix(&self, v: &[Rat]) -> Result<MatQ> {
        if v.len() != self.dim() {
            return Err(Error::SizeMismatch(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                v.len()
            )));
        }
        let n = self.n;
        let mut m = MatQ::zeros(n, n);
        for (b, x) in self.basis.iter().zip(v) {
            if x.is_zero() {
                continue;
            }
            match *b {
                BasisVector::E(i, j) => m.set(i, j, x.clone()),
                BasisVector::H(k) => {
                    let a = m.get(k, k) + x;
                    m.set(k, k, a);
                    let b = m.get(k + 1, k + 1) - x;
                    m.set(k + 1, k + 1, b);
                }
            }
        }
        Ok(m)
    }

    /// Float projection of coordinates onto the entries of the matrix.
    pub fn basis_matrix(&self, idx: usize) -> MatQ {
        let mut v = vec![Rat::zero(); self.dim()];
        v[idx] = crate::exactlinalg::one();
        self.matrix(&v).expect("unit vector has the right length")
    }
}
