//! Floating points of the Grassmannian, represented by orthogonal projectors.

use num_traits::Zero;

use super::subspace::SubspaceQ;
use crate::exactlinalg::{to_f64, MatQ, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceF {
    ambient: usize,
    r: usize,
    proj: Vec<f64>,
}

impl SubspaceF {
    /// Projector of an exact subspace: P = Bᵀ(BBᵀ)⁻¹B is formed exactly and
    /// rounded once, entrywise.
    pub fn from_exact(s: &SubspaceQ) -> SubspaceF {
        let d = s.ambient();
        let r = s.dim();
        if r == 0 {
            return SubspaceF { ambient: d, r, proj: vec![0.0; d * d] };
        }
        let b = MatQ::from_rows(s.basis()).expect("uniform rows");
        let bt = b.transpose();
        let gram = &b * &bt;
        let gi = gram.inverse().expect("basis rows are independent");
        let m = &gi * &b;
        let mut proj = vec![0.0; d * d];
        for i in 0..d {
            for j in i..d {
                let mut acc = Rat::zero();
                for k in 0..r {
                    let a = b.get(k, i);
                    let c = m.get(k, j);
                    if !a.is_zero() && !c.is_zero() {
                        acc += a * c;
                    }
                }
                let v = to_f64(&acc);
                proj[i * d + j] = v;
                proj[j * d + i] = v;
            }
        }
        SubspaceF { ambient: d, r, proj }
    }

    /// Projector from float spanning vectors by modified Gram–Schmidt with one
    /// re-orthogonalization pass; vectors whose residual falls below `rank_tol`
    /// (relative to their norm) are treated as dependent.
    pub fn from_float_spanning(vectors: &[Vec<f64>], ambient: usize, rank_tol: f64) -> Result<SubspaceF> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::SizeMismatch(format!("vectors must have length {ambient}")));
        }
        let mut q: Vec<Vec<f64>> = Vec::new();
        for v in vectors {
            let norm0 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm0 == 0.0 {
                continue;
            }
            let mut w = v.clone();
            for _ in 0..2 {
                for u in &q {
                    let c: f64 = w.iter().zip(u).map(|(a, b)| a * b).sum();
                    for (wi, ui) in w.iter_mut().zip(u) {
                        *wi -= c * ui;
                    }
                }
            }
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > rank_tol * norm0 {
                q.push(w.into_iter().map(|x| x / norm).collect());
            }
        }
        let d = ambient;
        let mut proj = vec![0.0; d * d];
        for u in &q {
            for i in 0..d {
                for j in 0..d {
                    proj[i * d + j] += u[i] * u[j];
                }
            }
        }
        Ok(SubspaceF { ambient: d, r: q.len(), proj })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn projector(&self) -> &[f64] {
        &self.proj
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.proj[i * self.ambient + j]
    }

    /// (‖P² − P‖_F, ‖P − Pᵀ‖_F, |trace P − r|).
    pub fn projector_defects(&self) -> (f64, f64, f64) {
        let d = self.ambient;
        let mut idem = 0.0;
        let mut sym = 0.0;
        let mut tr = 0.0;
        for i in 0..d {
            tr += self.get(i, i);
            for j in 0..d {
                let sq: f64 = (0..d).map(|k| self.get(i, k) * self.get(k, j)).sum();
                idem += (sq - self.get(i, j)).powi(2);
                sym += (self.get(i, j) - self.get(j, i)).powi(2);
            }
        }
        (idem.sqrt(), sym.sqrt(), (tr - self.r as f64).abs())
    }

    pub fn is_valid_projector(&self) -> bool {
        let (a, b, c) = self.projector_defects();
        a < 1e-10 && b < 1e-12 && c < 1e-8
    }

    /// Unit vector spanning the image when r = 1 (sign fixed by the largest
    /// entry being positive); for higher rank, the normalized column of P with
    /// the largest diagonal entry.
    pub fn representative(&self) -> Vec<f64> {
        let d = self.ambient;
        let k = (0..d)
            .max_by(|&a, &b| self.get(a, a).partial_cmp(&self.get(b, b)).unwrap())
            .unwrap_or(0);
        let col: Vec<f64> = (0..d).map(|i| self.get(i, k)).collect();
        let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
        col.into_iter().map(|x| x / norm).collect()
    }

    /// Applies a d×d orthogonal matrix Q: P ↦ Q P Qᵀ.
    pub fn rotate(&self, q: &[f64]) -> SubspaceF {
        let d = self.ambient;
        let mut qp = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                qp[i * d + j] = (0..d).map(|k| q[i * d + k] * self.get(k, j)).sum();
            }
        }
        let mut out = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                out[i * d + j] = (0..d).map(|k| qp[i * d + k] * q[j * d + k]).sum();
            }
        }
        SubspaceF { ambient: d, r: self.r, proj: out }
    }
}

/// Frobenius distance between projectors.
pub fn distance(a: &SubspaceF, b: &SubspaceF) -> Result<f64> {
    if a.ambient != b.ambient || a.r != b.r {
        return Err(Error::SizeMismatch(format!(
            "Gr({}, {}) vs Gr({}, {})",
            a.r, a.ambient, b.r, b.ambient
        )));
    }
    Ok(a.proj.iter().zip(&b.proj).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::rat;

    #[test]
    fn coordinate_lines_are_sqrt2_apart() {
        let e1 = SubspaceQ::from_spanning_set(&[vec![rat(1), rat(0)]], 2).unwrap();
        let e2 = SubspaceQ::from_spanning_set(&[vec![rat(0), rat(1)]], 2).unwrap();
        let (a, b) = (SubspaceF::from_exact(&e1), SubspaceF::from_exact(&e2));
        assert!((distance(&a, &b).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn float_and_exact_projectors_agree() {
        let s = SubspaceQ::from_spanning_set(&[vec![rat(1), rat(2), rat(0)], vec![rat(0), rat(1), rat(-1)]], 3).unwrap();
        let a = SubspaceF::from_exact(&s);
        let b = SubspaceF::from_float_spanning(&[vec![1.0, 2.0, 0.0], vec![0.0, 1.0, -1.0]], 3, 1e-12).unwrap();
        assert!(distance(&a, &b).unwrap() < 1e-14);
        assert!(a.is_valid_projector() && b.is_valid_projector());
    }

    #[test]
    fn mismatched_ranks_are_rejected() {
        let a = SubspaceF::from_float_spanning(&[vec![1.0, 0.0]], 2, 1e-12).unwrap();
        let b = SubspaceF::from_float_spanning(&[vec![1.0, 0.0], vec![0.0, 1.0]], 2, 1e-12).unwrap();
        assert!(distance(&a, &b).is_err());
    }
}
