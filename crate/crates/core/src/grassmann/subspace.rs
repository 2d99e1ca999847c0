//! Exact points of the Grassmannian and their Plücker coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::exactlinalg::{kernel, rat_from_json, rat_to_string, rref, MatQ, Rat, VecQ};
use crate::error::{Error, Result};

/// An r-dimensional subspace of Q^d stored as the rows of its reduced
/// row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubspaceQ {
    ambient: usize,
    basis: Vec<VecQ>,
    pivots: Vec<usize>,
}

impl SubspaceQ {
    pub fn zero(ambient: usize) -> Self {
        SubspaceQ { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    /// Canonical subspace spanned by `vectors`; dependent vectors are dropped.
    pub fn from_spanning_set(vectors: &[VecQ], ambient: usize) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::SizeMismatch(format!("vectors must have length {ambient}")));
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let m = MatQ::from_rows(vectors)?;
        let r = rref(&m);
        let basis = r.reduced.row_vecs().into_iter().take(r.rank).collect();
        Ok(SubspaceQ { ambient, basis, pivots: r.pivots })
    }

    pub fn full(ambient: usize) -> Self {
        let basis: Vec<VecQ> = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        SubspaceQ { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[VecQ] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates_of(&self, v: &[Rat]) -> Option<VecQ> {
        if v.len() != self.ambient {
            return None;
        }
        let coeffs: VecQ = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in rest.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r -= c * x;
                }
            }
        }
        rest.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates_of(v).is_some()
    }

    pub fn contains_subspace(&self, other: &SubspaceQ) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &SubspaceQ) -> Result<SubspaceQ> {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        SubspaceQ::from_spanning_set(&vs, self.ambient)
    }

    /// Vectors w with ⟨w, s⟩ = 0 for every s in the subspace (standard dot product).
    pub fn annihilator(&self) -> SubspaceQ {
        if self.basis.is_empty() {
            return SubspaceQ::full(self.ambient);
        }
        let m = MatQ::from_rows(&self.basis).expect("uniform rows");
        SubspaceQ::from_spanning_set(&kernel(&m), self.ambient).expect("kernel has ambient length")
    }

    pub fn intersection(&self, other: &SubspaceQ) -> Result<SubspaceQ> {
        let ann = self.annihilator().sum(&other.annihilator())?;
        Ok(ann.annihilator())
    }

    /// Image of the subspace under a linear map given on vectors.
    pub fn map<F>(&self, f: F) -> Result<SubspaceQ>
    where
        F: Fn(&[Rat]) -> Result<VecQ>,
    {
        let imgs: Result<Vec<VecQ>> = self.basis.iter().map(|v| f(v)).collect();
        SubspaceQ::from_spanning_set(&imgs?, self.ambient)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambient": self.ambient,
            "r": self.dim(),
            "basis": self.basis.iter().map(|v| v.iter().map(rat_to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    /// Parses {"ambient": d, "r": r, "basis": [[...]]}; the basis need not be
    /// canonical, and r, when present, must match the rank.
    pub fn from_json(v: &Value) -> Result<SubspaceQ> {
        let ambient = v
            .get("ambient")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing integer field 'ambient'".into()))?
            as usize;
        let rows = v
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing array field 'basis'".into()))?;
        let mut basis = Vec::with_capacity(rows.len());
        for r in rows {
            let entries = r.as_array().ok_or_else(|| Error::Parse("basis rows must be arrays".into()))?;
            basis.push(entries.iter().map(rat_from_json).collect::<Result<VecQ>>()?);
        }
        let s = SubspaceQ::from_spanning_set(&basis, ambient)?;
        if let Some(r) = v.get("r") {
            let r = r.as_u64().ok_or_else(|| Error::Parse("'r' must be an integer".into()))? as usize;
            if r != s.dim() {
                return Err(Error::WrongDimension { expected: r, found: s.dim() });
            }
        }
        Ok(s)
    }

    pub fn plucker(&self) -> Result<PluckerVec> {
        PluckerVec::of(self)
    }
}

/// Primitive integer vector of maximal minors in lexicographic column order,
/// first nonzero entry positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PluckerVec {
    ambient: usize,
    r: usize,
    coords: Vec<BigInt>,
}

fn integer_rows(basis: &[VecQ]) -> Vec<Vec<BigInt>> {
    basis
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

/// Fraction-free determinant (Bareiss).
fn det_int(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Visits every r-subset of 0..d in lexicographic order.
pub fn for_each_combination(d: usize, r: usize, mut f: impl FnMut(&[usize])) {
    if r > d {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        f(&idx);
        let Some(i) = (0..r).rev().find(|&i| idx[i] != i + d - r) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Rank of an r-subset in lexicographic order.
fn combination_rank(d: usize, cols: &[usize]) -> usize {
    let r = cols.len();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &c) in cols.iter().enumerate() {
        for skipped in prev..c {
            rank += binomial(d - skipped - 1, r - i - 1);
        }
        prev = c + 1;
    }
    rank
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl PluckerVec {
    pub fn of(s: &SubspaceQ) -> Result<PluckerVec> {
        let r = s.dim();
        if r == 0 {
            return Err(Error::WrongDimension { expected: 1, found: 0 });
        }
        let rows = integer_rows(s.basis());
        let mut coords = Vec::with_capacity(binomial(s.ambient(), r));
        for_each_combination(s.ambient(), r, |cols| {
            let sub: Vec<Vec<BigInt>> =
                rows.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
            coords.push(det_int(sub));
        });
        let g = coords.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let first_neg = coords.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        for c in coords.iter_mut() {
            *c = &*c / &g;
            if first_neg {
                *c = -&*c;
            }
        }
        Ok(PluckerVec { ambient: s.ambient(), r, coords })
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Coordinate for an arbitrary index list: signed by the sorting
    /// permutation, zero on repeated indices.
    pub fn signed_coord(&self, idx: &[usize]) -> BigInt {
        let mut v = idx.to_vec();
        let mut sign = 1;
        for i in 0..v.len() {
            for j in 0..v.len() - 1 - i {
                if v[j] == v[j + 1] {
                    return BigInt::zero();
                }
                if v[j] > v[j + 1] {
                    v.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return BigInt::zero();
        }
        let c = &self.coords[combination_rank(self.ambient, &v)];
        if sign < 0 {
            -c
        } else {
            c.clone()
        }
    }

    /// Evaluates the quadratic Grassmann–Plücker relation indexed by an
    /// (r−1)-subset `i` and an (r+1)-subset `j`; zero for a genuine point.
    pub fn relation(&self, i: &[usize], j: &[usize]) -> BigInt {
        let mut total = BigInt::zero();
        for (l, &jl) in j.iter().enumerate() {
            let mut left = i.to_vec();
            left.push(jl);
            let right: Vec<usize> = j.iter().enumerate().filter(|&(k, _)| k != l).map(|(_, &x)| x).collect();
            let term = self.signed_coord(&left) * self.signed_coord(&right);
            if l % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    /// Checks `samples` relations with index sets drawn from the given stream.
    pub fn check_sampled_relations(&self, samples: usize, mut pick: impl FnMut(usize) -> usize) -> bool {
        if self.r < 2 || self.r + 1 > self.ambient {
            return true;
        }
        (0..samples).all(|_| {
            let i: Vec<usize> = (0..self.r - 1).map(|_| pick(self.ambient)).collect();
            let mut j: Vec<usize> = Vec::new();
            while j.len() < self.r + 1 {
                let c = pick(self.ambient);
                if !j.contains(&c) {
                    j.push(c);
                }
            }
            self.relation(&i, &j).is_zero()
        })
    }

    pub fn to_unit_f64(&self) -> Vec<f64> {
        let max_bits = self.coords.iter().map(|c| c.bits()).max().unwrap_or(0);
        let shift = max_bits.saturating_sub(60);
        let v: Vec<f64> = self
            .coords
            .iter()
            .map(|c| (c >> shift as usize).to_f64().unwrap_or(0.0))
            .collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.into_iter().map(|x| x / norm).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ordering": "lex",
            "ambient": self.ambient,
            "r": self.r,
            "coords": self.coords.iter().map(|c| match c.to_i64() {
                Some(v) => json!(v),
                None => json!(c.to_string()),
            }).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::rat;

    fn v(x: &[i64]) -> VecQ {
        x.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn plucker_examples() {
        let s = SubspaceQ::from_spanning_set(&[v(&[1, 0, 0]), v(&[0, 1, 0])], 3).unwrap();
        let p = s.plucker().unwrap();
        assert_eq!(p.coords(), &[BigInt::from(1), BigInt::from(0), BigInt::from(0)]);
        let s = SubspaceQ::from_spanning_set(&[v(&[1, 0, 1]), v(&[0, 1, 0])], 3).unwrap();
        // p12 = 1, p13 = 0, p23 = det[[0,1],[1,0]] = −1
        assert_eq!(s.plucker().unwrap().coords(), &[BigInt::from(1), BigInt::from(0), BigInt::from(-1)]);
        assert!(SubspaceQ::zero(3).plucker().is_err());
    }

    #[test]
    fn combination_ranks_are_lex() {
        let mut k = 0;
        for_each_combination(6, 3, |c| {
            assert_eq!(combination_rank(6, c), k);
            k += 1;
        });
        assert_eq!(k, binomial(6, 3));
    }

    #[test]
    fn bareiss_matches_rational_det() {
        let a = vec![
            vec![BigInt::from(2), BigInt::from(-1), BigInt::from(3)],
            vec![BigInt::from(0), BigInt::from(4), BigInt::from(1)],
            vec![BigInt::from(5), BigInt::from(2), BigInt::from(0)],
        ];
        // 2(0−2) − (−1)(0−5) + 3(0−20) = −4 − 5 − 60
        assert_eq!(det_int(a), BigInt::from(-69));
    }

    #[test]
    fn relations_vanish_and_detect_fakes() {
        let s = SubspaceQ::from_spanning_set(&[v(&[1, 2, 0, 3]), v(&[0, 1, 1, -1])], 4).unwrap();
        let p = s.plucker().unwrap();
        assert!(p.relation(&[0], &[1, 2, 3]).is_zero());
        let fake = PluckerVec { ambient: 4, r: 2, coords: (1..=6).map(BigInt::from).collect() };
        assert!(!fake.relation(&[0], &[1, 2, 3]).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let s = SubspaceQ::from_spanning_set(&[v(&[2, 4, 0]), v(&[0, 0, 3])], 3).unwrap();
        let back = SubspaceQ::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn intersection_and_annihilator() {
        let a = SubspaceQ::from_spanning_set(&[v(&[1, 0, 0]), v(&[0, 1, 0])], 3).unwrap();
        let b = SubspaceQ::from_spanning_set(&[v(&[0, 1, 0]), v(&[0, 0, 1])], 3).unwrap();
        let i = a.intersection(&b).unwrap();
        assert_eq!(i, SubspaceQ::from_spanning_set(&[v(&[0, 1, 0])], 3).unwrap());
        assert_eq!(a.annihilator(), SubspaceQ::from_spanning_set(&[v(&[0, 0, 1])], 3).unwrap());
    }
}
