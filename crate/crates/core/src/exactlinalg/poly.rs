//! Univariate polynomials over Q, characteristic polynomials and real-root counting.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::matrix::MatQ;
use super::rat::{rat, rat_to_string, Rat};
use crate::error::{Error, Result};

/// Coefficients in ascending degree; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyQ {
    coeffs: Vec<Rat>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| rat(x)).collect())
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading().recip();
        Self::new(self.coeffs.iter().map(|c| c * &l).collect())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let lc = d.leading().recip();
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1.monic();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free part p / gcd(p, p′), monic.
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Factors (q₁, q₂, …) with p = c·Π qᵢ^i and each qᵢ square-free, by
    /// repeated gcd with the derivative.
    pub fn square_free_decomposition(&self) -> Vec<Self> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let p = self.monic();
        let mut a = p.gcd(&p.derivative());
        let mut b = p.div_rem(&a).0;
        while b.degree().unwrap_or(0) > 0 {
            let c = a.gcd(&b);
            out.push(b.div_rem(&c).0.monic());
            a = a.div_rem(&c).0;
            b = c;
        }
        out
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({})x^{k}", rat_to_string(c)))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// det(λI − m) by the Faddeev–LeVerrier recurrence.
pub fn charpoly(m: &MatQ) -> Result<PolyQ> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut c = vec![Rat::zero(); n + 1];
    c[n] = Rat::one();
    let id = MatQ::identity(n);
    let mut mk = MatQ::zeros(n, n);
    for k in 1..=n {
        mk = &(m * &mk) + &id.scale(&c[n - k + 1]);
        let am = m * &mk;
        c[n - k] = -am.trace() / rat(k as i64);
    }
    Ok(PolyQ::new(c))
}

fn sign_at_pos_inf(p: &PolyQ) -> i32 {
    let l = p.leading();
    if l.is_zero() {
        0
    } else if l.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_at_neg_inf(p: &PolyQ) -> i32 {
    let s = sign_at_pos_inf(p);
    if p.degree().unwrap_or(0) % 2 == 1 {
        -s
    } else {
        s
    }
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let nz: Vec<i32> = signs.filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of a square-free polynomial (Sturm's theorem).
pub fn sturm_distinct_real_roots(p: &PolyQ) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        // Positive rescaling keeps the sign pattern and tames coefficient growth.
        let l = r.leading().abs().recip();
        seq.push(r.scale(&-l));
    }
    let v_neg = sign_changes(seq.iter().map(sign_at_neg_inf));
    let v_pos = sign_changes(seq.iter().map(sign_at_pos_inf));
    v_neg - v_pos
}

/// Real roots counted with multiplicity.
pub fn real_roots_with_multiplicity(p: &PolyQ) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(p
        .square_free_decomposition()
        .iter()
        .enumerate()
        .map(|(i, q)| (i + 1) * sturm_distinct_real_roots(q))
        .sum())
}

/// True iff every complex root of `p` is real.
pub fn is_real_rooted(p: &PolyQ) -> Result<bool> {
    let total = real_roots_with_multiplicity(p)?;
    Ok(total == p.degree().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::rat::frac;

    #[test]
    fn charpoly_examples() {
        let d = MatQ::from_i64(&[&[1, 0], &[0, -1]]);
        assert_eq!(charpoly(&d).unwrap(), PolyQ::from_i64(&[-1, 0, 1]));
        let n = MatQ::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(charpoly(&n).unwrap(), PolyQ::from_i64(&[0, 0, 1]));
        let j = MatQ::from_i64(&[&[0, 1], &[-1, 0]]);
        assert_eq!(charpoly(&j).unwrap(), PolyQ::from_i64(&[1, 0, 1]));
        assert!(charpoly(&MatQ::zeros(2, 3)).is_err());
    }

    #[test]
    fn charpoly_matches_cofactor_expansion_3x3() {
        // det(λI − m) expanded by hand for m = [[2,1,0],[0,1,3],[1,0,1]]:
        // λ³ − 4λ² + 5λ − 5.
        let m = MatQ::from_i64(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        assert_eq!(charpoly(&m).unwrap(), PolyQ::from_i64(&[-5, 5, -4, 1]));
    }

    #[test]
    fn real_rootedness_examples() {
        assert!(is_real_rooted(&PolyQ::from_i64(&[-1, 0, 1])).unwrap());
        assert!(!is_real_rooted(&PolyQ::from_i64(&[1, 0, 1])).unwrap());
        assert!(is_real_rooted(&PolyQ::from_i64(&[0, 0, 0, 1])).unwrap());
        assert_eq!(is_real_rooted(&PolyQ::zero()), Err(Error::ZeroPolynomial));
        // (x − 1)²(x² + 1) has a double real root and a complex pair.
        let p = PolyQ::from_i64(&[1, -2, 1]).mul(&PolyQ::from_i64(&[1, 0, 1]));
        assert_eq!(real_roots_with_multiplicity(&p).unwrap(), 2);
        assert!(!is_real_rooted(&p).unwrap());
        // (x − 1/2)³(x + 3)
        let q = PolyQ::new(vec![-frac(1, 2), rat(1)]);
        let p = q.mul(&q).mul(&q).mul(&PolyQ::from_i64(&[3, 1]));
        assert_eq!(real_roots_with_multiplicity(&p).unwrap(), 4);
    }

    #[test]
    fn square_free_decomposition_recovers_multiplicities() {
        let a = PolyQ::from_i64(&[-1, 1]);
        let b = PolyQ::from_i64(&[2, 1]);
        let p = a.mul(&b).mul(&b).mul(&b);
        let d = p.square_free_decomposition();
        assert_eq!(d.len(), 3);
        assert_eq!(d[0], a);
        assert_eq!(d[1], PolyQ::from_i64(&[1]));
        assert_eq!(d[2], b);
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = PolyQ::from_i64(&[3, 0, -2, 5, 1]);
        let d = PolyQ::from_i64(&[1, 2]);
        let (q, r) = p.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), p);
        assert!(r.degree().unwrap_or(0) < 1);
    }
}
