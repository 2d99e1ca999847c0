//! Seeded sampling of rationals, group elements and subspaces.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlinalg::{frac, rat, MatQ, Rat};
use crate::liealg::{GroupElement, SlElement};

/// The generator used by every sampling suite (ChaCha with 8 rounds, 64-bit seed).
pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// p/q with |p| ≤ h and 1 ≤ q ≤ h.
pub fn rational(rng: &mut impl Rng, h: i64) -> Rat {
    let p = rng.gen_range(-h..=h);
    let q = rng.gen_range(1..=h);
    frac(p, q)
}

pub fn nonzero_rational(rng: &mut impl Rng, h: i64) -> Rat {
    loop {
        let r = rational(rng, h);
        if r != rat(0) {
            return r;
        }
    }
}

pub fn positive_rational(rng: &mut impl Rng, h: i64) -> Rat {
    frac(rng.gen_range(1..=h), rng.gen_range(1..=h))
}

pub fn small_int(rng: &mut impl Rng, h: i64) -> Rat {
    Rat::from_integer(BigInt::from(rng.gen_range(-h..=h)))
}

/// Upper unitriangular n×n matrix with rational entries of height ≤ h.
pub fn unipotent_upper(rng: &mut impl Rng, n: usize, h: i64) -> GroupElement {
    let mut m = MatQ::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, rational(rng, h));
        }
    }
    GroupElement::new(m).expect("unitriangular")
}

/// Positive diagonal matrix of determinant one.
pub fn positive_diagonal(rng: &mut impl Rng, n: usize, h: i64) -> GroupElement {
    let mut d: Vec<Rat> = (0..n - 1).map(|_| positive_rational(rng, h)).collect();
    let prod: Rat = d.iter().fold(rat(1), |acc, x| acc * x);
    d.push(prod.recip());
    GroupElement::new(MatQ::diag(&d)).expect("det one")
}

/// Element of the connected Borel subgroup AN.
pub fn borel_element(rng: &mut impl Rng, n: usize, h: i64) -> GroupElement {
    positive_diagonal(rng, n, h).compose(&unipotent_upper(rng, n, h))
}

/// Random sl_n element with entries of height ≤ h.
pub fn sl_element(rng: &mut impl Rng, n: usize, h: i64) -> SlElement {
    let mut m = MatQ::zeros(n, n);
    let mut tr = rat(0);
    for i in 0..n {
        for j in 0..n {
            if i == n - 1 && j == n - 1 {
                continue;
            }
            let v = rational(rng, h);
            if i == j {
                tr += &v;
            }
            m.set(i, j, v);
        }
    }
    m.set(n - 1, n - 1, -tr);
    SlElement::new(m).expect("trace zero")
}

/// Random element of SL_n with small integer entries: a product of
/// elementary transvections.
pub fn sl_group_element(rng: &mut impl Rng, n: usize, steps: usize, h: i64) -> GroupElement {
    let mut g = GroupElement::identity(n);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let mut m = MatQ::identity(n);
        m.set(i, j, rational(rng, h));
        g = g.compose(&GroupElement::new(m).expect("transvection"));
    }
    g
}
