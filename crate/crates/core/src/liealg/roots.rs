//! Root data of sl3 and sl4 with respect to the diagonal Cartan subspace.

use num_traits::{One, Zero};

use super::coords::CoordMap;
use super::element::{GroupElement, SlElement};
use crate::exactlinalg::{frac, MatQ, Rat};
use crate::error::{Error, Result};
use crate::grassmann::SubspaceQ;

/// Bitmask over simple roots: bit k is the k-th simple root.
pub type RootSet = u8;

pub const ALPHA: RootSet = 0b001;
pub const BETA: RootSet = 0b010;
pub const GAMMA: RootSet = 0b100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub name: &'static str,
    /// 0-based matrix position (i, j), i < j; the root is e_i − e_j.
    pub i: usize,
    pub j: usize,
    /// Simple roots occurring in the root.
    pub support: RootSet,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    n: usize,
    positive: Vec<Root>,
}

const SIMPLE_NAMES: [&str; 3] = ["alpha", "beta", "gamma"];

fn root_name(i: usize, j: usize) -> &'static str {
    match (i, j) {
        (0, 1) => "alpha",
        (1, 2) => "beta",
        (2, 3) => "gamma",
        (0, 2) => "alpha+beta",
        (1, 3) => "beta+gamma",
        (0, 3) => "alpha+beta+gamma",
        _ => unreachable!("n <= 4"),
    }
}

impl RootDatum {
    pub fn new(n: usize) -> Result<Self> {
        if n != 3 && n != 4 {
            return Err(Error::UnsupportedRank(n));
        }
        let mut positive = Vec::new();
        // Simple roots first, then by height.
        for h in 1..n {
            for i in 0..n - h {
                let j = i + h;
                let support = (i..j).fold(0u8, |acc, k| acc | (1 << k));
                positive.push(Root { name: root_name(i, j), i, j, support });
            }
        }
        Ok(RootDatum { n, positive })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> CoordMap {
        CoordMap::new(self.n)
    }

    pub fn dim(&self) -> usize {
        self.n * self.n - 1
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.positive[..self.n - 1]
    }

    pub fn all_simple(&self) -> RootSet {
        (1u8 << (self.n - 1)) - 1
    }

    /// Accepts "alpha+beta", "alpha_beta", "ab", "αβ" style names.
    pub fn root(&self, name: &str) -> Result<&Root> {
        let key = normalize_root_key(name);
        self.positive
            .iter()
            .find(|r| normalize_root_key(r.name) == key)
            .ok_or_else(|| Error::UnknownName(format!("root '{name}' in sl{}", self.n)))
    }

    pub fn simple_index(&self, name: &str) -> Result<usize> {
        let key = normalize_root_key(name);
        SIMPLE_NAMES[..self.n - 1]
            .iter()
            .position(|s| normalize_root_key(s) == key)
            .ok_or_else(|| Error::UnknownName(format!("simple root '{name}'")))
    }

    /// δ(H) = H_ii − H_jj for δ = e_i − e_j.
    pub fn eval(&self, root: &Root, h: &SlElement) -> Rat {
        h.matrix().get(root.i, root.i) - h.matrix().get(root.j, root.j)
    }

    /// H_k: the basis of the diagonal Cartan subspace dual to the simple roots.
    pub fn dual_h(&self, k: usize) -> SlElement {
        let n = self.n as i64;
        let k1 = k as i64 + 1;
        let d: Vec<Rat> = (0..self.n)
            .map(|i| if (i as i64) < k1 { frac(n - k1, n) } else { frac(-k1, n) })
            .collect();
        SlElement::diagonal(&d).expect("trace zero")
    }

    /// The coroot E_kk − E_{k+1,k+1}.
    pub fn coroot(&self, k: usize) -> SlElement {
        let mut d = vec![Rat::zero(); self.n];
        d[k] = Rat::one();
        d[k + 1] = -Rat::one();
        SlElement::diagonal(&d).expect("trace zero")
    }

    pub fn u(&self, root: &Root) -> SlElement {
        SlElement::elementary(self.n, root.i + 1, root.j + 1)
    }

    pub fn u_named(&self, name: &str) -> Result<SlElement> {
        Ok(self.u(self.root(name)?))
    }

    pub fn h_named(&self, name: &str) -> Result<SlElement> {
        Ok(self.dual_h(self.simple_index(name)?))
    }

    /// Named vectors: "H_alpha" (dual basis), "h_alpha" (coroot), "U_alpha+beta", "F_alpha" (transpose of U).
    pub fn named_vector(&self, key: &str) -> Result<SlElement> {
        let (kind, rest) = key
            .split_once('_')
            .ok_or_else(|| Error::UnknownName(key.to_string()))?;
        match kind {
            "H" => self.h_named(rest),
            "h" => Ok(self.coroot(self.simple_index(rest)?)),
            "U" => self.u_named(rest),
            "F" => {
                let r = self.root(rest)?;
                Ok(SlElement::elementary(self.n, r.j + 1, r.i + 1))
            }
            _ => Err(Error::UnknownName(key.to_string())),
        }
    }

    fn span(&self, elems: &[SlElement]) -> SubspaceQ {
        let vs: Vec<_> = elems.iter().map(SlElement::coords).collect();
        SubspaceQ::from_spanning_set(&vs, self.dim()).expect("coordinates have ambient length")
    }

    /// The standard Cartan subspace a (diagonal matrices).
    pub fn cartan(&self) -> SubspaceQ {
        standard_cartan(self.n)
    }

    pub fn nilradical(&self) -> SubspaceQ {
        let us: Vec<_> = self.positive.iter().map(|r| self.u(r)).collect();
        self.span(&us)
    }

    pub fn borel(&self) -> SubspaceQ {
        self.cartan().sum(&self.nilradical()).expect("same ambient")
    }

    /// a_I = ∩_{δ∈I} Ker δ, spanned by the dual vectors H_δ with δ ∉ I.
    pub fn a_sub(&self, set: RootSet) -> SubspaceQ {
        let hs: Vec<_> = (0..self.rank()).filter(|k| set & (1 << k) == 0).map(|k| self.dual_h(k)).collect();
        self.span(&hs)
    }

    /// a^I, spanned by the coroots of I.
    pub fn a_sup(&self, set: RootSet) -> SubspaceQ {
        let hs: Vec<_> = (0..self.rank()).filter(|k| set & (1 << k) != 0).map(|k| self.coroot(k)).collect();
        self.span(&hs)
    }

    /// n^I: root spaces of positive roots supported in I.
    pub fn n_sup(&self, set: RootSet) -> SubspaceQ {
        let us: Vec<_> = self.positive.iter().filter(|r| r.support & !set == 0).map(|r| self.u(r)).collect();
        self.span(&us)
    }

    /// n_I: root spaces of positive roots not supported in I.
    pub fn n_sub(&self, set: RootSet) -> SubspaceQ {
        let us: Vec<_> = self.positive.iter().filter(|r| r.support & !set != 0).map(|r| self.u(r)).collect();
        self.span(&us)
    }

    /// Derived algebra of the centralizer of a_{Δ∖I}: coroots of I and the
    /// root spaces ±δ for δ supported in I.
    pub fn z_sup(&self, set: RootSet) -> SubspaceQ {
        let mut elems: Vec<SlElement> =
            (0..self.rank()).filter(|k| set & (1 << k) != 0).map(|k| self.coroot(k)).collect();
        for r in self.positive.iter().filter(|r| r.support & !set == 0) {
            elems.push(self.u(r));
            elems.push(SlElement::elementary(self.n, r.j + 1, r.i + 1));
        }
        if elems.is_empty() {
            return SubspaceQ::zero(self.dim());
        }
        self.span(&elems)
    }

    /// Membership in N_I: unitriangular with zero entries at the positions of
    /// roots supported in I.
    pub fn in_n_sub_group(&self, set: RootSet, g: &GroupElement) -> bool {
        g.is_unipotent_upper()
            && self
                .positive
                .iter()
                .filter(|r| r.support & !set == 0)
                .all(|r| g.matrix().get(r.i, r.j).is_zero())
    }

    /// Membership in N^I: unitriangular with support on roots in I.
    pub fn in_n_sup_group(&self, set: RootSet, g: &GroupElement) -> bool {
        g.is_unipotent_upper()
            && self
                .positive
                .iter()
                .filter(|r| r.support & !set != 0)
                .all(|r| g.matrix().get(r.i, r.j).is_zero())
    }

    /// For unitriangular g, the factor in N^I (the Levi blocks of g).
    pub fn levi_part(&self, set: RootSet, g: &GroupElement) -> GroupElement {
        let mut m = MatQ::identity(self.n);
        for r in self.positive.iter().filter(|r| r.support & !set == 0) {
            m.set(r.i, r.j, g.matrix().get(r.i, r.j).clone());
        }
        GroupElement::new(m).expect("unitriangular")
    }

    /// The N_I factor of g = b·p with p ∈ N^I.
    pub fn n_sub_part(&self, set: RootSet, g: &GroupElement) -> GroupElement {
        g.compose(&self.levi_part(set, g).inverse())
    }
}

/// Diagonal Cartan subspace of sl_n for any n ≥ 2.
pub fn standard_cartan(n: usize) -> SubspaceQ {
    let cm = CoordMap::new(n);
    let vs: Vec<_> = (0..n - 1)
        .map(|k| {
            let mut v = vec![Rat::zero(); cm.dim()];
            v[cm.index_of_h(k)] = Rat::one();
            v
        })
        .collect();
    SubspaceQ::from_spanning_set(&vs, cm.dim()).expect("ambient length")
}

fn normalize_root_key(s: &str) -> String {
    let t = s
        .replace("alpha", "a")
        .replace("beta", "b")
        .replace("gamma", "g")
        .replace('α', "a")
        .replace('β', "b")
        .replace('γ', "g");
    t.chars().filter(|c| matches!(c, 'a' | 'b' | 'g')).collect()
}
