//! Three-dimensional abelian subalgebras of the Borel subalgebra of sl4:
//! the named families, the ten-type classification, explicit sequences of
//! Cartan subspaces converging to each type, and maximality checks.

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::chabauty::is_abelian;
use crate::error::{Error, Result};
use crate::exactlinalg::{rank, rat, solve, MatQ, Rat};
use crate::grassmann::{SeqFamily, SubspaceQ};
use crate::liealg::{
    adjoint_subspace, centralizer_in, elements_of, exp_unipotent, span_of, GlElement,
    GroupElement, RootDatum, RootSet, SlElement, ALPHA, BETA, GAMMA,
};
use crate::projective::ProjPoint;
use crate::sampling;
use crate::sl3::check_borel_abelian;

fn datum() -> RootDatum {
    RootDatum::new(4).expect("sl4")
}

/// E_ij with 1-based indices.
fn e(i: usize, j: usize) -> SlElement {
    SlElement::elementary(4, i, j)
}

fn u(name: &str) -> SlElement {
    datum().u_named(name).expect("sl4 root")
}

fn comb(terms: &[(Rat, SlElement)]) -> SlElement {
    let refs: Vec<(Rat, &SlElement)> = terms.iter().map(|(c, x)| (c.clone(), x)).collect();
    SlElement::combination(&refs)
}

/// Entry (i, j) of X, 1-based.
fn entry(x: &SlElement, i: usize, j: usize) -> Rat {
    x.matrix().get(i - 1, j - 1).clone()
}

fn span(elems: &[SlElement]) -> SubspaceQ {
    span_of(elems).expect("sl4 elements")
}

pub const SIMPLE_NAMES: [&str; 3] = ["alpha", "beta", "gamma"];

fn simple_set(k: usize) -> RootSet {
    1 << k
}

/// l_{[x:y:z]} = {a(xE12 + yE23 + zE34) + b(xE13 + zE24) + cE14}, x, z ≠ 0.
pub fn l_xyz(p: &ProjPoint) -> Result<SubspaceQ> {
    if p.len() != 3 {
        return Err(Error::InvalidParameter(format!("{p} is not a point of P2")));
    }
    let c = p.rats();
    if c[0].is_zero() || c[2].is_zero() {
        return Err(Error::InvalidParameter(format!("l_xyz needs x and z nonzero, got {p}")));
    }
    let (x, y, z) = (c[0].clone(), c[1].clone(), c[2].clone());
    Ok(span(&[
        comb(&[(x.clone(), e(1, 2)), (y, e(2, 3)), (z.clone(), e(3, 4))]),
        comb(&[(x, e(1, 3)), (z, e(2, 4))]),
        e(1, 4),
    ]))
}

/// l_{[x:y:z:t]} = {aE13 + bE14 + cE23 + dE24 : ax + by + cz + dt = 0}.
pub fn l0_pt(p: &ProjPoint) -> Result<SubspaceQ> {
    if p.len() != 4 {
        return Err(Error::InvalidParameter(format!("{p} is not a point of P3")));
    }
    let w = p.rats();
    let line = SubspaceQ::from_spanning_set(&[w], 4)?;
    let blocks = [e(1, 3), e(1, 4), e(2, 3), e(2, 4)];
    let elems: Vec<SlElement> = line
        .annihilator()
        .basis()
        .iter()
        .map(|v| comb(&v.iter().cloned().zip(blocks.iter().cloned()).collect::<Vec<_>>()))
        .collect();
    Ok(span(&elems))
}

/// The upper-right 2×2 block algebra.
pub fn l0() -> SubspaceQ {
    span(&[e(1, 3), e(1, 4), e(2, 3), e(2, 4)])
}

/// l_{α,y,t} = {a(E12 + yE23 + tE24) + bE13 + cE14}.
pub fn l_alpha_yt(y: &Rat, t: &Rat) -> SubspaceQ {
    span(&[comb(&[(rat(1), e(1, 2)), (y.clone(), e(2, 3)), (t.clone(), e(2, 4))]), e(1, 3), e(1, 4)])
}

/// l_{γ,y,t} = {a(tE13 + yE23 + E34) + bE24 + cE14}.
pub fn l_gamma_yt(y: &Rat, t: &Rat) -> SubspaceQ {
    span(&[comb(&[(t.clone(), e(1, 3)), (y.clone(), e(2, 3)), (rat(1), e(3, 4))]), e(2, 4), e(1, 4)])
}

/// l_{x,y} = {a(E12 + xE24) + b(yE13 + E34) + cE14}.
pub fn l_xy(x: &Rat, y: &Rat) -> SubspaceQ {
    span(&[
        comb(&[(rat(1), e(1, 2)), (x.clone(), e(2, 4))]),
        comb(&[(y.clone(), e(1, 3)), (rat(1), e(3, 4))]),
        e(1, 4),
    ])
}

fn p1(p: &ProjPoint) -> Result<(Rat, Rat)> {
    if p.len() != 2 {
        return Err(Error::InvalidParameter(format!("{p} is not a point of P1")));
    }
    let c = p.rats();
    Ok((c[0].clone(), c[1].clone()))
}

/// l^{α,β}_{[x:y]} = {a(xE12 + yE23) + bE13}.
pub fn l_ab_proj(p: &ProjPoint) -> Result<SubspaceQ> {
    let (x, y) = p1(p)?;
    Ok(span(&[comb(&[(x, e(1, 2)), (y, e(2, 3))]), e(1, 3)]))
}

/// l^{α,γ} = span{E12, E34}.
pub fn l_alpha_gamma() -> SubspaceQ {
    span(&[e(1, 2), e(3, 4)])
}

/// l^{β,γ}_{[x:y]} = {a(xE23 + yE34) + bE24}.
pub fn l_bg_proj(p: &ProjPoint) -> Result<SubspaceQ> {
    let (x, y) = p1(p)?;
    Ok(span(&[comb(&[(x, e(2, 3)), (y, e(3, 4))]), e(2, 4)]))
}

/// a_I ⊕ V for a subspace V of n.
fn a_sub_plus(set: RootSet, v: &SubspaceQ) -> SubspaceQ {
    datum().a_sub(set).sum(v).expect("same ambient")
}

/// a_δ ⊕ n^δ.
pub fn root_block(k: usize) -> SubspaceQ {
    let set = simple_set(k);
    a_sub_plus(set, &datum().n_sup(set))
}

pub fn ab_block(p: &ProjPoint) -> Result<SubspaceQ> {
    Ok(a_sub_plus(ALPHA | BETA, &l_ab_proj(p)?))
}

pub fn ag_block() -> SubspaceQ {
    a_sub_plus(ALPHA | GAMMA, &l_alpha_gamma())
}

pub fn bg_block(p: &ProjPoint) -> Result<SubspaceQ> {
    Ok(a_sub_plus(BETA | GAMMA, &l_bg_proj(p)?))
}

pub const FAMILY_NAMES: [&str; 15] = [
    "a",
    "a_alpha+n_alpha",
    "a_beta+n_beta",
    "a_gamma+n_gamma",
    "a_ab+l_ab_proj",
    "a_ag+l_alpha_gamma",
    "a_bg+l_bg_proj",
    "l_xyz",
    "l_alpha_yt",
    "l_gamma_yt",
    "l0_pt",
    "l_xy",
    "l0",
    "l_ab_proj",
    "l_alpha_gamma",
];

fn arity(params: &[Rat], k: usize, name: &str) -> Result<()> {
    if params.len() == k {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} takes {k} parameters, got {}", params.len())))
    }
}

/// The subspace of a named family at the given parameters.
pub fn family(name: &str, params: &[Rat]) -> Result<SubspaceQ> {
    let pt = |k: usize| -> Result<ProjPoint> {
        arity(params, k, name)?;
        ProjPoint::new(params)
    };
    match name {
        "a" => arity(params, 0, name).map(|_| datum().cartan()),
        "a_alpha+n_alpha" => arity(params, 0, name).map(|_| root_block(0)),
        "a_beta+n_beta" => arity(params, 0, name).map(|_| root_block(1)),
        "a_gamma+n_gamma" => arity(params, 0, name).map(|_| root_block(2)),
        "a_ab+l_ab_proj" => ab_block(&pt(2)?),
        "a_ag+l_alpha_gamma" => arity(params, 0, name).map(|_| ag_block()),
        "a_bg+l_bg_proj" => bg_block(&pt(2)?),
        "l_xyz" => l_xyz(&pt(3)?),
        "l_alpha_yt" => arity(params, 2, name).map(|_| l_alpha_yt(&params[0], &params[1])),
        "l_gamma_yt" => arity(params, 2, name).map(|_| l_gamma_yt(&params[0], &params[1])),
        "l0_pt" => l0_pt(&pt(4)?),
        "l_xy" => arity(params, 2, name).map(|_| l_xy(&params[0], &params[1])),
        "l0" => arity(params, 0, name).map(|_| l0()),
        "l_ab_proj" => l_ab_proj(&pt(2)?),
        "l_alpha_gamma" => arity(params, 0, name).map(|_| l_alpha_gamma()),
        "l_bg_proj" => l_bg_proj(&pt(2)?),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ClassRes4 {
    /// Ad b(a), b ∈ N.
    T1 { b: GroupElement },
    /// Ad b(a_δ ⊕ n^δ), δ simple (0, 1, 2 for α, β, γ), b ∈ N_δ.
    T2 { delta: usize, b: GroupElement },
    /// Ad b(a_{α,β} ⊕ l^{α,β}_{[x:y]}), b ∈ N_{α,β}.
    T3 { point: ProjPoint, b: GroupElement },
    /// Ad b(a_{α,γ} ⊕ l^{α,γ}), b ∈ N_{α,γ}.
    T4 { b: GroupElement },
    /// Ad b(a_{β,γ} ⊕ l^{β,γ}_{[x:y]}), b ∈ N_{β,γ}.
    T5 { point: ProjPoint, b: GroupElement },
    /// Ad exp(sU_β)(l_{[x:y:z]}), x, z ≠ 0.
    T6 { point: ProjPoint, s: Rat },
    T7 { y: Rat, t: Rat },
    T8 { y: Rat, t: Rat },
    T9 { point: ProjPoint },
    /// Ad exp(sU_β)(l_{x,y}).
    T10 { x: Rat, y: Rat, s: Rat },
}

pub const TAGS: [&str; 10] = ["T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "T9", "T10"];

impl ClassRes4 {
    pub fn tag(&self) -> &'static str {
        match self {
            ClassRes4::T1 { .. } => "T1",
            ClassRes4::T2 { .. } => "T2",
            ClassRes4::T3 { .. } => "T3",
            ClassRes4::T4 { .. } => "T4",
            ClassRes4::T5 { .. } => "T5",
            ClassRes4::T6 { .. } => "T6",
            ClassRes4::T7 { .. } => "T7",
            ClassRes4::T8 { .. } => "T8",
            ClassRes4::T9 { .. } => "T9",
            ClassRes4::T10 { .. } => "T10",
        }
    }

    pub fn witness(&self) -> Option<GroupElement> {
        match self {
            ClassRes4::T1 { b }
            | ClassRes4::T2 { b, .. }
            | ClassRes4::T3 { b, .. }
            | ClassRes4::T4 { b }
            | ClassRes4::T5 { b, .. } => Some(b.clone()),
            ClassRes4::T6 { s, .. } | ClassRes4::T10 { s, .. } => Some(beta_shift(s)),
            _ => None,
        }
    }

    /// Simple roots I with the witness in N_I.
    pub fn witness_set(&self) -> Option<RootSet> {
        match self {
            ClassRes4::T1 { .. } => Some(0),
            ClassRes4::T2 { delta, .. } => Some(simple_set(*delta)),
            ClassRes4::T3 { .. } => Some(ALPHA | BETA),
            ClassRes4::T4 { .. } => Some(ALPHA | GAMMA),
            ClassRes4::T5 { .. } => Some(BETA | GAMMA),
            _ => None,
        }
    }

    /// The representative before conjugation by the witness.
    pub fn base(&self) -> Result<SubspaceQ> {
        match self {
            ClassRes4::T1 { .. } => Ok(datum().cartan()),
            ClassRes4::T2 { delta, .. } => Ok(root_block(*delta)),
            ClassRes4::T3 { point, .. } => ab_block(point),
            ClassRes4::T4 { .. } => Ok(ag_block()),
            ClassRes4::T5 { point, .. } => bg_block(point),
            ClassRes4::T6 { point, .. } => l_xyz(point),
            ClassRes4::T7 { y, t } => Ok(l_alpha_yt(y, t)),
            ClassRes4::T8 { y, t } => Ok(l_gamma_yt(y, t)),
            ClassRes4::T9 { point } => l0_pt(point),
            ClassRes4::T10 { x, y, .. } => Ok(l_xy(x, y)),
        }
    }

    pub fn reconstruct(&self) -> Result<SubspaceQ> {
        let base = self.base()?;
        match self.witness() {
            Some(b) => adjoint_subspace(&b, &base),
            None => Ok(base),
        }
    }

    pub fn params_json(&self) -> Value {
        let r = |x: &Rat| Value::String(crate::exactlinalg::rat_to_string(x));
        match self {
            ClassRes4::T1 { .. } | ClassRes4::T4 { .. } => json!([]),
            ClassRes4::T2 { delta, .. } => json!([SIMPLE_NAMES[*delta]]),
            ClassRes4::T3 { point, .. } | ClassRes4::T5 { point, .. } => point.to_json(),
            ClassRes4::T6 { point, .. } | ClassRes4::T9 { point } => point.to_json(),
            ClassRes4::T7 { y, t } | ClassRes4::T8 { y, t } => json!([r(y), r(t)]),
            ClassRes4::T10 { x, y, .. } => json!([r(x), r(y)]),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tag": self.tag(),
            "params": self.params_json(),
            "witness": self.witness().map(|b| json!(b)).unwrap_or(Value::Null),
        })
    }

    /// Whether the type is one of the maximal abelian ones (all but T9).
    pub fn is_maximal_type(&self) -> bool {
        !matches!(self, ClassRes4::T9 { .. })
    }
}

/// exp(sU_β), the conjugation missing from the nilpotent normal forms
/// l_{[x:y:z]} and l_{x,y}.
pub fn beta_shift(s: &Rat) -> GroupElement {
    exp_unipotent(&u("beta").scale(s)).expect("nilpotent")
}

/// Diagonal part of X as an element of a.
fn diag_part(x: &SlElement) -> SlElement {
    let d: Vec<Rat> = (0..4).map(|i| x.matrix().get(i, i).clone()).collect();
    SlElement::diagonal(&d).expect("trace zero")
}

/// An element of S with diagonal part `h`.
fn element_over(elems: &[SlElement], h: &SlElement) -> Result<SlElement> {
    let cols: Vec<Vec<Rat>> = elems.iter().map(|x| diag_part(x).coords()).collect();
    let m = MatQ::from_rows(&cols)?.transpose();
    let c = solve(&m, &h.coords()).ok_or_else(|| Error::Internal("diagonal part not attained".into()))?;
    let terms: Vec<(Rat, SlElement)> = c.into_iter().zip(elems.iter().cloned()).collect();
    Ok(comb(&terms))
}

/// Unitriangular n with columns spanning the generalized eigenspaces of the
/// upper-triangular X, normalized to vanish where diagonal entries repeat.
fn eigen_unitriangular(x: &SlElement) -> Result<GroupElement> {
    let n = 4;
    let xm = x.matrix();
    let d: Vec<Rat> = (0..n).map(|i| xm.get(i, i).clone()).collect();
    let mut cols = MatQ::identity(n);
    for k in 0..n {
        let shifted = xm - &MatQ::identity(n).scale(&d[k]);
        let p = shifted.pow(n as u32);
        // Unknowns v_0..v_k; equations p·v = 0, v_k = 1, v_i = 0 where d_i = d_k.
        let mut rows: Vec<Vec<Rat>> = (0..n).map(|r| (0..=k).map(|c| p.get(r, c).clone()).collect()).collect();
        let mut rhs: Vec<Rat> = vec![Rat::zero(); n];
        for i in 0..=k {
            if d[i] == d[k] {
                let mut row = vec![Rat::zero(); k + 1];
                row[i] = Rat::one();
                rows.push(row);
                rhs.push(if i == k { Rat::one() } else { Rat::zero() });
            }
        }
        let v = solve(&MatQ::from_rows(&rows)?, &rhs)
            .ok_or_else(|| Error::Internal("generalized eigenvector not found".into()))?;
        for (i, vi) in v.into_iter().enumerate() {
            cols.set(i, k, vi);
        }
    }
    GroupElement::new(cols)
}

/// Generic element of a_I used to split S (distinct values off the roots of I).
fn generic_h(set: RootSet) -> SlElement {
    let r = datum();
    let weights: [i64; 3] = match set {
        0 => [1, 2, 3],
        ALPHA => [0, 1, 2],
        BETA => [1, 0, 2],
        GAMMA => [1, 2, 0],
        s if s == ALPHA | BETA => [0, 0, 1],
        s if s == ALPHA | GAMMA => [0, 1, 0],
        s if s == BETA | GAMMA => [1, 0, 0],
        _ => unreachable!("proper subsets of the simple roots"),
    };
    let terms: Vec<(Rat, SlElement)> = (0..3).map(|k| (rat(weights[k]), r.dual_h(k))).collect();
    comb(&terms)
}

/// Witness in N_I for a type with p_a(S) = a_I, and Ad b⁻¹(S).
fn split_by_levi(s: &SubspaceQ, elems: &[SlElement], set: RootSet) -> Result<(GroupElement, SubspaceQ)> {
    let h = generic_h(set);
    let x = element_over(elems, &h)?;
    let b = eigen_unitriangular(&x)?;
    if !datum().in_n_sub_group(set, &b) {
        return Err(Error::Internal("eigenbasis left N_I".into()));
    }
    let inner = adjoint_subspace(&b.inverse(), s)?;
    Ok((b, inner))
}

/// [x:y] from the nilpotent part of Ad b⁻¹(S) on a pair of adjacent simple roots.
fn block_point(inner: &SubspaceQ, first: usize) -> Result<ProjPoint> {
    let (i, j, k) = (first, first + 1, first + 2);
    for x in elements_of(inner)? {
        if diag_part(&x).is_zero() {
            let v = [entry(&x, i, j), entry(&x, j, k)];
            if !(v[0].is_zero() && v[1].is_zero()) {
                return ProjPoint::new(&v);
            }
        }
    }
    // The RREF basis may mix in the diagonal element; search the nilpotent part.
    let nil = inner.intersection(&datum().nilradical())?;
    for x in elements_of(&nil)? {
        let v = [entry(&x, i, j), entry(&x, j, k)];
        if !(v[0].is_zero() && v[1].is_zero()) {
            return ProjPoint::new(&v);
        }
    }
    Err(Error::Internal("no simple-root component in the nilpotent part".into()))
}

fn verified(res: ClassRes4, s: &SubspaceQ) -> Result<ClassRes4> {
    if &res.reconstruct()? == s {
        Ok(res)
    } else {
        Err(Error::Internal(format!("{} reconstruction differs from the input", res.tag())))
    }
}

/// Classifies a 3-dimensional abelian subalgebra of b by dim p_a(S) and then,
/// inside n, by its projection to n^α ⊕ n^γ.
pub fn classify_b4(s: &SubspaceQ) -> Result<ClassRes4> {
    check_borel_abelian(s, 4, 3)?;
    let r = datum();
    let elems = elements_of(s)?;
    let pa_vecs: Vec<Vec<Rat>> = elems.iter().map(|x| diag_part(x).coords()).collect();
    let pa = SubspaceQ::from_spanning_set(&pa_vecs, r.dim())?;
    let res = match pa.dim() {
        3 => {
            let (b, _) = split_by_levi(s, &elems, 0)?;
            ClassRes4::T1 { b }
        }
        2 => {
            let delta = (0..3)
                .find(|&k| r.a_sub(simple_set(k)) == pa)
                .ok_or_else(|| Error::Internal("projection to a is not a root kernel".into()))?;
            let (b, _) = split_by_levi(s, &elems, simple_set(delta))?;
            ClassRes4::T2 { delta, b }
        }
        1 => {
            if pa == r.a_sub(ALPHA | BETA) {
                let (b, inner) = split_by_levi(s, &elems, ALPHA | BETA)?;
                ClassRes4::T3 { point: block_point(&inner, 1)?, b }
            } else if pa == r.a_sub(ALPHA | GAMMA) {
                let (b, _) = split_by_levi(s, &elems, ALPHA | GAMMA)?;
                ClassRes4::T4 { b }
            } else if pa == r.a_sub(BETA | GAMMA) {
                let (b, inner) = split_by_levi(s, &elems, BETA | GAMMA)?;
                ClassRes4::T5 { point: block_point(&inner, 2)?, b }
            } else {
                return Err(Error::Internal("projection to a is not a_{δ,δ'}".into()));
            }
        }
        0 => classify_nilpotent(&elems)?,
        _ => unreachable!("dim S = 3"),
    };
    verified(res, s)
}

fn classify_nilpotent(elems: &[SlElement]) -> Result<ClassRes4> {
    let pag: Vec<Vec<Rat>> = elems.iter().map(|x| vec![entry(x, 1, 2), entry(x, 3, 4)]).collect();
    match rank(&MatQ::from_rows(&pag)?) {
        0 => {
            let blocks: Vec<Vec<Rat>> =
                elems.iter().map(|x| vec![entry(x, 1, 3), entry(x, 1, 4), entry(x, 2, 3), entry(x, 2, 4)]).collect();
            let ann = SubspaceQ::from_spanning_set(&blocks, 4)?.annihilator();
            if ann.dim() != 1 {
                return Err(Error::Internal("S is not a hyperplane of l0".into()));
            }
            Ok(ClassRes4::T9 { point: ProjPoint::new(&ann.basis()[0])? })
        }
        1 => {
            let x = elems
                .iter()
                .find(|x| !(entry(x, 1, 2).is_zero() && entry(x, 3, 4).is_zero()))
                .expect("rank one");
            let (a, b, c) = (entry(x, 1, 2), entry(x, 2, 3), entry(x, 3, 4));
            if !a.is_zero() && !c.is_zero() {
                // After clearing E13 with xE13 + zE24, the E24 entry of X is 2sz.
                let clean = entry(x, 2, 4) - entry(x, 1, 3) * &c / &a;
                let s = clean / (rat(2) * &c);
                Ok(ClassRes4::T6 { point: ProjPoint::new(&[a, b, c])?, s })
            } else if c.is_zero() {
                let s = a.recip();
                Ok(ClassRes4::T7 { y: &b * &s, t: entry(x, 2, 4) * &s })
            } else {
                let s = c.recip();
                Ok(ClassRes4::T8 { y: &b * &s, t: entry(x, 1, 3) * &s })
            }
        }
        2 => {
            let m = MatQ::from_rows(&pag)?.transpose();
            let pick = |target: [i64; 2]| -> Result<SlElement> {
                let c = solve(&m, &[rat(target[0]), rat(target[1])])
                    .ok_or_else(|| Error::Internal("projection to n^α ⊕ n^γ not onto".into()))?;
                Ok(comb(&c.into_iter().zip(elems.iter().cloned()).collect::<Vec<_>>()))
            };
            let (x, y) = (pick([1, 0])?, pick([0, 1])?);
            Ok(ClassRes4::T10 { x: entry(&x, 2, 4), y: entry(&y, 1, 3), s: -entry(&x, 1, 3) })
        }
        _ => unreachable!("two coordinates"),
    }
}

/// True iff the centralizer of S in b is S itself.
pub fn is_maximal_abelian_in_b(s: &SubspaceQ) -> Result<bool> {
    if !is_abelian(s) {
        return Err(Error::NotAbelian);
    }
    let r = datum();
    if !r.borel().contains_subspace(s) {
        return Err(Error::NotInBorel);
    }
    Ok(&centralizer_in(s, r.coords().borel_dim())? == s)
}

/// The sl3 element b(x, y, z) placed in the 3×3 diagonal block starting at `offset`.
fn embedded_b(offset: usize, x: &Rat, y: &Rat, z: &Rat) -> GroupElement {
    let b3 = crate::liealg::b_family(x, y, z);
    let mut m = MatQ::identity(4);
    for i in 0..3 {
        for j in 0..3 {
            m.set(offset + i, offset + j, b3.matrix().get(i, j).clone());
        }
    }
    GroupElement::new(m).expect("unitriangular")
}

/// b(m, σm, c m²) with the projective ratio of the sl3 boundary fixed at [a:b].
fn block_sequence(offset: usize, p: &ProjPoint, m: &Rat) -> Result<GroupElement> {
    let (a, b) = p1(p)?;
    let sigma = if (&b + &a).is_zero() { rat(-1) } else { rat(1) };
    let c = (&a - &b * &sigma) / (rat(2) * (&b + &a * &sigma));
    Ok(embedded_b(offset, m, &(&sigma * m), &(c * m * m)))
}

fn exp_of(terms: &[(Rat, &str)]) -> Result<GroupElement> {
    let t: Vec<(Rat, SlElement)> = terms.iter().map(|(c, n)| (c.clone(), u(n))).collect();
    exp_unipotent(&comb(&t))
}

fn sq(n: u64) -> Rat {
    rat(n as i64) * rat(n as i64)
}

/// Nonzero stand-in for a degenerate parameter: the value itself or n⁻².
fn nudge(v: &Rat, n: u64) -> Rat {
    if v.is_zero() {
        sq(n).recip()
    } else {
        v.clone()
    }
}

fn block_diag(p: &MatQ, q: &MatQ) -> MatQ {
    let mut m = MatQ::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            m.set(i, j, p.get(i, j).clone());
            m.set(i + 2, j + 2, q.get(i, j).clone());
        }
    }
    m
}

/// h = blockdiag(P, R) with P⁻ᵀ W₀ Rᵀ = W, mapping l_{W₀} to l_W, where W₀ is
/// [[1,0],[0,−1]] for rank 2 and [[1,0],[0,0]] for rank 1.
fn l0_normalizer(w: &MatQ) -> Result<(GlElement, bool)> {
    let rk = rank(w);
    if rk == 2 {
        let p = w.inverse().expect("rank two").transpose();
        let r = MatQ::diag(&[rat(1), rat(-1)]);
        Ok((GlElement::new(block_diag(&p, &r))?, true))
    } else {
        // W = u vᵀ: take the first nonzero column for u and the matching row for v.
        let (ri, cj) = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .find(|&(i, j)| !w.get(i, j).is_zero())
            .expect("nonzero point");
        let uv: Vec<Rat> = (0..2).map(|i| w.get(i, cj).clone()).collect();
        let vv: Vec<Rat> = (0..2).map(|j| w.get(ri, j) / w.get(ri, cj) ).collect();
        let complete = |v: &[Rat]| if v[0].is_zero() { vec![rat(1), rat(0)] } else { vec![rat(0), rat(1)] };
        let (u2, v2) = (complete(&uv), complete(&vv));
        let pit = MatQ::from_rows(&[vec![uv[0].clone(), u2[0].clone()], vec![uv[1].clone(), u2[1].clone()]])?;
        let p = pit.transpose().inverse().expect("completed basis");
        let r = MatQ::from_rows(&[vec![vv[0].clone(), v2[0].clone()], vec![vv[1].clone(), v2[1].clone()]])?;
        Ok((GlElement::new(block_diag(&p, &r))?, false))
    }
}

/// Conjugator of the n-th Cartan subspace converging to the classified type.
pub fn thm62_conjugator(res: &ClassRes4, n: u64) -> Result<GlElement> {
    let m = sq(n);
    let with_witness = |g: GroupElement| -> GlElement {
        let b = res.witness().unwrap_or_else(|| GroupElement::identity(4));
        GlElement::from(b.compose(&g))
    };
    Ok(match res {
        ClassRes4::T1 { .. } => with_witness(GroupElement::identity(4)),
        ClassRes4::T2 { delta, .. } => with_witness(exp_of(&[(m, SIMPLE_NAMES[*delta])])?),
        ClassRes4::T3 { point, .. } => with_witness(block_sequence(0, point, &m)?),
        ClassRes4::T4 { .. } => with_witness(exp_of(&[(m.clone(), "alpha"), (m, "gamma")])?),
        ClassRes4::T5 { point, .. } => with_witness(block_sequence(1, point, &m)?),
        ClassRes4::T6 { point, .. } => {
            let c = point.rats();
            let m = if c[1].is_zero() { &m * &m } else { m };
            let y = nudge(&c[1], n);
            with_witness(exp_of(&[(&m * &c[0], "alpha"), (&m * &y, "beta"), (&m * &c[2], "gamma")])?)
        }
        ClassRes4::T7 { y, t } => {
            let m = if y.is_zero() || t.is_zero() { &m * &m } else { m };
            let (y, t) = (nudge(y, n), nudge(t, n));
            GlElement::from(exp_of(&[(m.clone(), "alpha"), (&m * &y, "beta"), (&m * &t, "beta+gamma")])?)
        }
        ClassRes4::T8 { y, t } => {
            let m = if y.is_zero() || t.is_zero() { &m * &m } else { m };
            let (y, t) = (nudge(y, n), nudge(t, n));
            GlElement::from(exp_of(&[(&m * &t, "alpha+beta"), (&m * &y, "beta"), (m.clone(), "gamma")])?)
        }
        ClassRes4::T9 { point } => {
            let w = point.rats();
            let wm = MatQ::from_rows(&[vec![w[0].clone(), w[1].clone()], vec![w[2].clone(), w[3].clone()]])?;
            let (h, full_rank) = l0_normalizer(&wm)?;
            let g = if full_rank {
                // l_{[1:j:1]} with j = n³ tends to l_{[1:0:0:−1]}.
                let j = &m * &rat(n as i64);
                let outer = &m * &m;
                exp_of(&[(outer.clone(), "alpha"), (&outer * &j, "beta"), (outer, "gamma")])?
            } else {
                // l_{[−1/k : j : 1]} with k = j = n² tends to l_{[1:0:0:0]}.
                let big = &m * &m;
                exp_of(&[(-(&big / &m), "alpha"), (&big * &m, "beta"), (big, "gamma")])?
            };
            h.compose(&GlElement::from(g))
        }
        ClassRes4::T10 { x, y, .. } => {
            let m = if x.is_zero() || y.is_zero() { &m * &m } else { m };
            let (x, y) = (nudge(x, n), nudge(y, n));
            let m4 = { let m2 = &m * &m; &m2 * &m2 };
            with_witness(exp_of(&[
                (m.clone(), "alpha"),
                (m.clone(), "gamma"),
                (-(&m * &y), "alpha+beta"),
                (-(&m * &x), "beta+gamma"),
                (m4, "alpha+beta+gamma"),
            ])?)
        }
    })
}

/// n ↦ Ad g_n(a) converging to the classified subalgebra.
pub fn thm62_sequence(res: &ClassRes4) -> SeqFamily {
    let res = res.clone();
    let name = format!("{} sequence", res.tag());
    SeqFamily::new(name, Vec::new(), move |n| {
        let g = thm62_conjugator(&res, n)?;
        adjoint_subspace(&g, &datum().cartan())
    })
}

fn random_point(rng: &mut impl Rng, k: usize, nonzero: &[usize], h: i64) -> Result<ProjPoint> {
    loop {
        let v: Vec<Rat> = (0..k)
            .map(|i| if nonzero.contains(&i) { sampling::nonzero_rational(rng, h) } else { sampling::rational(rng, h) })
            .collect();
        if let Ok(p) = ProjPoint::new(&v) {
            return Ok(p);
        }
    }
}

/// Random parameters of height ≤ h for the given tag, as a classification
/// result with identity witness.
pub fn random_type(rng: &mut impl Rng, tag: &str, h: i64) -> Result<ClassRes4> {
    let id = GroupElement::identity(4);
    Ok(match tag {
        "T1" => ClassRes4::T1 { b: id },
        "T2" => ClassRes4::T2 { delta: rng.gen_range(0..3), b: id },
        "T3" => ClassRes4::T3 { point: random_point(rng, 2, &[], h)?, b: id },
        "T4" => ClassRes4::T4 { b: id },
        "T5" => ClassRes4::T5 { point: random_point(rng, 2, &[], h)?, b: id },
        "T6" => ClassRes4::T6 { point: random_point(rng, 3, &[0, 2], h)?, s: Rat::zero() },
        "T7" => ClassRes4::T7 { y: sampling::rational(rng, h), t: sampling::rational(rng, h) },
        "T8" => ClassRes4::T8 { y: sampling::rational(rng, h), t: sampling::rational(rng, h) },
        "T9" => ClassRes4::T9 { point: random_point(rng, 4, &[], h)? },
        "T10" => ClassRes4::T10 { x: sampling::rational(rng, h), y: sampling::rational(rng, h), s: Rat::zero() },
        _ => return Err(Error::UnknownName(tag.to_string())),
    })
}

/// Random element of the given type: a random family member moved by a
/// random element of AN.
pub fn random_b4(rng: &mut impl Rng, tag: &str, h: i64) -> Result<SubspaceQ> {
    let base = random_type(rng, tag, h)?.base()?;
    let g = sampling::borel_element(rng, 4, h);
    adjoint_subspace(&g, &base)
}

pub fn parse_tag(s: &str) -> Result<&'static str> {
    TAGS.iter().copied().find(|t| t.eq_ignore_ascii_case(s)).ok_or_else(|| Error::UnknownName(s.to_string()))
}
