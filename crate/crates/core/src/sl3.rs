//! Two-dimensional abelian subalgebras of the Borel subalgebra of sl3:
//! classification, orbit labels, normalizers, and predicted limits of
//! sequences of Cartan subspaces.

use std::fmt;

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chabauty::is_abelian;
use crate::exactlinalg::{frac, rat, solve, MatQ, Rat};
use crate::error::{Error, Result};
use crate::grassmann::{SeqFamily, SubspaceQ};
use crate::liealg::{
    adjoint_subspace, b_family, centralizer_in, diagonal_group, elements_of, normalizer_in, span_of,
    GroupElement, RootDatum, SlElement,
};
use crate::projective::ProjPoint;
use crate::sampling;
use crate::seqs::MonomialSum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sl3Root {
    #[serde(rename = "alpha")]
    Alpha,
    #[serde(rename = "beta")]
    Beta,
    #[serde(rename = "alpha+beta")]
    AlphaBeta,
}

impl Sl3Root {
    pub const ALL: [Sl3Root; 3] = [Sl3Root::Alpha, Sl3Root::Beta, Sl3Root::AlphaBeta];

    pub fn name(self) -> &'static str {
        match self {
            Sl3Root::Alpha => "alpha",
            Sl3Root::Beta => "beta",
            Sl3Root::AlphaBeta => "alpha+beta",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let r = datum().root(s)?.name;
        Sl3Root::ALL
            .into_iter()
            .find(|x| x.name() == r)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

fn datum() -> RootDatum {
    RootDatum::new(3).expect("sl3")
}

fn h_alpha() -> SlElement {
    datum().dual_h(0)
}

fn h_beta() -> SlElement {
    datum().dual_h(1)
}

fn u(name: &str) -> SlElement {
    datum().u_named(name).expect("sl3 root")
}

/// The standard Cartan subspace a.
pub fn cartan() -> SubspaceQ {
    datum().cartan()
}

/// l_{[x:y]} = R(xU_α + yU_β) ⊕ R U_{α+β}.
pub fn l_proj(p: &ProjPoint) -> Result<SubspaceQ> {
    if p.len() != 2 {
        return Err(Error::InvalidParameter(format!("{p} is not a point of P1")));
    }
    let c = p.rats();
    let x = SlElement::combination(&[(c[0].clone(), &u("alpha")), (c[1].clone(), &u("beta"))]);
    span_of(&[x, u("alpha+beta")])
}

/// l_γ = a_γ ⊕ n^γ.
pub fn l_root(g: Sl3Root) -> SubspaceQ {
    let elems = match g {
        Sl3Root::Alpha => [h_beta(), u("alpha")],
        Sl3Root::Beta => [h_alpha(), u("beta")],
        Sl3Root::AlphaBeta => [h_alpha().sub(&h_beta()), u("alpha+beta")],
    };
    span_of(&elems).expect("sl3 elements")
}

/// Canonical representative of the coset witness for l_γ: b(0,y,z), b(x,0,z)
/// or b(x,y,0).
pub fn root_witness(g: Sl3Root, p: &Rat, q: &Rat) -> GroupElement {
    let z = Rat::zero();
    match g {
        Sl3Root::Alpha => b_family(&z, p, q),
        Sl3Root::Beta => b_family(p, &z, q),
        Sl3Root::AlphaBeta => b_family(p, q, &z),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ClassRes3 {
    CartanConj { b: GroupElement },
    Lproj { point: ProjPoint },
    LRoot { root: Sl3Root, b: GroupElement },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrbitLabel3 {
    A,
    L10,
    L01,
    L11,
    L1m1,
    LAlpha,
    LBeta,
    LAlphaBeta,
}

impl OrbitLabel3 {
    /// Order used for normalizer tables: a, l[0:1], l[1:0], l[1:1], l[1:−1], l_α, l_β, l_{α+β}.
    pub const ALL: [OrbitLabel3; 8] = [
        OrbitLabel3::A,
        OrbitLabel3::L01,
        OrbitLabel3::L10,
        OrbitLabel3::L11,
        OrbitLabel3::L1m1,
        OrbitLabel3::LAlpha,
        OrbitLabel3::LBeta,
        OrbitLabel3::LAlphaBeta,
    ];

    pub fn representative(self) -> SubspaceQ {
        let p = |a, b| l_proj(&ProjPoint::from_i64(&[a, b]).unwrap()).unwrap();
        match self {
            OrbitLabel3::A => cartan(),
            OrbitLabel3::L10 => p(1, 0),
            OrbitLabel3::L01 => p(0, 1),
            OrbitLabel3::L11 => p(1, 1),
            OrbitLabel3::L1m1 => p(1, -1),
            OrbitLabel3::LAlpha => l_root(Sl3Root::Alpha),
            OrbitLabel3::LBeta => l_root(Sl3Root::Beta),
            OrbitLabel3::LAlphaBeta => l_root(Sl3Root::AlphaBeta),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OrbitLabel3::A => "a",
            OrbitLabel3::L10 => "l[1:0]",
            OrbitLabel3::L01 => "l[0:1]",
            OrbitLabel3::L11 => "l[1:1]",
            OrbitLabel3::L1m1 => "l[1:-1]",
            OrbitLabel3::LAlpha => "l_alpha",
            OrbitLabel3::LBeta => "l_beta",
            OrbitLabel3::LAlphaBeta => "l_alpha+beta",
        }
    }
}

impl fmt::Display for OrbitLabel3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl ClassRes3 {
    pub fn tag(&self) -> &'static str {
        match self {
            ClassRes3::CartanConj { .. } => "CartanConj",
            ClassRes3::Lproj { .. } => "Lproj",
            ClassRes3::LRoot { .. } => "LRoot",
        }
    }

    /// The subspace described by the tag and witness.
    pub fn reconstruct(&self) -> SubspaceQ {
        match self {
            ClassRes3::CartanConj { b } => adjoint_subspace(b, &cartan()).expect("sl3"),
            ClassRes3::Lproj { point } => l_proj(point).expect("P1 point"),
            ClassRes3::LRoot { root, b } => adjoint_subspace(b, &l_root(*root)).expect("sl3"),
        }
    }

    pub fn to_json(&self) -> Value {
        let label = orbit_label(self);
        match self {
            ClassRes3::CartanConj { b } => json!({
                "tag": self.tag(), "witness": b, "orbit_label": label.name(),
            }),
            ClassRes3::Lproj { point } => json!({
                "tag": self.tag(), "point": point.to_json(), "witness": Value::Null, "orbit_label": label.name(),
            }),
            ClassRes3::LRoot { root, b } => json!({
                "tag": self.tag(), "root": root.name(), "witness": b, "orbit_label": label.name(),
            }),
        }
    }
}

pub fn orbit_label(c: &ClassRes3) -> OrbitLabel3 {
    match c {
        ClassRes3::CartanConj { .. } => OrbitLabel3::A,
        ClassRes3::Lproj { point } => {
            let (x, y) = (&point.coords()[0], &point.coords()[1]);
            if y.is_zero() {
                OrbitLabel3::L10
            } else if x.is_zero() {
                OrbitLabel3::L01
            } else if x.is_positive() == y.is_positive() {
                OrbitLabel3::L11
            } else {
                OrbitLabel3::L1m1
            }
        }
        ClassRes3::LRoot { root, .. } => match root {
            Sl3Root::Alpha => OrbitLabel3::LAlpha,
            Sl3Root::Beta => OrbitLabel3::LBeta,
            Sl3Root::AlphaBeta => OrbitLabel3::LAlphaBeta,
        },
    }
}

/// Checks the preconditions shared by the sl3 and sl4 classifiers.
pub fn check_borel_abelian(s: &SubspaceQ, n: usize, dim: usize) -> Result<()> {
    let r = RootDatum::new(n)?;
    if s.ambient() != r.dim() {
        return Err(Error::SizeMismatch(format!("ambient {} is not sl{n}", s.ambient())));
    }
    if s.dim() != dim {
        return Err(Error::WrongDimension { expected: dim, found: s.dim() });
    }
    if !r.borel().contains_subspace(s) {
        return Err(Error::NotInBorel);
    }
    if !is_abelian(s) {
        return Err(Error::NotAbelian);
    }
    Ok(())
}

/// (α, β) values of the diagonal part of X.
fn simple_values(x: &SlElement) -> (Rat, Rat) {
    let m = x.matrix();
    (m.get(0, 0) - m.get(1, 1), m.get(1, 1) - m.get(2, 2))
}

fn entry(x: &SlElement, i: usize, j: usize) -> Rat {
    x.matrix().get(i, j).clone()
}

/// Basis (combination of `elems`) whose (α, β) values are the unit vectors,
/// when the diagonal parts span a.
fn dual_pair(elems: &[SlElement]) -> Result<(SlElement, SlElement)> {
    let vals: Vec<(Rat, Rat)> = elems.iter().map(simple_values).collect();
    let m = MatQ::from_rows(&[
        vec![vals[0].0.clone(), vals[1].0.clone()],
        vec![vals[0].1.clone(), vals[1].1.clone()],
    ])?;
    let c1 = solve(&m, &[rat(1), rat(0)]).ok_or_else(|| Error::Internal("diagonal parts dependent".into()))?;
    let c2 = solve(&m, &[rat(0), rat(1)]).ok_or_else(|| Error::Internal("diagonal parts dependent".into()))?;
    let x1 = SlElement::combination(&[(c1[0].clone(), &elems[0]), (c1[1].clone(), &elems[1])]);
    let x2 = SlElement::combination(&[(c2[0].clone(), &elems[0]), (c2[1].clone(), &elems[1])]);
    Ok((x1, x2))
}

/// An element of S with nonzero diagonal part and one with zero diagonal part.
fn split_one_dim(elems: &[SlElement]) -> Result<(SlElement, SlElement)> {
    let e0 = simple_values(&elems[0]);
    // Pick the element with nonzero diagonal and eliminate it from the other.
    let nz0 = !(e0.0.is_zero() && e0.1.is_zero());
    let (x, y) = if nz0 { (&elems[0], &elems[1]) } else { (&elems[1], &elems[0]) };
    let (xv, yv) = (simple_values(x), simple_values(y));
    let c = if !xv.0.is_zero() { &yv.0 / &xv.0 } else { &yv.1 / &xv.1 };
    let y0 = y.sub(&x.scale(&c));
    Ok((x.clone(), y0))
}

fn verified(res: ClassRes3, s: &SubspaceQ) -> Result<ClassRes3> {
    if &res.reconstruct() == s {
        Ok(res)
    } else {
        Err(Error::Internal(format!("{} reconstruction differs from the input", res.tag())))
    }
}

/// Classifies a 2-dimensional abelian subalgebra of b by the dimension of its
/// projection to a.
pub fn classify_y(s: &SubspaceQ) -> Result<ClassRes3> {
    check_borel_abelian(s, 3, 2)?;
    let elems = elements_of(s)?;
    let diag_rank = {
        let rows: Vec<Vec<Rat>> = elems
            .iter()
            .map(|x| {
                let (a, b) = simple_values(x);
                vec![a, b]
            })
            .collect();
        crate::exactlinalg::rank(&MatQ::from_rows(&rows)?)
    };
    match diag_rank {
        2 => {
            let (x1, x2) = dual_pair(&elems)?;
            let x = -entry(&x1, 0, 1);
            let y = -entry(&x2, 1, 2);
            let w = -entry(&x2, 0, 2);
            let b = GroupElement::new(MatQ::from_rows(&[
                vec![rat(1), x, w],
                vec![rat(0), rat(1), y],
                vec![rat(0), rat(0), rat(1)],
            ])?)?;
            verified(ClassRes3::CartanConj { b }, s)
        }
        0 => {
            let rows: Vec<Vec<Rat>> = elems.iter().map(|x| vec![entry(x, 0, 1), entry(x, 1, 2)]).collect();
            let v = rows
                .iter()
                .find(|r| !(r[0].is_zero() && r[1].is_zero()))
                .ok_or_else(|| Error::Internal("subspace has no U_alpha/U_beta component".into()))?;
            verified(ClassRes3::Lproj { point: ProjPoint::new(v)? }, s)
        }
        1 => {
            let (x, y) = split_one_dim(&elems)?;
            let (va, vb) = simple_values(&x);
            let res = if va.is_zero() {
                // p_a(S) = R H_β: normalize and clear the U_α part.
                let x = x.scale(&vb.recip());
                let ya = entry(&y, 0, 1);
                if ya.is_zero() {
                    return Err(Error::Internal("no U_alpha component in the nilpotent part".into()));
                }
                let y = y.scale(&ya.recip());
                let x = x.sub(&y.scale(&entry(&x, 0, 1)));
                ClassRes3::LRoot { root: Sl3Root::Alpha, b: root_witness(Sl3Root::Alpha, &-entry(&x, 1, 2), &-entry(&x, 0, 2)) }
            } else if vb.is_zero() {
                let x = x.scale(&va.recip());
                let yb = entry(&y, 1, 2);
                if yb.is_zero() {
                    return Err(Error::Internal("no U_beta component in the nilpotent part".into()));
                }
                let y = y.scale(&yb.recip());
                let x = x.sub(&y.scale(&entry(&x, 1, 2)));
                ClassRes3::LRoot { root: Sl3Root::Beta, b: root_witness(Sl3Root::Beta, &-entry(&x, 0, 1), &-entry(&x, 0, 2)) }
            } else if (&va + &vb).is_zero() {
                let x = x.scale(&va.recip());
                let yab = entry(&y, 0, 2);
                if yab.is_zero() {
                    return Err(Error::Internal("no U_alpha+beta component in the nilpotent part".into()));
                }
                let y = y.scale(&yab.recip());
                let x = x.sub(&y.scale(&entry(&x, 0, 2)));
                ClassRes3::LRoot { root: Sl3Root::AlphaBeta, b: root_witness(Sl3Root::AlphaBeta, &-entry(&x, 0, 1), &entry(&x, 1, 2)) }
            } else {
                return Err(Error::Internal("diagonal part is regular for every root".into()));
            };
            verified(res, s)
        }
        _ => unreachable!("two (α, β) rows have rank at most 2"),
    }
}

/// dim {X ∈ sl3 : [X, S] ⊆ S}.
pub fn normalizer_dim(s: &SubspaceQ) -> Result<usize> {
    Ok(normalizer_in(s, 8)?.dim())
}

/// dim b − dim {X ∈ b : [X, S] ⊆ S}.
pub fn b0_orbit_dim(s: &SubspaceQ) -> Result<usize> {
    Ok(5 - normalizer_in(s, 5)?.dim())
}

pub fn centralizer_dim_in_b(s: &SubspaceQ) -> Result<usize> {
    Ok(centralizer_in(s, 5)?.dim())
}

/// Limit of Ad b(x_n, y_n, z_n)(a) in each of the four regimes.
#[derive(Clone, Debug, PartialEq)]
pub enum CartanLimitCase {
    /// x_n → ∞, (y_n, z_n + x_n y_n/2) → (y, z).
    XInfinite { y: Rat, z: Rat },
    /// y_n → ∞, (x_n, z_n − x_n y_n/2) → (x, z).
    YInfinite { x: Rat, z: Rat },
    /// z_n → ∞, (x_n, y_n) → (x, y).
    ZInfinite { x: Rat, y: Rat },
    /// Otherwise, with [x_n(z_n + x_n y_n/2) : y_n(−z_n + x_n y_n/2)] → [a : b].
    Projective(ProjPoint),
}

pub fn predicted_limit_cartan(case: &CartanLimitCase) -> Result<SubspaceQ> {
    let z = Rat::zero();
    match case {
        CartanLimitCase::XInfinite { y, z: zz } => adjoint_subspace(&b_family(&z, y, zz), &l_root(Sl3Root::Alpha)),
        CartanLimitCase::YInfinite { x, z: zz } => adjoint_subspace(&b_family(x, &z, zz), &l_root(Sl3Root::Beta)),
        CartanLimitCase::ZInfinite { x, y } => adjoint_subspace(&b_family(x, y, &z), &l_root(Sl3Root::AlphaBeta)),
        CartanLimitCase::Projective(p) => l_proj(p),
    }
}

/// Case index (1–4) and parameters, as in the command-line interface.
pub fn cartan_limit_case(case: u8, params: &[Rat]) -> Result<CartanLimitCase> {
    if params.len() != 2 {
        return Err(Error::InvalidParameter("two parameters expected".into()));
    }
    let (p, q) = (params[0].clone(), params[1].clone());
    Ok(match case {
        1 => CartanLimitCase::XInfinite { y: p, z: q },
        2 => CartanLimitCase::YInfinite { x: p, z: q },
        3 => CartanLimitCase::ZInfinite { x: p, y: q },
        4 => CartanLimitCase::Projective(ProjPoint::new(params)?),
        _ => return Err(Error::InvalidParameter(format!("case {case} is not in 1..=4"))),
    })
}

/// Regime of a triple of monomial-sum sequences, with its predicted limit
/// data, when the leading behaviour decides it.
pub fn detect_cartan_case(x: &MonomialSum, y: &MonomialSum, z: &MonomialSum) -> Result<CartanLimitCase> {
    let half = frac(1, 2);
    let xy = x.times(y).scale(&half);
    let w_plus = z.plus(&xy);
    let w_minus = z.plus(&xy.scale(&rat(-1)));
    if x.diverges() {
        if let (Some(yl), Some(wl)) = (y.limit(), w_plus.limit()) {
            return Ok(CartanLimitCase::XInfinite { y: yl, z: wl });
        }
    }
    if y.diverges() {
        if let (Some(xl), Some(wl)) = (x.limit(), w_minus.limit()) {
            return Ok(CartanLimitCase::YInfinite { x: xl, z: wl });
        }
    }
    if z.diverges() {
        if let (Some(xl), Some(yl)) = (x.limit(), y.limit()) {
            return Ok(CartanLimitCase::ZInfinite { x: xl, y: yl });
        }
    }
    if !(x.diverges() || y.diverges() || z.diverges()) {
        return Err(Error::InvalidParameter("bounded sequence: the Cartan subspaces converge in the interior".into()));
    }
    let a = x.times(&w_plus);
    let b = y.times(&xy.plus(&z.scale(&rat(-1))));
    let da = a.degree();
    let db = b.degree();
    let top = match (da, db) {
        (None, None) => return Err(Error::InvalidParameter("degenerate projective ratio".into())),
        (Some(i), None) => i,
        (None, Some(j)) => j,
        (Some(i), Some(j)) => i.max(j),
    };
    let coef = |m: &MonomialSum| {
        m.terms().iter().find(|(_, k)| *k == top).map(|(c, _)| c.clone()).unwrap_or_else(Rat::zero)
    };
    Ok(CartanLimitCase::Projective(ProjPoint::new(&[coef(&a), coef(&b)])?))
}

/// n ↦ Ad b(x_n, y_n, z_n)(a).
pub fn cartan_family(x: MonomialSum, y: MonomialSum, z: MonomialSum) -> SeqFamily {
    let name = format!("Ad b({x}, {y}, {z})(a)");
    SeqFamily::new(name, Vec::new(), move |n| {
        adjoint_subspace(&b_family(&x.eval(n), &y.eval(n), &z.eval(n)), &cartan())
    })
}

/// Representatives moved along the sequences of the orbit-limit statements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitRep {
    L11,
    L1m1,
    LAlpha,
    LBeta,
    LAlphaBeta,
}

#[derive(Clone, Debug, PartialEq)]
pub enum OrbitLimitData {
    /// λ_n → +∞ (true) or λ_n → 0 (false) for h_n = diag(λ_n, λ_n⁻², λ_n).
    Lambda { to_infinity: bool },
    /// Limit [a : b] of the ratio attached to the representative.
    Ratio(ProjPoint),
}

pub fn predicted_limit_orbit(rep: OrbitRep, data: &OrbitLimitData) -> Result<SubspaceQ> {
    match (rep, data) {
        (OrbitRep::L11 | OrbitRep::L1m1, OrbitLimitData::Lambda { to_infinity }) => {
            let p = if *to_infinity { [1, 0] } else { [0, 1] };
            l_proj(&ProjPoint::from_i64(&p)?)
        }
        (OrbitRep::LAlpha | OrbitRep::LBeta | OrbitRep::LAlphaBeta, OrbitLimitData::Ratio(p)) => l_proj(p),
        _ => Err(Error::InvalidParameter(format!("limit data {data:?} does not match {rep:?}"))),
    }
}

/// h = diag(λ, λ⁻², λ).
pub fn h_lambda(l: &Rat) -> GroupElement {
    diagonal_group(&[l.clone(), (l * l).recip(), l.clone()]).expect("det one")
}

/// The sequence of a representative under h_n, b(0, y_n, z_n), b(x_n, 0, z_n)
/// or b(x_n, y_n, 0); `p`, `q` are the two varying parameters (λ uses only `p`).
pub fn orbit_family(rep: OrbitRep, p: MonomialSum, q: MonomialSum) -> SeqFamily {
    let name = format!("{rep:?}({p}, {q})");
    SeqFamily::new(name, Vec::new(), move |n| {
        let (a, b) = (p.eval(n), q.eval(n));
        match rep {
            OrbitRep::L11 => adjoint_subspace(&h_lambda(&a), &OrbitLabel3::L11.representative()),
            OrbitRep::L1m1 => adjoint_subspace(&h_lambda(&a), &OrbitLabel3::L1m1.representative()),
            OrbitRep::LAlpha => adjoint_subspace(&root_witness(Sl3Root::Alpha, &a, &b), &l_root(Sl3Root::Alpha)),
            OrbitRep::LBeta => adjoint_subspace(&root_witness(Sl3Root::Beta, &a, &b), &l_root(Sl3Root::Beta)),
            OrbitRep::LAlphaBeta => {
                adjoint_subspace(&root_witness(Sl3Root::AlphaBeta, &a, &b), &l_root(Sl3Root::AlphaBeta))
            }
        }
    })
}

/// Ratio limit for the representative: [z : y²], [−x² : z] or [−x : y]
/// (leading terms of the parameter sequences).
pub fn orbit_ratio_limit(rep: OrbitRep, p: &MonomialSum, q: &MonomialSum) -> Result<ProjPoint> {
    let (a, b) = match rep {
        OrbitRep::LAlpha => (q.clone(), p.times(p)),
        OrbitRep::LBeta => (p.times(p).scale(&rat(-1)), q.clone()),
        OrbitRep::LAlphaBeta => (p.scale(&rat(-1)), q.clone()),
        _ => return Err(Error::InvalidParameter("ratio limits apply to root representatives".into())),
    };
    let top = a.degree().into_iter().chain(b.degree()).max().ok_or_else(|| Error::InvalidParameter("zero ratio".into()))?;
    let coef = |m: &MonomialSum| m.terms().iter().find(|(_, k)| *k == top).map(|(c, _)| c.clone()).unwrap_or_else(Rat::zero);
    ProjPoint::new(&[coef(&a), coef(&b)])
}

/// Ad diag(−1, −1, 1)(l_{[1:1]}) = l_{[1:−1]}.
pub fn sigma_involution_check() -> bool {
    let sigma = diagonal_group(&[rat(-1), rat(-1), rat(1)]).expect("det one");
    adjoint_subspace(&sigma, &OrbitLabel3::L11.representative()).ok() == Some(OrbitLabel3::L1m1.representative())
}

pub fn sigma() -> GroupElement {
    diagonal_group(&[rat(-1), rat(-1), rat(1)]).expect("det one")
}

/// Random element of Y: a random representative moved by a random element of AN.
pub fn random_y(rng: &mut impl Rng, h: i64) -> (OrbitLabel3, SubspaceQ) {
    let label = OrbitLabel3::ALL[rng.gen_range(0..8)];
    let g = sampling::borel_element(rng, 3, h);
    (label, adjoint_subspace(&g, &label.representative()).expect("sl3"))
}

#[cfg(test)]
mod tests;
