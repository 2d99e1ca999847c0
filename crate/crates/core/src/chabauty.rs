//! Membership in the set of Borel-contained abelian subalgebras, the sl2
//! closure criterion, the rank-one sl2 boundary, and dimension/counting facts.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::exactlinalg::{
    charpoly, from_f64, is_real_rooted, kernel, to_f64, MatQ, Rat, VecQ,
};
use crate::error::{Error, Result};
use crate::grassmann::{limit_estimate, LimitEstimate, SeqFamily, SubspaceF, SubspaceQ};
use crate::liealg::{
    adjoint_subspace, bracket, elements_of, exp_unipotent, rank_of_ambient, span_of, standard_cartan,
    GroupElement, SlElement,
};

pub fn is_abelian(s: &SubspaceQ) -> bool {
    let Ok(elems) = elements_of(s) else {
        return false;
    };
    elems.iter().enumerate().all(|(i, x)| {
        elems[i + 1..].iter().all(|y| bracket(x, y).map(|z| z.is_zero()).unwrap_or(false))
    })
}

/// Real spectrum of X in the defining representation.
pub fn has_real_spectrum(x: &SlElement) -> bool {
    is_real_rooted(&charpoly(x.matrix()).expect("square")).expect("charpoly is monic")
}

/// Orthogonal matrix Q (row-major) with Qᵀ X Q nearly upper-triangular for
/// every X in the subspace.
#[derive(Clone, Debug, Serialize)]
pub struct FloatWitness {
    pub q: Vec<f64>,
    /// Largest |entry| below the diagonal of Q⁻¹ X Q over the basis, computed
    /// exactly from the rationalized Q.
    pub max_subdiagonal: f64,
}

#[derive(Clone, Debug)]
pub enum Triangularization {
    /// g with Ad g(S) upper-triangular, exactly.
    Exact(GroupElement),
    /// Irrational real eigenvalues: a verified float witness.
    Float(FloatWitness),
    /// Some element has non-real spectrum.
    NotReal,
}

impl Triangularization {
    pub fn exact(&self) -> Option<&GroupElement> {
        match self {
            Triangularization::Exact(g) => Some(g),
            _ => None,
        }
    }

    pub fn succeeded(&self) -> bool {
        !matches!(self, Triangularization::NotReal)
    }
}

/// Best rational approximations of x (continued-fraction convergents).
fn convergents(x: f64) -> Vec<Rat> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        out.push(Rat::new(h2.clone(), k2.clone()));
        if k2 > BigInt::from(100_000_000i64) {
            break;
        }
        let frac_part = r - a;
        if frac_part.abs() < 1e-12 {
            break;
        }
        r = 1.0 / frac_part;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    out
}

fn to_dmatrix(m: &MatQ) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), &m.to_f64())
}

/// Some rational eigenvalue of m, located from float roots and confirmed exactly.
fn rational_eigenvalue(m: &MatQ) -> Option<Rat> {
    let p = charpoly(m).ok()?;
    if p.eval(&Rat::zero()).is_zero() {
        return Some(Rat::zero());
    }
    // Roots of the square-free part are simple, so their float estimates are
    // accurate enough for the convergents to hit them.
    let q = p.square_free().monic();
    let d = q.degree().filter(|d| *d > 0)?;
    let mut companion = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        companion[(i, i - 1)] = 1.0;
    }
    for (i, c) in q.coeffs().iter().take(d).enumerate() {
        companion[(i, d - 1)] = -to_f64(c);
    }
    let eig = companion.complex_eigenvalues();
    for z in eig.iter() {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
            continue;
        }
        for c in convergents(z.re) {
            if p.eval(&c).is_zero() {
                return Some(c);
            }
        }
    }
    None
}

/// Common eigenvector of commuting matrices, when every step finds a rational eigenvalue.
fn common_eigenvector(ms: &[MatQ]) -> Option<VecQ> {
    let n = ms[0].rows();
    let mut basis = MatQ::identity(n);
    for m in ms {
        let bt = basis.transpose();
        let gram_inv = (&bt * &basis).inverse()?;
        let restricted = &(&gram_inv * &bt) * &(m * &basis);
        let lambda = rational_eigenvalue(&restricted)?;
        let shifted = &restricted - &MatQ::identity(restricted.rows()).scale(&lambda);
        let ker = kernel(&shifted);
        if ker.is_empty() {
            return None;
        }
        let k = MatQ::from_rows(&ker).ok()?.transpose();
        basis = &basis * &k;
    }
    Some(basis.col(0))
}

/// P with P⁻¹ M P upper-triangular for all M (exact, rational path).
fn triangularizing_basis(ms: &[MatQ]) -> Option<MatQ> {
    let n = ms[0].rows();
    if n == 1 {
        return Some(MatQ::identity(1));
    }
    let w = common_eigenvector(ms)?;
    let mut cols = vec![w.clone()];
    for j in 0..n {
        if cols.len() == n {
            break;
        }
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        let mut trial = cols.clone();
        trial.push(e.clone());
        if crate::exactlinalg::rank(&MatQ::from_rows(&trial).ok()?) == trial.len() {
            cols.push(e);
        }
    }
    let q = MatQ::from_rows(&cols).ok()?.transpose();
    let qi = q.inverse()?;
    let subs: Vec<MatQ> = ms
        .iter()
        .map(|m| {
            let c = &(&qi * m) * &q;
            let mut s = MatQ::zeros(n - 1, n - 1);
            for i in 1..n {
                for j in 1..n {
                    s.set(i - 1, j - 1, c.get(i, j).clone());
                }
            }
            s
        })
        .collect();
    let p_sub = triangularizing_basis(&subs)?;
    let mut lift = MatQ::identity(n);
    for i in 1..n {
        for j in 1..n {
            lift.set(i, j, p_sub.get(i - 1, j - 1).clone());
        }
    }
    Some(&q * &lift)
}

fn max_subdiagonal(m: &MatQ) -> Rat {
    let mut best = Rat::zero();
    for i in 0..m.rows() {
        for j in 0..i {
            let a = m.get(i, j).abs();
            if a > best {
                best = a;
            }
        }
    }
    best
}

fn float_witness(ms: &[MatQ], seed: u64) -> Option<FloatWitness> {
    let n = ms[0].rows();
    let mut rng = crate::sampling::rng(seed);
    let mut x = DMatrix::<f64>::zeros(n, n);
    for m in ms {
        x += to_dmatrix(m) * rng.gen_range(0.5..1.5);
    }
    let (q, _t) = x.schur().unpack();
    let mut qe = MatQ::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            qe.set(i, j, from_f64(q[(i, j)]).ok()?);
        }
    }
    let qi = qe.inverse()?;
    let worst = ms
        .iter()
        .map(|m| to_f64(&max_subdiagonal(&(&(&qi * m) * &qe))))
        .fold(0.0, f64::max);
    let q_row_major = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| q[(i, j)]).collect();
    Some(FloatWitness { q: q_row_major, max_subdiagonal: worst })
}

/// Common-real-eigenvector recursion on an abelian subspace.
pub fn simultaneous_real_triangularization(s: &SubspaceQ) -> Result<Triangularization> {
    if !is_abelian(s) {
        return Err(Error::NotAbelian);
    }
    let elems = elements_of(s)?;
    let n = rank_of_ambient(s.ambient())?;
    if elems.is_empty() {
        return Ok(Triangularization::Exact(GroupElement::identity(n)));
    }
    if !elems.iter().all(has_real_spectrum) {
        return Ok(Triangularization::NotReal);
    }
    let ms: Vec<MatQ> = elems.iter().map(|e| e.matrix().clone()).collect();
    if let Some(p) = triangularizing_basis(&ms) {
        let det = p.det()?;
        let mut p1 = p.clone();
        for i in 0..n {
            let v = p.get(i, 0) / &det;
            p1.set(i, 0, v);
        }
        let g = GroupElement::new(p1)?.inverse();
        let img = adjoint_subspace(&g, s)?;
        if elements_of(&img)?.iter().all(SlElement::is_upper_triangular) {
            return Ok(Triangularization::Exact(g));
        }
        return Err(Error::Internal("exact triangularization failed verification".into()));
    }
    match float_witness(&ms, 0x5eed) {
        Some(w) if w.max_subdiagonal < 1e-8 => Ok(Triangularization::Float(w)),
        Some(w) => Err(Error::Internal(format!(
            "float triangularization residual {} too large",
            w.max_subdiagonal
        ))),
        None => Err(Error::Internal("float triangularization failed".into())),
    }
}

#[derive(Clone, Debug)]
pub struct AMembership {
    pub subspace: SubspaceQ,
    pub is_abelian: bool,
    pub has_real_spectrum: bool,
    pub borel_witness: Option<GroupElement>,
    pub float_witness: Option<FloatWitness>,
}

pub fn a_membership(s: &SubspaceQ) -> Result<AMembership> {
    let abelian = is_abelian(s);
    let real = elements_of(s)?.iter().all(has_real_spectrum);
    let (exact, float) = if abelian {
        match simultaneous_real_triangularization(s)? {
            Triangularization::Exact(g) => (Some(g), None),
            Triangularization::Float(w) => (None, Some(w)),
            Triangularization::NotReal => (None, None),
        }
    } else {
        (None, None)
    };
    Ok(AMembership {
        subspace: s.clone(),
        is_abelian: abelian,
        has_real_spectrum: real,
        borel_witness: exact,
        float_witness: float,
    })
}

/// dim S = r, S abelian, and S triangularizable over R.
pub fn is_in_a(s: &SubspaceQ, r: usize) -> bool {
    s.dim() == r
        && is_abelian(s)
        && simultaneous_real_triangularization(s).map(|t| t.succeeded()).unwrap_or(false)
}

/// Whether the line R·X of sl2 lies in the closure of the Cartan subspaces:
/// det X ≤ 0.
pub fn sl2_closure_membership(x: &SlElement) -> Result<bool> {
    if x.n() != 2 {
        return Err(Error::UnsupportedRank(x.n()));
    }
    if x.is_zero() {
        return Err(Error::InvalidParameter("zero element spans no line".into()));
    }
    Ok(!x.matrix().det()?.is_positive())
}

/// The line Ad g Ad exp(tU)(R·H) of sl2, with t the sequence index.
pub fn sl2_conjugated_family(g: GroupElement) -> SeqFamily {
    let h = standard_cartan(2);
    let u = SlElement::elementary(2, 1, 2);
    SeqFamily::new("sl2-unipotent-line", Vec::new(), move |t| {
        let e = exp_unipotent(&u.scale(&Rat::from_integer(BigInt::from(t))))?;
        adjoint_subspace(&g.compose(&e), &h)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Sl2LineCase {
    pub conjugator_entry: String,
    pub certified: bool,
    pub final_gap: f64,
    pub limit_det: f64,
    pub distance_to_predicted: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sl2BoundaryReport {
    pub schedule: Vec<u64>,
    pub main_gaps: Vec<f64>,
    pub main_certified: bool,
    pub main_distance_to_nilpotent_line: f64,
    pub constant_family_limit_det: f64,
    pub cases: Vec<Sl2LineCase>,
    pub all_limits_nilpotent: bool,
}

/// det of the unit representative of a float line in sl2 coordinates (E12, H1, E21).
pub fn sl2_line_det(l: &SubspaceF) -> f64 {
    let v = l.representative();
    let (e, h, f) = (v[0], v[1], v[2]);
    -h * h - e * f
}

fn sl2_estimate(g: &GroupElement, schedule: &[u64], tol: f64) -> Result<(LimitEstimate, f64)> {
    let est = limit_estimate(&sl2_conjugated_family(g.clone()), schedule, tol)?;
    let u = span_of(&[SlElement::elementary(2, 1, 2)])?;
    let predicted = adjoint_subspace(g, &u)?;
    let d = est.distance_to(&predicted)?;
    Ok((est, d))
}

/// Certifies Ad exp(tU)(R·H) → R·U and that limits of random lower-unipotent
/// conjugates of that family are nilpotent lines.
pub fn sl2_rank_one_boundary(
    schedule: &[u64],
    tol: f64,
    samples: usize,
    seed: u64,
    det_tol: f64,
) -> Result<Sl2BoundaryReport> {
    let (main, main_d) = sl2_estimate(&GroupElement::identity(2), schedule, tol)?;
    let constant = SubspaceF::from_exact(&standard_cartan(2));
    let mut rng = crate::sampling::rng(seed);
    let mut cases = Vec::with_capacity(samples);
    for _ in 0..samples {
        let s = crate::sampling::nonzero_rational(&mut rng, 10);
        let f = SlElement::elementary(2, 2, 1).scale(&s);
        let g = exp_unipotent(&f)?;
        let (est, d) = sl2_estimate(&g, schedule, tol)?;
        cases.push(Sl2LineCase {
            conjugator_entry: s.to_string(),
            certified: est.certified(),
            final_gap: est.final_gap(),
            limit_det: sl2_line_det(&est.limit),
            distance_to_predicted: d,
        });
    }
    let all = cases.iter().all(|c| c.certified && c.limit_det.abs() < det_tol);
    Ok(Sl2BoundaryReport {
        schedule: schedule.to_vec(),
        main_gaps: main.gaps.clone(),
        main_certified: main.certified(),
        main_distance_to_nilpotent_line: main_d,
        constant_family_limit_det: sl2_line_det(&constant),
        cases,
        all_limits_nilpotent: all,
    })
}

/// (candidate dimension, Cartan-space dimension) for sl_m with p = ⌊m/2⌋.
pub fn lemma34_gap(m: u64) -> Result<(u64, u64)> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("m = {m} < 2")));
    }
    let p = m / 2;
    let q = p * (m - p);
    Ok(((m - 1) * (q + 1 - m) + q, m * (m - 1)))
}

/// Abelian algebra of maps with image in V = span(e₁..e_p) and kernel ⊇ V:
/// the span of E_ij with i ≤ p < j.
pub fn build_xv(m: usize) -> Result<SubspaceQ> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("m = {m} < 2")));
    }
    let p = m / 2;
    let mut elems = Vec::new();
    for i in 1..=p {
        for j in p + 1..=m {
            elems.push(SlElement::elementary(m, i, j));
        }
    }
    span_of(&elems)
}

/// n!·2ⁿ.
pub fn pi1_cardinality(n: u64) -> Result<BigInt> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("n = {n} < 3")));
    }
    let fact = (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    Ok(fact * (BigInt::one() << n as usize))
}

/// Both spectrum tests agree on X: defining representation and adjoint.
pub fn spectrum_tests_agree(x: &SlElement) -> bool {
    let fund = has_real_spectrum(x);
    let ad = is_real_rooted(&charpoly(&crate::liealg::ad_matrix(x)).expect("square")).expect("monic");
    fund == ad
}

pub fn rotation_sl2() -> SlElement {
    SlElement::new(MatQ::from_i64(&[&[0, 1], &[-1, 0]])).expect("trace zero")
}

#[cfg(test)]
mod tests;
