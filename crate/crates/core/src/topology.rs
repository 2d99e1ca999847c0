//! The blown-up ball model C of the space Y of two-dimensional abelian
//! subalgebras of the sl3 Borel: the maps f_γ, g and φ, continuity probes,
//! attaching-map degrees and the cell census.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_integer::Integer;
use num_traits::Signed;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactlinalg::{from_f64, rat, to_f64, Rat};
use crate::grassmann::{distance, SubspaceF, SubspaceQ};
use crate::liealg::{adjoint_subspace, b_family};
use crate::projective::ProjPoint;
use crate::sampling::{self, SuiteRng};
use crate::sl3::{b0_orbit_dim, cartan, l_proj, l_root, root_witness, OrbitLabel3, Sl3Root};

/// z ↦ z′ = sgn(z)√|z|.
pub fn prime(z: f64) -> f64 {
    if z == 0.0 {
        0.0
    } else {
        z.signum() * z.abs().sqrt()
    }
}

/// z′ ↦ z = sgn(z′)z′².
pub fn unprime(zp: f64) -> f64 {
    zp * zp.abs()
}

fn unprime_exact(zp: &Rat) -> Rat {
    let sq = zp * zp;
    if zp.is_negative() {
        -sq
    } else {
        sq
    }
}

fn exact(v: f64) -> Result<Rat> {
    from_f64(v)
}

fn unit2(u: f64, v: f64) -> Result<(f64, f64)> {
    let n = u.hypot(v);
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::InvalidParameter("circle point needs a nonzero finite vector".into()));
    }
    Ok((u / n, v / n))
}

fn unit3(x: f64, y: f64, z: f64) -> Result<(f64, f64, f64)> {
    let n = (x * x + y * y + z * z).sqrt();
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::InvalidParameter("sphere point needs a nonzero finite vector".into()));
    }
    Ok((x / n, y / n, z / n))
}

/// A point of C. Circle and sphere points are positive-homogeneous classes
/// stored as unit vectors.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "stratum", rename_all = "kebab-case")]
pub enum BlownBallPoint {
    Interior { x: f64, y: f64, zp: f64 },
    /// (y, z′) for α, (x, z′) for β, (x, y) for α+β.
    Disk { root: Sl3Root, u: f64, v: f64 },
    Circle { root: Sl3Root, u: f64, v: f64 },
    Sphere { x: f64, y: f64, zp: f64 },
}

impl BlownBallPoint {
    pub fn interior(x: f64, y: f64, zp: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && zp.is_finite()) {
            return Err(Error::InvalidParameter("interior coordinates must be finite".into()));
        }
        Ok(BlownBallPoint::Interior { x, y, zp })
    }

    pub fn disk(root: Sl3Root, u: f64, v: f64) -> Result<Self> {
        if !(u.is_finite() && v.is_finite()) {
            return Err(Error::InvalidParameter("disk coordinates must be finite".into()));
        }
        Ok(BlownBallPoint::Disk { root, u, v })
    }

    pub fn circle(root: Sl3Root, u: f64, v: f64) -> Result<Self> {
        let (u, v) = unit2(u, v)?;
        Ok(BlownBallPoint::Circle { root, u, v })
    }

    /// A point of the unit sphere. The six poles are accepted here, as inputs
    /// of the f-maps, but lie outside C₀.
    pub fn sphere(x: f64, y: f64, zp: f64) -> Result<Self> {
        let (x, y, zp) = unit3(x, y, zp)?;
        Ok(BlownBallPoint::Sphere { x, y, zp })
    }

    pub fn is_pole(&self) -> bool {
        match *self {
            BlownBallPoint::Sphere { x, y, zp } => [x, y, zp].iter().filter(|c| **c == 0.0).count() == 2,
            _ => false,
        }
    }

    pub fn in_c0(&self) -> bool {
        matches!(self, BlownBallPoint::Circle { .. }) || matches!(self, BlownBallPoint::Sphere { .. }) && !self.is_pole()
    }

    pub fn stratum(&self) -> String {
        match self {
            BlownBallPoint::Interior { .. } => "interior".into(),
            BlownBallPoint::Disk { root, .. } => format!("disk-{}", root.name()),
            BlownBallPoint::Circle { root, .. } => format!("circle-{}", root.name()),
            BlownBallPoint::Sphere { .. } => "sphere".into(),
        }
    }
}

/// Image of f_γ: a point of the open disk or of its boundary circle.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "part", rename_all = "kebab-case")]
pub enum DiskImage {
    Open { u: f64, v: f64 },
    Boundary { u: f64, v: f64 },
}

/// f_α(x, y, z′) = (y, (z + xy/2)′), f_β = (x, (z − xy/2)′), f_{α+β} = (x, y);
/// the same formulas positively homogeneous on the sphere.
pub fn f_map(root: Sl3Root, p: &BlownBallPoint) -> Result<DiskImage> {
    let formula = |x: f64, y: f64, zp: f64| -> (f64, f64) {
        let z = unprime(zp);
        match root {
            Sl3Root::Alpha => (y, prime(z + x * y / 2.0)),
            Sl3Root::Beta => (x, prime(z - x * y / 2.0)),
            Sl3Root::AlphaBeta => (x, y),
        }
    };
    match *p {
        BlownBallPoint::Interior { x, y, zp } => {
            let (u, v) = formula(x, y, zp);
            Ok(DiskImage::Open { u, v })
        }
        BlownBallPoint::Sphere { x, y, zp } => {
            let (u, v) = formula(x, y, zp);
            let (u, v) = unit2(u, v).map_err(|_| Error::OutsideDomain(format!("pole excluded from f_{}", root.name())))?;
            Ok(DiskImage::Boundary { u, v })
        }
        _ => Err(Error::OutsideDomain(format!("f_{} is defined on the ball only", root.name()))),
    }
}

/// A point of P¹(R) as a unit vector with canonical sign.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct P1 {
    pub a: f64,
    pub b: f64,
}

impl P1 {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let (mut a, mut b) = unit2(a, b)?;
        if a < 0.0 || (a == 0.0 && b < 0.0) {
            a = -a;
            b = -b;
        }
        Ok(P1 { a: a + 0.0, b: b + 0.0 })
    }

    pub fn from_proj(p: &ProjPoint) -> Result<Self> {
        let r = p.rats();
        P1::new(to_f64(&r[0]), to_f64(&r[1]))
    }

    /// Twice the angle of the line, in [0, 2π).
    pub fn double_angle(&self) -> f64 {
        (2.0 * self.b.atan2(self.a)).rem_euclid(2.0 * PI)
    }
}

/// Arc distance on the double-angle circle.
pub fn p1_distance(p: &P1, q: &P1) -> f64 {
    let d = (p.double_angle() - q.double_angle()).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

fn g_xyz(x: &Rat, y: &Rat, z: &Rat) -> Result<ProjPoint> {
    let half_xy = x * y / rat(2);
    ProjPoint::new(&[x * (z + &half_xy), y * (&half_xy - z)])
}

/// g on C′ and its extensions g_α, g_β, g_{α+β} to the three circles, exactly.
pub fn g_map_exact(p: &BlownBallPoint) -> Result<ProjPoint> {
    match *p {
        BlownBallPoint::Sphere { x, y, zp } => {
            if p.is_pole() {
                return Err(Error::OutsideDomain("the poles of the sphere are blown up".into()));
            }
            let (x, y, zp) = (exact(x)?, exact(y)?, exact(zp)?);
            g_xyz(&x, &y, &unprime_exact(&zp))
        }
        BlownBallPoint::Circle { root, u, v } => {
            let (u, v) = (exact(u)?, exact(v)?);
            match root {
                Sl3Root::Alpha => ProjPoint::new(&[unprime_exact(&v), &u * &u]),
                Sl3Root::Beta => ProjPoint::new(&[-(&u * &u), unprime_exact(&v)]),
                Sl3Root::AlphaBeta => ProjPoint::new(&[-u, v]),
            }
        }
        _ => Err(Error::OutsideDomain("g is defined on C0 only".into())),
    }
}

pub fn g_map(p: &BlownBallPoint) -> Result<P1> {
    P1::from_proj(&g_map_exact(p)?)
}

fn phi_xyz(x: &Rat, y: &Rat, z: &Rat) -> Result<SubspaceQ> {
    adjoint_subspace(&b_family(x, y, z), &cartan())
}

/// φ: Ad b(x, y, z)a on the interior, Ad b(·)l_γ on the open disks, and l_{g(p)} on C₀.
pub fn phi(p: &BlownBallPoint) -> Result<SubspaceQ> {
    match *p {
        BlownBallPoint::Interior { x, y, zp } => phi_xyz(&exact(x)?, &exact(y)?, &unprime_exact(&exact(zp)?)),
        BlownBallPoint::Disk { root, u, v } => {
            let (u, v) = (exact(u)?, exact(v)?);
            let (p, q) = match root {
                Sl3Root::AlphaBeta => (u, v),
                _ => (u, unprime_exact(&v)),
            };
            adjoint_subspace(&root_witness(root, &p, &q), &l_root(root))
        }
        BlownBallPoint::Circle { .. } | BlownBallPoint::Sphere { .. } => l_proj(&g_map_exact(p)?),
    }
}

/// A point of the ball in (x, y, z) coordinates, used for approach sequences.
#[derive(Clone, Debug)]
struct Xyz {
    x: Rat,
    y: Rat,
    z: Rat,
}

impl Xyz {
    fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Ok(Xyz { x: exact(x)?, y: exact(y)?, z: exact(z)? })
    }

    fn phi(&self) -> Result<SubspaceQ> {
        phi_xyz(&self.x, &self.y, &self.z)
    }

    /// g of the sphere point in the direction of this interior point.
    fn g(&self) -> Result<P1> {
        P1::from_proj(&g_xyz(&self.x, &self.y, &self.z)?)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub target: BlownBallPoint,
    pub radii: Vec<f64>,
    /// Max Grassmannian distance from φ(target) over the samples at each radius.
    pub phi_deviation: Vec<f64>,
    /// Max P¹ distance from g(target), for targets in C₀.
    pub g_deviation: Option<Vec<f64>>,
    pub passed: bool,
}

fn shrinking(devs: &[f64], tol: f64) -> bool {
    devs.windows(2).all(|w| w[1] <= w[0] || w[1] < tol * 1e-3) && devs.last().is_some_and(|d| *d < tol)
}

fn unit_dir(rng: &mut SuiteRng, k: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 0.1 {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

fn sign(rng: &mut SuiteRng) -> f64 {
    if rng.gen_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

/// Interior approach point at radius r towards the target, along the approach
/// families that converge to it in C.
fn approach(target: &BlownBallPoint, r: f64, rng: &mut SuiteRng) -> Result<Xyz> {
    let d = unit_dir(rng, 3);
    match *target {
        BlownBallPoint::Interior { x, y, zp } => {
            Xyz::new(x + r * d[0], y + r * d[1], unprime(zp + r * d[2]))
        }
        BlownBallPoint::Disk { root, u, v } => {
            let big = sign(rng) / r;
            let (a, b) = (u + r * d[0], v + r * d[1]);
            match root {
                Sl3Root::Alpha => {
                    // x → ∞ with (y, z + xy/2) → (y, z).
                    let (y, w) = (exact(a)?, exact(unprime(b))?);
                    let x = exact(big)?;
                    let z = &w - &x * &y / rat(2);
                    Ok(Xyz { x, y, z })
                }
                Sl3Root::Beta => {
                    let (x, w) = (exact(a)?, exact(unprime(b))?);
                    let y = exact(big)?;
                    let z = &w + &x * &y / rat(2);
                    Ok(Xyz { x, y, z })
                }
                Sl3Root::AlphaBeta => Xyz::new(a, b, big / r),
            }
        }
        BlownBallPoint::Circle { root, u, v } => {
            let big = 1.0 / r;
            let (a, b) = (big * (u + r * d[0]), big * (v + r * d[1]));
            let far = sign(rng) / (r * r * r);
            match root {
                Sl3Root::Alpha => {
                    let (y, w) = (exact(a)?, exact(unprime(b))?);
                    let x = exact(far)?;
                    let z = &w - &x * &y / rat(2);
                    Ok(Xyz { x, y, z })
                }
                Sl3Root::Beta => {
                    let (x, w) = (exact(a)?, exact(unprime(b))?);
                    let y = exact(far)?;
                    let z = &w + &x * &y / rat(2);
                    Ok(Xyz { x, y, z })
                }
                Sl3Root::AlphaBeta => Xyz::new(a, b, sign(rng) / (r * r * r * r)),
            }
        }
        BlownBallPoint::Sphere { x, y, zp } => {
            let l = 1.0 / r;
            Xyz::new(l * (x + r * d[0]), l * (y + r * d[1]), unprime(l * (zp + r * d[2])))
        }
    }
}

/// Samples `k` approach points at each radius and reports how far φ (and g,
/// on C₀) move from their values at the target.
pub fn continuity_probe(target: &BlownBallPoint, k: usize, radii: &[f64], tol: f64, seed: u64) -> Result<ProbeReport> {
    if k < 10 {
        return Err(Error::InvalidParameter("continuity probes need at least 10 samples".into()));
    }
    let mut rng = sampling::rng(seed);
    let at = SubspaceF::from_exact(&phi(target)?);
    let g_at = if target.in_c0() { Some(g_map(target)?) } else { None };
    let mut phi_dev = Vec::new();
    let mut g_dev = Vec::new();
    for &r in radii {
        let (mut worst, mut worst_g) = (0.0f64, 0.0f64);
        for _ in 0..k {
            let p = approach(target, r, &mut rng)?;
            worst = worst.max(distance(&SubspaceF::from_exact(&p.phi()?), &at)?);
            if let Some(g0) = &g_at {
                worst_g = worst_g.max(p1_distance(&p.g()?, g0));
            }
        }
        phi_dev.push(worst);
        g_dev.push(worst_g);
    }
    let g_deviation = g_at.map(|_| g_dev);
    let passed = shrinking(&phi_dev, tol) && g_deviation.as_ref().is_none_or(|g| shrinking(g, tol));
    Ok(ProbeReport { target: target.clone(), radii: radii.to_vec(), phi_deviation: phi_dev, g_deviation, passed })
}

/// Stratified probe targets: 6 interior, 3 per open disk, 3 per circle, 6 on the sphere.
pub fn probe_targets(seed: u64) -> Result<Vec<BlownBallPoint>> {
    let mut rng = sampling::rng(seed);
    let mut c = || rng.gen_range(-2.0..2.0f64);
    let mut out = Vec::new();
    for _ in 0..6 {
        out.push(BlownBallPoint::interior(c(), c(), c())?);
    }
    for root in Sl3Root::ALL {
        out.push(BlownBallPoint::disk(root, 0.0, 0.0)?);
        for _ in 0..2 {
            out.push(BlownBallPoint::disk(root, c(), c())?);
        }
    }
    for root in Sl3Root::ALL {
        out.push(BlownBallPoint::circle(root, 1.0, 0.0)?);
        for _ in 0..2 {
            out.push(BlownBallPoint::circle(root, c(), c())?);
        }
    }
    out.push(BlownBallPoint::sphere(1.0, 1.0, 1.0)?);
    for _ in 0..5 {
        out.push(BlownBallPoint::sphere(c(), c(), c())?);
    }
    Ok(out)
}

/// Interior points λp escaping to the sphere point p: distances of φ(λp)
/// from l_{g(p)} at each λ.
pub fn g_compatibility(p: &BlownBallPoint, lambdas: &[f64]) -> Result<Vec<f64>> {
    let BlownBallPoint::Sphere { x, y, zp } = *p else {
        return Err(Error::OutsideDomain("g-compatibility needs a point of C'".into()));
    };
    if p.is_pole() {
        return Err(Error::OutsideDomain("g-compatibility needs a point of C'".into()));
    }
    let target = SubspaceF::from_exact(&phi(p)?);
    lambdas
        .iter()
        .map(|&l| {
            let q = Xyz::new(l * x, l * y, unprime(l * zp))?;
            distance(&SubspaceF::from_exact(&q.phi()?), &target)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CircleMap {
    #[serde(rename = "g_alpha")]
    GAlpha,
    #[serde(rename = "g_beta")]
    GBeta,
    #[serde(rename = "g_alpha+beta")]
    GAlphaBeta,
}

impl CircleMap {
    pub const ALL: [CircleMap; 3] = [CircleMap::GAlpha, CircleMap::GBeta, CircleMap::GAlphaBeta];

    pub fn root(self) -> Sl3Root {
        match self {
            CircleMap::GAlpha => Sl3Root::Alpha,
            CircleMap::GBeta => Sl3Root::Beta,
            CircleMap::GAlphaBeta => Sl3Root::AlphaBeta,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CircleMap::GAlpha => "g_alpha",
            CircleMap::GBeta => "g_beta",
            CircleMap::GAlphaBeta => "g_alpha+beta",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CircleMapSample {
    pub map: CircleMap,
    /// (input circle angle, output double angle of the P¹ point).
    pub samples: Vec<(f64, f64)>,
}

pub fn sample_circle_map(map: CircleMap, k: usize) -> Result<CircleMapSample> {
    if k < 64 {
        return Err(Error::InvalidParameter("circle maps need at least 64 samples".into()));
    }
    let samples = (0..k)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / k as f64;
            let p = BlownBallPoint::circle(map.root(), t.cos(), t.sin())?;
            Ok((t, g_map(&p)?.double_angle()))
        })
        .collect::<Result<_>>()?;
    Ok(CircleMapSample { map, samples })
}

/// Winding number of a closed sequence of angles on the circle.
pub fn winding_number(angles: &[f64]) -> Result<i64> {
    let mut total = 0.0;
    for i in 0..angles.len() {
        let a = angles[i];
        let b = angles[(i + 1) % angles.len()];
        let mut d = (b - a).rem_euclid(2.0 * PI);
        if d > PI {
            d -= 2.0 * PI;
        }
        if d.abs() >= PI / 2.0 {
            return Err(Error::Aliasing(d.abs()));
        }
        total += d;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// |degree| of the attaching map S¹_γ → P¹(R).
pub fn circle_degree(map: CircleMap, k: usize) -> Result<i64> {
    let s = sample_circle_map(map, k)?;
    let angles: Vec<f64> = s.samples.iter().map(|(_, a)| *a).collect();
    Ok(winding_number(&angles)?.abs())
}

/// Number of B₀-orbits of each dimension.
pub fn cell_census() -> Result<BTreeMap<usize, usize>> {
    let mut out = BTreeMap::new();
    for l in OrbitLabel3::ALL {
        *out.entry(b0_orbit_dim(&l.representative())?).or_insert(0) += 1;
    }
    Ok(out)
}

/// Order of the fundamental group of P¹ with 2-cells attached along maps of
/// the given degrees; None when infinite.
pub fn pi1_from_degrees(degrees: &[i64]) -> Option<u64> {
    let g = degrees.iter().filter(|d| **d != 0).fold(0i64, |acc, d| acc.gcd(d));
    if g == 0 {
        None
    } else {
        Some(g.unsigned_abs())
    }
}

/// A random point of C in the given stratum index (0 interior, 1–3 disks,
/// 4–6 circles, 7 sphere).
pub fn random_point(rng: &mut impl Rng, stratum: usize) -> Result<BlownBallPoint> {
    let mut c = || rng.gen_range(-3.0..3.0f64);
    match stratum {
        0 => BlownBallPoint::interior(c(), c(), c()),
        1..=3 => BlownBallPoint::disk(Sl3Root::ALL[stratum - 1], c(), c()),
        4..=6 => BlownBallPoint::circle(Sl3Root::ALL[stratum - 4], c(), c()),
        7 => BlownBallPoint::sphere(c(), c(), c()),
        _ => Err(Error::InvalidParameter(format!("stratum {stratum}"))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectivityReport {
    pub pairs: usize,
    /// Pairs of C₀ points with equal g-images (identified in the quotient).
    pub identified: usize,
    pub min_distance: f64,
    pub passed: bool,
}

/// Distinct random points of C map to distinct subalgebras, except C₀ points
/// with equal g-images.
pub fn injectivity_sample(pairs: usize, threshold: f64, seed: u64) -> Result<InjectivityReport> {
    let mut rng = sampling::rng(seed);
    let mut identified = 0;
    let mut min_distance = f64::INFINITY;
    for _ in 0..pairs {
        let (s1, s2) = (rng.gen_range(0..8), rng.gen_range(0..8));
        let p = random_point(&mut rng, s1)?;
        let q = random_point(&mut rng, s2)?;
        if p.in_c0() && q.in_c0() && p1_distance(&g_map(&p)?, &g_map(&q)?) < 1e-9 {
            identified += 1;
            continue;
        }
        let d = distance(&SubspaceF::from_exact(&phi(&p)?), &SubspaceF::from_exact(&phi(&q)?))?;
        min_distance = min_distance.min(d);
    }
    Ok(InjectivityReport { pairs, identified, min_distance, passed: min_distance > threshold })
}

/// Point cloud of C tagged by stratum with float Plücker coordinates of φ,
/// preceded by the skeleton of blown-up poles and disk pairs.
pub fn figure_blownball(samples: usize, seed: u64) -> Result<Value> {
    let poles: Vec<Value> = [
        ("alpha", [1, 0, 0]),
        ("alpha", [-1, 0, 0]),
        ("beta", [0, 1, 0]),
        ("beta", [0, -1, 0]),
        ("alpha+beta", [0, 0, 1]),
        ("alpha+beta", [0, 0, -1]),
    ]
    .iter()
    .map(|(r, p)| json!({"disk": r, "pole": p}))
    .collect();
    let pairs: Vec<Value> = Sl3Root::ALL.iter().map(|r| json!({"disk": r.name(), "poles": 2})).collect();
    let mut rng = sampling::rng(seed);
    let mut points = Vec::with_capacity(samples);
    for _ in 0..samples {
        let s = rng.gen_range(0..8);
        let p = random_point(&mut rng, s)?;
        let plucker = phi(&p)?.plucker()?.to_unit_f64();
        points.push(json!({"stratum": p.stratum(), "coords": p, "phi_plucker_float": plucker}));
    }
    Ok(json!({"figure": "blownball", "seed": seed, "poles": poles, "disk_pairs": pairs, "points": points}))
}

/// Cells of Y with their dimensions and the attaching degrees of the 2-cells.
pub fn figure_cw(k: usize) -> Result<Value> {
    let cells: Vec<Value> = OrbitLabel3::ALL
        .iter()
        .map(|l| Ok(json!({"cell": l.name(), "dim": b0_orbit_dim(&l.representative())?})))
        .collect::<Result<_>>()?;
    let census: BTreeMap<String, usize> = cell_census()?.into_iter().map(|(d, c)| (d.to_string(), c)).collect();
    let degrees: Vec<i64> = CircleMap::ALL.iter().map(|m| circle_degree(*m, k)).collect::<Result<_>>()?;
    Ok(json!({
        "figure": "cw",
        "cells": cells,
        "census": census,
        "attaching_degrees": degrees,
        "pi1_order": pi1_from_degrees(&degrees),
    }))
}
