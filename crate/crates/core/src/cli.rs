//! Command implementations behind the `chabauty` binary. Each command returns
//! one JSON document and an exit code (0 success, 1 verification failure,
//! 2 usage or input error).

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactlinalg::{parse_rat, Rat};
use crate::grassmann::{limit_estimate, SeqFamily, SubspaceQ};
use crate::liealg::{span_of, RootDatum, SlElement};
use crate::projective::ProjPoint;
use crate::seqs::MonomialSum;
use crate::sl3::{self, OrbitLimitData, OrbitRep};
use crate::sl4::{self, ClassRes4};
use crate::suites::{self, SuiteConfig};
use crate::topology;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub json: Value,
    pub exit: u8,
}

impl Output {
    fn ok(json: Value) -> Self {
        Output { json, exit: EXIT_OK }
    }

    fn verdict(json: Value, pass: bool) -> Self {
        Output { json, exit: if pass { EXIT_OK } else { EXIT_FAIL } }
    }

    /// Diagnostic for a violated precondition or bad input.
    pub fn usage(err: &Error) -> Self {
        Output { json: json!({"error": {"kind": error_kind(err), "message": err.to_string()}}), exit: EXIT_USAGE }
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("json") + "\n"
    }
}

pub fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::NotAbelian => "not-abelian",
        Error::WrongDimension { .. } => "wrong-dimension",
        Error::NotInBorel => "not-in-borel",
        Error::Parse(_) => "parse-error",
        Error::UnknownName(_) => "unknown-name",
        Error::SizeMismatch(_) => "size-mismatch",
        Error::UnsupportedRank(_) => "unsupported-rank",
        Error::OutsideDomain(_) => "outside-domain",
        _ => "invalid-input",
    }
}

fn run(f: impl FnOnce() -> Result<Output>) -> Output {
    f().unwrap_or_else(|e| Output::usage(&e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algebra {
    Sl3,
    Sl4,
}

impl Algebra {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "sl3" => Ok(Algebra::Sl3),
            "sl4" => Ok(Algebra::Sl4),
            _ => Err(Error::UnknownName(format!("algebra '{s}' (expected sl3 or sl4)"))),
        }
    }

    fn n(self) -> usize {
        match self {
            Algebra::Sl3 => 3,
            Algebra::Sl4 => 4,
        }
    }
}

fn named_term(d: &RootDatum, key: &str) -> Result<SlElement> {
    d.named_vector(key)
}

/// Reads a subspace from either {"ambient", "r"?, "basis"} or
/// {"algebra": "sl3" | "sl4", "span": [...]}, where each span entry is a
/// named vector ("H_alpha", "U_alpha+beta", ...) or an object mapping names
/// to rational coefficients.
pub fn parse_subspace(v: &Value) -> Result<SubspaceQ> {
    if v.get("basis").is_some() {
        return SubspaceQ::from_json(v);
    }
    let alg = v
        .get("algebra")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("expected a 'basis' or an 'algebra' with a 'span'".into()))?;
    let d = RootDatum::new(Algebra::parse(alg)?.n())?;
    let span = v.get("span").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing array field 'span'".into()))?;
    let mut elems = Vec::with_capacity(span.len());
    for entry in span {
        let x = match entry {
            Value::String(key) => named_term(&d, key)?,
            Value::Object(map) => {
                let mut acc = SlElement::zero(d.n());
                for (key, c) in map {
                    let c = crate::exactlinalg::rat_from_json(c)?;
                    acc = acc.add(&named_term(&d, key)?.scale(&c));
                }
                acc
            }
            _ => return Err(Error::Parse("span entries must be names or objects".into())),
        };
        elems.push(x);
    }
    if elems.is_empty() {
        return Err(Error::Parse("empty span".into()));
    }
    let s = span_of(&elems)?;
    if let Some(r) = v.get("r").and_then(Value::as_u64) {
        if r as usize != s.dim() {
            return Err(Error::WrongDimension { expected: r as usize, found: s.dim() });
        }
    }
    Ok(s)
}

pub fn parse_subspace_str(text: &str) -> Result<SubspaceQ> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    parse_subspace(&v)
}

fn algebra_of(s: &SubspaceQ) -> Result<Algebra> {
    match s.ambient() {
        8 => Ok(Algebra::Sl3),
        15 => Ok(Algebra::Sl4),
        d => Err(Error::SizeMismatch(format!("ambient dimension {d} is neither 8 (sl3) nor 15 (sl4)"))),
    }
}

pub fn cmd_classify(algebra: Option<&str>, input: &str) -> Output {
    run(|| {
        let s = parse_subspace_str(input)?;
        let found = algebra_of(&s)?;
        if let Some(a) = algebra {
            let a = Algebra::parse(a)?;
            if a != found {
                return Err(Error::SizeMismatch(format!("subspace has ambient dimension {} but --algebra is {a:?}", s.ambient())));
            }
        }
        let out = match found {
            Algebra::Sl3 => {
                let c = sl3::classify_y(&s)?;
                let mut j = c.to_json();
                j["algebra"] = json!("sl3");
                j
            }
            Algebra::Sl4 => {
                let c = sl4::classify_b4(&s)?;
                let mut j = c.to_json();
                j["algebra"] = json!("sl4");
                j["maximal"] = json!(c.is_maximal_type());
                j
            }
        };
        Ok(Output::ok(out))
    })
}

pub fn cmd_plucker(input: &str) -> Output {
    run(|| {
        let s = parse_subspace_str(input)?;
        let p = s.plucker()?;
        Ok(Output::ok(json!({
            "subspace": s.to_json(),
            "plucker": p.to_json(),
            "plucker_float": p.to_unit_f64(),
        })))
    })
}

/// Parses "key=value" parameters.
pub fn parse_params(params: &[String]) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for p in params {
        let (k, v) = p.split_once('=').ok_or_else(|| Error::Parse(format!("parameter '{p}' is not key=value")))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(Error::Parse(format!("parameter '{k}' given twice")));
        }
    }
    Ok(out)
}

struct Params(BTreeMap<String, String>);

impl Params {
    fn get(&self, k: &str) -> Result<&str> {
        self.0.get(k).map(String::as_str).ok_or_else(|| Error::InvalidParameter(format!("missing parameter '{k}'")))
    }

    fn seq(&self, k: &str) -> Result<MonomialSum> {
        MonomialSum::parse(self.get(k)?)
    }

    fn seq_or_zero(&self, k: &str) -> Result<MonomialSum> {
        self.0.get(k).map(|s| MonomialSum::parse(s)).unwrap_or_else(|| Ok(MonomialSum::zero()))
    }

    fn rat(&self, k: &str) -> Result<Rat> {
        parse_rat(self.get(k)?)
    }

    fn rat_or_zero(&self, k: &str) -> Result<Rat> {
        self.0.get(k).map(|s| parse_rat(s)).unwrap_or_else(|| Ok(Rat::default()))
    }

    fn point(&self, k: &str, len: usize) -> Result<ProjPoint> {
        let xs: Vec<Rat> = self.get(k)?.split(':').map(parse_rat).collect::<Result<_>>()?;
        if xs.len() != len {
            return Err(Error::InvalidParameter(format!("'{k}' needs {len} homogeneous coordinates")));
        }
        ProjPoint::new(&xs)
    }

    fn check_only(&self, allowed: &[&str]) -> Result<()> {
        match self.0.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::InvalidParameter(format!("unexpected parameter '{k}'"))),
            None => Ok(()),
        }
    }
}

fn orbit_rep(s: &str) -> Result<OrbitRep> {
    Ok(match s {
        "l11" | "l[1:1]" => OrbitRep::L11,
        "l1m1" | "l[1:-1]" => OrbitRep::L1m1,
        "alpha" | "l_alpha" => OrbitRep::LAlpha,
        "beta" | "l_beta" => OrbitRep::LBeta,
        "alpha+beta" | "l_alpha+beta" => OrbitRep::LAlphaBeta,
        _ => return Err(Error::UnknownName(format!("representative '{s}'"))),
    })
}

fn thm62_type(tag: &str, p: &Params) -> Result<ClassRes4> {
    let id = crate::liealg::GroupElement::identity(4);
    let tag = sl4::parse_tag(tag)?;
    Ok(match tag {
        "T1" => ClassRes4::T1 { b: id },
        "T2" => {
            let delta = RootDatum::new(4)?.simple_index(p.get("delta")?)?;
            ClassRes4::T2 { delta, b: id }
        }
        "T3" => ClassRes4::T3 { point: p.point("point", 2)?, b: id },
        "T4" => ClassRes4::T4 { b: id },
        "T5" => ClassRes4::T5 { point: p.point("point", 2)?, b: id },
        "T6" => ClassRes4::T6 { point: p.point("point", 3)?, s: p.rat_or_zero("s")? },
        "T7" => ClassRes4::T7 { y: p.rat("y")?, t: p.rat("t")? },
        "T8" => ClassRes4::T8 { y: p.rat("y")?, t: p.rat("t")? },
        "T9" => ClassRes4::T9 { point: p.point("point", 4)? },
        _ => ClassRes4::T10 { x: p.rat("x")?, y: p.rat("y")?, s: p.rat_or_zero("s")? },
    })
}

/// The named family with its predicted limit, when one is known.
pub fn limit_family(name: &str, params: &[String], constant: Option<SubspaceQ>) -> Result<(SeqFamily, Option<SubspaceQ>)> {
    let p = Params(parse_params(params)?);
    match name {
        "lemma53" => {
            p.check_only(&["x", "y", "z"])?;
            let (x, y, z) = (p.seq_or_zero("x")?, p.seq_or_zero("y")?, p.seq_or_zero("z")?);
            let predicted = sl3::detect_cartan_case(&x, &y, &z).and_then(|c| sl3::predicted_limit_cartan(&c)).ok();
            Ok((sl3::cartan_family(x, y, z), predicted))
        }
        "lemma57" => {
            p.check_only(&["rep", "p", "q"])?;
            let rep = orbit_rep(p.get("rep")?)?;
            let (a, b) = (p.seq("p")?, p.seq_or_zero("q")?);
            let data = match rep {
                OrbitRep::L11 | OrbitRep::L1m1 => {
                    if a.diverges() {
                        Some(OrbitLimitData::Lambda { to_infinity: true })
                    } else if a.limit().is_some_and(|l| l == Rat::default()) {
                        Some(OrbitLimitData::Lambda { to_infinity: false })
                    } else {
                        None
                    }
                }
                _ => sl3::orbit_ratio_limit(rep, &a, &b).ok().map(OrbitLimitData::Ratio),
            };
            let predicted = data.and_then(|d| sl3::predicted_limit_orbit(rep, &d).ok());
            Ok((sl3::orbit_family(rep, a, b), predicted))
        }
        "sl2" => {
            p.check_only(&[])?;
            let u = span_of(&[SlElement::elementary(2, 1, 2)])?;
            Ok((crate::chabauty::sl2_conjugated_family(crate::liealg::GroupElement::identity(2)), Some(u)))
        }
        "constant" => {
            p.check_only(&[])?;
            let s = constant.unwrap_or_else(sl3::cartan);
            Ok((SeqFamily::constant("constant", s.clone()), Some(s)))
        }
        _ => {
            let tag = name
                .strip_prefix("thm62-")
                .ok_or_else(|| Error::UnknownName(format!("family '{name}'")))?;
            let res = thm62_type(tag, &p)?;
            p.check_only(&["delta", "point", "s", "x", "y", "t"])?;
            let target = res.reconstruct()?;
            Ok((sl4::thm62_sequence(&res), Some(target)))
        }
    }
}

pub const FAMILIES: [&str; 5] = ["lemma53", "lemma57", "thm62-T1..T10", "sl2", "constant"];

pub fn cmd_limit(name: &str, params: &[String], schedule: &[u64], tol: f64, constant: Option<&str>) -> Output {
    run(|| {
        let constant = constant.map(parse_subspace_str).transpose()?;
        let (family, predicted) = limit_family(name, params, constant)?;
        let est = limit_estimate(&family, schedule, tol)?;
        let matched = match &predicted {
            Some(s) => {
                let d = est.distance_to(s)?;
                Some(json!({"distance": d, "match": d < tol, "predicted": s.to_json()}))
            }
            None => None,
        };
        let pass = est.certified() && matched.as_ref().is_none_or(|m| m["match"] == json!(true));
        Ok(Output::verdict(
            json!({
                "family": name,
                "sequence": family.name(),
                "params": params,
                "schedule": est.schedule,
                "tol": tol,
                "gaps": est.gaps,
                "certified": est.certified(),
                "certificate": est.certificate,
                "limit_plucker_float": est.last_exact.plucker()?.to_unit_f64(),
                "predicted_match": matched,
            }),
            pass,
        ))
    })
}

pub fn cmd_verify(suite: &str, seed: u64, tol: Option<f64>, tag: Option<&str>) -> Output {
    run(|| {
        let cfg = SuiteConfig { seed, tol, tag: tag.map(str::to_string) };
        let r = suites::run_suite(suite, &cfg)?;
        Ok(Output::verdict(r.to_json(), r.all_pass))
    })
}

/// Figure data; when `path` is given the document is written there and a
/// short receipt is returned instead.
pub fn cmd_emit_figure(which: &str, samples: usize, seed: u64, path: Option<&str>) -> Output {
    run(|| {
        let doc = match which {
            "blownball" => topology::figure_blownball(samples, seed)?,
            "cw" => topology::figure_cw(512)?,
            _ => return Err(Error::UnknownName(format!("figure '{which}' (expected blownball or cw)"))),
        };
        match path {
            None => Ok(Output::ok(doc)),
            Some(p) => {
                let text = serde_json::to_string_pretty(&doc).expect("json") + "\n";
                std::fs::write(p, text).map_err(|e| Error::InvalidParameter(format!("cannot write {p}: {e}")))?;
                Ok(Output::ok(json!({"figure": which, "written": p, "seed": seed})))
            }
        }
    })
}
