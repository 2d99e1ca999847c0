//! Sequences of subspaces and certified limit estimates.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::float::{distance, SubspaceF};
use super::subspace::SubspaceQ;
use crate::exactlinalg::Rat;
use crate::error::{Error, Result};

type Generator = dyn Fn(u64) -> Result<SubspaceQ> + Send + Sync;

/// A named sequence n ↦ S_n of exact subspaces.
#[derive(Clone)]
pub struct SeqFamily {
    name: String,
    params: Vec<Rat>,
    generator: Arc<Generator>,
}

impl SeqFamily {
    pub fn new<F>(name: impl Into<String>, params: Vec<Rat>, generator: F) -> Self
    where
        F: Fn(u64) -> Result<SubspaceQ> + Send + Sync + 'static,
    {
        SeqFamily { name: name.into(), params, generator: Arc::new(generator) }
    }

    /// The family that ignores its index.
    pub fn constant(name: impl Into<String>, s: SubspaceQ) -> Self {
        Self::new(name, Vec::new(), move |_| Ok(s.clone()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &[Rat] {
        &self.params
    }

    pub fn exact(&self, n: u64) -> Result<SubspaceQ> {
        if n == 0 {
            return Err(Error::InvalidParameter("sequence indices start at 1".into()));
        }
        (self.generator)(n)
    }

    pub fn float(&self, n: u64) -> Result<SubspaceF> {
        Ok(SubspaceF::from_exact(&self.exact(n)?))
    }
}

impl fmt::Debug for SeqFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeqFamily({})", self.name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    Certified,
    NoCertificate,
}

#[derive(Clone, Debug)]
pub struct LimitEstimate {
    pub schedule: Vec<u64>,
    /// Distances between consecutive schedule members.
    pub gaps: Vec<f64>,
    pub certificate: Certificate,
    /// Member at the last index.
    pub limit: SubspaceF,
    pub last_exact: SubspaceQ,
}

impl LimitEstimate {
    pub fn certified(&self) -> bool {
        self.certificate == Certificate::Certified
    }

    pub fn final_gap(&self) -> f64 {
        *self.gaps.last().expect("schedules have at least three entries")
    }

    pub fn distance_to(&self, target: &SubspaceQ) -> Result<f64> {
        distance(&self.limit, &SubspaceF::from_exact(target))
    }
}

/// Evaluates the family along `schedule` and certifies convergence when the
/// consecutive gaps decrease (or vanish) and the final gap is below `tol`.
pub fn limit_estimate(f: &SeqFamily, schedule: &[u64], tol: f64) -> Result<LimitEstimate> {
    if schedule.len() < 3 {
        return Err(Error::InvalidParameter("schedule needs at least three indices".into()));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) || schedule[0] == 0 {
        return Err(Error::InvalidParameter("schedule must be positive and increasing".into()));
    }
    let members: Vec<SubspaceQ> = schedule.iter().map(|&n| f.exact(n)).collect::<Result<_>>()?;
    let floats: Vec<SubspaceF> = members.iter().map(SubspaceF::from_exact).collect();
    let gaps: Vec<f64> =
        floats.windows(2).map(|w| distance(&w[0], &w[1])).collect::<Result<_>>()?;
    let monotone = gaps.windows(2).all(|w| w[1] < w[0] || w[1] == 0.0);
    let certificate = if monotone && *gaps.last().unwrap() < tol {
        Certificate::Certified
    } else {
        Certificate::NoCertificate
    };
    Ok(LimitEstimate {
        schedule: schedule.to_vec(),
        gaps,
        certificate,
        limit: floats.last().unwrap().clone(),
        last_exact: members.last().unwrap().clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::rat;

    #[test]
    fn constant_family_certifies_with_zero_gaps() {
        let s = SubspaceQ::from_spanning_set(&[vec![rat(1), rat(1)]], 2).unwrap();
        let est = limit_estimate(&SeqFamily::constant("c", s), &[10, 100, 1000], 1e-4).unwrap();
        assert!(est.certified());
        assert!(est.gaps.iter().all(|&g| g == 0.0));
    }

    #[test]
    fn oscillating_family_gets_no_certificate() {
        let f = SeqFamily::new("osc", vec![], |n| {
            let v = if n % 2 == 0 { vec![rat(1), rat(0)] } else { vec![rat(0), rat(1)] };
            SubspaceQ::from_spanning_set(&[v], 2)
        });
        let est = limit_estimate(&f, &[1, 2, 3, 4], 1e-3).unwrap();
        assert!(!est.certified());
    }

    #[test]
    fn schedule_preconditions() {
        let s = SubspaceQ::from_spanning_set(&[vec![rat(1)]], 1).unwrap();
        let f = SeqFamily::constant("c", s);
        assert!(limit_estimate(&f, &[1, 2], 1.0).is_err());
        assert!(limit_estimate(&f, &[3, 2, 5], 1.0).is_err());
    }
}
