//! Eigenvalue-multiplicity combinatorics: multiplicity types of Cartan
//! elements, genericity predicates, codimension formulas for the A and D
//! families, and an empirical genericity probe for E6.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use crate::exactlin::Scalar;
use crate::rootsys::{dot, ExactVec, LieType, RootSystem};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StrataError {
    #[error("point violates the ambient constraint of the family")]
    AmbientConstraint,
    #[error("zero vector has no genericity class")]
    ZeroVector,
    #[error("no closed codimension formula for this family")]
    NoFormula,
    #[error("family not supported by this operation")]
    UnsupportedFamily,
}

/// Eigenvalue multiplicity type of a Cartan element: `n0` is the even
/// multiplicity of the eigenvalue 0 (D family only) and `parts` the
/// multiplicities of the remaining eigenvalue classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityType {
    pub family: LieType,
    pub n0: usize,
    pub parts: Vec<usize>, // sorted descending
}

impl MultiplicityType {
    fn new(family: LieType, n0: usize, mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        MultiplicityType { family, n0, parts }
    }

    pub fn ones(&self) -> usize {
        self.parts.iter().filter(|&&p| p == 1).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumReport {
    pub mtype: MultiplicityType,
    pub codim: usize,
    pub generic: bool,
}

impl StratumReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "family": self.mtype.family.family_char().to_string(),
            "rank": self.mtype.family.rank(),
            "n0": self.mtype.n0,
            "parts": self.mtype.parts,
            "codim": self.codim,
            "generic": self.generic,
        })
    }
}

fn entry_multiplicities(entries: &[Scalar]) -> Vec<usize> {
    let mut counts: HashMap<&Scalar, usize> = HashMap::new();
    for e in entries {
        *counts.entry(e).or_insert(0) += 1;
    }
    counts.into_values().collect()
}

/// Multiplicity type of a Cartan element.
///
/// A_n: multiplicities of the n+1 diagonal entries. D_n: n0 = twice the
/// number of zero entries; parts are multiplicities of distinct nonzero
/// absolute values (sign-change Weyl elements make only |a_i| invariant).
/// E6: multiplicities of the six entries.
pub fn multiplicity_type(t: LieType, x: &[Scalar]) -> Result<MultiplicityType, StrataError> {
    if x.len() != t.ambient_dim() {
        return Err(StrataError::AmbientConstraint);
    }
    match t {
        LieType::A(_) => {
            let sum = x.iter().fold(Scalar::zero(), |acc, v| acc + v);
            if !sum.is_zero() {
                return Err(StrataError::AmbientConstraint);
            }
            Ok(MultiplicityType::new(t, 0, entry_multiplicities(x)))
        }
        LieType::D(_) => {
            let zeros = x.iter().filter(|e| e.is_zero()).count();
            let abs: Vec<Scalar> = x
                .iter()
                .filter(|e| !e.is_zero())
                .map(|e| e.abs())
                .collect();
            Ok(MultiplicityType::new(t, 2 * zeros, entry_multiplicities(&abs)))
        }
        LieType::E6 => Ok(MultiplicityType::new(t, 0, entry_multiplicities(x))),
    }
}

fn distinct_entry_count(x: &[Scalar]) -> usize {
    let mut seen: Vec<&Scalar> = Vec::new();
    for e in x {
        if !seen.contains(&e) {
            seen.push(e);
        }
    }
    seen.len()
}

/// Genericity of a Cartan element.
///
/// A_n: at least two multiplicity-1 eigenvalues. D_n: m ≥ 2 with some
/// n_i = 1 (i > 0). E6: operational definition by orbit search — some Weyl
/// image of x has at least three distinct entries (early exit).
pub fn is_generic(t: LieType, x: &[Scalar], rs: &RootSystem) -> Result<bool, StrataError> {
    if x.iter().all(Scalar::is_zero) {
        return Err(StrataError::ZeroVector);
    }
    let mt = multiplicity_type(t, x)?;
    match t {
        LieType::A(_) => Ok(mt.ones() >= 2),
        LieType::D(_) => Ok(mt.parts.len() >= 2 && mt.ones() >= 1),
        LieType::E6 => {
            let iter = rs.orbit_iter(x).map_err(|_| StrataError::AmbientConstraint)?;
            for p in iter {
                if distinct_entry_count(&p) >= 3 {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// Codimension of the stratum of a multiplicity type.
///
/// A: Σ n_i² − m.  D: n0(n0−1)/2 + Σ n_i² − m.  E6 has no closed formula
/// here; see `centralizer_dim`.
pub fn codim(mt: &MultiplicityType) -> Result<usize, StrataError> {
    let sq: usize = mt.parts.iter().map(|&p| p * p).sum();
    let m = mt.parts.len();
    match mt.family {
        LieType::A(_) => Ok(sq - m),
        LieType::D(_) => Ok(mt.n0 * (mt.n0.saturating_sub(1)) / 2 + sq - m),
        LieType::E6 => Err(StrataError::NoFormula),
    }
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn is_generic_type(mt: &MultiplicityType) -> bool {
    match mt.family {
        LieType::A(_) => mt.ones() >= 2,
        LieType::D(_) => mt.parts.len() >= 2 && mt.ones() >= 1,
        LieType::E6 => false,
    }
}

/// All multiplicity strata of an A or D family at the given rank, with
/// codimension and genericity flags, sorted by codimension.
pub fn enumerate_strata(t: LieType) -> Result<Vec<StratumReport>, StrataError> {
    let mut reports = Vec::new();
    match t {
        LieType::A(n) => {
            for parts in partitions(n + 1) {
                let mt = MultiplicityType::new(t, 0, parts);
                let codim = codim(&mt)?;
                let generic = is_generic_type(&mt);
                reports.push(StratumReport { mtype: mt, codim, generic });
            }
        }
        LieType::D(n) => {
            for half_n0 in 0..=n {
                let n0 = 2 * half_n0;
                for parts in partitions(n - half_n0) {
                    let mt = MultiplicityType::new(t, n0, parts);
                    let codim = codim(&mt)?;
                    let generic = is_generic_type(&mt);
                    reports.push(StratumReport { mtype: mt, codim, generic });
                }
            }
        }
        LieType::E6 => return Err(StrataError::UnsupportedFamily),
    }
    reports.sort_by_key(|r| r.codim);
    Ok(reports)
}

/// Dimension of the centralizer of a Cartan element: the Cartan rank plus
/// the number of roots annihilating x.
pub fn centralizer_dim(rs: &RootSystem, x: &[Scalar]) -> usize {
    let vanishing = rs.roots.iter().filter(|r| dot(r, x).is_zero()).count();
    rs.lie_type.rank() + vanishing
}

#[derive(Clone, Debug)]
pub struct ProbeTypeReport {
    pub parts: Vec<usize>,
    pub trials: usize,
    pub generic_count: usize,
    /// Non-generic witnesses found, with their centralizer dimensions.
    pub failures: Vec<(ExactVec, usize)>,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub seed: u64,
    pub per_type: Vec<ProbeTypeReport>,
}

impl ProbeReport {
    pub fn failure_fraction(&self) -> f64 {
        let total: usize = self.per_type.iter().map(|t| t.trials).sum();
        let failed: usize = self.per_type.iter().map(|t| t.failures.len()).sum();
        failed as f64 / total as f64
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "seed": self.seed,
            "failure_fraction": self.failure_fraction(),
            "per_type": self.per_type.iter().map(|t| json!({
                "parts": t.parts,
                "trials": t.trials,
                "generic": t.generic_count,
                "failures": t.failures.iter().map(|(x, cd)| json!({
                    "x": x.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "centralizer_dim": cd,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    // bounded-height rationals, never zero
    loop {
        let num = rng.gen_range(-9i64..=9);
        if num == 0 {
            continue;
        }
        let den = rng.gen_range(1i64..=9);
        return Scalar::ratio(num, den);
    }
}

/// Empirical genericity probe for the degenerate E6 multiplicity types
/// {6}, {5,1}, {4,2}, {3,3}: sample random rational representatives and
/// report how often the orbit search finds three distinct entries.
pub fn e6_generic_probe(rs: &RootSystem, trials: usize, seed: u64) -> Result<ProbeReport, StrataError> {
    if rs.lie_type != LieType::E6 {
        return Err(StrataError::UnsupportedFamily);
    }
    let type_shapes: [&[usize]; 4] = [&[6], &[5, 1], &[4, 2], &[3, 3]];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut per_type = Vec::new();
    for shape in type_shapes {
        let mut report = ProbeTypeReport {
            parts: shape.to_vec(),
            trials,
            generic_count: 0,
            failures: Vec::new(),
        };
        for _ in 0..trials {
            // distinct values per block
            let mut values: Vec<Scalar> = Vec::new();
            while values.len() < shape.len() {
                let v = random_rational(&mut rng);
                if !values.contains(&v) {
                    values.push(v);
                }
            }
            let mut x = Vec::with_capacity(6);
            for (block, count) in shape.iter().enumerate() {
                for _ in 0..*count {
                    x.push(values[block].clone());
                }
            }
            if is_generic(LieType::E6, &x, rs)? {
                report.generic_count += 1;
            } else {
                let cd = centralizer_dim(rs, &x);
                report.failures.push((x, cd));
            }
        }
        per_type.push(report);
    }
    Ok(ProbeReport { seed, per_type })
}
