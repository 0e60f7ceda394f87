//! Explicit root systems for A_n, D_n and E6 with exact coordinates, plus
//! reflection and Weyl-orbit enumeration.
//!
//! A_n lives on the sum-zero hyperplane of R^{n+1} (points keep all n+1
//! entries), D_n in R^n, and E6 in the R^6 realization whose last coordinate
//! carries the ±√3/2 entries.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::exactlin::Scalar;

pub type ExactVec = Vec<Scalar>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootSysError {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("reflection in the zero root")]
    ZeroRoot,
    #[error("point violates the ambient constraint: {0}")]
    AmbientConstraint(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LieType {
    A(usize),
    D(usize),
    E6,
}

impl LieType {
    pub fn validate(self) -> Result<Self, RootSysError> {
        match self {
            LieType::A(n) if n >= 1 => Ok(self),
            LieType::A(n) => Err(RootSysError::InvalidRank { family: 'A', rank: n }),
            LieType::D(n) if n >= 3 => Ok(self),
            LieType::D(n) => Err(RootSysError::InvalidRank { family: 'D', rank: n }),
            LieType::E6 => Ok(self),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            LieType::A(n) | LieType::D(n) => n,
            LieType::E6 => 6,
        }
    }

    pub fn ambient_dim(self) -> usize {
        match self {
            LieType::A(n) => n + 1,
            LieType::D(n) => n,
            LieType::E6 => 6,
        }
    }

    pub fn family_char(self) -> char {
        match self {
            LieType::A(_) => 'A',
            LieType::D(_) => 'D',
            LieType::E6 => 'E',
        }
    }
}

/// Whether the Weyl group of this type contains -Id on the Cartan subalgebra.
/// A_1 does (the single reflection), A_n with n > 1, D_odd and E6 do not,
/// D_even does.
pub fn contains_minus_id(t: LieType) -> bool {
    match t {
        LieType::A(1) => true,
        LieType::A(_) => false,
        LieType::D(n) => n % 2 == 0,
        LieType::E6 => false,
    }
}

pub fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    assert_eq!(u.len(), v.len(), "dot product dimension mismatch");
    let mut acc = Scalar::zero();
    for (x, y) in u.iter().zip(v.iter()) {
        acc = acc + x * y;
    }
    acc
}

pub fn norm2(v: &[Scalar]) -> Scalar {
    dot(v, v)
}

/// v − 2⟨v,r⟩/⟨r,r⟩ · r
pub fn reflect(v: &[Scalar], root: &[Scalar]) -> Result<ExactVec, RootSysError> {
    let rr = norm2(root);
    if rr.is_zero() {
        return Err(RootSysError::ZeroRoot);
    }
    let coeff = (Scalar::from_int(2) * dot(v, root)) / rr;
    Ok(v.iter()
        .zip(root.iter())
        .map(|(x, r)| x - &(&coeff * r))
        .collect())
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub lie_type: LieType,
    pub ambient_dim: usize,
    pub roots: Vec<ExactVec>,
    /// A fixed basis of roots; its reflections generate the full Weyl group.
    pub simple_roots: Vec<ExactVec>,
}

fn unit(dim: usize, i: usize, sign: i64) -> ExactVec {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::from_int(sign);
    v
}

fn e6_roots() -> Vec<ExactVec> {
    let mut roots = Vec::with_capacity(72);
    // ±e_i ± e_j among the first five coordinates, last entry 0.
    for i in 0..5 {
        for j in (i + 1)..5 {
            for si in [1, -1] {
                for sj in [1, -1] {
                    let mut v = vec![Scalar::zero(); 6];
                    v[i] = Scalar::from_int(si);
                    v[j] = Scalar::from_int(sj);
                    roots.push(v);
                }
            }
        }
    }
    // (±1/2, ..., ±1/2, ±√3/2) with an odd number of positive signs.
    for mask in 0..(1u32 << 6) {
        if mask.count_ones() % 2 != 1 {
            continue;
        }
        let mut v = Vec::with_capacity(6);
        for k in 0..5 {
            let s = if mask & (1 << k) != 0 { 1 } else { -1 };
            v.push(Scalar::ratio(s, 2));
        }
        let s = if mask & (1 << 5) != 0 { 1 } else { -1 };
        v.push(Scalar::sqrt3_ratio(s, 2));
        roots.push(v);
    }
    roots
}

/// Simple system extracted from a root set: positive roots with respect to a
/// fixed generic linear functional, minus those that split as a sum of two
/// positive roots.
fn simple_system(roots: &[ExactVec]) -> Vec<ExactVec> {
    let dim = roots[0].len();
    // Powers of 5 give a functional with no ties on these root sets; the √3
    // component of the pairing keeps the last coordinate from cancelling.
    let f: ExactVec = (0..dim).map(|k| Scalar::from_int(5i64.pow(k as u32))).collect();
    let positive: Vec<ExactVec> = roots
        .iter()
        .filter(|r| dot(r, &f).is_positive())
        .cloned()
        .collect();
    let pos_set: HashSet<ExactVec> = positive.iter().cloned().collect();
    positive
        .iter()
        .filter(|r| {
            !positive.iter().any(|p| {
                let diff: ExactVec = r.iter().zip(p.iter()).map(|(a, b)| a - b).collect();
                diff.iter().any(|x| !x.is_zero()) && pos_set.contains(&diff)
            })
        })
        .cloned()
        .collect()
}

pub fn build_root_system(t: LieType) -> Result<RootSystem, RootSysError> {
    let t = t.validate()?;
    let dim = t.ambient_dim();
    let (roots, simple_roots) = match t {
        LieType::A(n) => {
            let mut roots = Vec::new();
            for i in 0..=n {
                for j in 0..=n {
                    if i != j {
                        let mut v = vec![Scalar::zero(); n + 1];
                        v[i] = Scalar::one();
                        v[j] = Scalar::from_int(-1);
                        roots.push(v);
                    }
                }
            }
            // v_i = e_0 − e_i: the reflection swaps entries 0 and i.
            let simple = (1..=n)
                .map(|i| {
                    let mut v = unit(n + 1, 0, 1);
                    v[i] = Scalar::from_int(-1);
                    v
                })
                .collect();
            (roots, simple)
        }
        LieType::D(n) => {
            let mut roots = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    for si in [1, -1] {
                        for sj in [1, -1] {
                            let mut v = vec![Scalar::zero(); n];
                            v[i] = Scalar::from_int(si);
                            v[j] = Scalar::from_int(sj);
                            roots.push(v);
                        }
                    }
                }
            }
            // v_0 = e_0 + e_1 plus v_i = e_0 − e_i for i = 1..n−1.
            let mut simple = Vec::with_capacity(n);
            let mut v0 = unit(n, 0, 1);
            v0[1] = Scalar::one();
            simple.push(v0);
            for i in 1..n {
                let mut v = unit(n, 0, 1);
                v[i] = Scalar::from_int(-1);
                simple.push(v);
            }
            (roots, simple)
        }
        LieType::E6 => {
            let roots = e6_roots();
            let simple = simple_system(&roots);
            (roots, simple)
        }
    };
    Ok(RootSystem {
        lie_type: t,
        ambient_dim: dim,
        roots,
        simple_roots,
    })
}

impl RootSystem {
    /// Validates membership of a point in the ambient Cartan space
    /// (for A_n: coordinates sum to zero).
    pub fn check_ambient(&self, x: &[Scalar]) -> Result<(), RootSysError> {
        if x.len() != self.ambient_dim {
            return Err(RootSysError::AmbientConstraint(format!(
                "expected {} coordinates, got {}",
                self.ambient_dim,
                x.len()
            )));
        }
        if let LieType::A(_) = self.lie_type {
            let sum = x.iter().fold(Scalar::zero(), |acc, v| acc + v);
            if !sum.is_zero() {
                return Err(RootSysError::AmbientConstraint(
                    "A-type coordinates must sum to zero".to_string(),
                ));
            }
        }
        Ok(())
    }

    /// Lazy breadth-first closure of {x} under reflections in the simple
    /// roots. Deduplication is exact.
    pub fn orbit_iter(&self, x: &[Scalar]) -> Result<OrbitIter<'_>, RootSysError> {
        self.check_ambient(x)?;
        let mut seen = HashSet::new();
        seen.insert(x.to_vec());
        let mut queue = VecDeque::new();
        queue.push_back(x.to_vec());
        Ok(OrbitIter {
            rs: self,
            seen,
            queue,
        })
    }
}

pub struct OrbitIter<'a> {
    rs: &'a RootSystem,
    seen: HashSet<ExactVec>,
    queue: VecDeque<ExactVec>,
}

impl Iterator for OrbitIter<'_> {
    type Item = ExactVec;

    fn next(&mut self) -> Option<ExactVec> {
        let p = self.queue.pop_front()?;
        for r in &self.rs.simple_roots {
            let q = reflect(&p, r).expect("simple roots are nonzero");
            if !self.seen.contains(&q) {
                self.seen.insert(q.clone());
                self.queue.push_back(q);
            }
        }
        Some(p)
    }
}

#[derive(Clone, Debug)]
pub struct WeylOrbit {
    pub base_point: ExactVec,
    pub points: Vec<ExactVec>,
}

fn next_permutation(v: &mut [Scalar]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Distinct coordinate permutations, generated lexicographically.
fn multiset_permutations(x: &[Scalar]) -> Vec<ExactVec> {
    let mut v = x.to_vec();
    v.sort();
    let mut out = vec![v.clone()];
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

/// Full Weyl orbit of a Cartan point. The classical groups act
/// combinatorially (A: coordinate permutations; D: permutations with an even
/// number of sign changes), which is much cheaper than the reflection
/// closure; E6 falls back to breadth-first closure under simple reflections.
pub fn weyl_orbit(rs: &RootSystem, x: &[Scalar]) -> Result<WeylOrbit, RootSysError> {
    rs.check_ambient(x)?;
    let points: Vec<ExactVec> = match rs.lie_type {
        LieType::A(_) => multiset_permutations(x),
        LieType::D(n) => {
            let mut seen: HashSet<ExactVec> = HashSet::new();
            let mut points = Vec::new();
            for mask in 0u32..(1 << n) {
                if mask.count_ones() % 2 != 0 {
                    continue;
                }
                let flipped: ExactVec = x
                    .iter()
                    .enumerate()
                    .map(|(k, v)| if mask >> k & 1 == 1 { -v } else { v.clone() })
                    .collect();
                for p in multiset_permutations(&flipped) {
                    if seen.insert(p.clone()) {
                        points.push(p);
                    }
                }
            }
            points
        }
        LieType::E6 => rs.orbit_iter(x)?.collect(),
    };
    Ok(WeylOrbit {
        base_point: x.to_vec(),
        points,
    })
}
