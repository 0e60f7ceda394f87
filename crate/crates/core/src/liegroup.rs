//! Floating-point machinery for SU(n) and SO(n): exponential and principal
//! logarithm, adjoint action, Haar sampling, Cartan embeddings, the geodesic
//! flow exp(tX) g exp(−tV), and the two-sided-translate fixed-point solver.

use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::exactlin::Scalar;
use crate::rootsys::LieType;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

const SKEW_TOL: f64 = 1e-12;
const UNITARY_TOL: f64 = 1e-12;
const DET_TOL: f64 = 1e-10;
const BRANCH_TOL: f64 = 1e-8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LieGroupError {
    #[error("size or family mismatch")]
    SizeMismatch,
    #[error("not a valid algebra element: {0}")]
    InvalidAlgebra(String),
    #[error("not a valid group element: {0}")]
    InvalidGroup(String),
    #[error("eigenvalue phase within branch tolerance of pi")]
    LogBranch,
    #[error("geodesic is already minimizing")]
    NotApplicable,
    #[error("fixed-point iteration did not converge")]
    NoConvergence,
    #[error("no matrix model for this family here")]
    E6Unsupported,
    #[error("point violates the Cartan constraint")]
    CartanConstraint,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Su,
    So,
}

/// Element of su(n) (skew-Hermitian traceless) or so(n) (real antisymmetric),
/// stored as a complex matrix in both cases.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    pub family: Family,
    pub n: usize,
    pub m: CMatrix,
}

/// Element of SU(n) or SO(n).
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub family: Family,
    pub n: usize,
    pub u: CMatrix,
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl AlgebraElement {
    pub fn new(family: Family, m: CMatrix) -> Result<Self, LieGroupError> {
        let n = m.nrows();
        if n != m.ncols() || n < 2 {
            return Err(LieGroupError::InvalidAlgebra("not square or n < 2".into()));
        }
        let skew = &m + &m.adjoint();
        if max_abs(&skew) > SKEW_TOL {
            return Err(LieGroupError::InvalidAlgebra(
                "not skew-Hermitian".into(),
            ));
        }
        match family {
            Family::Su => {
                if m.trace().norm() > SKEW_TOL {
                    return Err(LieGroupError::InvalidAlgebra("nonzero trace".into()));
                }
            }
            Family::So => {
                if m.iter().map(|z| z.im.abs()).fold(0.0, f64::max) > SKEW_TOL {
                    return Err(LieGroupError::InvalidAlgebra("not real".into()));
                }
            }
        }
        Ok(AlgebraElement { family, n, m })
    }

    pub fn zero(family: Family, n: usize) -> Self {
        AlgebraElement {
            family,
            n,
            m: CMatrix::zeros(n, n),
        }
    }

    pub fn scale(&self, t: f64) -> AlgebraElement {
        AlgebraElement {
            family: self.family,
            n: self.n,
            m: &self.m * C64::new(t, 0.0),
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement, LieGroupError> {
        if self.family != other.family || self.n != other.n {
            return Err(LieGroupError::SizeMismatch);
        }
        Ok(AlgebraElement {
            family: self.family,
            n: self.n,
            m: &self.m + &other.m,
        })
    }

    pub fn bi_norm(&self) -> f64 {
        bi_inner(self, self).unwrap().max(0.0).sqrt()
    }
}

impl GroupElement {
    pub fn new(family: Family, u: CMatrix) -> Result<Self, LieGroupError> {
        let n = u.nrows();
        if n != u.ncols() || n < 2 {
            return Err(LieGroupError::InvalidGroup("not square or n < 2".into()));
        }
        let gram = &u * u.adjoint();
        let dev = &gram - CMatrix::identity(n, n);
        if max_abs(&dev) > UNITARY_TOL {
            return Err(LieGroupError::InvalidGroup("not unitary".into()));
        }
        let det = u.determinant();
        if (det - C64::new(1.0, 0.0)).norm() > DET_TOL {
            return Err(LieGroupError::InvalidGroup("determinant != 1".into()));
        }
        if family == Family::So
            && u.iter().map(|z| z.im.abs()).fold(0.0, f64::max) > UNITARY_TOL
        {
            return Err(LieGroupError::InvalidGroup("not real".into()));
        }
        Ok(GroupElement { family, n, u })
    }

    pub fn identity(family: Family, n: usize) -> Self {
        GroupElement {
            family,
            n,
            u: CMatrix::identity(n, n),
        }
    }

    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement, LieGroupError> {
        if self.family != other.family || self.n != other.n {
            return Err(LieGroupError::SizeMismatch);
        }
        Ok(GroupElement {
            family: self.family,
            n: self.n,
            u: &self.u * &other.u,
        })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            family: self.family,
            n: self.n,
            u: self.u.adjoint(),
        }
    }
}

/// The Ad-invariant pairing −Re tr(XY).
pub fn bi_inner(x: &AlgebraElement, y: &AlgebraElement) -> Result<f64, LieGroupError> {
    if x.family != y.family || x.n != y.n {
        return Err(LieGroupError::SizeMismatch);
    }
    Ok(-(&x.m * &y.m).trace().re)
}

/// Matrix exponential of a skew-Hermitian element via the Hermitian
/// eigendecomposition of −iX.
pub fn group_exp(x: &AlgebraElement) -> GroupElement {
    let h = &x.m * C64::new(0.0, -1.0);
    let eig = nalgebra::SymmetricEigen::new(h);
    let q = eig.eigenvectors;
    let phases = eig.eigenvalues;
    let d = CMatrix::from_diagonal(&phases.map(|t| C64::new(t.cos(), t.sin())));
    let mut u = &q * d * q.adjoint();
    if x.family == Family::So {
        // the result is real orthogonal; drop roundoff imaginary parts
        u = u.map(|z| C64::new(z.re, 0.0));
    }
    GroupElement {
        family: x.family,
        n: x.n,
        u,
    }
}

/// Principal matrix logarithm (eigenphases in (−π, π)) via the complex Schur
/// form; a unitary input makes the triangular factor diagonal up to roundoff.
pub fn group_log(g: &GroupElement) -> Result<AlgebraElement, LieGroupError> {
    let schur = nalgebra::Schur::new(g.u.clone());
    let (q, t) = schur.unpack();
    let mut phases = Vec::with_capacity(g.n);
    for k in 0..g.n {
        let z = t[(k, k)];
        let theta = z.im.atan2(z.re);
        if (std::f64::consts::PI - theta.abs()) < BRANCH_TOL {
            return Err(LieGroupError::LogBranch);
        }
        phases.push(theta);
    }
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        g.n,
        phases.iter().map(|&t| C64::new(0.0, t)),
    ));
    let mut m = &q * d * q.adjoint();
    // project back onto the algebra to kill roundoff drift
    m = (&m - &m.adjoint()) * C64::new(0.5, 0.0);
    if g.family == Family::Su {
        let tr = m.trace() / C64::new(g.n as f64, 0.0);
        for k in 0..g.n {
            m[(k, k)] -= tr;
        }
    }
    if g.family == Family::So {
        m = m.map(|z| C64::new(z.re, 0.0));
    }
    Ok(AlgebraElement {
        family: g.family,
        n: g.n,
        m,
    })
}

/// Ad(g)X = gXg⁻¹.
pub fn adjoint(g: &GroupElement, x: &AlgebraElement) -> Result<AlgebraElement, LieGroupError> {
    if g.family != x.family || g.n != x.n {
        return Err(LieGroupError::SizeMismatch);
    }
    Ok(AlgebraElement {
        family: x.family,
        n: x.n,
        m: &g.u * &x.m * g.u.adjoint(),
    })
}

/// Approximately Haar-distributed group element: QR of a Gaussian matrix with
/// the R-diagonal phase correction, then determinant normalization (global
/// phase for SU, last-column flip for SO). Deterministic per seed.
pub fn haar_sample(family: Family, n: usize, seed: u64) -> GroupElement {
    assert!(n >= 2, "need n >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gauss = || -> f64 { rng.sample(StandardNormal) };
    let a = match family {
        Family::Su => CMatrix::from_fn(n, n, |_, _| C64::new(gauss(), gauss())),
        Family::So => CMatrix::from_fn(n, n, |_, _| C64::new(gauss(), 0.0)),
    };
    let qr = a.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / C64::new(d.norm(), 0.0);
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    match family {
        Family::Su => {
            let det = q.determinant();
            let theta = det.im.atan2(det.re) / n as f64;
            let fix = C64::new(theta.cos(), -theta.sin());
            q *= fix;
        }
        Family::So => {
            if q.determinant().re < 0.0 {
                for i in 0..n {
                    q[(i, n - 1)] = -q[(i, n - 1)];
                }
            }
            q = q.map(|z| C64::new(z.re, 0.0));
        }
    }
    GroupElement { family, n, u: q }
}

/// Embeds a Cartan point into the matrix model: A_n as diag(i a_0, …, i a_n)
/// in su(n+1), D_n as n rotation generators [[0, a_j], [−a_j, 0]] in so(2n).
pub fn cartan_embed(t: LieType, x: &[Scalar]) -> Result<AlgebraElement, LieGroupError> {
    match t {
        LieType::A(n) => {
            if x.len() != n + 1 {
                return Err(LieGroupError::CartanConstraint);
            }
            let sum = x.iter().fold(Scalar::zero(), |acc, v| acc + v);
            if !sum.is_zero() {
                return Err(LieGroupError::CartanConstraint);
            }
            let mut m = CMatrix::zeros(n + 1, n + 1);
            for (k, a) in x.iter().enumerate() {
                m[(k, k)] = C64::new(0.0, a.to_f64());
            }
            Ok(AlgebraElement {
                family: Family::Su,
                n: n + 1,
                m,
            })
        }
        LieType::D(n) => {
            if x.len() != n {
                return Err(LieGroupError::CartanConstraint);
            }
            let mut m = CMatrix::zeros(2 * n, 2 * n);
            for (k, a) in x.iter().enumerate() {
                let v = a.to_f64();
                m[(2 * k, 2 * k + 1)] = C64::new(v, 0.0);
                m[(2 * k + 1, 2 * k)] = C64::new(-v, 0.0);
            }
            Ok(AlgebraElement {
                family: Family::So,
                n: 2 * n,
                m,
            })
        }
        LieType::E6 => Err(LieGroupError::E6Unsupported),
    }
}

/// exp(tX) · g · exp(−tV).
pub fn geodesic_flow(
    x: &AlgebraElement,
    v: &AlgebraElement,
    g: &GroupElement,
    t: f64,
) -> Result<GroupElement, LieGroupError> {
    if x.family != v.family || x.n != v.n || g.family != x.family || g.n != x.n {
        return Err(LieGroupError::SizeMismatch);
    }
    let left = group_exp(&x.scale(t));
    let right = group_exp(&v.scale(-t));
    left.compose(g)?.compose(&right)
}

#[derive(Clone, Debug)]
pub struct LemgeoReport {
    pub t_prime: f64,
    pub x_prime: AlgebraElement,
    pub iterations: usize,
    /// |t_{i+1} − t_i| / |t_i − t_{i−1}| per step.
    pub ratios: Vec<f64>,
    /// ‖exp(t0 X) − exp(t′X′)·exp((t0−t′)V)‖_F at the fixed point.
    pub residual: f64,
}

fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Fixed-point solver for the two-sided decomposition
/// exp(t0 X) = exp(t′X′)·exp((t0−t′)V): iterate (t_{i+1}, X_{i+1}) =
/// principal-log data of g·exp((t_i − t0)V).
///
/// Applicable only when the geodesic exp(tX), t ∈ [0, t0] is not minimizing,
/// detected by the principal-log length of exp(t0 X) falling below t0 − tol.
pub fn lemgeo_solve(
    x: &AlgebraElement,
    t0: f64,
    v: &AlgebraElement,
    tol: f64,
    max_iter: usize,
) -> Result<LemgeoReport, LieGroupError> {
    if x.family != v.family || x.n != v.n {
        return Err(LieGroupError::SizeMismatch);
    }
    if (x.bi_norm() - 1.0).abs() > 1e-9 {
        return Err(LieGroupError::Precondition("X must be bi-unit".into()));
    }
    if v.bi_norm() >= 1.0 {
        return Err(LieGroupError::Precondition("|V|_bi must be < 1".into()));
    }
    let g = group_exp(&x.scale(t0));
    let log_g = group_log(&g)?;
    let mut t = log_g.bi_norm();
    if t >= t0 - tol {
        return Err(LieGroupError::NotApplicable);
    }
    let mut x_cur = log_g.scale(1.0 / t);
    let mut ratios = Vec::new();
    let mut prev_step: Option<f64> = None;
    for iter in 1..=max_iter {
        let shifted = g.compose(&group_exp(&v.scale(t - t0)))?;
        let log_s = group_log(&shifted)?;
        let t_next = log_s.bi_norm();
        let step = (t_next - t).abs();
        if let Some(p) = prev_step {
            if p > tol * 1e-2 {
                ratios.push(step / p);
            }
        }
        if t_next > 1e-12 {
            x_cur = log_s.scale(1.0 / t_next);
        }
        let converged = step < tol;
        t = t_next;
        if converged {
            let lhs = g;
            let rhs = group_exp(&x_cur.scale(t))
                .compose(&group_exp(&v.scale(t0 - t)))?;
            let residual = frobenius(&(&lhs.u - &rhs.u));
            if residual > tol.max(1e-10) * 100.0 {
                return Err(LieGroupError::NoConvergence);
            }
            return Ok(LemgeoReport {
                t_prime: t,
                x_prime: x_cur,
                iterations: iter,
                ratios,
                residual,
            });
        }
        prev_step = Some(step);
    }
    Err(LieGroupError::NoConvergence)
}

/// Orthonormal basis of the algebra under bi_inner.
pub fn algebra_basis(family: Family, n: usize) -> Vec<AlgebraElement> {
    let mut basis = Vec::new();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..n {
        for j in (i + 1)..n {
            let mut m = CMatrix::zeros(n, n);
            m[(i, j)] = C64::new(s, 0.0);
            m[(j, i)] = C64::new(-s, 0.0);
            basis.push(AlgebraElement { family, n, m });
            if family == Family::Su {
                let mut m = CMatrix::zeros(n, n);
                m[(i, j)] = C64::new(0.0, s);
                m[(j, i)] = C64::new(0.0, s);
                basis.push(AlgebraElement { family, n, m });
            }
        }
    }
    if family == Family::Su {
        for k in 1..n {
            // i·diag(1,…,1,−k,0,…)/√(k(k+1))
            let norm = (k as f64 * (k as f64 + 1.0)).sqrt();
            let mut m = CMatrix::zeros(n, n);
            for d in 0..k {
                m[(d, d)] = C64::new(0.0, 1.0 / norm);
            }
            m[(k, k)] = C64::new(0.0, -(k as f64) / norm);
            basis.push(AlgebraElement { family, n, m });
        }
    }
    basis
}

/// Coordinates of X in an orthonormal basis.
pub fn coords(x: &AlgebraElement, basis: &[AlgebraElement]) -> Vec<f64> {
    basis
        .iter()
        .map(|e| bi_inner(x, e).expect("basis element of matching shape"))
        .collect()
}

/// Linear combination of basis elements.
pub fn from_coords(basis: &[AlgebraElement], v: &[f64]) -> AlgebraElement {
    let mut acc = AlgebraElement::zero(basis[0].family, basis[0].n);
    for (e, &c) in basis.iter().zip(v) {
        acc = acc.add(&e.scale(c)).expect("homogeneous basis");
    }
    acc
}
