//! Left-invariant Randers metric data F(y) = √(yᵀAy) + wᵀy with w = BV,
//! indicatrix quadrics, the round-sphere decision, Zermelo navigation, and
//! the sampled constant-length test.

use serde_json::json;
use thiserror::Error;

use crate::exactlin::{ExactLinError, ExactMatrix, Scalar};
use crate::quadric::Quadric;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RandersError {
    #[error("matrix is not symmetric positive definite")]
    NotSpd,
    #[error("strong convexity fails: w^T A^-1 w >= 1")]
    NonConvex,
    #[error("navigation vector has bi-norm >= 1")]
    NavigationTooFast,
    #[error("translated ellipsoid does not enclose the origin")]
    ShiftInvalid,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("empty sample set")]
    EmptySamples,
    #[error(transparent)]
    Lin(#[from] ExactLinError),
}

/// Exact data of a left-invariant Randers norm on the algebra: the metric
/// Gram matrix A, the bi-invariant Gram matrix B, the vector V, and the
/// derived covector w = BV.
#[derive(Clone, Debug, PartialEq)]
pub struct RandersData {
    pub n: usize,
    pub alpha_gram: ExactMatrix,
    pub bi_gram: ExactMatrix,
    pub v_bi: Vec<Scalar>,
    pub w: Vec<Scalar>,
}

/// A round-sphere indicatrix: A − wwᵀ = λB, center and squared radius in
/// the B-norm.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundSphere {
    pub center: Vec<Scalar>,
    pub radius_sq: Scalar,
}

fn outer(u: &[Scalar], v: &[Scalar]) -> ExactMatrix {
    ExactMatrix::from_fn(u.len(), v.len(), |i, j| &u[i] * &v[j])
}

fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter()
        .zip(v)
        .fold(Scalar::zero(), |acc, (a, b)| acc + &(a * b))
}

fn mat_sub(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    ExactMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a.get(i, j) - b.get(i, j))
}

pub fn make_randers(
    alpha_gram: ExactMatrix,
    bi_gram: ExactMatrix,
    v_bi: Vec<Scalar>,
) -> Result<RandersData, RandersError> {
    let n = v_bi.len();
    if alpha_gram.nrows() != n || bi_gram.nrows() != n {
        return Err(RandersError::DimensionMismatch);
    }
    if !alpha_gram.is_positive_definite().unwrap_or(false)
        || !bi_gram.is_positive_definite().unwrap_or(false)
    {
        return Err(RandersError::NotSpd);
    }
    let w = bi_gram.mul_vec(&v_bi)?;
    // strong convexity: w^T A^-1 w < 1
    let z = alpha_gram.solve(&w)?;
    let excess = &dot(&w, &z) - &Scalar::one();
    if excess.is_zero() || excess.is_positive() {
        return Err(RandersError::NonConvex);
    }
    Ok(RandersData {
        n,
        alpha_gram,
        bi_gram,
        v_bi,
        w,
    })
}

impl RandersData {
    /// F(y) = √(yᵀAy) + wᵀy, evaluated in floating point.
    pub fn eval_f(&self, y: &[f64]) -> f64 {
        let fl = self.to_float();
        fl.eval_f(y)
    }

    /// The indicatrix {F = 1} as a quadric: (A − wwᵀ, 2w, −1).
    pub fn indicatrix_quadric(&self) -> Quadric {
        let g = mat_sub(&self.alpha_gram, &outer(&self.w, &self.w));
        let b = self.w.iter().map(|x| x + x).collect();
        Quadric {
            a: g,
            b,
            c: -Scalar::one(),
        }
    }

    /// Decides whether the indicatrix is a round B-sphere: A − wwᵀ = λB
    /// with λ > 0. Returns the B-center and squared radius, else None.
    pub fn is_round_sphere(&self) -> Option<RoundSphere> {
        let g = mat_sub(&self.alpha_gram, &outer(&self.w, &self.w));
        // B is positive definite, so B[0][0] != 0 fixes λ
        let lambda = g.get(0, 0) / self.bi_gram.get(0, 0);
        if !lambda.is_positive() {
            return None;
        }
        for i in 0..self.n {
            for j in 0..self.n {
                if !(g.get(i, j) - &(&lambda * self.bi_gram.get(i, j))).is_zero() {
                    return None;
                }
            }
        }
        // c = -(λB)^{-1} w, r² = (1 - wᵀc)/λ
        let neg_w: Vec<Scalar> = self.w.iter().map(|x| -x).collect();
        let lb = ExactMatrix::from_fn(self.n, self.n, |i, j| &lambda * self.bi_gram.get(i, j));
        let center = lb.solve(&neg_w).ok()?;
        let radius_sq = &(&Scalar::one() - &dot(&self.w, &center)) / &lambda;
        Some(RoundSphere { center, radius_sq })
    }

    /// Translates the indicatrix by −X′ and re-derives Randers data, by the
    /// substitution y → y + X′ in the indicatrix quadric.
    pub fn shift_indicatrix(&self, x_prime: &[Scalar]) -> Result<RandersData, RandersError> {
        if x_prime.len() != self.n {
            return Err(RandersError::DimensionMismatch);
        }
        let q = self.indicatrix_quadric();
        let gx = q.a.mul_vec(x_prime)?;
        // Q(y + X′): same quadratic part, b̃ = 2GX′ + b, c̃ = X′ᵀGX′ + bᵀX′ + c
        let b_new: Vec<Scalar> = gx.iter().zip(&q.b).map(|(g, b)| &(g + g) + b).collect();
        let c_new = &(&dot(x_prime, &gx) + &dot(&q.b, x_prime)) + &q.c;
        // the origin is interior iff c̃ < 0; renormalize so the constant is −1
        if c_new.is_zero() || c_new.is_positive() {
            return Err(RandersError::ShiftInvalid);
        }
        let scale = (-&c_new).inv()?;
        let half = Scalar::ratio(1, 2);
        let w_new: Vec<Scalar> = b_new.iter().map(|b| &(&half * b) * &scale).collect();
        let a_new = ExactMatrix::from_fn(self.n, self.n, |i, j| {
            &(q.a.get(i, j) * &scale) + &(&w_new[i] * &w_new[j])
        });
        let v_new = self.bi_gram.solve(&w_new)?;
        make_randers(a_new, self.bi_gram.clone(), v_new)
    }

    pub fn to_float(&self) -> RandersDataF {
        RandersDataF {
            n: self.n,
            a: (0..self.n)
                .map(|i| (0..self.n).map(|j| self.alpha_gram.get(i, j).to_f64()).collect())
                .collect(),
            w: self.w.iter().map(Scalar::to_f64).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mat = |m: &ExactMatrix| -> serde_json::Value {
            (0..m.nrows())
                .map(|i| {
                    (0..m.ncols())
                        .map(|j| m.get(i, j).to_string())
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
                .into()
        };
        json!({
            "mode": "exact",
            "A": mat(&self.alpha_gram),
            "B": mat(&self.bi_gram),
            "V": self.v_bi.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Solves the navigation problem: the unique Randers data whose indicatrix
/// is the B-unit sphere centered at W. Requires |W|_B < 1.
pub fn navigation_to_randers(
    bi_gram: ExactMatrix,
    w_vec: Vec<Scalar>,
) -> Result<RandersData, RandersError> {
    let n = w_vec.len();
    if bi_gram.nrows() != n {
        return Err(RandersError::DimensionMismatch);
    }
    if !bi_gram.is_positive_definite().unwrap_or(false) {
        return Err(RandersError::NotSpd);
    }
    let u = bi_gram.mul_vec(&w_vec)?;
    let lambda = &Scalar::one() - &dot(&w_vec, &u);
    if !lambda.is_positive() {
        return Err(RandersError::NavigationTooFast);
    }
    let lam_sq_inv = (&lambda * &lambda).inv()?;
    let a = ExactMatrix::from_fn(n, n, |i, j| {
        &(&(&lambda * bi_gram.get(i, j)) + &(&u[i] * &u[j])) * &lam_sq_inv
    });
    // w = -BW/λ, so V = -W/λ
    let lam_inv = lambda.inv()?;
    let v: Vec<Scalar> = w_vec.iter().map(|x| -&(x * &lam_inv)).collect();
    make_randers(a, bi_gram, v)
}

/// Floating-point mirror of RandersData for sampling workloads.
#[derive(Clone, Debug)]
pub struct RandersDataF {
    pub n: usize,
    pub a: Vec<Vec<f64>>,
    pub w: Vec<f64>,
}

impl RandersDataF {
    pub fn eval_f(&self, y: &[f64]) -> f64 {
        let mut quad = 0.0;
        let mut lin = 0.0;
        for i in 0..self.n {
            lin += self.w[i] * y[i];
            for j in 0..self.n {
                quad += y[i] * self.a[i][j] * y[j];
            }
        }
        quad.max(0.0).sqrt() + lin
    }
}

#[derive(Clone, Debug)]
pub struct VariationReport {
    pub min: f64,
    pub max: f64,
    pub variation: f64,
    /// Indices of samples where Ad(g)X − X′ vanished.
    pub degenerate: Vec<usize>,
}

/// Evaluates F(Ad(g)X − X′) over the samples and reports the spread. Zero
/// variation over a dense enough sample is the Killing-field constancy
/// signature; any positive spread refutes it.
pub fn constant_length_test<G>(
    d: &RandersDataF,
    x: &[f64],
    x_prime: &[f64],
    samples: &[G],
    ad: impl Fn(&G, &[f64]) -> Vec<f64>,
) -> Result<VariationReport, RandersError> {
    if samples.is_empty() {
        return Err(RandersError::EmptySamples);
    }
    if x.len() != d.n || x_prime.len() != d.n {
        return Err(RandersError::DimensionMismatch);
    }
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut degenerate = Vec::new();
    for (idx, g) in samples.iter().enumerate() {
        let mut y = ad(g, x);
        for (yi, xp) in y.iter_mut().zip(x_prime) {
            *yi -= xp;
        }
        let norm: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-12 {
            degenerate.push(idx);
            continue;
        }
        let f = d.eval_f(&y);
        min = min.min(f);
        max = max.max(f);
    }
    if min > max {
        // every sample degenerate
        min = 0.0;
        max = 0.0;
    }
    Ok(VariationReport {
        min,
        max,
        variation: max - min,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn diag(entries: &[Scalar]) -> ExactMatrix {
        ExactMatrix::from_fn(entries.len(), entries.len(), |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                Scalar::zero()
            }
        })
    }

    fn example_data() -> RandersData {
        // A = diag(16/9, 4/3), B = I, V = (-2/3, 0)
        make_randers(
            diag(&[Scalar::ratio(16, 9), Scalar::ratio(4, 3)]),
            ExactMatrix::identity(2),
            vec![Scalar::ratio(-2, 3), s(0)],
        )
        .unwrap()
    }

    #[test]
    fn make_randers_examples() {
        assert!(make_randers(
            ExactMatrix::identity(2),
            ExactMatrix::identity(2),
            vec![s(0), s(0)]
        )
        .is_ok());
        assert_eq!(
            make_randers(
                ExactMatrix::identity(2),
                ExactMatrix::identity(2),
                vec![s(1), s(0)]
            ),
            Err(RandersError::NonConvex)
        );
        // w^T A^-1 w = (4/9)(9/16) = 1/4 < 1
        assert!(make_randers(
            diag(&[Scalar::ratio(16, 9), Scalar::ratio(4, 3)]),
            ExactMatrix::identity(2),
            vec![Scalar::ratio(-2, 3), s(0)]
        )
        .is_ok());
        assert_eq!(
            make_randers(
                diag(&[s(1), s(-1)]),
                ExactMatrix::identity(2),
                vec![s(0), s(0)]
            ),
            Err(RandersError::NotSpd)
        );
    }

    #[test]
    fn eval_f_examples() {
        let riem = make_randers(
            ExactMatrix::identity(2),
            ExactMatrix::identity(2),
            vec![s(0), s(0)],
        )
        .unwrap();
        assert!((riem.eval_f(&[1.0, 0.0]) - 1.0).abs() < 1e-15);

        let d = make_randers(
            ExactMatrix::identity(2),
            ExactMatrix::identity(2),
            vec![Scalar::ratio(1, 2), s(0)],
        )
        .unwrap();
        assert!((d.eval_f(&[-1.0, 0.0]) - 0.5).abs() < 1e-15);
        // homogeneity
        let y = [0.3, -0.7];
        let lam = 2.5;
        let scaled = [lam * y[0], lam * y[1]];
        assert!((d.eval_f(&scaled) - lam * d.eval_f(&y)).abs() < 1e-12);
    }

    #[test]
    fn indicatrix_quadric_examples() {
        let riem = make_randers(
            diag(&[s(2), s(3)]),
            ExactMatrix::identity(2),
            vec![s(0), s(0)],
        )
        .unwrap();
        let q = riem.indicatrix_quadric();
        assert_eq!(q.a, diag(&[s(2), s(3)]));
        assert!(q.b.iter().all(Scalar::is_zero));
        assert_eq!(q.c, s(-1));

        // A = I, w = (1/2, 0): quadratic part diag(3/4, 1)
        let d = make_randers(
            ExactMatrix::identity(2),
            ExactMatrix::identity(2),
            vec![Scalar::ratio(1, 2), s(0)],
        )
        .unwrap();
        let q = d.indicatrix_quadric();
        assert_eq!(q.a, diag(&[Scalar::ratio(3, 4), s(1)]));

        // exact ray: F((3/2, 0)) = 2 - 1 = 1 for the running example
        let d = example_data();
        assert!((d.eval_f(&[1.5, 0.0]) - 1.0).abs() < 1e-15);
        let q = d.indicatrix_quadric();
        assert!(q.eval(&[Scalar::ratio(3, 2), s(0)]).is_zero());
    }

    #[test]
    fn indicatrix_ray_oracle() {
        // rescale random rays onto the indicatrix; quadric must vanish there
        let d = example_data();
        let fl = d.to_float();
        for k in 0..50 {
            let t = k as f64 * 0.12566;
            let y = [t.cos(), t.sin()];
            let f = fl.eval_f(&y);
            let on = [y[0] / f, y[1] / f];
            let qa = [[4.0 / 3.0, 0.0], [0.0, 4.0 / 3.0]];
            let qb = [-4.0 / 3.0, 0.0];
            let val = on[0] * (qa[0][0] * on[0]) + on[1] * (qa[1][1] * on[1])
                + qb[0] * on[0]
                + qb[1] * on[1]
                - 1.0;
            assert!(val.abs() < 1e-12, "ray {k}: residual {val}");
        }
    }

    #[test]
    fn is_round_sphere_examples() {
        let riem = make_randers(
            ExactMatrix::identity(2),
            ExactMatrix::identity(2),
            vec![s(0), s(0)],
        )
        .unwrap();
        let rs = riem.is_round_sphere().unwrap();
        assert!(rs.center.iter().all(Scalar::is_zero));
        assert_eq!(rs.radius_sq, s(1));

        let d = example_data();
        let rs = d.is_round_sphere().unwrap();
        assert_eq!(rs.center, vec![Scalar::ratio(1, 2), s(0)]);
        assert_eq!(rs.radius_sq, s(1));

        let non = make_randers(
            diag(&[s(2), s(1)]),
            ExactMatrix::identity(2),
            vec![s(0), s(0)],
        )
        .unwrap();
        assert!(non.is_round_sphere().is_none());
    }

    #[test]
    fn navigation_examples() {
        let b = ExactMatrix::identity(2);
        let d = navigation_to_randers(b.clone(), vec![s(0), s(0)]).unwrap();
        assert_eq!(d.alpha_gram, b);
        assert!(d.v_bi.iter().all(Scalar::is_zero));

        let d = navigation_to_randers(b.clone(), vec![Scalar::ratio(1, 2), s(0)]).unwrap();
        assert_eq!(
            d.alpha_gram,
            diag(&[Scalar::ratio(16, 9), Scalar::ratio(4, 3)])
        );
        assert_eq!(d.w, vec![Scalar::ratio(-2, 3), s(0)]);

        assert_eq!(
            navigation_to_randers(b, vec![s(1), s(0)]),
            Err(RandersError::NavigationTooFast)
        );
    }

    #[test]
    fn navigation_round_trip() {
        let candidates = [
            vec![Scalar::ratio(1, 2), Scalar::ratio(1, 3)],
            vec![Scalar::ratio(-3, 5), Scalar::ratio(2, 7)],
            vec![Scalar::ratio(0, 1), Scalar::ratio(9, 10)],
        ];
        for w_vec in candidates {
            let d = navigation_to_randers(ExactMatrix::identity(2), w_vec.clone()).unwrap();
            let rs = d.is_round_sphere().unwrap();
            assert_eq!(rs.center, w_vec);
            assert_eq!(rs.radius_sq, s(1));
        }
        // non-identity B
        let b = ExactMatrix::from_rows(vec![
            vec![s(2), Scalar::ratio(1, 2)],
            vec![Scalar::ratio(1, 2), s(1)],
        ])
        .unwrap();
        let w_vec = vec![Scalar::ratio(1, 3), Scalar::ratio(-1, 4)];
        let d = navigation_to_randers(b, w_vec.clone()).unwrap();
        let rs = d.is_round_sphere().unwrap();
        assert_eq!(rs.center, w_vec);
        assert_eq!(rs.radius_sq, s(1));
    }

    #[test]
    fn shift_examples() {
        let d = example_data();
        let same = d.shift_indicatrix(&[s(0), s(0)]).unwrap();
        assert_eq!(same, d);

        // shifting a round sphere by its center yields Riemannian data
        let rs = d.is_round_sphere().unwrap();
        let shifted = d.shift_indicatrix(&rs.center).unwrap();
        assert!(shifted.v_bi.iter().all(Scalar::is_zero));
        let ratio = shifted.alpha_gram.get(0, 0) / shifted.bi_gram.get(0, 0);
        for i in 0..2 {
            for j in 0..2 {
                assert!((shifted.alpha_gram.get(i, j)
                    - &(&ratio * shifted.bi_gram.get(i, j)))
                    .is_zero());
            }
        }

        // involution
        let x = vec![Scalar::ratio(1, 4), Scalar::ratio(-1, 5)];
        let once = d.shift_indicatrix(&x).unwrap();
        let neg_x: Vec<Scalar> = x.iter().map(|v| -v).collect();
        let back = once.shift_indicatrix(&neg_x).unwrap();
        assert_eq!(back, d);

        // origin exits the ellipsoid
        let ball = make_randers(
            ExactMatrix::identity(2),
            ExactMatrix::identity(2),
            vec![s(0), s(0)],
        )
        .unwrap();
        assert_eq!(
            ball.shift_indicatrix(&[s(1), s(0)]),
            Err(RandersError::ShiftInvalid)
        );
        assert_eq!(
            ball.shift_indicatrix(&[s(2), s(0)]),
            Err(RandersError::ShiftInvalid)
        );
    }

    #[test]
    fn constant_length_riemannian() {
        // bi-invariant Riemannian data: any norm-preserving ad gives zero spread
        let d = make_randers(
            ExactMatrix::identity(2),
            ExactMatrix::identity(2),
            vec![s(0), s(0)],
        )
        .unwrap()
        .to_float();
        let angles: Vec<f64> = (0..40).map(|k| k as f64 * 0.157).collect();
        let rot = |theta: &f64, v: &[f64]| {
            vec![
                theta.cos() * v[0] - theta.sin() * v[1],
                theta.sin() * v[0] + theta.cos() * v[1],
            ]
        };
        let rep = constant_length_test(&d, &[0.6, 0.8], &[0.0, 0.0], &angles, rot).unwrap();
        assert!(rep.variation < 1e-12);
        assert!(rep.degenerate.is_empty());
    }

    #[test]
    fn constant_length_degenerate_and_spread() {
        let d = example_data().to_float();
        let idmap = |_: &usize, v: &[f64]| v.to_vec();
        // X' = X under the identity action: every sample degenerates
        let rep = constant_length_test(&d, &[0.5, 0.5], &[0.5, 0.5], &[0usize, 1], idmap).unwrap();
        assert_eq!(rep.degenerate, vec![0, 1]);
        assert_eq!(rep.variation, 0.0);

        // rotations against an anisotropic metric must show spread
        let aniso = make_randers(
            diag(&[s(2), s(1)]),
            ExactMatrix::identity(2),
            vec![s(0), s(0)],
        )
        .unwrap()
        .to_float();
        let angles: Vec<f64> = (0..40).map(|k| k as f64 * 0.157).collect();
        let rot = |theta: &f64, v: &[f64]| {
            vec![
                theta.cos() * v[0] - theta.sin() * v[1],
                theta.sin() * v[0] + theta.cos() * v[1],
            ]
        };
        let rep = constant_length_test(&aniso, &[1.0, 0.0], &[0.0, 0.0], &angles, rot).unwrap();
        assert!(rep.variation > 1e-3);
    }

    #[test]
    fn json_shape() {
        let d = example_data();
        let j = d.to_json();
        assert_eq!(j["mode"], "exact");
        assert_eq!(j["A"][0][0], "16/9");
        assert_eq!(j["V"][0], "-2/3");
    }
}
