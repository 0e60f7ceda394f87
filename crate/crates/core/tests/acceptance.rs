//! Acceptance gate: one test per criterion, each ending in a single
//! PASS line. `cargo test --test acceptance` runs the whole gate.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use randers_cw::exactlin::{ExactMatrix, Scalar};
use randers_cw::liegroup::{
    adjoint, algebra_basis, bi_inner, coords, from_coords, group_exp, group_log, haar_sample,
    lemgeo_solve, AlgebraElement, Family, GroupElement,
};
use randers_cw::quadric::{
    center_forced, center_forced_in_subspace, midpoint_affine_certify_closed, strided_order,
    subspace_coordinates, symmetric_span_certify, Verdict,
};
use randers_cw::randers::{
    constant_length_test, make_randers, navigation_to_randers, RandersData, RandersDataF,
};
use randers_cw::rootsys::{build_root_system, norm2, weyl_orbit, LieType, RootSystem};
use randers_cw::strata::{enumerate_strata, MultiplicityType};

fn s(v: i64) -> Scalar {
    Scalar::from_int(v)
}

fn rand_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let num = rng.gen_range(-5i64..=5);
    let den = rng.gen_range(1i64..=3);
    Scalar::ratio(num, den)
}

fn ones(mt: &MultiplicityType) -> usize {
    mt.parts.iter().filter(|&&p| p == 1).count()
}

#[test]
fn criterion_1_stratification_a() {
    for n in 2..=6usize {
        let strata = enumerate_strata(LieType::A(n)).unwrap();
        for r in &strata {
            if ones(&r.mtype) < 2 {
                assert!(
                    r.codim >= n + 1,
                    "A_{n}: type {:?} has codim {} < {}",
                    r.mtype.parts,
                    r.codim,
                    n + 1
                );
            }
        }
    }
    println!("PASS: criterion 1 (A-family strata: <2 simple eigenvalues forces codim >= n+1)");
}

#[test]
fn criterion_2_stratification_d() {
    let expected = [(3usize, 6usize), (5, 28), (7, 66)];
    for (n, special) in expected {
        let strata = enumerate_strata(LieType::D(n)).unwrap();
        for r in &strata {
            if !r.generic {
                assert!(
                    r.codim >= n + 1,
                    "D_{n}: type n0={} {:?} has codim {} < {}",
                    r.mtype.n0,
                    r.mtype.parts,
                    r.codim,
                    n + 1
                );
            }
        }
        let row = strata
            .iter()
            .find(|r| r.mtype.n0 == 2 * n - 2 && r.mtype.parts == vec![1])
            .expect("m=1, n_1=1 stratum present");
        assert_eq!(row.codim, special, "D_{n} single-eigenvalue row");
        assert_eq!(special, (n - 1) * (2 * n - 3));
    }
    println!("PASS: criterion 2 (D-family strata: non-generic codim >= n+1; (n-1)(2n-3) rows)");
}

fn random_generic_point(rng: &mut ChaCha8Rng, t: LieType, rs: &RootSystem) -> Vec<Scalar> {
    loop {
        let mut x: Vec<Scalar> = (0..t.ambient_dim()).map(|_| rand_rational(rng)).collect();
        if let LieType::A(n) = t {
            let sum = x.iter().fold(Scalar::zero(), |acc, v| acc + v);
            let adjust = &sum / &Scalar::from_int((n + 1) as i64);
            for e in &mut x {
                *e = &*e - &adjust;
            }
        }
        if x.iter().all(Scalar::is_zero) {
            continue;
        }
        if randers_cw::strata::is_generic(t, &x, rs).unwrap() {
            return x;
        }
    }
}

#[test]
fn criterion_3_certifier_concordance() {
    let types = [
        LieType::A(2),
        LieType::A(3),
        LieType::A(4),
        LieType::A(5),
        LieType::D(3),
        LieType::D(5),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for t in types {
        let rs = build_root_system(t).unwrap();
        for _ in 0..100 {
            let x = random_generic_point(&mut rng, t, &rs);
            let orbit = weyl_orbit(&rs, &x).unwrap();
            let nullspace = match t {
                LieType::A(_) => {
                    center_forced_in_subspace(strided_order(&orbit.points), &rs.simple_roots)
                }
                _ => center_forced(strided_order(&orbit.points)),
            }
            .unwrap();
            assert_eq!(
                nullspace.verdict,
                Verdict::CertifiedCentered,
                "{t:?} generic point {x:?} not NULLSPACE-certified"
            );
            let midpoint = midpoint_affine_certify_closed(&orbit.points, &rs.roots).unwrap();
            if midpoint.verdict != Verdict::NotApplicable {
                assert_eq!(
                    midpoint.verdict,
                    Verdict::CertifiedCentered,
                    "{t:?}: MIDPOINT_AFFINE disagrees on {x:?}"
                );
            }
        }
        // the (2, -1, ..., -1) counterexample family
        if let LieType::A(n) = t {
            let mut x = vec![s(2)];
            x.extend(std::iter::repeat(Scalar::ratio(-2, n as i64)).take(n));
            let orbit = weyl_orbit(&rs, &x).unwrap();
            let cert =
                center_forced_in_subspace(strided_order(&orbit.points), &rs.simple_roots).unwrap();
            assert_eq!(cert.verdict, Verdict::Counterexample, "A_{n} (2,-1,..)-type");
            let witness = cert.witness.expect("counterexample carries a witness");
            // exact verification in intrinsic coordinates: the witness is a
            // positive-definite quadric through every orbit point with an
            // off-origin center
            assert!(witness.a.is_positive_definite().unwrap());
            assert!(witness.b.iter().any(|v| !v.is_zero()));
            let coords = subspace_coordinates(&orbit.points, &rs.simple_roots).unwrap();
            for c in &coords {
                assert!(witness.eval(c).is_zero(), "witness misses an orbit point");
            }
            let center = witness.center().expect("positive definite quadric");
            assert!(center.iter().any(|v| !v.is_zero()), "witness center at 0");
        }
    }
    println!("PASS: criterion 3 (600 generic certifications concordant; exact counterexamples)");
}

#[test]
fn criterion_4_minus_id_path() {
    let rs = build_root_system(LieType::D(4)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut points: Vec<Vec<Scalar>> = vec![vec![s(3); 4]]; // fully degenerate (a,a,a,a)
    while points.len() < 50 {
        let x: Vec<Scalar> = (0..4).map(|_| rand_rational(&mut rng)).collect();
        if x.iter().all(Scalar::is_zero) {
            continue;
        }
        points.push(x);
    }
    for x in &points {
        let orbit = weyl_orbit(&rs, x).unwrap();
        let cert = symmetric_span_certify(&orbit.points, 4);
        assert_eq!(
            cert.verdict,
            Verdict::CertifiedCentered,
            "D_4 point {x:?} not certified by SYMMETRIC_SPAN"
        );
    }
    println!("PASS: criterion 4 (D_4 orbits certified via SYMMETRIC_SPAN, degenerate included)");
}

fn random_three_distinct_sum_zero(rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    loop {
        // pick a multiplicity pattern with >= 3 blocks and solve the last
        // value from the zero-sum constraint
        let patterns: [&[usize]; 4] = [&[1, 1, 1, 1, 1, 1], &[2, 2, 2], &[3, 2, 1], &[4, 1, 1]];
        let shape = patterns[rng.gen_range(0..patterns.len())];
        let mut values: Vec<Scalar> = Vec::new();
        for _ in 0..shape.len() - 1 {
            values.push(rand_rational(rng));
        }
        let partial: Scalar = values
            .iter()
            .zip(shape)
            .map(|(v, &m)| v * &Scalar::from_int(m as i64))
            .fold(Scalar::zero(), |acc, v| acc + &v);
        let last_mult = *shape.last().unwrap() as i64;
        values.push(-&(&partial / &Scalar::from_int(last_mult)));
        let mut distinct: Vec<&Scalar> = Vec::new();
        for v in &values {
            if !distinct.contains(&v) {
                distinct.push(v);
            }
        }
        if distinct.len() < 3 {
            continue;
        }
        let mut x = Vec::with_capacity(6);
        for (v, &m) in values.iter().zip(shape) {
            for _ in 0..m {
                x.push(v.clone());
            }
        }
        return x;
    }
}

#[test]
fn criterion_5_e6() {
    let rs = build_root_system(LieType::E6).unwrap();
    assert_eq!(rs.roots.len(), 72);

    // regular-orbit size, cross-checked from two independent base points
    for base in [
        vec![s(1), s(2), s(3), s(4), s(5), s(6)],
        vec![
            Scalar::ratio(1, 2),
            s(-3),
            s(7),
            s(10),
            s(2),
            Scalar::ratio(5, 3),
        ],
    ] {
        let orbit = weyl_orbit(&rs, &base).unwrap();
        assert_eq!(orbit.points.len(), 51840, "regular orbit size from {base:?}");
    }

    let a5 = build_root_system(LieType::A(5)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let x = random_three_distinct_sum_zero(&mut rng);
        // the permutation sub-orbit with the A_5 midpoint certifier
        let perm_orbit = weyl_orbit(&a5, &x).unwrap();
        let mid = midpoint_affine_certify_closed(&perm_orbit.points, &a5.roots).unwrap();
        assert_eq!(
            mid.verdict,
            Verdict::CertifiedCentered,
            "A_5 midpoint fails on {x:?}"
        );
        // the full E6 orbit with the streaming null-space certifier
        let cert = center_forced(rs.orbit_iter(&x).unwrap()).unwrap();
        assert_eq!(
            cert.verdict,
            Verdict::CertifiedCentered,
            "E6 NULLSPACE fails on {x:?}"
        );
    }
    println!("PASS: criterion 5 (E6: 72 roots, orbit 51840 twice, 20 points doubly certified)");
}

fn random_small_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    (0..n)
        .map(|_| {
            let num = rng.gen_range(-4i64..=4);
            let den = rng.gen_range(5i64..=9);
            Scalar::ratio(num, den * n as i64)
        })
        .collect()
}

#[test]
fn criterion_6_randers_roundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(123);
    let dims = [2usize, 3, 5];
    // navigation round trips, exact
    for k in 0..1000 {
        let n = dims[k % dims.len()];
        let w = random_small_vector(&mut rng, n);
        let d = navigation_to_randers(ExactMatrix::identity(n), w.clone()).unwrap();
        let sphere = d.is_round_sphere().expect("navigation data is round");
        assert_eq!(sphere.center, w);
        assert_eq!(sphere.radius_sq, s(1));
    }
    // non-proportional (A, V) must be rejected
    let mut rejected = 0;
    for k in 0..1000 {
        let n = dims[k % dims.len()];
        // diagonal A with two distinct entries keeps A - ww^T away from
        // multiples of I for small V
        let mut diag: Vec<Scalar> = (0..n)
            .map(|_| Scalar::ratio(rng.gen_range(2i64..=6), 1))
            .collect();
        diag[0] = &diag[0] + &s(7);
        let a = ExactMatrix::from_fn(n, n, |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                Scalar::zero()
            }
        });
        let v = random_small_vector(&mut rng, n);
        let d = make_randers(a, ExactMatrix::identity(n), v).unwrap();
        if d.is_round_sphere().is_none() {
            rejected += 1;
        }
    }
    assert_eq!(rejected, 1000);
    println!("PASS: criterion 6 (1000 exact navigation round trips; 1000 non-round rejections)");
}

fn unit_direction(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

fn su_ad_in_coords<'a>(
    basis: &'a [AlgebraElement],
) -> impl Fn(&GroupElement, &[f64]) -> Vec<f64> + 'a {
    move |g, v| {
        let x = from_coords(basis, v);
        coords(&adjoint(g, &x).expect("compatible"), basis)
    }
}

#[test]
fn criterion_7_su3_constant_length() {
    let basis = algebra_basis(Family::Su, 3);
    let dim = basis.len();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let samples: Vec<GroupElement> = (0..200).map(|k| haar_sample(Family::Su, 3, 5000 + k)).collect();

    // round sphere from navigation data
    let w = random_small_vector(&mut rng, dim);
    let d_exact = navigation_to_randers(ExactMatrix::identity(dim), w.clone()).unwrap();
    let sphere = d_exact.is_round_sphere().unwrap();
    let d = d_exact.to_float();
    let x_prime: Vec<f64> = sphere.center.iter().map(|c| -c.to_f64()).collect();
    let ad = su_ad_in_coords(&basis);
    for _ in 0..50 {
        let x = unit_direction(&mut rng, dim); // |X|_B = r = 1
        let rep = constant_length_test(&d, &x, &x_prime, &samples, &ad).unwrap();
        assert!(
            rep.variation < 1e-9,
            "round-sphere variation {} too large",
            rep.variation
        );
    }

    // non-round perturbation: A = B + 0.1 * E_11
    let mut a = vec![vec![0.0; dim]; dim];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    a[0][0] += 0.1;
    let nonround = RandersDataF {
        n: dim,
        a,
        w: vec![0.0; dim],
    };
    let mut spread = 0;
    for _ in 0..50 {
        let x = unit_direction(&mut rng, dim);
        let rep = constant_length_test(&nonround, &x, &vec![0.0; dim], &samples, &ad).unwrap();
        if rep.variation > 1e-3 {
            spread += 1;
        }
    }
    assert!(spread >= 45, "only {spread}/50 directions show variation > 1e-3");
    println!("PASS: criterion 7 (SU(3): 50 round directions constant; {spread}/50 non-round spread)");
}

#[test]
fn criterion_8_lemgeo_su2() {
    let basis = algebra_basis(Family::Su, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(31337);
    let speeds = [0.0, 0.1, 0.3, 0.5];
    let t0 = 1.5 * std::f64::consts::PI * 2.0f64.sqrt();
    for k in 0..20 {
        let vn = speeds[k % speeds.len()];
        let x = from_coords(&basis, &unit_direction(&mut rng, 3));
        let v = if vn == 0.0 {
            AlgebraElement::zero(Family::Su, 2)
        } else {
            let dir = unit_direction(&mut rng, 3);
            from_coords(&basis, &dir.iter().map(|c| c * vn).collect::<Vec<_>>())
        };
        let rep = lemgeo_solve(&x, t0, &v, 1e-12, 500).unwrap();
        assert!(rep.residual < 1e-10, "config {k}: residual {}", rep.residual);
        assert!(rep.t_prime < t0);
        for r in &rep.ratios {
            assert!(
                *r <= vn + 0.05,
                "config {k}: contraction ratio {r} > {}",
                vn + 0.05
            );
        }
    }
    println!("PASS: criterion 8 (20 SU(2) solver configs: residual < 1e-10, contraction bound)");
}

#[test]
fn criterion_9_cross_module_invariants() {
    for seed in [11u64, 22, 33] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);

        // orbit norm constancy
        for t in [LieType::A(3), LieType::D(4)] {
            let rs = build_root_system(t).unwrap();
            let x = random_generic_point(&mut rng, t, &rs);
            let r2 = norm2(&x);
            for p in weyl_orbit(&rs, &x).unwrap().points {
                assert_eq!(norm2(&p), r2, "orbit left its sphere");
            }
        }

        // exp/log inversion and Ad-invariance of the pairing
        for (family, n) in [(Family::Su, 2), (Family::Su, 3), (Family::So, 4)] {
            let basis = algebra_basis(family, n);
            let c: Vec<f64> = (0..basis.len()).map(|_| rng.gen_range(-0.4..0.4)).collect();
            let x = from_coords(&basis, &c);
            let back = group_log(&group_exp(&x)).unwrap();
            let diff = (&back.m - &x.m).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(diff < 1e-11, "exp/log inversion drift {diff}");

            let y = from_coords(&basis, &unit_direction(&mut rng, basis.len()));
            let g = haar_sample(family, n, seed.wrapping_mul(77).wrapping_add(n as u64));
            let lhs = bi_inner(
                &adjoint(&g, &x).unwrap(),
                &adjoint(&g, &y).unwrap(),
            )
            .unwrap();
            let rhs = bi_inner(&x, &y).unwrap();
            assert!((lhs - rhs).abs() < 1e-10, "Ad-invariance violated");
        }

        // quadric-evaluation exactness on the indicatrix
        let w = random_small_vector(&mut rng, 3);
        let d = navigation_to_randers(ExactMatrix::identity(3), w.clone()).unwrap();
        let q = d.indicatrix_quadric();
        // rational unit vectors: signed axes and a (3/5, 4/5) pair
        let units = [
            vec![s(1), s(0), s(0)],
            vec![s(0), s(-1), s(0)],
            vec![Scalar::ratio(3, 5), Scalar::ratio(4, 5), s(0)],
            vec![s(0), Scalar::ratio(-4, 5), Scalar::ratio(3, 5)],
        ];
        for e in units {
            let y: Vec<Scalar> = w.iter().zip(&e).map(|(wi, ei)| wi + ei).collect();
            assert!(q.eval(&y).is_zero(), "indicatrix point off the quadric");
        }

        // shift involution on exact data
        let d2: RandersData = navigation_to_randers(
            ExactMatrix::identity(3),
            random_small_vector(&mut rng, 3),
        )
        .unwrap();
        let shift = random_small_vector(&mut rng, 3);
        let neg: Vec<Scalar> = shift.iter().map(|v| -v).collect();
        let back = d2
            .shift_indicatrix(&shift)
            .unwrap()
            .shift_indicatrix(&neg)
            .unwrap();
        assert_eq!(back, d2, "shift involution broke");
    }
    println!("PASS: criterion 9 (cross-module invariants hold under 3 seeds)");
}
