use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use randers_cw::exactlin::{ExactMatrix, Scalar};
use randers_cw::liegroup::{
    adjoint, algebra_basis, coords, from_coords, haar_sample, lemgeo_solve, AlgebraElement,
    Family,
};
use randers_cw::quadric::{
    center_forced, center_forced_in_subspace, midpoint_affine_certify_closed, strided_order,
    symmetric_span_certify, CenterCertificate, Verdict,
};
use randers_cw::randers::{
    constant_length_test, make_randers, navigation_to_randers, RandersData, RandersDataF,
};
use randers_cw::rootsys::{build_root_system, weyl_orbit, LieType, RootSystem};
use randers_cw::strata::{enumerate_strata, is_generic, multiplicity_type};

#[derive(Parser)]
#[command(name = "randers-cw", version, about = "Weyl-orbit ellipsoid certification and Randers metric laboratory")]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Seed for all randomized subcommands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Floating-point tolerance where applicable
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Sample count for randomized subcommands
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct TypeArgs {
    /// Lie family: A, D, or E6
    #[arg(long = "type", value_name = "FAMILY")]
    family: String,
    /// Rank (ignored for E6)
    #[arg(long)]
    rank: Option<usize>,
}

impl TypeArgs {
    fn lie_type(&self) -> Result<LieType, String> {
        match (self.family.as_str(), self.rank) {
            ("A" | "a", Some(n)) => LieType::A(n).validate().map_err(|e| e.to_string()),
            ("D" | "d", Some(n)) => LieType::D(n).validate().map_err(|e| e.to_string()),
            ("E6" | "e6", _) => Ok(LieType::E6),
            ("A" | "a" | "D" | "d", None) => Err("--rank is required for families A and D".into()),
            (other, _) => Err(format!("unknown family {other:?}")),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate the Weyl orbit of a Cartan point
    Orbit {
        #[command(flatten)]
        ty: TypeArgs,
        /// Comma-separated exact coordinates, e.g. "1,0,-1" or "1/2+1/2r3,..."
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Print every orbit point
        #[arg(long)]
        list: bool,
    },
    /// Certify that every ellipsoid through the orbit is centered at 0
    Certify {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Tabulate eigenvalue-multiplicity strata with codimensions
    Strata {
        #[command(flatten)]
        ty: TypeArgs,
    },
    /// Sampled constant-length test for a Killing-field candidate
    Killing {
        /// Matrix group family: su or so
        #[arg(long)]
        group: String,
        /// Matrix size n
        #[arg(long)]
        n: usize,
        /// Path to a RandersData JSON file
        #[arg(long)]
        data: String,
        /// Coordinates of X in the orthonormal algebra basis
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Coordinates of X' in the orthonormal algebra basis
        #[arg(long, allow_hyphen_values = true)]
        xp: String,
        /// Exit 1 if the variation exceeds the tolerance
        #[arg(long)]
        expect_constant: bool,
    },
    /// Two-sided geodesic decomposition solver
    Lemgeo {
        /// Matrix group family: su or so
        #[arg(long, default_value = "su")]
        group: String,
        /// Matrix size n
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Coordinates of the unit direction X in the algebra basis
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Geodesic parameter t0
        #[arg(long)]
        t0: f64,
        /// Coordinates of the drift V (default zero)
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
    },
    /// Round-sphere decision and navigation round trip
    Roundness {
        /// Gram matrix A, rows separated by ';', e.g. "16/9,0;0,4/3"
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// Bi-invariant Gram matrix B (default identity)
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// Vector V for make_randers
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        /// Navigation vector W: builds data via navigation and verifies the round trip
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        /// Expected verdict: round or none
        #[arg(long)]
        expect: Option<String>,
    },
}

fn parse_point(s: &str) -> Result<Vec<Scalar>, String> {
    s.split(',')
        .map(|tok| tok.trim().parse::<Scalar>().map_err(|e| e.to_string()))
        .collect()
}

fn parse_matrix(s: &str) -> Result<ExactMatrix, String> {
    let rows: Result<Vec<Vec<Scalar>>, String> = s.split(';').map(parse_point).collect();
    ExactMatrix::from_rows(rows?).map_err(|e| e.to_string())
}

fn family_of(s: &str) -> Result<Family, String> {
    match s {
        "su" | "SU" => Ok(Family::Su),
        "so" | "SO" => Ok(Family::So),
        other => Err(format!("unknown group family {other:?}")),
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

/// Runs every applicable certifier and checks they agree.
fn run_certifiers(
    rs: &RootSystem,
    point: &[Scalar],
) -> Result<(CenterCertificate, Vec<CenterCertificate>), String> {
    if rs.lie_type == LieType::E6 {
        // stream the (possibly huge) orbit; the certifier exits early once
        // the quadric space pins the center
        let iter = rs.orbit_iter(point).map_err(|e| e.to_string())?;
        let cert = center_forced(iter).map_err(|e| e.to_string())?;
        return Ok((cert, Vec::new()));
    }
    let orbit = weyl_orbit(rs, point).map_err(|e| e.to_string())?;
    let nullspace = match rs.lie_type {
        LieType::A(_) => center_forced_in_subspace(strided_order(&orbit.points), &rs.simple_roots),
        _ => center_forced(strided_order(&orbit.points)),
    }
    .map_err(|e| e.to_string())?;
    let mut others = Vec::new();
    others.push(symmetric_span_certify(&orbit.points, rs.lie_type.rank()));
    others.push(
        midpoint_affine_certify_closed(&orbit.points, &rs.roots).map_err(|e| e.to_string())?,
    );
    for o in &others {
        if o.verdict != Verdict::NotApplicable && o.verdict != nullspace.verdict {
            return Err(format!(
                "certifier disagreement: {} says {}, NULLSPACE says {}",
                o.method.as_str(),
                o.verdict.as_str(),
                nullspace.verdict.as_str()
            ));
        }
    }
    Ok((nullspace, others))
}

fn load_randers_float(path: &str) -> Result<(RandersDataF, Vec<Vec<f64>>), String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let mode = v["mode"].as_str().unwrap_or("exact");
    let read_exact_mat = |key: &str| -> Result<ExactMatrix, String> {
        let rows = v[key]
            .as_array()
            .ok_or_else(|| format!("missing matrix {key}"))?;
        let mut out = Vec::new();
        for row in rows {
            let row = row.as_array().ok_or("ragged matrix")?;
            let mut r = Vec::new();
            for cell in row {
                r.push(
                    cell.as_str()
                        .ok_or("exact mode expects string entries")?
                        .parse::<Scalar>()
                        .map_err(|e| e.to_string())?,
                );
            }
            out.push(r);
        }
        ExactMatrix::from_rows(out).map_err(|e| e.to_string())
    };
    match mode {
        "exact" => {
            let a = read_exact_mat("A")?;
            let b = read_exact_mat("B")?;
            let vvec: Result<Vec<Scalar>, String> = v["V"]
                .as_array()
                .ok_or("missing V")?
                .iter()
                .map(|c| {
                    c.as_str()
                        .ok_or_else(|| "exact mode expects string entries".to_string())?
                        .parse::<Scalar>()
                        .map_err(|e| e.to_string())
                })
                .collect();
            let d = make_randers(a, b.clone(), vvec?).map_err(|e| e.to_string())?;
            let n = d.n;
            let bf = (0..n)
                .map(|i| (0..n).map(|j| b.get(i, j).to_f64()).collect())
                .collect();
            Ok((d.to_float(), bf))
        }
        "float" => {
            let read_mat = |key: &str| -> Result<Vec<Vec<f64>>, String> {
                v[key]
                    .as_array()
                    .ok_or_else(|| format!("missing matrix {key}"))?
                    .iter()
                    .map(|row| {
                        row.as_array()
                            .ok_or_else(|| "ragged matrix".to_string())?
                            .iter()
                            .map(|c| c.as_f64().ok_or_else(|| "non-numeric entry".to_string()))
                            .collect()
                    })
                    .collect()
            };
            let a = read_mat("A")?;
            let b = read_mat("B")?;
            let vv: Vec<f64> = v["V"]
                .as_array()
                .ok_or("missing V")?
                .iter()
                .map(|c| c.as_f64().ok_or_else(|| "non-numeric entry".to_string()))
                .collect::<Result<_, _>>()?;
            let n = vv.len();
            let mut w = vec![0.0; n];
            for i in 0..n {
                for j in 0..n {
                    w[i] += b[i][j] * vv[j];
                }
            }
            Ok((RandersDataF { n, a, w }, b))
        }
        other => Err(format!("unknown mode {other:?}")),
    }
}

fn parse_floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|tok| tok.trim().parse::<f64>().map_err(|e| e.to_string()))
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => usage_error(&msg),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match &cli.cmd {
        Cmd::Orbit { ty, point, list } => {
            let t = ty.lie_type()?;
            let rs = build_root_system(t).map_err(|e| e.to_string())?;
            let p = parse_point(point)?;
            let orbit = weyl_orbit(&rs, &p).map_err(|e| e.to_string())?;
            let mt = multiplicity_type(t, &p).map_err(|e| e.to_string())?;
            let generic = is_generic(t, &p, &rs).map_err(|e| e.to_string())?;
            if cli.json {
                let mut out = json!({
                    "family": t.family_char().to_string(),
                    "rank": t.rank(),
                    "point": p.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "orbit_size": orbit.points.len(),
                    "multiplicity_parts": mt.parts,
                    "generic": generic,
                    "seed": cli.seed,
                    "tol": cli.tol,
                });
                if *list {
                    out["points"] = orbit
                        .points
                        .iter()
                        .map(|q| q.iter().map(|s| s.to_string()).collect::<Vec<_>>())
                        .collect::<Vec<_>>()
                        .into();
                }
                println!("{out}");
            } else {
                println!("orbit size: {}", orbit.points.len());
                println!("generic: {generic}");
                if *list {
                    for q in &orbit.points {
                        let row: Vec<String> = q.iter().map(|s| s.to_string()).collect();
                        println!("  ({})", row.join(", "));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Certify { ty, point } => {
            let t = ty.lie_type()?;
            let rs = build_root_system(t).map_err(|e| e.to_string())?;
            let p = parse_point(point)?;
            let (main_cert, others) = run_certifiers(&rs, &p)?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "certificate": main_cert.to_json(),
                        "methods": others.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                        "seed": cli.seed,
                        "tol": cli.tol,
                    })
                );
            } else {
                println!("verdict: {}", main_cert.verdict.as_str());
                for c in std::iter::once(&main_cert).chain(others.iter()) {
                    println!("  {}: {}", c.method.as_str(), c.verdict.as_str());
                }
            }
            match main_cert.verdict {
                Verdict::CertifiedCentered => Ok(ExitCode::SUCCESS),
                Verdict::Counterexample => Ok(ExitCode::from(1)),
                Verdict::NotApplicable => Ok(ExitCode::from(2)),
            }
        }
        Cmd::Strata { ty } => {
            let t = ty.lie_type()?;
            let reports = enumerate_strata(t).map_err(|e| e.to_string())?;
            let min_nongeneric = reports
                .iter()
                .filter(|r| !r.generic)
                .map(|r| r.codim)
                .min();
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "rows": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                        "min_nongeneric_codim": min_nongeneric,
                        "rank_plus_one": t.rank() + 1,
                        "seed": cli.seed,
                        "tol": cli.tol,
                    })
                );
            } else {
                println!("{:<6} {:<16} {:>6} {:>8}", "n0", "parts", "codim", "generic");
                for r in &reports {
                    println!(
                        "{:<6} {:<16} {:>6} {:>8}",
                        r.mtype.n0,
                        format!("{:?}", r.mtype.parts),
                        r.codim,
                        r.generic
                    );
                }
                if let Some(m) = min_nongeneric {
                    println!("min non-generic codim: {m} (rank+1 = {})", t.rank() + 1);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Killing {
            group,
            n,
            data,
            x,
            xp,
            expect_constant,
        } => {
            if cli.samples == 0 {
                return Err("sample count must be positive".into());
            }
            let family = family_of(group)?;
            let (d, _) = load_randers_float(data)?;
            let basis = algebra_basis(family, *n);
            if d.n != basis.len() {
                return Err(format!(
                    "RandersData dimension {} does not match algebra dimension {}",
                    d.n,
                    basis.len()
                ));
            }
            let xc = parse_floats(x)?;
            let xpc = parse_floats(xp)?;
            let samples: Vec<_> = (0..cli.samples)
                .map(|k| haar_sample(family, *n, cli.seed.wrapping_add(k as u64)))
                .collect();
            let ad = |g: &randers_cw::liegroup::GroupElement, v: &[f64]| {
                let xm = from_coords(&basis, v);
                let moved = adjoint(g, &xm).expect("matching shapes");
                coords(&moved, &basis)
            };
            let rep = constant_length_test(&d, &xc, &xpc, &samples, ad)
                .map_err(|e| e.to_string())?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "min": rep.min,
                        "max": rep.max,
                        "variation": rep.variation,
                        "degenerate": rep.degenerate,
                        "samples": cli.samples,
                        "seed": cli.seed,
                        "tol": cli.tol,
                    })
                );
            } else {
                println!(
                    "min {:.12e}  max {:.12e}  variation {:.12e}",
                    rep.min, rep.max, rep.variation
                );
            }
            if *expect_constant && rep.variation > cli.tol {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Lemgeo {
            group,
            n,
            x,
            t0,
            v,
            max_iter,
        } => {
            let family = family_of(group)?;
            let basis = algebra_basis(family, *n);
            let xc = parse_floats(x)?;
            if xc.len() != basis.len() {
                return Err("X coordinate count does not match algebra dimension".into());
            }
            let xel = from_coords(&basis, &xc);
            let vel = match v {
                Some(s) => from_coords(&basis, &parse_floats(s)?),
                None => AlgebraElement::zero(family, *n),
            };
            match lemgeo_solve(&xel, *t0, &vel, cli.tol, *max_iter) {
                Ok(rep) => {
                    if cli.json {
                        println!(
                            "{}",
                            json!({
                                "t_prime": rep.t_prime,
                                "x_prime": coords(&rep.x_prime, &basis),
                                "iterations": rep.iterations,
                                "ratios": rep.ratios,
                                "residual": rep.residual,
                                "seed": cli.seed,
                                "tol": cli.tol,
                            })
                        );
                    } else {
                        println!(
                            "t' = {:.12}  iterations = {}  residual = {:.3e}",
                            rep.t_prime, rep.iterations, rep.residual
                        );
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Cmd::Roundness { a, b, v, w, expect } => {
            let data: RandersData = if let Some(wstr) = w {
                let wv = parse_point(wstr)?;
                let bg = match b {
                    Some(s) => parse_matrix(s)?,
                    None => ExactMatrix::identity(wv.len()),
                };
                navigation_to_randers(bg, wv).map_err(|e| e.to_string())?
            } else {
                let astr = a.as_ref().ok_or("provide either --w or --a and --v")?;
                let vstr = v.as_ref().ok_or("provide either --w or --a and --v")?;
                let am = parse_matrix(astr)?;
                let vv = parse_point(vstr)?;
                let bg = match b {
                    Some(s) => parse_matrix(s)?,
                    None => ExactMatrix::identity(vv.len()),
                };
                make_randers(am, bg, vv).map_err(|e| e.to_string())?
            };
            let sphere = data.is_round_sphere();
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "round": sphere.is_some(),
                        "center": sphere.as_ref().map(|s| s
                            .center
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()),
                        "radius_sq": sphere.as_ref().map(|s| s.radius_sq.to_string()),
                        "data": data.to_json(),
                        "seed": cli.seed,
                        "tol": cli.tol,
                    })
                );
            } else {
                match &sphere {
                    Some(s) => {
                        let c: Vec<String> = s.center.iter().map(|x| x.to_string()).collect();
                        println!("round sphere: center ({}), r^2 = {}", c.join(", "), s.radius_sq);
                    }
                    None => println!("not a round sphere"),
                }
            }
            match expect.as_deref() {
                Some("round") => Ok(if sphere.is_some() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }),
                Some("none") => Ok(if sphere.is_none() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }),
                Some(other) => Err(format!("unknown expectation {other:?}")),
                None => Ok(ExitCode::SUCCESS),
            }
        }
    }
}
