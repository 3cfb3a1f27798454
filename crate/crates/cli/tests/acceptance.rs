//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use thue_core::bounds::{theorem_bound, Theorem};
use thue_core::clustering::{check_clustering_8r, random_hypothesis_case};
use thue_core::dyadic::{CDyadic, Dyadic};
use thue_core::harness::{generate_corpus, run_verification, without_timestamp, CorpusForm, CorpusSpec, Status};
use thue_core::invariants::{approximation_set_s_with, discriminant, mahler_checks, mahler_measure_with};
use thue_core::real::Real;
use thue_core::roots::{find_roots_with, Precision, Target};
use thue_core::solver::{divisor_identity_check, enumerate_box, verify_lewis_mahler};
use thue_core::{BinaryForm, IntMatrix2};

const SPEC: &str = include_str!("data/corpus.spec");
const SPEC_PATH: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/corpus.spec");
const ORACLE: &str = include_str!("../../core/tests/data/bound_oracle.json");

type Outcome = Result<String, String>;

fn bi(n: i64) -> BigInt {
    BigInt::from(n)
}

fn corpus() -> Vec<CorpusForm> {
    let spec: CorpusSpec = SPEC.parse().expect("corpus spec");
    generate_corpus(&spec).expect("corpus")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_squarefree_form(rng: &mut ChaCha8Rng, max_r: u32, bound: i64) -> BinaryForm {
    loop {
        let r = rng.gen_range(3..=max_r);
        let terms: Vec<(u32, BigInt)> = (0..=r)
            .filter_map(|i| {
                let keep = i == 0 || i == r || rng.gen_bool(0.6);
                keep.then(|| (i, bi(rng.gen_range(-bound..=bound))))
            })
            .collect();
        if let Ok(f) = BinaryForm::new(r, terms) {
            if f.degree() == r && f.boundary_nonzero() && !discriminant(&f).unwrap().is_zero() {
                return f;
            }
        }
    }
}

fn exact_discriminant() -> Outcome {
    let f = BinaryForm::from_i64(3, &[(0, 1), (3, -2)]).unwrap();
    let g = BinaryForm::from_i64(3, &[(0, 1), (2, -1), (3, -1)]).unwrap();
    let (df, dg) = (discriminant(&f).unwrap(), discriminant(&g).unwrap());
    ensure(df == bi(-108), || format!("D(x^3 - 2y^3) = {df}"))?;
    ensure(dg == bi(-23), || format!("D(x^3 - xy^2 - y^3) = {dg}"))?;
    const BITS: u32 = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(0xd15c);
    let tol_exp = BigInt::from(10).pow(30);
    for _ in 0..100 {
        let f = random_squarefree_form(&mut rng, 12, 1000);
        let d = discriminant(&f).unwrap();
        let rs = find_roots_with(&f, &Target::Relative(BITS), Precision::default()).map_err(|e| e.to_string())?;
        let r = f.degree() as usize;
        let mut prod = CDyadic::real(Dyadic::from_int(f.coeff(0).pow(2 * r as u32 - 2)));
        for i in 0..r {
            for j in i + 1..r {
                let diff = rs.roots[i].center.sub(&rs.roots[j].center);
                prod = prod.mul_p(&diff.mul_p(&diff, BITS), BITS);
            }
        }
        let tol = Dyadic::from_int(d.abs()).div_p(&Dyadic::from_int(tol_exp.clone()), 64);
        let err = prod.re.sub(&Dyadic::from_int(d.clone())).abs();
        ensure(err < tol && prod.im.abs() < tol, || {
            format!("{f}: root product off from {d}")
        })?;
    }
    Ok("2 exact values, 100 root-product cross-checks".into())
}

/// `sum a_i x^(r-i) y^i` in `i128`; the test sizes keep it exact.
fn eval_i128(c: &[i128], x: i128, y: i128) -> i128 {
    let r = c.len() - 1;
    c.iter()
        .enumerate()
        .map(|(i, &a)| a * x.pow((r - i) as u32) * y.pow(i as u32))
        .sum()
}

fn enumeration_ground_truth() -> Outcome {
    let f = BinaryForm::from_i64(3, &[(0, 1), (3, -2)]).unwrap();
    let res = enumerate_box(&f, &bi(1), 10_000).map_err(|e| e.to_string())?;
    let got: BTreeSet<(i64, i64)> = res
        .solutions
        .iter()
        .map(|s| (s.x.to_i64().unwrap(), s.y.to_i64().unwrap()))
        .collect();
    let want: BTreeSet<(i64, i64)> = [(1, 0), (-1, 0), (1, 1), (-1, -1)].into_iter().collect();
    ensure(got == want, || format!("x^3 - 2y^3: {got:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xe0);
    let b = 300i64;
    for _ in 0..50 {
        let f = random_squarefree_form(&mut rng, 8, 20);
        let h = rng.gen_range(1..=10_000i64);
        let c: Vec<i128> = f.dense().iter().map(|a| a.to_i128().unwrap()).collect();
        let mut naive = Vec::new();
        for y in -b..=b {
            for x in -b..=b {
                if (x, y) != (0, 0) && eval_i128(&c, x as i128, y as i128).abs() <= h as i128 {
                    naive.push((x, y));
                }
            }
        }
        let res = enumerate_box(&f, &bi(h), b as u64).map_err(|e| e.to_string())?;
        let got: Vec<(i64, i64)> = res
            .solutions
            .iter()
            .map(|s| (s.x.to_i64().unwrap(), s.y.to_i64().unwrap()))
            .collect();
        ensure(got == naive, || {
            format!("{f} h={h}: {} vs naive {}", got.len(), naive.len())
        })?;
    }
    Ok("4 solutions in box 10^4; 50 random forms match the naive loop at B = 300".into())
}

fn transform_covariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0);
    let mut n = 0;
    while n < 200 {
        let f = random_squarefree_form(&mut rng, 10, 50);
        let m: Vec<i64> = (0..4).map(|_| rng.gen_range(-6..=6)).collect();
        let a = IntMatrix2::from_i64(m[0], m[1], m[2], m[3]);
        let det = a.det();
        if det.is_zero() || det.abs() > bi(5) {
            continue;
        }
        let fa = f.transform(&a).map_err(|e| e.to_string())?;
        let r = f.degree();
        let want = det.pow(r * (r - 1)) * discriminant(&f).unwrap();
        let got = discriminant(&fa).unwrap();
        ensure(got == want, || format!("{f} by {a:?}"))?;
        n += 1;
    }
    Ok("200 pairs with 1 <= |det A| <= 5".into())
}

fn divisor_identity(corpus: &[CorpusForm]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1);
    let mut total = 0usize;
    for c in corpus.iter().take(50) {
        let h = rng.gen_range(1..=10_000i64);
        let b = rng.gen_range(500..=5000u64);
        let v = divisor_identity_check(&c.form, &bi(h), b).map_err(|e| e.to_string())?;
        ensure(v.holds, || {
            format!("{} h={h} B={b}: {} vs {}", c.form, v.n_box, v.divisor_sum)
        })?;
        total += v.n_box;
    }
    Ok(format!("50 cases, {total} solutions in total"))
}

fn mahler_sandwich(corpus: &[CorpusForm]) -> Outcome {
    for c in corpus {
        let f = &c.form;
        let mm = mahler_measure_with(f, 1e-12, Precision::default()).map_err(|e| format!("{f}: {e}"))?;
        let checks = mahler_checks(f, &mm.ln, &discriminant(f).unwrap());
        ensure(checks.all_hold(), || format!("{f}: {checks:?}"))?;
        let s = approximation_set_s_with(f, Precision::default()).map_err(|e| format!("{f}: {e}"))?;
        ensure(s.len() <= 6 * f.s(), || format!("{f}: |S| = {}", s.len()))?;
    }
    Ok(format!("{} forms", corpus.len()))
}

fn theorem_soundness(corpus: &[CorpusForm]) -> Outcome {
    let irreducible: Vec<CorpusForm> = corpus
        .iter()
        .filter(|c| c.irreducibility == thue_core::irreducible::Irreducibility::Irreducible)
        .cloned()
        .collect();
    ensure(irreducible.len() == 100, || {
        format!("{} certified forms", irreducible.len())
    })?;
    let hs = [bi(1), bi(10), bi(100)];
    let recs = run_verification(&irreducible, &hs, 2000, Precision::default()).map_err(|e| e.to_string())?;
    let (mut t1, mut t3, mut t3_vacuous) = (0, 0, 0);
    for rec in &recs {
        for a in &rec.assertions {
            match (a.name.as_str(), a.status) {
                ("thm1" | "thm3", Status::Fail | Status::Skipped) => {
                    return Err(format!("{} {} h={:?}: {} {}", rec.id, a.name, a.h, a.status, a.detail))
                }
                ("thm1", Status::Pass) => t1 += 1,
                ("thm3", Status::Pass) => t3 += 1,
                ("thm3", Status::Vacuous) => t3_vacuous += 1,
                _ => {}
            }
        }
    }
    ensure(t1 == 300, || format!("{t1} first-theorem checks"))?;
    Ok(format!(
        "{t1} first-theorem and {t3} third-theorem checks pass ({t3_vacuous} with r < 3s)"
    ))
}

fn log_space_fidelity() -> Outcome {
    let cases: Vec<Value> = serde_json::from_str(ORACLE).map_err(|e| e.to_string())?;
    ensure(cases.len() >= 100, || format!("{} oracle tuples", cases.len()))?;
    let worked = cases
        .iter()
        .any(|c| c["r"] == 3 && c["s"] == 3 && c["h"] == "1" && c["abs_disc"] == "108");
    ensure(worked, || "worked tuple missing".into())?;
    let tol = Real::parse("1e-9");
    let big = |v: &Value| v.as_str().unwrap().parse::<BigInt>().unwrap();
    let mut compared = 0;
    for c in &cases {
        let r = c["r"].as_u64().unwrap() as u32;
        let s = c["s"].as_u64().unwrap();
        let (h, d, hh) = (big(&c["h"]), big(&c["abs_disc"]), big(&c["height"]));
        for (which, key) in [
            (Theorem::T1, "t1_log"),
            (Theorem::T2, "t2_log"),
            (Theorem::T3, "t3_log"),
        ] {
            let got = theorem_bound(which, r, s, &h, &d, &hh);
            match (c[key].as_str(), got) {
                (Some(w), Ok(v)) => {
                    let want = Real::parse(w);
                    let rel = ((&v.log_mag - &want) / &want).abs();
                    ensure(rel < tol, || format!("r={r} s={s} h={h} {key}: {} vs {w}", v.log_mag))?;
                    compared += 1;
                }
                (None, Err(_)) => {}
                (w, g) => return Err(format!("r={r} s={s} {key}: oracle {w:?}, got {:?}", g.is_ok())),
            }
        }
    }
    Ok(format!("{} tuples, {compared} bound values within 1e-9", cases.len()))
}

fn clustering() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc1);
    let (mut nonvacuous, mut roots_seen) = (0, 0);
    for _ in 0..100 {
        let (f, a, eps) = random_hypothesis_case(&mut rng, 20);
        let v = check_clustering_8r(&f, &a, &eps, Precision::default()).map_err(|e| e.to_string())?;
        ensure(v.hypothesis_met, || format!("{f:?}: hypothesis not certified"))?;
        ensure(v.holds, || format!("{f:?} a={a} eps={eps}: {v:?}"))?;
        if v.w > 0 {
            nonvacuous += 1;
            roots_seen += v.w;
        }
    }
    Ok(format!(
        "100 certified cases, 0 counterexamples, {nonvacuous} with w >= 1 ({roots_seen} start roots)"
    ))
}

fn lewis_mahler(corpus: &[CorpusForm]) -> Outcome {
    let mut checked = 0;
    for c in corpus {
        let f = &c.form;
        let mm = mahler_measure_with(f, 1e-12, Precision::default()).map_err(|e| e.to_string())?;
        let disc = discriminant(f).unwrap();
        for h in [1, 10, 100] {
            let res = enumerate_box(f, &bi(h), 2000).map_err(|e| e.to_string())?;
            let v = verify_lewis_mahler(f, &res, &mm.ln, &disc, &mm.roots).map_err(|e| e.to_string())?;
            if let Some(bad) = v.iter().find(|x| !x.holds) {
                return Err(format!("{f} h={h}: ({}, {})", bad.x, bad.y));
            }
            checked += v.len();
        }
    }
    Ok(format!("{checked} primitive solutions with y != 0"))
}

fn verify_run(threads: usize, dir: &std::path::Path) -> Result<Value, String> {
    let report = dir.join(format!("report-{threads}.json"));
    let out = Command::new(env!("CARGO_BIN_EXE_thue"))
        .args([
            "verify", "--corpus", SPEC_PATH, "--h", "1,10,100", "--box", "2000", "--report",
        ])
        .arg(&report)
        .args(["--threads", &threads.to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
    })?;
    let text = std::fs::read_to_string(&report).map_err(|e| e.to_string())?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a = verify_run(1, dir.path())?;
    let b = verify_run(4, dir.path())?;
    ensure(a.get("timestamp").is_some(), || "report lacks a timestamp".into())?;
    ensure(without_timestamp(&a) == without_timestamp(&b), || {
        "reports differ".into()
    })?;
    Ok(format!(
        "--threads 1 and --threads 4 agree on {} records",
        a["records"].as_array().map_or(0, |r| r.len())
    ))
}

type Criterion<'a> = (&'static str, u64, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let corpus = corpus();
    let criteria: Vec<Criterion<'_>> = vec![
        ("exact discriminant", 5, Box::new(exact_discriminant)),
        ("enumeration ground truth", 60, Box::new(enumeration_ground_truth)),
        ("transform covariance", 10, Box::new(transform_covariance)),
        ("divisor identity", 120, Box::new(|| divisor_identity(&corpus))),
        (
            "mahler sandwich and |S| <= 6s",
            60,
            Box::new(|| mahler_sandwich(&corpus)),
        ),
        ("theorem soundness", 300, Box::new(|| theorem_soundness(&corpus))),
        ("log-space fidelity", 5, Box::new(log_space_fidelity)),
        ("clustering", 60, Box::new(clustering)),
        ("lewis-mahler on the corpus", 60, Box::new(|| lewis_mahler(&corpus))),
        ("determinism", 600, Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > Duration::from_secs(*limit) => Err(format!("{d}; over the {limit} s budget")),
            o => o,
        };
        match outcome {
            Ok(d) => println!("PASS {:>2} {name} ({:.2} s): {d}", i + 1, took.as_secs_f64()),
            Err(d) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({:.2} s): {d}", i + 1, took.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
