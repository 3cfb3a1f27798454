//! `thue`: invariants, bounds, box enumeration and corpus verification for
//! Thue inequalities `|F(x,y)| <= h`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use thue_core::bounds::{theorem_bound, BoundInputs, BoundReport, Theorem};
use thue_core::clustering::{check_clustering_8r, check_clustering_9rt, random_window};
use thue_core::harness::{aggregate, corpus_to_text, generate_corpus, report_json, run_verification, CorpusSpec};
use thue_core::invariants::{approximation_set_s_with, discriminant, mahler_measure_with, s_of_f_from, t_of_f, TMode};
use thue_core::irreducible::certify_irreducible;
use thue_core::roots::{find_roots_poly, Precision, Target};
use thue_core::solver::enumerate_box;
use thue_core::{parse_form, BinaryForm, Error};

#[derive(Parser)]
#[command(
    name = "thue",
    version,
    about = "Explicit bounds and box enumeration for Thue inequalities"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Precision ceiling in bits for certified root finding.
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print r, s, content, H, |D|, M, S(F), T(F) and |S| of a form.
    Invariants { formfile: PathBuf },
    /// Evaluate the bound report, or one theorem bound.
    Bound {
        formfile: PathBuf,
        #[arg(long)]
        h: BigInt,
        /// 1, 2 or 3.
        #[arg(long)]
        theorem: Option<Theorem>,
    },
    /// List all solutions of |F(x,y)| <= h with max(|x|,|y|) <= box.
    Enumerate {
        formfile: PathBuf,
        #[arg(long)]
        h: BigInt,
        #[arg(long = "box")]
        box_bound: u64,
        /// Write the full result as JSON here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Generate a corpus and run every check on it.
    Verify {
        #[arg(long)]
        corpus: PathBuf,
        /// Comma-separated list of h values.
        #[arg(long, value_delimiter = ',', required = true)]
        h: Vec<BigInt>,
        #[arg(long = "box")]
        box_bound: u64,
        #[arg(long)]
        report: PathBuf,
    },
    /// Write the corpus described by a spec file, one form per line.
    Generate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the root-clustering inequalities on random windows of one polynomial.
    ClusterCheck {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit status for a failed command: refusals and bad input are usage errors.
fn failure_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::PrecisionCeiling(_) | Error::Undecidable(_) | Error::TheoremViolation(_)) => 1,
        _ => 2,
    }
}

fn read_form(path: &Path) -> Result<BinaryForm> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let line = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    Ok(parse_form(line)?)
}

fn precision(bits: Option<u32>) -> Precision {
    let mut p = Precision::default();
    if let Some(b) = bits {
        p.max_bits = b.max(64);
        p.start_bits = p.start_bits.min(p.max_bits);
    }
    p
}

fn invariants(path: &Path, prec: Precision) -> Result<bool> {
    let f = read_form(path)?;
    f.check_thue_degree()?;
    let d = discriminant(&f)?;
    println!("form = {f}");
    println!("r = {}", f.degree());
    println!("s = {}", f.s());
    println!("content = {}", f.content());
    println!("H = {}", f.height());
    println!("D = {d}");
    println!("|D| = {}", num_traits::Signed::abs(&d));
    match certify_irreducible(&f) {
        Ok(v) => println!("irreducibility = {}", v.status),
        Err(e) => println!("irreducibility = n/a ({e})"),
    }
    let mm = mahler_measure_with(&f, 1e-12, prec)?;
    println!("M in [{:.15e}, {:.15e}]", mm.lower(), mm.upper());
    println!("log M in [{:.15e}, {:.15e}]", mm.ln.lo, mm.ln.hi);
    match s_of_f_from(&mm.roots, &mm.ln) {
        Ok(s) => println!("S(F) in [{:.15e}, {:.15e}]", s.lo, s.hi),
        Err(e) => println!("S(F) = n/a ({e})"),
    }
    println!("T(F) = {}", t_of_f(TMode::Sparse(f.s() as u64)));
    println!("|S| = {}", approximation_set_s_with(&f, prec)?.len());
    Ok(true)
}

fn bound(path: &Path, h: &BigInt, theorem: Option<Theorem>, prec: Precision) -> Result<bool> {
    let f = read_form(path)?;
    let inputs = BoundInputs::from_form(&f, h)?;
    if let Some(t) = theorem {
        let v = theorem_bound(t, inputs.r, inputs.s, h, &inputs.abs_disc, &inputs.height)?;
        println!("log bound = {}", v.log_string(30));
        return Ok(true);
    }
    let mm = mahler_measure_with(&f, 1e-12, prec)?;
    let inputs = BoundInputs {
        ln_mahler: Some(mm.ln),
        s_f: s_of_f_from(&mm.roots, &mm.ln).ok(),
        set_s: Some(approximation_set_s_with(&f, prec)?.len()),
        ..inputs
    };
    let report = BoundReport::compute(inputs)?;
    println!("{}", serde_json::to_string_pretty(&report.to_json())?);
    Ok(true)
}

fn enumerate(path: &Path, h: &BigInt, b: u64, out: Option<&Path>) -> Result<bool> {
    let f = read_form(path)?;
    let res = enumerate_box(&f, h, b)?;
    println!("N_box = {}", res.n_box);
    println!("P_box = {}", res.p_box);
    println!("P_prime_box = {}", res.p_prime_box);
    for s in &res.solutions {
        let tag = if s.primitive { "" } else { "  (not primitive)" };
        println!("({}, {})  F = {}{tag}", s.x, s.y, s.value);
    }
    if let Some(p) = out {
        fs::write(p, serde_json::to_string_pretty(&res.to_json())?)
            .with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(true)
}

fn read_spec(path: &Path) -> Result<CorpusSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(text.parse()?)
}

fn verify(spec_path: &Path, h: &[BigInt], b: u64, report: &Path, prec: Precision) -> Result<bool> {
    let spec = read_spec(spec_path)?;
    let corpus = generate_corpus(&spec)?;
    let records = run_verification(&corpus, h, b, prec)?;
    let ts = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    let doc = report_json(&spec, h, b, &records, ts);
    fs::write(report, serde_json::to_string_pretty(&doc)?).with_context(|| format!("writing {}", report.display()))?;
    let agg = aggregate(&records);
    println!(
        "forms {}, pass {}, fail {}, vacuous {}, skipped {}",
        agg.forms, agg.pass, agg.fail, agg.vacuous, agg.skipped
    );
    for r in &records {
        for a in r
            .assertions
            .iter()
            .filter(|a| a.status == thue_core::harness::Status::Fail)
        {
            let h = a.h.as_deref().unwrap_or("-");
            eprintln!("FAIL {} {} h={h}: {}", r.id, a.name, a.detail);
        }
    }
    Ok(agg.fail == 0)
}

fn generate(spec_path: &Path, out: &Path) -> Result<bool> {
    let spec = read_spec(spec_path)?;
    let corpus = generate_corpus(&spec)?;
    fs::write(out, corpus_to_text(&corpus)).with_context(|| format!("writing {}", out.display()))?;
    println!("{} forms written to {}", corpus.len(), out.display());
    Ok(true)
}

fn cluster_check(path: &Path, trials: usize, seed: u64, prec: Precision) -> Result<bool> {
    let f = read_form(path)?.f_poly();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut met, mut bad, mut drawn) = (0usize, 0usize, 0usize);
    for _ in 0..trials {
        let Some((a, eps)) = random_window(&mut rng, &f) else {
            continue;
        };
        drawn += 1;
        let v = check_clustering_8r(&f, &a, &eps, prec)?;
        met += v.hypothesis_met as usize;
        if !v.holds {
            bad += 1;
            println!(
                "{}",
                json!({"check": "8r", "a": a.to_string(), "eps": eps.to_string(), "verdict": v})
            );
        }
    }
    println!("8r: {trials} trials, {drawn} certified windows, {met} with hypothesis, {bad} counterexamples");
    let roots = find_roots_poly(&f, &Target::Relative(64), prec)?;
    let (mut met9, mut bad9) = (0usize, 0usize);
    for sigma in roots.roots.iter().filter(|r| !r.is_real() && r.center.im.is_positive()) {
        for t in 1..=3 {
            let v = check_clustering_9rt(&f, sigma, t, prec)?;
            met9 += v.hypothesis_met as usize;
            if !v.holds {
                bad9 += 1;
                println!("{}", json!({"check": "9rt", "t": t, "verdict": v}));
            }
        }
    }
    println!("9rt: {met9} cases with hypothesis, {bad9} counterexamples");
    Ok(bad == 0 && bad9 == 0)
}

fn run(cli: Cli) -> Result<bool> {
    let prec = precision(cli.precision);
    match &cli.cmd {
        Cmd::Invariants { formfile } => invariants(formfile, prec),
        Cmd::Bound { formfile, h, theorem } => bound(formfile, h, *theorem, prec),
        Cmd::Enumerate {
            formfile,
            h,
            box_bound,
            json,
        } => enumerate(formfile, h, *box_bound, json.as_deref()),
        Cmd::Verify {
            corpus,
            h,
            box_bound,
            report,
        } => verify(corpus, h, *box_bound, report, prec),
        Cmd::Generate { spec, out } => generate(spec, out),
        Cmd::ClusterCheck { poly, trials, seed } => cluster_check(poly, *trials, *seed, prec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(failure_code(&e))
        }
    }
}
