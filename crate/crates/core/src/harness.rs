//! Corpus generation and end-to-end verification runs.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::{BigInt, RandBigInt};
use num_traits::{One, Pow, Signed};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{u_of, BoundInputs, BoundReport};
use crate::enclosure::Interval;
use crate::error::{Error, Result};
use crate::forms::BinaryForm;
use crate::invariants::{
    approximation_set_s_with, discriminant, mahler_checks, mahler_measure_with, s_of_f_from, t_of_f, CheckStatus, TMode,
};
use crate::irreducible::{certify_irreducible, Irreducibility};
use crate::logscalar::LogScalar;
use crate::roots::Precision;
use crate::solver::{
    classify_solutions, divisor_identity_check, enumerate_box, in_band, verify_corollary_52, verify_lewis_mahler,
    EnumerationResult, SolutionClass,
};

pub const SCHEMA_VERSION: u32 = 1;
/// Attempts per corpus slot before the spec is declared infeasible.
const MAX_ATTEMPTS: usize = 10_000;
const MAHLER_REL_WIDTH: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub r_range: RangeInclusive<u32>,
    pub s_range: RangeInclusive<u32>,
    pub coeff_bound: BigInt,
    pub count: usize,
    pub seed: u64,
    pub require_irreducible: bool,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            r_range: 3..=12,
            s_range: 1..=3,
            coeff_bound: BigInt::from(10),
            count: 100,
            seed: 0,
            require_irreducible: true,
        }
    }
}

fn parse_range(key: &str, v: &str) -> Result<RangeInclusive<u32>> {
    let bad = || Error::Syntax(format!("bad range for `{key}`: `{v}`"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    if let Some((a, b)) = v.split_once("..=") {
        return Ok(num(a)?..=num(b)?);
    }
    if let Some((a, b)) = v.split_once("..") {
        let hi = num(b)?.checked_sub(1).ok_or_else(bad)?;
        return Ok(num(a)?..=hi);
    }
    if let Some((a, b)) = v.split_once('-') {
        return Ok(num(a)?..=num(b)?);
    }
    let n = num(v)?;
    Ok(n..=n)
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::Syntax(format!("bad boolean for `{key}`: `{v}`"))),
    }
}

impl FromStr for CorpusSpec {
    type Err = Error;

    /// Line-oriented `key = value`; `#` starts a comment; missing keys keep
    /// their defaults.
    fn from_str(text: &str) -> Result<Self> {
        let mut spec = CorpusSpec::default();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Syntax(format!("expected `key = value`, got `{line}`")))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "r_range" => spec.r_range = parse_range(k, v)?,
                "s_range" => spec.s_range = parse_range(k, v)?,
                "coeff_bound" => {
                    spec.coeff_bound = v.parse().map_err(|_| Error::Syntax(format!("bad coeff_bound `{v}`")))?
                }
                "count" => spec.count = v.parse().map_err(|_| Error::Syntax(format!("bad count `{v}`")))?,
                "seed" => spec.seed = v.parse().map_err(|_| Error::Syntax(format!("bad seed `{v}`")))?,
                "require_irreducible" => spec.require_irreducible = parse_bool(k, v)?,
                _ => return Err(Error::Syntax(format!("unknown key `{k}`"))),
            }
        }
        Ok(spec)
    }
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "r_range = {}..={}", self.r_range.start(), self.r_range.end())?;
        writeln!(f, "s_range = {}..={}", self.s_range.start(), self.s_range.end())?;
        writeln!(f, "coeff_bound = {}", self.coeff_bound)?;
        writeln!(f, "count = {}", self.count)?;
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "require_irreducible = {}", self.require_irreducible)
    }
}

impl CorpusSpec {
    pub fn validate(&self) -> Result<()> {
        let (r_lo, r_hi) = (*self.r_range.start(), *self.r_range.end());
        let (s_lo, s_hi) = (*self.s_range.start(), *self.s_range.end());
        if r_lo < 3 || r_lo > r_hi {
            return Err(Error::InfeasibleSpec(format!(
                "r_range {r_lo}..={r_hi} needs 3 <= lo <= hi"
            )));
        }
        if s_lo < 1 || s_lo > s_hi {
            return Err(Error::InfeasibleSpec(format!(
                "s_range {s_lo}..={s_hi} needs 1 <= lo <= hi"
            )));
        }
        if s_lo > r_hi {
            return Err(Error::InfeasibleSpec(format!(
                "s + 1 = {} nonzero terms exceed r + 1 = {}",
                s_lo + 1,
                r_hi + 1
            )));
        }
        if !self.coeff_bound.is_positive() {
            return Err(Error::InfeasibleSpec("coeff_bound must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusForm {
    pub id: String,
    pub form: BinaryForm,
    pub irreducibility: Irreducibility,
}

fn nonzero_coeff<R: Rng>(rng: &mut R, bound: &BigInt) -> BigInt {
    let m = rng.gen_bigint_range(&BigInt::one(), &(bound + 1u32));
    if rng.gen_bool(0.5) {
        -m
    } else {
        m
    }
}

fn random_sparse_form<R: Rng>(rng: &mut R, spec: &CorpusSpec) -> Result<BinaryForm> {
    let r_lo = (*spec.r_range.start()).max(*spec.s_range.start());
    let r = rng.gen_range(r_lo..=*spec.r_range.end());
    let s = rng.gen_range(*spec.s_range.start()..=(*spec.s_range.end()).min(r));
    let mut idx: Vec<u32> = sample(rng, (r - 1) as usize, (s - 1) as usize)
        .into_iter()
        .map(|i| i as u32 + 1)
        .collect();
    idx.sort_unstable();
    let mut terms = vec![(0, nonzero_coeff(rng, &spec.coeff_bound))];
    for i in idx {
        terms.push((i, nonzero_coeff(rng, &spec.coeff_bound)));
    }
    terms.push((r, nonzero_coeff(rng, &spec.coeff_bound)));
    BinaryForm::new(r, terms)
}

/// Deterministic for a fixed seed. Forms with content above 1 or certified
/// reducible are redrawn; `Unknown` forms are kept and tagged unless the spec
/// requires irreducibility.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<CorpusForm>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    for n in 0..spec.count {
        let mut accepted = None;
        for _ in 0..MAX_ATTEMPTS {
            let f = random_sparse_form(&mut rng, spec)?;
            if !f.content().is_one() {
                continue;
            }
            let status = certify_irreducible(&f)?.status;
            let keep = match status {
                Irreducibility::Irreducible => true,
                Irreducibility::Unknown => !spec.require_irreducible,
                Irreducibility::Reducible => false,
            };
            if keep {
                accepted = Some((f, status));
                break;
            }
        }
        let (form, irreducibility) =
            accepted.ok_or_else(|| Error::InfeasibleSpec(format!("no admissible form after {MAX_ATTEMPTS} draws")))?;
        out.push(CorpusForm {
            id: format!("F{:04}", n + 1),
            form,
            irreducibility,
        });
    }
    Ok(out)
}

/// One form per line with its id and irreducibility status as a comment.
pub fn corpus_to_text(corpus: &[CorpusForm]) -> String {
    corpus
        .iter()
        .map(|c| format!("{}  # {} {}\n", c.form, c.id, c.irreducibility))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "vacuous")]
    Vacuous,
    #[serde(rename = "skipped-unknown-irreducibility")]
    Skipped,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Vacuous => "vacuous",
            Status::Skipped => "skipped-unknown-irreducibility",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub h: Option<String>,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormInvariants {
    pub r: u32,
    pub s: usize,
    pub height: String,
    pub discriminant: String,
    pub ln_mahler: [f64; 2],
    pub s_f: Option<[f64; 2]>,
    pub t_f: u64,
    pub set_s: usize,
}

#[derive(Clone, Debug)]
pub struct HRun {
    pub bounds: BoundReport,
    pub enumeration: EnumerationResult,
}

#[derive(Clone, Debug)]
pub struct VerificationRecord {
    pub id: String,
    pub form: BinaryForm,
    pub irreducibility: Irreducibility,
    pub invariants: FormInvariants,
    pub runs: Vec<HRun>,
    pub assertions: Vec<Assertion>,
}

impl VerificationRecord {
    pub fn count(&self, status: Status) -> usize {
        self.assertions.iter().filter(|a| a.status == status).count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "form": self.form.to_string(),
            "irreducibility": self.irreducibility,
            "invariants": self.invariants,
            "runs": self.runs.iter().map(|run| json!({
                "h": run.enumeration.h.to_string(),
                "bounds": run.bounds.to_json(),
                "enumeration": run.enumeration.to_json(),
            })).collect::<Vec<_>>(),
            "assertions": self.assertions,
        })
    }
}

struct Recorder<'a> {
    out: Vec<Assertion>,
    gated: bool,
    irreducibility: &'a Irreducibility,
}

impl Recorder<'_> {
    fn push(&mut self, name: &str, h: Option<&BigInt>, status: Status, detail: String) {
        self.out.push(Assertion {
            name: name.into(),
            h: h.map(|h| h.to_string()),
            status,
            detail,
        });
    }

    /// Soundness assertions need a certified-irreducible form.
    fn soundness(
        &mut self,
        name: &str,
        h: Option<&BigInt>,
        check: impl FnOnce() -> Result<(Status, String)>,
    ) -> Result<()> {
        if !self.gated {
            let detail = format!("form is {}", self.irreducibility);
            self.push(name, h, Status::Skipped, detail);
            return Ok(());
        }
        let (status, detail) = check()?;
        self.push(name, h, status, detail);
        Ok(())
    }
}

fn le(n: usize, bound: &LogScalar) -> bool {
    bound.is_positive() && LogScalar::from_i64(n as i64) <= *bound
}

fn check_status(c: CheckStatus) -> &'static str {
    match c {
        CheckStatus::Holds => "holds",
        CheckStatus::Violated => "violated",
        CheckStatus::Undecided => "undecided",
    }
}

fn interval(i: &Interval) -> [f64; 2] {
    [i.lo, i.hi]
}

/// `P_box(F,h) <= sum_{j=0}^{u(h)+1} P'_box(F, 2^(rj))`, the bands read off a
/// single enumeration at the top level.
fn dyadic_cover(f: &BinaryForm, h: &BigInt, b: u64, p_box: usize) -> Result<(bool, usize)> {
    let r = f.degree();
    let u = u_of(h, r)?;
    let top: BigInt = BigInt::one() << (r as u64 * (u + 1)) as usize;
    let all = enumerate_box(f, &top, b)?;
    let mut sum = 0;
    for j in 0..=u + 1 {
        let level: BigInt = Pow::pow(BigInt::from(2u32), r as u64 * j);
        sum += all
            .solutions
            .iter()
            .filter(|s| s.primitive && in_band(&s.value, &level, r))
            .count();
    }
    Ok((p_box <= sum, sum))
}

fn verify_form(c: &CorpusForm, h_list: &[BigInt], b: u64, prec: Precision) -> Result<VerificationRecord> {
    let f = &c.form;
    f.check_thue_degree()?;
    let disc = discriminant(f)?;
    let mm = mahler_measure_with(f, MAHLER_REL_WIDTH, prec)?;
    let set_s = approximation_set_s_with(f, prec)?;
    // undefined when M(F) = 1
    let s_f = match s_of_f_from(&mm.roots, &mm.ln) {
        Ok(v) => Some(v),
        Err(Error::Hypothesis(_)) => None,
        Err(e) => return Err(e),
    };
    let s = f.s();
    let invariants = FormInvariants {
        r: f.degree(),
        s,
        height: f.height().to_string(),
        discriminant: disc.to_string(),
        ln_mahler: interval(&mm.ln),
        s_f: s_f.as_ref().map(interval),
        t_f: t_of_f(TMode::Sparse(s as u64)),
        set_s: set_s.len(),
    };
    let mut rec = Recorder {
        out: Vec::new(),
        gated: c.irreducibility == Irreducibility::Irreducible,
        irreducibility: &c.irreducibility,
    };

    let mc = mahler_checks(f, &mm.ln, &disc);
    rec.push(
        "mahler_sandwich",
        None,
        Status::from_bool(mc.all_hold()),
        format!(
            "disc {}, lower {}, upper {}",
            check_status(mc.disc_bound),
            check_status(mc.height_lower),
            check_status(mc.height_upper)
        ),
    );
    rec.push(
        "set_s_size",
        None,
        Status::from_bool(set_s.len() <= 6 * s),
        format!("|S| = {} <= 6s = {}", set_s.len(), 6 * s),
    );

    let mut runs = Vec::with_capacity(h_list.len());
    for h in h_list {
        let inputs = BoundInputs {
            ln_mahler: Some(mm.ln),
            s_f,
            set_s: Some(set_s.len()),
            ..BoundInputs::from_form(f, h)?
        };
        let report = BoundReport::compute(inputs)?;
        let mut res = enumerate_box(f, h, b)?;
        let hyp = report.hypotheses.clone();
        let n = res.n_box;
        let hh = Some(h);

        rec.soundness("thm1", hh, || {
            Ok((Status::from_bool(le(n, &report.thm1)), format!("N_box = {n}")))
        })?;
        rec.soundness("thm3", hh, || {
            Ok(match &report.thm3 {
                Some(t3) => (Status::from_bool(le(n, t3)), format!("N_box = {n}")),
                None => (Status::Vacuous, "r < 3s".into()),
            })
        })?;
        rec.soundness("dyadic_cover", hh, || {
            let (ok, sum) = dyadic_cover(f, h, b, res.p_box)?;
            Ok((Status::from_bool(ok), format!("P_box = {} <= {sum}", res.p_box)))
        })?;
        let di = divisor_identity_check(f, h, b)?;
        rec.push(
            "divisor_identity",
            hh,
            Status::from_bool(di.holds),
            format!("N_box = {} vs {}", di.n_box, di.divisor_sum),
        );
        rec.soundness("lewis_mahler", hh, || {
            let v = verify_lewis_mahler(f, &res, &mm.ln, &disc, &mm.roots)?;
            if v.is_empty() {
                return Ok((Status::Vacuous, "no primitive solution with y != 0".into()));
            }
            let bad = v.iter().filter(|x| !x.holds).count();
            Ok((
                Status::from_bool(bad == 0),
                format!("{} checked, {bad} failed", v.len()),
            ))
        })?;
        rec.soundness("corollary_52", hh, || {
            let v = verify_corollary_52(f, &res, h, &mm.ln, &disc);
            Ok(if v.vacuous {
                (Status::Vacuous, format!("disc hypothesis {}", v.disc_hypothesis))
            } else {
                (
                    Status::from_bool(v.holds),
                    format!("{} checked, {} violations", v.checked, v.violations.len()),
                )
            })
        })?;
        let p_prime = res.p_prime_box;
        rec.soundness("large_solution_count", hh, || {
            Ok(if hyp.large_solution_disc && report.y_l_y_s.is_some() {
                let (classified, counts) = classify_solutions(&res, &report)?;
                let large = classified
                    .solutions
                    .iter()
                    .filter(|s| s.primitive && s.class == SolutionClass::Large && in_band(&s.value, h, f.degree()))
                    .count();
                (
                    Status::from_bool(le(large, &report.large_solution) || large == 0),
                    format!("{} large, {} small", counts.large, counts.small),
                )
            } else {
                (Status::Vacuous, "discriminant hypothesis fails".into())
            })
        })?;
        rec.soundness("reduced_form_count", hh, || {
            Ok(if hyp.reduced_form_disc {
                (
                    Status::from_bool(le(p_prime, &report.prop81)),
                    format!("P'_box = {p_prime}"),
                )
            } else {
                (Status::Vacuous, "discriminant hypothesis fails".into())
            })
        })?;
        rec.soundness("large_degree_count", hh, || {
            Ok(if hyp.reduced_form_disc && hyp.r_condition {
                (
                    Status::from_bool(le(p_prime, &report.prop92)),
                    format!("P'_box = {p_prime}"),
                )
            } else {
                (Status::Vacuous, "discriminant or degree hypothesis fails".into())
            })
        })?;
        let mut classified = None;
        rec.soundness("class_counts", hh, || {
            if report.classes.is_none() || report.y_l_y_s.is_none() {
                return Ok((Status::Vacuous, "needs r >= 3s and lambda < r".into()));
            }
            let (cl, counts) = classify_solutions(&res, &report)?;
            let ok = counts.lar_ok != Some(false) && counts.sma_ok != Some(false) && counts.med_ok != Some(false);
            let detail = format!(
                "small {}, medium {}, large {}",
                counts.small, counts.medium, counts.large
            );
            classified = Some(cl);
            Ok((Status::from_bool(ok), detail))
        })?;
        if let Some(cl) = classified {
            res = cl;
        }
        runs.push(HRun {
            bounds: report,
            enumeration: res,
        });
    }
    Ok(VerificationRecord {
        id: c.id.clone(),
        form: f.clone(),
        irreducibility: c.irreducibility,
        invariants,
        runs,
        assertions: rec.out,
    })
}

/// Verifies every form at every `h` with the box `[-B, B]^2`. Forms run
/// concurrently on the current rayon pool; records come back in corpus order.
pub fn run_verification(
    corpus: &[CorpusForm],
    h_list: &[BigInt],
    b: u64,
    prec: Precision,
) -> Result<Vec<VerificationRecord>> {
    if h_list.iter().any(|h| !h.is_positive()) {
        return Err(Error::Hypothesis("every h must be positive".into()));
    }
    corpus.par_iter().map(|c| verify_form(c, h_list, b, prec)).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Aggregate {
    pub forms: usize,
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    pub skipped: usize,
}

pub fn aggregate(records: &[VerificationRecord]) -> Aggregate {
    let mut a = Aggregate {
        forms: records.len(),
        ..Aggregate::default()
    };
    for r in records {
        a.pass += r.count(Status::Pass);
        a.fail += r.count(Status::Fail);
        a.vacuous += r.count(Status::Vacuous);
        a.skipped += r.count(Status::Skipped);
    }
    a
}

/// The full report document; `timestamp` is seconds since the Unix epoch.
pub fn report_json(
    spec: &CorpusSpec,
    h_list: &[BigInt],
    b: u64,
    records: &[VerificationRecord],
    timestamp: u64,
) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "timestamp": timestamp,
        "spec": {
            "r_range": [spec.r_range.start(), spec.r_range.end()],
            "s_range": [spec.s_range.start(), spec.s_range.end()],
            "coeff_bound": spec.coeff_bound.to_string(),
            "count": spec.count,
            "seed": spec.seed,
            "require_irreducible": spec.require_irreducible,
        },
        "h": h_list.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
        "B": b,
        "records": records.iter().map(VerificationRecord::to_json).collect::<Vec<_>>(),
        "aggregate": aggregate(records),
    })
}

/// A copy of `report` without its timestamp, for comparisons.
pub fn without_timestamp(report: &Value) -> Value {
    let mut v = report.clone();
    if let Some(m) = v.as_object_mut() {
        m.remove("timestamp");
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec() -> CorpusSpec {
        CorpusSpec {
            r_range: 3..=6,
            s_range: 1..=2,
            coeff_bound: BigInt::from(5),
            count: 8,
            seed: 42,
            require_irreducible: true,
        }
    }

    #[test]
    fn spec_parsing() {
        let s: CorpusSpec =
            "r_range = 3..=12\ns_range=1-3 # comment\ncoeff_bound = 100\ncount=5\nseed=9\nrequire_irreducible=false\n"
                .parse()
                .unwrap();
        assert_eq!(s.r_range, 3..=12);
        assert_eq!(s.s_range, 1..=3);
        assert_eq!(s.coeff_bound, BigInt::from(100));
        assert_eq!((s.count, s.seed, s.require_irreducible), (5, 9, false));
        let t: CorpusSpec = s.to_string().parse().unwrap();
        assert_eq!(s, t);
        let e: CorpusSpec = "r_range = 3..5".parse().unwrap();
        assert_eq!(e.r_range, 3..=4);
        assert!("colour = red".parse::<CorpusSpec>().is_err());
        assert!("count".parse::<CorpusSpec>().is_err());
    }

    #[test]
    fn infeasible_specs() {
        let s = CorpusSpec {
            r_range: 3..=4,
            s_range: 5..=6,
            ..small_spec()
        };
        assert!(matches!(generate_corpus(&s), Err(Error::InfeasibleSpec(_))));
        let t = CorpusSpec {
            r_range: 2..=4,
            ..small_spec()
        };
        assert!(matches!(generate_corpus(&t), Err(Error::InfeasibleSpec(_))));
    }

    #[test]
    fn corpus_is_deterministic_and_sparse() {
        let spec = small_spec();
        let a = generate_corpus(&spec).unwrap();
        let b = generate_corpus(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 8);
        for c in &a {
            let f = &c.form;
            assert!((3..=6).contains(&f.degree()));
            assert!((1..=2).contains(&f.s()));
            assert!(f.boundary_nonzero());
            assert!(f.terms().all(|(_, a)| a.abs() <= BigInt::from(5)));
            assert_eq!(c.irreducibility, Irreducibility::Irreducible);
        }
        let other = generate_corpus(&CorpusSpec { seed: 43, ..spec }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn binomial_corpus() {
        let spec = CorpusSpec {
            s_range: 1..=1,
            ..small_spec()
        };
        for c in generate_corpus(&spec).unwrap() {
            assert_eq!(c.form.terms().count(), 2);
        }
    }

    #[test]
    fn pure_cubic_run() {
        let c = CorpusForm {
            id: "F0001".into(),
            form: BinaryForm::from_i64(3, &[(0, 1), (3, -2)]).unwrap(),
            irreducibility: Irreducibility::Irreducible,
        };
        let recs = run_verification(&[c], &[BigInt::one()], 10_000, Precision::default()).unwrap();
        let rec = &recs[0];
        assert_eq!(rec.runs[0].enumeration.n_box, 4);
        let thm1 = rec.assertions.iter().find(|a| a.name == "thm1").unwrap();
        assert_eq!(thm1.status, Status::Pass);
        let thm3 = rec.assertions.iter().find(|a| a.name == "thm3").unwrap();
        assert_eq!(thm3.status, Status::Pass);
        assert_eq!(rec.count(Status::Fail), 0, "{:?}", rec.assertions);
        let cond = rec.assertions.iter().find(|a| a.name == "reduced_form_count").unwrap();
        assert_eq!(cond.status, Status::Vacuous);
        assert_eq!(rec.invariants.discriminant, "-108");
    }

    #[test]
    fn reducible_form_is_skipped() {
        let c = CorpusForm {
            id: "F0001".into(),
            // (x - y)(x^2 + x y + y^2)
            form: BinaryForm::from_i64(3, &[(0, 1), (3, -1)]).unwrap(),
            irreducibility: Irreducibility::Reducible,
        };
        let rec = &run_verification(&[c], &[BigInt::from(10)], 50, Precision::default()).unwrap()[0];
        for a in &rec.assertions {
            match a.name.as_str() {
                "mahler_sandwich" | "set_s_size" | "divisor_identity" => assert_eq!(a.status, Status::Pass),
                _ => assert_eq!(a.status, Status::Skipped, "{a:?}"),
            }
        }
    }

    #[test]
    fn report_shape() {
        let spec = CorpusSpec {
            count: 3,
            ..small_spec()
        };
        let corpus = generate_corpus(&spec).unwrap();
        let h = [BigInt::one(), BigInt::from(10)];
        let recs = run_verification(&corpus, &h, 100, Precision::default()).unwrap();
        let v = report_json(&spec, &h, 100, &recs, 123);
        assert_eq!(v["schema"], 1);
        assert_eq!(v["aggregate"]["forms"], 3);
        assert_eq!(v["aggregate"]["fail"], 0);
        let stripped = without_timestamp(&v);
        assert!(stripped.get("timestamp").is_none());
        assert_eq!(stripped, without_timestamp(&report_json(&spec, &h, 100, &recs, 456)));
        assert!(corpus_to_text(&corpus).lines().count() == 3);
    }
}
