//! Exact enumeration of the solutions of `|F(x,y)| <= h` inside a box.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{corollary_disc_hypothesis, int_exceeds, BoundReport};
use crate::enclosure::Interval;
use crate::error::{Error, Result};
use crate::forms::BinaryForm;
use crate::invariants::ln_int;
use crate::isolate::{integer_root_floor, IsolatedRoots};
use crate::logscalar::LogScalar;
use crate::poly::IntPoly;
use crate::real::Real;
use crate::roots::{find_roots_poly, find_roots_with, Precision, RootSet, Target};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionClass {
    Small,
    Medium,
    Large,
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub x: BigInt,
    pub y: BigInt,
    pub value: BigInt,
    pub primitive: bool,
    pub class: SolutionClass,
}

impl Solution {
    fn new(x: BigInt, y: BigInt, value: BigInt) -> Self {
        let primitive = x.gcd(&y).is_one();
        Solution {
            x,
            y,
            value,
            primitive,
            class: SolutionClass::Unclassified,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "x": self.x.to_string(),
            "y": self.y.to_string(),
            "value": self.value.to_string(),
            "primitive": self.primitive,
            "class": self.class,
        })
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub box_bound: u64,
    pub h: BigInt,
    pub solutions: Vec<Solution>,
    pub n_box: usize,
    pub p_box: usize,
    /// Primitive solutions with `h/2^r <= |F| < h`.
    pub p_prime_box: usize,
    pub complete_in_box: bool,
    /// `(Y_L, Y_S)` once classified.
    pub classification: Option<(LogScalar, LogScalar)>,
}

impl EnumerationResult {
    fn from_solutions(f: &BinaryForm, h: &BigInt, b: u64, solutions: Vec<Solution>) -> Self {
        let r = f.degree();
        let n_box = solutions.len();
        let p_box = solutions.iter().filter(|s| s.primitive).count();
        let p_prime_box = solutions
            .iter()
            .filter(|s| s.primitive && in_band(&s.value, h, r))
            .count();
        EnumerationResult {
            box_bound: b,
            h: h.clone(),
            solutions,
            n_box,
            p_box,
            p_prime_box,
            complete_in_box: true,
            classification: None,
        }
    }

    /// Counts recomputed from the solution list agree with the stored ones.
    pub fn is_consistent(&self) -> bool {
        self.n_box == self.solutions.len() && self.p_box == self.solutions.iter().filter(|s| s.primitive).count()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "B": self.box_bound,
            "h": self.h.to_string(),
            "N_box": self.n_box,
            "P_box": self.p_box,
            "P_prime_box": self.p_prime_box,
            "complete_in_box": self.complete_in_box,
            "solutions": self.solutions.iter().map(Solution::to_json).collect::<Vec<_>>(),
        });
        if let Some((yl, ys)) = &self.classification {
            v["Y_L_log"] = json!(yl.log_string(30));
            v["Y_S_log"] = json!(ys.log_string(30));
        }
        v
    }
}

/// `h/2^r <= |v| < h`, exactly.
pub fn in_band(v: &BigInt, h: &BigInt, r: u32) -> bool {
    let a = v.abs();
    (&a << r as usize) >= *h && a < *h
}

/// `F(x, y)` exactly.
pub fn eval_form(f: &BinaryForm, x: &BigInt, y: &BigInt) -> BigInt {
    f.eval(x, y)
}

/// `F(x, y)` as a polynomial in `x`.
fn row_poly(f: &BinaryForm, y: &BigInt) -> IntPoly {
    let r = f.degree();
    let mut c = vec![BigInt::zero(); r as usize + 1];
    for (i, a) in f.terms() {
        c[(r - i) as usize] = a * Pow::pow(y, i);
    }
    IntPoly::new(c)
}

/// The integers `x` with `|F(x, y)| <= h` as disjoint, sorted closed
/// intervals. Endpoints come from exact isolation of `F(x,y) - h` and
/// `F(x,y) + h`; every membership decision is an exact evaluation.
pub fn x_intervals_for_y(f: &BinaryForm, y: &BigInt, h: &BigInt) -> Result<Vec<(BigInt, BigInt)>> {
    if h.is_negative() {
        return Err(Error::Hypothesis("h must be nonnegative".into()));
    }
    let g = row_poly(f, y);
    let member = |x: &BigInt| g.eval(x).abs() <= *h;
    match g.degree() {
        None | Some(0) => {
            return if g.coeff(0).abs() <= *h {
                Err(Error::Hypothesis(format!("every x solves the inequality at y = {y}")))
            } else {
                Ok(vec![])
            };
        }
        _ => {}
    }
    let hp = IntPoly::constant(h.clone());
    let mut marks: BTreeSet<BigInt> = BTreeSet::new();
    for p in [g.sub(&hp), g.add(&hp)] {
        let mut iso = IsolatedRoots::new(&p);
        let sq = iso.squarefree.clone();
        for root in &mut iso.roots {
            let fl = root.floor(&sq);
            marks.insert(&fl + 1);
            marks.insert(fl);
        }
    }
    // No root lies in [c_k + 1, c_(k+1)] for consecutive marks, so one sample
    // decides every integer strictly between two marks.
    let marks: Vec<BigInt> = marks.into_iter().collect();
    let mut members: Vec<(BigInt, BigInt)> = Vec::new();
    let mut push = |lo: BigInt, hi: BigInt| {
        if let Some(last) = members.last_mut() {
            if last.1.clone() + 1 >= lo {
                if hi > last.1 {
                    last.1 = hi;
                }
                return;
            }
        }
        members.push((lo, hi));
    };
    for (k, c) in marks.iter().enumerate() {
        if member(c) {
            push(c.clone(), c.clone());
        }
        if let Some(next) = marks.get(k + 1) {
            let lo = c + 1;
            let hi = next - 1;
            if lo <= hi && member(&lo) {
                push(lo, hi);
            }
        }
    }
    Ok(members)
}

/// Root data in `f64` for the candidate windows.
struct Windows {
    /// `(re, |im| lower bound, radius)` per root.
    roots: Vec<(f64, f64, f64)>,
    /// Lower bounds on `|alpha_i - alpha_j|`.
    dist: Vec<Vec<f64>>,
    /// `h / |a_0|`, rounded up.
    k: f64,
    r: u32,
}

const SLACK: f64 = 1e-9;

impl Windows {
    fn new(f: &BinaryForm, rs: &RootSet, h: &BigInt) -> Option<Self> {
        let a0 = f.coeff(0);
        let k = h.to_f64()? / a0.abs().to_f64()?;
        if !k.is_finite() {
            return None;
        }
        let roots: Vec<(f64, f64, f64)> = rs
            .roots
            .iter()
            .map(|c| {
                let (re, im) = c.center.to_f64();
                let rad = c.radius.to_f64() * (1.0 + SLACK) + f64::MIN_POSITIVE;
                let im_lo = if c.is_real() {
                    0.0
                } else {
                    ((im.abs() - rad) * (1.0 - SLACK)).max(0.0)
                };
                (re, im_lo, rad)
            })
            .collect();
        if roots.iter().any(|x| !x.0.is_finite()) {
            return None;
        }
        let cs: Vec<(f64, f64)> = rs.roots.iter().map(|c| c.center.to_f64()).collect();
        let n = roots.len();
        let mut dist = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let d = (cs[i].0 - cs[j].0).hypot(cs[i].1 - cs[j].1);
                    dist[i][j] = ((d - roots[i].2 - roots[j].2) * (1.0 - SLACK)).max(0.0);
                }
            }
        }
        Some(Windows {
            roots,
            dist,
            k: k * (1.0 + SLACK),
            r: f.degree(),
        })
    }

    /// Candidate `x` for row `y != 0`: if `|F(x,y)| <= h` and `alpha_i` is the
    /// root nearest to `x/y`, then `|x - alpha_i y| <= W_i`.
    fn candidates(&self, y: i64, b: i64, out: &mut Vec<i64>) {
        let yy = (y as f64).abs();
        let w0 = self.k.powf(1.0 / self.r as f64) * (1.0 + SLACK);
        for (i, &(re, im_lo, rad)) in self.roots.iter().enumerate() {
            if yy * im_lo > w0 {
                continue;
            }
            let mut w = w0;
            for _ in 0..4 {
                let mut prod = 1.0f64;
                for (j, &(_, im_j, _)) in self.roots.iter().enumerate() {
                    if j != i {
                        prod *= (yy * self.dist[i][j] - w).max(yy * im_j).max(0.0);
                    }
                }
                if prod <= 0.0 {
                    break;
                }
                let wn = self.k / prod * (1.0 + SLACK);
                if wn >= w {
                    break;
                }
                w = wn;
            }
            if yy * im_lo > w {
                continue;
            }
            let c = re * y as f64;
            let half = w + yy * rad + 1.0 + c.abs() * SLACK;
            let lo = (c - half).floor().max(-(b as f64)) as i64;
            let hi = (c + half).ceil().min(b as f64) as i64;
            out.extend(lo..=hi);
        }
    }
}

fn zero_row(f: &BinaryForm, h: &BigInt, b: i64) -> Vec<Solution> {
    let a0 = f.coeff(0);
    let y = BigInt::zero();
    let xmax = if a0.is_zero() {
        BigInt::from(b)
    } else {
        integer_root_floor(&(h / a0.abs()), f.degree()).min(BigInt::from(b))
    };
    let m = xmax.to_i64().unwrap_or(b);
    (-m..=m)
        .filter(|&x| x != 0)
        .map(|x| {
            let x = BigInt::from(x);
            let v = f.eval(&x, &y);
            Solution::new(x, y.clone(), v)
        })
        .collect()
}

fn exact_row(f: &BinaryForm, h: &BigInt, y: i64, b: i64) -> Result<Vec<Solution>> {
    let yb = BigInt::from(y);
    let bb = BigInt::from(b);
    let mut out = Vec::new();
    for (lo, hi) in x_intervals_for_y(f, &yb, h)? {
        let lo = lo.max(-&bb);
        let hi = hi.min(bb.clone());
        let mut x = lo;
        while x <= hi {
            let v = f.eval(&x, &yb);
            out.push(Solution::new(x.clone(), yb.clone(), v));
            x += 1;
        }
    }
    Ok(out)
}

fn window_row(f: &BinaryForm, h: &BigInt, w: &Windows, y: i64, b: i64) -> Vec<Solution> {
    let mut xs = Vec::new();
    w.candidates(y, b, &mut xs);
    xs.sort_unstable();
    xs.dedup();
    let yb = BigInt::from(y);
    xs.into_iter()
        .filter_map(|x| {
            let xb = BigInt::from(x);
            let v = f.eval(&xb, &yb);
            (v.abs() <= *h).then(|| Solution::new(xb, yb.clone(), v))
        })
        .collect()
}

/// Every solution of `|F(x,y)| <= h` with `max(|x|,|y|) <= B`, `(0,0)`
/// excluded, ordered by `y` then `x`. Rows run in parallel on the current
/// rayon pool; the output does not depend on the schedule.
pub fn enumerate_box(f: &BinaryForm, h: &BigInt, b: u64) -> Result<EnumerationResult> {
    if h.is_negative() {
        return Err(Error::Hypothesis("h must be nonnegative".into()));
    }
    if b == 0 {
        return Err(Error::Hypothesis("box bound must be at least 1".into()));
    }
    let bi = i64::try_from(b).map_err(|_| Error::Hypothesis("box bound too large".into()))?;
    let windows = if f.coeff(0).is_zero() {
        None
    } else {
        find_roots_with(f, &Target::Relative(64), Precision::default())
            .ok()
            .and_then(|rs| Windows::new(f, &rs, h))
    };
    let rows: Vec<Result<Vec<Solution>>> = (-bi..=bi)
        .into_par_iter()
        .map(|y| {
            if y == 0 {
                Ok(zero_row(f, h, bi))
            } else if let Some(w) = &windows {
                Ok(window_row(f, h, w, y, bi))
            } else {
                exact_row(f, h, y, bi)
            }
        })
        .collect();
    let mut solutions = Vec::new();
    for row in rows {
        solutions.extend(row?);
    }
    Ok(EnumerationResult::from_solutions(f, h, b, solutions))
}

/// Primitive solutions in the band `h/2^r <= |F| < h` inside the box.
pub fn count_p_prime_band(f: &BinaryForm, h: &BigInt, b: u64) -> Result<usize> {
    Ok(enumerate_box(f, h, b)?.p_prime_box)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorIdentity {
    pub n_box: usize,
    /// `sum_d #{primitive (x',y') : d max(|x'|,|y'|) <= B, |F(x',y')| <= h/d^r}`.
    pub divisor_sum: usize,
    /// `(d, count)` for each `d` with `d^r <= h`.
    pub terms: Vec<(u64, usize)>,
    pub holds: bool,
}

/// `N_box(F,h)` against the sum over common divisors, each term from its own
/// enumeration of the box `B/d` at level `floor(h/d^r)`.
pub fn divisor_identity_check(f: &BinaryForm, h: &BigInt, b: u64) -> Result<DivisorIdentity> {
    let r = f.degree();
    let n_box = enumerate_box(f, h, b)?.n_box;
    let mut terms = Vec::new();
    let mut sum = 0usize;
    let mut d = 1u64;
    while d <= b {
        let dr: BigInt = Pow::pow(BigInt::from(d), r);
        if dr > *h {
            break;
        }
        let hd = h / &dr;
        let c = enumerate_box(f, &hd, b / d)?.p_box;
        terms.push((d, c));
        sum += c;
        d += 1;
    }
    // primitive zeros (x', y') keep contributing for every d <= B / max(|x'|,|y'|)
    if d <= b {
        let zeros = enumerate_box(f, &BigInt::zero(), b)?;
        for z in zeros.solutions.iter().filter(|s| s.primitive) {
            let m = z.x.abs().max(z.y.abs()).to_u64().unwrap_or(u64::MAX);
            let top = b / m;
            if top >= d {
                sum += (top - d + 1) as usize;
            }
        }
    }
    Ok(DivisorIdentity {
        n_box,
        divisor_sum: sum,
        terms,
        holds: n_box == sum,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LewisMahlerVerdict {
    pub x: String,
    pub y: String,
    /// `ln min |x/y - alpha|` (approximate, for display).
    pub log_min_dist: f64,
    /// `ln` of the right-hand side (approximate, for display).
    pub log_rhs: f64,
    pub holds: bool,
}

const LM_MARGIN: &str = "1e-40";

/// Checks `min |x/y - alpha| <= 2^(r-1) r^((r-1)/2) M^(r-2) |F(x,y)| / (|D|^(1/2) |y|^r)`
/// for every primitive solution with `y != 0`.
pub fn verify_lewis_mahler(
    f: &BinaryForm,
    result: &EnumerationResult,
    ln_m: &Interval,
    disc: &BigInt,
    roots: &RootSet,
) -> Result<Vec<LewisMahlerVerdict>> {
    let r = f.degree() as i64;
    let ln_d = Real::from_bigint(&disc.abs()).ln();
    let rr = Real::from_i64(r);
    let base = Real::ln2() * (r - 1) + rr.ln() * (r - 1) / 2 - &ln_d / 2;
    let m_lo = Real::from_f64(ln_m.lo) * (r - 2);
    let m_hi = Real::from_f64(ln_m.hi) * (r - 2);
    let margin = Real::parse(LM_MARGIN);
    let mut out = Vec::new();
    for s in result.solutions.iter().filter(|s| s.primitive && !s.y.is_zero()) {
        if s.value.is_zero() {
            out.push(LewisMahlerVerdict {
                x: s.x.to_string(),
                y: s.y.to_string(),
                log_min_dist: f64::NEG_INFINITY,
                log_rhs: f64::NEG_INFINITY,
                holds: true,
            });
            continue;
        }
        let tail = Real::from_bigint(&s.value.abs()).ln() - Real::from_bigint(&s.y.abs()).ln() * r;
        let rhs_lo = &base + &m_lo + &tail;
        let rhs_hi = &base + &m_hi + &tail;
        let mut rs = roots.clone();
        let mut bits = 64u32;
        loop {
            let (dlo, dhi) = min_distance_logs(&rs, &s.x, &s.y);
            let pass = dhi.as_ref().is_some_and(|d| d <= &(&rhs_lo - &margin)) || dhi.is_none();
            let fail = dlo.as_ref().is_some_and(|d| d > &(&rhs_hi + &margin));
            if pass || fail {
                out.push(LewisMahlerVerdict {
                    x: s.x.to_string(),
                    y: s.y.to_string(),
                    log_min_dist: dhi.map_or(f64::NEG_INFINITY, |d| d.to_f64()),
                    log_rhs: rhs_lo.to_f64(),
                    holds: pass,
                });
                break;
            }
            if rs.precision >= Precision::default().max_bits {
                return Err(Error::Undecidable(format!(
                    "Lewis-Mahler comparison at ({}, {})",
                    s.x, s.y
                )));
            }
            bits *= 4;
            rs = find_roots_poly(
                &f.f_poly(),
                &Target::Relative(bits),
                Precision {
                    start_bits: (rs.precision * 2).min(Precision::default().max_bits),
                    max_bits: Precision::default().max_bits,
                },
            )?;
        }
    }
    Ok(out)
}

/// Enclosure `(ln lo, ln hi)` of `min_i |x/y - alpha_i|`; `None` for a zero
/// lower end, and `hi = None` means the distance is exactly zero.
fn min_distance_logs(rs: &RootSet, x: &BigInt, y: &BigInt) -> (Option<Real>, Option<Real>) {
    let q = BigRational::new(x.clone(), y.clone());
    let mut best_lo: Option<Real> = None;
    let mut best_hi: Option<Real> = None;
    let mut any_lo_zero = false;
    for root in &rs.roots {
        let dre = root.center.re.to_rational() - &q;
        let dim = root.center.im.to_rational();
        let d2 = &dre * &dre + &dim * &dim;
        let rad = Real::from_rational(&root.radius.to_rational());
        let dc = Real::from_rational(&d2).sqrt();
        let hi = &dc + &rad;
        let lo = &dc - &rad;
        if hi.is_zero() {
            return (None, None);
        }
        let lhi = hi.ln();
        if best_hi.as_ref().is_none_or(|b| &lhi < b) {
            best_hi = Some(lhi);
        }
        if lo.is_positive() {
            let llo = lo.ln();
            if best_lo.as_ref().is_none_or(|b| &llo < b) {
                best_lo = Some(llo);
            }
        } else {
            any_lo_zero = true;
        }
    }
    if any_lo_zero {
        best_lo = None;
    }
    (best_lo, best_hi)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ClassCounts {
    pub small: usize,
    pub medium: usize,
    pub large: usize,
    /// `#large <= 132 s`, over primitive band solutions.
    pub lar_ok: Option<bool>,
    /// `#small <= 1 + 16(12s + z(r) + log h^(1/r))`.
    pub sma_ok: Option<bool>,
    /// `#medium <= 648 s (log* s)^eps + 36 s log(...)`.
    pub med_ok: Option<bool>,
}

fn le_count(n: usize, bound: &LogScalar) -> bool {
    bound.is_positive() && LogScalar::from_i64(n as i64) <= *bound
}

/// Tags every solution large (`max > Y_L`), small (`min <= Y_S`) or medium,
/// comparing integers against the log-space thresholds.
pub fn classify_solutions(
    result: &EnumerationResult,
    report: &BoundReport,
) -> Result<(EnumerationResult, ClassCounts)> {
    let (yl, ys) = report
        .y_l_y_s
        .clone()
        .ok_or_else(|| Error::MissingInput("Y_L and Y_S need lambda < r and r > 2s".into()))?;
    let mut out = result.clone();
    let mut counts = ClassCounts::default();
    let r = report.inputs.r;
    for s in &mut out.solutions {
        let mx = s.x.abs().max(s.y.abs());
        let mn = s.x.abs().min(s.y.abs());
        let undecided = || Error::Undecidable(format!("({}, {}) against Y_L / Y_S", s.x, s.y));
        s.class = if int_exceeds(&mx, &yl).ok_or_else(undecided)? {
            SolutionClass::Large
        } else if !int_exceeds(&mn, &ys).ok_or_else(undecided)? {
            SolutionClass::Small
        } else {
            SolutionClass::Medium
        };
        if s.primitive && in_band(&s.value, &out.h, r) {
            match s.class {
                SolutionClass::Large => counts.large += 1,
                SolutionClass::Medium => counts.medium += 1,
                SolutionClass::Small => counts.small += 1,
                SolutionClass::Unclassified => {}
            }
        }
    }
    if let Some(c) = &report.classes {
        counts.lar_ok = Some(le_count(counts.large, &c.lar));
        counts.sma_ok = Some(le_count(counts.small, &c.sma));
        counts.med_ok = Some(counts.medium == 0 || le_count(counts.medium, &c.med));
    }
    out.classification = Some((yl, ys));
    Ok((out, counts))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Corollary52Verdict {
    pub disc_hypothesis: bool,
    /// Solutions with `|y| >= (M/h)^2` that were checked.
    pub checked: usize,
    pub exempt: usize,
    /// Solutions whose `y` could not be placed against `(M/h)^2`.
    pub undecided: usize,
    pub violations: Vec<(String, String)>,
    pub vacuous: bool,
    pub holds: bool,
}

/// `|x| <= 2 M(F) |y|` whenever `|D| >= 2^(2r) r^r h^(2(r-1))` and
/// `|y| >= (M(F)/h)^2`.
pub fn verify_corollary_52(
    f: &BinaryForm,
    result: &EnumerationResult,
    h: &BigInt,
    ln_m: &Interval,
    disc: &BigInt,
) -> Corollary52Verdict {
    let disc_hypothesis = !h.is_zero() && corollary_disc_hypothesis(f.degree(), disc, h);
    let mut v = Corollary52Verdict {
        disc_hypothesis,
        checked: 0,
        exempt: 0,
        undecided: 0,
        violations: vec![],
        vacuous: true,
        holds: true,
    };
    if !disc_hypothesis {
        return v;
    }
    let ln_h = ln_int(h);
    let thr = ln_m.sub(&ln_h).scale(2.0);
    let two_m = ln_m.add(&Interval::ln2());
    for s in &result.solutions {
        if s.y.is_zero() {
            v.exempt += 1;
            continue;
        }
        let ly = ln_int(&s.y);
        if ly.hi < thr.lo {
            v.exempt += 1;
            continue;
        }
        let decided = ly.lo >= thr.hi;
        let rhs = two_m.add(&ly);
        let ok = s.x.is_zero() || ln_int(&s.x).hi <= rhs.lo;
        let bad = !s.x.is_zero() && ln_int(&s.x).lo > rhs.hi;
        if decided {
            v.checked += 1;
            if !ok {
                v.violations.push((s.x.to_string(), s.y.to_string()));
            }
        } else if bad || !ok {
            v.undecided += 1;
        } else {
            v.checked += 1;
        }
    }
    v.vacuous = v.checked == 0;
    v.holds = v.violations.is_empty();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(r: u32, t: &[(u32, i64)]) -> BinaryForm {
        BinaryForm::from_i64(r, t).unwrap()
    }

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn naive(f: &BinaryForm, h: i64, b: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for y in -b..=b {
            for x in -b..=b {
                if (x, y) != (0, 0) && f.eval(&bi(x), &bi(y)).abs() <= bi(h) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn pairs(r: &EnumerationResult) -> Vec<(i64, i64)> {
        r.solutions
            .iter()
            .map(|s| (s.x.to_i64().unwrap(), s.y.to_i64().unwrap()))
            .collect()
    }

    #[test]
    fn eval_examples() {
        let f = form(3, &[(0, 1), (3, -2)]);
        assert_eq!(eval_form(&f, &bi(1), &bi(1)), bi(-1));
        assert_eq!(eval_form(&f, &bi(1), &bi(0)), bi(1));
        assert_eq!(eval_form(&f, &bi(6), &bi(-15)), eval_form(&f, &bi(2), &bi(-5)) * 27);
    }

    #[test]
    fn row_intervals() {
        let f = form(3, &[(0, 1), (3, -2)]);
        assert_eq!(x_intervals_for_y(&f, &bi(1), &bi(1)).unwrap(), vec![(bi(1), bi(1))]);
        assert_eq!(x_intervals_for_y(&f, &bi(0), &bi(30)).unwrap(), vec![(bi(-3), bi(3))]);
        let g = form(4, &[(0, 3), (1, -7), (2, 1), (4, -5)]);
        for y in -6..=6 {
            for h in [1i64, 5, 100, 3000] {
                let iv = x_intervals_for_y(&g, &bi(y), &bi(h)).unwrap();
                let got: Vec<i64> = iv
                    .iter()
                    .flat_map(|(a, b)| a.to_i64().unwrap()..=b.to_i64().unwrap())
                    .collect();
                let want: Vec<i64> = (-1000..=1000)
                    .filter(|&x| g.eval(&bi(x), &bi(y)).abs() <= bi(h))
                    .collect();
                assert_eq!(got, want, "y={y} h={h}");
            }
        }
    }

    #[test]
    fn pure_cubic_unit_solutions() {
        let f = form(3, &[(0, 1), (3, -2)]);
        let res = enumerate_box(&f, &bi(1), 10_000).unwrap();
        assert_eq!(pairs(&res), vec![(-1, -1), (-1, 0), (1, 0), (1, 1)]);
        assert_eq!(res.n_box, 4);
        assert_eq!(res.p_box, 4);
        assert!(res.is_consistent());
    }

    #[test]
    fn matches_naive_loop() {
        let forms = [
            form(3, &[(0, 1), (1, -1), (3, -1)]),
            form(4, &[(0, 2), (2, -3), (4, 7)]),
            form(5, &[(0, -1), (1, 4), (5, 3)]),
            form(3, &[(0, 7), (1, 2), (2, -5), (3, 1)]),
        ];
        for f in &forms {
            for h in [1i64, 17, 400] {
                let res = enumerate_box(f, &bi(h), 60).unwrap();
                assert_eq!(pairs(&res), naive(f, h, 60), "{f} h={h}");
            }
        }
    }

    #[test]
    fn zero_leading_coefficient_uses_exact_rows() {
        let f = form(3, &[(1, 1), (3, -2)]);
        let res = enumerate_box(&f, &bi(3), 20).unwrap();
        assert_eq!(pairs(&res), naive(&f, 3, 20));
    }

    #[test]
    fn sign_symmetry() {
        let f = form(4, &[(0, 2), (1, 1), (4, -3)]);
        let res = enumerate_box(&f, &bi(50), 100).unwrap();
        let set: BTreeSet<(i64, i64)> = pairs(&res).into_iter().collect();
        for &(x, y) in &set {
            assert!(set.contains(&(-x, -y)));
        }
    }

    #[test]
    fn band_counts() {
        let f = form(3, &[(0, 1), (3, -2)]);
        let res = enumerate_box(&f, &bi(8), 100).unwrap();
        let want = res
            .solutions
            .iter()
            .filter(|s| s.primitive && s.value.abs() >= bi(1) && s.value.abs() < bi(8))
            .count();
        assert_eq!(count_p_prime_band(&f, &bi(8), 100).unwrap(), want);
        assert_eq!(count_p_prime_band(&f, &bi(1_000_000), 3).unwrap(), 0);
    }

    #[test]
    fn dyadic_cover() {
        let f = form(3, &[(0, 1), (1, 1), (3, -3)]);
        let h = bi(500);
        let p = enumerate_box(&f, &h, 200).unwrap().p_box;
        let u = (h.bits() - 1) / 3;
        let mut sum = 0;
        for j in 0..=u + 1 {
            sum += count_p_prime_band(&f, &(bi(1) << (3 * j as usize)), 200).unwrap();
        }
        assert!(p <= sum);
    }

    #[test]
    fn divisor_identity() {
        let f = form(3, &[(0, 1), (3, -2)]);
        let v = divisor_identity_check(&f, &bi(100), 500).unwrap();
        assert!(v.holds, "{v:?}");
        assert_eq!(v.terms.len(), 4);
        let v1 = divisor_identity_check(&f, &bi(1), 100).unwrap();
        assert_eq!(v1.terms, vec![(1, v1.n_box)]);
        // a reducible form with primitive zeros
        let g = form(3, &[(0, 1), (3, -1)]);
        let vg = divisor_identity_check(&g, &bi(10), 30).unwrap();
        assert!(vg.holds, "{vg:?}");
    }

    #[test]
    fn lewis_mahler_on_pure_cubic() {
        let f = form(3, &[(0, 1), (3, -2)]);
        let res = enumerate_box(&f, &bi(1), 100).unwrap();
        let rs = find_roots_with(&f, &Target::Relative(64), Precision::default()).unwrap();
        let ln_m = Interval::around(2f64.ln());
        let v = verify_lewis_mahler(&f, &res, &ln_m, &bi(-108), &rs).unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|x| x.holds));
        let one = v.iter().find(|x| x.x == "1").unwrap();
        assert!((one.log_min_dist - (2f64.cbrt() - 1.0).ln()).abs() < 1e-9);
        assert!((one.log_rhs - (24.0 / 108f64.sqrt()).ln()).abs() < 1e-9);
    }

    #[test]
    fn corollary_vacuous_below_disc_threshold() {
        let f = form(3, &[(0, 1), (3, -2)]);
        let res = enumerate_box(&f, &bi(1), 50).unwrap();
        let v = verify_corollary_52(&f, &res, &bi(1), &Interval::around(2f64.ln()), &bi(-108));
        assert!(!v.disc_hypothesis && v.vacuous && v.holds);
    }

    #[test]
    fn corollary_checked_on_planted_solution() {
        // D = 2272 >= 2^6 3^3 and (411, 362) solves |F| <= 1 with |y| >= M^2
        let f = form(3, &[(0, 1), (1, -6), (2, 2), (3, 4)]);
        let disc = crate::invariants::discriminant(&f).unwrap();
        assert_eq!(disc, bi(2272));
        let mm = crate::invariants::mahler_measure(&f, 1e-12).unwrap();
        let res = enumerate_box(&f, &bi(1), 500).unwrap();
        assert!(res.solutions.iter().any(|s| s.x == bi(411) && s.y == bi(362)));
        let v = verify_corollary_52(&f, &res, &bi(1), &mm.ln, &disc);
        assert!(v.disc_hypothesis);
        assert!(!v.vacuous);
        assert!(v.checked >= 2);
        assert!(v.holds, "{v:?}");
    }

    #[test]
    fn classification_by_thresholds() {
        use crate::bounds::{BoundInputs, BoundReport};
        let f = form(7, &[(0, 1), (1, 1), (7, -3)]);
        let res = enumerate_box(&f, &bi(50), 40).unwrap();
        let rep = BoundReport::compute(BoundInputs::from_form(&f, &bi(50)).unwrap()).unwrap();
        let (c, counts) = classify_solutions(&res, &rep).unwrap();
        // Y_S is astronomically large, so everything is small
        assert!(c.solutions.iter().all(|s| s.class == SolutionClass::Small));
        assert_eq!(counts.large, 0);
        assert_eq!(counts.medium, 0);
        assert_eq!(counts.lar_ok, Some(true));
        assert_eq!(counts.sma_ok, Some(true));
        assert!(c.to_json()["Y_S_log"].is_string());
    }
}
