//! Explicit bound formulas for Thue inequalities, evaluated in log space.
//!
//! Every function evaluates one displayed formula as written, constants
//! included. Hypotheses are reported as flags; only the hard domain
//! restrictions of each formula are errors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::dyadic::Dyadic;
use crate::enclosure::Interval;
use crate::error::{Error, Result};
use crate::forms::BinaryForm;
use crate::invariants::discriminant;
use crate::logscalar::LogScalar;
use crate::poly::IntPoly;
use crate::primes::next_prime_after;
use crate::real::Real;
use crate::roots::{find_roots_poly, CertifiedRoot, Precision, Target};

fn r_at_least_3(r: u32) -> Result<()> {
    if r < 3 {
        return Err(Error::DegreeTooSmall(r));
    }
    Ok(())
}

fn h_positive(h: &BigInt) -> Result<()> {
    if !h.is_positive() {
        return Err(Error::Hypothesis(format!("h must be at least 1, got {h}")));
    }
    Ok(())
}

fn ln_int(n: &BigInt) -> Real {
    Real::from_bigint(n).ln()
}

fn real(n: u64) -> Real {
    Real::from_u64(n)
}

/// `log* x`: 1 for `x <= e`, `ln x` above.
pub fn log_star(x: &Real) -> Real {
    if x <= &Real::e() {
        Real::one()
    } else {
        x.ln()
    }
}

/// `log*` of a nonnegative value given in log space.
pub fn log_star_ls(x: &LogScalar) -> Real {
    if !x.is_positive() {
        return Real::one();
    }
    x.log_mag.max(&Real::one())
}

/// `log*` of `e^l`, i.e. `max(1, l)`.
fn log_star_of_exp(l: &Real) -> Real {
    l.max(&Real::one())
}

/// `z(r) = 68 ln^3 r + 150 ln^2 r + ln r`.
pub fn z_r(r: u32) -> Result<Real> {
    r_at_least_3(r)?;
    let l = real(r as u64).ln();
    let l2 = &l * &l;
    let l3 = &l2 * &l;
    Ok(l3 * 68 + l2 * 150 + l)
}

/// `R = e^(z(r) + 5)`.
pub fn big_r(r: u32) -> Result<LogScalar> {
    Ok(LogScalar::exp(z_r(r)? + 5))
}

/// `(1 + log R) / r <= 1`.
pub fn r_condition_holds(r: u32) -> Result<bool> {
    let log_r = big_r(r)?.log_mag;
    Ok((log_r + 1) / Real::from_u64(r as u64) <= Real::one())
}

/// The integer `u` with `2^(r u) <= m < 2^(r (u + 1))`.
pub fn u_of(m: &BigInt, r: u32) -> Result<u64> {
    if m < &BigInt::one() {
        return Err(Error::Hypothesis(format!("u(m) needs m >= 1, got {m}")));
    }
    if r == 0 {
        return Err(Error::DegreeTooSmall(r));
    }
    // floor(log2 m) = bits - 1, exactly
    Ok((m.bits() - 1) / r as u64)
}

/// `q(r) = 13 + 2 z(r) / (r (r - 1))`.
pub fn q_r(r: u32) -> Result<Real> {
    let z = z_r(r)?;
    let rr = (r as u64) * (r as u64 - 1);
    Ok(z * 2 / real(rr) + 13)
}

/// The global cap `2 e^q(r) <= e^105`, together with `z(r)/(r(r-1)) <= 45.4`.
pub fn q_cap_holds(r: u32) -> Result<bool> {
    let z = z_r(r)?;
    let rr = real((r as u64) * (r as u64 - 1));
    let ratio_ok = &z / &rr <= Real::parse("45.4");
    let cap_ok = Real::ln2() + q_r(r)? <= Real::from_i64(105);
    Ok(ratio_ok && cap_ok)
}

fn ln_disc_root(r: u32, abs_d: &BigInt) -> Result<Real> {
    if abs_d.is_zero() {
        return Err(Error::Hypothesis("discriminant is zero".into()));
    }
    let rr = real((r as u64) * (r as u64 - 1));
    Ok(ln_int(&abs_d.abs()) / rr)
}

/// `U_0 = e^q(r) 2^(2u(h) - 1) / |D|^(1/r(r-1))` and
/// `U_1 = 3 + e^q(r) h^(2/r) / |D|^(1/r(r-1))`.
pub fn u0_u1(r: u32, abs_d: &BigInt, h: &BigInt) -> Result<(LogScalar, LogScalar)> {
    r_at_least_3(r)?;
    h_positive(h)?;
    let q = q_r(r)?;
    let dr = ln_disc_root(r, abs_d)?;
    let u = u_of(h, r)? as i64;
    let u0 = LogScalar::exp(&q + Real::ln2() * (2 * u - 1) - &dr);
    let frac = LogScalar::exp(&q + ln_int(h) * 2 / real(r as u64) - &dr);
    let u1 = frac.add_i64(3);
    Ok((u0, u1))
}

#[derive(Clone, Debug, PartialEq)]
pub enum PrimeChoice {
    Exact(u64),
    /// `U_0` is beyond the exact range; carries `ln U_0`.
    TooLarge(Real),
}

/// The least prime exceeding `U_0`, or 2 when `U_0 < 2`.
pub fn choose_prime(u0: &LogScalar) -> PrimeChoice {
    let two = LogScalar::from_i64(2);
    if u0 < &two {
        return PrimeChoice::Exact(2);
    }
    let limit = Real::ln2() * 62;
    if u0.log_mag >= limit {
        return PrimeChoice::TooLarge(u0.log_mag.clone());
    }
    let floor = u0.to_real().floor().to_u64().expect("below 2^62");
    match next_prime_after(floor) {
        Some(p) => PrimeChoice::Exact(p),
        None => PrimeChoice::TooLarge(u0.log_mag.clone()),
    }
}

/// Parameters of the Thue-Siegel principle for degree `r`.
#[derive(Clone, Debug)]
pub struct ThueSiegel {
    pub a: Real,
    pub b: Real,
    pub t: Real,
    pub tau: Real,
    pub lambda: Real,
    pub delta: Real,
    /// Table constant with `r - lambda >= alpha r`.
    pub alpha: Real,
    pub lambda_lt_r: bool,
    pub alpha_bound_holds: bool,
}

/// `(a, b)` and `alpha` from the degree table, as decimal literals.
fn ab_table(r: u32) -> (&'static str, &'static str, &'static str) {
    match r {
        24.. => (".5", ".54", ".36"),
        9..=23 => (".4", ".48", ".08"),
        6..=8 => (".3", ".36", ".09"),
        4 | 5 => (".2", ".24", ".06"),
        _ => (".1", ".15", ".03"),
    }
}

pub fn thue_siegel_params(r: u32) -> Result<ThueSiegel> {
    r_at_least_3(r)?;
    let (a, b, alpha) = ab_table(r);
    let (a, b, alpha) = (Real::parse(a), Real::parse(b), Real::parse(alpha));
    let rr = real(r as u64);
    let a2 = &a * &a;
    let r_a2 = &rr + &a2;
    let t = (Real::from_i64(2) / &r_a2).sqrt();
    let tau = &b * &t;
    let one_b = Real::one() - &b;
    let lambda = (&r_a2 * 2).sqrt() / &one_b;
    let delta = (&b * &b - &a2) * 2 / ((&rr - 1) * &r_a2);
    let lambda_lt_r = lambda < rr;
    let alpha_bound_holds = &rr - &lambda >= &alpha * &rr;
    Ok(ThueSiegel {
        a,
        b,
        t,
        tau,
        lambda,
        delta,
        alpha,
        lambda_lt_r,
        alpha_bound_holds,
    })
}

/// `A_1 = (1/a^2)(log M(F) + r/2)`.
pub fn a1(r: u32, ln_m: &Real, a: &Real) -> Real {
    (ln_m + Real::from_u64(r as u64) / 2) / (a * a)
}

/// `nu` and `eta` of the large-solution count.
pub fn nu_eta(r: u32, a: &Real, lambda: &Real, h: &BigInt) -> Result<(Real, Real)> {
    r_at_least_3(r)?;
    h_positive(h)?;
    let rr = real(r as u64);
    if lambda >= &rr {
        return Err(Error::Hypothesis(format!("lambda = {lambda} is not below r = {r}")));
    }
    let ln2 = Real::ln2();
    let inv_a2 = (a * a).recip();
    let num = (&ln2 * 3 + &rr * &inv_a2 / 2 + (&inv_a2 + 1) * ln_int(h)) * (&rr - 1);
    let den = &rr * &ln2 - rr.ln() / 2;
    let nu = num / den;
    let eta = ((&nu + &inv_a2 + 2) * lambda - 2) / (&rr - lambda);
    Ok((nu, eta))
}

/// The large-solution count before simplification:
/// `min(T,S) (2 + floor(log eta / log(r-1)) + floor(log(...) / log(r-1)))`.
pub fn large_solution_count_exact(r: u32, h: &BigInt, min_ts: &Real) -> Result<Real> {
    let ts = thue_siegel_params(r)?;
    let (nu, eta) = nu_eta(r, &ts.a, &ts.lambda, h)?;
    let rr = real(r as u64);
    let lr1 = (&rr - 1).ln();
    let c = &nu + (&ts.a * &ts.a).recip() + 2;
    let first = Real::from_bigint(&(eta.ln() / &lr1).floor());
    let ratio = (&c * &rr - 2) / (&ts.delta * (&c * &ts.lambda - 2));
    let second = Real::from_bigint(&(ratio.ln() / &lr1).floor());
    Ok(min_ts * (first + second + 2))
}

/// `|D(F)| >= R^2 2^(2r) r^(r-1) h^(2(r-1))`.
pub fn large_solution_hypothesis(r: u32, abs_d: &BigInt, h: &BigInt) -> Result<bool> {
    r_at_least_3(r)?;
    h_positive(h)?;
    if abs_d.is_zero() {
        return Ok(false);
    }
    let rr = real(r as u64);
    let rhs = big_r(r)?.log_mag * 2
        + Real::ln2() * (2 * r as i64)
        + rr.ln() * (r as i64 - 1)
        + ln_int(h) * (2 * (r as i64 - 1));
    Ok(ln_int(&abs_d.abs()) >= rhs)
}

/// `log log* h^(1/r) / log(r-1)`, the correction in the large-solution bound.
fn loglog_term(r: u32, ln_arg: &Real) -> Real {
    let ls = log_star_of_exp(ln_arg);
    ls.ln() / real(r as u64 - 1).ln()
}

/// `2 min(T(F), S(F)) (15 + log log* h^(1/r) / log(r-1))`.
pub fn large_solution_bound(r: u32, h: &BigInt, t_f: u64, s_f: &Real) -> Result<LogScalar> {
    r_at_least_3(r)?;
    h_positive(h)?;
    let m = real(t_f).min(s_f);
    let l = ln_int(h) / real(r as u64);
    let v = m * 2 * (loglog_term(r, &l) + 15);
    Ok(LogScalar::from_real(&v))
}

/// `r + r log Y / (log M(F) - r log(9/2) - log h)`, valid when
/// `M(F) > (9/2)^r h`.
pub fn small_solution_corollary(r: u32, ln_m: &Real, h: &BigInt, y: &LogScalar) -> Result<LogScalar> {
    r_at_least_3(r)?;
    h_positive(h)?;
    let rr = real(r as u64);
    let den = ln_m - &rr * (Real::from_i64(9) / 2).ln() - ln_int(h);
    if !den.is_positive() {
        return Err(Error::Hypothesis(
            "M(F) <= (9/2)^r h: denominator is not positive".into(),
        ));
    }
    let v = &rr + &rr * y.ln() / den;
    Ok(LogScalar::from_real(&v))
}

/// `|D(F)| >= e^(10 r (r-1) + 2 z(r)) h^(2(r-1))`.
pub fn reduced_form_disc_hypothesis(r: u32, abs_d: &BigInt, h: &BigInt) -> Result<bool> {
    r_at_least_3(r)?;
    h_positive(h)?;
    if abs_d.is_zero() {
        return Ok(false);
    }
    let rr = (r as i64) * (r as i64 - 1);
    let rhs = Real::from_i64(10 * rr) + z_r(r)? * 2 + ln_int(h) * (2 * (r as i64 - 1));
    Ok(ln_int(&abs_d.abs()) >= rhs)
}

/// `1 + 8r + 4T(F)(15 + log log*(2h^(1/r)) / log(r-1))`.
pub fn proposition_81(r: u32, t_f: u64, h: &BigInt) -> Result<LogScalar> {
    r_at_least_3(r)?;
    h_positive(h)?;
    let l = Real::ln2() + ln_int(h) / real(r as u64);
    let v = real(t_f) * 4 * (loglog_term(r, &l) + 15) + real(1 + 8 * r as u64);
    Ok(LogScalar::from_real(&v))
}

/// `1 + 40(6 + z(r) + 25(sr)^(1/2)) + 4T(F)(15 + log log* h^(1/r) / log(r-1))`.
pub fn proposition_92(r: u32, s: u64, t_f: u64, h: &BigInt) -> Result<LogScalar> {
    r_at_least_3(r)?;
    h_positive(h)?;
    let l = ln_int(h) / real(r as u64);
    let sr = real(s * r as u64).sqrt();
    let v = (z_r(r)? + sr * 25 + 6) * 40 + 1 + real(t_f) * 4 * (loglog_term(r, &l) + 15);
    Ok(LogScalar::from_real(&v))
}

/// `S(F) <= 7 + z(r) + 25 (sr)^(1/2)`.
pub fn s_f_upper(r: u32, s: u64) -> Result<Real> {
    Ok(z_r(r)? + real(s * r as u64).sqrt() * 25 + 7)
}

/// `20 (S(F) - 1)`, the small-solution count in terms of `S(F)`.
pub fn small_solution_count_sf(s_f: &Real) -> Real {
    (s_f - 1) * 20
}

/// The refined small-solution counts with `6R + 5`:
/// `(|Z| bound, |Sm(Y)| bound)`, valid when `M(F) > (11/2)^r h`.
pub fn lemma_z_bounds(r: u32, set_s: usize, ln_m: &Real, h: &BigInt, y: &LogScalar) -> Result<(LogScalar, LogScalar)> {
    r_at_least_3(r)?;
    h_positive(h)?;
    let rr = real(r as u64);
    let den = ln_m - &rr * (Real::from_i64(11) / 2).ln() - ln_int(h);
    if !den.is_positive() {
        return Err(Error::Hypothesis(
            "M(F) <= (11/2)^r h: denominator is not positive".into(),
        ));
    }
    let ln_6r5 = big_r(r)?.scale(6).add_i64(5).log_mag;
    let ln11 = Real::from_i64(11).ln();
    let base = real(set_s as u64 + 1);
    let z = &base + &rr * (&ln_6r5 - &ln11) / &den;
    let sm = &base + &rr * (y.ln() + &ln_6r5 - &ln11) / &den;
    Ok((LogScalar::from_real(&z), LogScalar::from_real(&sm)))
}

/// `log Y_L` and `log Y_S` as log-space scalars.
pub fn y_l_y_s(r: u32, s: u64, h: &BigInt, ln_m: &Real, ts: &ThueSiegel) -> Result<(LogScalar, LogScalar)> {
    r_at_least_3(r)?;
    h_positive(h)?;
    let rr = real(r as u64);
    if ts.lambda >= rr {
        return Err(Error::Hypothesis("Y_L needs lambda < r".into()));
    }
    if (r as u64) <= 2 * s {
        return Err(Error::Hypothesis(format!("Y_S needs r > 2s (r={r}, s={s})")));
    }
    let ln_r_big = big_r(r)?.log_mag;
    let lh = ln_int(h);
    let a1v = a1(r, ln_m, &ts.a);
    let r_l = &rr - &ts.lambda;
    let inner = Real::ln2() * (r as i64 + 1) + &rr * rr.ln() / 2 + &rr * ln_m + &ln_r_big + &lh;
    let ln_yl = inner / &r_l + &ts.lambda / &r_l * (Real::from_i64(4).ln() + a1v);
    let ss = real(s);
    let ln_ys = (&rr * (ss.ln() + 6) + &ss * 2 * &ln_r_big + &lh) / real(r as u64 - 2 * s);
    Ok((LogScalar::exp(ln_yl), LogScalar::exp(ln_ys)))
}

/// `K = 2 R (rs)^2 (4 e^3 s)^(r/s) h^(1/s) H(F)^(1/r - 1/s)`.
pub fn k_constant(r: u32, s: u64, h: &BigInt, height: &BigInt) -> Result<LogScalar> {
    r_at_least_3(r)?;
    h_positive(h)?;
    let rr = real(r as u64);
    let ss = real(s);
    let v = Real::ln2()
        + big_r(r)?.log_mag
        + real(r as u64 * s).ln() * 2
        + &rr / &ss * (Real::from_i64(4).ln() + 3 + ss.ln())
        + ln_int(h) / &ss
        + (rr.recip() - ss.recip()) * ln_int(height);
    Ok(LogScalar::exp(v))
}

/// `epsilon = 0` if `r >= 3 s^3`, else 1.
pub fn epsilon(r: u32, s: u64) -> u32 {
    if r as u128 >= 3 * (s as u128).pow(3) {
        0
    } else {
        1
    }
}

/// Counts of large, small and medium primitive solutions.
#[derive(Clone, Debug)]
pub struct SolutionClassCounts {
    pub lar: LogScalar,
    pub sma: LogScalar,
    pub med: LogScalar,
}

/// `lar = 132 s`, `sma = 1 + 16(12 s + z(r) + log h^(1/r))` and
/// `med = 648 s (log* s)^eps + 36 s log(1 + log h^(1/(r(r-s))) / log H(F))`,
/// with `log H(F)` read as `log* H(F) = 1` when `H(F) = 1`.
pub fn medium_small_large(r: u32, s: u64, h: &BigInt, height: &BigInt) -> Result<SolutionClassCounts> {
    r_at_least_3(r)?;
    h_positive(h)?;
    if (r as u64) < 3 * s {
        return Err(Error::Hypothesis(format!("needs r >= 3s (r={r}, s={s})")));
    }
    if height < &BigInt::one() {
        return Err(Error::Hypothesis("H(F) must be at least 1".into()));
    }
    let ss = real(s);
    let rr = real(r as u64);
    let lh = ln_int(h);
    let lar = &ss * 132;
    let sma = (&ss * 12 + z_r(r)? + &lh / &rr) * 16 + 1;
    let ls = log_star(&ss);
    let pow = if epsilon(r, s) == 0 { Real::one() } else { ls };
    let l_height = if height.is_one() { Real::one() } else { ln_int(height) };
    let ratio = &lh / (&rr * real(r as u64 - s)) / l_height;
    let med = &ss * 648 * pow + &ss * 36 * (ratio + 1).ln();
    Ok(SolutionClassCounts {
        lar: LogScalar::from_real(&lar),
        sma: LogScalar::from_real(&sma),
        med: LogScalar::from_real(&med),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Theorem {
    T1,
    T2,
    T3,
}

impl std::str::FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" | "T1" | "t1" => Ok(Theorem::T1),
            "2" | "T2" | "t2" => Ok(Theorem::T2),
            "3" | "T3" | "t3" => Ok(Theorem::T3),
            other => Err(Error::Syntax(format!("unknown theorem {other:?}"))),
        }
    }
}

/// Smallest degree for which the second theorem applies.
pub const T2_MIN_DEGREE: u32 = 132_434;

/// `2(1 + log* h^(1/r))(3 + 4h^(1/r) + e^105 h^(2/r) / |D|^(1/r(r-1)))`.
fn t12_prefactor(l: &Real, dr: &Real) -> LogScalar {
    let a = LogScalar::from_real(&(log_star_of_exp(l) + 1)).scale(2);
    let big = LogScalar::exp(Real::from_i64(105) + l * 2 - dr);
    let mid = big.add(&LogScalar::exp(l.clone()).scale(4)).add_i64(3);
    a.mul(&mid)
}

/// Evaluate one theorem's displayed bound on `N(F,h)`. The second and third
/// theorems refuse when their degree conditions fail.
pub fn theorem_bound(which: Theorem, r: u32, s: u64, h: &BigInt, abs_d: &BigInt, height: &BigInt) -> Result<LogScalar> {
    r_at_least_3(r)?;
    h_positive(h)?;
    if s < 1 {
        return Err(Error::Hypothesis("s must be at least 1".into()));
    }
    if abs_d.is_zero() {
        return Err(Error::Hypothesis("discriminant is zero".into()));
    }
    let rr = real(r as u64);
    let ss = real(s);
    let l = ln_int(h) / &rr;
    let l2 = Real::ln2() + &l;
    let lr1 = real(r as u64 - 1).ln();
    let loglog2 = log_star_of_exp(&l2).ln() / &lr1;
    match which {
        Theorem::T1 | Theorem::T2 => {
            if which == Theorem::T2 && r < T2_MIN_DEGREE {
                return Err(Error::Refusal(format!(
                    "the second theorem needs r >= {T2_MIN_DEGREE}, got r = {r}"
                )));
            }
            let dr = ln_disc_root(r, abs_d)?;
            let pre = t12_prefactor(&l, &dr);
            let tail = &ss * 48 * (&loglog2 + 15);
            let inner = if which == Theorem::T1 {
                tail + real(1 + 8 * r as u64)
            } else {
                (z_r(r)? + real(s * r as u64).sqrt() * 25 + 6) * 40 + 1 + tail
            };
            Ok(pre.mul(&LogScalar::from_real(&inner)))
        }
        Theorem::T3 => {
            if (r as u64) < 3 * s {
                return Err(Error::Refusal(format!(
                    "the third theorem needs r >= 3s, got r = {r}, s = {s}"
                )));
            }
            if height < &BigInt::one() {
                return Err(Error::Hypothesis("H(F) must be at least 1".into()));
            }
            let pre = LogScalar::from_real(&(log_star_of_exp(&l) + 1))
                .scale(2)
                .mul(&LogScalar::exp(l.clone()));
            let eps_pow = if epsilon(r, s) == 0 { Real::one() } else { log_star(&ss) };
            let arg = &l2 / real(r as u64 - s);
            let ratio = log_star_of_exp(&arg) / log_star(&Real::from_bigint(height));
            let inner = &ss * 324
                + &ss * 648 * eps_pow
                + z_r(r)? * 16
                + log_star_of_exp(&l2) * 16
                + &ss * 36 * (ratio + 1).ln()
                + 1;
            Ok(pre.mul(&LogScalar::from_real(&inner)))
        }
    }
}

/// `P(F,h)` and `N(F,h)` bounds from a count function `g`:
/// `P <= 2 g(2^r h)(1 + log* h^(1/r))(3 + e^q(r) h^(2/r) / |D|^(1/r(r-1)))` and
/// `N <= 2 g(2^r h)(1 + log* h^(1/r))(3 + 4h^(1/r) + 2 e^q(r) h^(2/r) / |D|^(1/r(r-1)))`.
pub fn lemma_35_assemble<G>(g: G, r: u32, h: &BigInt, abs_d: &BigInt) -> Result<(LogScalar, LogScalar)>
where
    G: Fn(&LogScalar) -> LogScalar,
{
    r_at_least_3(r)?;
    h_positive(h)?;
    let rr = real(r as u64);
    let lh = ln_int(h);
    let l = &lh / &rr;
    let dr = ln_disc_root(r, abs_d)?;
    let m = LogScalar::exp(Real::ln2() * (r as i64) + &lh);
    let gm = g(&m);
    let common = gm.scale(2).mul(&LogScalar::from_real(&(log_star_of_exp(&l) + 1)));
    let frac = LogScalar::exp(q_r(r)? + &l * 2 - dr);
    let p = common.mul(&frac.add_i64(3));
    let n = common.mul(&frac.scale(2).add(&LogScalar::exp(l).scale(4)).add_i64(3));
    Ok((p, n))
}

/// `max(|x|, |y|)`.
pub fn pair_height(x: &BigInt, y: &BigInt) -> BigInt {
    x.abs().max(y.abs())
}

fn decide_margin() -> Real {
    Real::parse("1e-60")
}

/// Whether `|alpha - x/y| < (4 e^A1 H(x,y))^-lambda` is decided by this disk.
/// `None` when the disk is too coarse.
pub fn very_good_verdict(
    root: &CertifiedRoot,
    x: &BigInt,
    y: &BigInt,
    a1v: &Real,
    lambda: &Real,
) -> Result<Option<bool>> {
    if y.is_zero() {
        return Err(Error::Hypothesis(
            "y = 0: compare y/x against the reciprocal roots instead".into(),
        ));
    }
    let q = BigRational::new(x.clone(), y.clone());
    let dre = root.center.re.to_rational() - &q;
    let dim = root.center.im.to_rational();
    let d2 = &dre * &dre + &dim * &dim;
    let dc = Real::from_rational(&d2).sqrt();
    let rad = Real::from_rational(&root.radius.to_rational());
    let ln_thr = -(lambda * (Real::from_i64(4).ln() + a1v + ln_int(&pair_height(x, y))));
    let margin = decide_margin();
    let hi = &dc + &rad;
    if hi.is_positive() && hi.ln() < &ln_thr - &margin {
        return Ok(Some(true));
    }
    let lo = &dc - &rad;
    if lo.is_positive() && lo.ln() > &ln_thr + &margin {
        return Ok(Some(false));
    }
    Ok(None)
}

/// [`very_good_verdict`] with the root recomputed at finer radii until the
/// comparison is decided or the precision ceiling is reached.
pub fn is_very_good_approx(
    f: &IntPoly,
    root: &CertifiedRoot,
    x: &BigInt,
    y: &BigInt,
    a1v: &Real,
    lambda: &Real,
    prec: Precision,
) -> Result<bool> {
    if let Some(v) = very_good_verdict(root, x, y, a1v, lambda)? {
        return Ok(v);
    }
    let mut bits: i64 = 64;
    let mut start = prec.start_bits;
    let center = root.center.clone();
    loop {
        let rs = find_roots_poly(
            f,
            &Target::Absolute(Dyadic::pow2(-bits)),
            Precision {
                start_bits: start,
                max_bits: prec.max_bits,
            },
        )?;
        let near = rs
            .roots
            .iter()
            .min_by(|a, b| a.center.sub(&center).norm_sqr().cmp(&b.center.sub(&center).norm_sqr()))
            .expect("nonempty root set");
        if let Some(v) = very_good_verdict(near, x, y, a1v, lambda)? {
            return Ok(v);
        }
        if rs.precision >= prec.max_bits {
            return Err(Error::PrecisionCeiling(prec.max_bits));
        }
        bits *= 2;
        start = (rs.precision * 2).min(prec.max_bits);
    }
}

/// Where the Mahler measure used by the report came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MahlerSource {
    /// Upper end of a certified interval.
    Certified,
    /// `(r + 1)^(1/2) H(F)`.
    HeightBound,
}

/// Inputs of a [`BoundReport`].
#[derive(Clone, Debug)]
pub struct BoundInputs {
    pub r: u32,
    pub s: u64,
    pub h: BigInt,
    pub abs_disc: BigInt,
    pub height: BigInt,
    /// Certified enclosure of `ln M(F)`, if available.
    pub ln_mahler: Option<Interval>,
    /// Certified enclosure of `S(F)`, if available.
    pub s_f: Option<Interval>,
    /// Cardinality of the approximation set, if computed.
    pub set_s: Option<usize>,
}

impl BoundInputs {
    pub fn from_form(f: &BinaryForm, h: &BigInt) -> Result<Self> {
        f.check_thue_degree()?;
        let d = discriminant(f)?;
        Ok(BoundInputs {
            r: f.degree(),
            s: f.s() as u64,
            h: h.clone(),
            abs_disc: d.abs(),
            height: f.height(),
            ln_mahler: None,
            s_f: None,
            set_s: None,
        })
    }
}

/// Hypothesis flags recorded by a [`BoundReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub large_solution_disc: bool,
    pub reduced_form_disc: bool,
    pub r_condition: bool,
    pub corollary_disc: bool,
    pub lambda_lt_r: bool,
    pub r_gt_2s: bool,
    pub r_ge_3s: bool,
    pub r_ge_t2_min: bool,
    pub q_cap: bool,
}

/// Every intermediate quantity for one `(F, h)`.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub inputs: BoundInputs,
    pub log_star_h: Real,
    pub z_r: Real,
    pub r_log: Real,
    pub u_h: u64,
    pub q_r: Real,
    pub u0: LogScalar,
    pub u1: LogScalar,
    pub prime: PrimeChoice,
    pub ts: ThueSiegel,
    pub mahler_source: MahlerSource,
    pub ln_m: Real,
    pub a1: Real,
    pub nu_eta: Option<(Real, Real)>,
    pub t_f: u64,
    pub t_f_transformed: u64,
    pub s_f_upper: Real,
    pub large_solution: LogScalar,
    pub prop81: LogScalar,
    pub prop92: LogScalar,
    pub y_l_y_s: Option<(LogScalar, LogScalar)>,
    pub k: LogScalar,
    pub epsilon: u32,
    pub classes: Option<SolutionClassCounts>,
    pub thm1: LogScalar,
    pub thm2: Option<LogScalar>,
    pub thm3: Option<LogScalar>,
    pub hypotheses: Hypotheses,
}

const DIGITS: usize = 30;

fn s30(x: &Real) -> Value {
    Value::String(x.to_sig_string(DIGITS))
}

fn l30(x: &LogScalar) -> Value {
    if x.is_positive() {
        Value::String(x.log_string(DIGITS))
    } else {
        Value::Null
    }
}

impl BoundReport {
    pub fn compute(inputs: BoundInputs) -> Result<Self> {
        let r = inputs.r;
        let s = inputs.s;
        let h = &inputs.h;
        r_at_least_3(r)?;
        h_positive(h)?;
        if s < 1 {
            return Err(Error::Hypothesis("s must be at least 1".into()));
        }
        let rr = real(r as u64);
        let lh = ln_int(h);
        let log_star_h = log_star_of_exp(&(&lh / &rr));
        let z = z_r(r)?;
        let r_log = big_r(r)?.log_mag;
        let u_h = u_of(h, r)?;
        let q = q_r(r)?;
        let (u0, u1) = u0_u1(r, &inputs.abs_disc, h)?;
        let prime = choose_prime(&u0);
        let ts = thue_siegel_params(r)?;
        let (mahler_source, ln_m) = match &inputs.ln_mahler {
            Some(iv) => (MahlerSource::Certified, Real::from_f64(iv.hi)),
            None => (
                MahlerSource::HeightBound,
                (rr.clone() + 1).ln() / 2 + ln_int(&inputs.height),
            ),
        };
        let a1v = a1(r, &ln_m, &ts.a);
        let nu_eta = if ts.lambda_lt_r {
            Some(nu_eta(r, &ts.a, &ts.lambda, h)?)
        } else {
            None
        };
        let t_f = 6 * s;
        let t_f_transformed = 12 * s - 5;
        let s_upper = s_f_upper(r, s)?;
        let s_for_min = match &inputs.s_f {
            Some(iv) => Real::from_f64(iv.hi),
            None => s_upper.clone(),
        };
        let large_solution = large_solution_bound(r, h, t_f, &s_for_min)?;
        let prop81 = proposition_81(r, t_f_transformed, h)?;
        let prop92 = proposition_92(r, s, t_f_transformed, h)?;
        let r_gt_2s = r as u64 > 2 * s;
        let r_ge_3s = r as u64 >= 3 * s;
        let y_l_y_s = if ts.lambda_lt_r && r_gt_2s {
            Some(y_l_y_s(r, s, h, &ln_m, &ts)?)
        } else {
            None
        };
        let k = k_constant(r, s, h, &inputs.height)?;
        let classes = if r_ge_3s {
            Some(medium_small_large(r, s, h, &inputs.height)?)
        } else {
            None
        };
        let thm1 = theorem_bound(Theorem::T1, r, s, h, &inputs.abs_disc, &inputs.height)?;
        let thm2 = if r >= T2_MIN_DEGREE {
            Some(theorem_bound(Theorem::T2, r, s, h, &inputs.abs_disc, &inputs.height)?)
        } else {
            None
        };
        let thm3 = if r_ge_3s {
            Some(theorem_bound(Theorem::T3, r, s, h, &inputs.abs_disc, &inputs.height)?)
        } else {
            None
        };
        let hypotheses = Hypotheses {
            large_solution_disc: large_solution_hypothesis(r, &inputs.abs_disc, h)?,
            reduced_form_disc: reduced_form_disc_hypothesis(r, &inputs.abs_disc, h)?,
            r_condition: r_condition_holds(r)?,
            corollary_disc: corollary_disc_hypothesis(r, &inputs.abs_disc, h),
            lambda_lt_r: ts.lambda_lt_r,
            r_gt_2s,
            r_ge_3s,
            r_ge_t2_min: r >= T2_MIN_DEGREE,
            q_cap: q_cap_holds(r)?,
        };
        Ok(BoundReport {
            inputs,
            log_star_h,
            z_r: z,
            r_log,
            u_h,
            q_r: q,
            u0,
            u1,
            prime,
            ts,
            mahler_source,
            ln_m,
            a1: a1v,
            nu_eta,
            t_f,
            t_f_transformed,
            s_f_upper: s_upper,
            large_solution,
            prop81,
            prop92,
            y_l_y_s,
            k,
            epsilon: epsilon(r, s),
            classes,
            thm1,
            thm2,
            thm3,
            hypotheses,
        })
    }

    /// Stable JSON rendering; reals as 30-significant-digit decimal strings.
    pub fn to_json(&self) -> Value {
        let i = &self.inputs;
        let (p, log_p) = match &self.prime {
            PrimeChoice::Exact(p) => (json!(p), s30(&real(*p).ln())),
            PrimeChoice::TooLarge(l) => (Value::Null, s30(l)),
        };
        let (nu, eta) = match &self.nu_eta {
            Some((n, e)) => (s30(n), s30(e)),
            None => (Value::Null, Value::Null),
        };
        let (yl, ys) = match &self.y_l_y_s {
            Some((a, b)) => (l30(a), l30(b)),
            None => (Value::Null, Value::Null),
        };
        let (lar, sma, med) = match &self.classes {
            Some(c) => (s30(&c.lar.to_real()), s30(&c.sma.to_real()), s30(&c.med.to_real())),
            None => (Value::Null, Value::Null, Value::Null),
        };
        let mut m = Map::new();
        let mut put = |k: &str, v: Value| {
            m.insert(k.to_string(), v);
        };
        put("r", json!(i.r));
        put("s", json!(i.s));
        put("h", json!(i.h.to_string()));
        put("abs_disc", json!(i.abs_disc.to_string()));
        put("height", json!(i.height.to_string()));
        put("epsilon", json!(self.epsilon));
        put("log_star_h", s30(&self.log_star_h));
        put("z_r", s30(&self.z_r));
        put("R_log", s30(&self.r_log));
        put("u_h", json!(self.u_h));
        put("q_r", s30(&self.q_r));
        put("U0_log", l30(&self.u0));
        put("U1_log", l30(&self.u1));
        put("p", p);
        put("log_p", log_p);
        put("a", s30(&self.ts.a));
        put("b", s30(&self.ts.b));
        put("t", s30(&self.ts.t));
        put("tau", s30(&self.ts.tau));
        put("lambda", s30(&self.ts.lambda));
        put("delta", s30(&self.ts.delta));
        put("alpha", s30(&self.ts.alpha));
        put("mahler_source", json!(self.mahler_source));
        put("log_M", s30(&self.ln_m));
        put("A1", s30(&self.a1));
        put("A1_needs_M", json!(self.mahler_source == MahlerSource::HeightBound));
        put("nu", nu);
        put("eta", eta);
        put("T_F", json!(self.t_f));
        put("T_F_transformed", json!(self.t_f_transformed));
        put(
            "S_F",
            match &i.s_f {
                Some(iv) => json!([iv.lo.to_string(), iv.hi.to_string()]),
                None => Value::Null,
            },
        );
        put("S_F_upper", s30(&self.s_f_upper));
        put("set_S", json!(i.set_s));
        put("large_solution", s30(&self.large_solution.to_real()));
        put("prop81", s30(&self.prop81.to_real()));
        put("prop92", s30(&self.prop92.to_real()));
        put("Y_L_log", yl);
        put("Y_S_log", ys);
        put("K_log", l30(&self.k));
        put("lar", lar);
        put("sma", sma);
        put("med", med);
        put("thm1_log", l30(&self.thm1));
        put("thm1_hyp_ok", json!(true));
        put("thm2_log", self.thm2.as_ref().map_or(Value::Null, l30));
        put("thm2_hyp_ok", json!(self.hypotheses.r_ge_t2_min));
        put("thm3_log", self.thm3.as_ref().map_or(Value::Null, l30));
        put("thm3_hyp_ok", json!(self.hypotheses.r_ge_3s));
        put("hypotheses", serde_json::to_value(&self.hypotheses).unwrap());
        put("formulas", formula_tags());
        Value::Object(m)
    }
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// The formula each report field was evaluated from.
pub fn formula_tags() -> Value {
    json!({
        "log_star_h": "log* h^(1/r), log* x = 1 if x <= e else ln x",
        "z_r": "68 ln^3 r + 150 ln^2 r + ln r",
        "R_log": "ln R = z(r) + 5",
        "u_h": "2^(r u) <= h < 2^(r (u+1))",
        "q_r": "13 + 2 z(r) / (r (r-1))",
        "U0_log": "ln(e^q(r) 2^(2u(h)-1) / |D|^(1/(r(r-1))))",
        "U1_log": "ln(3 + e^q(r) h^(2/r) / |D|^(1/(r(r-1))))",
        "p": "least prime exceeding U0, 2 if U0 < 2",
        "a": "degree table for (a, b)",
        "t": "sqrt(2 / (r + a^2))",
        "tau": "b t",
        "lambda": "sqrt(2 (r + a^2)) / (1 - b)",
        "delta": "2 (b^2 - a^2) / ((r-1) (r + a^2))",
        "alpha": "degree table with r - lambda >= alpha r",
        "A1": "(1/a^2) (ln M(F) + r/2)",
        "nu": "(3 ln 2 + r/(2a^2) + (1 + 1/a^2) ln h) (r-1) / (r ln 2 - (ln r)/2)",
        "eta": "((2 + nu + 1/a^2) lambda - 2) / (r - lambda)",
        "T_F": "6s for forms with at most s+1 nonzero terms",
        "T_F_transformed": "3 (4s-2) + 1 = 12s - 5",
        "S_F_upper": "7 + z(r) + 25 (s r)^(1/2)",
        "large_solution": "2 min(T(F), S(F)) (15 + ln ln* h^(1/r) / ln(r-1))",
        "prop81": "1 + 8r + 4T (15 + ln log*(2 h^(1/r)) / ln(r-1)), T = 12s - 5",
        "prop92": "1 + 40 (6 + z(r) + 25 (s r)^(1/2)) + 4T (15 + ln log* h^(1/r) / ln(r-1)), T = 12s - 5",
        "Y_L_log": "ln((2^(r+1) r^(r/2) M^r R h)^(1/(r-lambda)) (4 e^A1)^(lambda/(r-lambda)))",
        "Y_S_log": "ln(((e^6 s)^r R^(2s) h)^(1/(r-2s)))",
        "K_log": "ln(2 R (rs)^2 (4 e^3 s)^(r/s) h^(1/s) H^(1/r - 1/s))",
        "lar": "132 s",
        "sma": "1 + 16 (12 s + z(r) + ln h^(1/r))",
        "med": "648 s (log* s)^eps + 36 s ln(1 + ln h^(1/(r(r-s))) / ln H)",
        "thm1_log": "ln of 2(1+log* h^(1/r))(3+4h^(1/r)+e^105 h^(2/r)/|D|^(1/(r(r-1)))) (1+8r+48s(15+ln log*(2h^(1/r))/ln(r-1)))",
        "thm2_log": "ln of 2(1+log* h^(1/r))(3+4h^(1/r)+e^105 h^(2/r)/|D|^(1/(r(r-1)))) (1+40(6+z(r)+25(sr)^(1/2))+48s(15+ln log*(2h^(1/r))/ln(r-1)))",
        "thm3_log": "ln of 2(1+log* h^(1/r)) h^(1/r) (1+324s+648s(log* s)^eps+16z(r)+16 log*(2h^(1/r))+36s ln(1+log*(2^(1/(r-s)) h^(1/(r(r-s))))/log* H))",
    })
}

/// `|D(F)| >= 2^(2r) r^r h^(2(r-1))`, decided exactly.
pub fn corollary_disc_hypothesis(r: u32, abs_d: &BigInt, h: &BigInt) -> bool {
    let rhs = (BigInt::one() << (2 * r as usize)) * Pow::pow(BigInt::from(r), r) * Pow::pow(h.clone(), 2 * (r - 1));
    abs_d.abs() >= rhs
}

/// `true` iff `n > e^l`, decided at working precision. `None` when the two
/// are too close to separate.
pub fn int_exceeds(n: &BigInt, l: &LogScalar) -> Option<bool> {
    if !l.is_positive() {
        return Some(n.is_positive() || (l.is_zero() && false));
    }
    if !n.is_positive() {
        return Some(false);
    }
    let ln = ln_int(n);
    let margin = decide_margin();
    if ln > &l.log_mag + &margin {
        Some(true)
    } else if ln < &l.log_mag - &margin {
        Some(false)
    } else {
        None
    }
}

/// Gcd helper re-exported for callers classifying primitive pairs.
pub fn is_primitive(x: &BigInt, y: &BigInt) -> bool {
    x.gcd(y).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Real, b: &str, tol: &str) -> bool {
        (a - Real::parse(b)).abs() <= Real::parse(tol)
    }

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn log_star_cases() {
        assert_eq!(log_star(&Real::one()), Real::one());
        assert_eq!(log_star(&Real::e()), Real::one());
        assert!(close(&log_star(&Real::from_i64(3).exp()), "3", "1e-80"));
        assert_eq!(log_star(&Real::zero()), Real::one());
    }

    #[test]
    fn z_of_three() {
        let z = z_r(3).unwrap();
        assert!(close(&z, "272.306845700341104373", "1e-18"));
        assert!(z_r(2).is_err());
        for r in 3..200 {
            assert!(z_r(r + 1).unwrap() > z_r(r).unwrap());
        }
        assert!(close(&big_r(3).unwrap().log_mag, "277.306845700341104373", "1e-18"));
    }

    #[test]
    fn six_r_plus_five_is_dominated() {
        let r = big_r(3).unwrap();
        let v = r.scale(6).add_i64(5);
        let expected = Real::from_i64(6).ln() + z_r(3).unwrap() + 5;
        assert!((v.log_mag - expected).abs() < Real::parse("1e-100"));
    }

    #[test]
    fn r_condition_threshold() {
        assert!(!r_condition_holds(3).unwrap());
        assert!(r_condition_holds(T2_MIN_DEGREE).unwrap());
        assert!(!r_condition_holds(T2_MIN_DEGREE - 1).unwrap());
    }

    #[test]
    fn u_of_boundaries() {
        assert_eq!(u_of(&bi(1), 3).unwrap(), 0);
        assert_eq!(u_of(&bi(8), 3).unwrap(), 1);
        assert_eq!(u_of(&bi(7), 3).unwrap(), 0);
        assert_eq!(u_of(&(bi(1) << 9usize), 3).unwrap(), 3);
        assert_eq!(u_of(&((bi(1) << 9usize) - 1), 3).unwrap(), 2);
        assert!(u_of(&bi(0), 3).is_err());
    }

    #[test]
    fn q_values() {
        assert!(close(&q_r(3).unwrap(), "103.768948566780368", "1e-14"));
        for r in 3..400 {
            assert!(q_cap_holds(r).unwrap(), "r = {r}");
        }
        assert!((q_r(100_000).unwrap() - 13).abs() < Real::parse("1e-3"));
    }

    #[test]
    fn u0_u1_plug_in() {
        let (u0, u1) = u0_u1(3, &bi(108), &bi(1)).unwrap();
        let expected = q_r(3).unwrap() - Real::ln2() - Real::from_i64(108).ln() / 6;
        assert!((u0.log_mag - expected).abs() < Real::parse("1e-80"));
        assert!(u1 >= LogScalar::from_i64(3));
        let (u0b, _) = u0_u1(3, &bi(108), &(bi(1) << 9usize)).unwrap();
        let diff = u0b.log_mag - u0_u1(3, &bi(108), &bi(1)).unwrap().0.log_mag;
        assert!((diff - Real::ln2() * 6).abs() < Real::parse("1e-80"));
    }

    #[test]
    fn prime_choice() {
        assert_eq!(
            choose_prime(&LogScalar::from_real(&Real::parse("1.5"))),
            PrimeChoice::Exact(2)
        );
        assert_eq!(choose_prime(&LogScalar::from_i64(10)), PrimeChoice::Exact(11));
        assert_eq!(choose_prime(&LogScalar::from_i64(11)), PrimeChoice::Exact(13));
        for k in [2i64, 3, 17, 1000, 123_456, 9_999_991] {
            let u0 = LogScalar::from_real(&(Real::from_i64(k) + Real::parse("0.5")));
            if let PrimeChoice::Exact(p) = choose_prime(&u0) {
                assert!((p as f64) < 2.0 * (k as f64 + 0.5));
                assert!((p as f64) > k as f64 + 0.5);
            } else {
                panic!();
            }
        }
        assert!(matches!(
            choose_prime(&LogScalar::exp(Real::from_i64(200))),
            PrimeChoice::TooLarge(_)
        ));
    }

    #[test]
    fn thue_siegel_table() {
        let ts = thue_siegel_params(24).unwrap();
        assert!(close(&ts.lambda, "15.1395524752001", "1e-12"));
        let ts3 = thue_siegel_params(3).unwrap();
        assert!(close(&ts3.a, "0.1", "1e-90"));
        assert!(close(&ts3.b, "0.15", "1e-90"));
        for r in 3..60 {
            let ts = thue_siegel_params(r).unwrap();
            assert!(ts.delta.is_positive());
            assert!(ts.lambda_lt_r, "r = {r}");
            assert!(ts.alpha_bound_holds, "r = {r}");
        }
    }

    #[test]
    fn nu_eta_plug_in() {
        let ts = thue_siegel_params(3).unwrap();
        let (nu, eta) = nu_eta(3, &ts.a, &ts.lambda, &bi(1)).unwrap();
        let ln2 = Real::ln2();
        let expected = (&ln2 * 3 + 150) * 2 / (&ln2 * 3 - Real::from_i64(3).ln() / 2);
        assert!((&nu - expected).abs() < Real::parse("1e-80"));
        assert!(nu >= Real::from_i64(3) / (&ts.a * &ts.a * 2));
        assert!(eta.is_positive());
        assert!(nu_eta(3, &ts.a, &Real::from_i64(3), &bi(1)).is_err());
    }

    #[test]
    fn large_solution_values() {
        let v = large_solution_bound(3, &bi(1), 6, &Real::from_i64(100)).unwrap();
        assert!(close(&v.to_real(), "180", "1e-60"));
        let v = large_solution_bound(10, &bi(1), 6, &Real::from_i64(7)).unwrap();
        assert!(close(&v.to_real(), "180", "1e-60"));
        let mut prev = LogScalar::zero();
        for k in 0..40 {
            let h = bi(1) << (k * 5usize);
            let v = large_solution_bound(5, &h, 6, &Real::from_i64(10)).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn exact_large_count_within_simplified_bound() {
        for r in [3u32, 4, 5, 6, 9, 15, 24, 40] {
            for h in [1i64, 10, 1000, 1_000_000] {
                let exact = large_solution_count_exact(r, &bi(h), &Real::one()).unwrap();
                let simple = large_solution_bound(r, &bi(h), 1, &Real::one()).unwrap().to_real();
                assert!(exact <= simple, "r={r} h={h}: {exact} > {simple}");
            }
        }
    }

    #[test]
    fn small_solution_corollary_cases() {
        let ln_m = Real::from_i64(50);
        let one = LogScalar::one();
        let v = small_solution_corollary(3, &ln_m, &bi(1), &one).unwrap();
        assert!(close(&v.to_real(), "3", "1e-60"));
        assert!(small_solution_corollary(3, &Real::one(), &bi(1), &one).is_err());
        let y = LogScalar::from_i64(1000);
        let v1 = small_solution_corollary(3, &ln_m, &bi(1), &y).unwrap().to_real();
        let v2 = small_solution_corollary(3, &ln_m, &bi(1), &y.scale(2))
            .unwrap()
            .to_real();
        let den = &ln_m - Real::from_i64(3) * (Real::from_i64(9) / 2).ln();
        assert!(((v2 - v1) - Real::ln2() * 3 / den).abs() < Real::parse("1e-60"));
    }

    #[test]
    fn proposition_values() {
        let v = proposition_81(3, 6, &bi(1)).unwrap();
        assert!(close(&v.to_real(), "385", "1e-60"));
        let mut prev = LogScalar::zero();
        for k in 0..30 {
            let v = proposition_81(7, 19, &(bi(1) << (7 * k as usize))).unwrap();
            assert!(v >= prev);
            prev = v;
        }
        let p = proposition_92(T2_MIN_DEGREE, 1, 7, &bi(1)).unwrap().to_real();
        assert!(close(&p, "5661666.86195948", "1e-7"));
        let z = z_r(3).unwrap();
        assert!(close(
            &s_f_upper(3, 1).unwrap(),
            &(z + Real::from_i64(3).sqrt() * 25 + 7).to_sig_string(40),
            "1e-30"
        ));
        assert!(close(
            &s_f_upper(3, 1).unwrap(),
            "322.608115889563036711276411242",
            "1e-25"
        ));
    }

    #[test]
    fn y_s_expansion() {
        let ts = thue_siegel_params(12).unwrap();
        let (_, ys) = y_l_y_s(12, 3, &bi(7), &Real::from_i64(5), &ts).unwrap();
        let z = z_r(12).unwrap();
        let expected =
            (Real::from_i64(12) * (Real::from_i64(3).ln() + 6) + Real::from_i64(6) * (z + 5) + Real::from_i64(7).ln())
                / Real::from_i64(6);
        assert!((ys.log_mag - expected).abs() < Real::parse("1e-70"));
        let (yl1, _) = y_l_y_s(12, 3, &bi(7), &Real::from_i64(5), &ts).unwrap();
        let (yl2, _) = y_l_y_s(12, 3, &bi(7), &Real::from_i64(6), &ts).unwrap();
        assert!(yl2 > yl1);
        assert!(y_l_y_s(6, 3, &bi(1), &Real::one(), &thue_siegel_params(6).unwrap()).is_err());
    }

    #[test]
    fn class_counts() {
        let c = medium_small_large(3, 1, &bi(1), &bi(2)).unwrap();
        assert!(close(&c.lar.to_real(), "132", "1e-60"));
        let sma = (z_r(3).unwrap() + 12) * 16 + 1;
        assert!((c.sma.to_real() - sma).abs() < Real::parse("1e-60"));
        assert!(close(&c.med.to_real(), "648", "1e-60"));
        assert_eq!(epsilon(3, 1), 0);
        assert_eq!(epsilon(24, 2), 0);
        assert_eq!(epsilon(23, 2), 1);
        assert!(medium_small_large(5, 2, &bi(1), &bi(2)).is_err());
    }

    #[test]
    fn worked_theorem_one_tuple() {
        let v = theorem_bound(Theorem::T1, 3, 3, &bi(1), &bi(108), &bi(2)).unwrap();
        assert!(close(&v.log_mag, "113.295310264128877862080970514226602056", "1e-30"));
    }

    #[test]
    fn theorem_refusals() {
        assert!(matches!(
            theorem_bound(Theorem::T2, 3, 1, &bi(1), &bi(108), &bi(2)),
            Err(Error::Refusal(_))
        ));
        assert!(matches!(
            theorem_bound(Theorem::T3, 5, 2, &bi(1), &bi(108), &bi(2)),
            Err(Error::Refusal(_))
        ));
        assert!(theorem_bound(Theorem::T2, T2_MIN_DEGREE, 1, &bi(1), &bi(108), &bi(2)).is_ok());
    }

    #[test]
    fn third_theorem_at_h_one() {
        // h = 1: the prefactor is 2(1 + 1) * 1 and log*(2^(1/(r-s))) = 1
        let v = theorem_bound(Theorem::T3, 9, 3, &bi(1), &bi(5), &bi(4)).unwrap();
        let s = Real::from_i64(3);
        let inner = &s * 324
            + &s * 648 * log_star(&s)
            + z_r(9).unwrap() * 16
            + 16
            + &s * 36 * (Real::one() / Real::from_i64(4).ln() + 1).ln()
            + 1;
        assert!((v.to_real() - inner * 4).abs() < Real::parse("1e-50"));
    }

    #[test]
    fn lemma_35_with_unit_g() {
        let (p, n) = lemma_35_assemble(|_| LogScalar::one(), 3, &bi(1), &bi(108)).unwrap();
        let frac = (q_r(3).unwrap() - Real::from_i64(108).ln() / 6).exp();
        let expected = (frac.clone() + 3) * 4;
        assert!(((p.to_real() - &expected) / &expected).abs() < Real::parse("1e-60"));
        assert!(n >= p);
        // g sees 2^r h
        let (p2, _) = lemma_35_assemble(|m| m.clone(), 3, &bi(5), &bi(108)).unwrap();
        let (p1, _) = lemma_35_assemble(|_| LogScalar::from_i64(40), 3, &bi(5), &bi(108)).unwrap();
        assert!((p2.log_mag - p1.log_mag).abs() < Real::parse("1e-60"));
    }

    #[test]
    fn corollary_disc_exact() {
        assert!(!corollary_disc_hypothesis(3, &bi(108), &bi(1)));
        assert!(corollary_disc_hypothesis(3, &bi(1728), &bi(1)));
        assert!(!corollary_disc_hypothesis(3, &bi(1727), &bi(1)));
    }

    #[test]
    fn integer_vs_logscalar() {
        let y = LogScalar::from_real(&Real::parse("10.5"));
        assert_eq!(int_exceeds(&bi(10), &y), Some(false));
        assert_eq!(int_exceeds(&bi(11), &y), Some(true));
        assert_eq!(int_exceeds(&bi(0), &y), Some(false));
    }

    #[test]
    fn report_json_fields() {
        let f = BinaryForm::from_i64(3, &[(0, 1), (3, -2)]).unwrap();
        let rep = BoundReport::compute(BoundInputs::from_form(&f, &bi(1)).unwrap()).unwrap();
        let j = rep.to_json();
        assert_eq!(j["r"], json!(3));
        assert_eq!(j["abs_disc"], json!("108"));
        assert_eq!(j["thm2_log"], Value::Null);
        assert!(j["thm3_log"].as_str().is_some());
        assert!(j["p"].as_u64().is_some() || j["p"].is_null());
        assert!(j["formulas"]["z_r"].is_string());
        let again = BoundReport::compute(BoundInputs::from_form(&f, &bi(1)).unwrap()).unwrap();
        assert_eq!(j, again.to_json());
    }

    #[test]
    fn very_good_approximations() {
        let f = IntPoly::from_i64(&[-2, 0, 0, 1]);
        let rs = find_roots_poly(&f, &Target::Relative(64), Precision::default()).unwrap();
        let alpha = rs.roots.iter().find(|r| r.is_real()).unwrap();
        let (a1v, lam) = (Real::zero(), Real::parse("1.5"));
        let check = |x: i64, y: i64| is_very_good_approx(&f, alpha, &bi(x), &bi(y), &a1v, &lam, Precision::default());
        assert!(check(5429, 4309).unwrap());
        assert!(check(635, 504).unwrap());
        assert!(!check(29, 23).unwrap());
        assert!(!check(100, 1).unwrap());
        assert!(check(1, 0).is_err());
        // the paper's own A1 and lambda make the threshold far smaller
        let ts = thue_siegel_params(3).unwrap();
        let a1p = a1(3, &Real::ln2(), &ts.a);
        assert!(!check_with(&f, alpha, 5429, 4309, &a1p, &ts.lambda));
    }

    fn check_with(f: &IntPoly, alpha: &CertifiedRoot, x: i64, y: i64, a1v: &Real, lam: &Real) -> bool {
        is_very_good_approx(f, alpha, &bi(x), &bi(y), a1v, lam, Precision::default()).unwrap()
    }
}
