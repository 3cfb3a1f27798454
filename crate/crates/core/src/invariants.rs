//! Exact and certified invariants of binary forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::enclosure::Interval;
use crate::error::{Error, Result};
use crate::forms::BinaryForm;
use crate::isolate::IsolatedRoots;
use crate::poly::IntPoly;
use crate::roots::{find_roots_poly, ln_abs_enclosure, CertifiedRoot, Precision, RootSet, Target};

/// Determinant of a square integer matrix by Bareiss fraction-free elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant of two nonzero polynomials via the Sylvester matrix.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> BigInt {
    let (Some(m), Some(n)) = (p.degree(), q.degree()) else {
        return BigInt::zero();
    };
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    // Rows hold coefficients from the leading one down.
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in q.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// `disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)` for `deg f = n >= 1`.
pub fn poly_discriminant(f: &IntPoly) -> BigInt {
    let n = f.degree().expect("nonzero polynomial");
    if n == 0 {
        return BigInt::zero();
    }
    if n == 1 {
        return BigInt::one();
    }
    let res = resultant(f, &f.derivative());
    let d = res / f.leading().unwrap();
    if (n * (n - 1) / 2) % 2 == 1 {
        -d
    } else {
        d
    }
}

/// The discriminant `D(F)`, exact. Requires `a_0 != 0`.
pub fn discriminant(f: &BinaryForm) -> Result<BigInt> {
    if f.coeff(0).is_zero() {
        return Err(Error::BoundaryCoefficientZero(0));
    }
    Ok(poly_discriminant(&f.f_poly()))
}

/// Naive height `H(F) = max |a_i|`.
pub fn naive_height(f: &BinaryForm) -> BigInt {
    f.height()
}

/// `ln |n|` enclosure for a nonzero integer.
pub fn ln_int(n: &BigInt) -> Interval {
    Dyadic::from_int(n.clone()).ln_abs()
}

/// Result of checking an inequality on certified enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Holds,
    Violated,
    Undecided,
}

impl CheckStatus {
    /// `lhs <= rhs` on enclosures.
    pub fn le(lhs: &Interval, rhs: &Interval) -> Self {
        if lhs.hi <= rhs.lo {
            CheckStatus::Holds
        } else if lhs.lo > rhs.hi {
            CheckStatus::Violated
        } else {
            CheckStatus::Undecided
        }
    }

    pub fn is_violated(self) -> bool {
        self == CheckStatus::Violated
    }
}

/// Certified Mahler measure, held as an enclosure of `ln M(F)`.
#[derive(Clone, Debug)]
pub struct MahlerMeasure {
    pub ln: Interval,
    pub roots: RootSet,
}

impl MahlerMeasure {
    pub fn lower(&self) -> f64 {
        self.ln.exp().lo
    }

    pub fn upper(&self) -> f64 {
        self.ln.exp().hi
    }

    pub fn rel_width(&self) -> f64 {
        self.ln.width().exp_m1()
    }
}

/// `(Ma1)` and `(Ma2)`: `|D| <= r^r M^(2r-2)` and
/// `binom(r, r/2)^-1 H <= M <= sqrt(r+1) H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MahlerChecks {
    pub disc_bound: CheckStatus,
    pub height_lower: CheckStatus,
    pub height_upper: CheckStatus,
}

impl MahlerChecks {
    pub fn any_violated(&self) -> bool {
        self.disc_bound.is_violated() || self.height_lower.is_violated() || self.height_upper.is_violated()
    }

    pub fn all_hold(&self) -> bool {
        [self.disc_bound, self.height_lower, self.height_upper]
            .iter()
            .all(|&c| c == CheckStatus::Holds)
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn mahler_checks(f: &BinaryForm, ln_m: &Interval, disc: &BigInt) -> MahlerChecks {
    let r = f.degree() as u64;
    let rf = r as f64;
    let ln_h = ln_int(&f.height());
    let ln_r = Interval::point(rf).ln();
    let disc_bound = if disc.is_zero() {
        CheckStatus::Holds
    } else {
        let rhs = ln_r.scale(rf).add(&ln_m.scale(2.0 * rf - 2.0));
        CheckStatus::le(&ln_int(disc), &rhs)
    };
    let lower = ln_h.sub(&ln_int(&binomial(r, r / 2)));
    let upper = ln_h.add(&Interval::point(rf + 1.0).ln().scale(0.5));
    let mut checks = MahlerChecks {
        disc_bound,
        height_lower: CheckStatus::le(&lower, ln_m),
        height_upper: CheckStatus::le(ln_m, &upper),
    };
    // equality cases such as M = 1: retry exactly with M >= max(|a_0|, |a_r|)
    let m_floor = f.coeff(0).abs().max(f.coeff(r as u32).abs());
    if checks.disc_bound == CheckStatus::Undecided
        && disc.abs() <= Pow::pow(BigInt::from(r), r) * Pow::pow(m_floor.clone(), 2 * r - 2)
    {
        checks.disc_bound = CheckStatus::Holds;
    }
    if checks.height_lower == CheckStatus::Undecided && f.height() <= binomial(r, r / 2) * &m_floor {
        checks.height_lower = CheckStatus::Holds;
    }
    checks
}

/// `ln M` enclosure from a certified root set and leading coefficient.
pub fn ln_mahler_from_roots(lead: &BigInt, roots: &RootSet) -> Option<Interval> {
    let mut acc = ln_int(lead);
    for r in &roots.roots {
        // max(0, ln |alpha|) is 0 throughout the unit disk, including 0 itself
        let l = match ln_abs_enclosure(r) {
            Some(l) => l,
            None if r.abs_bounds().1 <= Dyadic::one() => Interval::point(0.0),
            None => return None,
        };
        acc = acc.add(&Interval::new(l.lo.max(0.0), l.hi.max(0.0)));
    }
    Some(acc)
}

/// Certified `M(F)` with relative width at most `rel_width`. Errors if a
/// Mahler inequality is certainly violated (they are theorems).
pub fn mahler_measure(f: &BinaryForm, rel_width: f64) -> Result<MahlerMeasure> {
    mahler_measure_with(f, rel_width, Precision::default())
}

pub fn mahler_measure_with(f: &BinaryForm, rel_width: f64, prec: Precision) -> Result<MahlerMeasure> {
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return Err(Error::RepeatedRoots);
    }
    let poly = f.f_poly();
    let r = f.degree().max(1) as f64;
    // Each root contributes at most about 2 rho/|alpha| to the width of ln M.
    let mut bits = ((4.0 * r / rel_width.max(1e-300)).log2().ceil() as u32).max(8);
    let mut start = prec.start_bits;
    loop {
        let roots = find_roots_poly(
            &poly,
            &Target::Relative(bits),
            Precision {
                start_bits: start,
                max_bits: prec.max_bits,
            },
        )?;
        if let Some(ln) = ln_mahler_from_roots(&f.coeff(0), &roots) {
            if ln.width().exp_m1() <= rel_width {
                let checks = mahler_checks(f, &ln, &disc);
                if checks.any_violated() {
                    return Err(Error::TheoremViolation(format!(
                        "Mahler inequality violated for {f}: {checks:?}"
                    )));
                }
                return Ok(MahlerMeasure { ln, roots });
            }
        }
        if start >= prec.max_bits {
            return Err(Error::PrecisionCeiling(prec.max_bits));
        }
        bits *= 2;
        start = (roots.precision * 2).min(prec.max_bits);
    }
}

/// `Phi(alpha)`: zero, an enclosure of `ln(1/|Im alpha|) / ln M`, or infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Phi {
    Zero,
    Finite(Interval),
    Infinite,
}

impl Phi {
    /// Enclosure of `min(1, Phi)`.
    pub fn capped(&self) -> Interval {
        match self {
            Phi::Zero => Interval::point(0.0),
            Phi::Infinite => Interval::point(1.0),
            Phi::Finite(i) => Interval::new(i.lo.min(1.0), i.hi.min(1.0)),
        }
    }
}

/// `Phi` for a certified root given `ln M(F)`; `M > 1` must be certain.
///
/// `Phi` is continuous at `|Im alpha| = 1`, so a disk straddling that line is
/// handled by a two-sided enclosure. Realness is certified exactly.
pub fn phi(alpha: &CertifiedRoot, ln_m: &Interval) -> Result<Phi> {
    if ln_m.lo <= 0.0 {
        return Err(Error::Hypothesis("M(F) > 1 is not certified".into()));
    }
    if alpha.is_real() {
        return Ok(Phi::Infinite);
    }
    let (lo, hi) = alpha.im_abs_bounds();
    if lo >= Dyadic::one() {
        return Ok(Phi::Zero);
    }
    if lo.is_zero() {
        return Err(Error::Undecidable("imaginary part not separated from 0".into()));
    }
    let num_hi = lo.ln_abs().neg();
    let num_lo = if hi >= Dyadic::one() {
        Interval::point(0.0)
    } else {
        hi.ln_abs().neg()
    };
    let num = Interval::new(num_lo.lo.max(0.0), num_hi.hi);
    Ok(Phi::Finite(num.div(ln_m)))
}

/// `S(F) = 1 + sum_i min(1, Phi(alpha_i))` as an enclosure.
pub fn s_of_f_from(roots: &RootSet, ln_m: &Interval) -> Result<Interval> {
    let mut acc = Interval::point(1.0);
    for r in &roots.roots {
        acc = acc.add(&phi(r, ln_m)?.capped());
    }
    Ok(acc)
}

pub fn s_of_f(f: &BinaryForm) -> Result<Interval> {
    let m = mahler_measure(f, 1e-12)?;
    s_of_f_from(&m.roots, &m.ln)
}

/// How `T(F)` is determined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TMode {
    /// At most `s + 1` nonzero coefficients.
    Sparse(u64),
    /// Every real `u F_x + v F_y` has at most `t` real zeros.
    ClassC(u64),
}

/// `T(F) = 6s` for sparse forms and `3t + 1` for class `C(t)`.
pub fn t_of_f(mode: TMode) -> u64 {
    match mode {
        TMode::Sparse(s) => 6 * s,
        TMode::ClassC(t) => 3 * t + 1,
    }
}

/// `T` of the transformed forms `F_{A_j}` of a sparse form: `C(4s - 2)`.
pub fn t_of_transformed_sparse(s: u64) -> u64 {
    t_of_f(TMode::ClassC(4 * s - 2))
}

/// The approximation set: all real roots of `f` plus, for each open interval
/// cut out by the real roots of `f f'`, the non-real root with real part in
/// that interval and least `|Im|` (ties to the smaller index).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproximationSet {
    /// Indices into the root set, ascending.
    pub indices: Vec<usize>,
    /// Number of distinct real roots of `f f'`.
    pub ffprime_real_roots: usize,
}

impl ApproximationSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

enum Position {
    /// Number of roots of `g` strictly below `Re alpha`.
    Between(usize),
    /// `Re alpha` is not separated from the exact rational root `xi` of `g`.
    AtRational(BigRational),
    Unknown,
}

/// Position of `Re alpha` among the sorted real roots of `g`.
fn interval_position(g: &mut IsolatedRoots, root: &CertifiedRoot) -> Position {
    let (l, h) = root.re_bounds();
    let (l, h) = (l.to_rational(), h.to_rational());
    let width = (&h - &l) / BigRational::from_integer(BigInt::from(4));
    let sf = g.squarefree.clone();
    let mut below = 0;
    for xi in g.roots.iter_mut() {
        if !width.is_zero() {
            xi.refine_to(&sf, &width);
        }
        if xi.hi() < &l || (xi.hi() == &l && !xi.is_exact()) {
            below += 1;
        } else if xi.lo() > &h || (xi.lo() == &h && !xi.is_exact()) {
        } else if xi.is_exact() {
            return Position::AtRational(xi.lo().clone());
        } else {
            return Position::Unknown;
        }
    }
    Position::Between(below)
}

/// Real and imaginary parts of `q^n f(xi + iT)` for `xi = p/q`, as integer
/// polynomials in `T`.
fn split_on_vertical_line(f: &IntPoly, xi: &BigRational) -> (IntPoly, IntPoly) {
    let (p, q) = (xi.numer().clone(), xi.denom().clone());
    let n = f.degree().unwrap_or(0);
    let qt = IntPoly::new(vec![BigInt::zero(), q.clone()]);
    let mut re = IntPoly::constant(BigInt::one());
    let mut im = IntPoly::zero();
    let mut out_re = IntPoly::zero();
    let mut out_im = IntPoly::zero();
    let mut qpow: Vec<BigInt> = vec![BigInt::one()];
    for _ in 0..n {
        let last = qpow.last().unwrap().clone();
        qpow.push(last * &q);
    }
    for k in 0..=n {
        let c = f.coeff(k) * &qpow[n - k];
        out_re = out_re.add(&re.scale(&c));
        out_im = out_im.add(&im.scale(&c));
        // (re + i im)(p + i q T)
        let nre = re.scale(&p).sub(&qt.mul(&im));
        let nim = im.scale(&p).add(&qt.mul(&re));
        re = nre;
        im = nim;
    }
    (out_re, out_im)
}

/// Whether every root whose real enclosure contains `xi` has real part
/// exactly `xi`: true when the number of such roots equals the number of
/// distinct roots of `f` on the line `Re x = xi`.
fn roots_on_line(f: &IntPoly, roots: &RootSet, xi: &BigRational) -> bool {
    let (pr, pi) = split_on_vertical_line(f, xi);
    let g = if pi.is_zero() { pr.clone() } else { pr.gcd(&pi) };
    let on_line = if g.degree().unwrap_or(0) == 0 {
        0
    } else {
        IsolatedRoots::new(&g.squarefree_part()).len()
    };
    let touching = roots
        .roots
        .iter()
        .filter(|r| {
            let (l, h) = r.re_bounds();
            l.to_rational() <= *xi && *xi <= h.to_rational()
        })
        .count();
    touching == on_line
}

type Groups = std::collections::BTreeMap<usize, Vec<usize>>;

/// Real roots, and the non-real roots grouped by the open interval cut out
/// by the real roots of `f f'` that holds their real part.
fn group_roots(f: &BinaryForm, roots: &RootSet) -> Result<(Vec<usize>, Groups, usize)> {
    let poly = f.f_poly();
    let g = poly.mul(&poly.derivative());
    let mut iso = IsolatedRoots::new(&g);
    let ffprime_real_roots = iso.len();
    let mut groups = Groups::new();
    let mut indices = Vec::new();
    for (i, r) in roots.roots.iter().enumerate() {
        if r.is_real() {
            indices.push(i);
            continue;
        }
        match interval_position(&mut iso, r) {
            Position::Between(pos) => groups.entry(pos).or_default().push(i),
            // on a root of f f', so in none of the open intervals
            Position::AtRational(xi) if roots_on_line(&poly, roots, &xi) => {}
            _ => return Err(Error::Undecidable(format!("real part of root {i} vs roots of ff'"))),
        }
    }
    Ok((indices, groups, ffprime_real_roots))
}

pub fn approximation_set_s_from(f: &BinaryForm, roots: &RootSet) -> Result<ApproximationSet> {
    let (mut indices, groups, ffprime_real_roots) = group_roots(f, roots)?;
    for members in groups.values() {
        let mut best = members[0];
        for &j in &members[1..] {
            let (bl, bh) = roots.roots[best].im_abs_bounds();
            let (jl, jh) = roots.roots[j].im_abs_bounds();
            let conj = roots.roots[best].conjugate == Some(j);
            if conj {
                continue;
            }
            if jh < bl {
                best = j;
            } else if jl > bh {
            } else {
                return Err(Error::Undecidable(format!(
                    "|Im| of roots {best} and {j} not separated"
                )));
            }
        }
        indices.push(best);
    }
    indices.sort_unstable();
    Ok(ApproximationSet {
        indices,
        ffprime_real_roots,
    })
}

/// [`approximation_set_s_from`] with automatic precision escalation. When
/// `|Im|` ties persist at the ceiling, the smaller index wins.
pub fn approximation_set_s(f: &BinaryForm) -> Result<ApproximationSet> {
    approximation_set_s_with(f, Precision::default())
}

pub fn approximation_set_s_with(f: &BinaryForm, prec: Precision) -> Result<ApproximationSet> {
    if discriminant(f)?.is_zero() {
        return Err(Error::RepeatedRoots);
    }
    let poly = f.f_poly();
    let mut bits = 32u32;
    let mut start = prec.start_bits;
    loop {
        let roots = find_roots_poly(
            &poly,
            &Target::Relative(bits),
            Precision {
                start_bits: start,
                max_bits: prec.max_bits,
            },
        )?;
        match approximation_set_s_from(f, &roots) {
            Ok(s) => return Ok(s),
            Err(Error::Undecidable(msg)) => {
                if start >= prec.max_bits {
                    if msg.starts_with("|Im|") {
                        return tie_break_by_index(f, &roots);
                    }
                    return Err(Error::Undecidable(msg));
                }
                bits = bits.saturating_mul(4);
                start = (roots.precision * 2).min(prec.max_bits);
            }
            Err(e) => return Err(e),
        }
    }
}

/// Same selection, but overlapping `|Im|` enclosures resolve to the smaller index.
fn tie_break_by_index(f: &BinaryForm, roots: &RootSet) -> Result<ApproximationSet> {
    let (mut indices, groups, ffprime_real_roots) = group_roots(f, roots)?;
    for members in groups.values() {
        let mut best = members[0];
        for &j in &members[1..] {
            if roots.roots[j].im_abs_bounds().1 < roots.roots[best].im_abs_bounds().0 {
                best = j;
            }
        }
        indices.push(best);
    }
    indices.sort_unstable();
    Ok(ApproximationSet {
        indices,
        ffprime_real_roots,
    })
}

/// Number of distinct real roots of `f f'`.
pub fn ffprime_real_root_count(f: &BinaryForm) -> usize {
    let p = f.f_poly();
    IsolatedRoots::new(&p.mul(&p.derivative())).len()
}
