//! Certified complex roots by Aberth iteration with exact a-posteriori checks.
//!
//! The iteration runs in truncated dyadic arithmetic. Certification is exact:
//! each center is evaluated without rounding, the disk of radius
//! `n |f(z)| / |f'(z)|` (rounded up) is known to contain a root, and pairwise
//! disjointness of the `n` disks pins exactly one root in each. Real roots are
//! certified by symmetric disks on the real axis, non-real ones by disks that
//! stay off the axis; the number of real roots comes from exact isolation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::dyadic::{CDyadic, Dyadic};
use crate::enclosure::Interval;
use crate::error::{Error, Result};
use crate::forms::BinaryForm;
use crate::isolate::{isolate_real_roots, root_bound_log2};
use crate::poly::IntPoly;

/// Working-precision policy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            start_bits: 128,
            max_bits: 16384,
        }
    }
}

/// What "small enough" means for the certified radii.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// Every radius at most this value.
    Absolute(Dyadic),
    /// Every radius at most `|center| * 2^-bits`.
    Relative(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedRoot {
    pub center: CDyadic,
    /// Upper bound on the distance from `center` to the root.
    pub radius: Dyadic,
    /// Index of the conjugate root in the same [`RootSet`], for non-real roots.
    pub conjugate: Option<usize>,
}

impl CertifiedRoot {
    pub fn is_real(&self) -> bool {
        self.conjugate.is_none()
    }

    /// Bounds `(lo, hi)` on `|Im alpha|`; exactly zero for real roots.
    pub fn im_abs_bounds(&self) -> (Dyadic, Dyadic) {
        if self.is_real() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        let c = self.center.im.abs();
        let lo = c.sub(&self.radius).max(Dyadic::zero());
        (lo, c.add(&self.radius))
    }

    /// Bounds `(lo, hi)` on `|alpha|`.
    pub fn abs_bounds(&self) -> (Dyadic, Dyadic) {
        let n2 = self.center.norm_sqr();
        let lo = n2.sqrt_down(96).sub(&self.radius).max(Dyadic::zero());
        let hi = n2.sqrt_up(96).add(&self.radius);
        (lo, hi)
    }

    /// Bounds on `Re alpha`.
    pub fn re_bounds(&self) -> (Dyadic, Dyadic) {
        (self.center.re.sub(&self.radius), self.center.re.add(&self.radius))
    }

    /// Bounds on `Im alpha`.
    pub fn im_bounds(&self) -> (Dyadic, Dyadic) {
        if self.is_real() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        (self.center.im.sub(&self.radius), self.center.im.add(&self.radius))
    }
}

/// All roots of a squarefree polynomial, each in its own certified disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    pub roots: Vec<CertifiedRoot>,
    /// Working precision (bits) at which certification succeeded.
    pub precision: u32,
    /// Fingerprint of the source polynomial.
    pub form_hash: u64,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn real_count(&self) -> usize {
        self.roots.iter().filter(|r| r.is_real()).count()
    }

    pub fn max_radius(&self) -> Dyadic {
        self.roots.iter().map(|r| r.radius.clone()).max().unwrap_or_default()
    }
}

fn poly_fingerprint(p: &IntPoly) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in format!("{p:?}").bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Exact value of `p` at a dyadic complex point.
pub fn eval_exact(p: &IntPoly, z: &CDyadic) -> CDyadic {
    let n = match p.degree() {
        Some(n) => n,
        None => return CDyadic::zero(),
    };
    // z = (a + ib) 2^-s with integer a, b and s >= 0.
    let e = z.re.exponent().min(z.im.exponent()).min(0);
    let s = (-e) as u64;
    let a = if z.re.is_zero() {
        BigInt::zero()
    } else {
        z.re.mantissa() << (z.re.exponent() - e) as u64
    };
    let b = if z.im.is_zero() {
        BigInt::zero()
    } else {
        z.im.mantissa() << (z.im.exponent() - e) as u64
    };
    // Homogeneous Horner: sum c_k (a+ib)^k 2^(s(n-k)).
    let c = p.coeffs();
    let mut re = c[n].clone();
    let mut im = BigInt::zero();
    for k in (0..n).rev() {
        let nr = &re * &a - &im * &b;
        let ni = &re * &b + &im * &a;
        re = nr + (&c[k] << (s * (n - k) as u64));
        im = ni;
    }
    let scale = -((s * n as u64) as i64);
    CDyadic::new(Dyadic::new(re, scale), Dyadic::new(im, scale))
}

/// `p(z)` and `p'(z)` in truncated arithmetic.
fn eval_pair_p(c: &[Dyadic], z: &CDyadic, p: u32) -> (CDyadic, CDyadic) {
    let n = c.len() - 1;
    let mut f = CDyadic::real(c[n].clone());
    let mut df = CDyadic::zero();
    for k in (0..n).rev() {
        df = df.mul_p(z, p).add_p(&f, p);
        f = f.mul_p(z, p).add_p(&CDyadic::real(c[k].clone()), p);
    }
    (f, df)
}

fn initial_guesses(poly: &IntPoly) -> Vec<CDyadic> {
    let n = poly.degree().unwrap();
    let k = root_bound_log2(poly) as i32;
    // Geometric mean of the root moduli, |c_0 / c_n|^(1/n), kept within the bound.
    let c0 = poly.coeffs()[0].clone();
    let cn = poly.leading().unwrap().clone();
    let rho = if c0.is_zero() {
        1.0
    } else {
        let l = Dyadic::from_int(c0.abs()).ln_abs().mid() - Dyadic::from_int(cn.abs()).ln_abs().mid();
        (l / n as f64).exp().clamp(f64::MIN_POSITIVE, 2f64.powi(k.min(1000)))
    };
    (0..n)
        .map(|j| {
            let t = std::f64::consts::TAU * j as f64 / n as f64 + 0.4;
            CDyadic::from_f64(rho * t.cos(), rho * t.sin())
        })
        .collect()
}

/// One Gauss-Seidel sweep of the Aberth correction. Returns whether every
/// correction is below the working precision.
fn aberth_sweep(c: &[Dyadic], z: &mut [CDyadic], p: u32) -> bool {
    let n = z.len();
    let mut converged = true;
    for i in 0..n {
        let (f, df) = eval_pair_p(c, &z[i], p);
        if f.is_zero() {
            continue;
        }
        let mut sum = CDyadic::zero();
        for j in 0..n {
            if j != i {
                let d = z[i].sub_p(&z[j], p);
                if d.is_zero() {
                    continue;
                }
                sum = sum.add_p(&CDyadic::real(Dyadic::one()).div_p(&d, p), p);
            }
        }
        let w = if df.is_zero() {
            // Nudge off a critical point.
            let t = z[i].top().max(-(p as i64) / 2);
            CDyadic::new(Dyadic::pow2(t - 20), Dyadic::pow2(t - 21))
        } else {
            let newton = f.div_p(&df, p);
            let denom = CDyadic::real(Dyadic::one()).sub_p(&newton.mul_p(&sum, p), p);
            if denom.is_zero() {
                newton
            } else {
                newton.div_p(&denom, p)
            }
        };
        if !w.is_zero() && w.top() > z[i].top() - p as i64 + 6 {
            converged = false;
        }
        z[i] = z[i].sub_p(&w, p);
    }
    converged
}

/// Snap approximations to a conjugation-symmetric configuration with exactly
/// `k` real centers. `None` if the configuration is not yet recognisable.
fn symmetrize(z: &[CDyadic], k: usize) -> Option<Vec<(CDyadic, Option<usize>)>> {
    let n = z.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| z[a].im.abs().cmp(&z[b].im.abs()).then(a.cmp(&b)));
    let mut real: Vec<CDyadic> = idx[..k].iter().map(|&i| CDyadic::real(z[i].re.clone())).collect();
    let mut pos: Vec<CDyadic> = Vec::new();
    let mut neg: Vec<CDyadic> = Vec::new();
    for &i in &idx[k..] {
        match z[i].im.sign() {
            num_bigint::Sign::Plus => pos.push(z[i].clone()),
            num_bigint::Sign::Minus => neg.push(z[i].clone()),
            num_bigint::Sign::NoSign => return None,
        }
    }
    if pos.len() != neg.len() {
        return None;
    }
    // Each upper-half center must be matched by some lower-half center near its conjugate.
    let mut taken = vec![false; neg.len()];
    for u in &pos {
        let cu = u.conj();
        let best = (0..neg.len())
            .filter(|&j| !taken[j])
            .min_by(|&a, &b| neg[a].sub(&cu).norm_sqr().cmp(&neg[b].sub(&cu).norm_sqr()))?;
        taken[best] = true;
    }
    real.sort_by(|a, b| a.re.cmp(&b.re));
    pos.sort_by(|a, b| a.re.cmp(&b.re).then(a.im.cmp(&b.im)));
    let mut out: Vec<(CDyadic, Option<usize>)> = real.into_iter().map(|c| (c, None)).collect();
    for u in pos {
        let i = out.len();
        out.push((u.clone(), Some(i + 1)));
        out.push((u.conj(), Some(i)));
    }
    Some(out)
}

fn certify(
    poly: &IntPoly,
    dpoly: &IntPoly,
    z: &[CDyadic],
    k_real: usize,
    target: &Target,
) -> Option<Vec<CertifiedRoot>> {
    let n = z.len();
    let centers = symmetrize(z, k_real)?;
    let n2 = Dyadic::from_i64((n * n) as i64);
    let mut roots = Vec::with_capacity(n);
    for (c, conj) in centers {
        let f = eval_exact(poly, &c);
        let radius = if f.is_zero() {
            Dyadic::zero()
        } else {
            let df = eval_exact(dpoly, &c);
            if df.is_zero() {
                return None;
            }
            f.norm_sqr().mul(&n2).div_up(&df.norm_sqr(), 64).sqrt_up(64)
        };
        if conj.is_some() && c.im.abs() <= radius {
            return None;
        }
        let ok = match target {
            Target::Absolute(t) => radius <= *t,
            Target::Relative(bits) => radius.is_zero() || radius.mul(&radius).shl(2 * *bits as i64) <= c.norm_sqr(),
        };
        if !ok {
            return None;
        }
        roots.push(CertifiedRoot {
            center: c,
            radius,
            conjugate: conj,
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = roots[i].center.sub(&roots[j].center).norm_sqr();
            let s = roots[i].radius.add(&roots[j].radius);
            if s.mul(&s) >= d {
                return None;
            }
        }
    }
    Some(roots)
}

/// Certified roots of a squarefree integer polynomial of degree at least one.
pub fn find_roots_poly(poly: &IntPoly, target: &Target, prec: Precision) -> Result<RootSet> {
    let n = poly.degree().ok_or(Error::ZeroForm)?;
    if n == 0 {
        return Ok(RootSet {
            roots: Vec::new(),
            precision: prec.start_bits,
            form_hash: poly_fingerprint(poly),
        });
    }
    let dpoly = poly.derivative();
    if poly.gcd(&dpoly).degree() != Some(0) {
        return Err(Error::RepeatedRoots);
    }
    if poly.coeff(0).is_zero() {
        // an exact root at 0 never meets a relative target numerically
        let mut rs = find_roots_poly(&poly.shift_down(), target, prec)?;
        rs.roots.push(CertifiedRoot {
            center: CDyadic::zero(),
            radius: Dyadic::zero(),
            conjugate: None,
        });
        rs.form_hash = poly_fingerprint(poly);
        return Ok(rs);
    }
    let k_real = isolate_real_roots(poly).len();
    let c: Vec<Dyadic> = poly.coeffs().iter().map(|x| Dyadic::from_int(x.clone())).collect();
    let mut z = initial_guesses(poly);
    let mut p = prec.start_bits.max(64);
    let mut first = true;
    loop {
        let sweeps = if first { 400 + 40 * n } else { 60 };
        first = false;
        let mut settled = 0;
        for _ in 0..sweeps {
            if aberth_sweep(&c, &mut z, p) {
                settled += 1;
                if settled >= 2 {
                    break;
                }
            } else {
                settled = 0;
            }
        }
        if let Some(roots) = certify(poly, &dpoly, &z, k_real, target) {
            return Ok(RootSet {
                roots,
                precision: p,
                form_hash: poly_fingerprint(poly),
            });
        }
        if p >= prec.max_bits {
            return Err(Error::PrecisionCeiling(prec.max_bits));
        }
        p = (p * 2).min(prec.max_bits);
        z = z.iter().map(|w| w.round(p)).collect();
    }
}

/// Certified roots of `f(x) = F(x, 1)`, every radius at most `target_radius`.
pub fn find_roots(f: &BinaryForm, target_radius: &Dyadic) -> Result<RootSet> {
    find_roots_with(f, &Target::Absolute(target_radius.clone()), Precision::default())
}

pub fn find_roots_with(f: &BinaryForm, target: &Target, prec: Precision) -> Result<RootSet> {
    for i in [0, f.degree()] {
        if f.coeff(i).is_zero() {
            return Err(Error::BoundaryCoefficientZero(i));
        }
    }
    let mut rs = find_roots_poly(&f.f_poly(), target, prec)?;
    rs.form_hash = f.fingerprint();
    Ok(rs)
}

/// An axis-aligned box; `None` sides are unbounded. Sides are closed unless
/// marked open; openness only matters for roots known exactly, i.e. the
/// imaginary part of a real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rect {
    pub re_lo: Option<BigRational>,
    pub re_hi: Option<BigRational>,
    pub im_lo: Option<BigRational>,
    pub im_hi: Option<BigRational>,
    /// Openness of `[re_lo, re_hi, im_lo, im_hi]`.
    pub open: [bool; 4],
}

impl Rect {
    pub fn plane() -> Self {
        Rect {
            re_lo: None,
            re_hi: None,
            im_lo: None,
            im_hi: None,
            open: [false; 4],
        }
    }

    pub fn new(re_lo: BigRational, re_hi: BigRational, im_lo: BigRational, im_hi: BigRational) -> Self {
        Rect {
            re_lo: Some(re_lo),
            re_hi: Some(re_hi),
            im_lo: Some(im_lo),
            im_hi: Some(im_hi),
            open: [false; 4],
        }
    }

    pub fn with_open(mut self, open: [bool; 4]) -> Self {
        self.open = open;
        self
    }

    pub fn is_empty(&self) -> bool {
        matches!((&self.re_lo, &self.re_hi), (Some(a), Some(b)) if a >= b)
            || matches!((&self.im_lo, &self.im_hi), (Some(a), Some(b)) if a >= b)
    }
}

/// `Some(true)` inside, `Some(false)` outside, `None` if the interval `[lo, hi]`
/// straddles a side of `(a, b)`. A degenerate interval is an exact point and
/// is decided with the openness flags.
fn side(
    lo: &BigRational,
    hi: &BigRational,
    a: &Option<BigRational>,
    b: &Option<BigRational>,
    open: (bool, bool),
) -> Option<bool> {
    let exact = lo == hi;
    let above_a = a.as_ref().map_or(Some(true), |a| {
        if lo > a || (exact && lo == a && !open.0) {
            Some(true)
        } else if hi < a || (exact && lo == a) {
            Some(false)
        } else {
            None
        }
    })?;
    let below_b = b.as_ref().map_or(Some(true), |b| {
        if hi < b || (exact && hi == b && !open.1) {
            Some(true)
        } else if lo > b || (exact && hi == b) {
            Some(false)
        } else {
            None
        }
    })?;
    Some(above_a && below_b)
}

/// Number of roots whose certified disk lies inside `rect`. Errors when some
/// disk meets the boundary.
pub fn count_roots_in_box(roots: &RootSet, rect: &Rect) -> Result<usize> {
    if rect.is_empty() {
        return Ok(0);
    }
    let mut count = 0;
    for (i, r) in roots.roots.iter().enumerate() {
        let (rl, rh) = r.re_bounds();
        let (il, ih) = r.im_bounds();
        let inside_re = side(
            &rl.to_rational(),
            &rh.to_rational(),
            &rect.re_lo,
            &rect.re_hi,
            (rect.open[0], rect.open[1]),
        );
        let inside_im = side(
            &il.to_rational(),
            &ih.to_rational(),
            &rect.im_lo,
            &rect.im_hi,
            (rect.open[2], rect.open[3]),
        );
        match (inside_re, inside_im) {
            (Some(false), _) | (_, Some(false)) => {}
            (Some(true), Some(true)) => count += 1,
            _ => return Err(Error::Undecidable(format!("root {i} disk meets the box boundary"))),
        }
    }
    Ok(count)
}

/// [`count_roots_in_box`] for a polynomial, tightening the radii until every
/// disk is decided or the precision ceiling is reached.
pub fn count_poly_roots_in_box(poly: &IntPoly, rect: &Rect, prec: Precision) -> Result<usize> {
    let mut bits = 32;
    let mut start = prec.start_bits;
    loop {
        let rs = find_roots_poly(
            poly,
            &Target::Relative(bits),
            Precision {
                start_bits: start,
                max_bits: prec.max_bits,
            },
        )?;
        match count_roots_in_box(&rs, rect) {
            Ok(n) => return Ok(n),
            Err(Error::Undecidable(_)) if start < prec.max_bits => {
                bits = bits.saturating_mul(2);
                start = (rs.precision * 2).min(prec.max_bits);
            }
            Err(e) => return Err(e),
        }
    }
}

/// Enclosure of `ln |alpha|` for a root (requires `|alpha| > 0` certified).
pub fn ln_abs_enclosure(r: &CertifiedRoot) -> Option<Interval> {
    let (lo, hi) = r.abs_bounds();
    if lo.is_zero() {
        return None;
    }
    Some(lo.ln_abs().hull(&hi.ln_abs()))
}

/// Sum of the roots, `-a_1/a_0` for forms; helper for symmetry checks.
pub fn root_sum(roots: &RootSet, p: u32) -> CDyadic {
    roots
        .roots
        .iter()
        .fold(CDyadic::zero(), |acc, r| acc.add_p(&r.center, p))
}

pub fn cmp_re(a: &CertifiedRoot, b: &CertifiedRoot) -> Ordering {
    a.center.re.cmp(&b.center.re)
}
