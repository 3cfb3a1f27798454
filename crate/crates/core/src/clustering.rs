//! Empirical checks of the root-clustering lemmas on integer polynomials.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::isolate::{has_constant_sign_on, root_bound_log2, IsolatedRoots};
use crate::poly::IntPoly;
use crate::roots::{count_poly_roots_in_box, find_roots_poly, CertifiedRoot, Precision, Rect, Target};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClusterVerdict {
    pub hypothesis_met: bool,
    /// Roots in the starting square (always at least 1 for the `(9r)^t` check).
    pub w: usize,
    /// Roots in the target square.
    pub found: usize,
    /// Smallest integer at least the lemma's threshold.
    pub required: u64,
    pub threshold: f64,
    pub holds: bool,
}

impl ClusterVerdict {
    fn vacuous() -> Self {
        ClusterVerdict {
            hypothesis_met: false,
            w: 0,
            found: 0,
            required: 0,
            threshold: 0.0,
            holds: true,
        }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn degree_at_least_3(f: &IntPoly) -> Result<u32> {
    let r = f.degree().unwrap_or(0) as u32;
    if r < 3 {
        return Err(Error::DegreeTooSmall(r));
    }
    if f.squarefree_part().degree() != f.degree() {
        return Err(Error::RepeatedRoots);
    }
    Ok(r)
}

/// `w / (120 log(e w))`, zero for `w = 0`.
pub fn threshold_8r(w: usize) -> f64 {
    if w == 0 {
        return 0.0;
    }
    let w = w as f64;
    w / (120.0 * (1.0 + w.ln()))
}

fn ceil_count(x: f64) -> u64 {
    // thresholds here are tiny or irrational, so f64 ceiling is exact enough
    x.ceil().max(0.0) as u64
}

/// If `f f' < 0` on `[a + eps, a + 8r eps]`, the square `(a, a+8r eps) x (0, 8r eps)`
/// holds at least `w / (120 log(e w))` roots, where `w` counts the roots in
/// `[a - eps, a] x (0, eps]`.
pub fn check_clustering_8r(f: &IntPoly, a: &BigRational, eps: &BigRational, prec: Precision) -> Result<ClusterVerdict> {
    let r = degree_at_least_3(f)?;
    if !eps.is_positive() {
        return Err(Error::Hypothesis("eps must be positive".into()));
    }
    let side = eps * rat(8 * r as i64);
    let ffp = f.mul(&f.derivative());
    if !has_constant_sign_on(&ffp, &(a + eps), &(a + &side), Sign::Minus) {
        return Ok(ClusterVerdict::vacuous());
    }
    let start = Rect::new(a - eps, a.clone(), rat(0), eps.clone()).with_open([false, false, true, false]);
    let w = count_poly_roots_in_box(f, &start, prec)?;
    let target = Rect::new(a.clone(), a + &side, rat(0), side).with_open([true; 4]);
    let found = count_poly_roots_in_box(f, &target, prec)?;
    let threshold = threshold_8r(w);
    let required = ceil_count(threshold);
    Ok(ClusterVerdict {
        hypothesis_met: true,
        w,
        found,
        required,
        threshold,
        holds: found as u64 >= required,
    })
}

/// `e^sqrt(t/68)`.
pub fn threshold_9rt(t: u32) -> f64 {
    (t as f64 / 68.0).sqrt().exp()
}

enum Placement {
    Inside,
    Outside,
    Unknown,
}

/// Where a disk sits relative to `[A, A + K B) x (0, K B]` when `A` and `B`
/// are only known to lie in intervals.
fn place(
    root: &CertifiedRoot,
    a: (&BigRational, &BigRational),
    b: (&BigRational, &BigRational),
    k: &BigRational,
) -> Placement {
    let (rl, rh) = root.re_bounds();
    let (rl, rh) = (rl.to_rational(), rh.to_rational());
    let (il, ih) = root.im_bounds();
    let (il, ih) = (il.to_rational(), ih.to_rational());
    let right_lo = a.0 + k * b.0;
    let right_hi = a.1 + k * b.1;
    let top_lo = k * b.0;
    let top_hi = k * b.1;
    if rh < *a.0 || rl >= right_hi || ih <= BigRational::zero() || il > top_hi {
        return Placement::Outside;
    }
    if rl >= *a.1 && rh < right_lo && il > BigRational::zero() && ih <= top_lo {
        return Placement::Inside;
    }
    Placement::Unknown
}

/// If `sigma = A + iB` (`B > 0`) is a root and `f f' < 0` inside
/// `[A, A + (9r)^t B)`, then `[A, A + (9r)^t B) x (0, (9r)^t B]` holds at least
/// `e^sqrt(t/68)` roots. `sigma` is re-identified by nearest center whenever
/// the roots are recomputed at higher precision.
pub fn check_clustering_9rt(f: &IntPoly, sigma: &CertifiedRoot, t: u32, prec: Precision) -> Result<ClusterVerdict> {
    let r = degree_at_least_3(f)?;
    if t == 0 {
        return Err(Error::Hypothesis("t must be a positive integer".into()));
    }
    let ffp = f.mul(&f.derivative());
    let threshold = threshold_9rt(t);
    let required = ceil_count(threshold);
    let mut bits: i64 = 64;
    let mut start = prec.start_bits;
    loop {
        let rs = find_roots_poly(
            f,
            &Target::Absolute(Dyadic::pow2(-bits)),
            Precision {
                start_bits: start,
                max_bits: prec.max_bits,
            },
        )?;
        let (si, s) = rs
            .roots
            .iter()
            .enumerate()
            .min_by(|x, y| {
                x.1.center
                    .sub(&sigma.center)
                    .norm_sqr()
                    .cmp(&y.1.center.sub(&sigma.center).norm_sqr())
            })
            .expect("degree at least 3");
        let (al, ah) = s.re_bounds();
        let (bl, bh) = s.im_bounds();
        if s.is_real() || !bl.is_positive() {
            return Err(Error::Hypothesis("sigma must have positive imaginary part".into()));
        }
        // (A, A + K B) reaches beyond every real root of f f', where f f' > 0
        let log2_k = t as f64 * ((9 * r) as f64).log2();
        let a_mag = al.abs().max(ah.abs()).top().max(0) as f64;
        if log2_k + (bl.top() - 1) as f64 > root_bound_log2(&ffp) as f64 + a_mag + 2.0 {
            return Ok(ClusterVerdict {
                required,
                threshold,
                ..ClusterVerdict::vacuous()
            });
        }
        let k = BigRational::from_integer(Pow::pow(BigInt::from(9 * r), t));
        let (al, ah, bl, bh) = (al.to_rational(), ah.to_rational(), bl.to_rational(), bh.to_rational());
        let right_lo = &al + &k * &bl;
        let right_hi = &ah + &k * &bh;
        let decided = if has_constant_sign_on(&ffp, &al, &right_hi, Sign::Minus) {
            Some(true)
        } else if ah < right_lo && !has_constant_sign_on(&ffp, &ah, &right_lo, Sign::Minus) {
            Some(false)
        } else {
            None
        };
        let mut count = Some(0usize);
        if decided == Some(true) {
            for (j, root) in rs.roots.iter().enumerate() {
                if j == si {
                    count = count.map(|c| c + 1);
                    continue;
                }
                match place(root, (&al, &ah), (&bl, &bh), &k) {
                    Placement::Inside => count = count.map(|c| c + 1),
                    Placement::Outside => {}
                    Placement::Unknown => count = None,
                }
            }
        }
        match (decided, count) {
            (Some(false), _) => {
                return Ok(ClusterVerdict {
                    required,
                    threshold,
                    ..ClusterVerdict::vacuous()
                })
            }
            (Some(true), Some(found)) => {
                return Ok(ClusterVerdict {
                    hypothesis_met: true,
                    w: 1,
                    found,
                    required,
                    threshold,
                    holds: found as u64 >= required,
                })
            }
            _ => {}
        }
        if rs.precision >= prec.max_bits {
            return Err(Error::PrecisionCeiling(prec.max_bits));
        }
        bits *= 2;
        start = (rs.precision * 2).min(prec.max_bits);
    }
}

/// A random squarefree polynomial of degree in `[3, max_degree]` with
/// coefficients in `[-bound, bound]`.
pub fn random_squarefree<R: Rng>(rng: &mut R, max_degree: usize, bound: i64) -> IntPoly {
    loop {
        let d = rng.gen_range(3..=max_degree.max(3));
        let mut c: Vec<BigInt> = (0..=d).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
        if c[d].is_zero() {
            c[d] = BigInt::one();
        }
        let p = IntPoly::new(c);
        if p.squarefree_part().degree() == p.degree() {
            return p;
        }
    }
}

/// A random `(a, eps)` for which `f f' < 0` on `[a + eps, a + 8r eps]` is
/// certified, or `None` if the drawn window fails. Windows come from gaps
/// between real roots of `f f'`, including the left half-line where `f f'` is
/// negative.
pub fn random_window<R: Rng>(rng: &mut R, f: &IntPoly) -> Option<(BigRational, BigRational)> {
    let r = f.degree()? as i64;
    let ffp = f.mul(&f.derivative());
    let mut iso = IsolatedRoots::new(&ffp);
    iso.refine_all(&BigRational::new(BigInt::one(), BigInt::from(1024)));
    let mut gaps: Vec<(BigRational, BigRational)> = Vec::new();
    let first = iso.roots.first().map(|x| x.lo().clone()).unwrap_or_else(|| rat(0));
    let span = BigRational::new(BigInt::from(rng.gen_range(1..=64)), BigInt::from(16));
    gaps.push((&first - &span, first.clone()));
    for w in iso.roots.windows(2) {
        gaps.push((w[0].hi().clone(), w[1].lo().clone()));
    }
    let (lo, hi) = gaps.swap_remove(rng.gen_range(0..gaps.len()));
    if lo >= hi {
        return None;
    }
    // shrink to a random subinterval
    let width = &hi - &lo;
    let u = BigRational::new(BigInt::from(rng.gen_range(0..=8)), BigInt::from(32));
    let v = BigRational::new(BigInt::from(rng.gen_range(24..=32)), BigInt::from(32));
    let (l, h) = (&lo + &width * u, &lo + &width * v);
    let eps = (&h - &l) / rat(8 * r - 1);
    let a = &l - &eps;
    if has_constant_sign_on(&ffp, &(&a + &eps), &(&a + &eps * rat(8 * r)), Sign::Minus) {
        Some((a, eps))
    } else {
        None
    }
}

/// A random squarefree `f` of degree at most `max_degree` with a certified window.
pub fn random_hypothesis_case<R: Rng>(rng: &mut R, max_degree: usize) -> (IntPoly, BigRational, BigRational) {
    loop {
        let f = random_squarefree(rng, max_degree, 20);
        if let Some((a, eps)) = random_window(rng, &f) {
            return (f, a, eps);
        }
    }
}
