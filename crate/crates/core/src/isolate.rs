//! Exact real-root isolation for integer polynomials.
//!
//! Descartes' rule of signs with dyadic bisection (Vincent-Collins-Akritas).
//! Every sign decision is an exact integer evaluation at a rational point.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::IntPoly;

/// A single real root of a squarefree polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRoot {
    /// The root is exactly this rational.
    Exact(BigRational),
    /// Exactly one root lies in the open interval `(lo, hi)`.
    /// `sign_lo` is the sign of the polynomial just to the right of `lo`.
    Open {
        lo: BigRational,
        hi: BigRational,
        sign_lo: Sign,
    },
}

impl RealRoot {
    pub fn lo(&self) -> &BigRational {
        match self {
            RealRoot::Exact(x) => x,
            RealRoot::Open { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &BigRational {
        match self {
            RealRoot::Exact(x) => x,
            RealRoot::Open { hi, .. } => hi,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RealRoot::Exact(_))
    }

    pub fn width(&self) -> BigRational {
        self.hi() - self.lo()
    }

    /// One bisection step. `p` must be the squarefree polynomial the root was isolated for.
    pub fn bisect(&mut self, p: &IntPoly) {
        if let RealRoot::Open { lo, hi, .. } = self {
            let mid = (&*lo + &*hi) / BigRational::from_integer(BigInt::from(2));
            self.split_at(p, mid);
        }
    }

    /// Shrink the bracket using the point `m`, which must lie strictly inside it.
    fn split_at(&mut self, p: &IntPoly, m: BigRational) {
        let RealRoot::Open { lo, hi, sign_lo } = self else {
            return;
        };
        debug_assert!(*lo < m && m < *hi);
        let s = p.sign_at(&m);
        if s == Sign::NoSign {
            *self = RealRoot::Exact(m);
        } else if s != *sign_lo {
            *hi = m;
        } else {
            *lo = m;
        }
    }

    /// Refine until the bracket width is at most `width` (or the root becomes exact).
    pub fn refine_to(&mut self, p: &IntPoly, width: &BigRational) {
        while !self.is_exact() && self.width() > *width {
            self.bisect(p);
        }
    }

    /// Exact `floor` of the root.
    pub fn floor(&mut self, p: &IntPoly) -> BigInt {
        loop {
            match self {
                RealRoot::Exact(x) => return x.floor().to_integer(),
                RealRoot::Open { lo, hi, .. } => {
                    let f = lo.floor().to_integer();
                    let next = BigRational::from_integer(&f + 1);
                    if *hi <= next {
                        return f;
                    }
                    // An integer strictly inside the bracket: split there so the
                    // number of steps tracks the integer part, then halve.
                    let mid = (&*lo + &*hi) / BigRational::from_integer(BigInt::from(2));
                    let m = mid.floor();
                    let m = if m > *lo { m } else { next };
                    self.split_at(p, m);
                }
            }
        }
    }

    /// Exact `ceil` of the root.
    pub fn ceil(&mut self, p: &IntPoly) -> BigInt {
        let f = self.floor(p);
        match self {
            RealRoot::Exact(x) if x.is_integer() => x.to_integer(),
            _ => f + 1,
        }
    }

    /// Decide the sign of `root - x` exactly.
    pub fn cmp_rational(&mut self, p: &IntPoly, x: &BigRational) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        loop {
            match self {
                RealRoot::Exact(r) => return (*r).cmp(x),
                RealRoot::Open { lo, hi, .. } => {
                    if *hi <= *x {
                        return Less;
                    }
                    if *lo >= *x {
                        return Greater;
                    }
                    let xc = x.clone();
                    self.split_at(p, xc);
                }
            }
        }
    }
}

fn bit_length(x: &BigInt) -> i64 {
    x.bits() as i64
}

/// `k` such that every root of `p` has modulus strictly below `2^k`.
pub fn root_bound_log2(p: &IntPoly) -> u64 {
    let n = p.degree().expect("nonzero polynomial");
    let lead_bits = bit_length(p.leading().unwrap());
    let mut best = 0i64;
    for i in 1..=n {
        let c = &p.coeffs()[n - i];
        if c.is_zero() {
            continue;
        }
        let e = bit_length(c) - lead_bits + 1;
        best = best.max(-((-e).div_euclid(i as i64)));
    }
    (best + 1).max(1) as u64
}

/// Isolate the roots of `q` in `(0, 1)`; interval `(c/2^d, (c+1)/2^d)` in the
/// scaled coordinate. Output pairs are `(c, d, exact)`.
fn vca(q: IntPoly, c: BigInt, d: u64, out: &mut Vec<(BigInt, u64, bool)>) {
    let mut q = q;
    if q.coeffs().first().is_some_and(Zero::is_zero) {
        out.push((c.clone(), d, true));
        q = q.shift_down();
    }
    if q.degree().unwrap_or(0) == 0 {
        return;
    }
    let v = q.reversed().taylor_shift_one().sign_variations();
    if v == 0 {
        return;
    }
    if v == 1 {
        out.push((c, d, false));
        return;
    }
    let left = q.halve_var();
    let right = left.taylor_shift_one();
    vca(left, &c << 1, d + 1, out);
    vca(right, (&c << 1) + 1, d + 1, out);
}

fn sign_right_of(p: &IntPoly, dp: &IntPoly, x: &BigRational) -> Sign {
    let s = p.sign_at(x);
    if s != Sign::NoSign {
        s
    } else {
        dp.sign_at(x)
    }
}

/// Positive roots of `p` (which must be squarefree with `p(0) != 0`).
fn positive_roots(p: &IntPoly) -> Vec<RealRoot> {
    let k = root_bound_log2(p);
    let scaled = p.scale_var_pow2(k);
    let mut raw = Vec::new();
    vca(scaled, BigInt::zero(), 0, &mut raw);
    let dp = p.derivative();
    let mut roots: Vec<RealRoot> = raw
        .into_iter()
        .map(|(c, d, exact)| {
            let den = BigInt::one() << d;
            let scale = BigRational::from_integer(BigInt::one() << k);
            let lo = BigRational::new(c.clone(), den.clone()) * &scale;
            if exact {
                RealRoot::Exact(lo)
            } else {
                let hi = BigRational::new(c + 1, den) * &scale;
                let sign_lo = sign_right_of(p, &dp, &lo);
                RealRoot::Open { lo, hi, sign_lo }
            }
        })
        .collect();
    roots.sort_by(|a, b| a.lo().cmp(b.lo()));
    roots
}

/// All real roots of `p`, sorted ascending, one entry per distinct root.
pub fn isolate_real_roots(p: &IntPoly) -> Vec<RealRoot> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut sf = p.squarefree_part();
    let mut roots = Vec::new();
    if sf.coeffs()[0].is_zero() {
        roots.push(RealRoot::Exact(BigRational::zero()));
        sf = sf.shift_down();
    }
    if sf.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let neg = sf.negate_var();
    let mut negatives: Vec<RealRoot> = positive_roots(&neg)
        .into_iter()
        .map(|r| match r {
            RealRoot::Exact(x) => RealRoot::Exact(-x),
            RealRoot::Open { lo, hi, sign_lo } => {
                // For p(x) the bracket is (-hi, -lo). The sign of p just right of
                // -hi equals the sign of p(-x) just left of hi.
                let sign_p_neg_left_of_hi = -sign_lo; // exactly one simple root inside
                RealRoot::Open {
                    lo: -hi,
                    hi: -lo,
                    sign_lo: sign_p_neg_left_of_hi,
                }
            }
        })
        .collect();
    negatives.reverse();
    let mut all = negatives;
    all.append(&mut roots);
    all.extend(positive_roots(&sf));
    all
}

/// Isolated roots together with the squarefree polynomial they refer to.
#[derive(Clone, Debug)]
pub struct IsolatedRoots {
    pub squarefree: IntPoly,
    pub roots: Vec<RealRoot>,
}

impl IsolatedRoots {
    pub fn new(p: &IntPoly) -> Self {
        let squarefree = p.squarefree_part();
        let roots = isolate_real_roots(&squarefree);
        IsolatedRoots { squarefree, roots }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Refine every bracket to width at most `width`.
    pub fn refine_all(&mut self, width: &BigRational) {
        for r in &mut self.roots {
            r.refine_to(&self.squarefree, width);
        }
    }

    /// Number of distinct real roots inside the closed interval `[a, b]`.
    pub fn count_in_closed(&mut self, a: &BigRational, b: &BigRational) -> usize {
        let p = self.squarefree.clone();
        self.roots
            .iter_mut()
            .filter_map(|r| {
                (r.cmp_rational(&p, a) != std::cmp::Ordering::Less
                    && r.cmp_rational(&p, b) != std::cmp::Ordering::Greater)
                    .then_some(())
            })
            .count()
    }
}

/// Integer floor of `n/d` for `d > 0`.
pub fn floor_div(n: &BigInt, d: &BigInt) -> BigInt {
    n.div_floor(d)
}

/// `true` iff `p(x)` has a constant nonzero sign on the closed interval `[a, b]`
/// and that sign equals `want`.
pub fn has_constant_sign_on(p: &IntPoly, a: &BigRational, b: &BigRational, want: Sign) -> bool {
    if p.is_zero() {
        return false;
    }
    let mut iso = IsolatedRoots::new(p);
    if iso.count_in_closed(a, b) > 0 {
        return false;
    }
    p.sign_at(a) == want
}

/// Integer `x` with `x^r <= n`, maximal (`n >= 0`).
pub fn integer_root_floor(n: &BigInt, r: u32) -> BigInt {
    assert!(!n.is_negative());
    n.nth_root(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn isolates_simple_cubic() {
        // x^3 - 2 has one real root 2^(1/3)
        let p = IntPoly::from_i64(&[-2, 0, 0, 1]);
        let mut iso = IsolatedRoots::new(&p);
        assert_eq!(iso.len(), 1);
        iso.refine_all(&q(1, 1 << 20));
        let r = &iso.roots[0];
        assert!(r.lo() <= &q(1_259_922, 1_000_000) && r.hi() >= &q(1_259_920, 1_000_000));
    }

    #[test]
    fn rational_and_repeated_roots() {
        // (x-1)^2 (x+2) x (2x - 1)
        let p = IntPoly::from_i64(&[-1, 1])
            .mul(&IntPoly::from_i64(&[-1, 1]))
            .mul(&IntPoly::from_i64(&[2, 1]))
            .mul(&IntPoly::from_i64(&[0, 1]))
            .mul(&IntPoly::from_i64(&[-1, 2]));
        let mut iso = IsolatedRoots::new(&p);
        assert_eq!(iso.len(), 4);
        iso.refine_all(&q(1, 1 << 30));
        let expect = [q(-2, 1), q(0, 1), q(1, 2), q(1, 1)];
        for (r, e) in iso.roots.iter().zip(expect.iter()) {
            assert!(r.lo() <= e && e <= r.hi(), "{r:?} vs {e}");
        }
    }

    #[test]
    fn floor_is_exact() {
        // roots of x^2 - 10 are +-3.16...
        let p = IntPoly::from_i64(&[-10, 0, 1]);
        let mut iso = IsolatedRoots::new(&p);
        let sf = iso.squarefree.clone();
        assert_eq!(iso.roots[0].floor(&sf), BigInt::from(-4));
        assert_eq!(iso.roots[1].floor(&sf), BigInt::from(3));
        assert_eq!(iso.roots[1].ceil(&sf), BigInt::from(4));
        // exact integer root
        let p = IntPoly::from_i64(&[-9, 0, 1]);
        let mut iso = IsolatedRoots::new(&p);
        let sf = iso.squarefree.clone();
        assert_eq!(iso.roots[1].floor(&sf), BigInt::from(3));
        assert_eq!(iso.roots[1].ceil(&sf), BigInt::from(3));
    }

    #[test]
    fn count_matches_dense_sampling_for_wilkinson_like() {
        // prod_{k=1}^{8} (x - k) has 8 roots
        let mut p = IntPoly::from_i64(&[1]);
        for k in 1..=8 {
            p = p.mul(&IntPoly::from_i64(&[-k, 1]));
        }
        let iso = IsolatedRoots::new(&p);
        assert_eq!(iso.len(), 8);
    }
}
