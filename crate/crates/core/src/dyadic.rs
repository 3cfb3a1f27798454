//! Binary floating point with big-integer mantissas.
//!
//! A [`Dyadic`] is `m * 2^e` held exactly. Arithmetic is exact unless a `_p`
//! variant is used, which truncates the result to `p` significant bits.
//! [`CDyadic`] pairs two of them into a complex number.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::enclosure::Interval;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    m: BigInt,
    e: i64,
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl Dyadic {
    /// `m * 2^e`, normalized so the mantissa is odd (or zero with `e = 0`).
    pub fn new(m: BigInt, e: i64) -> Self {
        if m.is_zero() {
            return Dyadic::zero();
        }
        let tz = m.trailing_zeros().unwrap_or(0);
        Dyadic {
            m: m >> tz,
            e: e + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            m: BigInt::zero(),
            e: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(BigInt::one())
    }

    pub fn from_int(n: BigInt) -> Self {
        Dyadic::new(n, 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic::from_int(BigInt::from(n))
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite f64");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        Dyadic::new(BigInt::from(mant) * sign, e)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic { m: BigInt::one(), e: k }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.m.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn neg(&self) -> Self {
        Dyadic { m: -&self.m, e: self.e }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            m: self.m.abs(),
            e: self.e,
        }
    }

    /// `t` with `2^(t-1) <= |x| < 2^t`; `i64::MIN` for zero.
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.e + self.m.bits() as i64
        }
    }

    /// Multiply by `2^k`.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            m: self.m.clone(),
            e: self.e + k,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.e.min(o.e);
        let a = &self.m << (self.e - e) as u64;
        let b = &o.m << (o.e - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            m: &self.m * &o.m,
            e: self.e + o.e,
        }
    }

    /// Truncate toward zero to at most `p` significant bits.
    pub fn round(&self, p: u32) -> Self {
        let bits = self.m.bits();
        if bits <= p as u64 {
            return self.clone();
        }
        let drop = bits - p as u64;
        // Shifting a negative BigInt floors; truncate the magnitude instead.
        let mag = self.m.abs() >> drop;
        let m = if self.m.is_negative() { -mag } else { mag };
        Dyadic::new(m, self.e + drop as i64)
    }

    /// Sum truncated to `p` bits; a negligible operand is dropped without
    /// forming the full-width exact sum.
    pub fn add_p(&self, o: &Self, p: u32) -> Self {
        if self.is_zero() {
            return o.round(p);
        }
        if o.is_zero() {
            return self.round(p);
        }
        let gap = self.top() - o.top();
        let slack = p as i64 + 4;
        if gap > slack {
            return self.round(p);
        }
        if -gap > slack {
            return o.round(p);
        }
        self.add(o).round(p)
    }

    pub fn sub_p(&self, o: &Self, p: u32) -> Self {
        self.add_p(&o.neg(), p)
    }

    pub fn mul_p(&self, o: &Self, p: u32) -> Self {
        self.mul(o).round(p)
    }

    /// Quotient truncated to about `p` bits. Panics on division by zero.
    pub fn div_p(&self, o: &Self, p: u32) -> Self {
        assert!(!o.is_zero(), "division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let shift = (p as i64 + 2 + o.m.bits() as i64 - self.m.bits() as i64).max(0);
        let num = &self.m << shift as u64;
        Dyadic::new(num / &o.m, self.e - o.e - shift).round(p)
    }

    /// An upper bound on `a / b` for `a >= 0`, `b > 0`, with about `p` bits.
    pub fn div_up(&self, o: &Self, p: u32) -> Self {
        assert!(o.is_positive() && !self.is_negative());
        if self.is_zero() {
            return Dyadic::zero();
        }
        let shift = (p as i64 + 2 + o.m.bits() as i64 - self.m.bits() as i64).max(0);
        let num = &self.m << shift as u64;
        let (q, r) = num_integer::Integer::div_rem(&num, &o.m);
        let q = if r.is_zero() { q } else { q + 1 };
        Dyadic::new(q, self.e - o.e - shift)
    }

    /// An upper bound on `sqrt(x)` for `x >= 0`, with about `p` bits.
    pub fn sqrt_up(&self, p: u32) -> Self {
        assert!(!self.is_negative(), "square root of a negative number");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut shift = (2 * p as i64 - self.m.bits() as i64).max(0);
        if (self.e - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let n = &self.m << shift as u64;
        let mut s = n.sqrt();
        if &s * &s < n {
            s += 1;
        }
        Dyadic::new(s, (self.e - shift) / 2)
    }

    /// A lower bound on `sqrt(x)` for `x >= 0`, with about `p` bits.
    pub fn sqrt_down(&self, p: u32) -> Self {
        assert!(!self.is_negative(), "square root of a negative number");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut shift = (2 * p as i64 - self.m.bits() as i64).max(0);
        if (self.e - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let n = &self.m << shift as u64;
        Dyadic::new(n.sqrt(), (self.e - shift) / 2)
    }

    pub fn is_positive(&self) -> bool {
        self.m.is_positive()
    }

    /// Nearest-ish `f64` (truncated mantissa); saturates to `0` or `inf`.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(60);
        let m = r.m.to_f64().unwrap_or(f64::NAN);
        let e = r.e;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return m.signum() * 0.0;
        }
        // Two steps so that neither power of two overflows on its own.
        let half = e / 2;
        m * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.e >= 0 {
            BigRational::from_integer(&self.m << self.e as u64)
        } else {
            BigRational::new(self.m.clone(), BigInt::one() << (-self.e) as u64)
        }
    }

    /// Floor of the value as an integer.
    pub fn floor(&self) -> BigInt {
        if self.e >= 0 {
            &self.m << self.e as u64
        } else {
            // Arithmetic shift floors.
            &self.m >> (-self.e) as u64
        }
    }

    /// Enclosure of `|x|` as an `f64` interval; requires the value to be in `f64` range.
    pub fn abs_interval(&self) -> Interval {
        let mag = self.abs();
        let bits = mag.m.bits();
        let (lo_m, hi_m, e) = if bits > 52 {
            let drop = bits - 52;
            let lo = &mag.m >> drop;
            let hi = &lo + 1u32;
            (lo, hi, mag.e + drop as i64)
        } else {
            (mag.m.clone(), mag.m.clone(), mag.e)
        };
        let lo = lo_m.to_f64().unwrap() * 2f64.powi(e.clamp(-1100, 1100) as i32);
        let hi = hi_m.to_f64().unwrap() * 2f64.powi(e.clamp(-1100, 1100) as i32);
        Interval::new(lo.next_down().max(0.0), hi.next_up())
    }

    /// Enclosure of `ln |x|` for `x != 0`, valid for any exponent.
    pub fn ln_abs(&self) -> Interval {
        assert!(!self.is_zero(), "log of zero");
        let bits = self.m.bits();
        let (lo_m, hi_m, k) = if bits > 52 {
            let drop = bits - 52;
            let lo = self.m.abs() >> drop;
            let hi = &lo + 1u32;
            (lo, hi, self.e + drop as i64)
        } else {
            let m = self.m.abs();
            (m.clone(), m, self.e)
        };
        let lm = Interval::new(lo_m.to_f64().unwrap(), hi_m.to_f64().unwrap()).ln();
        lm.add(&Interval::ln2().mul(&Interval::point(k as f64)))
    }

    pub fn max(self, o: Self) -> Self {
        if self >= o {
            self
        } else {
            o
        }
    }

    pub fn min(self, o: Self) -> Self {
        if self <= o {
            self
        } else {
            o
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.sign(), other.sign()) {
            (a, b) if a != b => {
                let rank = |s: Sign| match s {
                    Sign::Minus => 0,
                    Sign::NoSign => 1,
                    Sign::Plus => 2,
                };
                rank(a).cmp(&rank(b))
            }
            (Sign::NoSign, _) => Ordering::Equal,
            (s, _) => {
                // Same nonzero sign: compare magnitudes by position first.
                let (ta, tb) = (self.top(), other.top());
                let mag = if ta != tb {
                    ta.cmp(&tb)
                } else {
                    let e = self.e.min(other.e);
                    let a = self.m.abs() << (self.e - e) as u64;
                    let b = other.m.abs() << (other.e - e) as u64;
                    a.cmp(&b)
                };
                if s == Sign::Plus {
                    mag
                } else {
                    mag.reverse()
                }
            }
        }
    }
}

/// Complex number with dyadic parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CDyadic {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl fmt::Debug for CDyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:e} {:+e}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl CDyadic {
    pub fn new(re: Dyadic, im: Dyadic) -> Self {
        CDyadic { re, im }
    }

    pub fn real(re: Dyadic) -> Self {
        CDyadic { re, im: Dyadic::zero() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        CDyadic::new(Dyadic::from_f64(re), Dyadic::from_f64(im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CDyadic::new(self.re.clone(), self.im.neg())
    }

    pub fn add_p(&self, o: &Self, p: u32) -> Self {
        CDyadic::new(self.re.add_p(&o.re, p), self.im.add_p(&o.im, p))
    }

    pub fn sub_p(&self, o: &Self, p: u32) -> Self {
        CDyadic::new(self.re.sub_p(&o.re, p), self.im.sub_p(&o.im, p))
    }

    pub fn sub(&self, o: &Self) -> Self {
        CDyadic::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn mul_p(&self, o: &Self, p: u32) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im)).round(p);
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re)).round(p);
        CDyadic::new(re, im)
    }

    pub fn scale_p(&self, k: &Dyadic, p: u32) -> Self {
        CDyadic::new(self.re.mul_p(k, p), self.im.mul_p(k, p))
    }

    /// `|z|^2`, exact.
    pub fn norm_sqr(&self) -> Dyadic {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn div_p(&self, o: &Self, p: u32) -> Self {
        let d = o.norm_sqr().round(p + 8);
        let re = self.re.mul(&o.re).add(&self.im.mul(&o.im)).round(p + 8);
        let im = self.im.mul(&o.re).sub(&self.re.mul(&o.im)).round(p + 8);
        CDyadic::new(re.div_p(&d, p), im.div_p(&d, p))
    }

    pub fn round(&self, p: u32) -> Self {
        CDyadic::new(self.re.round(p), self.im.round(p))
    }

    /// Position of the leading bit of the larger component.
    pub fn top(&self) -> i64 {
        self.re.top().max(self.im.top())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}
