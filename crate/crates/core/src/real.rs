//! Fixed-precision binary floating point for bound formulas.
//!
//! A thin value type over `astro_float::BigFloat` at [`PREC`] bits with
//! round-to-nearest-even. The exponent range is wide enough that quantities
//! like `e^(10^6)` are representable directly.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Working precision in bits (about 96 decimal digits).
pub const PREC: usize = 320;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone)]
pub struct Real(BigFloat);

impl Real {
    pub fn from_i64(n: i64) -> Self {
        Real(BigFloat::from_i64(n, PREC))
    }

    pub fn from_u64(n: u64) -> Self {
        Real(BigFloat::from_u64(n, PREC))
    }

    /// Nearest representable value to `x`; exact for `f64` inputs.
    pub fn from_f64(x: f64) -> Self {
        Real(BigFloat::from_f64(x, PREC))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        if n.bits() < 63 {
            return Real::from_i64(i64::try_from(n).unwrap());
        }
        Real::parse(&n.to_string())
    }

    pub fn from_ratio(n: &BigInt, d: &BigInt) -> Self {
        Real::from_bigint(n) / Real::from_bigint(d)
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Real::from_ratio(q.numer(), q.denom())
    }

    /// Parse a decimal literal such as `"-1.25e3"`. Panics on malformed input.
    pub fn parse(s: &str) -> Self {
        let v = with_cc(|cc| BigFloat::parse(s, Radix::Dec, PREC, RM, cc));
        assert!(!v.is_nan(), "malformed decimal literal {s:?}");
        Real(v)
    }

    pub fn zero() -> Self {
        Real::from_i64(0)
    }

    pub fn one() -> Self {
        Real::from_i64(1)
    }

    pub fn e() -> Self {
        Real::one().exp()
    }

    pub fn ln2() -> Self {
        Real::from_i64(2).ln()
    }

    pub fn inner(&self) -> &BigFloat {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.0.is_zero() && self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        !self.0.is_zero() && self.0.is_negative()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    /// Natural logarithm; the argument must be positive.
    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "ln of a non-positive value");
        Real(with_cc(|cc| self.0.ln(PREC, RM, cc)))
    }

    pub fn exp(&self) -> Self {
        Real(with_cc(|cc| self.0.exp(PREC, RM, cc)))
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of a negative value");
        Real(self.0.sqrt(PREC, RM))
    }

    pub fn powi(&self, n: usize) -> Self {
        Real(self.0.powi(n, PREC, RM))
    }

    /// `self^e` for positive `self`, computed as `exp(e ln self)`.
    pub fn pow(&self, e: &Real) -> Self {
        (e * &self.ln()).exp()
    }

    pub fn recip(&self) -> Self {
        Real(self.0.reciprocal(PREC, RM))
    }

    pub fn max(&self, o: &Real) -> Self {
        if self >= o {
            self.clone()
        } else {
            o.clone()
        }
    }

    pub fn min(&self, o: &Real) -> Self {
        if self <= o {
            self.clone()
        } else {
            o.clone()
        }
    }

    /// Largest integer not above `self`.
    pub fn floor(&self) -> BigInt {
        assert!(self.is_finite());
        let f = self.0.floor();
        let (digits, exp, neg) = decimal_parts(&f);
        if digits.is_empty() {
            return BigInt::zero();
        }
        let mut s: String = digits;
        let shift = exp + 1 - s.len() as i64;
        assert!(shift >= 0, "floor produced a fraction");
        s.extend(std::iter::repeat_n('0', shift as usize));
        let n: BigInt = s.parse().unwrap();
        if neg {
            -n
        } else {
            n
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let s = with_cc(|cc| self.0.format(Radix::Dec, RM, cc)).unwrap_or_default();
        s.parse().unwrap_or(f64::NAN)
    }

    /// Decimal rendering rounded to `digits` significant digits. Plain
    /// notation for moderate magnitudes, scientific otherwise.
    pub fn to_sig_string(&self, digits: usize) -> String {
        assert!(digits >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let (mut d, mut exp, neg) = decimal_parts(&self.0);
        if d.len() > digits {
            let round_up = d.as_bytes()[digits] >= b'5';
            d.truncate(digits);
            if round_up {
                let mut bytes = d.into_bytes();
                let mut i = bytes.len();
                loop {
                    if i == 0 {
                        bytes.insert(0, b'1');
                        bytes.pop();
                        exp += 1;
                        break;
                    }
                    i -= 1;
                    if bytes[i] == b'9' {
                        bytes[i] = b'0';
                    } else {
                        bytes[i] += 1;
                        break;
                    }
                }
                d = String::from_utf8(bytes).unwrap();
            }
        }
        let d = d.trim_end_matches('0');
        let d = if d.is_empty() { "0" } else { d };
        let sign = if neg { "-" } else { "" };
        let body = if (-6..40).contains(&exp) {
            if exp < 0 {
                format!("0.{}{}", "0".repeat((-exp - 1) as usize), d)
            } else if (exp as usize) < d.len() - 1 {
                let (a, b) = d.split_at(exp as usize + 1);
                format!("{a}.{b}")
            } else {
                format!("{d}{}", "0".repeat(exp as usize + 1 - d.len()))
            }
        } else if d.len() == 1 {
            format!("{d}e{exp}")
        } else {
            format!("{}.{}e{exp}", &d[..1], &d[1..])
        };
        format!("{sign}{body}")
    }
}

/// Significant decimal digits (no leading zeros), decimal exponent of the
/// first digit, and sign.
fn decimal_parts(x: &BigFloat) -> (String, i64, bool) {
    if x.is_zero() {
        return (String::new(), 0, false);
    }
    let s = with_cc(|cc| x.format(Radix::Dec, RM, cc)).expect("format");
    let (neg, s) = match s.strip_prefix('-') {
        Some(t) => (true, t),
        None => (false, s.as_str()),
    };
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap()),
        None => (s, 0),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let all: String = format!("{int_part}{frac_part}");
    let lead = all.bytes().take_while(|&b| b == b'0').count();
    let digits = all[lead..].to_string();
    let exp10 = exp + int_part.len() as i64 - 1 - lead as i64;
    (digits, exp10, neg)
}

impl PartialEq for Real {
    fn eq(&self, o: &Self) -> bool {
        self.partial_cmp(o) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.0.cmp(&o.0).map(|c| c.cmp(&0))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sig_string(30))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sig_string(f.precision().unwrap_or(30).max(1)))
    }
}

impl From<i64> for Real {
    fn from(n: i64) -> Self {
        Real::from_i64(n)
    }
}

impl From<&BigInt> for Real {
    fn from(n: &BigInt) -> Self {
        Real::from_bigint(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, o: &Real) -> Real {
                Real(self.0.$m(&o.0, PREC, RM))
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                (&self).$m(&o)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, o: &Real) -> Real {
                (&self).$m(o)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                self.$m(&o)
            }
        }
        impl $tr<i64> for &Real {
            type Output = Real;
            fn $m(self, o: i64) -> Real {
                self.$m(&Real::from_i64(o))
            }
        }
        impl $tr<i64> for Real {
            type Output = Real;
            fn $m(self, o: i64) -> Real {
                (&self).$m(&Real::from_i64(o))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}
