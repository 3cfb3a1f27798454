//! Sign and natural-log-magnitude representation of huge or tiny reals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::real::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LogSign {
    Minus,
    Zero,
    Plus,
}

/// `sign * exp(log_mag)`; `log_mag` is ignored when the sign is zero.
#[derive(Clone, Debug)]
pub struct LogScalar {
    pub sign: LogSign,
    pub log_mag: Real,
}

impl LogScalar {
    pub fn zero() -> Self {
        LogScalar {
            sign: LogSign::Zero,
            log_mag: Real::zero(),
        }
    }

    pub fn one() -> Self {
        LogScalar::exp(Real::zero())
    }

    /// The positive number `e^x`.
    pub fn exp(x: Real) -> Self {
        LogScalar {
            sign: LogSign::Plus,
            log_mag: x,
        }
    }

    pub fn from_real(x: &Real) -> Self {
        if x.is_zero() {
            return LogScalar::zero();
        }
        LogScalar {
            sign: if x.is_negative() { LogSign::Minus } else { LogSign::Plus },
            log_mag: x.abs().ln(),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        LogScalar::from_real(&Real::from_i64(n))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        if n.is_zero() {
            return LogScalar::zero();
        }
        LogScalar {
            sign: if n.is_negative() { LogSign::Minus } else { LogSign::Plus },
            log_mag: Real::from_bigint(&n.abs()).ln(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == LogSign::Zero
    }

    pub fn is_positive(&self) -> bool {
        self.sign == LogSign::Plus
    }

    /// Natural log of a positive value.
    pub fn ln(&self) -> &Real {
        assert!(self.is_positive(), "log of a non-positive LogScalar");
        &self.log_mag
    }

    /// Back to a plain real; fine whenever the magnitude is representable.
    pub fn to_real(&self) -> Real {
        match self.sign {
            LogSign::Zero => Real::zero(),
            LogSign::Plus => self.log_mag.exp(),
            LogSign::Minus => -self.log_mag.exp(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self.sign {
            LogSign::Zero => 0.0,
            LogSign::Plus => self.log_mag.to_f64().exp(),
            LogSign::Minus => -self.log_mag.to_f64().exp(),
        }
    }

    pub fn neg(&self) -> Self {
        LogScalar {
            sign: match self.sign {
                LogSign::Minus => LogSign::Plus,
                LogSign::Zero => LogSign::Zero,
                LogSign::Plus => LogSign::Minus,
            },
            log_mag: self.log_mag.clone(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LogScalar::exp(self.log_mag.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return LogScalar::zero();
        }
        LogScalar {
            sign: if self.sign == o.sign {
                LogSign::Plus
            } else {
                LogSign::Minus
            },
            log_mag: &self.log_mag + &o.log_mag,
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "division by zero LogScalar");
        if self.is_zero() {
            return LogScalar::zero();
        }
        LogScalar {
            sign: if self.sign == o.sign {
                LogSign::Plus
            } else {
                LogSign::Minus
            },
            log_mag: &self.log_mag - &o.log_mag,
        }
    }

    /// `self^e` for a positive base.
    pub fn powr(&self, e: &Real) -> Self {
        assert!(self.is_positive(), "real power of a non-positive LogScalar");
        LogScalar::exp(&self.log_mag * e)
    }

    pub fn scale(&self, k: i64) -> Self {
        self.mul(&LogScalar::from_i64(k))
    }

    /// Log-sum-exp addition.
    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (big, small) = if self.log_mag >= o.log_mag {
            (self, o)
        } else {
            (o, self)
        };
        // t = e^(small - big) in (0, 1]
        let t = (&small.log_mag - &big.log_mag).exp();
        if big.sign == small.sign {
            LogScalar {
                sign: big.sign,
                log_mag: &big.log_mag + ln_1p(&t),
            }
        } else {
            let one = Real::one();
            let rest = &one - &t;
            if rest.is_zero() || !rest.is_positive() {
                return LogScalar::zero();
            }
            LogScalar {
                sign: big.sign,
                log_mag: &big.log_mag + rest.ln(),
            }
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn add_i64(&self, k: i64) -> Self {
        self.add(&LogScalar::from_i64(k))
    }

    /// Decimal string of `log_mag` with `digits` significant digits.
    pub fn log_string(&self, digits: usize) -> String {
        self.log_mag.to_sig_string(digits)
    }
}

/// `ln(1 + t)` for `t` in `[0, 1]`, accurate for tiny `t`.
fn ln_1p(t: &Real) -> Real {
    if t.is_zero() {
        return Real::zero();
    }
    let small = Real::parse("1e-30");
    if t < &small {
        // t - t^2/2 + t^3/3; the next term is below the working precision
        let t2 = t * t;
        let t3 = &t2 * t;
        return t - &(t2 / 2) + t3 / 3;
    }
    (Real::one() + t).ln()
}

impl PartialEq for LogScalar {
    fn eq(&self, o: &Self) -> bool {
        self.partial_cmp(o) == Some(Ordering::Equal)
    }
}

impl PartialOrd for LogScalar {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        use LogSign::*;
        match (self.sign, o.sign) {
            (Zero, Zero) => Some(Ordering::Equal),
            (a, b) if a != b => Some(a.cmp(&b)),
            (Plus, Plus) => self.log_mag.partial_cmp(&o.log_mag),
            (Minus, Minus) => o.log_mag.partial_cmp(&self.log_mag),
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for LogScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            LogSign::Zero => write!(f, "0"),
            LogSign::Plus => write!(f, "exp({})", self.log_mag),
            LogSign::Minus => write!(f, "-exp({})", self.log_mag),
        }
    }
}

impl Serialize for LogScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LogScalar", 2)?;
        st.serialize_field(
            "sign",
            match self.sign {
                LogSign::Minus => "-",
                LogSign::Zero => "0",
                LogSign::Plus => "+",
            },
        )?;
        st.serialize_field("log_mag", &self.log_string(30))?;
        st.end()
    }
}
