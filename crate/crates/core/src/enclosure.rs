//! Outward-rounded `f64` interval arithmetic.
//!
//! Every operation computes endpoints in round-to-nearest and then steps one
//! ulp outward (two for library transcendentals), so the true result of the
//! operation on any points of the operands is enclosed.

use std::fmt;

#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

fn down(x: f64) -> f64 {
    x.next_down()
}

fn up(x: f64) -> f64 {
    x.next_up()
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi || lo.is_nan() || hi.is_nan(), "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Enclosure of the real number nearest to `x`, one ulp each way.
    pub fn around(x: f64) -> Self {
        Interval::new(down(x), up(x))
    }

    pub fn ln2() -> Self {
        Interval::around(std::f64::consts::LN_2)
    }

    pub fn e() -> Self {
        Interval::around(std::f64::consts::E)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn add(&self, o: &Self) -> Self {
        Interval::new(down(self.lo + o.lo), up(self.hi + o.hi))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Interval::new(down(self.lo - o.hi), up(self.hi - o.lo))
    }

    pub fn neg(&self) -> Self {
        Interval::new(-self.hi, -self.lo)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(down(lo), up(hi))
    }

    /// Division by an interval that excludes zero.
    pub fn div(&self, o: &Self) -> Self {
        assert!(o.lo > 0.0 || o.hi < 0.0, "division by an interval containing 0");
        let c = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(down(lo), up(hi))
    }

    pub fn scale(&self, k: f64) -> Self {
        self.mul(&Interval::point(k))
    }

    /// Natural log of a positive interval.
    pub fn ln(&self) -> Self {
        assert!(self.lo > 0.0, "log of a non-positive interval");
        Interval::new(down(down(self.lo.ln())), up(up(self.hi.ln())))
    }

    pub fn exp(&self) -> Self {
        Interval::new(down(down(self.lo.exp())).max(0.0), up(up(self.hi.exp())))
    }

    pub fn sqrt(&self) -> Self {
        assert!(self.lo >= 0.0);
        Interval::new(down(self.lo.sqrt()).max(0.0), up(self.hi.sqrt()))
    }

    pub fn max(&self, o: &Self) -> Self {
        Interval::new(self.lo.max(o.lo), self.hi.max(o.hi))
    }

    pub fn min(&self, o: &Self) -> Self {
        Interval::new(self.lo.min(o.lo), self.hi.min(o.hi))
    }

    /// Certainly `self < o`.
    pub fn certainly_lt(&self, o: &Self) -> bool {
        self.hi < o.lo
    }

    /// Certainly `self <= o`.
    pub fn certainly_le(&self, o: &Self) -> bool {
        self.hi <= o.lo
    }

    pub fn hull(&self, o: &Self) -> Self {
        Interval::new(self.lo.min(o.lo), self.hi.max(o.hi))
    }
}
