//! Dense univariate integer polynomials.
//!
//! Coefficients are stored in ascending order: `coeffs[k]` multiplies `x^k`.
//! The zero polynomial has an empty coefficient vector.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `den^n * p(num/den)` for `n = deg p`; has the sign of `p(num/den)` when `den > 0`.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        // Horner in num with the den powers attached from the top.
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> Sign {
        // BigRational keeps a positive denominator.
        self.eval_homogeneous(x.numer(), x.denom()).sign()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(-x)`.
    pub fn negate_var(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `x^n p(1/x)` with `n = deg p`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `p(x + 1)`.
    pub fn taylor_shift_one(&self) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].clone();
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// `p(2^k x)`.
    pub fn scale_var_pow2(&self, k: u64) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c << (k * i as u64))
                .collect(),
        )
    }

    /// `2^n p(x/2)` with `n = deg p`.
    pub fn halve_var(&self) -> Self {
        let n = self.coeffs.len();
        Self::new(self.coeffs.iter().enumerate().map(|(i, c)| c << (n - 1 - i)).collect())
    }

    /// Divide by `x` (drop a zero constant term).
    pub fn shift_down(&self) -> Self {
        debug_assert!(self.coeffs.first().is_none_or(Zero::is_zero));
        Self::new(self.coeffs.iter().skip(1).cloned().collect())
    }

    pub fn sign_variations(&self) -> usize {
        let mut count = 0;
        let mut last = Sign::NoSign;
        for c in &self.coeffs {
            let s = c.sign();
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder of `self` by `d`: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let shift = rd - dd;
            let mut next: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lc).collect();
            for (k, c) in d.coeffs.iter().enumerate() {
                next[k + shift] -= c * &lr;
            }
            r = Self::new(next);
        }
        r
    }

    /// Exact division; `None` if `d` does not divide `self` over the integers.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &r[k + dd];
            let (qk, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                r[k + j] -= &qk * c;
            }
            q[k] = qk;
        }
        if r.iter().all(Zero::is_zero) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Greatest common divisor (primitive, positive leading coefficient).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Squarefree part, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive_part();
        }
        self.primitive_part()
            .div_exact(&g)
            .expect("gcd divides its argument")
            .primitive_part()
    }
}
