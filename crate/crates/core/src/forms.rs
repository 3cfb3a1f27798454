//! Integer binary forms with sparse coefficient storage.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::primes::is_prime;

/// `F(x,y) = sum_i a_i x^(r-i) y^i` with only the nonzero `a_i` stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    degree: u32,
    coeffs: BTreeMap<u32, BigInt>,
    content: BigInt,
}

impl BinaryForm {
    /// Build a form from `(index, coefficient)` pairs. Zero coefficients are dropped.
    /// Indices must be distinct; they need not be sorted.
    pub fn new<I>(degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, BigInt)>,
    {
        let mut coeffs = BTreeMap::new();
        for (i, a) in terms {
            if i > degree {
                return Err(Error::IndexOutOfRange {
                    index: i as u64,
                    degree,
                });
            }
            if coeffs.contains_key(&i) {
                return Err(Error::DuplicateIndex(i));
            }
            if !a.is_zero() {
                coeffs.insert(i, a);
            }
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroForm);
        }
        let content = coeffs.values().fold(BigInt::zero(), |g, c| g.gcd(c));
        Ok(BinaryForm {
            degree,
            coeffs,
            content,
        })
    }

    pub fn from_i64(degree: u32, terms: &[(u32, i64)]) -> Result<Self> {
        Self::new(degree, terms.iter().map(|&(i, a)| (i, BigInt::from(a))))
    }

    /// Dense constructor: `dense[i]` is `a_i`, so `dense.len() == r + 1`.
    pub fn from_dense(dense: &[BigInt]) -> Result<Self> {
        if dense.is_empty() {
            return Err(Error::ZeroForm);
        }
        let r = (dense.len() - 1) as u32;
        Self::new(r, dense.iter().cloned().enumerate().map(|(i, a)| (i as u32, a)))
    }

    /// The form `a_0 x^r + ... ` read off `f(x) = F(x,1)`, coefficients ascending in `x`.
    pub fn from_poly(f: &IntPoly, degree: u32) -> Result<Self> {
        let n = f.degree().ok_or(Error::ZeroForm)?;
        if n > degree as usize {
            return Err(Error::IndexOutOfRange {
                index: n as u64,
                degree,
            });
        }
        Self::new(
            degree,
            f.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (degree - k as u32, c.clone())),
        )
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of nonzero coefficients, `s + 1`.
    pub fn s_plus_1(&self) -> usize {
        self.coeffs.len()
    }

    pub fn s(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn content(&self) -> &BigInt {
        &self.content
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&i, a)| (i, a))
    }

    /// `a_i`, zero when not stored.
    pub fn coeff(&self, i: u32) -> BigInt {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    /// Dense coefficient vector `[a_0, ..., a_r]`.
    pub fn dense(&self) -> Vec<BigInt> {
        (0..=self.degree).map(|i| self.coeff(i)).collect()
    }

    /// `a_0 != 0` and `a_r != 0`, i.e. neither `x` nor `y` divides the form.
    pub fn boundary_nonzero(&self) -> bool {
        self.coeffs.contains_key(&0) && self.coeffs.contains_key(&self.degree)
    }

    pub fn check_boundary(&self) -> Result<()> {
        for i in [0, self.degree] {
            if !self.coeffs.contains_key(&i) {
                return Err(Error::BoundaryCoefficientZero(i));
            }
        }
        Ok(())
    }

    /// Rejects degrees below 3.
    pub fn check_thue_degree(&self) -> Result<()> {
        if self.degree < 3 {
            return Err(Error::DegreeTooSmall(self.degree));
        }
        Ok(())
    }

    /// Naive height `max |a_i|`.
    pub fn height(&self) -> BigInt {
        self.coeffs.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// `f(x) = F(x, 1)` as a dense polynomial in `x`.
    pub fn f_poly(&self) -> IntPoly {
        let mut c = vec![BigInt::zero(); self.degree as usize + 1];
        for (&i, a) in &self.coeffs {
            c[(self.degree - i) as usize] = a.clone();
        }
        IntPoly::new(c)
    }

    /// `F(x, y)` exactly.
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let r = self.degree;
        // Walk the stored indices in decreasing order, multiplying in the
        // powers of y and x that separate consecutive terms.
        let mut acc = BigInt::zero();
        let mut prev: Option<u32> = None;
        for (&i, a) in self.coeffs.iter().rev() {
            if let Some(p) = prev {
                acc *= Pow::pow(y, p - i);
            }
            acc += a * Pow::pow(x, r - i);
            prev = Some(i);
        }
        // acc now holds sum a_i x^(r-i) y^(i - i_min); restore the y power.
        if let Some(p) = prev {
            acc *= Pow::pow(y, p);
        }
        acc
    }

    /// Divide by the content: returns `(G, c)` with `c * G == F` and `content(G) = 1`.
    pub fn divide_by_content(&self) -> (BinaryForm, BigInt) {
        let c = self.content.clone();
        let coeffs = self.coeffs.iter().map(|(&i, a)| (i, a / &c)).collect();
        (
            BinaryForm {
                degree: self.degree,
                coeffs,
                content: BigInt::one(),
            },
            c,
        )
    }

    /// `F_A(x, y) = F(ax + by, cx + dy)`.
    pub fn transform(&self, m: &IntMatrix2) -> Result<BinaryForm> {
        if m.det().is_zero() {
            return Err(Error::ZeroDeterminant);
        }
        let r = self.degree as usize;
        // Powers of the linear forms, stored densely by power of y.
        let lin_pows = |p: &BigInt, q: &BigInt| {
            let mut out = vec![vec![BigInt::one()]];
            for k in 1..=r {
                let prev: &Vec<BigInt> = &out[k - 1];
                let mut next = vec![BigInt::zero(); k + 1];
                for (j, c) in prev.iter().enumerate() {
                    next[j] += c * p;
                    next[j + 1] += c * q;
                }
                out.push(next);
            }
            out
        };
        let first = lin_pows(&m.a, &m.b);
        let second = lin_pows(&m.c, &m.d);
        let mut dense = vec![BigInt::zero(); r + 1];
        for (&i, a) in &self.coeffs {
            let i = i as usize;
            let u = &first[r - i];
            let v = &second[i];
            for (j, cu) in u.iter().enumerate() {
                if cu.is_zero() {
                    continue;
                }
                let t = a * cu;
                for (k, cv) in v.iter().enumerate() {
                    dense[j + k] += &t * cv;
                }
            }
        }
        BinaryForm::from_dense(&dense)
    }

    /// Equivalent form with `G(1,0) = F(x,y)` together with the unimodular matrix used.
    pub fn normalize_at(&self, x: &BigInt, y: &BigInt) -> Result<(BinaryForm, IntMatrix2)> {
        let eg = x.extended_gcd(y);
        if !eg.gcd.is_one() {
            return Err(Error::NonPrimitivePair(x.to_string(), y.to_string()));
        }
        // x*u + y*v = 1, so [[x, -v], [y, u]] has determinant 1.
        let m = IntMatrix2::new(x.clone(), -eg.y, y.clone(), eg.x);
        let g = self.transform(&m)?;
        Ok((g, m))
    }

    /// Stable 64-bit identity of the form (FNV-1a over its canonical text).
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.to_string().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        h
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={};", self.degree)?;
        for (n, (i, a)) in self.coeffs.iter().enumerate() {
            let sep = if n == 0 { " " } else { ", " };
            write!(f, "{sep}{i}:{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm({self})")
    }
}

impl FromStr for BinaryForm {
    type Err = Error;

    /// Lenient parse: boundary coefficients may vanish.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (head, body) = text
            .split_once(';')
            .ok_or_else(|| Error::Syntax("expected `r=<int>; <i>:<coeff>, ...`".into()))?;
        let head: String = head.chars().filter(|c| !c.is_whitespace()).collect();
        let r = head
            .strip_prefix("r=")
            .ok_or_else(|| Error::Syntax(format!("expected `r=<int>`, got `{head}`")))?;
        let degree: u32 = r.parse().map_err(|_| Error::Syntax(format!("bad degree `{r}`")))?;
        let mut terms = Vec::new();
        let mut last: Option<u32> = None;
        for item in body.split(',') {
            let item: String = item.chars().filter(|c| !c.is_whitespace()).collect();
            if item.is_empty() {
                continue;
            }
            let (i, a) = item
                .split_once(':')
                .ok_or_else(|| Error::Syntax(format!("expected `<i>:<coeff>`, got `{item}`")))?;
            let i: u64 = i.parse().map_err(|_| Error::Syntax(format!("bad index `{i}`")))?;
            if i > degree as u64 {
                return Err(Error::IndexOutOfRange { index: i, degree });
            }
            let i = i as u32;
            if last.is_some_and(|l| i <= l) {
                return Err(Error::DuplicateIndex(i));
            }
            last = Some(i);
            let a: BigInt = a.parse().map_err(|_| Error::Syntax(format!("bad coefficient `{a}`")))?;
            terms.push((i, a));
        }
        BinaryForm::new(degree, terms)
    }
}

/// Parse a form and require `a_0 != 0` and `a_r != 0`.
pub fn parse_form(text: &str) -> Result<BinaryForm> {
    let f: BinaryForm = text.parse()?;
    f.check_boundary()?;
    Ok(f)
}

/// Parse one form per nonempty line; `#` starts a comment.
pub fn parse_forms(text: &str) -> Result<Vec<BinaryForm>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_form)
        .collect()
}

impl Serialize for BinaryForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BinaryForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Integer matrix `[[a, b], [c, d]]` acting by `(x, y) -> (ax + by, cx + dy)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl IntMatrix2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        IntMatrix2 { a, b, c, d }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn mul(&self, o: &IntMatrix2) -> IntMatrix2 {
        IntMatrix2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (&self.a * x + &self.b * y, &self.c * x + &self.d * y)
    }

    /// Integer `(x', y')` with `A (x', y') = (x, y)`, if one exists.
    pub fn preimage(&self, x: &BigInt, y: &BigInt) -> Option<(BigInt, BigInt)> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let nx = &self.d * x - &self.b * y;
        let ny = &self.a * y - &self.c * x;
        let (qx, rx) = nx.div_rem(&det);
        let (qy, ry) = ny.div_rem(&det);
        (rx.is_zero() && ry.is_zero()).then_some((qx, qy))
    }

    /// Entry-wise maximum absolute row sum, the operator norm for the sup metric.
    pub fn sup_norm(&self) -> BigInt {
        let r1 = self.a.abs() + self.b.abs();
        let r2 = self.c.abs() + self.d.abs();
        r1.max(r2)
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// `A_0 = [[p, 0], [0, 1]]` and `A_j = [[0, -1], [p, j]]` for `j = 1..=p`.
pub fn decomposition_matrices(p: u64) -> Result<Vec<IntMatrix2>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pb = BigInt::from(p);
    let mut out = Vec::with_capacity(p as usize + 1);
    out.push(IntMatrix2::new(
        pb.clone(),
        BigInt::zero(),
        BigInt::zero(),
        BigInt::one(),
    ));
    for j in 1..=p {
        out.push(IntMatrix2::new(
            BigInt::zero(),
            -BigInt::one(),
            pb.clone(),
            BigInt::from(j),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn parse_examples() {
        let f = parse_form("r=3; 0:1, 3:-2").unwrap();
        assert_eq!(f.s_plus_1(), 2);
        assert_eq!(f.coeff(3), bi(-2));
        let g = parse_form("r=3; 0:2, 3:4").unwrap();
        assert_eq!(g.content(), &bi(2));
        assert_eq!(parse_form("r=3; 1:1"), Err(Error::BoundaryCoefficientZero(0)));
        assert_eq!(parse_form("r=3; 0:1, 0:2, 3:1"), Err(Error::DuplicateIndex(0)));
        assert!(matches!(
            parse_form("r=3; 0:1, 4:1"),
            Err(Error::IndexOutOfRange { index: 4, .. })
        ));
        assert_eq!(parse_form("r=3; 0:0"), Err(Error::ZeroForm));
        assert!(matches!(parse_form("x^3 - 2"), Err(Error::Syntax(_))));
    }

    #[test]
    fn display_round_trips() {
        let f = parse_form("  r = 5 ;0:  7 ,2:-3,  5:123456789012345678901234567890").unwrap();
        assert_eq!(parse_form(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn content_division() {
        let f = BinaryForm::from_i64(4, &[(0, 6), (4, 9)]).unwrap();
        let (g, c) = f.divide_by_content();
        assert_eq!(c, bi(3));
        assert_eq!(g, BinaryForm::from_i64(4, &[(0, 2), (4, 3)]).unwrap());
        let (g2, c2) = g.divide_by_content();
        assert_eq!((g2, c2), (g, bi(1)));
    }

    #[test]
    fn eval_matches_definition() {
        let f = BinaryForm::from_i64(3, &[(0, 1), (3, -2)]).unwrap();
        assert_eq!(f.eval(&bi(1), &bi(1)), bi(-1));
        assert_eq!(f.eval(&bi(1), &bi(0)), bi(1));
        let g = BinaryForm::from_i64(5, &[(1, 3), (2, -1), (4, 7)]).unwrap();
        for (x, y) in [(2, 3), (-1, 4), (0, 5), (7, 0)] {
            let direct =
                bi(3) * bi(x).pow(4u32) * bi(y) - bi(x).pow(3u32) * bi(y).pow(2u32) + bi(7) * bi(x) * bi(y).pow(4u32);
            assert_eq!(g.eval(&bi(x), &bi(y)), direct);
        }
    }

    #[test]
    fn transform_examples() {
        let f = BinaryForm::from_i64(3, &[(0, 1), (3, -2)]).unwrap();
        assert_eq!(f.transform(&IntMatrix2::identity()).unwrap(), f);
        let swap = IntMatrix2::from_i64(0, 1, 1, 0);
        assert_eq!(
            f.transform(&swap).unwrap(),
            BinaryForm::from_i64(3, &[(0, -2), (3, 1)]).unwrap()
        );
        assert_eq!(
            f.transform(&IntMatrix2::from_i64(1, 2, 2, 4)),
            Err(Error::ZeroDeterminant)
        );
    }

    #[test]
    fn transform_composes() {
        let f = BinaryForm::from_i64(4, &[(0, 3), (1, -1), (4, 5)]).unwrap();
        let a = IntMatrix2::from_i64(2, 1, -1, 3);
        let b = IntMatrix2::from_i64(1, -4, 0, 1);
        let lhs = f.transform(&a).unwrap().transform(&b).unwrap();
        let rhs = f.transform(&a.mul(&b)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn decomposition_examples() {
        let m = decomposition_matrices(2).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m[0], IntMatrix2::from_i64(2, 0, 0, 1));
        assert_eq!(m[1], IntMatrix2::from_i64(0, -1, 2, 1));
        assert_eq!(m[2], IntMatrix2::from_i64(0, -1, 2, 2));
        assert!(m[1].preimage(&bi(3), &bi(5)).is_some());
        assert_eq!(decomposition_matrices(4), Err(Error::NotPrime(4)));
        for p in [2u64, 3, 5] {
            let mats = decomposition_matrices(p).unwrap();
            assert!(mats.iter().all(|m| m.det().abs() == bi(p as i64)));
        }
    }

    #[test]
    fn normalize_examples() {
        let f = BinaryForm::from_i64(3, &[(0, 1), (3, -2)]).unwrap();
        let (g, a) = f.normalize_at(&bi(1), &bi(0)).unwrap();
        assert_eq!(g, f);
        assert_eq!(a, IntMatrix2::identity());
        let (g, a) = f.normalize_at(&bi(1), &bi(1)).unwrap();
        assert!(a.is_unimodular());
        assert_eq!(g.coeff(0), bi(-1));
        assert!(f.normalize_at(&bi(2), &bi(4)).is_err());
    }
}
