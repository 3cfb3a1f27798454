//! A sound but incomplete irreducibility test over the rationals.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::BinaryForm;
use crate::invariants::poly_discriminant;
use crate::poly::IntPoly;
use crate::primes::primes;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    Unknown,
}

impl fmt::Display for Irreducibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Irreducibility::Irreducible => "irreducible",
            Irreducibility::Reducible => "reducible",
            Irreducibility::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibilityVerdict {
    pub status: Irreducibility,
    /// Human-readable evidence.
    pub witness: Option<String>,
    /// For reducible forms, a proper factor that divides `F` exactly.
    pub factor: Option<BinaryForm>,
}

const PRIMES_TO_TRY: usize = 25;
/// Trial division stops above this bound; larger coefficients skip the rational-root step.
const TRIAL_LIMIT: u64 = 1 << 40;

/// Positive divisors of `n` by trial division, `None` when `n` is too large.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > TRIAL_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// A rational root `num/den` of `f`, searched among `num | c_0`, `den | c_n`.
fn rational_root(f: &IntPoly) -> Option<Option<(BigInt, BigInt)>> {
    let c0 = f.coeffs().first()?.clone();
    if c0.is_zero() {
        return Some(Some((BigInt::zero(), BigInt::one())));
    }
    let nums = divisors(&c0)?;
    let dens = divisors(f.leading()?)?;
    for den in &dens {
        for num in &nums {
            if !num.gcd(den).is_one() {
                continue;
            }
            for n in [num.clone(), -num.clone()] {
                if f.eval_homogeneous(&n, den).is_zero() {
                    return Some(Some((n, den.clone())));
                }
            }
        }
    }
    Some(None)
}

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let g = (a as i128).extended_gcd(&(p as i128));
    g.x.rem_euclid(p as i128) as u64
}

fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().unwrap(), p);
    if r.len() < b.len() {
        return (vec![], trim(r));
    }
    let mut q = vec![0; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * inv % p;
        q[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * bj % p) % p;
            }
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn mulmod(a: &Fp, b: &Fp, m: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    divrem(&trim(out), m, p).1
}

fn powmod_x(e: u64, m: &Fp, p: u64) -> Fp {
    let mut result: Fp = vec![1];
    let mut base: Fp = divrem(&vec![0, 1], m, p).1;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &base, m, p);
        }
        base = mulmod(&base, &base, m, p);
        e >>= 1;
    }
    result
}

fn compose_pow(h: &Fp, m: &Fp, p: u64) -> Fp {
    // h^p mod m by repeated squaring of h.
    let mut result: Fp = vec![1];
    let mut base = h.clone();
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &base, m, p);
        }
        base = mulmod(&base, &base, m, p);
        e >>= 1;
    }
    result
}

fn gcd_fp(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let inv = inv_mod(l, p);
        a.iter_mut().for_each(|c| *c = *c * inv % p);
    }
    a
}

fn sub_fp(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

/// Degrees of the irreducible factors of a squarefree `f` modulo `p`.
fn factor_degrees_mod(f: &Fp, p: u64) -> Vec<usize> {
    let mut f = f.clone();
    let mut out = Vec::new();
    let mut h = powmod_x(p, &f, p);
    let mut d = 1;
    while 2 * d < f.len() {
        let g = gcd_fp(&sub_fp(&h, &vec![0, 1], p), &f, p);
        let dg = g.len() - 1;
        if dg > 0 {
            out.extend(std::iter::repeat_n(d, dg / d));
            f = divrem(&f, &g, p).0;
            h = divrem(&h, &f, p).1;
        }
        d += 1;
        if 2 * d < f.len() {
            h = compose_pow(&h, &f, p);
        }
    }
    if f.len() > 1 {
        out.push(f.len() - 1);
    }
    out
}

fn subset_sums(degs: &[usize], n: usize) -> BTreeSet<usize> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degs {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    (1..n).filter(|&s| reach[s]).collect()
}

fn reduce_mod(f: &IntPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(f.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

/// Decide irreducibility of `F` over the rationals, soundly but incompletely.
pub fn certify_irreducible(form: &BinaryForm) -> Result<IrreducibilityVerdict> {
    if !form.content().is_one() {
        return Err(Error::Hypothesis(format!("content {} > 1", form.content())));
    }
    if !form.boundary_nonzero() {
        return Err(Error::Hypothesis("a boundary coefficient is zero".into()));
    }
    let r = form.degree() as usize;
    let f = form.f_poly();
    if r <= 1 {
        return Ok(IrreducibilityVerdict {
            status: Irreducibility::Irreducible,
            witness: Some("linear".into()),
            factor: None,
        });
    }
    let rr = rational_root(&f);
    if let Some(Some((num, den))) = &rr {
        // den x - num y divides F.
        let factor = BinaryForm::new(1, [(0, den.clone()), (1, -num.clone())])?;
        let lin = IntPoly::new(vec![-num.clone(), den.clone()]);
        debug_assert!(f.div_exact(&lin).is_some());
        if f.div_exact(&lin).is_none() {
            return Err(Error::TheoremViolation("rational root does not divide".into()));
        }
        return Ok(IrreducibilityVerdict {
            status: Irreducibility::Reducible,
            witness: Some(format!("rational root {num}/{den}")),
            factor: Some(factor),
        });
    }
    if r <= 3 && rr.is_some() {
        return Ok(IrreducibilityVerdict {
            status: Irreducibility::Irreducible,
            witness: Some("degree <= 3 without rational roots".into()),
            factor: None,
        });
    }
    let disc = poly_discriminant(&f);
    if disc.is_zero() {
        // A repeated factor: the squarefree part is a proper divisor.
        let g = f.gcd(&f.derivative());
        let factor = BinaryForm::from_poly(&g, g.degree().unwrap() as u32)?;
        return Ok(IrreducibilityVerdict {
            status: Irreducibility::Reducible,
            witness: Some("repeated factor".into()),
            factor: Some(factor),
        });
    }
    let bad = &disc * f.leading().unwrap();
    let mut allowed: BTreeSet<usize> = (1..r).collect();
    let mut used = 0;
    for p in primes() {
        if used == PRIMES_TO_TRY {
            break;
        }
        if (&bad % BigInt::from(p)).is_zero() {
            continue;
        }
        used += 1;
        let degs = factor_degrees_mod(&reduce_mod(&f, p), p);
        if degs.len() == 1 {
            return Ok(IrreducibilityVerdict {
                status: Irreducibility::Irreducible,
                witness: Some(format!("irreducible modulo {p}")),
                factor: None,
            });
        }
        allowed = allowed.intersection(&subset_sums(&degs, r)).copied().collect();
        if allowed.is_empty() {
            return Ok(IrreducibilityVerdict {
                status: Irreducibility::Irreducible,
                witness: Some(format!("incompatible degree patterns up to prime {p}")),
                factor: None,
            });
        }
    }
    Ok(IrreducibilityVerdict {
        status: Irreducibility::Unknown,
        witness: Some(format!("possible factor degrees {allowed:?}")),
        factor: None,
    })
}
