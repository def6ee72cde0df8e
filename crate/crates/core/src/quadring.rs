//! Exact arithmetic in the ring of integers `O_d` of `Q(√d)`.
//!
//! Elements are written on the integral basis `{1, w}` where
//! `w = √d` when `d ≢ 1 (mod 4)` and `w = (1 + √d)/2` otherwise. In both
//! cases `w² = t·w + n` for a trace `t ∈ {0, 1}` and a constant `n`, which is
//! all the multiplication rule needs.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Which integral basis the ring uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WRule {
    /// `w = √d`, so `w² = d`.
    RootD,
    /// `w = (1 + √d)/2`, so `w² = w + (d − 1)/4`.
    HalfInteger,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RingSpec {
    d: i64,
    w_rule: WRule,
    disc: i64,
}

// Keeps 4·d and the quotient-ring products comfortably inside i64.
const MAX_ABS_D: i64 = 1 << 40;

/// Builds `O_d`, rejecting `d ∈ {0, 1}` and non-squarefree `d`.
pub fn make_ring(d: i64) -> Result<RingSpec> {
    if d == 0 || d == 1 || d.abs() > MAX_ABS_D {
        return Err(Error::InvalidDiscriminant(d));
    }
    let m = d.unsigned_abs();
    let mut k: u64 = 2;
    while k * k <= m {
        if m % (k * k) == 0 {
            return Err(Error::NotSquarefree { d, factor: k as i64 });
        }
        k += 1;
    }
    let (w_rule, disc) = if d.rem_euclid(4) == 1 {
        (WRule::HalfInteger, d)
    } else {
        (WRule::RootD, 4 * d)
    };
    Ok(RingSpec { d, w_rule, disc })
}

impl RingSpec {
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn w_rule(&self) -> WRule {
        self.w_rule
    }

    /// Field discriminant: `d` or `4d`.
    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn is_imaginary(&self) -> bool {
        self.d < 0
    }

    /// `t` in `w² = t·w + n`.
    pub fn trace_w(&self) -> i64 {
        match self.w_rule {
            WRule::RootD => 0,
            WRule::HalfInteger => 1,
        }
    }

    /// `n` in `w² = t·w + n`.
    pub fn w_squared_constant(&self) -> i64 {
        match self.w_rule {
            WRule::RootD => self.d,
            WRule::HalfInteger => (self.d - 1) / 4,
        }
    }

    pub fn w(&self) -> QuadInt {
        QuadInt::from_i64(0, 1)
    }

    pub fn mul(&self, x: &QuadInt, y: &QuadInt) -> QuadInt {
        let t = BigInt::from(self.trace_w());
        let n = BigInt::from(self.w_squared_constant());
        let bb = &x.b * &y.b;
        QuadInt {
            a: &x.a * &y.a + &bb * &n,
            b: &x.a * &y.b + &x.b * &y.a + &bb * &t,
        }
    }

    pub fn pow(&self, x: &QuadInt, mut e: u32) -> QuadInt {
        let mut base = x.clone();
        let mut acc = QuadInt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Galois conjugate; `w ↦ t − w`.
    pub fn conj(&self, x: &QuadInt) -> QuadInt {
        QuadInt {
            a: &x.a + &x.b * BigInt::from(self.trace_w()),
            b: -&x.b,
        }
    }

    /// `x · x̄ = a² + t·ab − n·b²`.
    pub fn norm(&self, x: &QuadInt) -> BigInt {
        let t = BigInt::from(self.trace_w());
        let n = BigInt::from(self.w_squared_constant());
        &x.a * &x.a + &t * &x.a * &x.b - &n * &x.b * &x.b
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.trace_w();
        let n = self.w_squared_constant();
        write!(f, "O_{} (w^2 = ", self.d)?;
        if t == 1 {
            write!(f, "w")?;
            if n != 0 {
                write!(f, " {} {}", if n < 0 { '-' } else { '+' }, n.abs())?;
            }
        } else {
            write!(f, "{n}")?;
        }
        write!(f, ", disc {})", self.disc)
    }
}

/// `a + b·w` with arbitrary-precision coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt { a: a.into(), b: b.into() }
    }

    pub fn from_i64(a: i64, b: i64) -> Self {
        QuadInt::new(a, b)
    }

    pub fn zero() -> Self {
        QuadInt::default()
    }

    pub fn one() -> Self {
        QuadInt::from_i64(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> QuadInt {
        QuadInt { a: &self.a * k, b: &self.b * k }
    }
}

impl From<i64> for QuadInt {
    fn from(a: i64) -> Self {
        QuadInt::from_i64(a, 0)
    }
}

impl Add for &QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: QuadInt) -> QuadInt {
        &self + &rhs
    }
}

impl Sub for &QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: QuadInt) -> QuadInt {
        &self - &rhs
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { a: -&self.a, b: -&self.b }
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        -&self
    }
}

/// Canonical text: `3`, `w`, `-w`, `2*w`, `1+w`, `3-2*w`.
impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let abs_b = self.b.abs();
        let w_term = if abs_b.is_one() { "w".to_string() } else { format!("{abs_b}*w") };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{w_term}")
            } else {
                write!(f, "{w_term}")
            }
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{}{sign}{w_term}", self.a)
        }
    }
}

impl Serialize for QuadInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Accepts sums of signed terms `k`, `w`, `k*w` (also `kw`), e.g. `a+b*w`.
impl FromStr for QuadInt {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse(input, "empty element"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);

        let mut out = QuadInt::zero();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(Error::parse(input, "dangling sign"));
            }
            let (coef, is_w) = if let Some(k) = body.strip_suffix('w') {
                let k = k.strip_suffix('*').unwrap_or(k);
                if k.is_empty() {
                    (BigInt::one(), true)
                } else {
                    (parse_int(input, k)?, true)
                }
            } else {
                (parse_int(input, body)?, false)
            };
            let coef = if neg { -coef } else { coef };
            if is_w {
                out.b += coef;
            } else {
                out.a += coef;
            }
        }
        Ok(out)
    }
}

fn parse_int(input: &str, digits: &str) -> Result<BigInt> {
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(Error::parse(input, format!("bad integer {digits:?}")));
    }
    digits.parse::<BigInt>().map_err(|e| Error::parse(input, e.to_string()))
}
