//! Ideals of `O_d` in Hermite normal form.
//!
//! A nonzero ideal is a full-rank sublattice of `Z·1 ⊕ Z·w`. We store the
//! unique upper-triangular basis `{a, b + c·w}` with `a, c ≥ 1`, `c | a`,
//! `c | b` and `0 ≤ b < a`, so ideal equality is equality of the triple and
//! the norm `[O_d : I]` is `a·c`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numtheory;
use crate::quadring::{QuadInt, RingSpec};

/// Default ceiling on `N(I)` for trial-division factorisation.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

/// Row-style HNF of the lattice spanned by `(x, y) ↔ x + y·w`.
fn lattice_hnf<I>(vectors: I) -> Option<(BigInt, BigInt, BigInt)>
where
    I: IntoIterator<Item = (BigInt, BigInt)>,
{
    let mut a = BigInt::zero();
    let mut b = BigInt::zero();
    let mut c = BigInt::zero();
    for (x, y) in vectors {
        if y.is_zero() {
            a = a.gcd(&x);
        } else if c.is_zero() {
            if y.is_negative() {
                b = -x;
                c = -y;
            } else {
                b = x;
                c = y;
            }
        } else {
            let eg = c.extended_gcd(&y);
            let (mut g, mut s, mut t) = (eg.gcd, eg.x, eg.y);
            if g.is_negative() {
                g = -g;
                s = -s;
                t = -t;
            }
            // (c/g)(x, y) − (y/g)(b, c) has zero w-coordinate.
            let rest = (&c / &g) * &x - (&y / &g) * &b;
            b = s * &b + t * &x;
            c = g;
            a = a.gcd(&rest);
        }
    }
    if a.is_zero() || c.is_zero() {
        return None;
    }
    let b = b.mod_floor(&a);
    Some((a, b, c))
}

impl Ideal {
    /// The O-module generated by `gens`.
    pub fn from_generators(ring: &RingSpec, gens: &[QuadInt]) -> Result<Ideal> {
        if gens.iter().all(QuadInt::is_zero) {
            return Err(Error::ZeroIdeal);
        }
        let w = ring.w();
        let vectors = gens.iter().flat_map(|g| {
            let gw = ring.mul(g, &w);
            [(g.a.clone(), g.b.clone()), (gw.a, gw.b)]
        });
        let (a, b, c) = lattice_hnf(vectors).ok_or(Error::ZeroIdeal)?;
        Ideal::from_hnf(ring, a, b, c)
    }

    /// Validates an HNF triple, including closure under multiplication by `w`.
    pub fn from_hnf(
        ring: &RingSpec,
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
    ) -> Result<Ideal> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        let shown = format!("hnf:{a},{b},{c}");
        if !a.is_positive() || !c.is_positive() {
            return Err(Error::ZeroIdeal);
        }
        if !a.is_multiple_of(&c) || !b.is_multiple_of(&c) || b.is_negative() || b >= a {
            return Err(Error::parse(&shown, "not in Hermite normal form (need c | a, c | b, 0 <= b < a)"));
        }
        let ideal = Ideal { a, b, c };
        let w = ring.w();
        let wa = ring.mul(&QuadInt::new(ideal.a.clone(), 0), &w);
        let wg = ring.mul(&ideal.second_generator(), &w);
        if !ideal.contains(&wa) || !ideal.contains(&wg) {
            return Err(Error::NotAnIdeal(shown));
        }
        Ok(ideal)
    }

    pub fn unit() -> Ideal {
        Ideal { a: BigInt::one(), b: BigInt::zero(), c: BigInt::one() }
    }

    /// The principal ideal `(k)` for a rational integer `k ≠ 0`.
    pub fn rational(k: u64) -> Result<Ideal> {
        if k == 0 {
            return Err(Error::ZeroIdeal);
        }
        Ok(Ideal { a: BigInt::from(k), b: BigInt::zero(), c: BigInt::from(k) })
    }

    pub fn principal(ring: &RingSpec, x: &QuadInt) -> Result<Ideal> {
        Ideal::from_generators(ring, std::slice::from_ref(x))
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.c
    }

    pub fn norm_u64(&self) -> Option<u64> {
        self.norm().to_u64()
    }

    pub fn is_unit(&self) -> bool {
        self.a.is_one() && self.c.is_one()
    }

    /// `b + c·w`, the second HNF basis vector.
    pub fn second_generator(&self) -> QuadInt {
        QuadInt::new(self.b.clone(), self.c.clone())
    }

    /// Smallest positive rational integer in the ideal.
    pub fn min_rational(&self) -> &BigInt {
        &self.a
    }

    pub fn contains(&self, x: &QuadInt) -> bool {
        if !x.b.is_multiple_of(&self.c) {
            return false;
        }
        let k = &x.b / &self.c;
        (&x.a - k * &self.b).is_multiple_of(&self.a)
    }

    /// `self ⊆ other`, i.e. `other` divides `self`.
    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        other.contains(&QuadInt::new(self.a.clone(), 0)) && other.contains(&self.second_generator())
    }

    pub fn divides(&self, other: &Ideal) -> bool {
        other.is_subset_of(self)
    }

    pub fn mul(&self, other: &Ideal, ring: &RingSpec) -> Ideal {
        let xs = [QuadInt::new(self.a.clone(), 0), self.second_generator()];
        let ys = [QuadInt::new(other.a.clone(), 0), other.second_generator()];
        let products = xs.iter().flat_map(|x| ys.iter().map(move |y| ring.mul(x, y)));
        let (a, b, c) = lattice_hnf(products.map(|p| (p.a, p.b)))
            .expect("product of nonzero ideals is nonzero");
        Ideal { a, b, c }
    }

    /// `I + J`, the gcd of the two ideals.
    pub fn sum(&self, other: &Ideal) -> Ideal {
        let vs = [
            (self.a.clone(), BigInt::zero()),
            (self.b.clone(), self.c.clone()),
            (other.a.clone(), BigInt::zero()),
            (other.b.clone(), other.c.clone()),
        ];
        let (a, b, c) = lattice_hnf(vs).expect("sum of nonzero ideals is nonzero");
        Ideal { a, b, c }
    }

    pub fn is_coprime_to(&self, other: &Ideal) -> bool {
        self.sum(other).is_unit()
    }

    pub fn pow(&self, e: u32, ring: &RingSpec) -> Ideal {
        let mut acc = Ideal::unit();
        for _ in 0..e {
            acc = acc.mul(self, ring);
        }
        acc
    }

    pub fn is_prime(&self, ring: &RingSpec) -> bool {
        let Some(n) = self.norm_u64() else {
            return false;
        };
        if numtheory::is_prime(n) {
            return true;
        }
        let p = (n as f64).sqrt().round() as u64;
        p * p == n
            && numtheory::is_prime(p)
            && *self == Ideal::rational(p).expect("p > 0")
            && matches!(split_type(ring, p), Ok(SplitType::Inert { .. }))
    }

    /// Two-generator form `(a, b+c*w)`, accepted by [`parse_ideal`].
    pub fn generators_string(&self) -> String {
        format!("({}, {})", self.a, self.second_generator())
    }
}

/// Canonical text form `hnf:a,b,c`.
impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hnf:{},{},{}", self.a, self.b, self.c)
    }
}

impl Serialize for Ideal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses `hnf:a,b,c` or a generator list `(g1, g2, ...)`.
pub fn parse_ideal(ring: &RingSpec, input: &str) -> Result<Ideal> {
    let s = input.trim();
    if let Some(rest) = s.strip_prefix("hnf:") {
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::parse(input, "expected hnf:a,b,c"));
        }
        let nums = parts
            .iter()
            .map(|p| p.parse::<BigInt>().map_err(|e| Error::parse(input, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c]: [BigInt; 3] = nums.try_into().expect("three parts");
        return Ideal::from_hnf(ring, a, b, c);
    }
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::parse(input, "expected \"(g1, g2, ...)\" or \"hnf:a,b,c\""))?;
    let gens = inner.split(',').map(QuadInt::from_str).collect::<Result<Vec<_>>>()?;
    Ideal::from_generators(ring, &gens)
}

/// How a rational prime decomposes in `O_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SplitType {
    /// `(p) = P₁P₂` with `P₁ < P₂` in HNF order.
    Split { primes: [Ideal; 2] },
    Inert { prime: Ideal },
    /// `(p) = P²`.
    Ramified { prime: Ideal },
}

impl SplitType {
    pub fn primes(&self) -> Vec<&Ideal> {
        match self {
            SplitType::Split { primes } => primes.iter().collect(),
            SplitType::Inert { prime } | SplitType::Ramified { prime } => vec![prime],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SplitType::Split { .. } => "split",
            SplitType::Inert { .. } => "inert",
            SplitType::Ramified { .. } => "ramified",
        }
    }

    pub fn is_split(&self) -> bool {
        matches!(self, SplitType::Split { .. })
    }

    pub fn is_inert(&self) -> bool {
        matches!(self, SplitType::Inert { .. })
    }

    pub fn is_ramified(&self) -> bool {
        matches!(self, SplitType::Ramified { .. })
    }
}

/// Classifies `p` from the discriminant, then builds witness primes
/// `(p, r − w)` from roots `r` of the minimal polynomial of `w` mod `p` and
/// checks that they multiply back to `(p)`.
pub fn split_type(ring: &RingSpec, p: u64) -> Result<SplitType> {
    if !numtheory::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    #[derive(PartialEq)]
    enum Kind {
        Split,
        Inert,
        Ramified,
    }
    let kind = if p == 2 {
        match ring.d().rem_euclid(8) {
            1 => Kind::Split,
            5 => Kind::Inert,
            _ => Kind::Ramified,
        }
    } else {
        match numtheory::legendre(ring.disc(), p) {
            0 => Kind::Ramified,
            1 => Kind::Split,
            _ => Kind::Inert,
        }
    };

    let rational = Ideal::rational(p)?;
    if kind == Kind::Inert {
        return Ok(SplitType::Inert { prime: rational });
    }

    // w² − t·w − n ≡ 0 (mod p); exhaustive search is fine at these sizes.
    let t = ring.trace_w().rem_euclid(p as i64) as u128;
    let n = ring.w_squared_constant().rem_euclid(p as i64) as u128;
    let pp = p as u128;
    let roots: Vec<u64> = (0..p)
        .filter(|&r| {
            let r = r as u128;
            (r * r % pp + (pp - t * r % pp) + (pp - n)) % pp == 0
        })
        .collect();

    let witness = |r: u64| {
        Ideal::from_generators(
            ring,
            &[QuadInt::from(p as i64), QuadInt::from_i64(r as i64, -1)],
        )
    };
    let broken = |what: &str| Error::Internal(format!("{what} for p = {p} in {ring}"));

    match kind {
        Kind::Split => {
            if roots.len() != 2 {
                return Err(broken("split prime without two roots"));
            }
            let mut primes = [witness(roots[0])?, witness(roots[1])?];
            primes.sort();
            if primes[0] == primes[1] || primes[0].mul(&primes[1], ring) != rational {
                return Err(broken("split witnesses do not multiply to (p)"));
            }
            Ok(SplitType::Split { primes })
        }
        Kind::Ramified => {
            if roots.len() != 1 {
                return Err(broken("ramified prime without a double root"));
            }
            let prime = witness(roots[0])?;
            if prime.mul(&prime, ring) != rational {
                return Err(broken("ramified witness does not square to (p)"));
            }
            Ok(SplitType::Ramified { prime })
        }
        Kind::Inert => unreachable!(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimePower {
    pub prime: Ideal,
    pub exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FactoredIdeal {
    pub factors: Vec<PrimePower>,
}

impl FactoredIdeal {
    pub fn product(&self, ring: &RingSpec) -> Ideal {
        self.factors
            .iter()
            .fold(Ideal::unit(), |acc, f| acc.mul(&f.prime.pow(f.exponent, ring), ring))
    }

    pub fn primes(&self) -> impl Iterator<Item = &Ideal> {
        self.factors.iter().map(|f| &f.prime)
    }
}

/// Complete prime factorisation, primes ordered by rational prime then HNF.
pub fn factor_ideal(ring: &RingSpec, ideal: &Ideal, bound: u64) -> Result<FactoredIdeal> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let norm = ideal.norm();
    let n = match norm.to_u64() {
        Some(n) if n <= bound => n,
        _ => {
            return Err(Error::Capacity {
                what: "ideal norm for factorisation",
                needed: norm.to_u128().unwrap_or(u128::MAX),
                limit: bound as u128,
            })
        }
    };
    let mut factors = Vec::new();
    for (p, _) in numtheory::factor(n) {
        let st = split_type(ring, p)?;
        for prime in st.primes() {
            let mut e = 0;
            let mut power = prime.clone();
            while ideal.is_subset_of(&power) {
                e += 1;
                power = power.mul(prime, ring);
            }
            if e > 0 {
                factors.push(PrimePower { prime: prime.clone(), exponent: e });
            }
        }
    }
    let fact = FactoredIdeal { factors };
    if fact.product(ring) != *ideal {
        return Err(Error::Internal(format!("factorisation of {ideal} does not reconstruct")));
    }
    Ok(fact)
}

/// Every ideal of norm exactly `n`, sorted by HNF triple.
pub fn ideals_of_norm(ring: &RingSpec, n: u64) -> Vec<Ideal> {
    let mut out = Vec::new();
    for c in (1..=n).filter(|c| n % c == 0) {
        let a = n / c;
        if a % c != 0 {
            continue;
        }
        for b in (0..a).step_by(c as usize) {
            if let Ok(i) = Ideal::from_hnf(ring, a, b, c) {
                out.push(i);
            }
        }
    }
    out.sort();
    out
}

/// Every nonzero ideal with `lo ≤ N(I) ≤ hi`, by norm then HNF.
pub fn ideals_up_to(ring: &RingSpec, lo: u64, hi: u64) -> Vec<Ideal> {
    (lo.max(1)..=hi).flat_map(|n| ideals_of_norm(ring, n)).collect()
}
