//! The finite ring `O_d / I`.
//!
//! With `I = Z·a + Z·(b + c·w)` in HNF, every class has a unique
//! representative `u + v·w` with `0 ≤ u < a`, `0 ≤ v < c`: first clear the
//! `w`-coordinate modulo `c` using `b + c·w`, then the constant modulo `a`.
//! Residues are stored as the index `u + a·v`, so they are plain `Copy`
//! values and the ring they belong to is passed alongside.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::Ideal;
use crate::quadring::{QuadInt, RingSpec};

/// Enumeration budgets shared by the quotient-ring and matrix-group code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Largest quotient ring `|O/I|` that may be built.
    pub ring_elements: usize,
    /// Largest explicit matrix group that may be enumerated.
    pub group_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { ring_elements: 10_000, group_elements: 200_000 }
    }
}

// Matrix keys pack four residues into 16 bits each.
const MAX_RING_SIZE: usize = 1 << 16;
// Rings up to this size get a precomputed multiplication table.
const TABLE_SIZE: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue(u32);

impl Residue {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
pub struct QuotientRing {
    ring: RingSpec,
    modulus: Ideal,
    a: i64,
    b: i64,
    c: i64,
    // w² = t·w + n with n reduced mod a.
    t: i64,
    n: i64,
    size: usize,
    limits: Limits,
    mul_table: Option<Vec<u32>>,
}

pub fn quotient_ring(ring: &RingSpec, modulus: &Ideal, limits: Limits) -> Result<QuotientRing> {
    if modulus.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let norm = modulus.norm();
    let cap = limits.ring_elements.min(MAX_RING_SIZE);
    let size = match norm.to_usize() {
        Some(s) if s <= cap => s,
        _ => {
            return Err(Error::Capacity {
                what: "quotient ring size",
                needed: norm.to_u128().unwrap_or(u128::MAX),
                limit: cap as u128,
            })
        }
    };
    let a = modulus.a().to_i64().expect("bounded by size");
    let b = modulus.b().to_i64().expect("bounded by size");
    let c = modulus.c().to_i64().expect("bounded by size");
    let mut q = QuotientRing {
        ring: ring.clone(),
        modulus: modulus.clone(),
        a,
        b,
        c,
        t: ring.trace_w(),
        n: ring.w_squared_constant().rem_euclid(a),
        size,
        limits,
        mul_table: None,
    };
    if size <= TABLE_SIZE {
        let mut table = vec![0u32; size * size];
        for i in 0..size {
            for j in i..size {
                let p = q.mul_direct(Residue(i as u32), Residue(j as u32)).0;
                table[i * size + j] = p;
                table[j * size + i] = p;
            }
        }
        q.mul_table = Some(table);
    }
    Ok(q)
}

impl QuotientRing {
    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn modulus(&self) -> &Ideal {
        &self.modulus
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Additive order of 1, i.e. the least positive rational integer in `I`.
    pub fn characteristic(&self) -> u64 {
        self.a as u64
    }

    pub fn elements(&self) -> impl Iterator<Item = Residue> {
        (0..self.size as u32).map(Residue)
    }

    pub fn zero(&self) -> Residue {
        Residue(0)
    }

    pub fn one(&self) -> Residue {
        self.from_pair(1, 0)
    }

    pub fn w(&self) -> Residue {
        self.from_pair(0, 1)
    }

    pub fn from_int(&self, k: i64) -> Residue {
        self.from_pair(k, 0)
    }

    /// `(u, v)` with the residue equal to `u + v·w`.
    pub fn coords(&self, r: Residue) -> (i64, i64) {
        let i = r.0 as i64;
        (i % self.a, i / self.a)
    }

    /// Canonical residue of `x + y·w`.
    pub fn from_pair(&self, x: i64, y: i64) -> Residue {
        let q = y.div_euclid(self.c);
        let v = y - q * self.c;
        let u = (x - q * self.b).rem_euclid(self.a);
        Residue((u + self.a * v) as u32)
    }

    pub fn reduce(&self, x: &QuadInt) -> Residue {
        let (a, b, c) = (BigInt::from(self.a), BigInt::from(self.b), BigInt::from(self.c));
        let (q, v) = x.b.div_mod_floor(&c);
        let u = (&x.a - q * b).mod_floor(&a);
        let u = u.to_i64().expect("reduced");
        let v = v.to_i64().expect("reduced");
        Residue((u + self.a * v) as u32)
    }

    pub fn lift(&self, r: Residue) -> QuadInt {
        let (u, v) = self.coords(r);
        QuadInt::from_i64(u, v)
    }

    pub fn add(&self, x: Residue, y: Residue) -> Residue {
        let (u1, v1) = self.coords(x);
        let (u2, v2) = self.coords(y);
        self.from_pair(u1 + u2, v1 + v2)
    }

    pub fn neg(&self, x: Residue) -> Residue {
        let (u, v) = self.coords(x);
        self.from_pair(-u, -v)
    }

    pub fn sub(&self, x: Residue, y: Residue) -> Residue {
        let (u1, v1) = self.coords(x);
        let (u2, v2) = self.coords(y);
        self.from_pair(u1 - u2, v1 - v2)
    }

    #[inline]
    pub fn mul(&self, x: Residue, y: Residue) -> Residue {
        match &self.mul_table {
            Some(t) => Residue(t[x.index() * self.size + y.index()]),
            None => self.mul_direct(x, y),
        }
    }

    fn mul_direct(&self, x: Residue, y: Residue) -> Residue {
        let (u1, v1) = self.coords(x);
        let (u2, v2) = self.coords(y);
        let vv = v1 * v2;
        self.from_pair(u1 * u2 + self.n * vv, u1 * v2 + u2 * v1 + self.t * vv)
    }

    /// Multiplicative inverse by exhaustive search, `None` for non-units.
    pub fn residue_inverse(&self, r: Residue) -> Option<Residue> {
        let one = self.one();
        self.elements().find(|&s| self.mul(r, s) == one)
    }

    pub fn is_unit(&self, r: Residue) -> bool {
        self.residue_inverse(r).is_some()
    }

    pub fn units(&self) -> Vec<Residue> {
        self.elements().filter(|&r| self.is_unit(r)).collect()
    }

    /// Whether the residue's lift lies in `ideal`.
    pub fn lies_in(&self, r: Residue, ideal: &Ideal) -> bool {
        ideal.contains(&self.lift(r))
    }

    /// `u+v*w mod hnf:a,b,c`.
    pub fn format_residue(&self, r: Residue) -> String {
        format!("{} mod {}", self.format_short(r), self.modulus)
    }

    /// `u+v*w` on the canonical representative.
    pub fn format_short(&self, r: Residue) -> String {
        let (u, v) = self.coords(r);
        let wv = if v == 1 { "w".to_string() } else { format!("{v}*w") };
        match (u, v) {
            (_, 0) => format!("{u}"),
            (0, _) => wv,
            _ => format!("{u}+{wv}"),
        }
    }

    /// Table sending each residue of `self` to its class modulo `coarser`.
    /// Requires `modulus(coarser) ⊇ modulus(self)` in the same ring.
    pub fn reduction_map(&self, coarser: &QuotientRing) -> Result<Vec<Residue>> {
        if self.ring != coarser.ring || !self.modulus.is_subset_of(&coarser.modulus) {
            return Err(Error::NotDivisible {
                small: coarser.modulus.to_string(),
                big: self.modulus.to_string(),
            });
        }
        Ok(self
            .elements()
            .map(|r| {
                let (u, v) = self.coords(r);
                coarser.from_pair(u, v)
            })
            .collect())
    }
}
