//! `|SL(2, O/I)|` in closed form, and finite-quotient checks of the
//! structure around it: surjectivity of the elementary generators, the
//! layers of the congruence filtration, multiplicativity over coprime
//! moduli, and the normal closure of translation powers.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::{factor_ideal, FactoredIdeal, Ideal, DEFAULT_FACTOR_BOUND};
use crate::matgroup::{
    normal_closure, reduction_kernel, sl2_count, sl2_enumerate, subgroup_closure, FiniteMatrixGroup, Mat2,
};
use crate::quadring::RingSpec;
use crate::resring::{quotient_ring, Limits, QuotientRing, Residue};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub ideal: Ideal,
    pub closed_form: u128,
    /// Brute-force `|SL(2, O/I)|`, when the ring is small enough to scan.
    pub oracle: Option<u128>,
    pub factors: FactoredIdeal,
    #[serde(rename = "match")]
    pub matches: bool,
}

fn to_u128(x: &BigInt, what: &'static str) -> Result<u128> {
    x.to_u128().ok_or(Error::Capacity { what, needed: u128::MAX, limit: u128::MAX })
}

/// `N(I)³ · ∏ (N(P)² − 1) / ∏ N(P)²` over the distinct primes dividing `I`.
pub fn closed_form_index(ring: &RingSpec, ideal: &Ideal) -> Result<(u128, FactoredIdeal)> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let factors = factor_ideal(ring, ideal, DEFAULT_FACTOR_BOUND)?;
    let n = ideal.norm();
    let mut num = &n * &n * &n;
    let mut den = BigInt::one();
    for p in factors.primes() {
        let np = p.norm();
        let sq = &np * &np;
        num *= &sq - 1;
        den *= sq;
    }
    let (q, r) = num.div_rem(&den);
    if r != BigInt::from(0) {
        return Err(Error::Internal(format!("index of {ideal} is not integral")));
    }
    Ok((to_u128(&q, "index closed form")?, factors))
}

fn oracle_count(ring: &RingSpec, ideal: &Ideal, limits: Limits) -> Result<Option<u128>> {
    let q = match quotient_ring(ring, ideal, limits) {
        Ok(q) => q,
        Err(Error::Capacity { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    match sl2_count(&q) {
        Ok(n) => Ok(Some(n)),
        Err(Error::Capacity { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn index_formula(ring: &RingSpec, ideal: &Ideal, limits: Limits) -> Result<IndexReport> {
    let (closed_form, factors) = closed_form_index(ring, ideal)?;
    let oracle = oracle_count(ring, ideal, limits)?;
    Ok(IndexReport { ideal: ideal.clone(), closed_form, oracle, factors, matches: oracle == Some(closed_form) })
}

/// `|SL(2, O/P^e)| = N(P)^{3e−2} · (N(P)² − 1)`.
pub fn local_order(ring: &RingSpec, prime: &Ideal, e: u32) -> Result<u128> {
    if !prime.is_prime(ring) {
        return Err(Error::NotPrimeIdeal(prime.to_string()));
    }
    if e == 0 {
        return Err(Error::Precondition("local_order needs e >= 1".into()));
    }
    let n = prime.norm();
    let v = num_traits::pow(n.clone(), (3 * e - 2) as usize) * (&n * &n - 1);
    to_u128(&v, "local order")
}

/// `S`, `T_1`, `T_w` over `q`.
pub fn elementary_generators(q: &QuotientRing) -> Vec<Mat2> {
    vec![q.s_matrix(), q.translation(q.one()), q.translation(q.w())]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurjectivityReport {
    pub ideal: Ideal,
    pub closure_order: usize,
    pub sl_order: usize,
    pub closed_form: u128,
    /// Every element of the closure is an enumerated SL element.
    pub contained: bool,
    pub surjective: bool,
}

pub fn verify_surjectivity(ring: &RingSpec, ideal: &Ideal, limits: Limits) -> Result<SurjectivityReport> {
    let (closed_form, _) = closed_form_index(ring, ideal)?;
    let q = Arc::new(quotient_ring(ring, ideal, limits)?);
    let full = sl2_enumerate(&q)?;
    let closure = subgroup_closure(&elementary_generators(&q), &q, false)?;
    let contained = closure.is_subgroup_of(&full);
    let surjective = contained
        && closure.order() == full.order()
        && closure.same_elements(&full)
        && closure.order() as u128 == closed_form;
    Ok(SurjectivityReport {
        ideal: ideal.clone(),
        closure_order: closure.order(),
        sl_order: full.order(),
        closed_form,
        contained,
        surjective,
    })
}

/// The three kernel elements attached to one basis vector `x` of `P^m / P^{m+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerWitness {
    pub x: String,
    /// `[[1, x], [0, 1]]`
    pub upper: String,
    /// `S·upper·S⁻¹ = [[1, 0], [−x, 1]]`
    pub lower: String,
    /// `T_1·lower·T_1⁻¹ = [[1−x, x], [−x, 1+x]]`
    pub mixed: String,
    /// The products agree with the displayed closed forms.
    pub forms_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub prime: Ideal,
    pub m: u32,
    pub kernel_order: usize,
    /// `N(P)³`
    pub expected: u128,
    /// `|SL(2, O/P^{m+1})| / |SL(2, O/P^m)|` from the closed form.
    pub closed_form_ratio: u128,
    pub characteristic: u64,
    pub elementary_abelian: bool,
    pub witnesses: Vec<LayerWitness>,
    pub witnesses_generate: bool,
    pub ok: bool,
}

/// Greedy `F_p`-basis of a subgroup of `(Q, +)` given by its elements.
fn additive_basis(q: &QuotientRing, elems: &[Residue], p: u64) -> Vec<Residue> {
    let mut span = vec![q.zero()];
    let mut basis = Vec::new();
    for &x in elems {
        if span.contains(&x) {
            continue;
        }
        basis.push(x);
        let mut next = Vec::with_capacity(span.len() * p as usize);
        for &s in &span {
            let mut v = s;
            for _ in 0..p {
                next.push(v);
                v = q.add(v, x);
            }
        }
        span = next;
    }
    basis
}

/// The kernel of `SL(2, O/P^{m+1}) → SL(2, O/P^m)`, enumerated directly as
/// `{I + A : A ≡ 0 mod P^m, det = 1}` rather than by building the ambient
/// group, which keeps `N(P) = 9, m = 2` (ring of 729 elements) cheap.
pub fn verify_filtration(ring: &RingSpec, prime: &Ideal, m: u32, limits: Limits) -> Result<FiltrationReport> {
    if m == 0 {
        return Err(Error::Precondition("filtration level m must be >= 1".into()));
    }
    if !prime.is_prime(ring) {
        return Err(Error::NotPrimeIdeal(prime.to_string()));
    }
    let q = Arc::new(quotient_ring(ring, &prime.pow(m + 1, ring), limits)?);
    let layer_ideal = prime.pow(m, ring);
    let layer: Vec<Residue> = q.elements().filter(|&r| q.lies_in(r, &layer_ideal)).collect();
    let candidates = (layer.len() as u128).pow(4);
    let limit = 8 * limits.group_elements as u128;
    if candidates > limit {
        return Err(Error::Capacity { what: "filtration layer candidates", needed: candidates, limit });
    }

    let one = q.one();
    let mut kernel = Vec::new();
    for &a in &layer {
        for &b in &layer {
            for &c in &layer {
                for &d in &layer {
                    let mat = q.mat(q.add(one, a), b, c, q.add(one, d));
                    if q.det(&mat) == one {
                        kernel.push(mat);
                    }
                }
            }
        }
    }
    let kernel = FiniteMatrixGroup::from_elements(q.clone(), false, kernel)?;

    let p = prime.min_rational().to_u64().expect("prime below fits");
    let n = prime.norm().to_u128().expect("prime norm fits");
    let expected = n * n * n;
    let closed_form_ratio = local_order(ring, prime, m + 1)? / local_order(ring, prime, m)?;
    let elementary_abelian =
        kernel.is_abelian() && kernel.elements().iter().all(|g| kernel.is_identity(&kernel.power(g, p)));

    let (s, t1) = (q.s_matrix(), q.translation(one));
    let mut witnesses = Vec::new();
    let mut gens = Vec::new();
    for x in additive_basis(&q, &layer, p) {
        let upper = q.translation(x);
        let lower = q.conjugate(&upper, &s);
        let mixed = q.conjugate(&lower, &t1);
        let mx = q.neg(x);
        let forms_ok =
            lower == q.lower(mx) && mixed == q.mat(q.sub(one, x), x, mx, q.add(one, x));
        witnesses.push(LayerWitness {
            x: q.format_short(x),
            upper: q.format_mat(&upper),
            lower: q.format_mat(&lower),
            mixed: q.format_mat(&mixed),
            forms_ok,
        });
        gens.extend([upper, lower, mixed]);
    }
    let witnesses_generate = subgroup_closure(&gens, &q, false)?.same_elements(&kernel);
    let ok = kernel.order() as u128 == expected
        && closed_form_ratio == expected
        && elementary_abelian
        && witnesses_generate
        && witnesses.iter().all(|w| w.forms_ok);
    Ok(FiltrationReport {
        prime: prime.clone(),
        m,
        kernel_order: kernel.order(),
        expected,
        closed_form_ratio,
        characteristic: p,
        elementary_abelian,
        witnesses,
        witnesses_generate,
        ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicativityReport {
    pub a: Ideal,
    pub b: Ideal,
    pub product: Ideal,
    pub index_a: u128,
    pub index_b: u128,
    pub index_product: u128,
    pub oracle_a: Option<u128>,
    pub oracle_b: Option<u128>,
    pub oracle_product: Option<u128>,
    /// `O/AB → O/A × O/B` is a bijection (checked when `O/AB` is buildable).
    pub crt_bijective: Option<bool>,
    pub holds: bool,
}

fn crt_bijective(ring: &RingSpec, a: &Ideal, b: &Ideal, ab: &Ideal, limits: Limits) -> Result<Option<bool>> {
    let big = match quotient_ring(ring, ab, limits) {
        Ok(q) => q,
        Err(Error::Capacity { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let qa = quotient_ring(ring, a, limits)?;
    let qb = quotient_ring(ring, b, limits)?;
    let (ma, mb) = (big.reduction_map(&qa)?, big.reduction_map(&qb)?);
    let mut seen = vec![false; qa.size() * qb.size()];
    for r in big.elements() {
        let slot = ma[r.index()].index() * qb.size() + mb[r.index()].index();
        if std::mem::replace(&mut seen[slot], true) {
            return Ok(Some(false));
        }
    }
    Ok(Some(seen.iter().all(|&s| s)))
}

pub fn verify_multiplicativity(ring: &RingSpec, a: &Ideal, b: &Ideal, limits: Limits) -> Result<MultiplicativityReport> {
    if !a.is_coprime_to(b) {
        return Err(Error::NotCoprime { a: a.to_string(), b: b.to_string(), common: a.sum(b).to_string() });
    }
    let ab = a.mul(b, ring);
    let ra = index_formula(ring, a, limits)?;
    let rb = index_formula(ring, b, limits)?;
    let rab = index_formula(ring, &ab, limits)?;
    let crt = crt_bijective(ring, a, b, &ab, limits)?;
    let mut holds = ra.closed_form * rb.closed_form == rab.closed_form;
    if let (Some(x), Some(y), Some(z)) = (ra.oracle, rb.oracle, rab.oracle) {
        holds &= x * y == z && z == rab.closed_form;
    }
    holds &= crt != Some(false);
    Ok(MultiplicativityReport {
        a: a.clone(),
        b: b.clone(),
        product: ab,
        index_a: ra.closed_form,
        index_b: rb.closed_form,
        index_product: rab.closed_form,
        oracle_a: ra.oracle,
        oracle_b: rb.oracle,
        oracle_product: rab.oracle,
        crt_bijective: crt,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub d: i64,
    pub m: u64,
    pub n: u64,
    pub ambient_order: usize,
    pub closure_order: usize,
    pub kernel_order: usize,
    pub equal: bool,
}

/// In `G = SL(2, O/(mn))`: the normal closure of `{T_1^m, T_w^m}` against the
/// kernel of reduction mod `m`.
pub fn verify_wohlfahrt_closure(ring: &RingSpec, m: u64, n: u64, limits: Limits) -> Result<ClosureReport> {
    if m == 0 || n == 0 {
        return Err(Error::Precondition("m and n must be positive".into()));
    }
    let mn = m.checked_mul(n).ok_or(Error::Capacity { what: "modulus mn", needed: u128::MAX, limit: u64::MAX as u128 })?;
    let ideal = Ideal::rational(mn)?;
    let q = Arc::new(quotient_ring(ring, &ideal, limits)?);
    let g = sl2_enumerate(&q)?;
    let mm = m as i64;
    let seeds = [q.translation(q.from_pair(mm, 0)), q.translation(q.from_pair(0, mm))];
    let closure = normal_closure(&seeds, &g)?;
    let kernel = if m == 1 {
        g.clone()
    } else {
        let small = quotient_ring(ring, &Ideal::rational(m)?, limits)?;
        reduction_kernel(&small, &g)?
    };
    let equal = closure.is_subgroup_of(&kernel) && closure.order() == kernel.order();
    Ok(ClosureReport {
        d: ring.d(),
        m,
        n,
        ambient_order: g.order(),
        closure_order: closure.order(),
        kernel_order: kernel.order(),
        equal,
    })
}
