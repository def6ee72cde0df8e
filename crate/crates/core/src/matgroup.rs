//! Explicit finite subgroups of `SL(2, O/I)` and `PSL(2, O/I)`.
//!
//! Groups are stored as sorted vectors of canonical matrices plus a hash
//! set of packed keys. In PSL mode a class `{M, −M}` is represented by its
//! smaller member. Every construction goes through the same breadth-first
//! closure, so the element set depends only on the subgroup generated, never
//! on generator order.

use std::collections::HashSet;
use std::hash::{BuildHasherDefault, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadring::QuadInt;
use crate::resring::{QuotientRing, Residue};

/// Multiplicative hash for packed matrix keys.
#[derive(Default)]
struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(5) ^ b as u64).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
        }
    }

    fn write_u64(&mut self, k: u64) {
        self.0 = (k ^ (k >> 29)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        self.0 ^= self.0 >> 32;
    }
}

type KeySet = HashSet<u64, BuildHasherDefault<KeyHasher>>;

/// `[[a11, a12], [a21, a22]]` over a quotient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2(pub [Residue; 4]);

impl Mat2 {
    /// Four 16-bit residue indices, row-major; ordering agrees with `Ord`.
    pub fn key(&self) -> u64 {
        let [a, b, c, d] = self.0;
        ((a.index() as u64) << 48) | ((b.index() as u64) << 32) | ((c.index() as u64) << 16) | d.index() as u64
    }

    pub fn a11(&self) -> Residue {
        self.0[0]
    }
    pub fn a12(&self) -> Residue {
        self.0[1]
    }
    pub fn a21(&self) -> Residue {
        self.0[2]
    }
    pub fn a22(&self) -> Residue {
        self.0[3]
    }
}

/// Matrix arithmetic over the ring.
impl QuotientRing {
    pub fn mat(&self, a11: Residue, a12: Residue, a21: Residue, a22: Residue) -> Mat2 {
        Mat2([a11, a12, a21, a22])
    }

    pub fn mat_from(&self, entries: [&QuadInt; 4]) -> Mat2 {
        Mat2(entries.map(|x| self.reduce(x)))
    }

    pub fn mat_from_ints(&self, entries: [(i64, i64); 4]) -> Mat2 {
        Mat2(entries.map(|(u, v)| self.from_pair(u, v)))
    }

    pub fn identity(&self) -> Mat2 {
        let (o, z) = (self.one(), self.zero());
        Mat2([o, z, z, o])
    }

    /// `S = [[0, 1], [−1, 0]]`.
    pub fn s_matrix(&self) -> Mat2 {
        let (o, z) = (self.one(), self.zero());
        Mat2([z, o, self.neg(o), z])
    }

    /// `T_x = [[1, x], [0, 1]]`.
    pub fn translation(&self, x: Residue) -> Mat2 {
        let (o, z) = (self.one(), self.zero());
        Mat2([o, x, z, o])
    }

    /// `L_y = [[1, 0], [y, 1]]`.
    pub fn lower(&self, y: Residue) -> Mat2 {
        let (o, z) = (self.one(), self.zero());
        Mat2([o, z, y, o])
    }

    pub fn mat_mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        let [a, b, c, d] = x.0;
        let [e, f, g, h] = y.0;
        Mat2([
            self.add(self.mul(a, e), self.mul(b, g)),
            self.add(self.mul(a, f), self.mul(b, h)),
            self.add(self.mul(c, e), self.mul(d, g)),
            self.add(self.mul(c, f), self.mul(d, h)),
        ])
    }

    pub fn det(&self, x: &Mat2) -> Residue {
        let [a, b, c, d] = x.0;
        self.sub(self.mul(a, d), self.mul(b, c))
    }

    /// Inverse of a determinant-one matrix (the adjugate).
    pub fn sl_inverse(&self, x: &Mat2) -> Mat2 {
        let [a, b, c, d] = x.0;
        Mat2([d, self.neg(b), self.neg(c), a])
    }

    pub fn mat_neg(&self, x: &Mat2) -> Mat2 {
        Mat2(x.0.map(|e| self.neg(e)))
    }

    pub fn mat_pow(&self, x: &Mat2, mut e: u64) -> Mat2 {
        let mut base = *x;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mat_mul(&acc, &base);
            }
            base = self.mat_mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `g·h·g⁻¹`.
    pub fn conjugate(&self, h: &Mat2, g: &Mat2) -> Mat2 {
        self.mat_mul(&self.mat_mul(g, h), &self.sl_inverse(g))
    }

    /// `x·y·x⁻¹·y⁻¹`.
    pub fn commutator(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        let xy = self.mat_mul(x, y);
        let inv = self.mat_mul(&self.sl_inverse(x), &self.sl_inverse(y));
        self.mat_mul(&xy, &inv)
    }

    pub fn canonical(&self, x: &Mat2, psl: bool) -> Mat2 {
        if psl {
            let n = self.mat_neg(x);
            if n < *x {
                return n;
            }
        }
        *x
    }

    pub fn format_mat(&self, x: &Mat2) -> String {
        let [a, b, c, d] = x.0.map(|r| self.format_short(r));
        format!("[[{a}, {b}], [{c}, {d}]]")
    }
}

/// Incremental breadth-first closure under left multiplication.
struct Builder<'a> {
    q: &'a QuotientRing,
    psl: bool,
    cap: usize,
    gens: Vec<Mat2>,
    moves: Vec<Mat2>,
    elements: Vec<Mat2>,
    members: KeySet,
}

impl<'a> Builder<'a> {
    fn new(q: &'a QuotientRing, psl: bool) -> Self {
        let id = q.identity();
        let mut members = KeySet::default();
        members.insert(id.key());
        Builder {
            q,
            psl,
            cap: q.limits().group_elements,
            gens: Vec::new(),
            moves: Vec::new(),
            elements: vec![id],
            members,
        }
    }

    fn canon(&self, m: &Mat2) -> Mat2 {
        self.q.canonical(m, self.psl)
    }

    fn contains(&self, m: &Mat2) -> bool {
        self.members.contains(&self.canon(m).key())
    }

    fn insert(&mut self, m: Mat2) -> Result<()> {
        let m = self.canon(&m);
        if self.members.insert(m.key()) {
            self.elements.push(m);
            if self.elements.len() > self.cap {
                return Err(Error::Capacity {
                    what: "matrix group order",
                    needed: self.elements.len() as u128,
                    limit: self.cap as u128,
                });
            }
        }
        Ok(())
    }

    /// Adds `g` as a generator if it is not already a member; returns
    /// whether the group grew.
    fn add_generator(&mut self, g: &Mat2) -> Result<bool> {
        let g = self.canon(g);
        if self.members.contains(&g.key()) {
            return Ok(false);
        }
        self.gens.push(g);
        let ginv = self.canon(&self.q.sl_inverse(&g));
        let fresh: Vec<Mat2> = if ginv == g { vec![g] } else { vec![g, ginv] };
        self.moves.extend(&fresh);

        let old = self.elements.len();
        for i in 0..old {
            let e = self.elements[i];
            for h in &fresh {
                let p = self.q.mat_mul(h, &e);
                self.insert(p)?;
            }
        }
        let mut i = old;
        while i < self.elements.len() {
            let e = self.elements[i];
            for k in 0..self.moves.len() {
                let p = self.q.mat_mul(&self.moves[k], &e);
                self.insert(p)?;
            }
            i += 1;
        }
        Ok(true)
    }

    fn finish(mut self, ring: Arc<QuotientRing>) -> FiniteMatrixGroup {
        self.elements.sort_unstable();
        FiniteMatrixGroup {
            ring,
            psl: self.psl,
            generators: self.gens,
            elements: self.elements,
            members: self.members,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    ring: Arc<QuotientRing>,
    psl: bool,
    generators: Vec<Mat2>,
    elements: Vec<Mat2>,
    members: KeySet,
}

impl FiniteMatrixGroup {
    /// Wraps a set that is claimed to be a group: picks a greedy generating
    /// set in element order and checks that its closure is exactly the set.
    pub fn from_elements(ring: Arc<QuotientRing>, psl: bool, mut elements: Vec<Mat2>) -> Result<Self> {
        for m in elements.iter_mut() {
            *m = ring.canonical(m, psl);
        }
        elements.sort_unstable();
        elements.dedup();
        let mut b = Builder::new(&ring, psl);
        for m in &elements {
            if !b.contains(m) {
                b.add_generator(m)?;
            }
        }
        if b.elements.len() != elements.len() {
            return Err(Error::Internal(format!(
                "element set of size {} is not closed (closure has {})",
                elements.len(),
                b.elements.len()
            )));
        }
        let g = b.finish(ring.clone());
        if g.elements != elements {
            return Err(Error::Internal("element set is not closed".into()));
        }
        Ok(g)
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn is_psl(&self) -> bool {
        self.psl
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Mat2] {
        &self.generators
    }

    /// Canonical representatives in ascending order.
    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn identity(&self) -> Mat2 {
        self.ring.identity()
    }

    pub fn canonical(&self, m: &Mat2) -> Mat2 {
        self.ring.canonical(m, self.psl)
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        self.members.contains(&self.canonical(m).key())
    }

    pub fn is_identity(&self, m: &Mat2) -> bool {
        self.canonical(m) == self.identity()
    }

    pub fn mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        self.canonical(&self.ring.mat_mul(x, y))
    }

    pub fn is_subgroup_of(&self, other: &FiniteMatrixGroup) -> bool {
        self.psl == other.psl && self.elements.iter().all(|m| other.contains(m))
    }

    pub fn same_elements(&self, other: &FiniteMatrixGroup) -> bool {
        self.psl == other.psl && self.elements == other.elements
    }

    /// Closed under conjugation by the ambient generators.
    pub fn is_normal_in(&self, ambient: &FiniteMatrixGroup) -> bool {
        self.is_subgroup_of(ambient)
            && self.generators.iter().all(|h| {
                ambient.generators.iter().all(|g| self.contains(&self.ring.conjugate(h, g)))
            })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().enumerate().all(|(i, x)| {
            gens[i + 1..].iter().all(|y| self.mul(x, y) == self.mul(y, x))
        })
    }

    pub fn element_order(&self, m: &Mat2) -> u64 {
        let mut k = 1;
        let mut p = self.canonical(m);
        while !self.is_identity(&p) {
            p = self.mul(&p, m);
            k += 1;
        }
        k
    }

    pub fn power(&self, m: &Mat2, e: u64) -> Mat2 {
        self.canonical(&self.ring.mat_pow(m, e))
    }

    /// `[self : sub]`, requiring `sub ⊆ self`.
    pub fn index_of(&self, sub: &FiniteMatrixGroup) -> Result<usize> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::Precondition("index of a non-subgroup".into()));
        }
        Ok(self.order() / sub.order())
    }

    /// For a normal subgroup `sub`: whether every `g^e` lies in `sub`.
    pub fn quotient_exponent_divides(&self, sub: &FiniteMatrixGroup, e: u64) -> bool {
        self.elements.iter().all(|g| sub.contains(&self.power(g, e)))
    }

    /// For a normal subgroup `sub`: whether `self / sub` is abelian.
    pub fn quotient_is_abelian(&self, sub: &FiniteMatrixGroup) -> bool {
        let gens = &self.generators;
        gens.iter().enumerate().all(|(i, x)| {
            gens[i + 1..].iter().all(|y| sub.contains(&self.ring.commutator(x, y)))
        })
    }

    /// Every element lies in `{I}` (or `{±I}`) modulo the coarser ring.
    pub fn reduces_to_identity(&self, coarser: &QuotientRing) -> Result<bool> {
        let map = self.ring.reduction_map(coarser)?;
        let id = coarser.identity();
        Ok(self.elements.iter().all(|m| {
            let r = Mat2(m.0.map(|e| map[e.index()]));
            coarser.canonical(&r, self.psl) == id
        }))
    }
}

/// The `(a11, a12, a21)` scan costs `|Q|³`; allow 8× the group cap.
fn check_scan_budget(q: &QuotientRing) -> Result<()> {
    let tuples = (q.size() as u128).pow(3);
    let limit = 8 * q.limits().group_elements as u128;
    if tuples > limit {
        return Err(Error::Capacity { what: "SL(2) scan (|Q|^3)", needed: tuples, limit });
    }
    Ok(())
}

/// `solutions[a11][t]` lists every `a22` with `a11·a22 = t`.
fn division_table(q: &QuotientRing) -> Vec<Vec<Vec<Residue>>> {
    let n = q.size();
    let mut solutions: Vec<Vec<Vec<Residue>>> = vec![vec![Vec::new(); n]; n];
    for x in q.elements() {
        for y in q.elements() {
            solutions[x.index()][q.mul(x, y).index()].push(y);
        }
    }
    solutions
}

/// `|SL(2, Q)|` by counting solutions of `ad − bc = 1`, without storing them.
pub fn sl2_count(q: &QuotientRing) -> Result<u128> {
    check_scan_budget(q)?;
    let solutions = division_table(q);
    let one = q.one();
    let mut count = 0u128;
    for a11 in q.elements() {
        let row = &solutions[a11.index()];
        for a12 in q.elements() {
            for a21 in q.elements() {
                count += row[q.add(one, q.mul(a12, a21)).index()].len() as u128;
            }
        }
    }
    Ok(count)
}

/// Every determinant-one matrix over `q`.
pub fn sl2_enumerate(q: &Arc<QuotientRing>) -> Result<FiniteMatrixGroup> {
    check_scan_budget(q)?;
    let cap = q.limits().group_elements;
    let solutions = division_table(q);
    let one = q.one();
    let mut elements = Vec::new();
    for a11 in q.elements() {
        let row = &solutions[a11.index()];
        for a12 in q.elements() {
            for a21 in q.elements() {
                let target = q.add(one, q.mul(a12, a21));
                for &a22 in &row[target.index()] {
                    elements.push(Mat2([a11, a12, a21, a22]));
                }
            }
            if elements.len() > cap {
                return Err(Error::Capacity {
                    what: "matrix group order",
                    needed: elements.len() as u128,
                    limit: cap as u128,
                });
            }
        }
    }
    FiniteMatrixGroup::from_elements(q.clone(), false, elements)
}

/// `⟨gens⟩`, in PSL mode when `psl` is set.
pub fn subgroup_closure(gens: &[Mat2], q: &Arc<QuotientRing>, psl: bool) -> Result<FiniteMatrixGroup> {
    if gens.is_empty() {
        return Err(Error::Precondition("subgroup_closure needs at least one generator".into()));
    }
    let one = q.one();
    if let Some(bad) = gens.iter().find(|g| q.det(g) != one) {
        return Err(Error::Precondition(format!("generator {} has determinant != 1", q.format_mat(bad))));
    }
    let mut b = Builder::new(q, psl);
    for g in gens {
        b.add_generator(g)?;
    }
    let mut recorded: Vec<Mat2> = Vec::new();
    for g in gens {
        let c = q.canonical(g, psl);
        if !recorded.contains(&c) {
            recorded.push(c);
        }
    }
    let mut group = b.finish(q.clone());
    group.generators = recorded;
    Ok(group)
}

/// Smallest subgroup of `ambient` containing `seed` and normalised by the
/// ambient generators.
pub fn normal_closure(seed: &[Mat2], ambient: &FiniteMatrixGroup) -> Result<FiniteMatrixGroup> {
    let q = ambient.ring();
    if let Some(bad) = seed.iter().find(|s| !ambient.contains(s)) {
        return Err(Error::Precondition(format!("seed {} is not in the ambient group", q.format_mat(bad))));
    }
    let mut b = Builder::new(q, ambient.psl);
    for s in seed {
        b.add_generator(s)?;
    }
    let mut i = 0;
    while i < b.gens.len() {
        let h = b.gens[i];
        for g in ambient.generators() {
            let c = q.conjugate(&h, g);
            if !b.contains(&c) {
                b.add_generator(&c)?;
            }
        }
        i += 1;
    }
    Ok(b.finish(q.clone()))
}

/// `G'`: normal closure of the commutators of generator pairs.
pub fn derived_subgroup(g: &FiniteMatrixGroup) -> Result<FiniteMatrixGroup> {
    let q = g.ring();
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[i + 1..] {
            comms.push(q.commutator(x, y));
        }
    }
    normal_closure(&comms, g)
}

/// `G^k = ⟨g^k : g ∈ G⟩` over all elements.
pub fn power_subgroup(g: &FiniteMatrixGroup, k: u64) -> Result<FiniteMatrixGroup> {
    if k == 0 {
        return Err(Error::Precondition("power_subgroup needs k >= 1".into()));
    }
    let mut powers: Vec<Mat2> = g.elements().iter().map(|x| g.power(x, k)).collect();
    powers.sort_unstable();
    powers.dedup();
    let mut b = Builder::new(g.ring(), g.psl);
    for p in &powers {
        if !b.contains(p) {
            b.add_generator(p)?;
        }
    }
    Ok(b.finish(g.ring().clone()))
}

/// Image in `PSL`: identifies `M` with `−M`. Requires `−I ∈ G`.
pub fn psl_quotient(g: &FiniteMatrixGroup) -> Result<FiniteMatrixGroup> {
    if g.psl {
        return Ok(g.clone());
    }
    let q = g.ring();
    let minus_i = q.mat_neg(&q.identity());
    if !g.contains(&minus_i) {
        return Err(Error::Precondition("-I is not in the group; the PSL image is not a quotient".into()));
    }
    let mut elements: Vec<Mat2> = g.elements().iter().map(|m| q.canonical(m, true)).collect();
    elements.sort_unstable();
    elements.dedup();
    let mut generators: Vec<Mat2> = Vec::new();
    for m in g.generators() {
        let c = q.canonical(m, true);
        if c != q.identity() && !generators.contains(&c) {
            generators.push(c);
        }
    }
    let members = elements.iter().map(Mat2::key).collect();
    Ok(FiniteMatrixGroup { ring: q.clone(), psl: true, generators, elements, members })
}

/// `{g ∈ G : g ≡ I (mod small)}` (`≡ ±I` in PSL mode).
pub fn reduction_kernel(small: &QuotientRing, g: &FiniteMatrixGroup) -> Result<FiniteMatrixGroup> {
    let big = g.ring();
    let map = big.reduction_map(small)?;
    let id = small.identity();
    let kernel: Vec<Mat2> = g
        .elements()
        .iter()
        .filter(|m| {
            let r = Mat2(m.0.map(|e| map[e.index()]));
            small.canonical(&r, g.psl) == id
        })
        .copied()
        .collect();
    FiniteMatrixGroup::from_elements(big.clone(), g.psl, kernel)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub order: usize,
    pub is_abelian: bool,
    /// Least `e` with `g^e = 1` for all `g`; `None` when it was not found
    /// among the divisors of the order up to 64 (large groups only).
    pub exponent: Option<u64>,
    pub center_order: usize,
    pub derived_index: usize,
}

const EXACT_EXPONENT_LIMIT: usize = 10_000;

fn lcm(a: u64, b: u64) -> u64 {
    a / crate::numtheory::gcd(a as u128, b as u128) as u64 * b
}

pub fn exponent(g: &FiniteMatrixGroup) -> Option<u64> {
    if g.order() <= EXACT_EXPONENT_LIMIT {
        return Some(g.elements().iter().fold(1, |acc, m| lcm(acc, g.element_order(m))));
    }
    let n = g.order() as u64;
    (1..=64u64)
        .filter(|e| n % e == 0)
        .find(|&e| g.elements().iter().all(|m| g.is_identity(&g.power(m, e))))
}

pub fn structure_probe(g: &FiniteMatrixGroup) -> Result<StructureReport> {
    let q = g.ring();
    let center_order = g
        .elements()
        .iter()
        .filter(|z| {
            g.generators().iter().all(|x| g.canonical(&q.mat_mul(z, x)) == g.canonical(&q.mat_mul(x, z)))
        })
        .count();
    let derived = derived_subgroup(g)?;
    Ok(StructureReport {
        order: g.order(),
        is_abelian: g.is_abelian(),
        exponent: exponent(g),
        center_order,
        derived_index: g.order() / derived.order(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::parse_ideal;
    use crate::quadring::make_ring;
    use crate::resring::{quotient_ring, Limits};

    fn qr(d: i64, ideal: &str) -> Arc<QuotientRing> {
        let r = make_ring(d).unwrap();
        let i = parse_ideal(&r, ideal).unwrap();
        Arc::new(quotient_ring(&r, &i, Limits::default()).unwrap())
    }

    fn std_gens(q: &QuotientRing) -> Vec<Mat2> {
        vec![q.s_matrix(), q.translation(q.one()), q.translation(q.w())]
    }

    /// Independent count: every 4-tuple, no pruning.
    fn brute_sl_count(q: &QuotientRing) -> usize {
        let one = q.one();
        let mut n = 0;
        for a in q.elements() {
            for b in q.elements() {
                for c in q.elements() {
                    for d in q.elements() {
                        if q.sub(q.mul(a, d), q.mul(b, c)) == one {
                            n += 1;
                        }
                    }
                }
            }
        }
        n
    }

    /// Fixed point of products and conjugation by every element.
    fn naive_normal_closure(seed: &[Mat2], g: &FiniteMatrixGroup) -> std::collections::BTreeSet<Mat2> {
        let q = g.ring();
        let mut set: std::collections::BTreeSet<Mat2> = seed.iter().copied().collect();
        set.insert(q.identity());
        loop {
            let mut next = set.clone();
            for x in &set {
                for y in &set {
                    next.insert(q.mat_mul(x, y));
                }
                for h in g.elements() {
                    next.insert(q.conjugate(x, h));
                }
            }
            if next.len() == set.len() {
                return set;
            }
            set = next;
        }
    }

    #[test]
    fn sl2_orders() {
        let f2 = qr(-1, "(1+w)");
        assert_eq!(brute_sl_count(&f2), 6);
        assert_eq!(sl2_enumerate(&f2).unwrap().order(), 6);
        let f4 = qr(-3, "(2)");
        assert_eq!(brute_sl_count(&f4), 60);
        assert_eq!(sl2_enumerate(&f4).unwrap().order(), 60);
        let g2 = qr(-1, "(2)");
        assert_eq!(brute_sl_count(&g2), 48);
        assert_eq!(sl2_enumerate(&g2).unwrap().order(), 48);
        assert_eq!(sl2_count(&g2).unwrap(), 48);
    }

    #[test]
    fn sl2_matches_brute_force_on_small_rings() {
        for (d, i) in [(-1, "(3)"), (-2, "(w)"), (-5, "(3, 1-w)"), (-7, "(2)"), (-1, "(2+w)")] {
            let q = qr(d, i);
            assert_eq!(sl2_enumerate(&q).unwrap().order(), brute_sl_count(&q), "O_{d}/{i}");
            assert_eq!(sl2_count(&q).unwrap(), brute_sl_count(&q) as u128);
        }
    }

    #[test]
    fn closure_examples() {
        let q = qr(-1, "(2)");
        let triv = subgroup_closure(&[q.identity()], &q, false).unwrap();
        assert_eq!(triv.order(), 1);
        let g = subgroup_closure(&std_gens(&q), &q, false).unwrap();
        assert_eq!(g.order(), 48);
        assert!(g.same_elements(&sl2_enumerate(&q).unwrap()));

        let f4 = qr(-3, "(2)");
        let unip = subgroup_closure(&[f4.translation(f4.one()), f4.translation(f4.w())], &f4, false).unwrap();
        assert_eq!(unip.order(), 4);
        // oracle: every upper unipotent matrix over F4
        for x in f4.elements() {
            assert!(unip.contains(&f4.translation(x)));
        }
    }

    #[test]
    fn closure_rejects_bad_generators() {
        let q = qr(-1, "(3)");
        let diag = q.mat(q.from_int(2), q.zero(), q.zero(), q.one());
        assert!(matches!(subgroup_closure(&[diag], &q, false), Err(Error::Precondition(_))));
        assert!(subgroup_closure(&[], &q, false).is_err());
    }

    #[test]
    fn normal_closure_examples() {
        let q = qr(-1, "(2)");
        let g = sl2_enumerate(&q).unwrap();
        assert_eq!(normal_closure(&[q.identity()], &g).unwrap().order(), 1);
        // both translations are needed; T_1 alone normally generates a proper subgroup
        let full = normal_closure(&[q.translation(q.one()), q.translation(q.w())], &g).unwrap();
        assert_eq!(full.order(), 48);
        let t1 = normal_closure(&[q.translation(q.one())], &g).unwrap();
        assert_eq!(t1.order(), naive_normal_closure(&[q.translation(q.one())], &g).len());
        assert_eq!(t1.order(), 24);

        let q6 = qr(-1, "(6)");
        let g6 = sl2_enumerate(&q6).unwrap();
        assert_eq!(g6.order(), 34560);
        let seeds = [q6.translation(q6.from_int(2)), q6.translation(q6.from_pair(0, 2))];
        let n6 = normal_closure(&seeds, &g6).unwrap();
        assert_eq!(n6.order(), 720);
        assert!(n6.is_normal_in(&g6));
        let rev = normal_closure(&[seeds[1], seeds[0]], &g6).unwrap();
        assert!(rev.same_elements(&n6));
    }

    #[test]
    fn derived_and_power_examples() {
        let f4 = qr(-3, "(2)");
        let a5 = psl_quotient(&sl2_enumerate(&f4).unwrap()).unwrap();
        assert_eq!(a5.order(), 60);
        assert!(derived_subgroup(&a5).unwrap().same_elements(&a5));
        assert!(power_subgroup(&a5, 2).unwrap().same_elements(&a5));
        assert!(power_subgroup(&a5, 1).unwrap().same_elements(&a5));

        let q7 = qr(-7, "(2)");
        let s3s3 = psl_quotient(&sl2_enumerate(&q7).unwrap()).unwrap();
        assert_eq!(s3s3.order(), 36);
        assert_eq!(s3s3.index_of(&derived_subgroup(&s3s3).unwrap()).unwrap(), 4);

        let q1 = qr(-1, "(2)");
        let g = psl_quotient(&sl2_enumerate(&q1).unwrap()).unwrap();
        let sq = power_subgroup(&g, 2).unwrap();
        assert_eq!(g.index_of(&sq).unwrap(), 4);
        assert!(sq.is_normal_in(&g));
        assert!(g.quotient_exponent_divides(&sq, 2));

        let ab = subgroup_closure(&[f4.translation(f4.one())], &f4, false).unwrap();
        assert_eq!(derived_subgroup(&ab).unwrap().order(), 1);
    }

    #[test]
    fn psl_examples() {
        let f4 = qr(-3, "(2)");
        assert_eq!(psl_quotient(&sl2_enumerate(&f4).unwrap()).unwrap().order(), 60);
        let f5 = qr(-5, "(5, w)");
        let sl = sl2_enumerate(&f5).unwrap();
        assert_eq!(sl.order(), 120);
        assert_eq!(psl_quotient(&sl).unwrap().order(), 60);

        let q5 = qr(-5, "(5)");
        let big = subgroup_closure(&std_gens(&q5), &q5, false).unwrap();
        assert_eq!(big.order(), 15000);
        assert_eq!(psl_quotient(&big).unwrap().order(), 7500);

        let unip = subgroup_closure(&[f5.translation(f5.one())], &f5, false).unwrap();
        assert!(psl_quotient(&unip).is_err());
    }

    #[test]
    fn kernel_examples() {
        let r = make_ring(-1).unwrap();
        let limits = Limits::default();
        let pi = parse_ideal(&r, "(1+w)").unwrap();
        let big = Arc::new(quotient_ring(&r, &pi.pow(2, &r), limits).unwrap());
        let small = quotient_ring(&r, &pi, limits).unwrap();
        let g = sl2_enumerate(&big).unwrap();
        assert_eq!(reduction_kernel(&big, &g).unwrap().order(), 1);
        let k = reduction_kernel(&small, &g).unwrap();
        assert_eq!(k.order(), 8);
        let rep = structure_probe(&k).unwrap();
        assert!(rep.is_abelian);
        assert_eq!(rep.exponent, Some(2));

        let q6 = qr(-1, "(6)");
        let q2 = qr(-1, "(2)");
        let g6 = sl2_enumerate(&q6).unwrap();
        assert_eq!(reduction_kernel(&q2, &g6).unwrap().order(), 720);

        let q3 = qr(-1, "(3)");
        assert!(matches!(reduction_kernel(&q3, &sl2_enumerate(&q2).unwrap()), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn kernel_orders_multiply() {
        let r = make_ring(-2).unwrap();
        let limits = Limits::default();
        for (big, small) in [("(4)", "(2)"), ("(6)", "(2)"), ("(6)", "(3)"), ("(w)", "(w)")] {
            let qb = Arc::new(quotient_ring(&r, &parse_ideal(&r, big).unwrap(), limits).unwrap());
            let qs = Arc::new(quotient_ring(&r, &parse_ideal(&r, small).unwrap(), limits).unwrap());
            let gb = sl2_enumerate(&qb).unwrap();
            let gs = sl2_enumerate(&qs).unwrap();
            let k = reduction_kernel(&qs, &gb).unwrap();
            assert_eq!(k.order() * gs.order(), gb.order(), "{big} -> {small}");
        }
    }

    #[test]
    fn probe_examples() {
        let q = qr(-1, "(2)");
        let triv = subgroup_closure(&[q.identity()], &q, false).unwrap();
        let rep = structure_probe(&triv).unwrap();
        assert_eq!(
            rep,
            StructureReport { order: 1, is_abelian: true, exponent: Some(1), center_order: 1, derived_index: 1 }
        );

        let q7 = qr(-7, "(2)");
        let g = psl_quotient(&sl2_enumerate(&q7).unwrap()).unwrap();
        let rep = structure_probe(&g).unwrap();
        assert_eq!(rep.order, 36);
        assert!(!rep.is_abelian);
        assert_eq!(rep.derived_index, 4);
        assert_eq!(rep.center_order, 1);
        assert_eq!(rep.exponent, Some(6));

        let f4 = qr(-3, "(2)");
        let rep = structure_probe(&sl2_enumerate(&f4).unwrap()).unwrap();
        // A5: exponent lcm(2, 3, 5), trivial centre, perfect
        assert_eq!((rep.exponent, rep.center_order, rep.derived_index), (Some(30), 1, 1));
    }

    #[test]
    fn closure_is_independent_of_generator_order() {
        let q = qr(-2, "(3)");
        let mut gens = std_gens(&q);
        let a = subgroup_closure(&gens, &q, true).unwrap();
        gens.reverse();
        let b = subgroup_closure(&gens, &q, true).unwrap();
        assert!(a.same_elements(&b));
        for x in a.elements() {
            for y in a.generators() {
                assert!(a.contains(&q.mat_mul(x, y)));
            }
        }
    }

    #[test]
    fn capacity_is_enforced() {
        let r = make_ring(-1).unwrap();
        let limits = Limits { ring_elements: 10_000, group_elements: 500 };
        let q = Arc::new(quotient_ring(&r, &Ideal::rational(3).unwrap(), limits).unwrap());
        assert!(matches!(sl2_enumerate(&q), Err(Error::Capacity { .. })));
        assert!(matches!(subgroup_closure(&std_gens(&q), &q, false), Err(Error::Capacity { .. })));
    }

    use crate::ideals::Ideal;
}
