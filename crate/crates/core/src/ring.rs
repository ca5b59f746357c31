//! Finite unital associative rings stored as dense Cayley tables.

use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Axiom, Error, Result};

/// Default bound on ring order for table arithmetic.
pub const RING_ORDER_BOUND: usize = 256;

/// Largest order representable by the `u16` table entries.
pub const MAX_TABLE_ORDER: usize = u16::MAX as usize + 1;

/// A finite ring with elements `0..order`.
#[derive(Clone)]
pub struct Ring {
    order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: usize,
    one: usize,
    label: String,
    fingerprint: u64,
}

/// Raw Cayley tables as supplied by a user or a config file.
#[derive(Debug, Clone)]
pub struct RingTables {
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: Option<usize>,
    pub one: Option<usize>,
    pub label: String,
}

pub(crate) fn fingerprint(parts: &[&[u16]], extra: &[u64]) -> u64 {
    let mut h = Sha256::new();
    for e in extra {
        h.update(e.to_le_bytes());
    }
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        for v in *p {
            h.update(v.to_le_bytes());
        }
    }
    let out = h.finalize();
    u64::from_le_bytes(out[..8].try_into().expect("digest has 32 bytes"))
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Ring {
    /// Validates every ring axiom and returns the ring, or the first
    /// violated axiom with a witness.
    pub fn validate(tables: RingTables) -> Result<Ring> {
        let n = tables.add.len();
        if n == 0 {
            return Err(Axiom::TableShape("empty addition table".into()).into());
        }
        if n > MAX_TABLE_ORDER {
            return Err(Error::SizeLimit {
                what: "ring tables".into(),
                order: n,
                bound: MAX_TABLE_ORDER,
            });
        }
        let flat = |t: &[Vec<usize>], name: &str| -> Result<Vec<u16>> {
            if t.len() != n {
                return Err(Axiom::TableShape(format!("{name} table has {} rows, expected {n}", t.len())).into());
            }
            let mut out = Vec::with_capacity(n * n);
            for (i, row) in t.iter().enumerate() {
                if row.len() != n {
                    return Err(Axiom::TableShape(format!(
                        "{name} row {i} has {} entries, expected {n}",
                        row.len()
                    ))
                    .into());
                }
                for (j, &v) in row.iter().enumerate() {
                    if v >= n {
                        return Err(Axiom::EntryOutOfRange { row: i, col: j, value: v }.into());
                    }
                    out.push(v as u16);
                }
            }
            Ok(out)
        };
        let add = flat(&tables.add, "addition")?;
        let mul = flat(&tables.mul, "multiplication")?;
        let a = |x: usize, y: usize| add[x * n + y] as usize;
        let m = |x: usize, y: usize| mul[x * n + y] as usize;

        let zero = match tables.zero {
            Some(z) if z < n && (0..n).all(|x| a(z, x) == x && a(x, z) == x) => z,
            Some(_) => return Err(Axiom::NoZero.into()),
            None => (0..n)
                .find(|&z| (0..n).all(|x| a(z, x) == x && a(x, z) == x))
                .ok_or(Error::Axiom(Axiom::NoZero))?,
        };
        for x in 0..n {
            for y in 0..n {
                if a(x, y) != a(y, x) {
                    return Err(Axiom::AddCommutativity(x, y).into());
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = a(x, y);
                for z in 0..n {
                    if a(xy, z) != a(x, a(y, z)) {
                        return Err(Axiom::AddAssociativity(x, y, z).into());
                    }
                }
            }
        }
        let neg = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| a(x, y) == zero)
                    .map(|y| y as u16)
                    .ok_or(Error::Axiom(Axiom::NoNegative(x)))
            })
            .collect::<Result<Vec<u16>>>()?;
        for x in 0..n {
            for y in 0..n {
                let xy = m(x, y);
                for z in 0..n {
                    if m(xy, z) != m(x, m(y, z)) {
                        return Err(Axiom::MulAssociativity(x, y, z).into());
                    }
                }
            }
        }
        let is_unit = |u: usize| (0..n).all(|x| m(u, x) == x && m(x, u) == x);
        let one = match tables.one {
            Some(u) if u < n && is_unit(u) => u,
            Some(_) => return Err(Axiom::NoUnit.into()),
            None => (0..n).find(|&u| is_unit(u)).ok_or(Error::Axiom(Axiom::NoUnit))?,
        };
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if m(x, a(y, z)) != a(m(x, y), m(x, z)) {
                        return Err(Axiom::LeftDistributivity(x, y, z).into());
                    }
                    if m(a(x, y), z) != a(m(x, z), m(y, z)) {
                        return Err(Axiom::RightDistributivity(x, y, z).into());
                    }
                }
            }
        }
        Ok(Ring::from_parts(n, add, mul, neg, zero, one, tables.label))
    }

    fn from_parts(
        order: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        neg: Vec<u16>,
        zero: usize,
        one: usize,
        label: String,
    ) -> Ring {
        let fingerprint = fingerprint(&[&add, &mul], &[order as u64, zero as u64, one as u64]);
        Ring {
            order,
            add,
            mul,
            neg,
            zero,
            one,
            label,
            fingerprint,
        }
    }

    /// Builds from closures on indices and validates.
    fn from_fns(
        order: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        label: String,
    ) -> Result<Ring> {
        let grid = |f: &dyn Fn(usize, usize) -> usize| {
            (0..order).map(|i| (0..order).map(|j| f(i, j)).collect()).collect()
        };
        Ring::validate(RingTables {
            add: grid(&add),
            mul: grid(&mul),
            zero: None,
            one: None,
            label,
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }
    #[inline]
    pub fn zero(&self) -> usize {
        self.zero
    }
    #[inline]
    pub fn one(&self) -> usize {
        self.one
    }
    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }
    /// Hash of the tables; equal fingerprints mean table-identical rings.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }
    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// a^k for k >= 1.
    pub fn pow(&self, a: usize, k: usize) -> usize {
        assert!(k >= 1);
        (1..k).fold(a, |acc, _| self.mul(acc, a))
    }

    /// The distinct values among a, a^2, ..., a^order.
    ///
    /// The sequence of powers of `a` takes at most `order` values, so once a
    /// value repeats the sequence is periodic and every later power already
    /// appeared. Stopping at the first repeat (and in any case after `order`
    /// steps) therefore sees every power a^k with k >= 1.
    pub fn powers(&self, a: usize) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        let mut p = a;
        for _ in 0..self.order {
            if seen[p] {
                break;
            }
            seen[p] = true;
            out.push(p);
            p = self.mul(p, a);
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_nilpotent(&self, a: usize) -> bool {
        self.powers(a).contains(&self.zero)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|i| (0..self.order).map(|j| self.add(i, j)).collect()).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|i| (0..self.order).map(|j| self.mul(i, j)).collect()).collect()
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({}, order {})", self.label, self.order)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}
impl Eq for Ring {}

/// Integers modulo `n`.
pub fn make_cyclic_ring(n: usize) -> Result<Ring> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic ring needs n >= 1".into()));
    }
    if n > MAX_TABLE_ORDER {
        return Err(Error::SizeLimit {
            what: format!("Z_{n}"),
            order: n,
            bound: MAX_TABLE_ORDER,
        });
    }
    Ring::from_fns(n, |a, b| (a + b) % n, |a, b| (a * b) % n, format!("Z_{n}"))
}

/// Full (or upper-triangular) k x k matrices over the prime field F_p.
///
/// Element indices read the stored entries (all entries, or the entries on
/// and above the diagonal) row by row as base-p digits, most significant
/// first. Over F_2 with k = 2 this gives E11 = 8, E12 = 4, E21 = 2, E22 = 1
/// for the full ring and E11 = 4, E12 = 2, E22 = 1 for the triangular one.
pub fn make_matrix_ring(p: usize, k: usize, triangular: bool) -> Result<Ring> {
    make_matrix_ring_within(p, k, triangular, RING_ORDER_BOUND)
}

pub fn make_matrix_ring_within(p: usize, k: usize, triangular: bool, bound: usize) -> Result<Ring> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("matrix dimension must be >= 1".into()));
    }
    let layout = MatrixLayout::new(p, k, triangular);
    let order = (p as u128).checked_pow(layout.slots.len() as u32).unwrap_or(u128::MAX);
    let label = format!("{}_{k}(F_{p})", if triangular { "U" } else { "M" });
    if order > bound as u128 {
        return Err(Error::SizeLimit {
            what: label,
            order: order.min(usize::MAX as u128) as usize,
            bound,
        });
    }
    let order = order as usize;
    let mats: Vec<Vec<usize>> = (0..order).map(|i| layout.decode(i)).collect();
    Ring::from_fns(
        order,
        |a, b| {
            let s: Vec<usize> = mats[a].iter().zip(&mats[b]).map(|(x, y)| (x + y) % p).collect();
            layout.encode(&s)
        },
        |a, b| layout.encode(&layout.matmul(&mats[a], &mats[b])),
        label,
    )
}

/// Dense k x k matrix coordinates for the matrix ring constructors.
#[derive(Debug, Clone)]
pub(crate) struct MatrixLayout {
    pub p: usize,
    pub k: usize,
    /// (row, col) of each stored digit, most significant first.
    pub slots: Vec<(usize, usize)>,
}

impl MatrixLayout {
    pub fn new(p: usize, k: usize, triangular: bool) -> Self {
        let slots = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .filter(|&(i, j)| !triangular || i <= j)
            .collect();
        MatrixLayout { p, k, slots }
    }

    /// Full k*k row-major entries.
    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut full = vec![0; self.k * self.k];
        for &(i, j) in self.slots.iter().rev() {
            full[i * self.k + j] = idx % self.p;
            idx /= self.p;
        }
        full
    }

    pub fn encode(&self, full: &[usize]) -> usize {
        self.slots
            .iter()
            .fold(0, |acc, &(i, j)| acc * self.p + full[i * self.k + j] % self.p)
    }

    pub fn matmul(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let k = self.k;
        let mut c = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                c[i * k + j] = (0..k).map(|t| a[i * k + t] * b[t * k + j]).sum::<usize>() % self.p;
            }
        }
        c
    }
}

/// Direct product; the pair (x, y) has index x * |b| + y.
pub fn make_product_ring(a: &Ring, b: &Ring) -> Result<Ring> {
    make_product_ring_within(a, b, RING_ORDER_BOUND)
}

pub fn make_product_ring_within(a: &Ring, b: &Ring, bound: usize) -> Result<Ring> {
    let nb = b.order();
    let order = a.order() * nb;
    let label = format!("{} x {}", a.label(), b.label());
    if order > bound {
        return Err(Error::SizeLimit { what: label, order, bound });
    }
    Ring::from_fns(
        order,
        |x, y| a.add(x / nb, y / nb) * nb + b.add(x % nb, y % nb),
        |x, y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb),
        label,
    )
}

/// Quotient by a two-sided ideal. Each coset is represented by its minimal
/// index and cosets are numbered in increasing order of representative.
/// Returns the quotient and the coset map from `r` onto it.
pub fn make_quotient_ring(r: &Ring, ideal: &crate::ideal::Ideal) -> Result<(Ring, Vec<usize>)> {
    ideal.check_ring(r)?;
    crate::ideal::check_ideal(r, ideal.members())?;
    let members: Vec<usize> = ideal.members().iter().collect();
    let (map, reps) = coset_partition(r.order(), |x| members.iter().map(move |&i| r.add(x, i)));
    let q = reps.len();
    let label = format!("{}/{}", r.label(), ideal.members());
    let quotient = Ring::from_fns(
        q,
        |x, y| map[r.add(reps[x], reps[y])],
        |x, y| map[r.mul(reps[x], reps[y])],
        label,
    )?;
    Ok((quotient, map))
}

/// Partitions `0..n` into cosets, where `coset(x)` enumerates x + N.
/// Returns the class number of each element and the representative of each
/// class (its minimal element).
pub(crate) fn coset_partition<I, F>(n: usize, coset: F) -> (Vec<usize>, Vec<usize>)
where
    F: Fn(usize) -> I,
    I: Iterator<Item = usize>,
{
    let mut map = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if map[x] != usize::MAX {
            continue;
        }
        let class = reps.len();
        reps.push(x);
        for y in coset(x) {
            map[y] = class;
        }
    }
    (map, reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tables(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> RingTables {
        RingTables {
            add,
            mul,
            zero: None,
            one: None,
            label: "t".into(),
        }
    }

    #[test]
    fn cyclic_rings() {
        let z4 = make_cyclic_ring(4).unwrap();
        assert_eq!(z4.order(), 4);
        assert_eq!(z4.mul(2, 2), 0);
        assert_eq!(z4.label(), "Z_4");
        let z1 = make_cyclic_ring(1).unwrap();
        assert_eq!(z1.one(), z1.zero());
        let f2 = make_cyclic_ring(2).unwrap();
        assert_eq!(f2.mul(1, 1), 1);
        assert!(matches!(make_cyclic_ring(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn matrix_rings() {
        let m = make_matrix_ring(2, 2, false).unwrap();
        assert_eq!(m.order(), 16);
        assert_eq!(m.one(), 9);
        // E12 * E21 = E11, E21 * E12 = E22
        assert_eq!(m.mul(4, 2), 8);
        assert_eq!(m.mul(2, 4), 1);
        assert_eq!(m.mul(4, 4), 0);
        assert!(!m.is_commutative());
        let u = make_matrix_ring(2, 2, true).unwrap();
        assert_eq!(u.order(), 8);
        assert_eq!(u.one(), 5);
        assert_eq!(u.mul(4, 2), 2); // E11 E12 = E12
        assert_eq!(u.mul(2, 4), 0);
        let z3 = make_matrix_ring(3, 1, false).unwrap();
        assert_eq!(z3, make_cyclic_ring(3).unwrap());
        assert!(matches!(make_matrix_ring(4, 2, false), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_matrix_ring(3, 3, false), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn product_ring() {
        let z2 = make_cyclic_ring(2).unwrap();
        let p = make_product_ring(&z2, &z2).unwrap();
        assert_eq!(p.order(), 4);
        assert_eq!(p.one(), 3);
        let z1 = make_cyclic_ring(1).unwrap();
        let z4 = make_cyclic_ring(4).unwrap();
        assert_eq!(make_product_ring(&z1, &z4).unwrap(), z4);
    }

    #[test]
    fn validation_reports_witnesses() {
        let z4 = make_cyclic_ring(4).unwrap();
        let ok = Ring::validate(tables(z4.add_table(), z4.mul_table())).unwrap();
        assert_eq!(ok, z4);

        // Non-associative multiplication on Z_4: 2*3 becomes 0.
        let z4m = make_cyclic_ring(4).unwrap();
        let mut mul = z4m.mul_table();
        mul[2][3] = 0;
        let m = |x: usize, y: usize| if (x, y) == (2, 3) { 0 } else { x * y % 4 };
        match Ring::validate(tables(z4m.add_table(), mul)) {
            Err(Error::Axiom(Axiom::MulAssociativity(a, b, c))) => {
                assert_ne!(m(m(a, b), c), m(a, m(b, c)));
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }

        // Zero multiplication has no unit.
        let zero_mul = vec![vec![0; 2]; 2];
        let add = make_cyclic_ring(2).unwrap().add_table();
        assert!(matches!(
            Ring::validate(tables(add, zero_mul)),
            Err(Error::Axiom(Axiom::NoUnit))
        ));

        assert!(matches!(
            Ring::validate(tables(vec![vec![0, 1]], vec![vec![0]])),
            Err(Error::Axiom(Axiom::TableShape(_)))
        ));
    }

    #[test]
    fn powers_cover_every_exponent() {
        let m = make_matrix_ring(2, 2, false).unwrap();
        for a in m.elements() {
            let short = m.powers(a);
            let long: std::collections::BTreeSet<usize> =
                (1..=2 * m.order()).map(|k| m.pow(a, k)).collect();
            let short: std::collections::BTreeSet<usize> = short.into_iter().collect();
            assert_eq!(short, long);
        }
    }
}
