//! Two-sided ideals, prime and completely prime ideals, ring radicals and
//! 2-primality of rings and ideals.

use std::collections::HashMap;
use std::sync::Arc;

use crate::closure::{additive_span, join_closure, subgroup_sum};
use crate::error::{Error, Result};
use crate::ring::{make_quotient_ring, Ring};
use crate::subset::SubSet;

/// Default bound on ring order for ideal-lattice enumeration.
pub const IDEAL_LATTICE_BOUND: usize = 64;

/// A validated two-sided ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    ring: u64,
    members: SubSet,
}

impl Ideal {
    pub fn new(r: &Ring, members: SubSet) -> Result<Ideal> {
        check_ideal(r, &members)?;
        Ok(Ideal {
            ring: r.fingerprint(),
            members,
        })
    }

    /// Wraps a set already known to be an ideal of `r`.
    pub(crate) fn trusted(r: &Ring, members: SubSet) -> Ideal {
        debug_assert!(check_ideal(r, &members).is_ok());
        Ideal {
            ring: r.fingerprint(),
            members,
        }
    }

    pub fn zero(r: &Ring) -> Ideal {
        Ideal::trusted(r, SubSet::singleton(r.order(), r.zero()))
    }

    pub fn whole(r: &Ring) -> Ideal {
        Ideal::trusted(r, SubSet::full(r.order()))
    }

    pub fn members(&self) -> &SubSet {
        &self.members
    }

    pub fn into_members(self) -> SubSet {
        self.members
    }

    pub fn is_proper(&self) -> bool {
        !self.members.is_full()
    }

    pub(crate) fn check_ring(&self, r: &Ring) -> Result<()> {
        if self.ring != r.fingerprint() {
            return Err(Error::RingMismatch(format!("ideal does not belong to {}", r.label())));
        }
        Ok(())
    }
}

/// Checks the ideal invariant, naming the first violation.
pub fn check_ideal(r: &Ring, s: &SubSet) -> Result<()> {
    if s.universe() != r.order() {
        return Err(Error::InvalidIdeal(format!(
            "subset width {} does not match ring order {}",
            s.universe(),
            r.order()
        )));
    }
    if !s.contains(r.zero()) {
        return Err(Error::InvalidIdeal("does not contain zero".into()));
    }
    for a in s.iter() {
        if !s.contains(r.neg(a)) {
            return Err(Error::InvalidIdeal(format!("not closed under negation at {a}")));
        }
        for b in s.iter() {
            if !s.contains(r.add(a, b)) {
                return Err(Error::InvalidIdeal(format!("not closed under addition at ({a},{b})")));
            }
        }
        for x in r.elements() {
            if !s.contains(r.mul(x, a)) || !s.contains(r.mul(a, x)) {
                return Err(Error::InvalidIdeal(format!("not absorbing at ({x},{a})")));
            }
        }
    }
    Ok(())
}

/// Least two-sided ideal containing `s`.
pub fn ideal_generated(r: &Ring, s: &SubSet) -> Ideal {
    let mut gens = SubSet::empty(r.order());
    for a in s.iter() {
        for x in r.elements() {
            let xa = r.mul(x, a);
            for y in r.elements() {
                gens.insert(r.mul(xa, y));
            }
        }
    }
    let members = additive_span(r.order(), r.zero(), |a, b| r.add(a, b), gens.iter());
    Ideal::trusted(r, members)
}

/// Additive closure of pairwise products of two ideals.
pub fn ideal_product(r: &Ring, a: &SubSet, b: &SubSet) -> SubSet {
    let mut prods = SubSet::empty(r.order());
    for x in a.iter() {
        for y in b.iter() {
            prods.insert(r.mul(x, y));
        }
    }
    additive_span(r.order(), r.zero(), |x, y| r.add(x, y), prods.iter())
}

/// All two-sided ideals, sorted by (cardinality, members).
pub fn enumerate_ideals(r: &Ring) -> Result<Vec<Ideal>> {
    enumerate_ideals_within(r, IDEAL_LATTICE_BOUND)
}

pub fn enumerate_ideals_within(r: &Ring, bound: usize) -> Result<Vec<Ideal>> {
    Ok(IdealLattice::within(Arc::new(r.clone()), bound)?
        .ideals
        .into_iter()
        .map(|m| Ideal::trusted(r, m))
        .collect())
}

/// The ideal lattice of a ring with the tables needed by the primality tests.
#[derive(Debug, Clone)]
pub struct IdealLattice {
    ring: Arc<Ring>,
    ideals: Vec<SubSet>,
    index: HashMap<SubSet, usize>,
    /// principal[a] = index of (a)
    principal: Vec<usize>,
    /// products[i * k + j] = index of I_i I_j
    products: Vec<usize>,
    prime: Vec<bool>,
    completely_prime: Vec<bool>,
}

impl IdealLattice {
    pub fn new(ring: Arc<Ring>) -> Result<Self> {
        Self::within(ring, IDEAL_LATTICE_BOUND)
    }

    pub fn within(ring: Arc<Ring>, bound: usize) -> Result<Self> {
        let r = &*ring;
        if r.order() > bound {
            return Err(Error::SizeLimit {
                what: format!("ideal lattice of {}", r.label()),
                order: r.order(),
                bound,
            });
        }
        let atoms: Vec<SubSet> = r
            .elements()
            .map(|a| ideal_generated(r, &SubSet::singleton(r.order(), a)).into_members())
            .collect();
        let add = |x: usize, y: usize| r.add(x, y);
        let ideals = join_closure(SubSet::singleton(r.order(), r.zero()), &atoms, |s, a| {
            subgroup_sum(r.order(), s, a, &add)
        });
        let index: HashMap<SubSet, usize> = ideals.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let principal = atoms.iter().map(|a| index[a]).collect();
        let k = ideals.len();
        let mut products = Vec::with_capacity(k * k);
        for a in &ideals {
            for b in &ideals {
                let p = ideal_product(r, a, b);
                products.push(*index.get(&p).ok_or_else(|| {
                    Error::Inconsistency(format!("ideal product {p} missing from lattice"))
                })?);
            }
        }
        let mut lat = IdealLattice {
            ring,
            ideals,
            index,
            principal,
            products,
            prime: vec![],
            completely_prime: vec![],
        };
        lat.prime = (0..k).map(|i| lat.prime_by_definition(i)).collect();
        lat.completely_prime = (0..k).map(|i| lat.completely_prime_by_elements(i)).collect();
        Ok(lat)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn ideals(&self) -> &[SubSet] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn index_of(&self, s: &SubSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn principal(&self, a: usize) -> usize {
        self.principal[a]
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        self.products[i * self.ideals.len() + j]
    }

    pub fn full_index(&self) -> usize {
        self.ideals.len() - 1
    }

    fn prime_by_definition(&self, p: usize) -> bool {
        let pm = &self.ideals[p];
        if pm.is_full() {
            return false;
        }
        let k = self.ideals.len();
        for a in 0..k {
            if self.ideals[a].is_subset(pm) {
                continue;
            }
            for b in 0..k {
                if self.ideals[self.product(a, b)].is_subset(pm) && !self.ideals[b].is_subset(pm) {
                    return false;
                }
            }
        }
        true
    }

    fn completely_prime_by_elements(&self, p: usize) -> bool {
        let pm = &self.ideals[p];
        if pm.is_full() {
            return false;
        }
        let r = &*self.ring;
        r.elements()
            .all(|a| pm.contains(a) || r.elements().all(|b| pm.contains(b) || !pm.contains(r.mul(a, b))))
    }

    pub fn is_prime(&self, i: usize) -> bool {
        self.prime[i]
    }

    pub fn is_completely_prime(&self, i: usize) -> bool {
        self.completely_prime[i]
    }

    /// Intersection of the ideals selected by `keep` that contain `base`;
    /// the whole ring when there are none.
    fn radical_over(&self, base: &SubSet, keep: &[bool]) -> SubSet {
        let mut out = SubSet::full(self.ring.order());
        for (s, &k) in self.ideals.iter().zip(keep) {
            if k && base.is_subset(s) {
                out.intersect_with(s);
            }
        }
        out
    }

    /// beta(I): intersection of prime ideals containing `base`.
    pub fn prime_radical_of(&self, base: &SubSet) -> SubSet {
        self.radical_over(base, &self.prime)
    }

    /// beta_co(I): intersection of completely prime ideals containing `base`.
    pub fn completely_prime_radical_of(&self, base: &SubSet) -> SubSet {
        self.radical_over(base, &self.completely_prime)
    }

    pub fn prime_radical(&self) -> SubSet {
        self.prime_radical_of(&SubSet::singleton(self.ring.order(), self.ring.zero()))
    }

    pub fn completely_prime_radical(&self) -> SubSet {
        self.completely_prime_radical_of(&SubSet::singleton(self.ring.order(), self.ring.zero()))
    }
}

fn proper(i: &Ideal) -> Result<()> {
    if i.is_proper() {
        Ok(())
    } else {
        Err(Error::InvalidParameter("primality is defined for proper ideals only".into()))
    }
}

/// AB ⊆ I implies A ⊆ I or B ⊆ I, over all pairs of ideals.
pub fn is_prime_ideal(r: &Ring, i: &Ideal) -> Result<bool> {
    i.check_ring(r)?;
    proper(i)?;
    let lat = IdealLattice::new(Arc::new(r.clone()))?;
    let idx = lat.index_of(i.members()).ok_or_else(|| Error::Inconsistency("ideal missing from lattice".into()))?;
    Ok(lat.is_prime(idx))
}

/// ab ∈ I implies a ∈ I or b ∈ I.
pub fn is_completely_prime_ideal(r: &Ring, i: &Ideal) -> Result<bool> {
    i.check_ring(r)?;
    proper(i)?;
    let s = i.members();
    Ok(r.elements().all(|a| s.contains(a) || r.elements().all(|b| s.contains(b) || !s.contains(r.mul(a, b)))))
}

pub fn ring_prime_radical(r: &Ring) -> Result<SubSet> {
    Ok(IdealLattice::new(Arc::new(r.clone()))?.prime_radical())
}

pub fn ring_completely_prime_radical(r: &Ring) -> Result<SubSet> {
    Ok(IdealLattice::new(Arc::new(r.clone()))?.completely_prime_radical())
}

/// { a : a^n ∈ I for some n >= 1 }. Not an ideal in general.
pub fn sqrt_ideal(r: &Ring, i: &Ideal) -> Result<SubSet> {
    i.check_ring(r)?;
    Ok(sqrt_of(r, i.members()))
}

pub(crate) fn sqrt_of(r: &Ring, s: &SubSet) -> SubSet {
    SubSet::from_indices(
        r.order(),
        r.elements().filter(|&a| r.powers(a).iter().any(|&p| s.contains(p))),
    )
}

/// sqrt(0) = beta(R). Also checks agreement with beta_co(R) = beta(R).
pub fn is_2primal_ring(r: &Ring) -> Result<bool> {
    let lat = IdealLattice::new(Arc::new(r.clone()))?;
    two_primal_from_lattice(&lat)
}

pub(crate) fn two_primal_from_lattice(lat: &IdealLattice) -> Result<bool> {
    let r = lat.ring();
    let nil = sqrt_of(r, &SubSet::singleton(r.order(), r.zero()));
    let beta = lat.prime_radical();
    let by_nil = nil == beta;
    let by_radicals = lat.completely_prime_radical() == beta;
    if by_nil != by_radicals {
        return Err(Error::Inconsistency(format!(
            "{}: sqrt(0) = beta(R) is {by_nil} but beta_co(R) = beta(R) is {by_radicals}",
            r.label()
        )));
    }
    Ok(by_nil)
}

/// beta_co(R/I) = beta(R/I).
pub fn is_2primal_ideal(r: &Ring, i: &Ideal) -> Result<bool> {
    i.check_ring(r)?;
    proper(i)?;
    let (q, _) = make_quotient_ring(r, i)?;
    let lat = IdealLattice::new(Arc::new(q))?;
    Ok(lat.completely_prime_radical() == lat.prime_radical())
}

/// Intersection of all maximal left ideals.
pub fn jacobson_radical(r: &Ring) -> Result<Ideal> {
    let m = crate::module::regular_module(Arc::new(r.clone()));
    let lat = crate::lattice::SubmoduleLattice::new(&m)?;
    let subs = lat.submodules();
    let mut out = SubSet::full(r.order());
    for (i, s) in subs.iter().enumerate() {
        if s.is_full() {
            continue;
        }
        let maximal = subs
            .iter()
            .enumerate()
            .all(|(j, t)| j == i || t.is_full() || !s.is_subset(t));
        if maximal {
            out.intersect_with(s);
        }
    }
    Ideal::new(r, out)
}
