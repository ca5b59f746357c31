//! Prime, completely prime, semiprime and completely semiprime submodules,
//! the two radicals, the envelope, the radical formula and 2-primality.
//!
//! All tests quantify by enumeration. [`PrimalContext`] computes the
//! submodule lattice, the ideal lattice of the ring and every primality flag
//! once; the free functions at the bottom are one-shot wrappers that build a
//! fresh context per call.
//!
//! Unital modules have RM = M, so the requirement RM ⊄ P in the primality
//! definitions is the same as P being proper.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::IdealLattice;
use crate::lattice::{product_set, span, Submodule, SubmoduleLattice, MODULE_LATTICE_BOUND};
use crate::module::{quotient_module, Module};
use crate::subset::SubSet;

/// One witness for membership in the envelope: `element = r·m` with
/// `r^k·m ∈ N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnvelopeWitness {
    pub element: usize,
    pub r: usize,
    pub m: usize,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopeResult {
    /// E(N) = { r·m : r^k·m ∈ N for some k >= 1 }
    pub raw: SubSet,
    /// ⟨E(N)⟩
    pub generated: SubSet,
    /// One witness per member of `raw`, in increasing element order.
    pub witnesses: Vec<EnvelopeWitness>,
}

/// Outcome of comparing ⟨E(N)⟩ with β(N).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadicalFormula {
    pub holds: bool,
    /// Smallest element in exactly one of ⟨E(N)⟩ and β(N).
    pub separating: Option<usize>,
}

/// A pair (a, m) breaking an elementwise condition.
pub type Pair = (usize, usize);

#[derive(Debug, Clone)]
pub struct PrimalContext {
    module: Arc<Module>,
    ideals: Arc<IdealLattice>,
    lattice: SubmoduleLattice,
    /// products[ideal * subs + sub] = index of A·N
    products: Vec<usize>,
    /// a_m[a] = aM as a set (an additive subgroup)
    a_m: Vec<SubSet>,
    /// powers[a] = distinct a, a^2, ...
    powers: Vec<Vec<usize>>,
    prime: Vec<bool>,
    completely_prime: Vec<bool>,
    semiprime: Vec<bool>,
    completely_semiprime: Vec<bool>,
    beta: Vec<usize>,
    beta_co: Vec<usize>,
}

impl PrimalContext {
    pub fn new(module: Arc<Module>) -> Result<Self> {
        let ideals = Arc::new(IdealLattice::new(module.ring().clone())?);
        Self::with_ideals(module, ideals, MODULE_LATTICE_BOUND)
    }

    pub fn with_ideals(module: Arc<Module>, ideals: Arc<IdealLattice>, bound: usize) -> Result<Self> {
        if ideals.ring().fingerprint() != module.ring().fingerprint() {
            return Err(Error::RingMismatch("ideal lattice belongs to another ring".into()));
        }
        let lattice = SubmoduleLattice::within(&module, bound)?;
        let m = &*module;
        let r = m.ring().clone();
        let ns = lattice.len();
        let mut products = Vec::with_capacity(ideals.len() * ns);
        for a in ideals.ideals() {
            for n in lattice.submodules() {
                products.push(lattice.require(&product_set(m, a, n))?);
            }
        }
        let full = SubSet::full(m.order());
        let a_m = r.elements().map(|a| m.act_set(a, &full)).collect();
        let powers = r.elements().map(|a| r.powers(a)).collect();
        let mut ctx = PrimalContext {
            module,
            ideals,
            lattice,
            products,
            a_m,
            powers,
            prime: vec![],
            completely_prime: vec![],
            semiprime: vec![],
            completely_semiprime: vec![],
            beta: vec![],
            beta_co: vec![],
        };
        let mut prime = Vec::with_capacity(ns);
        for p in 0..ns {
            let by_def = ctx.prime_by_definition(p);
            let by_elem = ctx.prime_by_elements(p);
            if by_def != by_elem {
                return Err(Error::Inconsistency(format!(
                    "prime test disagreement on {} in {}: definitional {by_def}, elementwise {by_elem}",
                    ctx.lattice.get(p),
                    ctx.module.label()
                )));
            }
            prime.push(by_def);
        }
        ctx.prime = prime;
        ctx.completely_prime = (0..ns).map(|p| ctx.completely_prime_failure(ctx.lattice.get(p)).is_none()).collect();
        ctx.semiprime = (0..ns).map(|p| ctx.semiprime_failure(ctx.lattice.get(p)).is_none()).collect();
        ctx.completely_semiprime = (0..ns)
            .map(|p| ctx.completely_semiprime_failure(ctx.lattice.get(p)).is_none())
            .collect();
        ctx.beta = (0..ns).map(|n| ctx.radical_index(n, &ctx.prime)).collect::<Result<_>>()?;
        ctx.beta_co = (0..ns)
            .map(|n| ctx.radical_index(n, &ctx.completely_prime))
            .collect::<Result<_>>()?;
        Ok(ctx)
    }

    pub fn module(&self) -> &Arc<Module> {
        &self.module
    }
    pub fn ideals(&self) -> &Arc<IdealLattice> {
        &self.ideals
    }
    pub fn lattice(&self) -> &SubmoduleLattice {
        &self.lattice
    }
    pub fn sub(&self, i: usize) -> &SubSet {
        self.lattice.get(i)
    }
    pub fn len(&self) -> usize {
        self.lattice.len()
    }
    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    /// Index of A·N.
    pub fn product(&self, ideal: usize, sub: usize) -> usize {
        self.products[ideal * self.lattice.len() + sub]
    }

    pub fn a_times_module(&self, a: usize) -> &SubSet {
        &self.a_m[a]
    }

    pub fn powers(&self, a: usize) -> &[usize] {
        &self.powers[a]
    }

    /// For all ideals A and submodules N: AN ⊆ P implies N ⊆ P or AM ⊆ P.
    pub fn prime_by_definition(&self, p: usize) -> bool {
        let pm = self.lattice.get(p);
        if pm.is_full() {
            return false;
        }
        let full = self.lattice.full_index();
        for a in 0..self.ideals.len() {
            if self.lattice.get(self.product(a, full)).is_subset(pm) {
                continue;
            }
            for n in 0..self.lattice.len() {
                if !self.lattice.get(n).is_subset(pm) && self.lattice.get(self.product(a, n)).is_subset(pm) {
                    return false;
                }
            }
        }
        true
    }

    /// For all a ∈ R, m ∈ M: (a)(Rm) ⊆ P implies m ∈ P or (a)M ⊆ P.
    pub fn prime_by_elements(&self, p: usize) -> bool {
        self.prime_failure_by_elements(p).is_none()
    }

    pub fn prime_failure_by_elements(&self, p: usize) -> Option<Pair> {
        let pm = self.lattice.get(p);
        if pm.is_full() {
            return Some((0, 0));
        }
        let full = self.lattice.full_index();
        for a in self.module.ring().elements() {
            let ia = self.ideals.principal(a);
            if self.lattice.get(self.product(ia, full)).is_subset(pm) {
                continue;
            }
            for m in self.module.elements() {
                if !pm.contains(m) && self.lattice.get(self.product(ia, self.lattice.cyclic(m))).is_subset(pm) {
                    return Some((a, m));
                }
            }
        }
        None
    }

    /// am ∈ P implies m ∈ P or aM ⊆ P.
    pub fn completely_prime_failure(&self, p: &SubSet) -> Option<Pair> {
        if p.is_full() {
            return Some((0, 0));
        }
        let m = &*self.module;
        for a in m.ring().elements() {
            if self.a_m[a].is_subset(p) {
                continue;
            }
            for x in m.elements() {
                if !p.contains(x) && p.contains(m.act(a, x)) {
                    return Some((a, x));
                }
            }
        }
        None
    }

    /// aRam ⊆ P implies am ∈ P.
    pub fn semiprime_failure(&self, p: &SubSet) -> Option<Pair> {
        if p.is_full() {
            return Some((0, 0));
        }
        let m = &*self.module;
        let r = m.ring();
        for a in r.elements() {
            for x in m.elements() {
                let am = m.act(a, x);
                if p.contains(am) {
                    continue;
                }
                if r.elements().all(|s| p.contains(m.act(a, m.act(s, am)))) {
                    return Some((a, x));
                }
            }
        }
        None
    }

    /// a²m ∈ P implies am ∈ P.
    pub fn completely_semiprime_failure(&self, p: &SubSet) -> Option<Pair> {
        if p.is_full() {
            return Some((0, 0));
        }
        let m = &*self.module;
        for a in m.ring().elements() {
            for x in m.elements() {
                let am = m.act(a, x);
                if !p.contains(am) && p.contains(m.act(a, am)) {
                    return Some((a, x));
                }
            }
        }
        None
    }

    pub fn is_prime(&self, i: usize) -> bool {
        self.prime[i]
    }
    pub fn is_completely_prime(&self, i: usize) -> bool {
        self.completely_prime[i]
    }
    pub fn is_semiprime(&self, i: usize) -> bool {
        self.semiprime[i]
    }
    pub fn is_completely_semiprime(&self, i: usize) -> bool {
        self.completely_semiprime[i]
    }

    fn radical_index(&self, n: usize, keep: &[bool]) -> Result<usize> {
        let base = self.lattice.get(n);
        let mut out = SubSet::full(self.module.order());
        for (i, &k) in keep.iter().enumerate() {
            if k && base.is_subset(self.lattice.get(i)) {
                out.intersect_with(self.lattice.get(i));
            }
        }
        self.lattice.require(&out)
    }

    /// Index of β(N).
    pub fn beta(&self, n: usize) -> usize {
        self.beta[n]
    }

    /// Index of β_co(N).
    pub fn beta_co(&self, n: usize) -> usize {
        self.beta_co[n]
    }

    pub fn envelope(&self, n: &SubSet) -> EnvelopeResult {
        let m = &*self.module;
        let mut raw = SubSet::empty(m.order());
        let mut witnesses = Vec::new();
        for r in m.ring().elements() {
            for x in m.elements() {
                let rx = m.act(r, x);
                if raw.contains(rx) {
                    continue;
                }
                if let Some(k) = self.powers[r].iter().position(|&p| n.contains(m.act(p, x))) {
                    raw.insert(rx);
                    witnesses.push(EnvelopeWitness {
                        element: rx,
                        r,
                        m: x,
                        k: k + 1,
                    });
                }
            }
        }
        witnesses.sort_by_key(|w| w.element);
        let generated = span(m, &raw);
        EnvelopeResult {
            raw,
            generated,
            witnesses,
        }
    }

    pub fn radical_formula(&self, n: usize) -> RadicalFormula {
        let env = self.envelope(self.lattice.get(n));
        compare(&env.generated, self.lattice.get(self.beta[n]))
    }
}

pub(crate) fn compare(generated: &SubSet, beta: &SubSet) -> RadicalFormula {
    let separating = match (generated.first_outside(beta), beta.first_outside(generated)) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    RadicalFormula {
        holds: separating.is_none(),
        separating,
    }
}

fn context_for(m: &Module, p: &Submodule) -> Result<(PrimalContext, usize)> {
    p.check_module(m)?;
    let ctx = PrimalContext::new(Arc::new(m.clone()))?;
    let i = ctx.lattice.require(p.members())?;
    Ok((ctx, i))
}

fn require_proper(p: &Submodule) -> Result<()> {
    if p.is_proper() {
        Ok(())
    } else {
        Err(Error::ImproperSubmodule)
    }
}

/// Definitional test, cross-checked against the elementwise test.
pub fn is_prime_submodule(m: &Module, p: &Submodule) -> Result<bool> {
    require_proper(p)?;
    let (ctx, i) = context_for(m, p)?;
    Ok(ctx.is_prime(i))
}

pub fn is_completely_prime_submodule(m: &Module, p: &Submodule) -> Result<bool> {
    require_proper(p)?;
    let (ctx, i) = context_for(m, p)?;
    Ok(ctx.is_completely_prime(i))
}

pub fn is_semiprime_submodule(m: &Module, p: &Submodule) -> Result<bool> {
    require_proper(p)?;
    let (ctx, i) = context_for(m, p)?;
    Ok(ctx.is_semiprime(i))
}

pub fn is_completely_semiprime_submodule(m: &Module, p: &Submodule) -> Result<bool> {
    require_proper(p)?;
    let (ctx, i) = context_for(m, p)?;
    Ok(ctx.is_completely_semiprime(i))
}

/// β(N); the whole module when no prime submodule contains N.
pub fn prime_radical(m: &Module, n: &Submodule) -> Result<Submodule> {
    let (ctx, i) = context_for(m, n)?;
    Ok(Submodule::trusted(m, ctx.sub(ctx.beta(i)).clone()))
}

/// β_co(N); the whole module when no completely prime submodule contains N.
pub fn completely_prime_radical(m: &Module, n: &Submodule) -> Result<Submodule> {
    let (ctx, i) = context_for(m, n)?;
    Ok(Submodule::trusted(m, ctx.sub(ctx.beta_co(i)).clone()))
}

/// E(N) and ⟨E(N)⟩. Exponents k range over [1, |R|], which reaches every
/// power of r (see [`crate::ring::Ring::powers`]).
pub fn envelope(m: &Module, n: &Submodule) -> Result<EnvelopeResult> {
    n.check_module(m)?;
    let r = m.ring();
    let mut raw = SubSet::empty(m.order());
    let mut witnesses = Vec::new();
    for a in r.elements() {
        let powers = r.powers(a);
        for x in m.elements() {
            let ax = m.act(a, x);
            if raw.contains(ax) {
                continue;
            }
            if let Some(k) = powers.iter().position(|&p| n.members().contains(m.act(p, x))) {
                raw.insert(ax);
                witnesses.push(EnvelopeWitness {
                    element: ax,
                    r: a,
                    m: x,
                    k: k + 1,
                });
            }
        }
    }
    witnesses.sort_by_key(|w| w.element);
    let generated = span(m, &raw);
    Ok(EnvelopeResult {
        raw,
        generated,
        witnesses,
    })
}

/// ⟨E(N)⟩ = β(N).
pub fn satisfies_radical_formula(m: &Module, n: &Submodule) -> Result<RadicalFormula> {
    let (ctx, i) = context_for(m, n)?;
    Ok(ctx.radical_formula(i))
}

/// Every submodule satisfies the radical formula; on failure returns the
/// first offending submodule.
pub fn module_satisfies_rf(m: &Module) -> Result<Option<Submodule>> {
    let ctx = PrimalContext::new(Arc::new(m.clone()))?;
    Ok((0..ctx.len())
        .find(|&i| !ctx.radical_formula(i).holds)
        .map(|i| Submodule::trusted(m, ctx.sub(i).clone())))
}

/// β_co(M/N) = β(M/N), computed in the quotient module.
pub fn is_2primal_submodule(m: &Module, n: &Submodule) -> Result<bool> {
    n.check_module(m)?;
    let (q, _) = quotient_module(&Arc::new(m.clone()), n.members())?;
    is_2primal_module(&q)
}

/// β_co(M) = β(M).
pub fn is_2primal_module(m: &Module) -> Result<bool> {
    let ctx = PrimalContext::new(Arc::new(m.clone()))?;
    let z = ctx.lattice.zero_index();
    Ok(ctx.beta(z) == ctx.beta_co(z))
}
