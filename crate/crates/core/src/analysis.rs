//! Everything the claim registry needs about one module, computed once.
//!
//! Besides the primal context of M, an [`Analysis`] holds the envelope and
//! class vector of every submodule and a shallow analysis of every quotient
//! M/K. Construction also checks the structural invariants that must hold
//! on every instance (implications between the primality notions, colon
//! sets of prime submodules, envelope witnesses, 2-primality through the
//! quotient against the radicals in M); a violation is an
//! [`Error::Inconsistency`].

use std::sync::Arc;

use crate::classes::{classify_with, reduced_by_intersection, reduced_by_split, reduced_by_square, ClassVector};
use crate::error::{Error, Result};
use crate::ideal::{jacobson_radical, sqrt_of, two_primal_from_lattice, IdealLattice};
use crate::lattice::{colon_set, product_set, MODULE_LATTICE_BOUND};
use crate::module::{quotient_module, Module, ModuleHom};
use crate::primal::{EnvelopeResult, PrimalContext};
use crate::ring::Ring;
use crate::subset::SubSet;

/// Ring-level data shared by every module over the same ring.
#[derive(Debug)]
pub struct RingAnalysis {
    pub ring: Arc<Ring>,
    pub ideals: Arc<IdealLattice>,
    pub commutative: bool,
    /// √0
    pub nil: SubSet,
    pub beta: SubSet,
    pub beta_co: SubSet,
    pub two_primal: bool,
    pub jacobson: SubSet,
}

impl RingAnalysis {
    pub fn new(ring: Arc<Ring>) -> Result<Self> {
        let ideals = Arc::new(IdealLattice::new(ring.clone())?);
        let r = &*ring;
        let commutative = r.is_commutative();
        let nil = sqrt_of(r, &SubSet::singleton(r.order(), r.zero()));
        let beta = ideals.prime_radical();
        let beta_co = ideals.completely_prime_radical();
        let two_primal = two_primal_from_lattice(&ideals)?;
        let jacobson = jacobson_radical(r)?.into_members();
        let fail = |what: String| Err(Error::Inconsistency(format!("{}: {what}", r.label())));
        for i in 0..ideals.len() {
            if ideals.is_completely_prime(i) && !ideals.is_prime(i) {
                return fail(format!("completely prime ideal {} is not prime", ideals.ideals()[i]));
            }
            if commutative && ideals.is_prime(i) != ideals.is_completely_prime(i) {
                return fail(format!("prime and completely prime differ at {}", ideals.ideals()[i]));
            }
        }
        if !beta.is_subset(&beta_co) {
            return fail("beta(R) not contained in beta_co(R)".into());
        }
        if !beta.is_subset(&nil) {
            return fail("beta(R) is not nil".into());
        }
        Ok(RingAnalysis {
            ring,
            ideals,
            commutative,
            nil,
            beta,
            beta_co,
            two_primal,
            jacobson,
        })
    }

    pub fn semisimple(&self) -> bool {
        self.jacobson.count() == 1
    }
}

/// Per-submodule data.
#[derive(Debug, Clone)]
pub struct SubData {
    pub envelope: EnvelopeResult,
    pub raw_is_submodule: bool,
    /// Lattice index of ⟨E(N)⟩.
    pub generated: usize,
    /// ⟨E(N)⟩ = β(N)
    pub rf: bool,
    /// β_co(M/N) = β(M/N), computed in the quotient.
    pub two_primal: bool,
    pub classes: ClassVector,
}

/// Shallow analysis of M/K.
#[derive(Debug, Clone)]
pub struct QuotientData {
    pub module: Arc<Module>,
    pub projection: ModuleHom,
    pub ctx: PrimalContext,
    /// Radical formula at every submodule of M/K.
    pub rf: Vec<bool>,
    /// Lattice index in M of φ⁻¹(N') for every submodule N' of M/K.
    pub preimage: Vec<usize>,
    /// Lattice index in M/K of φ(N), for N ⊇ K.
    pub image: Vec<Option<usize>>,
}

impl QuotientData {
    pub fn zero(&self) -> usize {
        self.ctx.lattice().zero_index()
    }
}

#[derive(Debug)]
pub struct Analysis {
    pub ring: Arc<RingAnalysis>,
    pub ctx: PrimalContext,
    pub subs: Vec<SubData>,
    /// quotients[k] analyses M / (submodule k).
    pub quotients: Vec<QuotientData>,
    /// The three characterisations of a reduced module.
    pub reduced: [bool; 3],
    /// Lattice indices of β(R)M and β_co(R)M.
    pub beta_r_m: usize,
    pub beta_co_r_m: usize,
}

fn rf_flags(ctx: &PrimalContext) -> Vec<bool> {
    (0..ctx.len()).map(|i| ctx.radical_formula(i).holds).collect()
}

impl Analysis {
    pub fn new(module: Arc<Module>, ring: Arc<RingAnalysis>) -> Result<Self> {
        if module.ring().fingerprint() != ring.ring.fingerprint() {
            return Err(Error::RingMismatch(format!("{} is not over {}", module.label(), ring.ring.label())));
        }
        let ctx = PrimalContext::with_ideals(module.clone(), ring.ideals.clone(), MODULE_LATTICE_BOUND)?;
        let m = &*module;
        let lat = ctx.lattice();
        let fail = |what: String| Err(Error::Inconsistency(format!("{}: {what}", m.label())));

        let mut quotients = Vec::with_capacity(ctx.len());
        for k in 0..ctx.len() {
            let (q, projection) = quotient_module(&module, ctx.sub(k))?;
            let qctx = PrimalContext::with_ideals(q.clone(), ring.ideals.clone(), MODULE_LATTICE_BOUND)?;
            let rf = rf_flags(&qctx);
            let mut preimage = Vec::with_capacity(qctx.len());
            for i in 0..qctx.len() {
                let s = qctx.sub(i);
                let pre = SubSet::from_indices(m.order(), m.elements().filter(|&x| s.contains(projection.apply(x))));
                preimage.push(lat.require(&pre)?);
            }
            let mut image = vec![None; ctx.len()];
            for (i, &p) in preimage.iter().enumerate() {
                image[p] = Some(i);
            }
            quotients.push(QuotientData {
                module: q,
                projection,
                ctx: qctx,
                rf,
                preimage,
                image,
            });
        }

        let mut subs = Vec::with_capacity(ctx.len());
        for (n, q) in quotients.iter().enumerate() {
            let s = ctx.sub(n);
            let proper = !s.is_full();
            if proper {
                let (cp, p, sp, csp) = (
                    ctx.is_completely_prime(n),
                    ctx.is_prime(n),
                    ctx.is_semiprime(n),
                    ctx.is_completely_semiprime(n),
                );
                if (cp && !p) || (csp && !sp) || (p && !sp) || (cp && !csp) {
                    return fail(format!("primality implications broken at {s}"));
                }
                if ring.commutative && (p != cp || sp != csp) {
                    return fail(format!("commutative ring but notions differ at {s}"));
                }
            }
            if !lat.get(ctx.beta(n)).is_subset(lat.get(ctx.beta_co(n))) {
                return fail(format!("beta not contained in beta_co at {s}"));
            }
            let envelope = ctx.envelope(s);
            for w in &envelope.witnesses {
                let rk = m.ring().pow(w.r, w.k);
                if m.act(w.r, w.m) != w.element || !s.contains(m.act(rk, w.m)) {
                    return fail(format!("envelope witness {w:?} does not verify at {s}"));
                }
            }
            let generated = lat.require(&envelope.generated)?;
            let raw_is_submodule = lat.index_of(&envelope.raw).is_some();
            let rf = lat.get(generated) == lat.get(ctx.beta(n));
            let qz = q.zero();
            let two_primal = q.ctx.beta(qz) == q.ctx.beta_co(qz);
            if two_primal != (ctx.beta(n) == ctx.beta_co(n)) {
                return fail(format!("2-primality through M/N disagrees with beta_co(N) = beta(N) at {s}"));
            }
            let classes = classify_with(&ctx, n, two_primal);
            subs.push(SubData {
                envelope,
                raw_is_submodule,
                generated,
                rf,
                two_primal,
                classes,
            });
        }
        check_colons(&ctx)?;

        let reduced = [reduced_by_intersection(&ctx), reduced_by_square(m), reduced_by_split(m)];
        let full = SubSet::full(m.order());
        let beta_r_m = lat.require(&product_set(m, &ring.beta, &full))?;
        let beta_co_r_m = lat.require(&product_set(m, &ring.beta_co, &full))?;
        Ok(Analysis {
            ring,
            ctx,
            subs,
            quotients,
            reduced,
            beta_r_m,
            beta_co_r_m,
        })
    }

    pub fn module(&self) -> &Arc<Module> {
        self.ctx.module()
    }

    pub fn len(&self) -> usize {
        self.ctx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ctx.is_empty()
    }

    pub fn sub(&self, i: usize) -> &SubSet {
        self.ctx.sub(i)
    }

    pub fn zero(&self) -> usize {
        self.ctx.lattice().zero_index()
    }

    pub fn full(&self) -> usize {
        self.ctx.lattice().full_index()
    }

    /// β_co(N) ⊆ ⟨E(N)⟩
    pub fn inclusion(&self, n: usize) -> bool {
        self.sub(self.ctx.beta_co(n)).is_subset(self.sub(self.subs[n].generated))
    }

    pub fn two_primal_module(&self) -> bool {
        self.subs[self.zero()].two_primal
    }

    /// First submodule where the radical formula fails.
    pub fn rf_failure(&self) -> Option<usize> {
        self.subs.iter().position(|d| !d.rf)
    }
}

/// For prime P and N ⊄ P: (P:N) = (P:M) and it is a prime ideal. For
/// completely prime P and m ∉ P: (P:{m}) = (P:M) and it is a completely
/// prime ideal.
fn check_colons(ctx: &PrimalContext) -> Result<()> {
    let m = &**ctx.module();
    let ideals = ctx.ideals();
    let full = SubSet::full(m.order());
    let fail = |what: String| Err(Error::Inconsistency(format!("{}: {what}", m.label())));
    for p in 0..ctx.len() {
        let (prime, cp) = (ctx.is_prime(p), ctx.is_completely_prime(p));
        if !prime && !cp {
            continue;
        }
        let ps = ctx.sub(p);
        let whole = colon_set(m, ps, &full);
        let idx = match ideals.index_of(&whole) {
            Some(i) => i,
            None => return fail(format!("(P:M) is not an ideal for P = {ps}")),
        };
        if prime {
            if !ideals.is_prime(idx) {
                return fail(format!("(P:M) not prime for prime P = {ps}"));
            }
            for n in 0..ctx.len() {
                let ns = ctx.sub(n);
                if !ns.is_subset(ps) && colon_set(m, ps, ns) != whole {
                    return fail(format!("(P:N) != (P:M) for P = {ps}, N = {ns}"));
                }
            }
        }
        if cp {
            if !ideals.is_completely_prime(idx) {
                return fail(format!("(P:M) not completely prime for P = {ps}"));
            }
            for x in m.elements().filter(|&x| !ps.contains(x)) {
                if colon_set(m, ps, &SubSet::singleton(m.order(), x)) != whole {
                    return fail(format!("(P:{{{x}}}) != (P:M) for P = {ps}"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{column_module, regular_module};
    use crate::ring::make_cyclic_ring;

    fn analyse(m: Module) -> Analysis {
        let ring = Arc::new(RingAnalysis::new(m.ring().clone()).unwrap());
        Analysis::new(Arc::new(m), ring).unwrap()
    }

    #[test]
    fn z4_regular() {
        let a = analyse(regular_module(Arc::new(make_cyclic_ring(4).unwrap())));
        assert_eq!(a.len(), 3);
        assert!(a.subs.iter().all(|d| d.rf && d.two_primal));
        assert_eq!(a.sub(a.subs[a.zero()].generated).to_vec(), vec![0, 2]);
        assert!(a.reduced.iter().all(|&r| !r));
        assert!(!a.ring.semisimple());
    }

    #[test]
    fn column_module_quotients() {
        let a = analyse(column_module(2, 2).unwrap());
        assert_eq!(a.quotients.len(), 2);
        assert!(!a.two_primal_module());
        assert_eq!(a.rf_failure(), Some(a.zero()));
        assert!(a.ring.semisimple());
        assert!(a.inclusion(a.zero()));
        // M/0 ≅ M and M/M = 0
        assert_eq!(a.quotients[a.zero()].module.order(), 4);
        assert_eq!(a.quotients[a.full()].module.order(), 1);
    }
}
