//! Regularity classes of submodules: Lee-Zhou completely semiprime
//! (reduced), symmetric, IFP and semi-symmetric.
//!
//! Submodule forms replace "= 0" by membership in (or containment in) N:
//!
//! | class          | condition for all a, b ∈ R, m ∈ M              |
//! |----------------|-------------------------------------------------|
//! | Lee-Zhou       | am ∈ N  ⇒  Rm ∩ aM ⊆ N                          |
//! | symmetric      | abm ∈ N ⇒  bam ∈ N                              |
//! | IFP            | am ∈ N  ⇒  aRm ⊆ N                              |
//! | semi-symmetric | a²m ∈ N ⇒  (a)²m ⊆ N, with (a) the ideal of a   |
//!
//! For N = 0 these are the module conditions. The three characterisations of
//! reduced modules are implemented separately so they can be compared.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::lattice::Submodule;
use crate::module::Module;
use crate::primal::{is_2primal_submodule, PrimalContext};
use crate::subset::SubSet;

/// Class flags for one submodule, with a witness tuple for each false flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassVector {
    pub lz_cs: bool,
    pub symmetric: bool,
    pub ifp: bool,
    pub semi_symmetric: bool,
    pub two_primal: bool,
    pub completely_semiprime: bool,
    pub witnesses: BTreeMap<&'static str, Vec<usize>>,
}

impl ClassVector {
    pub fn flags(&self) -> [(&'static str, bool); 6] {
        [
            ("lz_cs", self.lz_cs),
            ("symmetric", self.symmetric),
            ("ifp", self.ifp),
            ("semi_symmetric", self.semi_symmetric),
            ("two_primal", self.two_primal),
            ("completely_semiprime", self.completely_semiprime),
        ]
    }

    /// First broken link of lz ⇒ sym ⇒ ifp ⇒ semi-sym ⇒ 2-primal, and of
    /// lz ⇒ completely semiprime when N is proper.
    pub fn chain_violation(&self, proper: bool) -> Option<&'static str> {
        if self.lz_cs && !self.symmetric {
            Some("lz_cs => symmetric")
        } else if self.symmetric && !self.ifp {
            Some("symmetric => ifp")
        } else if self.ifp && !self.semi_symmetric {
            Some("ifp => semi_symmetric")
        } else if self.semi_symmetric && !self.two_primal {
            Some("semi_symmetric => two_primal")
        } else if proper && self.lz_cs && !self.completely_semiprime {
            Some("lz_cs => completely_semiprime")
        } else {
            None
        }
    }
}

/// am ∈ N ⇒ Rm ∩ aM ⊆ N. Witness (a, m).
pub fn lz_failure(ctx: &PrimalContext, n: &SubSet) -> Option<Vec<usize>> {
    let m = ctx.module();
    let lat = ctx.lattice();
    for a in m.ring().elements() {
        for x in m.elements() {
            if n.contains(m.act(a, x)) {
                let meet = lat.get(lat.cyclic(x)).intersection(ctx.a_times_module(a));
                if !meet.is_subset(n) {
                    return Some(vec![a, x]);
                }
            }
        }
    }
    None
}

/// pre[c] = { x ∈ M : cx ∈ N }.
fn preimages(m: &Module, n: &SubSet) -> Vec<SubSet> {
    m.ring()
        .elements()
        .map(|c| SubSet::from_indices(m.order(), m.elements().filter(|&x| n.contains(m.act(c, x)))))
        .collect()
}

/// abm ∈ N ⇒ bam ∈ N. Witness (a, b, m).
pub fn symmetric_failure(ctx: &PrimalContext, n: &SubSet) -> Option<Vec<usize>> {
    let m = ctx.module();
    let r = m.ring();
    let pre = preimages(m, n);
    for a in r.elements() {
        for b in r.elements() {
            let (ab, ba) = (r.mul(a, b), r.mul(b, a));
            if let Some(x) = pre[ab].first_outside(&pre[ba]) {
                return Some(vec![a, b, x]);
            }
        }
    }
    None
}

/// am ∈ N ⇒ aRm ⊆ N. Witness (a, r, m) with arm ∉ N.
pub fn ifp_failure(ctx: &PrimalContext, n: &SubSet) -> Option<Vec<usize>> {
    let m = ctx.module();
    let r = m.ring();
    let pre = preimages(m, n);
    for a in r.elements() {
        for s in r.elements() {
            if let Some(x) = pre[a].first_outside(&pre[r.mul(a, s)]) {
                return Some(vec![a, s, x]);
            }
        }
    }
    None
}

/// a²m ∈ N ⇒ (a)²m ⊆ N. Since N is additive, (a)²m ⊆ N exactly when
/// cm ∈ N for every c in the ideal (a)². Witness (a, m).
pub fn semi_symmetric_failure(ctx: &PrimalContext, n: &SubSet) -> Option<Vec<usize>> {
    let m = ctx.module();
    let r = m.ring();
    let ideals = ctx.ideals();
    let pre = preimages(m, n);
    let mut colon: Vec<Option<SubSet>> = vec![None; ideals.len()];
    for a in r.elements() {
        let pa = ideals.principal(a);
        let sq = ideals.product(pa, pa);
        let t = colon[sq].get_or_insert_with(|| {
            let mut t = SubSet::full(m.order());
            for c in ideals.ideals()[sq].iter() {
                t.intersect_with(&pre[c]);
            }
            t
        });
        if let Some(x) = pre[r.mul(a, a)].first_outside(t) {
            return Some(vec![a, x]);
        }
    }
    None
}

/// Reduced, first form: am = 0 ⇒ Rm ∩ aM = 0.
pub fn reduced_by_intersection(ctx: &PrimalContext) -> bool {
    let z = ctx.sub(ctx.lattice().zero_index()).clone();
    lz_failure(ctx, &z).is_none()
}

/// Reduced, second form: a²m = 0 ⇒ aRm = 0.
pub fn reduced_by_square(m: &Module) -> bool {
    let r = m.ring();
    let z = m.zero();
    r.elements().all(|a| {
        let a2 = r.mul(a, a);
        m.elements()
            .all(|x| m.act(a2, x) != z || r.elements().all(|s| m.act(a, m.act(s, x)) == z))
    })
}

/// Reduced, third form: (am = 0 ⇒ aRm = 0) and (a²m = 0 ⇒ am = 0).
pub fn reduced_by_split(m: &Module) -> bool {
    let r = m.ring();
    let z = m.zero();
    let insertion = r.elements().all(|a| {
        m.elements()
            .all(|x| m.act(a, x) != z || r.elements().all(|s| m.act(r.mul(a, s), x) == z))
    });
    let square_free = r.elements().all(|a| {
        let a2 = r.mul(a, a);
        m.elements().all(|x| m.act(a2, x) != z || m.act(a, x) == z)
    });
    insertion && square_free
}

/// Evaluates every class flag given the 2-primality of N (computed by the
/// caller, usually through the quotient M/N).
pub fn classify_with(ctx: &PrimalContext, n: usize, two_primal: bool) -> ClassVector {
    let s = ctx.sub(n);
    let mut witnesses = BTreeMap::new();
    let mut flag = |name: &'static str, fail: Option<Vec<usize>>| match fail {
        Some(w) => {
            witnesses.insert(name, w);
            false
        }
        None => true,
    };
    let lz_cs = flag("lz_cs", lz_failure(ctx, s));
    let symmetric = flag("symmetric", symmetric_failure(ctx, s));
    let ifp = flag("ifp", ifp_failure(ctx, s));
    let semi_symmetric = flag("semi_symmetric", semi_symmetric_failure(ctx, s));
    let completely_semiprime = flag(
        "completely_semiprime",
        ctx.completely_semiprime_failure(s).map(|(a, m)| vec![a, m]),
    );
    ClassVector {
        lz_cs,
        symmetric,
        ifp,
        semi_symmetric,
        two_primal,
        completely_semiprime,
        witnesses,
    }
}

fn one_shot(m: &Module, n: &Submodule) -> Result<(PrimalContext, usize)> {
    n.check_module(m)?;
    let ctx = PrimalContext::new(Arc::new(m.clone()))?;
    let i = ctx.lattice().require(n.members())?;
    Ok((ctx, i))
}

pub fn is_lz_completely_semiprime(m: &Module, n: &Submodule) -> Result<bool> {
    let (ctx, i) = one_shot(m, n)?;
    Ok(lz_failure(&ctx, ctx.sub(i)).is_none())
}

pub fn is_symmetric_submodule(m: &Module, n: &Submodule) -> Result<bool> {
    let (ctx, i) = one_shot(m, n)?;
    Ok(symmetric_failure(&ctx, ctx.sub(i)).is_none())
}

pub fn is_ifp_submodule(m: &Module, n: &Submodule) -> Result<bool> {
    let (ctx, i) = one_shot(m, n)?;
    Ok(ifp_failure(&ctx, ctx.sub(i)).is_none())
}

pub fn is_semi_symmetric_submodule(m: &Module, n: &Submodule) -> Result<bool> {
    let (ctx, i) = one_shot(m, n)?;
    Ok(semi_symmetric_failure(&ctx, ctx.sub(i)).is_none())
}

/// All class flags plus 2-primality; fails with an inconsistency error if
/// the implication chain is broken.
pub fn classify(m: &Module, n: &Submodule) -> Result<ClassVector> {
    let (ctx, i) = one_shot(m, n)?;
    let cv = classify_with(&ctx, i, is_2primal_submodule(m, n)?);
    if let Some(link) = cv.chain_violation(n.is_proper()) {
        return Err(crate::Error::Inconsistency(format!(
            "class chain broken ({link}) at {} in {}",
            n.members(),
            m.label()
        )));
    }
    Ok(cv)
}
