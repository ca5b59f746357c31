//! Submodules: generation, lattice enumeration, colon sets, ideal products
//! and images/preimages under homomorphisms.

use std::collections::HashMap;
use std::sync::Arc;

use crate::closure::{additive_span, join_closure, subgroup_sum};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::module::{Module, ModuleHom};
use crate::subset::SubSet;

/// Default bound on module order for submodule-lattice enumeration.
pub const MODULE_LATTICE_BOUND: usize = 256;

/// A validated submodule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    module: u64,
    members: SubSet,
}

impl Submodule {
    pub fn new(m: &Module, members: SubSet) -> Result<Submodule> {
        check_submodule(m, &members)?;
        Ok(Submodule {
            module: m.fingerprint(),
            members,
        })
    }

    pub(crate) fn trusted(m: &Module, members: SubSet) -> Submodule {
        Submodule {
            module: m.fingerprint(),
            members,
        }
    }

    pub fn zero(m: &Module) -> Submodule {
        Submodule::trusted(m, SubSet::singleton(m.order(), m.zero()))
    }

    pub fn whole(m: &Module) -> Submodule {
        Submodule::trusted(m, SubSet::full(m.order()))
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

    pub fn check_module(&self, m: &Module) -> Result<()> {
        if self.module != m.fingerprint() {
            return Err(Error::DomainMismatch(format!("submodule does not belong to {}", m.label())));
        }
        Ok(())
    }
}

pub fn check_submodule(m: &Module, s: &SubSet) -> Result<()> {
    if s.universe() != m.order() {
        return Err(Error::InvalidSubmodule(format!(
            "subset width {} does not match module order {}",
            s.universe(),
            m.order()
        )));
    }
    if !s.contains(m.zero()) {
        return Err(Error::InvalidSubmodule("does not contain zero".into()));
    }
    for x in s.iter() {
        if !s.contains(m.neg(x)) {
            return Err(Error::InvalidSubmodule(format!("not closed under negation at {x}")));
        }
        for y in s.iter() {
            if !s.contains(m.add(x, y)) {
                return Err(Error::InvalidSubmodule(format!("not closed under addition at ({x},{y})")));
            }
        }
        for r in m.ring().elements() {
            if !s.contains(m.act(r, x)) {
                return Err(Error::InvalidSubmodule(format!("not closed under the action at (r={r},m={x})")));
            }
        }
    }
    Ok(())
}

/// Rm for a unital module; already closed under addition and the action.
pub fn cyclic(m: &Module, x: usize) -> SubSet {
    SubSet::from_indices(m.order(), m.ring().elements().map(|r| m.act(r, x)))
}

/// Least submodule containing `s`.
pub fn submodule_generated(m: &Module, s: &SubSet) -> Submodule {
    Submodule::trusted(m, span(m, s))
}

pub(crate) fn span(m: &Module, s: &SubSet) -> SubSet {
    let mut gens = SubSet::empty(m.order());
    for x in s.iter() {
        gens.union_with(&cyclic(m, x));
    }
    additive_span(m.order(), m.zero(), |a, b| m.add(a, b), gens.iter())
}

pub fn submodule_sum(m: &Module, a: &SubSet, b: &SubSet) -> SubSet {
    subgroup_sum(m.order(), a, b, &|x, y| m.add(x, y))
}

pub fn enumerate_submodules(m: &Module) -> Result<Vec<Submodule>> {
    enumerate_submodules_within(m, MODULE_LATTICE_BOUND)
}

pub fn enumerate_submodules_within(m: &Module, bound: usize) -> Result<Vec<Submodule>> {
    let lat = SubmoduleLattice::within(&Arc::new(m.clone()), bound)?;
    Ok(lat.subs.into_iter().map(|s| Submodule::trusted(m, s)).collect())
}

/// The submodule lattice, sorted by (cardinality, members).
#[derive(Debug, Clone)]
pub struct SubmoduleLattice {
    module: Arc<Module>,
    subs: Vec<SubSet>,
    index: HashMap<SubSet, usize>,
    /// cyclic[x] = index of Rx
    cyclic: Vec<usize>,
}

impl SubmoduleLattice {
    pub fn new(m: &Module) -> Result<Self> {
        Self::within(&Arc::new(m.clone()), MODULE_LATTICE_BOUND)
    }

    pub fn of(m: &Arc<Module>) -> Result<Self> {
        Self::within(m, MODULE_LATTICE_BOUND)
    }

    /// Cyclic submodules Rx for every x, closed under joins with cyclic
    /// submodules. Every submodule is the sum of the cyclic submodules of
    /// its elements, so this reaches the whole lattice.
    pub fn within(m: &Arc<Module>, bound: usize) -> Result<Self> {
        if m.order() > bound {
            return Err(Error::SizeLimit {
                what: format!("submodule lattice of {}", m.label()),
                order: m.order(),
                bound,
            });
        }
        let atoms: Vec<SubSet> = m.elements().map(|x| cyclic(m, x)).collect();
        let subs = join_closure(SubSet::singleton(m.order(), m.zero()), &atoms, |s, a| submodule_sum(m, s, a));
        let index: HashMap<SubSet, usize> = subs.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let cyclic = atoms.iter().map(|a| index[a]).collect();
        Ok(SubmoduleLattice {
            module: m.clone(),
            subs,
            index,
            cyclic,
        })
    }

    pub fn module(&self) -> &Arc<Module> {
        &self.module
    }
    pub fn submodules(&self) -> &[SubSet] {
        &self.subs
    }
    pub fn len(&self) -> usize {
        self.subs.len()
    }
    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }
    pub fn get(&self, i: usize) -> &SubSet {
        &self.subs[i]
    }
    pub fn index_of(&self, s: &SubSet) -> Option<usize> {
        self.index.get(s).copied()
    }
    pub fn cyclic(&self, x: usize) -> usize {
        self.cyclic[x]
    }
    pub fn zero_index(&self) -> usize {
        0
    }
    pub fn full_index(&self) -> usize {
        self.subs.len() - 1
    }

    /// Index of a set that must be a submodule.
    pub fn require(&self, s: &SubSet) -> Result<usize> {
        self.index_of(s)
            .ok_or_else(|| Error::Inconsistency(format!("{s} is not in the submodule lattice of {}", self.module.label())))
    }

    /// Pairs (lower, upper) where upper covers lower.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.subs.len();
        let mut edges = vec![];
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.subs[i].is_subset(&self.subs[j]) || self.subs[i] == self.subs[j] {
                    continue;
                }
                let between = (0..n).any(|k| {
                    k != i
                        && k != j
                        && self.subs[i].is_subset(&self.subs[k])
                        && self.subs[k].is_subset(&self.subs[j])
                });
                if !between {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// A generating list: scanning elements in increasing order, keep each
    /// one not already in the span of those kept.
    pub fn generators(&self, i: usize) -> Vec<usize> {
        let target = &self.subs[i];
        let mut cur = self.subs[0].clone();
        let mut gens = vec![];
        for x in target.iter() {
            if cur.contains(x) {
                continue;
            }
            gens.push(x);
            cur = submodule_sum(&self.module, &cur, &self.subs[self.cyclic[x]]);
            if cur == *target {
                break;
            }
        }
        gens
    }
}

/// (P:S) = { r ∈ R : rS ⊆ P }. Not a two-sided ideal in general.
pub fn colon(m: &Module, p: &Submodule, s: &SubSet) -> Result<SubSet> {
    p.check_module(m)?;
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(colon_set(m, p.members(), s))
}

pub(crate) fn colon_set(m: &Module, p: &SubSet, s: &SubSet) -> SubSet {
    SubSet::from_indices(
        m.ring().order(),
        m.ring().elements().filter(|&r| s.iter().all(|x| p.contains(m.act(r, x)))),
    )
}

/// AN: additive closure of { a·n : a ∈ A, n ∈ N }.
pub fn ideal_submodule_product(m: &Module, a: &Ideal, n: &Submodule) -> Result<Submodule> {
    a.check_ring(m.ring())?;
    n.check_module(m)?;
    Ok(Submodule::trusted(m, product_set(m, a.members(), n.members())))
}

pub(crate) fn product_set(m: &Module, a: &SubSet, n: &SubSet) -> SubSet {
    let mut prods = SubSet::empty(m.order());
    for x in a.iter() {
        for y in n.iter() {
            prods.insert(m.act(x, y));
        }
    }
    // A two-sided ideal makes this action-closed already; close anyway.
    span(m, &prods)
}

/// Submodule generated by h(N).
pub fn hom_image(h: &ModuleHom, n: &Submodule) -> Result<Submodule> {
    n.check_module(h.source())?;
    let t = h.target();
    let raw = SubSet::from_indices(t.order(), n.members().iter().map(|x| h.apply(x)));
    let closed = span(t, &raw);
    if h.is_surjective() && closed != raw {
        return Err(Error::Inconsistency("image of a submodule under an epimorphism was not closed".into()));
    }
    Ok(Submodule::trusted(t, closed))
}

/// h⁻¹(N').
pub fn hom_preimage(h: &ModuleHom, n: &Submodule) -> Result<Submodule> {
    n.check_module(h.target())?;
    let s = h.source();
    Ok(Submodule::trusted(
        s,
        SubSet::from_indices(s.order(), s.elements().filter(|&x| n.members().contains(h.apply(x)))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{column_module, free_module, quotient_module, regular_module};
    use crate::ring::{make_cyclic_ring, make_matrix_ring};

    fn set(n: usize, v: &[usize]) -> SubSet {
        SubSet::from_indices(n, v.iter().copied())
    }

    fn brute_submodules(m: &Module) -> Vec<SubSet> {
        let n = m.order();
        let mut out: Vec<SubSet> = (0u64..1 << n)
            .map(|bits| SubSet::from_indices(n, (0..n).filter(|i| bits >> i & 1 == 1)))
            .filter(|s| check_submodule(m, s).is_ok())
            .collect();
        out.sort();
        out
    }

    fn z4_reg() -> Arc<Module> {
        Arc::new(regular_module(Arc::new(make_cyclic_ring(4).unwrap())))
    }

    fn v2() -> Arc<Module> {
        Arc::new(free_module(Arc::new(make_cyclic_ring(2).unwrap()), 2).unwrap())
    }

    #[test]
    fn generated_submodules() {
        let z4 = z4_reg();
        assert_eq!(submodule_generated(&z4, &set(4, &[2])).members(), &set(4, &[0, 2]));
        assert_eq!(submodule_generated(&z4, &set(4, &[])).members(), &set(4, &[0]));
        let v = v2();
        // e1 = (1,0) has index 2
        assert_eq!(submodule_generated(&v, &set(4, &[2])).members(), &set(4, &[0, 2]));
    }

    #[test]
    fn lattices_match_subset_scan() {
        let col = Arc::new(column_module(2, 2).unwrap());
        for (m, expected) in [(v2(), 5), (z4_reg(), 3), (col, 2)] {
            let lat = SubmoduleLattice::of(&m).unwrap();
            assert_eq!(lat.len(), expected, "{}", m.label());
            assert_eq!(lat.submodules(), brute_submodules(&m).as_slice());
        }
        let u2 = Arc::new(make_matrix_ring(2, 2, true).unwrap());
        let reg = regular_module(u2);
        assert_eq!(SubmoduleLattice::new(&reg).unwrap().submodules(), brute_submodules(&reg).as_slice());
    }

    #[test]
    fn hasse_diagram_of_v2() {
        let lat = SubmoduleLattice::of(&v2()).unwrap();
        assert_eq!(lat.hasse_edges().len(), 6);
        let zero = Arc::new(regular_module(Arc::new(make_cyclic_ring(1).unwrap())));
        let lat = SubmoduleLattice::of(&zero).unwrap();
        assert_eq!((lat.len(), lat.hasse_edges().len()), (1, 0));
    }

    #[test]
    fn generator_certificates_regenerate() {
        let m = Arc::new(free_module(Arc::new(make_cyclic_ring(4).unwrap()), 2).unwrap());
        let lat = SubmoduleLattice::of(&m).unwrap();
        for i in 0..lat.len() {
            let g = lat.generators(i);
            assert_eq!(&span(&m, &SubSet::from_indices(m.order(), g)), lat.get(i));
        }
    }

    #[test]
    fn colon_sets() {
        let z4 = z4_reg();
        let p2 = Submodule::new(&z4, set(4, &[0, 2])).unwrap();
        assert_eq!(colon(&z4, &p2, &set(4, &[1])).unwrap(), set(4, &[0, 2]));
        assert!(colon(&z4, &p2, &set(4, &[0])).unwrap().is_full());
        assert!(matches!(colon(&z4, &p2, &set(4, &[])), Err(Error::EmptySet)));
        let col = column_module(2, 2).unwrap();
        // matrices killing e1 have zero first column: entries (0,b,0,d)
        let ann = colon(&col, &Submodule::zero(&col), &set(4, &[2])).unwrap();
        assert_eq!(ann, set(16, &[0, 1, 4, 5]));
    }

    #[test]
    fn ideal_products() {
        let z4r = Arc::new(make_cyclic_ring(4).unwrap());
        let z4 = z4_reg();
        let i = Ideal::new(&z4r, set(4, &[0, 2])).unwrap();
        let whole = Submodule::whole(&z4);
        assert_eq!(ideal_submodule_product(&z4, &i, &whole).unwrap().members(), &set(4, &[0, 2]));
        assert_eq!(
            ideal_submodule_product(&z4, &Ideal::zero(&z4r), &whole).unwrap().members(),
            &set(4, &[0])
        );
        let col = column_module(2, 2).unwrap();
        let full = Ideal::whole(col.ring());
        assert!(ideal_submodule_product(&col, &full, &Submodule::whole(&col)).unwrap().members().is_full());
        let z2 = make_cyclic_ring(2).unwrap();
        assert!(matches!(
            ideal_submodule_product(&col, &Ideal::zero(&z2), &Submodule::whole(&col)),
            Err(Error::RingMismatch(_))
        ));
    }

    #[test]
    fn images_and_preimages() {
        let z4 = z4_reg();
        let p2 = Submodule::new(&z4, set(4, &[0, 2])).unwrap();
        let (q, proj) = quotient_module(&z4, p2.members()).unwrap();
        let img = hom_image(&proj, &p2).unwrap();
        assert_eq!(img.members(), &set(2, &[0]));
        let pre = hom_preimage(&proj, &Submodule::zero(&q)).unwrap();
        assert_eq!(pre, p2);
        let id = ModuleHom::identity(z4.clone());
        assert_eq!(hom_image(&id, &p2).unwrap(), p2);
    }
}
