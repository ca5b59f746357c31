//! Finite left unital modules given by an addition table and an action table.

use std::fmt;
use std::sync::Arc;

use crate::error::{Axiom, Error, Result};
use crate::ring::{coset_partition, fingerprint, MatrixLayout, Ring, MAX_TABLE_ORDER};
use crate::subset::SubSet;

/// Default bound on module order for table arithmetic.
pub const MODULE_ORDER_BOUND: usize = 4096;

#[derive(Clone)]
pub struct Module {
    ring: Arc<Ring>,
    order: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
    zero: usize,
    /// act[r * order + m] = r·m
    act: Vec<u16>,
    label: String,
    free_rank: Option<usize>,
    fingerprint: u64,
}

/// Raw tables for a user-supplied module.
#[derive(Debug, Clone)]
pub struct ModuleTables {
    pub add: Vec<Vec<usize>>,
    /// act[r][m] = r·m
    pub act: Vec<Vec<usize>>,
    pub zero: Option<usize>,
    pub label: String,
}

impl Module {
    /// Checks the abelian group axioms and every action axiom.
    pub fn validate(ring: Arc<Ring>, t: ModuleTables) -> Result<Module> {
        let n = t.add.len();
        if n == 0 || n > MAX_TABLE_ORDER {
            return Err(Axiom::TableShape(format!("module order {n} not supported")).into());
        }
        let nr = ring.order();
        if t.act.len() != nr {
            return Err(Axiom::TableShape(format!("action table has {} rows, ring has {nr} elements", t.act.len())).into());
        }
        let mut add = Vec::with_capacity(n * n);
        for (i, row) in t.add.iter().enumerate() {
            if row.len() != n {
                return Err(Axiom::TableShape(format!("addition row {i} has {} entries", row.len())).into());
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Axiom::EntryOutOfRange { row: i, col: j, value: v }.into());
                }
                add.push(v as u16);
            }
        }
        let mut act = Vec::with_capacity(nr * n);
        for (i, row) in t.act.iter().enumerate() {
            if row.len() != n {
                return Err(Axiom::TableShape(format!("action row {i} has {} entries", row.len())).into());
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Axiom::EntryOutOfRange { row: i, col: j, value: v }.into());
                }
                act.push(v as u16);
            }
        }
        let a = |x: usize, y: usize| add[x * n + y] as usize;
        let zero = match t.zero {
            Some(z) if z < n && (0..n).all(|x| a(z, x) == x && a(x, z) == x) => z,
            Some(_) => return Err(Axiom::NoZero.into()),
            None => (0..n)
                .find(|&z| (0..n).all(|x| a(z, x) == x && a(x, z) == x))
                .ok_or(Error::Axiom(Axiom::NoZero))?,
        };
        let neg = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| a(x, y) == zero)
                    .map(|y| y as u16)
                    .ok_or(Error::Axiom(Axiom::NoNegative(x)))
            })
            .collect::<Result<Vec<u16>>>()?;
        let m = Module::from_parts(ring, n, add, neg, zero, act, t.label, None);
        m.check_axioms()?;
        Ok(m)
    }

    #[allow(clippy::too_many_arguments)]
    fn from_parts(
        ring: Arc<Ring>,
        order: usize,
        add: Vec<u16>,
        neg: Vec<u16>,
        zero: usize,
        act: Vec<u16>,
        label: String,
        free_rank: Option<usize>,
    ) -> Module {
        let fingerprint = fingerprint(&[&add, &act], &[ring.fingerprint(), order as u64, zero as u64]);
        Module {
            ring,
            order,
            add,
            neg,
            zero,
            act,
            label,
            free_rank,
            fingerprint,
        }
    }

    /// Builds from closures; the caller guarantees the module axioms.
    fn from_fns(
        ring: Arc<Ring>,
        order: usize,
        zero: usize,
        add: impl Fn(usize, usize) -> usize,
        act: impl Fn(usize, usize) -> usize,
        label: String,
        free_rank: Option<usize>,
    ) -> Module {
        let mut at = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                at.push(add(x, y) as u16);
            }
        }
        let mut neg = vec![0u16; order];
        for x in 0..order {
            neg[x] = (0..order).find(|&y| at[x * order + y] as usize == zero).expect("group inverse") as u16;
        }
        let mut ac = Vec::with_capacity(ring.order() * order);
        for r in ring.elements() {
            for m in 0..order {
                ac.push(act(r, m) as u16);
            }
        }
        let m = Module::from_parts(ring, order, at, neg, zero, ac, label, free_rank);
        debug_assert!(m.order > 64 || m.check_axioms().is_ok(), "{} violates module axioms", m.label);
        m
    }

    /// Abelian group axioms (other than the identity and inverses, which
    /// are established at construction) and the four action axioms.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        let r = &*self.ring;
        for x in 0..n {
            for y in 0..n {
                if self.add(x, y) != self.add(y, x) {
                    return Err(Axiom::AddCommutativity(x, y).into());
                }
                let xy = self.add(x, y);
                for z in 0..n {
                    if self.add(xy, z) != self.add(x, self.add(y, z)) {
                        return Err(Axiom::AddAssociativity(x, y, z).into());
                    }
                }
            }
        }
        for a in r.elements() {
            for x in 0..n {
                for y in 0..n {
                    if self.act(a, self.add(x, y)) != self.add(self.act(a, x), self.act(a, y)) {
                        return Err(Axiom::ActionAdditive(a, x, y).into());
                    }
                }
            }
            for b in r.elements() {
                for x in 0..n {
                    if self.act(r.add(a, b), x) != self.add(self.act(a, x), self.act(b, x)) {
                        return Err(Axiom::ActionDistributive(a, b, x).into());
                    }
                    if self.act(r.mul(a, b), x) != self.act(a, self.act(b, x)) {
                        return Err(Axiom::ActionAssociative(a, b, x).into());
                    }
                }
            }
        }
        for x in 0..n {
            if self.act(r.one(), x) != x {
                return Err(Axiom::ActionUnital(x).into());
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }
    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }
    #[inline]
    pub fn zero(&self) -> usize {
        self.zero
    }
    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
    /// Rank when the module was built as a free module (regular modules
    /// have rank 1).
    pub fn free_rank(&self) -> Option<usize> {
        self.free_rank
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }
    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }
    #[inline]
    pub fn act(&self, r: usize, m: usize) -> usize {
        self.act[r * self.order + m] as usize
    }
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|i| (0..self.order).map(|j| self.add(i, j)).collect()).collect()
    }

    pub fn act_table(&self) -> Vec<Vec<usize>> {
        self.ring.elements().map(|r| (0..self.order).map(|m| self.act(r, m)).collect()).collect()
    }

    pub fn same_ring(&self, other: &Module) -> bool {
        self.ring.fingerprint() == other.ring.fingerprint()
    }

    /// a·S = { a·x : x ∈ S }
    pub fn act_set(&self, a: usize, s: &SubSet) -> SubSet {
        SubSet::from_indices(self.order, s.iter().map(|x| self.act(a, x)))
    }

    /// The submodule `s` re-packaged as a module in its own right, together
    /// with the inclusion homomorphism. Elements keep their relative order.
    pub fn restrict(self: &Arc<Self>, s: &SubSet) -> Result<(Arc<Module>, ModuleHom)> {
        crate::lattice::check_submodule(self, s)?;
        let elems: Vec<usize> = s.iter().collect();
        let mut pos = vec![usize::MAX; self.order];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i;
        }
        let sub = Module::from_fns(
            self.ring.clone(),
            elems.len(),
            pos[self.zero],
            |x, y| pos[self.add(elems[x], elems[y])],
            |r, x| pos[self.act(r, elems[x])],
            format!("{}|{}", self.label, s),
            None,
        );
        let sub = Arc::new(sub);
        let inclusion = ModuleHom {
            source: sub.clone(),
            target: self.clone(),
            map: elems,
            surjective: s.is_full(),
        };
        Ok((sub, inclusion))
    }
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module({}, order {} over {})", self.label, self.order, self.ring.label())
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.zero == other.zero && self.add == other.add && self.act == other.act
    }
}
impl Eq for Module {}

/// R as a left module over itself.
pub fn regular_module(r: Arc<Ring>) -> Module {
    let n = r.order();
    let label = format!("{}^reg", r.label());
    let rr = r.clone();
    let ra = r.clone();
    Module::from_fns(r, n, rr.zero(), move |a, b| rr.add(a, b), move |x, m| ra.mul(x, m), label, Some(1))
}

/// R^k with componentwise structure; tuples are indexed in base |R| with
/// the first coordinate most significant.
pub fn free_module(r: Arc<Ring>, k: usize) -> Result<Module> {
    free_module_within(r, k, MODULE_ORDER_BOUND)
}

pub fn free_module_within(r: Arc<Ring>, k: usize, bound: usize) -> Result<Module> {
    if k == 0 {
        return Err(Error::InvalidParameter("free module rank must be >= 1".into()));
    }
    let label = format!("{}^{k}", r.label());
    let n = r.order();
    let order = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if order > bound as u128 {
        return Err(Error::SizeLimit {
            what: label,
            order: order.min(usize::MAX as u128) as usize,
            bound,
        });
    }
    let order = order as usize;
    let tuple = FreeCoords { base: n, rank: k };
    let ra = r.clone();
    let rm = r.clone();
    let zero = tuple.encode(&vec![r.zero(); k]);
    Ok(Module::from_fns(
        r,
        order,
        zero,
        move |a, b| {
            let (x, y) = (tuple.decode(a), tuple.decode(b));
            tuple.encode(&x.iter().zip(&y).map(|(&u, &v)| ra.add(u, v)).collect::<Vec<_>>())
        },
        move |s, a| tuple.encode(&tuple.decode(a).iter().map(|&u| rm.mul(s, u)).collect::<Vec<_>>()),
        label,
        Some(k),
    ))
}

/// Coordinates of an element of R^k.
#[derive(Debug, Clone, Copy)]
pub struct FreeCoords {
    pub base: usize,
    pub rank: usize,
}

impl FreeCoords {
    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.rank];
        for slot in out.iter_mut().rev() {
            *slot = idx % self.base;
            idx /= self.base;
        }
        out
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &c| acc * self.base + c)
    }
}

/// Column vectors F_p^k as a left module over M_k(F_p); vectors are indexed
/// in base p with the first coordinate most significant, so over F_2 with
/// k = 2, e1 = 2 and e2 = 1.
pub fn column_module(p: usize, k: usize) -> Result<Module> {
    let ring = Arc::new(crate::ring::make_matrix_ring(p, k, false)?);
    let layout = MatrixLayout::new(p, k, false);
    let vecs = FreeCoords { base: p, rank: k };
    let order = p.pow(k as u32);
    let label = format!("F_{p}^{k}(col)");
    Ok(Module::from_fns(
        ring.clone(),
        order,
        0,
        move |a, b| {
            let (x, y) = (vecs.decode(a), vecs.decode(b));
            vecs.encode(&x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect::<Vec<_>>())
        },
        move |r, v| {
            let mat = layout.decode(r);
            let x = vecs.decode(v);
            let y: Vec<usize> = (0..k).map(|i| (0..k).map(|j| mat[i * k + j] * x[j]).sum::<usize>() % p).collect();
            vecs.encode(&y)
        },
        label,
        None,
    ))
}

/// A module homomorphism given by its values on every element.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    source: Arc<Module>,
    target: Arc<Module>,
    map: Vec<usize>,
    surjective: bool,
}

impl ModuleHom {
    /// Checks additivity and equivariance on all pairs.
    pub fn new(source: Arc<Module>, target: Arc<Module>, map: Vec<usize>) -> Result<ModuleHom> {
        if !source.same_ring(&target) {
            return Err(Error::RingMismatch("homomorphism between modules over different rings".into()));
        }
        if map.len() != source.order() || map.iter().any(|&y| y >= target.order()) {
            return Err(Error::NotHomomorphism("map has the wrong shape".into()));
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.add(x, y)] != target.add(map[x], map[y]) {
                    return Err(Error::NotHomomorphism(format!("not additive at ({x},{y})")));
                }
            }
            for r in source.ring().elements() {
                if map[source.act(r, x)] != target.act(r, map[x]) {
                    return Err(Error::NotHomomorphism(format!("not equivariant at (r={r},m={x})")));
                }
            }
        }
        let mut hit = SubSet::empty(target.order());
        for &y in &map {
            hit.insert(y);
        }
        Ok(ModuleHom {
            source,
            target,
            map,
            surjective: hit.is_full(),
        })
    }

    pub fn identity(m: Arc<Module>) -> ModuleHom {
        let map = m.elements().collect();
        ModuleHom {
            source: m.clone(),
            target: m,
            map,
            surjective: true,
        }
    }

    /// The endomorphism of R^k given by right multiplication with a k x k
    /// matrix A over R: (m_1..m_k) -> (Σ_i m_i a_{i1}, ..., Σ_i m_i a_{ik}).
    pub fn free_matrix(free: Arc<Module>, matrix: &[Vec<usize>]) -> Result<ModuleHom> {
        let k = free
            .free_rank()
            .ok_or_else(|| Error::InvalidParameter(format!("{} is not a free module", free.label())))?;
        let r = free.ring().clone();
        if matrix.len() != k || matrix.iter().any(|row| row.len() != k || row.iter().any(|&v| v >= r.order())) {
            return Err(Error::InvalidParameter(format!("expected a {k}x{k} matrix over {}", r.label())));
        }
        let coords = FreeCoords { base: r.order(), rank: k };
        let map = free
            .elements()
            .map(|x| {
                let m = coords.decode(x);
                let y: Vec<usize> = (0..k)
                    .map(|j| (0..k).fold(r.zero(), |acc, i| r.add(acc, r.mul(m[i], matrix[i][j]))))
                    .collect();
                coords.encode(&y)
            })
            .collect();
        ModuleHom::new(free.clone(), free, map)
    }

    pub fn source(&self) -> &Arc<Module> {
        &self.source
    }
    pub fn target(&self) -> &Arc<Module> {
        &self.target
    }
    pub fn map(&self) -> &[usize] {
        &self.map
    }
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn kernel(&self) -> SubSet {
        SubSet::from_indices(
            self.source.order(),
            self.source.elements().filter(|&x| self.map[x] == self.target.zero()),
        )
    }
}

/// M/N with the canonical projection. Cosets are numbered by increasing
/// minimal representative.
pub fn quotient_module(m: &Arc<Module>, n: &SubSet) -> Result<(Arc<Module>, ModuleHom)> {
    crate::lattice::check_submodule(m, n)?;
    let members: Vec<usize> = n.iter().collect();
    let (map, reps) = coset_partition(m.order(), |x| members.iter().map(move |&y| m.add(x, y)));
    let q = Module::from_fns(
        m.ring().clone(),
        reps.len(),
        map[m.zero()],
        |x, y| map[m.add(reps[x], reps[y])],
        |r, x| map[m.act(r, reps[x])],
        format!("{}/{}", m.label(), n),
        None,
    );
    let q = Arc::new(q);
    let proj = ModuleHom {
        source: m.clone(),
        target: q.clone(),
        map,
        surjective: true,
    };
    Ok((q, proj))
}

/// Image of an idempotent endomorphism of a free module, as a standalone
/// module (a direct summand, hence projective) plus its inclusion.
pub fn idempotent_image(m: &Arc<Module>, e: &ModuleHom) -> Result<(Arc<Module>, ModuleHom)> {
    if m.free_rank().is_none() {
        return Err(Error::InvalidParameter(format!("{} is not a free module", m.label())));
    }
    if **e.source() != **m || **e.target() != **m {
        return Err(Error::DomainMismatch("idempotent must be an endomorphism of the given module".into()));
    }
    if let Some(x) = m.elements().find(|&x| e.apply(e.apply(x)) != e.apply(x)) {
        return Err(Error::NotIdempotent(x));
    }
    let image = SubSet::from_indices(m.order(), m.elements().map(|x| e.apply(x)));
    let (sub, inc) = m.restrict(&image)?;
    let mut sub = Arc::try_unwrap(sub).unwrap_or_else(|a| (*a).clone());
    sub.set_label(format!("im({})", m.label()));
    let sub = Arc::new(sub);
    let inc = ModuleHom {
        source: sub.clone(),
        ..inc
    };
    Ok((sub, inc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_cyclic_ring, make_matrix_ring};

    #[test]
    fn constructors() {
        let z4 = Arc::new(make_cyclic_ring(4).unwrap());
        let reg = regular_module(z4.clone());
        assert_eq!(reg.order(), 4);
        reg.check_axioms().unwrap();
        let f = free_module(z4.clone(), 2).unwrap();
        assert_eq!(f.order(), 16);
        f.check_axioms().unwrap();
        let f1 = free_module(z4.clone(), 1).unwrap();
        assert_eq!(f1, reg);

        let m = Arc::new(make_matrix_ring(2, 2, false).unwrap());
        assert_eq!(regular_module(m).order(), 16);
        let col = column_module(2, 2).unwrap();
        assert_eq!(col.order(), 4);
        col.check_axioms().unwrap();
        // E12 e2 = e1
        assert_eq!(col.act(4, 1), 2);
        assert_eq!(column_module(3, 2).unwrap().order(), 9);
        let c1 = column_module(2, 1).unwrap();
        assert_eq!(c1, regular_module(Arc::new(make_cyclic_ring(2).unwrap())));

        let zero = regular_module(Arc::new(make_cyclic_ring(1).unwrap()));
        assert_eq!(zero.order(), 1);
        assert!(matches!(free_module(z4, 7), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn table_validation() {
        let z2 = Arc::new(make_cyclic_ring(2).unwrap());
        let reg = regular_module(z2.clone());
        let ok = Module::validate(
            z2.clone(),
            ModuleTables {
                add: reg.add_table(),
                act: reg.act_table(),
                zero: None,
                label: "x".into(),
            },
        )
        .unwrap();
        assert_eq!(ok, reg);
        // 1·m = 0 breaks unitality
        let err = Module::validate(
            z2,
            ModuleTables {
                add: reg.add_table(),
                act: vec![vec![0, 0], vec![0, 0]],
                zero: None,
                label: "x".into(),
            },
        );
        assert!(matches!(err, Err(Error::Axiom(Axiom::ActionUnital(1)))));
    }

    #[test]
    fn quotients_and_projection() {
        let z4 = Arc::new(make_cyclic_ring(4).unwrap());
        let reg = Arc::new(regular_module(z4));
        let p2 = SubSet::from_indices(4, [0, 2]);
        let (q, proj) = quotient_module(&reg, &p2).unwrap();
        assert_eq!(q.order(), 2);
        q.check_axioms().unwrap();
        assert!(proj.is_surjective());
        assert_eq!(proj.kernel(), p2);
        ModuleHom::new(proj.source().clone(), proj.target().clone(), proj.map().to_vec()).unwrap();

        let (same, id) = quotient_module(&reg, &SubSet::singleton(4, 0)).unwrap();
        assert_eq!(same.order(), 4);
        assert_eq!(id.map(), &[0, 1, 2, 3]);
        let (zero, _) = quotient_module(&reg, &SubSet::full(4)).unwrap();
        assert_eq!(zero.order(), 1);
        assert!(quotient_module(&reg, &SubSet::from_indices(4, [0, 1])).is_err());
    }

    #[test]
    fn idempotent_images() {
        let f2 = Arc::new(make_cyclic_ring(2).unwrap());
        let v2 = Arc::new(free_module(f2, 2).unwrap());
        let id = ModuleHom::identity(v2.clone());
        let (img, _) = idempotent_image(&v2, &id).unwrap();
        assert_eq!(img.order(), 4);
        let zero = ModuleHom::free_matrix(v2.clone(), &[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(idempotent_image(&v2, &zero).unwrap().0.order(), 1);

        let z4 = Arc::new(make_cyclic_ring(4).unwrap());
        let f = Arc::new(free_module(z4.clone(), 2).unwrap());
        let e = ModuleHom::free_matrix(f.clone(), &[vec![1, 0], vec![0, 0]]).unwrap();
        let (img, inc) = idempotent_image(&f, &e).unwrap();
        // image is {(x, 0)}: indices 0, 4, 8, 12, isomorphic to Z_4 via x -> 4x
        assert_eq!(inc.map(), &[0, 4, 8, 12]);
        let reg = regular_module(z4);
        assert_eq!(img.add_table(), reg.add_table());
        assert_eq!(img.act_table(), reg.act_table());

        let not_idem = ModuleHom::free_matrix(f.clone(), &[vec![2, 0], vec![0, 0]]).unwrap();
        assert!(matches!(idempotent_image(&f, &not_idem), Err(Error::NotIdempotent(_))));
    }
}
