//! Additive spans and join closures shared by ideal and submodule lattices.

use std::collections::{HashSet, VecDeque};

use crate::subset::SubSet;

/// Subgroup generated by `gens` in the abelian group `(0..n, add)`.
///
/// Each generator is folded in by adding all of its multiples to the current
/// subgroup; since the group is finite and abelian, H + <g> is again a
/// subgroup and the result is the full span.
pub fn additive_span<A, I>(n: usize, zero: usize, add: A, gens: I) -> SubSet
where
    A: Fn(usize, usize) -> usize,
    I: IntoIterator<Item = usize>,
{
    let mut span = SubSet::singleton(n, zero);
    for g in gens {
        if span.contains(g) {
            continue;
        }
        let mut multiples = vec![];
        let mut c = g;
        while c != zero {
            multiples.push(c);
            c = add(c, g);
        }
        span = subgroup_sum(n, &span, &SubSet::from_indices(n, multiples), &add);
    }
    span
}

/// { a + b : a in `a`, b in `b` } for subgroups `a`, `b`.
pub fn subgroup_sum<A>(_n: usize, a: &SubSet, b: &SubSet, add: &A) -> SubSet
where
    A: Fn(usize, usize) -> usize,
{
    let mut out = a.clone();
    let bs: Vec<usize> = b.iter().collect();
    for x in a.iter() {
        for &y in &bs {
            out.insert(add(x, y));
        }
    }
    out
}

/// Every join of the given atoms (plus the bottom element), computed by
/// repeatedly joining lattice members with atoms until no new set appears.
///
/// Every element of a lattice of subgroups closed under the relevant action
/// is a join of cyclic (or principal) atoms, so the result is the whole
/// lattice. Output is sorted by cardinality, then lexicographically.
pub fn join_closure<J>(bottom: SubSet, atoms: &[SubSet], join: J) -> Vec<SubSet>
where
    J: Fn(&SubSet, &SubSet) -> SubSet,
{
    let mut atoms: Vec<SubSet> = atoms.to_vec();
    atoms.sort();
    atoms.dedup();
    let mut seen: HashSet<SubSet> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(bottom.clone());
    queue.push_back(bottom);
    for a in &atoms {
        if seen.insert(a.clone()) {
            queue.push_back(a.clone());
        }
    }
    while let Some(s) = queue.pop_front() {
        for a in &atoms {
            if a.is_subset(&s) {
                continue;
            }
            let t = join(&s, a);
            if !seen.contains(&t) {
                seen.insert(t.clone());
                queue.push_back(t);
            }
        }
    }
    let mut out: Vec<SubSet> = seen.into_iter().collect();
    out.sort();
    out
}
