//! Fixed-width bit sets over element indices.
//!
//! Every set of ring or module elements in the crate is a [`SubSet`]. The
//! ordering used for deterministic enumeration output is by cardinality first,
//! then by the sorted member lists compared lexicographically.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubSet {
    len: usize,
    words: Vec<u64>,
}

impl SubSet {
    pub fn empty(len: usize) -> Self {
        SubSet {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = SubSet::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        let mut s = SubSet::empty(len);
        s.insert(i);
        s
    }

    /// Builds a set from indices; indices outside the universe are ignored.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, it: I) -> Self {
        let mut s = SubSet::empty(len);
        for i in it {
            if i < len {
                s.insert(i);
            }
        }
        s
    }

    /// Size of the universe (bit width).
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.len, "index {i} outside universe of size {}", self.len);
        let w = &mut self.words[i / WORD];
        let bit = 1u64 << (i % WORD);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD] &= !(1u64 << (i % WORD));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn is_subset(&self, other: &SubSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &SubSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersect_with(&mut self, other: &SubSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &SubSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &SubSet) -> SubSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &SubSet) -> SubSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    /// First element of `self` missing from `other`.
    pub fn first_outside(&self, other: &SubSet) -> Option<usize> {
        for (k, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let d = a & !b;
            if d != 0 {
                return Some(k * WORD + d.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct Iter<'a> {
    set: &'a SubSet,
    word: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * WORD + tz);
            }
            self.word += 1;
            if self.word >= self.set.words.len() {
                return None;
            }
            self.cur = self.set.words[self.word];
        }
    }
}

impl Ord for SubSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.count().cmp(&other.count()))
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for SubSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SubSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// Serialized as `{"universe": n, "members": [..]}`.
impl Serialize for SubSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            universe: self.len,
            members: self.to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = Repr::deserialize(d)?;
        if let Some(&bad) = r.members.iter().find(|&&i| i >= r.universe) {
            return Err(serde::de::Error::custom(format!(
                "member {bad} outside universe {}",
                r.universe
            )));
        }
        Ok(SubSet::from_indices(r.universe, r.members))
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    universe: usize,
    members: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let mut s = SubSet::empty(130);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.to_vec(), vec![0, 64, 129]);
        assert_eq!(s.count(), 3);
        assert!(!s.contains(130));
        let t = SubSet::full(130);
        assert!(s.is_subset(&t));
        assert_eq!(t.first_outside(&s), Some(1));
        assert_eq!(s.first_outside(&t), None);
    }

    #[test]
    fn ordering_is_popcount_then_lex() {
        let a = SubSet::from_indices(4, [0, 3]);
        let b = SubSet::from_indices(4, [1, 2]);
        let c = SubSet::from_indices(4, [2]);
        let mut v = vec![b.clone(), a.clone(), c.clone()];
        v.sort();
        assert_eq!(v, vec![c, a, b]);
    }

    proptest! {
        #[test]
        fn serde_roundtrip(len in 1usize..200, raw in proptest::collection::vec(0usize..200, 0..40)) {
            let s = SubSet::from_indices(len, raw);
            let js = serde_json::to_string(&s).unwrap();
            let back: SubSet = serde_json::from_str(&js).unwrap();
            prop_assert_eq!(s, back);
        }

        #[test]
        fn intersection_is_subset_of_both(len in 1usize..150,
            a in proptest::collection::vec(0usize..150, 0..60),
            b in proptest::collection::vec(0usize..150, 0..60)) {
            let a = SubSet::from_indices(len, a);
            let b = SubSet::from_indices(len, b);
            let i = a.intersection(&b);
            prop_assert!(i.is_subset(&a) && i.is_subset(&b));
            let u = a.union(&b);
            prop_assert!(a.is_subset(&u) && b.is_subset(&u));
            prop_assert_eq!(i.count() + u.count(), a.count() + b.count());
        }
    }
}
