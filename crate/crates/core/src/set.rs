//! Dense bitmask subsets of a finite group.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};

type Words = SmallVec<[u64; 2]>;

/// A subset of a [`GroupSpec`]. Bit `i` of the mask is set iff element `i`
/// is a member. Iteration is in ascending index order.
#[derive(Clone)]
pub struct GSet {
    group: GroupSpec,
    words: Words,
    card: usize,
}

fn word_count(order: usize) -> usize {
    order.div_ceil(64)
}

impl GSet {
    pub fn empty(group: &GroupSpec) -> Self {
        GSet {
            group: group.clone(),
            words: smallvec![0; word_count(group.order())],
            card: 0,
        }
    }

    pub fn full(group: &GroupSpec) -> Self {
        let mut s = Self::empty(group);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.clear_tail();
        s.card = group.order();
        s
    }

    pub fn singleton(group: &GroupSpec, e: Element) -> Self {
        let mut s = Self::empty(group);
        s.insert_idx(e.index());
        s
    }

    pub fn from_indices(group: &GroupSpec, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(group);
        for i in indices {
            if i >= group.order() {
                return Err(Error::InvalidElement {
                    index: i,
                    order: group.order(),
                });
            }
            s.insert_idx(i);
        }
        Ok(s)
    }

    /// Builds a set from a single-word mask; the group order must be at most 64.
    pub fn from_mask(group: &GroupSpec, mask: u64) -> Result<Self> {
        let n = group.order();
        if n > 64 {
            return Err(Error::cap("group order for a single-word mask", n, 64));
        }
        if n < 64 && mask >> n != 0 {
            return Err(Error::InvalidElement {
                index: 63 - mask.leading_zeros() as usize,
                order: n,
            });
        }
        Ok(GSet {
            group: group.clone(),
            words: smallvec![mask],
            card: mask.count_ones() as usize,
        })
    }

    pub(crate) fn from_words(group: &GroupSpec, words: Words) -> Self {
        let card = words.iter().map(|w| w.count_ones() as usize).sum();
        GSet {
            group: group.clone(),
            words,
            card,
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The mask as a single word, when the group has order at most 64.
    pub fn mask(&self) -> Option<u64> {
        (self.words.len() == 1).then(|| self.words[0])
    }

    pub fn contains(&self, e: Element) -> bool {
        self.contains_idx(e.index())
    }

    pub(crate) fn contains_idx(&self, i: usize) -> bool {
        i < self.group.order() && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn insert_idx(&mut self, i: usize) {
        let bit = 1u64 << (i % 64);
        let w = &mut self.words[i / 64];
        if *w & bit == 0 {
            *w |= bit;
            self.card += 1;
        }
    }

    pub fn insert(&mut self, e: Element) -> Result<()> {
        if e.index() >= self.group.order() {
            return Err(Error::InvalidElement {
                index: e.index(),
                order: self.group.order(),
            });
        }
        self.insert_idx(e.index());
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.indices()
            .map(|i| self.group.element(i).expect("member index in range"))
    }

    pub(crate) fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn min(&self) -> Option<Element> {
        self.iter().next()
    }

    /// Compares masks as unsigned integers (highest element decides).
    pub fn mask_cmp(&self, other: &GSet) -> Ordering {
        self.words.iter().rev().cmp(other.words.iter().rev())
    }

    fn same_group(&self, other: &GSet) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                left: self.group.to_string(),
                right: other.group.to_string(),
            })
        }
    }

    fn zip_words(&self, other: &GSet, f: impl Fn(u64, u64) -> u64) -> Result<GSet> {
        self.same_group(other)?;
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(GSet::from_words(&self.group, words))
    }

    pub fn union(&self, other: &GSet) -> Result<GSet> {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &GSet) -> Result<GSet> {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &GSet) -> Result<GSet> {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &GSet) -> Result<bool> {
        self.same_group(other)?;
        Ok(self.words.iter().zip(other.words.iter()).all(|(&a, &b)| a & !b == 0))
    }

    pub fn is_disjoint(&self, other: &GSet) -> Result<bool> {
        self.same_group(other)?;
        Ok(self.words.iter().zip(other.words.iter()).all(|(&a, &b)| a & b == 0))
    }

    /// `self + t`.
    pub fn translate_by(&self, t: Element) -> Result<GSet> {
        self.group.element(t.index())?;
        Ok(self.translate(t.index()))
    }

    pub(crate) fn translate(&self, t: usize) -> GSet {
        if t == 0 {
            return self.clone();
        }
        if self.group.is_cyclic_layout() {
            return GSet::from_words(&self.group, rotate_left(&self.words, self.group.order(), t));
        }
        let mut out = GSet::empty(&self.group);
        for i in self.indices() {
            out.insert_idx(self.group.add_idx(i, t));
        }
        out
    }

    /// `-self`.
    pub fn negate(&self) -> GSet {
        let mut out = GSet::empty(&self.group);
        for i in self.indices() {
            out.insert_idx(self.group.neg_idx(i));
        }
        out
    }

    /// `{k * a : a in self}`.
    pub fn dilate(&self, k: u64) -> GSet {
        let mut out = GSet::empty(&self.group);
        for i in self.indices() {
            out.insert_idx(self.group.scale_idx(i, k));
        }
        out
    }

    pub(crate) fn or_assign(&mut self, other: &[u64]) {
        for (a, &b) in self.words.iter_mut().zip(other) {
            *a |= b;
        }
        self.card = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    fn clear_tail(&mut self) {
        let n = self.group.order();
        if !n.is_multiple_of(64) {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << (n % 64)) - 1;
        }
    }
}

/// Rotates an `n`-bit multiword mask left by `s` positions (`0 < s < n`).
pub(crate) fn rotate_left(words: &[u64], n: usize, s: usize) -> Words {
    let s = s % n;
    if s == 0 {
        return words.into();
    }
    if n <= 64 {
        let x = words[0];
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let r = ((x << s) | (x >> (n - s))) & full;
        return smallvec![r];
    }
    let mut out: Words = smallvec![0; words.len()];
    shl_or(words, s, n, &mut out);
    shr_or(words, n - s, &mut out);
    out
}

fn shl_or(words: &[u64], s: usize, n: usize, out: &mut [u64]) {
    let (ws, bs) = (s / 64, s % 64);
    for i in (ws..words.len()).rev() {
        let mut v = words[i - ws] << bs;
        if bs > 0 && i > ws {
            v |= words[i - ws - 1] >> (64 - bs);
        }
        out[i] |= v;
    }
    if !n.is_multiple_of(64) {
        let last = out.len() - 1;
        out[last] &= (1u64 << (n % 64)) - 1;
    }
}

fn shr_or(words: &[u64], s: usize, out: &mut [u64]) {
    let (ws, bs) = (s / 64, s % 64);
    for i in 0..words.len().saturating_sub(ws) {
        let mut v = words[i + ws] >> bs;
        if bs > 0 && i + ws + 1 < words.len() {
            v |= words[i + ws + 1] << (64 - bs);
        }
        out[i] |= v;
    }
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.words == other.words
    }
}

impl Eq for GSet {}

impl Hash for GSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.group.hash(state);
        self.words.hash(state);
    }
}

impl fmt::Display for GSet {
    /// Set literal form, e.g. `0,1,3@Z8`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "@{}", self.group)
    }
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    #[test]
    fn basic_membership() {
        let g = z(10);
        let s = GSet::from_indices(&g, [3, 1, 3, 7]).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.iter().map(Element::index).collect::<Vec<_>>(), vec![1, 3, 7]);
        assert_eq!(s.min().unwrap().index(), 1);
        assert_eq!(s.mask(), Some(0b1000_1010));
        assert!(GSet::from_indices(&g, [10]).is_err());
        assert_eq!(GSet::full(&g).len(), 10);
        assert_eq!(s.to_string(), "1,3,7@Z10");
    }

    #[test]
    fn mask_order_matches_integer_order() {
        let g = z(100);
        let a = GSet::from_indices(&g, [0, 80]).unwrap();
        let b = GSet::from_indices(&g, [79, 1, 2]).unwrap();
        assert_eq!(a.mask_cmp(&b), Ordering::Greater);
    }

    #[test]
    fn group_mismatch() {
        let a = GSet::full(&z(4));
        let b = GSet::full(&GroupSpec::new(&[2, 2]).unwrap());
        assert!(matches!(a.union(&b), Err(Error::GroupMismatch { .. })));
    }

    #[test]
    fn from_mask_rejects_stray_bits() {
        assert!(GSet::from_mask(&z(4), 0b10000).is_err());
        assert!(GSet::from_mask(&z(70), 1).is_err());
        assert_eq!(GSet::from_mask(&z(64), u64::MAX).unwrap().len(), 64);
    }

    fn naive_translate(s: &GSet, t: usize) -> GSet {
        let g = s.group();
        GSet::from_indices(g, s.indices().map(|i| g.add_idx(i, t))).unwrap()
    }

    proptest! {
        #[test]
        fn rotation_matches_pointwise_translation(
            n in 1usize..200,
            raw in proptest::collection::vec(0usize..200, 0..20),
            t in 0usize..200,
        ) {
            let g = GroupSpec::cyclic(n as u64).unwrap();
            let s = GSet::from_indices(&g, raw.into_iter().map(|x| x % n)).unwrap();
            let t = t % n;
            prop_assert_eq!(s.translate(t), naive_translate(&s, t));
        }

        #[test]
        fn product_translation_is_a_bijection(
            raw in proptest::collection::vec(0usize..24, 0..10),
            t in 0usize..24,
        ) {
            let g = GroupSpec::new(&[2, 3, 4]).unwrap();
            let s = GSet::from_indices(&g, raw).unwrap();
            let moved = s.translate(t);
            prop_assert_eq!(moved.len(), s.len());
            prop_assert_eq!(moved.translate(g.neg_idx(t)), s);
        }
    }
}
