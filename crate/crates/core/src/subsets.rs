//! Subset enumeration helpers: Gray-code walks and an incremental `|A + X|`
//! counter.

use crate::group::GroupSpec;
use crate::set::GSet;

/// Tracks `|A + X|` while `X` gains and loses single elements.
pub(crate) struct SumCounter<'a> {
    group: &'a GroupSpec,
    a: Vec<usize>,
    counts: Vec<u32>,
    distinct: usize,
}

impl<'a> SumCounter<'a> {
    pub fn new(a: &'a GSet) -> Self {
        SumCounter {
            group: a.group(),
            a: a.indices().collect(),
            counts: vec![0; a.group().order()],
            distinct: 0,
        }
    }

    pub fn add(&mut self, x: usize) {
        for &t in &self.a {
            let z = self.group.add_idx(x, t);
            if self.counts[z] == 0 {
                self.distinct += 1;
            }
            self.counts[z] += 1;
        }
    }

    pub fn remove(&mut self, x: usize) {
        for &t in &self.a {
            let z = self.group.add_idx(x, t);
            self.counts[z] -= 1;
            if self.counts[z] == 0 {
                self.distinct -= 1;
            }
        }
    }

    pub fn size(&self) -> usize {
        self.distinct
    }
}

/// Walks all `2^bits` masks in reflected Gray-code order starting from 0.
/// `step(mask, change)` sees each mask once; `change` is the position that
/// flipped to reach it and whether it is now present (`None` for mask 0).
pub(crate) fn gray_walk(bits: usize, mut step: impl FnMut(u64, Option<(usize, bool)>)) {
    step(0, None);
    let mut mask = 0u64;
    for i in 1u64..(1u64 << bits) {
        let pos = i.trailing_zeros() as usize;
        mask ^= 1 << pos;
        step(mask, Some((pos, mask >> pos & 1 == 1)));
    }
}

impl SumCounter<'_> {
    /// Applies a Gray-code change to the tracked set.
    pub fn apply(&mut self, items: &[usize], change: Option<(usize, bool)>) {
        match change {
            Some((p, true)) => self.add(items[p]),
            Some((p, false)) => self.remove(items[p]),
            None => {}
        }
    }
}

/// Builds the subset of `items` selected by position mask `mask`.
pub(crate) fn select(group: &GroupSpec, items: &[usize], mask: u64) -> GSet {
    GSet::from_indices(
        group,
        items
            .iter()
            .enumerate()
            .filter(|(p, _)| mask >> p & 1 == 1)
            .map(|(_, &i)| i),
    )
    .expect("items are members of the group")
}

/// Non-empty position masks over `bits` positions ordered by popcount, then value.
pub(crate) fn masks_by_cardinality(bits: usize) -> Vec<u64> {
    let mut v: Vec<u64> = (1u64..(1u64 << bits)).collect();
    v.sort_by_key(|&m| (m.count_ones(), m));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sumset;
    use std::collections::HashSet;

    #[test]
    fn gray_walk_visits_every_mask_once() {
        let mut seen = HashSet::new();
        let mut shadow = 0u64;
        gray_walk(6, |m, change| {
            if let Some((p, on)) = change {
                shadow ^= 1 << p;
                assert_eq!(shadow >> p & 1 == 1, on);
            }
            assert_eq!(m, shadow);
            assert!(seen.insert(m));
        });
        assert_eq!(seen.len(), 64);
    }

    #[test]
    fn counter_tracks_sumset_size() {
        let g = GroupSpec::cyclic(11).unwrap();
        let a = GSet::from_indices(&g, [0, 1, 4]).unwrap();
        let items: Vec<usize> = vec![0, 2, 3, 7, 9];
        let mut counter = SumCounter::new(&a);
        gray_walk(items.len(), |m, change| {
            counter.apply(&items, change);
            let x = select(&g, &items, m);
            assert_eq!(counter.size(), sumset(&a, &x).unwrap().len());
        });
    }

    #[test]
    fn cardinality_order() {
        assert_eq!(masks_by_cardinality(3), vec![1, 2, 4, 3, 5, 6, 7]);
    }
}
