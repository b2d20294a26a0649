//! Sumsets, difference sets, iterated sumsets `nA - mA`, the doubling and
//! difference constants, independence, and the wraparound-safe embedding of
//! integer sets into a cyclic group.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::scalar::{size_ratio, Count};
use crate::set::{rotate_left, GSet};

fn same_group(a: &GSet, b: &GSet) -> Result<()> {
    if a.group() == b.group() {
        Ok(())
    } else {
        Err(Error::GroupMismatch {
            left: a.group().to_string(),
            right: b.group().to_string(),
        })
    }
}

/// `A + B`. Empty when either operand is empty.
///
/// Iterates over the smaller operand and ORs in translates of the larger
/// one; in cyclic groups a translate is a bit rotation.
pub fn sumset(a: &GSet, b: &GSet) -> Result<GSet> {
    same_group(a, b)?;
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let g = a.group();
    let n = g.order();
    if g.is_cyclic_layout() {
        if let (Some(s), Some(l)) = (small.mask(), large.mask()) {
            return GSet::from_mask(g, sum_masks_cyclic(s, l, n));
        }
        let mut out = GSet::empty(g);
        for t in small.indices() {
            out.or_assign(&rotate_left(large.words(), n, t));
        }
        return Ok(out);
    }
    let mut out = GSet::empty(g);
    for t in small.indices() {
        for x in large.indices() {
            out.insert_idx(g.add_idx(x, t));
        }
    }
    Ok(out)
}

/// Sumset of two single-word masks in `Z_n`, `n <= 64`.
#[inline]
pub(crate) fn sum_masks_cyclic(small: u64, large: u64, n: usize) -> u64 {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut acc = 0u64;
    let mut rest = small;
    while rest != 0 {
        let t = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        acc |= if t == 0 {
            large
        } else {
            ((large << t) | (large >> (n - t))) & full
        };
    }
    acc
}

/// `A - B`.
pub fn diffset(a: &GSet, b: &GSet) -> Result<GSet> {
    same_group(a, b)?;
    sumset(a, &b.negate())
}

/// `nA - mA`, folded from repeated sumsets and differences.
pub fn iterated(a: &GSet, n: usize, m: usize) -> Result<GSet> {
    if n + m == 0 {
        return Err(Error::InvalidArity { n, m });
    }
    if a.is_empty() {
        return Err(Error::EmptySet("iterated sumset"));
    }
    let neg = a.negate();
    let mut acc = if n > 0 { a.clone() } else { neg.clone() };
    for _ in 1..n {
        acc = sumset(&acc, a)?;
    }
    let extra = if n > 0 { m } else { m - 1 };
    for _ in 0..extra {
        acc = sumset(&acc, &neg)?;
    }
    Ok(acc)
}

/// Doubling constant `|A+A| / |A|`.
pub fn sigma<T: Count>(a: &GSet) -> Result<Ratio<T>> {
    if a.is_empty() {
        return Err(Error::EmptySet("sigma"));
    }
    Ok(size_ratio(sumset(a, a)?.len(), a.len()))
}

/// Difference constant `|A-A| / |A|`.
pub fn delta<T: Count>(a: &GSet) -> Result<Ratio<T>> {
    if a.is_empty() {
        return Err(Error::EmptySet("delta"));
    }
    Ok(size_ratio(diffset(a, a)?.len(), a.len()))
}

/// True iff all sums `a + b` are distinct, i.e. `|A+B| = |A||B|`.
pub fn independent(a: &GSet, b: &GSet) -> Result<bool> {
    same_group(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet("independence test"));
    }
    Ok(sumset(a, b)?.len() == a.len() * b.len())
}

/// An integer set placed into `Z_M` without wraparound for the requested
/// iterated sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub group: GroupSpec,
    pub set: GSet,
    /// The integer mapped to index 0 (the minimum of the input).
    pub offset: i64,
}

impl Embedding {
    pub fn modulus(&self) -> usize {
        self.group.order()
    }

    /// Lifts an element index back to the integer it represents.
    pub fn lift(&self, index: usize) -> i64 {
        self.offset + index as i64
    }
}

/// Translates `s` so its minimum is 0 and embeds it in `Z_M` with
/// `M = (n + m) * (max - min) + 1`. Every `n'A - m'A` with `n' + m' <= n + m`
/// then has the same size in `Z_M` as over the integers.
pub fn embed_integer_set(s: &[i64], n: usize, m: usize) -> Result<Embedding> {
    embed_integer_sets(&[s], n, m).map(|(group, mut sets, offset)| Embedding {
        group,
        set: sets.remove(0),
        offset,
    })
}

/// Embeds several integer sets with one shared translation and modulus,
/// sized by the range of their union.
pub fn embed_integer_sets(sets: &[&[i64]], n: usize, m: usize) -> Result<(GroupSpec, Vec<GSet>, i64)> {
    if n + m == 0 {
        return Err(Error::InvalidArity { n, m });
    }
    let all = sets.iter().flat_map(|s| s.iter().copied());
    let (lo, hi) = all.fold((None, None), |(lo, hi): (Option<i64>, Option<i64>), x| {
        (Some(lo.map_or(x, |l| l.min(x))), Some(hi.map_or(x, |h| h.max(x))))
    });
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Err(Error::EmptySet("integer embedding"));
    };
    if sets.iter().any(|s| s.is_empty()) {
        return Err(Error::EmptySet("integer embedding"));
    }
    let range = u64::try_from(hi as i128 - lo as i128).map_err(|_| Error::OrderOverflow)?;
    let modulus = ((n + m) as u64)
        .checked_mul(range)
        .and_then(|x| x.checked_add(1))
        .ok_or(Error::OrderOverflow)?;
    let group = GroupSpec::cyclic(modulus)?;
    let embedded = sets
        .iter()
        .map(|s| GSet::from_indices(&group, s.iter().map(|&x| (x - lo) as usize)))
        .collect::<Result<Vec<_>>>()?;
    Ok((group, embedded, lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    use num_traits::One;
    use proptest::prelude::*;

    type R = Ratio<u64>;

    fn z(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    fn set(g: &GroupSpec, xs: &[usize]) -> GSet {
        GSet::from_indices(g, xs.iter().copied()).unwrap()
    }

    fn idx(s: &GSet) -> Vec<usize> {
        s.indices().collect()
    }

    /// Pairwise oracle for `A + B` over arbitrary groups.
    fn pairwise(a: &GSet, b: &GSet, sub: bool) -> GSet {
        let g = a.group();
        let mut out = GSet::empty(g);
        for x in a.indices() {
            for y in b.indices() {
                out.insert_idx(if sub { g.sub_idx(x, y) } else { g.add_idx(x, y) });
            }
        }
        out
    }

    /// Naive `(n+m)`-deep enumeration of `a1+..+an-b1-..-bm`.
    fn deep_loop(a: &GSet, n: usize, m: usize) -> GSet {
        let g = a.group();
        let elems: Vec<usize> = a.indices().collect();
        let k = n + m;
        let mut out = GSet::empty(g);
        let mut choice = vec![0usize; k];
        loop {
            let mut v = 0;
            for (j, &c) in choice.iter().enumerate() {
                v = if j < n {
                    g.add_idx(v, elems[c])
                } else {
                    g.sub_idx(v, elems[c])
                };
            }
            out.insert_idx(v);
            let mut j = 0;
            while j < k {
                choice[j] += 1;
                if choice[j] < elems.len() {
                    break;
                }
                choice[j] = 0;
                j += 1;
            }
            if j == k {
                return out;
            }
        }
    }

    #[test]
    fn sumset_examples() {
        let g = z(5);
        let a = set(&g, &[0, 1]);
        assert_eq!(idx(&sumset(&a, &a).unwrap()), vec![0, 1, 2]);

        let g = z(8);
        let a = set(&g, &[0, 1, 3]);
        let s = sumset(&a, &a).unwrap();
        assert_eq!(s, pairwise(&a, &a, false));
        assert_eq!(idx(&s), vec![0, 1, 2, 3, 4, 6]);

        let g = z(6);
        let a = set(&g, &[1, 4]);
        assert_eq!(idx(&sumset(&a, &a).unwrap()), vec![2, 5]);

        assert!(sumset(&GSet::empty(&g), &a).unwrap().is_empty());
        assert!(sumset(&a, &GSet::full(&z(7))).is_err());
    }

    #[test]
    fn diffset_examples() {
        let g = z(5);
        assert_eq!(
            idx(&diffset(&set(&g, &[0, 1]), &set(&g, &[0, 1])).unwrap()),
            vec![0, 1, 4]
        );

        let g = z(8);
        let a = set(&g, &[0, 1, 3]);
        let d = diffset(&a, &a).unwrap();
        assert_eq!(d, pairwise(&a, &a, true));
        assert_eq!(idx(&d), vec![0, 1, 2, 3, 5, 6, 7]);
        assert!(d.contains(g.zero()));
    }

    #[test]
    fn iterated_examples() {
        let g = z(8);
        let a = set(&g, &[0, 1]);
        assert_eq!(idx(&iterated(&a, 3, 0).unwrap()), vec![0, 1, 2, 3]);

        let g5 = z(5);
        let b = set(&g5, &[0, 1]);
        assert_eq!(iterated(&b, 1, 1).unwrap(), diffset(&b, &b).unwrap());
        assert_eq!(iterated(&b, 2, 0).unwrap(), sumset(&b, &b).unwrap());

        let c = set(&g, &[0, 1, 3]);
        assert_eq!(iterated(&c, 2, 1).unwrap(), deep_loop(&c, 2, 1));
        assert_eq!(iterated(&c, 0, 2).unwrap(), deep_loop(&c, 0, 2));

        assert!(matches!(iterated(&c, 0, 0), Err(Error::InvalidArity { .. })));
        assert!(matches!(iterated(&GSet::empty(&g), 1, 0), Err(Error::EmptySet(_))));
    }

    #[test]
    fn iterated_matches_deep_loop_on_small_universe() {
        for n in 1..=12u64 {
            let g = z(n);
            for mask in 1u64..(1 << n) {
                if mask.count_ones() > 5 {
                    continue;
                }
                let a = GSet::from_mask(&g, mask).unwrap();
                for (p, q) in [(1, 0), (2, 0), (0, 1), (1, 1), (2, 1), (1, 2), (3, 0)] {
                    assert_eq!(iterated(&a, p, q).unwrap(), deep_loop(&a, p, q), "{a} {p} {q}");
                }
            }
        }
        let g = GroupSpec::new(&[2, 6]).unwrap();
        for mask in (1u64..(1 << 12)).step_by(37) {
            let a = GSet::from_mask(&g, mask).unwrap();
            if a.len() <= 5 {
                assert_eq!(iterated(&a, 2, 1).unwrap(), deep_loop(&a, 2, 1));
            }
        }
    }

    #[test]
    fn constants_examples() {
        let g = z(6);
        let a = set(&g, &[1, 4]);
        assert_eq!(sigma::<u64>(&a).unwrap(), R::one());
        assert_eq!(delta::<u64>(&a).unwrap(), R::one());

        let g = z(8);
        let a = set(&g, &[0, 1, 3]);
        assert_eq!(sigma::<u64>(&a).unwrap(), R::from_integer(2));
        assert_eq!(delta::<u64>(&a).unwrap(), R::new(7, 3));

        let g = z(5);
        let a = set(&g, &[0, 1]);
        assert_eq!(sigma::<u64>(&a).unwrap(), R::new(3, 2));
        assert_eq!(delta::<u64>(&a).unwrap(), R::new(3, 2));

        assert!(matches!(sigma::<u64>(&GSet::empty(&g)), Err(Error::EmptySet(_))));
        assert!(matches!(delta::<u64>(&GSet::empty(&g)), Err(Error::EmptySet(_))));
    }

    #[test]
    fn independence_examples() {
        let g = z(6);
        assert!(independent(&set(&g, &[0, 3]), &set(&g, &[0, 1, 2])).unwrap());
        let g5 = z(5);
        assert!(!independent(&set(&g5, &[0, 1]), &set(&g5, &[0, 1])).unwrap());
        assert!(independent(&set(&g5, &[0, 1, 4]), &set(&g5, &[3])).unwrap());
        assert!(independent(&GSet::empty(&g5), &set(&g5, &[3])).is_err());
    }

    fn int_iterated(s: &[i64], n: usize, m: usize) -> BTreeSet<i64> {
        let mut acc: BTreeSet<i64> = BTreeSet::from([0]);
        for j in 0..n + m {
            acc = acc
                .iter()
                .flat_map(|&v| s.iter().map(move |&x| if j < n { v + x } else { v - x }))
                .collect();
        }
        acc
    }

    #[test]
    fn embedding_examples() {
        let e = embed_integer_set(&[0, 1], 2, 2).unwrap();
        assert_eq!(e.modulus(), 5);
        assert_eq!(idx(&e.set), vec![0, 1]);

        let s = [0, 2, 3, 4, 7, 11, 12, 14];
        let e = embed_integer_set(&s, 1, 1).unwrap();
        assert_eq!(e.modulus(), 29);
        assert_eq!(idx(&e.set), vec![0, 2, 3, 4, 7, 11, 12, 14]);
        assert_eq!(diffset(&e.set, &e.set).unwrap().len(), int_iterated(&s, 1, 1).len());
        assert_eq!(int_iterated(&s, 1, 1).len(), 25);

        let e = embed_integer_set(&[5, 6], 2, 0).unwrap();
        assert_eq!(e.modulus(), 3);
        assert_eq!(idx(&e.set), vec![0, 1]);
        assert_eq!(e.lift(1), 6);

        let e = embed_integer_set(&[-4], 3, 0).unwrap();
        assert_eq!(e.modulus(), 1);

        assert!(matches!(embed_integer_set(&[], 1, 1), Err(Error::EmptySet(_))));
        assert!(matches!(embed_integer_set(&[1], 0, 0), Err(Error::InvalidArity { .. })));
    }

    fn small_group() -> impl Strategy<Value = GroupSpec> {
        prop_oneof![
            (1u64..=30).prop_map(|n| GroupSpec::cyclic(n).unwrap()),
            Just(GroupSpec::new(&[2, 2]).unwrap()),
            Just(GroupSpec::new(&[2, 4]).unwrap()),
            Just(GroupSpec::new(&[3, 3]).unwrap()),
            Just(GroupSpec::new(&[2, 3, 4]).unwrap()),
            Just(GroupSpec::cyclic(100).unwrap()),
        ]
    }

    fn group_and_sets() -> impl Strategy<Value = (GSet, GSet, GSet, usize)> {
        small_group().prop_flat_map(|g| {
            let n = g.order();
            let elems = proptest::collection::vec(0..n, 1..8);
            (Just(g), elems.clone(), elems.clone(), elems, 0..n).prop_map(|(g, a, b, c, t)| {
                (
                    GSet::from_indices(&g, a).unwrap(),
                    GSet::from_indices(&g, b).unwrap(),
                    GSet::from_indices(&g, c).unwrap(),
                    t,
                )
            })
        })
    }

    proptest! {
        #[test]
        fn sumset_agrees_with_pairwise((a, b, _c, _t) in group_and_sets()) {
            prop_assert_eq!(sumset(&a, &b).unwrap(), pairwise(&a, &b, false));
            prop_assert_eq!(diffset(&a, &b).unwrap(), pairwise(&a, &b, true));
        }

        #[test]
        fn sumset_laws((a, b, c, _t) in group_and_sets()) {
            let ab = sumset(&a, &b).unwrap();
            prop_assert_eq!(&ab, &sumset(&b, &a).unwrap());
            prop_assert_eq!(sumset(&ab, &c).unwrap(), sumset(&a, &sumset(&b, &c).unwrap()).unwrap());
            prop_assert!(ab.len() >= a.len().max(b.len()));
            let d = diffset(&a, &a).unwrap();
            prop_assert!(d.contains(a.group().zero()));
            prop_assert_eq!(d.negate(), d);
        }

        #[test]
        fn constants_invariant_under_translation_and_negation((a, _b, _c, t) in group_and_sets()) {
            let s = sigma::<u64>(&a).unwrap();
            let d = delta::<u64>(&a).unwrap();
            prop_assert!(s >= R::one() && d >= R::one());
            let moved = a.translate(t);
            prop_assert_eq!(sigma::<u64>(&moved).unwrap(), s);
            prop_assert_eq!(delta::<u64>(&moved).unwrap(), d);
            prop_assert_eq!(sigma::<u64>(&a.negate()).unwrap(), s);
            prop_assert_eq!(delta::<u64>(&a.negate()).unwrap(), d);
            // delta <= sigma^2 and sigma <= delta^2
            prop_assert!(d <= s * s);
            prop_assert!(s <= d * d);
        }

        #[test]
        fn embedding_fidelity(
            raw in proptest::collection::btree_set(-20i64..20, 1..7),
            n in 0usize..4,
            m in 0usize..4,
        ) {
            prop_assume!(n + m >= 1);
            let s: Vec<i64> = raw.into_iter().collect();
            let e = embed_integer_set(&s, n, m).unwrap();
            for p in 0..=n {
                for q in 0..=m {
                    if p + q == 0 {
                        continue;
                    }
                    prop_assert_eq!(iterated(&e.set, p, q).unwrap().len(), int_iterated(&s, p, q).len());
                }
            }
        }
    }
}
