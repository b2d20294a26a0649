//! Finite abelian groups `Z_{n1} x ... x Z_{nk}` with mixed-radix element
//! indices, plus subgroup and coset structure.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::set::GSet;

/// Default cap on the group order for subgroup enumeration.
pub const DEFAULT_SUBGROUP_CAP: usize = 256;

/// A product of cyclic groups. Element indices are mixed-radix with the
/// first modulus least significant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    moduli: Arc<[u64]>,
    order: usize,
}

/// Canonical index of a group element, always `< order` of its group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Element(usize);

impl Element {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl GroupSpec {
    pub fn new(moduli: &[u64]) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidParameter(
                "a group needs at least one cyclic factor".into(),
            ));
        }
        let mut order: usize = 1;
        for &m in moduli {
            if m == 0 {
                return Err(Error::InvalidModulus(m));
            }
            let m = usize::try_from(m).map_err(|_| Error::OrderOverflow)?;
            order = order.checked_mul(m).ok_or(Error::OrderOverflow)?;
        }
        Ok(GroupSpec {
            moduli: moduli.into(),
            order,
        })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// True when at most one factor is non-trivial, so indices behave like
    /// residues mod `order` and translation is a bit rotation.
    pub fn is_cyclic_layout(&self) -> bool {
        self.moduli.iter().filter(|&&m| m > 1).count() <= 1
    }

    /// Least common multiple of the moduli.
    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1u64, |acc, &m| acc.lcm(&m))
    }

    pub fn zero(&self) -> Element {
        Element(0)
    }

    pub fn element(&self, index: usize) -> Result<Element> {
        self.check(index)?;
        Ok(Element(index))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.order).map(Element)
    }

    fn check(&self, index: usize) -> Result<()> {
        if index < self.order {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                index,
                order: self.order,
            })
        }
    }

    /// Index of the tuple `(t1, ..., tk)`; each coordinate is reduced mod its modulus.
    pub fn encode(&self, tuple: &[i64]) -> Result<Element> {
        if tuple.len() != self.moduli.len() {
            return Err(Error::InvalidParameter(format!(
                "tuple has {} coordinates, group {} has {}",
                tuple.len(),
                self,
                self.moduli.len()
            )));
        }
        let mut index = 0usize;
        for (&t, &m) in tuple.iter().zip(self.moduli.iter()).rev() {
            let r = t.rem_euclid(m as i64) as usize;
            index = index * m as usize + r;
        }
        Ok(Element(index))
    }

    pub fn decode(&self, e: Element) -> Result<Vec<u64>> {
        self.check(e.0)?;
        let mut rest = e.0;
        Ok(self
            .moduli
            .iter()
            .map(|&m| {
                let m = m as usize;
                let t = rest % m;
                rest /= m;
                t as u64
            })
            .collect())
    }

    pub fn add(&self, a: Element, b: Element) -> Result<Element> {
        self.check(a.0)?;
        self.check(b.0)?;
        Ok(Element(self.add_idx(a.0, b.0)))
    }

    pub fn neg(&self, a: Element) -> Result<Element> {
        self.check(a.0)?;
        Ok(Element(self.neg_idx(a.0)))
    }

    pub fn sub(&self, a: Element, b: Element) -> Result<Element> {
        self.check(a.0)?;
        self.check(b.0)?;
        Ok(Element(self.sub_idx(a.0, b.0)))
    }

    /// `k * a`, with `k` taken modulo the group exponent.
    pub fn scale(&self, a: Element, k: u64) -> Result<Element> {
        self.check(a.0)?;
        Ok(Element(self.scale_idx(a.0, k)))
    }

    pub(crate) fn add_idx(&self, a: usize, b: usize) -> usize {
        if self.moduli.len() == 1 {
            let s = a + b;
            return if s >= self.order { s - self.order } else { s };
        }
        self.combine(a, b, |x, y, m| (x + y) % m)
    }

    pub(crate) fn neg_idx(&self, a: usize) -> usize {
        if self.moduli.len() == 1 {
            return if a == 0 { 0 } else { self.order - a };
        }
        self.combine(a, 0, |x, _, m| (m - x) % m)
    }

    pub(crate) fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    pub(crate) fn scale_idx(&self, a: usize, k: u64) -> usize {
        self.combine(a, 0, |x, _, m| ((x as u128 * k as u128) % m as u128) as usize)
    }

    fn combine(&self, a: usize, b: usize, f: impl Fn(usize, usize, usize) -> usize) -> usize {
        let (mut ra, mut rb) = (a, b);
        let mut out = 0usize;
        let mut place = 1usize;
        for &m in self.moduli.iter() {
            let m = m as usize;
            out += f(ra % m, rb % m, m) * place;
            ra /= m;
            rb /= m;
            place *= m;
        }
        out
    }

    /// Every subgroup exactly once, ordered by cardinality and then bitmask.
    /// The lattice is explored breadth-first from `{0}` by adjoining one
    /// element at a time and closing.
    pub fn enumerate_subgroups(&self, cap: usize) -> Result<Vec<GSet>> {
        if self.order > cap {
            return Err(Error::cap("group order for subgroup enumeration", self.order, cap));
        }
        let trivial = GSet::singleton(self, self.zero());
        let mut seen: HashSet<GSet> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(trivial.clone());
        queue.push_back(trivial);
        while let Some(h) = queue.pop_front() {
            for g in self.elements() {
                if h.contains(g) {
                    continue;
                }
                let bigger = adjoin(&h, g);
                if seen.insert(bigger.clone()) {
                    queue.push_back(bigger);
                }
            }
        }
        let mut out: Vec<GSet> = seen.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.mask_cmp(b)));
        Ok(out)
    }

    /// If `a` is a coset `a0 + H` of a subgroup, returns `(H, a0)` with `a0`
    /// the least element of `a`.
    pub fn is_coset(&self, a: &GSet) -> Result<Option<(GSet, Element)>> {
        if a.group() != self {
            return Err(Error::GroupMismatch {
                left: self.to_string(),
                right: a.group().to_string(),
            });
        }
        let a0 = a.min().ok_or(Error::EmptySet("is_coset"))?;
        let h = a.translate(self.neg_idx(a0.0));
        let closed = h
            .iter()
            .all(|x| h.iter().all(|y| h.contains_idx(self.sub_idx(x.0, y.0))));
        Ok(closed.then_some((h, a0)))
    }
}

/// Subgroup generated by subgroup `h` and `g`.
fn adjoin(h: &GSet, g: Element) -> GSet {
    let mut acc = h.clone();
    loop {
        let next = acc.union(&acc.translate(g.0)).expect("same group");
        if next == acc {
            return acc;
        }
        acc = next;
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.moduli.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "Z{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    fn set(g: &GroupSpec, xs: &[usize]) -> GSet {
        GSet::from_indices(g, xs.iter().copied()).unwrap()
    }

    #[test]
    fn add_examples() {
        let g = z(5);
        assert_eq!(g.add(g.element(3).unwrap(), g.element(4).unwrap()).unwrap().index(), 2);

        let g = GroupSpec::new(&[2, 3]).unwrap();
        let a = g.encode(&[1, 2]).unwrap();
        let s = g.add(a, a).unwrap();
        assert_eq!(g.decode(s).unwrap(), vec![0, 1]);

        let g = z(6);
        for x in g.elements() {
            assert_eq!(g.add(g.zero(), x).unwrap(), x);
        }
    }

    #[test]
    fn neg_examples() {
        let g = z(5);
        assert_eq!(g.neg(g.element(2).unwrap()).unwrap().index(), 3);
        let g = z(6);
        assert_eq!(g.neg(g.zero()).unwrap(), g.zero());
        let g = GroupSpec::new(&[2, 3]).unwrap();
        let a = g.encode(&[1, 1]).unwrap();
        assert_eq!(g.decode(g.neg(a).unwrap()).unwrap(), vec![1, 2]);
    }

    #[test]
    fn invalid_inputs() {
        let g = z(5);
        assert!(matches!(
            g.element(5),
            Err(Error::InvalidElement { index: 5, order: 5 })
        ));
        assert!(matches!(GroupSpec::new(&[3, 0]), Err(Error::InvalidModulus(0))));
        assert!(GroupSpec::new(&[]).is_err());
        assert!(matches!(
            GroupSpec::new(&[u64::MAX, u64::MAX]),
            Err(Error::OrderOverflow)
        ));
    }

    #[test]
    fn equality_is_elementwise() {
        assert_eq!(GroupSpec::new(&[2, 3]).unwrap(), GroupSpec::new(&[2, 3]).unwrap());
        assert_ne!(GroupSpec::new(&[2, 3]).unwrap(), GroupSpec::new(&[3, 2]).unwrap());
        assert_ne!(z(6), GroupSpec::new(&[2, 3]).unwrap());
    }

    #[test]
    fn encode_decode_bijection() {
        let g = GroupSpec::new(&[2, 3, 4]).unwrap();
        for e in g.elements() {
            let t = g.decode(e).unwrap();
            let back: Vec<i64> = t.iter().map(|&x| x as i64).collect();
            assert_eq!(g.encode(&back).unwrap(), e);
        }
        // least significant modulus first
        assert_eq!(g.encode(&[1, 0, 0]).unwrap().index(), 1);
        assert_eq!(g.encode(&[0, 1, 0]).unwrap().index(), 2);
        assert_eq!(g.encode(&[0, 0, 1]).unwrap().index(), 6);
    }

    /// Independent oracle: a subset is a subgroup iff it holds 0 and is
    /// closed under subtraction.
    fn brute_force_subgroup_count(g: &GroupSpec) -> usize {
        let n = g.order();
        (1u64..(1 << n))
            .filter(|&mask| {
                if mask & 1 == 0 {
                    return false;
                }
                (0..n).all(|x| {
                    mask >> x & 1 == 0 || (0..n).all(|y| mask >> y & 1 == 0 || mask >> g.sub_idx(x, y) & 1 == 1)
                })
            })
            .count()
    }

    #[test]
    fn subgroup_counts() {
        let g = z(12);
        let subs = g.enumerate_subgroups(DEFAULT_SUBGROUP_CAP).unwrap();
        let orders: Vec<usize> = subs.iter().map(GSet::len).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(brute_force_subgroup_count(&g), 6);

        let g = z(1);
        let subs = g.enumerate_subgroups(DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(subs, vec![set(&g, &[0])]);

        let g = GroupSpec::new(&[2, 2]).unwrap();
        let subs = g.enumerate_subgroups(DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(subs.len(), 5);
        assert_eq!(brute_force_subgroup_count(&g), 5);
        assert_eq!(subs.iter().filter(|h| h.len() == 2).count(), 3);

        for moduli in [&[2u64, 4][..], &[3, 3], &[2, 6], &[8], &[9]] {
            let g = GroupSpec::new(moduli).unwrap();
            let subs = g.enumerate_subgroups(DEFAULT_SUBGROUP_CAP).unwrap();
            assert_eq!(subs.len(), brute_force_subgroup_count(&g), "{g}");
        }
    }

    #[test]
    fn prime_cyclic_has_two_subgroups() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            assert_eq!(z(p).enumerate_subgroups(DEFAULT_SUBGROUP_CAP).unwrap().len(), 2);
        }
    }

    #[test]
    fn subgroups_are_cosets_at_zero() {
        let g = GroupSpec::new(&[2, 6]).unwrap();
        for h in g.enumerate_subgroups(DEFAULT_SUBGROUP_CAP).unwrap() {
            let (sub, rep) = g.is_coset(&h).unwrap().expect("subgroup is a coset");
            assert_eq!(rep, g.zero());
            assert_eq!(sub, h);
        }
    }

    #[test]
    fn subgroup_cap() {
        let err = z(300).enumerate_subgroups(DEFAULT_SUBGROUP_CAP).unwrap_err();
        assert!(err.is_cap_exceeded());
    }

    #[test]
    fn coset_examples() {
        let g = z(6);
        let (h, rep) = g.is_coset(&set(&g, &[1, 4])).unwrap().unwrap();
        assert_eq!(h, set(&g, &[0, 3]));
        assert_eq!(rep.index(), 1);

        let g = z(5);
        assert!(g.is_coset(&set(&g, &[0, 1])).unwrap().is_none());

        let g = z(4);
        let (h, rep) = g.is_coset(&set(&g, &[0, 1, 2, 3])).unwrap().unwrap();
        assert_eq!(h, GSet::full(&g));
        assert_eq!(rep, g.zero());

        assert!(matches!(g.is_coset(&GSet::empty(&g)), Err(Error::EmptySet(_))));
    }

    #[test]
    fn coset_subgroup_independent_of_representative() {
        let g = z(12);
        let a = set(&g, &[2, 6, 10]);
        let (h, _) = g.is_coset(&a).unwrap().unwrap();
        for x in a.iter() {
            assert_eq!(a.translate(g.neg_idx(x.index())), h);
        }
    }

    #[test]
    fn display() {
        assert_eq!(GroupSpec::new(&[2, 3, 5]).unwrap().to_string(), "Z2xZ3xZ5");
        assert_eq!(z(12).to_string(), "Z12");
    }
}
