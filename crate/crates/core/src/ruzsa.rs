//! The injection `A x (A-A) -> (A+A)^2` behind `|A||A-A| <= |A+A|^2`.
//!
//! A section `psi: A-A -> A^2` picks for each difference `w` a pair `(u, v)`
//! with `u - v = w`; then `phi(a, w) = (a + u, a + v)` is injective, and it
//! is onto exactly when `A` is a coset.

use serde::Serialize;

use crate::arith::{diffset, sumset};
use crate::error::{Error, Result};
use crate::group::Element;
use crate::set::GSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PsiEntry {
    pub w: Element,
    pub u: Element,
    pub v: Element,
}

/// A section of the difference map, one entry per element of `A-A` in
/// ascending order of `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiTable {
    set: GSet,
    entries: Vec<PsiEntry>,
}

impl PsiTable {
    pub fn set(&self) -> &GSet {
        &self.set
    }

    pub fn entries(&self) -> &[PsiEntry] {
        &self.entries
    }

    pub fn get(&self, w: Element) -> Option<(Element, Element)> {
        self.entries
            .binary_search_by_key(&w, |e| e.w)
            .ok()
            .map(|i| (self.entries[i].u, self.entries[i].v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PhiEntry {
    pub a: Element,
    pub u: Element,
    pub out1: Element,
    pub out2: Element,
}

/// `phi` materialized over `A x (A-A)`, ordered by `(a, u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiTable {
    set: GSet,
    sumset: GSet,
    entries: Vec<PhiEntry>,
}

impl PhiTable {
    pub fn set(&self) -> &GSet {
        &self.set
    }

    pub fn entries(&self) -> &[PhiEntry] {
        &self.entries
    }

    pub fn get(&self, a: Element, u: Element) -> Option<(Element, Element)> {
        self.entries
            .binary_search_by_key(&(a, u), |e| (e.a, e.u))
            .ok()
            .map(|i| (self.entries[i].out1, self.entries[i].out2))
    }

    /// Size of the codomain `(A+A)^2`.
    pub fn codomain_size(&self) -> usize {
        self.sumset.len() * self.sumset.len()
    }
}

/// Builds the lexicographically least section: for each `w`, the pair
/// `(u, v)` with `u - v = w` that is smallest by canonical index.
pub fn build_psi(a: &GSet) -> Result<PsiTable> {
    if a.is_empty() {
        return Err(Error::EmptySet("build_psi"));
    }
    let g = a.group();
    let mut slot: Vec<Option<(usize, usize)>> = vec![None; g.order()];
    for u in a.indices() {
        for v in a.indices() {
            let w = g.sub_idx(u, v);
            slot[w].get_or_insert((u, v));
        }
    }
    let entries = slot
        .into_iter()
        .enumerate()
        .filter_map(|(w, p)| {
            p.map(|(u, v)| PsiEntry {
                w: el(a, w),
                u: el(a, u),
                v: el(a, v),
            })
        })
        .collect();
    Ok(PsiTable {
        set: a.clone(),
        entries,
    })
}

fn el(a: &GSet, i: usize) -> Element {
    a.group().element(i).expect("index in range")
}

/// Tabulates `phi(a, w) = (a + u, a + v)` where `(u, v) = psi(w)`.
pub fn build_phi(a: &GSet, psi: &PsiTable) -> Result<PhiTable> {
    if psi.set != *a {
        return Err(Error::TableMismatch);
    }
    let g = a.group();
    let mut entries = Vec::with_capacity(a.len() * psi.entries.len());
    for x in a.indices() {
        for e in &psi.entries {
            entries.push(PhiEntry {
                a: el(a, x),
                u: e.w,
                out1: el(a, g.add_idx(x, e.u.index())),
                out2: el(a, g.add_idx(x, e.v.index())),
            });
        }
    }
    Ok(PhiTable {
        set: a.clone(),
        sumset: sumset(a, a)?,
        entries,
    })
}

fn pair_bits(phi: &PhiTable) -> (Vec<u64>, bool) {
    let n = phi.set.group().order();
    let mut bits = vec![0u64; (n * n).div_ceil(64)];
    let mut distinct = true;
    for e in &phi.entries {
        let k = e.out1.index() * n + e.out2.index();
        if bits[k / 64] >> (k % 64) & 1 == 1 {
            distinct = false;
        }
        bits[k / 64] |= 1 << (k % 64);
    }
    (bits, distinct)
}

/// True iff no two points of `A x (A-A)` share an image.
pub fn verify_injective(phi: &PhiTable) -> bool {
    pair_bits(phi).1
}

/// True iff every pair in `(A+A)^2` is attained.
pub fn check_surjective(phi: &PhiTable) -> bool {
    let n = phi.set.group().order();
    let (bits, _) = pair_bits(phi);
    phi.sumset.indices().all(|s| {
        phi.sumset.indices().all(|t| {
            let k = s * n + t;
            bits[k / 64] >> (k % 64) & 1 == 1
        })
    })
}

/// Domain size `|A| * |A-A|`; equals the number of table entries.
pub fn domain_size(a: &GSet) -> Result<usize> {
    Ok(a.len() * diffset(a, a)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn set(n: u64, xs: &[usize]) -> GSet {
        GSet::from_indices(&GroupSpec::cyclic(n).unwrap(), xs.iter().copied()).unwrap()
    }

    fn e(a: &GSet, i: usize) -> Element {
        a.group().element(i).unwrap()
    }

    fn pair(p: Option<(Element, Element)>) -> (usize, usize) {
        let (x, y) = p.unwrap();
        (x.index(), y.index())
    }

    #[test]
    fn psi_examples() {
        let a = set(5, &[0, 1]);
        let psi = build_psi(&a).unwrap();
        assert_eq!(pair(psi.get(e(&a, 0))), (0, 0));
        assert_eq!(pair(psi.get(e(&a, 1))), (1, 0));
        assert_eq!(pair(psi.get(e(&a, 4))), (0, 1));
        assert_eq!(psi.entries().len(), 3);

        let a = set(8, &[0, 1, 3]);
        assert_eq!(pair(build_psi(&a).unwrap().get(e(&a, 2))), (3, 1));

        let a = set(9, &[2, 5, 6]);
        assert_eq!(pair(build_psi(&a).unwrap().get(e(&a, 0))), (2, 2));

        assert!(build_psi(&GSet::empty(&GroupSpec::cyclic(3).unwrap())).is_err());
    }

    /// Lexicographic minimum found by scanning all pairs for each `w`.
    #[test]
    fn psi_is_lexicographic_minimum() {
        let a = set(13, &[1, 4, 5, 9, 11]);
        let g = a.group();
        let psi = build_psi(&a).unwrap();
        for entry in psi.entries() {
            let best = a
                .indices()
                .flat_map(|u| a.indices().map(move |v| (u, v)))
                .filter(|&(u, v)| g.sub_idx(u, v) == entry.w.index())
                .min()
                .unwrap();
            assert_eq!((entry.u.index(), entry.v.index()), best);
        }
        assert_eq!(psi.entries().len(), diffset(&a, &a).unwrap().len());
    }

    #[test]
    fn phi_examples() {
        let a = set(5, &[0, 1]);
        let psi = build_psi(&a).unwrap();
        let phi = build_phi(&a, &psi).unwrap();
        assert_eq!(pair(phi.get(e(&a, 0), e(&a, 1))), (1, 0));
        assert_eq!(pair(phi.get(e(&a, 1), e(&a, 4))), (1, 2));
        assert_eq!(pair(phi.get(e(&a, 0), e(&a, 0))), (0, 0));
        assert_eq!(phi.entries().len(), domain_size(&a).unwrap());

        let other = set(5, &[0, 2]);
        assert_eq!(build_phi(&other, &psi), Err(Error::TableMismatch));
    }

    #[test]
    fn injective_and_surjective_examples() {
        let a = set(5, &[0, 1]);
        let phi = build_phi(&a, &build_psi(&a).unwrap()).unwrap();
        assert!(verify_injective(&phi));
        assert!(!check_surjective(&phi));
        assert_eq!((phi.entries().len(), phi.codomain_size()), (6, 9));

        let a = set(6, &[0, 3]);
        let phi = build_phi(&a, &build_psi(&a).unwrap()).unwrap();
        assert!(verify_injective(&phi));
        assert_eq!((phi.entries().len(), phi.codomain_size()), (4, 4));

        let a = set(6, &[1, 4]);
        assert!(check_surjective(&build_phi(&a, &build_psi(&a).unwrap()).unwrap()));

        let a = set(8, &[0, 1, 3]);
        let phi = build_phi(&a, &build_psi(&a).unwrap()).unwrap();
        assert!(verify_injective(&phi));
        assert!(!check_surjective(&phi));
        assert_eq!((phi.entries().len(), phi.codomain_size()), (21, 36));
    }

    #[test]
    fn exhaustive_small_groups() {
        for n in 1..=9u64 {
            let g = GroupSpec::cyclic(n).unwrap();
            for mask in 1u64..(1 << n) {
                let a = GSet::from_mask(&g, mask).unwrap();
                let phi = build_phi(&a, &build_psi(&a).unwrap()).unwrap();
                assert!(verify_injective(&phi), "{a}");
                let coset = g.is_coset(&a).unwrap().is_some();
                assert_eq!(check_surjective(&phi), coset, "{a}");
                assert!(phi.entries().len() <= phi.codomain_size());
            }
        }
    }
}
