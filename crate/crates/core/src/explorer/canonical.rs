use rayon::prelude::*;

use super::{Campaign, Canon, Universe};
use crate::error::Result;
use crate::group::GroupSpec;
use crate::limits::Limits;
use crate::set::GSet;

/// A canonical orbit representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representative {
    /// Candidate bitmask; bit `i` is group element `i`, or integer `lo + i`.
    pub mask: u64,
    /// Number of universe members in the orbit.
    pub orbit_size: u64,
    pub set: RepSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepSet {
    Group(GSet),
    Integers(Vec<i64>),
}

/// Symmetry action on single-word masks.
pub(crate) enum Symmetry {
    Group {
        group: GroupSpec,
        canon: Canon,
        /// Element permutations `x -> u x`, identity first.
        units: Vec<Vec<usize>>,
    },
    Integers {
        width: usize,
        canon: Canon,
    },
}

fn rotate(mask: u64, n: usize, s: usize) -> u64 {
    let s = s % n;
    if s == 0 {
        return mask;
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    ((mask << s) | (mask >> (n - s))) & full
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(b)
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Symmetry {
    pub(crate) fn new(c: &Campaign) -> Self {
        match &c.universe {
            Universe::Group(g) => {
                let e = g.exponent();
                let multipliers: Vec<u64> = match c.canon {
                    Canon::None | Canon::Translation => vec![1],
                    Canon::TranslationNegation => vec![1, e.saturating_sub(1).max(1)],
                    Canon::Affine => (1..e.max(2)).filter(|&u| gcd(u, e) == 1).collect(),
                };
                let mut units: Vec<Vec<usize>> = Vec::new();
                for u in multipliers {
                    let perm: Vec<usize> = (0..g.order()).map(|i| g.scale_idx(i, u)).collect();
                    if !units.contains(&perm) {
                        units.push(perm);
                    }
                }
                Symmetry::Group {
                    group: g.clone(),
                    canon: c.canon,
                    units,
                }
            }
            Universe::Integers { .. } => Symmetry::Integers {
                width: c.universe.width(),
                canon: c.canon,
            },
        }
    }

    /// True when every orbit minimum contains bit 0. Shifting down by the
    /// least element lowers a mask only when no index wraps around, which
    /// holds for cyclic layouts and integer windows but not for products.
    fn min_has_zero(&self) -> bool {
        match self {
            Symmetry::Group { group, canon, .. } => *canon != Canon::None && group.is_cyclic_layout(),
            Symmetry::Integers { canon, .. } => *canon != Canon::None,
        }
    }

    fn map(perm: &[usize], mask: u64) -> u64 {
        bits(mask).fold(0u64, |acc, i| acc | 1 << perm[i])
    }

    fn translate(group: &GroupSpec, mask: u64, t: usize) -> u64 {
        if group.is_cyclic_layout() {
            rotate(mask, group.order(), t)
        } else {
            bits(mask).fold(0u64, |acc, i| acc | 1 << group.add_idx(i, t))
        }
    }

    /// True when `mask` is the least bitmask in its orbit.
    pub(crate) fn is_canonical(&self, mask: u64) -> bool {
        match self {
            Symmetry::Group { group, canon, units } => {
                if *canon == Canon::None {
                    return true;
                }
                if group.is_cyclic_layout() {
                    // Only translates that move some element to 0 can be minimal.
                    if mask & 1 == 0 {
                        return false;
                    }
                    units.iter().all(|perm| {
                        let b = Self::map(perm, mask);
                        bits(b).all(|x| Self::translate(group, b, group.neg_idx(x)) >= mask)
                    })
                } else {
                    units.iter().all(|perm| {
                        let b = Self::map(perm, mask);
                        (0..group.order()).all(|t| Self::translate(group, b, t) >= mask)
                    })
                }
            }
            Symmetry::Integers { canon, .. } => match canon {
                Canon::None => true,
                Canon::Translation => mask & 1 == 1,
                Canon::TranslationNegation | Canon::Affine => mask & 1 == 1 && mask <= reverse(mask),
            },
        }
    }

    /// Number of universe members in the orbit of `mask`.
    pub(crate) fn orbit_size(&self, mask: u64) -> u64 {
        match self {
            Symmetry::Group { group, canon, units } => {
                if *canon == Canon::None {
                    return 1;
                }
                let mut images: Vec<u64> = units
                    .iter()
                    .flat_map(|perm| {
                        let b = Self::map(perm, mask);
                        (0..group.order()).map(move |t| Self::translate(group, b, t))
                    })
                    .collect();
                images.sort_unstable();
                images.dedup();
                images.len() as u64
            }
            Symmetry::Integers { width, canon } => {
                let span = 63 - mask.leading_zeros() as u64;
                let shifts = *width as u64 - span;
                match canon {
                    Canon::None => 1,
                    Canon::Translation => shifts,
                    Canon::TranslationNegation | Canon::Affine => {
                        if reverse(mask) == mask {
                            shifts
                        } else {
                            2 * shifts
                        }
                    }
                }
            }
        }
    }
}

/// Reflection `x -> max - x` of a mask with bit 0 set.
fn reverse(mask: u64) -> u64 {
    let span = 63 - mask.leading_zeros();
    mask.reverse_bits() >> (63 - span)
}

pub(crate) fn candidate_range(c: &Campaign) -> (u64, u64) {
    let w = c.universe.width();
    let full = 1u64 << w;
    match c.mask_range {
        Some((lo, hi)) => (lo.max(1), hi.min(full)),
        None => (1, full),
    }
}

/// Canonical representatives with candidate mask in `lo..hi`, ascending.
pub(crate) fn representatives_in(sym: &Symmetry, c: &Campaign, lo: u64, hi: u64) -> Vec<(u64, u64)> {
    let step = if sym.min_has_zero() { 2 } else { 1 };
    let start = if step == 2 { lo | 1 } else { lo };
    let mut out = Vec::new();
    let mut mask = start;
    while mask < hi {
        let card = mask.count_ones() as usize;
        if card >= c.min_size && card <= c.max_size && sym.is_canonical(mask) {
            out.push((mask, sym.orbit_size(mask)));
        }
        mask += step;
    }
    out
}

pub(crate) const CHUNK: u64 = 1 << 14;

/// Representatives for the whole campaign, computed in parallel chunks and
/// returned in ascending mask order.
pub(crate) fn all_representatives(c: &Campaign) -> Vec<(u64, u64)> {
    let sym = Symmetry::new(c);
    let (lo, hi) = candidate_range(c);
    if lo >= hi {
        return Vec::new();
    }
    let chunks: Vec<(u64, u64)> = (lo..hi)
        .step_by(CHUNK as usize)
        .map(|s| (s, (s + CHUNK).min(hi)))
        .collect();
    chunks
        .par_iter()
        .flat_map_iter(|&(a, b)| representatives_in(&sym, c, a, b))
        .collect()
}

impl Campaign {
    pub(crate) fn materialize(&self, mask: u64) -> RepSet {
        match &self.universe {
            Universe::Group(g) => RepSet::Group(GSet::from_mask(g, mask).expect("mask within group order")),
            Universe::Integers { lo, .. } => RepSet::Integers(bits(mask).map(|b| lo + b as i64).collect()),
        }
    }
}

/// One representative per orbit, in ascending bitmask order.
pub fn enumerate_canonical<'a>(c: &'a Campaign, limits: &Limits) -> Result<impl Iterator<Item = Representative> + 'a> {
    c.check(limits)?;
    Ok(all_representatives(c)
        .into_iter()
        .map(move |(mask, orbit_size)| Representative {
            mask,
            orbit_size,
            set: c.materialize(mask),
        }))
}
