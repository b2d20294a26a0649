use serde::Serialize;

use super::canonical::RepSet;
use crate::arith::{diffset, sumset};
use crate::error::Result;
use crate::literal::integer_literal;
use crate::scalar::{log_ratio, size_ratio};
use crate::Ratio64;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SetFlags {
    pub coset: bool,
    /// `|A+A| > |A-A|`.
    pub mstd: bool,
    /// `|A+A| = |A-A|`.
    pub balanced: bool,
    /// `δ = σ²`.
    pub eq_upper: bool,
    /// `σ = δ²`.
    pub eq_lower: bool,
}

/// Everything the explorer knows about one representative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchRecord {
    /// `Z12`, `Z2xZ4`, or `Z` for integer sets.
    pub group: String,
    /// Set literal that reparses to the representative.
    pub set: String,
    pub card: usize,
    pub sum_card: usize,
    pub diff_card: usize,
    pub sigma: Ratio64,
    pub delta: Ratio64,
    pub flags: SetFlags,
    /// `ln σ / ln δ`; floating point, report-only.
    pub exponent_up: Option<f64>,
    /// `ln δ / ln σ`; floating point, report-only.
    pub exponent_down: Option<f64>,
    /// Number of sets this record stands for.
    pub orbit_size: u64,
}

impl SearchRecord {
    pub(crate) fn from_sizes(
        group: String,
        set: String,
        card: usize,
        sum_card: usize,
        diff_card: usize,
        coset: bool,
        orbit_size: u64,
    ) -> Self {
        let sigma: Ratio64 = size_ratio(sum_card, card);
        let delta: Ratio64 = size_ratio(diff_card, card);
        let (a, s, d) = (card as u128, sum_card as u128, diff_card as u128);
        let flags = SetFlags {
            coset,
            mstd: sum_card > diff_card,
            balanced: sum_card == diff_card,
            eq_upper: d * a == s * s,
            eq_lower: s * a == d * d,
        };
        let defined = *sigma.numer() != *sigma.denom() && *delta.numer() != *delta.denom();
        SearchRecord {
            group,
            set,
            card,
            sum_card,
            diff_card,
            exponent_up: if defined { log_ratio(&sigma, &delta) } else { None },
            exponent_down: if defined { log_ratio(&delta, &sigma) } else { None },
            sigma,
            delta,
            flags,
            orbit_size,
        }
    }

    pub(crate) fn compute(set: &RepSet, orbit_size: u64) -> Result<Self> {
        match set {
            RepSet::Group(a) => {
                let g = a.group();
                let coset = g.is_coset(a)?.is_some();
                Ok(Self::from_sizes(
                    g.to_string(),
                    a.to_string(),
                    a.len(),
                    sumset(a, a)?.len(),
                    diffset(a, a)?.len(),
                    coset,
                    orbit_size,
                ))
            }
            RepSet::Integers(xs) => {
                let (sum_card, diff_card) = integer_sizes(xs);
                Ok(Self::from_sizes(
                    "Z".into(),
                    integer_literal(xs),
                    xs.len(),
                    sum_card,
                    diff_card,
                    xs.len() == 1,
                    orbit_size,
                ))
            }
        }
    }
}

/// `|A+A|` and `|A-A|` of an integer set of span below 64, by shifting a
/// 128-bit mask. The only finite cosets in `Z` are singletons.
fn integer_sizes(xs: &[i64]) -> (usize, usize) {
    let lo = xs[0];
    let span = (xs[xs.len() - 1] - lo) as u32;
    debug_assert!(span < 64);
    let mask: u128 = xs.iter().fold(0, |m, &x| m | 1 << (x - lo));
    let mut sums = 0u128;
    let mut diffs = 0u128;
    for &x in xs {
        let k = (x - lo) as u32;
        sums |= mask << k;
        // a - x + span stays in 0..=2*span
        diffs |= mask << (span - k);
    }
    (sums.count_ones() as usize, diffs.count_ones() as usize)
}
