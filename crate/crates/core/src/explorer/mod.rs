//! Exhaustive campaigns over subsets of a small group or of an integer
//! window, deduplicated by symmetry.
//!
//! `σ` and `δ` are invariant under translation, negation, and more
//! generally under `A -> uA + t` for a unit `u`. Each campaign picks one of
//! these symmetry groups and visits a single representative per orbit: the
//! member with the least bitmask.

mod canonical;
mod output;
mod record;
mod scan;

pub use canonical::{enumerate_canonical, RepSet, Representative};
pub use output::{write_csv, write_json, Format, RecordWriter, CSV_COLUMNS};
pub use record::{SearchRecord, SetFlags};
pub use scan::{
    exponent_report, find_mstd, scan, scan_streaming, Counts, ExponentExtreme, ExponentReport, ScanSummary,
    REFERENCE_EXPONENT,
};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::limits::Limits;

/// Hard ceiling from the single-word candidate masks.
const MASK_BITS: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Universe {
    /// All subsets of a finite group.
    Group(GroupSpec),
    /// All subsets of the integer window `lo..=hi`.
    Integers { lo: i64, hi: i64 },
}

impl Universe {
    /// Number of candidate positions (group order or window width).
    pub fn width(&self) -> usize {
        match self {
            Universe::Group(g) => g.order(),
            Universe::Integers { lo, hi } => (hi - lo + 1).max(0) as usize,
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Universe::Group(g) => write!(f, "{g}"),
            Universe::Integers { lo, hi } => write!(f, "{lo}..{hi}"),
        }
    }
}

/// Symmetry group used for deduplication.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Canon {
    /// Every subset is its own representative.
    None,
    Translation,
    #[default]
    TranslationNegation,
    /// `A -> uA + t` for every unit `u`. Over the integers the units are
    /// `±1`, so this coincides with `TranslationNegation`.
    Affine,
}

impl Canon {
    pub fn id(self) -> &'static str {
        match self {
            Canon::None => "none",
            Canon::Translation => "translation",
            Canon::TranslationNegation => "translation+negation",
            Canon::Affine => "full-affine",
        }
    }
}

impl fmt::Display for Canon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Canon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(Canon::None),
            "translation" => Ok(Canon::Translation),
            "translation+negation" | "translation-negation" | "negation" => Ok(Canon::TranslationNegation),
            "full-affine" | "affine" => Ok(Canon::Affine),
            _ => Err(Error::InvalidParameter(format!(
                "unknown canonicalization {s:?} (none, translation, translation+negation, full-affine)"
            ))),
        }
    }
}

impl Serialize for Canon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

#[derive(Debug, Clone)]
pub struct Campaign {
    pub universe: Universe,
    pub min_size: usize,
    pub max_size: usize,
    pub canon: Canon,
    /// Keep only sets with `|A+A| > |A-A|`.
    pub mstd_only: bool,
    /// Half-open range of candidate bitmasks to visit, for partitioned runs.
    pub mask_range: Option<(u64, u64)>,
}

impl Campaign {
    pub fn new(universe: Universe) -> Self {
        let max = universe.width();
        Campaign {
            universe,
            min_size: 1,
            max_size: max,
            canon: Canon::default(),
            mstd_only: false,
            mask_range: None,
        }
    }

    pub fn sizes(mut self, min: usize, max: usize) -> Self {
        self.min_size = min.max(1);
        self.max_size = max;
        self
    }

    pub fn canon(mut self, canon: Canon) -> Self {
        self.canon = canon;
        self
    }

    pub fn mstd_only(mut self, on: bool) -> Self {
        self.mstd_only = on;
        self
    }

    pub fn mask_range(mut self, lo: u64, hi: u64) -> Self {
        self.mask_range = Some((lo, hi));
        self
    }

    /// Validates the campaign against `limits`.
    pub fn check(&self, limits: &Limits) -> Result<()> {
        let w = self.universe.width();
        match &self.universe {
            Universe::Group(_) => {
                let cap = limits.exhaustive_order.min(MASK_BITS);
                if w > cap {
                    return Err(Error::cap("group order for an exhaustive scan", w, cap));
                }
            }
            Universe::Integers { lo, hi } => {
                if hi < lo {
                    return Err(Error::InvalidParameter(format!("empty integer window {lo}..{hi}")));
                }
                let cap = limits.integer_width.min(MASK_BITS);
                if w > cap {
                    return Err(Error::cap("integer window width", w, cap));
                }
            }
        }
        if self.min_size > self.max_size {
            return Err(Error::InvalidParameter(format!(
                "size bounds {}..{} are empty",
                self.min_size, self.max_size
            )));
        }
        Ok(())
    }

    /// One-line description used in output headers.
    pub fn describe(&self) -> String {
        let range = match self.mask_range {
            Some((lo, hi)) => format!("{lo}..{hi}"),
            None => "all".into(),
        };
        format!(
            "universe={} sizes={}..{} canon={} mstd_only={} range={}",
            self.universe, self.min_size, self.max_size, self.canon, self.mstd_only, range
        )
    }
}
