use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::canonical::{candidate_range, representatives_in, Symmetry, CHUNK};
use super::record::SearchRecord;
use super::{Campaign, Universe};
use crate::error::Result;
use crate::limits::Limits;
use crate::scalar::fraction;

/// `ln(32/5) / ln(26/5)`, the exponent attained by a known construction.
/// Printed next to empirical maxima for context only.
pub const REFERENCE_EXPONENT: f64 = 1.12594;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub sets: u64,
    /// `|A+A| > |A-A|`.
    pub sum_dominant: u64,
    /// `|A+A| < |A-A|`.
    pub difference_dominant: u64,
    pub balanced: u64,
    pub coset: u64,
    /// `δ = σ²` or `σ = δ²`.
    pub equality: u64,
}

impl Counts {
    fn add(&mut self, r: &SearchRecord, weight: u64) {
        self.sets += weight;
        if r.flags.mstd {
            self.sum_dominant += weight;
        } else if r.flags.balanced {
            self.balanced += weight;
        } else {
            self.difference_dominant += weight;
        }
        if r.flags.coset {
            self.coset += weight;
        }
        if r.flags.eq_upper || r.flags.eq_lower {
            self.equality += weight;
        }
    }
}

/// Largest empirical exponent and every record attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentExtreme {
    pub value: f64,
    pub argmax: Vec<SearchRecord>,
}

fn offer(slot: &mut Option<ExponentExtreme>, value: Option<f64>, r: &SearchRecord) {
    let Some(v) = value else { return };
    match slot {
        Some(e) if v < e.value => {}
        Some(e) if v == e.value => e.argmax.push(r.clone()),
        _ => {
            *slot = Some(ExponentExtreme {
                value: v,
                argmax: vec![r.clone()],
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub campaign: String,
    /// One count per representative.
    pub representatives: Counts,
    /// Counts weighted by orbit size, i.e. over every set in the universe
    /// that meets the size bounds.
    pub weighted: Counts,
    /// Max `ln σ / ln δ` over non-cosets.
    pub max_exponent_up: Option<ExponentExtreme>,
    /// Max `ln δ / ln σ` over non-cosets.
    pub max_exponent_down: Option<ExponentExtreme>,
}

impl ScanSummary {
    fn new(c: &Campaign) -> Self {
        ScanSummary {
            campaign: c.describe(),
            representatives: Counts::default(),
            weighted: Counts::default(),
            max_exponent_up: None,
            max_exponent_down: None,
        }
    }

    fn add(&mut self, r: &SearchRecord) {
        self.representatives.add(r, 1);
        self.weighted.add(r, r.orbit_size);
        if !r.flags.coset {
            offer(&mut self.max_exponent_up, r.exponent_up, r);
            offer(&mut self.max_exponent_down, r.exponent_down, r);
        }
    }
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "campaign: {}", self.campaign)?;
        for (label, c) in [("representatives", &self.representatives), ("all sets", &self.weighted)] {
            writeln!(
                f,
                "{label}: {} (sum-dominant {}, difference-dominant {}, balanced {}, coset {}, equality {})",
                c.sets, c.sum_dominant, c.difference_dominant, c.balanced, c.coset, c.equality
            )?;
        }
        for (label, e) in [
            ("max ln(sigma)/ln(delta)", &self.max_exponent_up),
            ("max ln(delta)/ln(sigma)", &self.max_exponent_down),
        ] {
            match e {
                Some(e) => writeln!(f, "{label} ≈ {:.5} at {}", e.value, describe_argmax(&e.argmax))?,
                None => writeln!(f, "{label}: undefined (no non-coset sets)")?,
            }
        }
        Ok(())
    }
}

/// Argmax sets shown in text summaries; ties beyond this are counted.
const SHOWN: usize = 5;

fn describe_argmax(rs: &[SearchRecord]) -> String {
    let mut parts: Vec<String> = rs
        .iter()
        .take(SHOWN)
        .map(|r| format!("{} (|A|={} |A+A|={} |A-A|={})", r.set, r.card, r.sum_card, r.diff_card))
        .collect();
    if rs.len() > SHOWN {
        parts.push(format!("and {} more", rs.len() - SHOWN));
    }
    parts.join("; ")
}

/// Candidate masks handed to the thread pool per batch.
const BATCH: u64 = CHUNK * 64;

/// Scans the campaign, passing records to `sink` in ascending mask order as
/// they are produced. With `mstd_only` the sink sees only sum-dominant sets,
/// while the summary still covers every representative.
pub fn scan_streaming<F>(c: &Campaign, limits: &Limits, mut sink: F) -> Result<ScanSummary>
where
    F: FnMut(&SearchRecord) -> Result<()>,
{
    c.check(limits)?;
    let sym = Symmetry::new(c);
    let (lo, hi) = candidate_range(c);
    let mut summary = ScanSummary::new(c);
    let mut start = lo;
    while start < hi {
        let end = start.saturating_add(BATCH).min(hi);
        let chunks: Vec<(u64, u64)> = (start..end)
            .step_by(CHUNK as usize)
            .map(|s| (s, (s + CHUNK).min(end)))
            .collect();
        let batch: Vec<Vec<SearchRecord>> = chunks
            .par_iter()
            .map(|&(a, b)| {
                representatives_in(&sym, c, a, b)
                    .into_iter()
                    .map(|(mask, orbit)| SearchRecord::compute(&c.materialize(mask), orbit))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        for r in batch.iter().flatten() {
            summary.add(r);
            if !c.mstd_only || r.flags.mstd {
                sink(r)?;
            }
        }
        start = end;
    }
    Ok(summary)
}

/// Collects every record of the campaign together with its summary.
pub fn scan(c: &Campaign, limits: &Limits) -> Result<(Vec<SearchRecord>, ScanSummary)> {
    let mut records = Vec::new();
    let summary = scan_streaming(c, limits, |r| {
        records.push(r.clone());
        Ok(())
    })?;
    Ok((records, summary))
}

/// Sum-dominant representatives of size at most `max_size`, most dominant
/// first, ties in ascending mask order.
pub fn find_mstd(universe: Universe, max_size: usize, limits: &Limits) -> Result<Vec<SearchRecord>> {
    let c = Campaign::new(universe).sizes(1, max_size).mstd_only(true);
    let (mut records, _) = scan(&c, limits)?;
    // stable: ties keep the scan order
    records.sort_by_key(|r| std::cmp::Reverse(r.sum_card - r.diff_card));
    Ok(records)
}

/// Empirical exponent maxima over the non-coset records.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentReport {
    pub records: usize,
    pub non_coset: usize,
    pub max_exponent_up: Option<ExponentExtreme>,
    pub max_exponent_down: Option<ExponentExtreme>,
    pub reference: f64,
}

pub fn exponent_report(records: &[SearchRecord]) -> ExponentReport {
    let mut up = None;
    let mut down = None;
    let mut non_coset = 0;
    for r in records.iter().filter(|r| !r.flags.coset) {
        non_coset += 1;
        offer(&mut up, r.exponent_up, r);
        offer(&mut down, r.exponent_down, r);
    }
    ExponentReport {
        records: records.len(),
        non_coset,
        max_exponent_up: up,
        max_exponent_down: down,
        reference: REFERENCE_EXPONENT,
    }
}

impl fmt::Display for ExponentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "records: {} ({} non-coset)", self.records, self.non_coset)?;
        match (&self.max_exponent_up, &self.max_exponent_down) {
            (Some(up), Some(down)) => {
                writeln!(f, "max ln(sigma)/ln(delta) ≈ {:.5}", up.value)?;
                for r in up.argmax.iter().take(SHOWN) {
                    writeln!(
                        f,
                        "  at {}: |A|={} |A+A|={} |A-A|={} sigma={} delta={}",
                        r.set,
                        r.card,
                        r.sum_card,
                        r.diff_card,
                        fraction(&r.sigma),
                        fraction(&r.delta)
                    )?;
                }
                if up.argmax.len() > SHOWN {
                    writeln!(f, "  and {} more", up.argmax.len() - SHOWN)?;
                }
                writeln!(f, "max ln(delta)/ln(sigma) ≈ {:.5}", down.value)?;
                for r in down.argmax.iter().take(SHOWN) {
                    writeln!(
                        f,
                        "  at {}: |A|={} |A+A|={} |A-A|={} sigma={} delta={}",
                        r.set,
                        r.card,
                        r.sum_card,
                        r.diff_card,
                        fraction(&r.sigma),
                        fraction(&r.delta)
                    )?;
                }
                if down.argmax.len() > SHOWN {
                    writeln!(f, "  and {} more", down.argmax.len() - SHOWN)?;
                }
            }
            _ => writeln!(f, "no non-coset sets; exponent undefined")?,
        }
        writeln!(
            f,
            "reference: ln(32/5)/ln(26/5) ≈ {:.5} from a known construction, shown for context",
            self.reference
        )?;
        writeln!(
            f,
            "note: desk-scale searches are not expected to reach the reference value; the maxima above are \
             empirical values for this universe only and say nothing about the best possible exponent"
        )?;
        if self.max_exponent_up.as_ref().is_some_and(|e| e.value >= self.reference) {
            writeln!(
                f,
                "note: the observed maximum is at or above the reference value; this is reported for the \
                 scanned universe as is, without interpretation"
            )?;
        }
        Ok(())
    }
}
