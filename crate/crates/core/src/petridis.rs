//! Petridis-style induction with an auditable trace.
//!
//! Given `A` and a non-empty `X` with `|A+X| = K|X|` and `|A+X'| >= K|X'|`
//! for every subset `X'`, the inequality `|A+X+C| <= K|X+C|` holds for every
//! `C`. It is proved by adding the elements of `C` one at a time; this
//! module replays that induction step by step. When every proper non-empty
//! `X'` is strictly worse than `K`, equality holds exactly when some
//! `Q ⊆ C` has `X+C = X+Q` with `A+X` and `Q` independent. Both the
//! trace-derived `Q` and a brute-force search for one are provided.

use std::cmp::Ordering;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{independent, sumset};
use crate::error::{Error, Result};
use crate::group::Element;
use crate::scalar::{size_ratio, Bound};
use crate::set::GSet;
use crate::subsets::{gray_walk, masks_by_cardinality, select, SumCounter};
use crate::Ratio64;

pub const DEFAULT_MINIMIZER_CAP: usize = 20;
pub const DEFAULT_CERTIFICATE_CAP: usize = 16;

/// Below this base size the minimizer search runs on one thread.
const PARALLEL_THRESHOLD: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimizerResult {
    pub x: GSet,
    /// `|A+X| / |X|`.
    pub k: Ratio64,
    pub sum_size: usize,
    /// Every proper non-empty `X' ⊂ X` has `|A+X'| > K|X'|`.
    pub strict_on_proper_subsets: bool,
}

/// Candidate `(|A+X|, |X|, position mask)`; smaller is better.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Candidate {
    sum: usize,
    card: usize,
    mask: u64,
}

impl Candidate {
    fn better_than(&self, other: &Candidate) -> bool {
        let lhs = self.sum as u128 * other.card as u128;
        let rhs = other.sum as u128 * self.card as u128;
        match lhs.cmp(&rhs) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => (self.card, self.mask) < (other.card, other.mask),
        }
    }
}

fn pick(a: Option<Candidate>, b: Option<Candidate>) -> Option<Candidate> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.better_than(&x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

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

/// Best candidate among the subsets whose high positions equal `prefix`.
fn search_prefix(a: &GSet, items: &[usize], low_bits: usize, prefix: u64) -> Option<Candidate> {
    let mut counter = SumCounter::new(a);
    for (p, &item) in items.iter().enumerate().skip(low_bits) {
        if prefix >> (p - low_bits) & 1 == 1 {
            counter.add(item);
        }
    }
    let high = prefix << low_bits;
    let mut best: Option<Candidate> = None;
    gray_walk(low_bits, |low, change| {
        counter.apply(items, change);
        let mask = high | low;
        if mask != 0 {
            let cand = Candidate {
                sum: counter.size(),
                card: mask.count_ones() as usize,
                mask,
            };
            best = pick(best, Some(cand));
        }
    });
    best
}

/// Exhaustively finds the non-empty `X ⊆ base` minimizing `|A+X|/|X|`,
/// breaking ties by smaller `|X|` and then smaller bitmask.
pub fn find_minimizer(a: &GSet, base: &GSet, cap: usize) -> Result<MinimizerResult> {
    same_group(a, base)?;
    if a.is_empty() {
        return Err(Error::EmptySet("find_minimizer (A)"));
    }
    if base.is_empty() {
        return Err(Error::EmptySet("find_minimizer (base)"));
    }
    if base.len() > cap.min(63) {
        return Err(Error::cap("minimizer base size", base.len(), cap.min(63)));
    }
    let items: Vec<usize> = base.indices().collect();
    let k = items.len();
    let high_bits = if k >= PARALLEL_THRESHOLD { (k - 10).min(8) } else { 0 };
    let low_bits = k - high_bits;
    let best = (0u64..1 << high_bits)
        .into_par_iter()
        .map(|prefix| search_prefix(a, &items, low_bits, prefix))
        .reduce(|| None, pick)
        .expect("base is non-empty");
    let x = select(a.group(), &items, best.mask);
    let strict = strict_on_proper_subsets(a, &x, best.sum, best.card);
    Ok(MinimizerResult {
        k: size_ratio(best.sum, best.card),
        x,
        sum_size: best.sum,
        strict_on_proper_subsets: strict,
    })
}

/// Walks the proper non-empty subsets of `x` and returns the first one
/// for which `ok(|A+X'|, |X'|)` is false.
fn first_failing_subset(a: &GSet, x: &GSet, mut ok: impl FnMut(usize, usize) -> bool) -> Option<GSet> {
    let items: Vec<usize> = x.indices().collect();
    let full = (1u64 << items.len()) - 1;
    let mut counter = SumCounter::new(a);
    let mut found = None;
    gray_walk(items.len(), |mask, change| {
        counter.apply(&items, change);
        if found.is_none() && mask != 0 && mask != full && !ok(counter.size(), mask.count_ones() as usize) {
            found = Some(mask);
        }
    });
    found.map(|m| select(a.group(), &items, m))
}

fn strict_on_proper_subsets(a: &GSet, x: &GSet, sum: usize, card: usize) -> bool {
    first_failing_subset(a, x, |s, c| s * card > sum * c).is_none()
}

fn k_times(k: &Ratio64, n: usize) -> Ratio64 {
    k * Ratio64::from_integer(n as u64)
}

/// First subset of `x` violating the hypothesis, or `None`.
///
/// With `strict` the hypothesis is `|A+X| = K|X|` and `|A+X'| > K|X'|` for
/// proper non-empty `X'`; otherwise `|A+X'| >= K|X'|` suffices. If the
/// equality on `X` itself fails, `X` is returned.
pub fn hypothesis_violation(a: &GSet, x: &GSet, k: &Ratio64, strict: bool, cap: usize) -> Result<Option<GSet>> {
    same_group(a, x)?;
    if x.is_empty() {
        return Err(Error::EmptySet("Petridis hypothesis (X)"));
    }
    if a.is_empty() {
        return Err(Error::EmptySet("Petridis hypothesis (A)"));
    }
    if x.len() > cap.min(63) {
        return Err(Error::cap("hypothesis subset size", x.len(), cap.min(63)));
    }
    let sum = sumset(a, x)?.len();
    if Ratio64::from_integer(sum as u64) != k_times(k, x.len()) {
        return Ok(Some(x.clone()));
    }
    Ok(first_failing_subset(a, x, |s, c| {
        let lhs = Ratio64::from_integer(s as u64);
        let rhs = k_times(k, c);
        if strict {
            lhs > rhs
        } else {
            lhs >= rhs
        }
    }))
}

/// Exhaustive check of the strict hypothesis: `|A+X| = K|X|` and every
/// proper non-empty subset is strictly worse.
pub fn verify_hypothesis(a: &GSet, x: &GSet, k: &Ratio64, cap: usize) -> Result<bool> {
    Ok(hypothesis_violation(a, x, k, true, cap)?.is_none())
}

/// `|A+X+C|` against `K|X+C|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PetridisComparison {
    /// `|A+X+C|`
    pub lhs: usize,
    /// `|X+C|`
    pub x_plus_c: usize,
    /// `K |X+C|`
    pub rhs: Ratio64,
    pub bound: Bound,
    /// Whether the strict hypothesis also holds, so that equality is
    /// characterized by a certificate.
    pub strict_hypothesis: bool,
}

/// Evaluates `|A+X+C| <= K|X+C|`. Fails with [`Error::Hypothesis`] when
/// `(A, X, K)` does not satisfy `|A+X| = K|X|` and `|A+X'| >= K|X'|`.
pub fn petridis_inequality(a: &GSet, x: &GSet, k: &Ratio64, c: &GSet, cap: usize) -> Result<PetridisComparison> {
    same_group(a, c)?;
    if let Some(bad) = hypothesis_violation(a, x, k, false, cap)? {
        return Err(Error::Hypothesis {
            violating: bad.to_string(),
        });
    }
    let strict = hypothesis_violation(a, x, k, true, cap)?.is_none();
    let xc = sumset(x, c)?;
    let lhs = sumset(a, &xc)?.len();
    let rhs = k_times(k, xc.len());
    Ok(PetridisComparison {
        lhs,
        x_plus_c: xc.len(),
        bound: Bound::compare(&Ratio64::from_integer(lhs as u64), &rhs),
        rhs,
        strict_hypothesis: strict,
    })
}

/// Order in which the elements of `C` are added.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum ElementOrder {
    #[default]
    Ascending,
    Given(Vec<Element>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// 1-based step number.
    pub k: usize,
    pub c: Element,
    /// `{x in X : x + A + c_k ⊆ X + A + C_{k-1}}`
    pub x_k: GSet,
    /// `{x in X : x + c_k ∈ X + C_{k-1}}`
    pub y_k: GSet,
    /// `|X + A + C_k|`
    pub lhs: usize,
    /// `|X + C_k|`
    pub x_plus_c: usize,
    /// `K |X + C_k|`
    pub rhs: Ratio64,
    /// `rhs - lhs`
    pub slack: Ratio<i64>,
    /// `(X+A+C_{k-1}) ∩ ((X+A+c_k) \ (X_k+A+c_k)) = ∅`
    pub disjoint_union: bool,
    /// `X_k ∈ {∅, X}`
    pub x_k_trivial: bool,
    /// `Y_k = X_k`
    pub y_equals_x: bool,
}

impl TraceStep {
    pub fn conditions(&self) -> [bool; 3] {
        [self.disjoint_union, self.x_k_trivial, self.y_equals_x]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetridisTrace {
    pub a: GSet,
    pub x: GSet,
    pub c: GSet,
    pub order: Vec<Element>,
    /// `|A+X| / |X|`
    pub k: Ratio64,
    pub steps: Vec<TraceStep>,
    /// `|A+X+C| = K|X+C|` at the last step.
    pub equality: bool,
}

/// JSON record for one trace step.
#[derive(Debug, Clone, Serialize)]
pub struct TraceRecord {
    pub k: usize,
    pub c_k: Element,
    #[serde(rename = "X_k")]
    pub x_k: Vec<Element>,
    #[serde(rename = "Y_k")]
    pub y_k: Vec<Element>,
    pub lhs: usize,
    pub rhs_num: u64,
    pub rhs_den: u64,
    pub equality_conditions: [bool; 3],
}

impl PetridisTrace {
    pub fn records(&self) -> Vec<TraceRecord> {
        self.steps
            .iter()
            .map(|s| TraceRecord {
                k: s.k,
                c_k: s.c,
                x_k: s.x_k.iter().collect(),
                y_k: s.y_k.iter().collect(),
                lhs: s.lhs,
                rhs_num: *s.rhs.numer(),
                rhs_den: *s.rhs.denom(),
                equality_conditions: s.conditions(),
            })
            .collect()
    }
}

fn resolve_order(c: &GSet, order: &ElementOrder) -> Result<Vec<Element>> {
    match order {
        ElementOrder::Ascending => Ok(c.iter().collect()),
        ElementOrder::Given(v) => {
            let mut sorted = v.clone();
            sorted.sort();
            sorted.dedup();
            let members: Vec<Element> = c.iter().collect();
            if sorted.len() != v.len() || sorted != members {
                return Err(Error::InvalidParameter(
                    "ordering must list every element of C exactly once".into(),
                ));
            }
            Ok(v.clone())
        }
    }
}

/// Replays the induction that adds `c_1, c_2, ...` to `C_k` one at a time.
/// `C_0 = ∅`, so step 1 always has `X_1 = Y_1 = ∅`.
pub fn trace(a: &GSet, x: &GSet, c: &GSet, order: &ElementOrder) -> Result<PetridisTrace> {
    same_group(a, x)?;
    same_group(a, c)?;
    if a.is_empty() || x.is_empty() {
        return Err(Error::EmptySet("trace (A and X)"));
    }
    if c.is_empty() {
        return Err(Error::EmptySet("trace (C)"));
    }
    let g = a.group();
    let order = resolve_order(c, order)?;
    let xa = sumset(x, a)?;
    let k = size_ratio::<u64>(xa.len(), x.len());
    let mut s_prev = GSet::empty(g);
    let mut t_prev = GSet::empty(g);
    let mut steps = Vec::with_capacity(order.len());
    for (i, &ck) in order.iter().enumerate() {
        let cu = ck.index();
        let mut x_k = GSet::empty(g);
        let mut y_k = GSet::empty(g);
        for xi in x.indices() {
            let shift = g.add_idx(xi, cu);
            if a.translate(shift).is_subset(&s_prev)? {
                x_k.insert_idx(xi);
            }
            if t_prev.contains_idx(shift) {
                y_k.insert_idx(xi);
            }
        }
        let xac = xa.translate(cu);
        let fresh = xac.difference(&sumset(&x_k, a)?.translate(cu))?;
        let disjoint_union = s_prev.is_disjoint(&fresh)?;
        s_prev = s_prev.union(&xac)?;
        t_prev = t_prev.union(&x.translate(cu))?;
        let rhs = k_times(&k, t_prev.len());
        let slack = Ratio::new(*rhs.numer() as i64, *rhs.denom() as i64) - Ratio::from_integer(s_prev.len() as i64);
        steps.push(TraceStep {
            k: i + 1,
            c: ck,
            x_k_trivial: x_k.is_empty() || x_k == *x,
            y_equals_x: y_k == x_k,
            x_k,
            y_k,
            lhs: s_prev.len(),
            x_plus_c: t_prev.len(),
            rhs,
            slack,
            disjoint_union,
        });
    }
    let last = steps.last().expect("C is non-empty");
    let equality = Ratio64::from_integer(last.lhs as u64) == last.rhs;
    Ok(PetridisTrace {
        a: a.clone(),
        x: x.clone(),
        c: c.clone(),
        order,
        k,
        steps,
        equality,
    })
}

/// A witness `Q ⊆ C` with `X+C = X+Q` and `A+X` independent of `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub q: GSet,
}

/// Checks both certificate conditions for a candidate `q`.
pub fn is_certificate(a: &GSet, x: &GSet, c: &GSet, q: &GSet) -> Result<bool> {
    if q.is_empty() || !q.is_subset(c)? {
        return Ok(false);
    }
    Ok(sumset(x, c)? == sumset(x, q)? && independent(&sumset(a, x)?, q)?)
}

/// `Q = {c_k : X_k = ∅}` from an equality trace, validated; `None` when
/// the trace is strict.
pub fn extract_certificate(t: &PetridisTrace) -> Result<Option<Certificate>> {
    if !t.equality {
        return Ok(None);
    }
    let mut q = GSet::empty(t.c.group());
    for s in t.steps.iter().filter(|s| s.x_k.is_empty()) {
        q.insert_idx(s.c.index());
    }
    if !is_certificate(&t.a, &t.x, &t.c, &q)? {
        return Err(Error::Internal(format!(
            "trace reports equality but Q = {q} is not a certificate for A = {}, X = {}, C = {}",
            t.a, t.x, t.c
        )));
    }
    Ok(Some(Certificate { q }))
}

/// First certificate among all non-empty `Q ⊆ C` in (cardinality, bitmask)
/// order.
pub fn brute_force_certificate(a: &GSet, x: &GSet, c: &GSet, cap: usize) -> Result<Option<Certificate>> {
    same_group(a, x)?;
    same_group(a, c)?;
    if a.is_empty() || x.is_empty() {
        return Err(Error::EmptySet("brute_force_certificate (A and X)"));
    }
    if c.len() > cap.min(30) {
        return Err(Error::cap("certificate search set size", c.len(), cap.min(30)));
    }
    let g = a.group();
    let items: Vec<usize> = c.indices().collect();
    let xc = sumset(x, c)?;
    let ax = sumset(a, x)?;
    for mask in masks_by_cardinality(items.len()) {
        let q = select(g, &items, mask);
        if sumset(x, &q)? == xc && independent(&ax, &q)? {
            return Ok(Some(Certificate { q }));
        }
    }
    Ok(None)
}
