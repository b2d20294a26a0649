//! Human-readable output. Exact values come first; decimals are marked `≈`.

use std::io::{self, Write};

use sumdiff_core::explorer::{ScanSummary, SearchRecord};
use sumdiff_core::scalar::{fraction, pow};
use sumdiff_core::theorems::{Claim, Outcome, SweepSummary, Verdict};
use sumdiff_core::{BigUint, Ratio64};

use crate::ConstantsReport;

fn approx(r: &Ratio64) -> String {
    format!("{} ≈ {:.5}", fraction(r), *r.numer() as f64 / *r.denom() as f64)
}

fn outcome(o: Outcome) -> &'static str {
    match o {
        Outcome::Holds => "holds",
        Outcome::EqualityCase => "equality case",
        Outcome::Violated => "VIOLATED",
    }
}

fn embedding_line(out: &mut impl Write, source: Option<&str>, embedding: Option<(usize, i64)>) -> io::Result<()> {
    if let (Some(src), Some((m, offset))) = (source, embedding) {
        writeln!(out, "integer set {src} embedded in Z{m} (x -> x - {offset})")?;
    }
    Ok(())
}

pub fn constants(out: &mut impl Write, r: &ConstantsReport) -> io::Result<()> {
    embedding_line(
        out,
        r.source.as_deref(),
        r.embedding.as_ref().map(|e| (e.modulus, e.offset)),
    )?;
    writeln!(out, "A = {}", r.set)?;
    writeln!(out, "|A| = {}  |A+A| = {}  |A-A| = {}", r.card, r.sum_card, r.diff_card)?;
    writeln!(out, "sigma = {}", approx(&r.sigma))?;
    writeln!(out, "delta = {}", approx(&r.delta))?;
    writeln!(out, "coset = {}", r.coset)
}

pub fn verdict(out: &mut impl Write, v: &Verdict, embedding: Option<(usize, i64)>) -> io::Result<()> {
    embedding_line(out, v.source.as_deref(), embedding)?;
    writeln!(out, "{} on {}: {}", v.claim, v.set, outcome(v.outcome))?;
    let sizes: Vec<String> = v.sizes.iter().map(|(k, n)| format!("{k}={n}")).collect();
    writeln!(out, "  sizes: {}", sizes.join(" "))?;
    for (k, r) in &v.ratios {
        writeln!(out, "  {k} = {}", approx(r))?;
    }
    if !v.flags.is_empty() {
        let flags: Vec<String> = v.flags.iter().map(|(k, b)| format!("{k}={b}")).collect();
        writeln!(out, "  flags: {}", flags.join(" "))?;
    }
    for l in &v.links {
        let rel = match l.bound {
            sumdiff_core::scalar::Bound::Strict => "<",
            sumdiff_core::scalar::Bound::Equal => "=",
            sumdiff_core::scalar::Bound::Violated => ">",
        };
        writeln!(out, "  {}: {} {rel} {}", l.name, l.lhs, l.rhs)?;
    }
    if v.claim == Claim::Thm5 {
        plunnecke_line(out, v)?;
    }
    Ok(())
}

/// `|nA|` next to `σⁿ|A| = |A+A|ⁿ / |A|^(n-1)` as an exact fraction.
fn plunnecke_line(out: &mut impl Write, v: &Verdict) -> io::Result<()> {
    let (Some(&n), Some(&na), Some(&a), Some(&aa)) = (
        v.params.get("n"),
        v.sizes.get("nA"),
        v.sizes.get("A"),
        v.sizes.get("AA"),
    ) else {
        return Ok(());
    };
    let n = n as u32;
    let num = pow(&BigUint::from(aa), n);
    let den = pow(&BigUint::from(a), n - 1);
    let rhs = sumdiff_core::BigRatio::new(num, den);
    let rel = if BigUint::from(na) * rhs.denom() < *rhs.numer() {
        "<"
    } else if BigUint::from(na) * rhs.denom() == *rhs.numer() {
        "="
    } else {
        ">"
    };
    let decimal = (aa as f64).powi(n as i32) / (a as f64).powi(n as i32 - 1);
    writeln!(
        out,
        "  |{n}A| = {na} {rel} sigma^{n}|A| = {} ≈ {decimal:.5}",
        fraction(&rhs)
    )
}

pub fn sweep(out: &mut impl Write, s: &SweepSummary) -> io::Result<()> {
    writeln!(out, "{} over {}: {} sets", s.claim, s.universe, s.total)?;
    writeln!(
        out,
        "  holds: {}  equality cases: {}  violations: {}",
        s.holds, s.equality, s.violated
    )?;
    if !s.equality_sets.is_empty() && s.equality_sets.len() <= 64 {
        writeln!(out, "  equality sets: {}", s.equality_sets.join(" "))?;
    }
    for v in &s.violations {
        writeln!(out, "  violated on {}", v.set)?;
    }
    Ok(())
}

pub fn record(out: &mut impl Write, r: &SearchRecord) -> io::Result<()> {
    let mut flags = Vec::new();
    for (on, name) in [
        (r.flags.coset, "coset"),
        (r.flags.mstd, "mstd"),
        (r.flags.eq_upper, "eq_upper"),
        (r.flags.eq_lower, "eq_lower"),
    ] {
        if on {
            flags.push(name);
        }
    }
    writeln!(
        out,
        "{}  |A|={} |A+A|={} |A-A|={} sigma={} delta={} orbit={}{}{}",
        r.set,
        r.card,
        r.sum_card,
        r.diff_card,
        fraction(&r.sigma),
        fraction(&r.delta),
        r.orbit_size,
        if flags.is_empty() { "" } else { " " },
        flags.join(",")
    )
}

pub fn summary(out: &mut impl Write, s: &ScanSummary) -> io::Result<()> {
    write!(out, "{s}")
}
