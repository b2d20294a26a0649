//! CSV and JSON-lines sinks. Both formats open with a header line carrying
//! the tool version and campaign parameters, and contain nothing that varies
//! between runs.

use std::io::Write;

use serde::Serialize;

use super::record::SearchRecord;
use super::Campaign;
use crate::error::Result;
use crate::VERSION;

pub const CSV_COLUMNS: [&str; 13] = [
    "group",
    "set",
    "card",
    "sum_card",
    "diff_card",
    "sigma_num",
    "sigma_den",
    "delta_num",
    "delta_den",
    "coset",
    "mstd",
    "eq_upper",
    "eq_lower",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Serialize)]
struct Header<'a> {
    tool: &'static str,
    version: &'static str,
    campaign: &'a str,
}

enum Inner<W: Write> {
    Csv(Box<csv::Writer<W>>),
    Json(W),
}

/// Incremental record writer.
pub struct RecordWriter<W: Write> {
    inner: Inner<W>,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(format: Format, mut w: W, campaign: &Campaign) -> Result<Self> {
        let desc = campaign.describe();
        let inner = match format {
            Format::Csv => {
                writeln!(w, "# sumdiff {VERSION} {desc}")?;
                let mut csv = csv::Writer::from_writer(w);
                csv.write_record(CSV_COLUMNS)?;
                Inner::Csv(Box::new(csv))
            }
            Format::Json => {
                let header = Header {
                    tool: "sumdiff",
                    version: VERSION,
                    campaign: &desc,
                };
                serde_json::to_writer(&mut w, &header)?;
                writeln!(w)?;
                Inner::Json(w)
            }
        };
        Ok(RecordWriter { inner })
    }

    pub fn write(&mut self, r: &SearchRecord) -> Result<()> {
        match &mut self.inner {
            Inner::Csv(csv) => {
                let b = |x: bool| if x { "true" } else { "false" };
                csv.write_record([
                    r.group.clone(),
                    r.set.clone(),
                    r.card.to_string(),
                    r.sum_card.to_string(),
                    r.diff_card.to_string(),
                    r.sigma.numer().to_string(),
                    r.sigma.denom().to_string(),
                    r.delta.numer().to_string(),
                    r.delta.denom().to_string(),
                    b(r.flags.coset).into(),
                    b(r.flags.mstd).into(),
                    b(r.flags.eq_upper).into(),
                    b(r.flags.eq_lower).into(),
                ])?;
            }
            Inner::Json(w) => {
                serde_json::to_writer(&mut *w, r)?;
                writeln!(w)?;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<W> {
        match self.inner {
            Inner::Csv(csv) => csv.into_inner().map_err(|e| e.into_error().into()),
            Inner::Json(mut w) => {
                w.flush()?;
                Ok(w)
            }
        }
    }
}

fn write_all<W: Write>(format: Format, w: W, campaign: &Campaign, records: &[SearchRecord]) -> Result<()> {
    let mut out = RecordWriter::new(format, w, campaign)?;
    for r in records {
        out.write(r)?;
    }
    out.finish().map(drop)
}

pub fn write_csv<W: Write>(w: W, campaign: &Campaign, records: &[SearchRecord]) -> Result<()> {
    write_all(Format::Csv, w, campaign, records)
}

/// JSON lines: the header object, then one record per line.
pub fn write_json<W: Write>(w: W, campaign: &Campaign, records: &[SearchRecord]) -> Result<()> {
    write_all(Format::Json, w, campaign, records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::{scan, Universe};
    use crate::group::GroupSpec;
    use crate::limits::Limits;

    #[test]
    fn csv_layout_is_stable() {
        let c = Campaign::new(Universe::Group(GroupSpec::cyclic(4).unwrap()));
        let (records, _) = scan(&c, &Limits::default()).unwrap();
        let mut a = Vec::new();
        write_csv(&mut a, &c, &records).unwrap();
        let text = String::from_utf8(a.clone()).unwrap();
        let mut lines = text.lines();
        assert!(lines
            .next()
            .unwrap()
            .starts_with(&format!("# sumdiff {VERSION} universe=Z4")));
        assert_eq!(lines.next().unwrap(), CSV_COLUMNS.join(","));
        assert_eq!(lines.next().unwrap(), "Z4,0@Z4,1,1,1,1,1,1,1,true,false,true,true");
        assert_eq!(lines.count(), records.len() - 1);

        let mut b = Vec::new();
        write_csv(&mut b, &c, &scan(&c, &Limits::default()).unwrap().0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn json_lines_parse() {
        let c = Campaign::new(Universe::Integers { lo: 0, hi: 4 });
        let (records, _) = scan(&c, &Limits::default()).unwrap();
        let mut buf = Vec::new();
        write_json(&mut buf, &c, &records).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let values: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(values[0]["version"], VERSION);
        assert_eq!(values.len(), records.len() + 1);
        assert_eq!(values[1]["set"], "0@Z");
        assert_eq!(values[1]["sigma"], serde_json::json!([1, 1]));
    }
}
