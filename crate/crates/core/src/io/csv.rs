//! CSV ingestion and emission for yearly series.
//!
//! The format is a `year,value` header followed by one record per line.
//! Lines starting with `#` and blank lines are ignored anywhere in the
//! file. Rows are sorted by year after loading; duplicate years are
//! rejected rather than merged.

use std::io::Read;

use crate::error::Error;
use crate::series::TimeSeries;

/// Reads a `year,value` CSV into a series. The label and unit default to
/// `"series"` and `"value"`; relabel with [`TimeSeries::with_label`].
pub fn read_csv<R: Read>(mut source: R) -> Result<TimeSeries, Error> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;

    let mut header_seen = false;
    let mut rows: Vec<(i32, f64)> = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line_number = index + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            if line != "year,value" {
                return Err(Error::MalformedHeader {
                    found: line.to_string(),
                });
            }
            header_seen = true;
            continue;
        }
        let (year_field, value_field) = line
            .split_once(',')
            .ok_or(Error::MalformedRow { line: line_number })?;
        let year: i32 = year_field
            .trim()
            .parse()
            .map_err(|_| Error::MalformedRow { line: line_number })?;
        let value: f64 = value_field
            .trim()
            .parse()
            .map_err(|_| Error::MalformedRow { line: line_number })?;
        if !value.is_finite() {
            return Err(Error::NonFiniteValue { year });
        }
        rows.push((year, value));
    }
    if !header_seen {
        return Err(Error::MalformedHeader {
            found: String::new(),
        });
    }

    rows.sort_by_key(|row| row.0);
    if let Some(pair) = rows.windows(2).find(|pair| pair[0].0 == pair[1].0) {
        return Err(Error::DuplicateYear { year: pair[0].0 });
    }

    TimeSeries::new("series", "value", rows)
}

/// Writes a series back out in the `year,value` format at full precision
/// (values render as their shortest exact decimal representation).
pub fn write_csv(series: &TimeSeries) -> String {
    let mut out = String::from("year,value\n");
    for &(year, value) in series.points() {
        out.push_str(&format!("{year},{value}\n"));
    }
    out
}
