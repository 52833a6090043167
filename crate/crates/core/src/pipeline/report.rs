//! Per-order bound tables as aligned text and CSV.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsRow {
    pub n: usize,
    /// Largest seed size before any pass.
    pub seed: Option<usize>,
    /// Largest size after each half-pass, aligned with [`BoundsTable::columns`].
    pub half_passes: Vec<Option<usize>>,
    pub final_size: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsTable {
    /// Half-pass tags such as `up1`, `down1`.
    pub columns: Vec<String>,
    pub rows: Vec<BoundsRow>,
}

impl BoundsTable {
    pub fn finals(&self) -> BTreeMap<usize, usize> {
        self.rows
            .iter()
            .filter_map(|r| r.final_size.map(|s| (r.n, s)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub csv: String,
}

/// `1up` -> `up1`
fn column_name(tag: &str) -> String {
    let split = tag.find(|c: char| !c.is_ascii_digit()).unwrap_or(tag.len());
    format!("{}{}", &tag[split..], &tag[..split])
}

fn cell(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn report(table: &BoundsTable, previous: Option<&BTreeMap<usize, usize>>) -> Report {
    let mut header: Vec<String> = vec!["n".into()];
    header.extend(table.columns.iter().map(|c| column_name(c)));
    header.extend(["final", "previous", "improved"].map(String::from));

    let rows: Vec<(Vec<String>, Vec<String>)> = table
        .rows
        .iter()
        .map(|r| {
            let prev = previous.and_then(|p| p.get(&r.n).copied());
            let improved = match (prev, r.final_size) {
                (Some(p), Some(f)) => Some(f > p),
                _ => None,
            };
            let mut fields = vec![r.n.to_string()];
            fields.extend(r.half_passes.iter().map(|&v| cell(v)));
            fields.push(cell(r.final_size));
            fields.push(cell(prev));
            let mut text_fields = fields.clone();
            fields.push(improved.map(|b| b.to_string()).unwrap_or_default());
            text_fields.push(match improved {
                Some(true) => "*".into(),
                _ => String::new(),
            });
            (fields, text_fields)
        })
        .collect();

    let mut csv = header.join(",");
    csv.push('\n');
    for (fields, _) in &rows {
        csv.push_str(&fields.join(","));
        csv.push('\n');
    }

    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            rows.iter()
                .map(|(_, t)| t[i].len())
                .chain([header[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut text = String::new();
    let line = |out: &mut String, fields: &[String]| {
        let cells: Vec<String> = fields
            .iter()
            .zip(&widths)
            .map(|(f, &w)| format!("{f:>w$}"))
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    };
    line(&mut text, &header);
    for (_, t) in &rows {
        line(&mut text, t);
    }
    Report { text, csv }
}

/// Parses `n,bound` lines. Blank lines and lines whose first field is not a
/// number (headers) are skipped.
pub fn parse_previous_bounds(text: &str) -> Result<BTreeMap<usize, usize>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let mut fields = line.split(',').map(str::trim);
        let Some(Ok(n)) = fields.next().map(str::parse::<usize>) else {
            continue;
        };
        let value = fields
            .next()
            .and_then(|v| v.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse {
                offset: i + 1,
                reason: format!("line {}: expected `n,bound`", i + 1),
            })?;
        out.insert(n, value);
    }
    Ok(out)
}
