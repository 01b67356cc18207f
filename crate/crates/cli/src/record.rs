//! The output record and its JSON, CSV and table renderings.

use beta_forge::numeric::{rat, CertifiedValue};
use beta_forge::Rational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaInfo {
    pub spec: String,
    pub value: String,
    pub error_bound: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    /// A single alphabet size, or a range such as `"1..10"`.
    pub m: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<BetaInfo>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Exact,
    Certified { error_bound: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub params: Params,
    pub payload: Value,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Header plus rows; `flat` marks data that is one record per row.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub flat: bool,
}

impl Table {
    pub fn flat(headers: &[&str]) -> Table {
        Table { headers: headers.iter().map(|s| s.to_string()).collect(), rows: Vec::new(), flat: true }
    }

    /// Two-column field/value listing for nested payloads.
    pub fn fields(pairs: Vec<(&str, String)>) -> Table {
        Table {
            headers: vec!["field".into(), "value".into()],
            rows: pairs.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect(),
            flat: false,
        }
    }
}

pub fn render(record: &OutputRecord, table: &Table, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(record).expect("record serializes");
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            if !table.flat {
                return Err(CliError::Usage(format!("'{}' output is nested; use --format json or table", record.command)));
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.headers).map_err(|e| CliError::Domain(e.to_string()))?;
            for row in &table.rows {
                w.write_record(row).map_err(|e| CliError::Domain(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Domain(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Table => Ok(render_table(table)),
    }
}

fn render_table(table: &Table) -> String {
    let mut widths: Vec<usize> = table.headers.iter().map(|h| h.chars().count()).collect();
    for row in &table.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&table.headers);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&line(&rule));
    for row in &table.rows {
        out.push_str(&line(row));
    }
    out
}

/// Decimal places used for a tolerance: enough to show it, at least five.
pub fn places_for(tol: &Rational) -> usize {
    let digits = (-rat::to_f64(tol).log10()).ceil();
    (digits.max(0.0) as usize + 1).clamp(5, 40)
}

/// Upper bound for `q >= 0` written with three significant digits.
pub fn format_bound(q: &Rational) -> String {
    if *q == rat::int(0) {
        return "0".into();
    }
    let mut s = format!("{:.2e}", rat::to_f64(q));
    // Bump the last digit until the printed value is no smaller than `q`.
    for _ in 0..4 {
        match rat::parse(&s) {
            Some(p) if p >= *q => return s,
            _ => {
                let f: f64 = s.parse().unwrap_or(0.0);
                s = format!("{:.2e}", f * (1.0 + 5e-3));
            }
        }
    }
    s
}

/// A certified value printed to `places` decimals; the bound includes the
/// display rounding.
pub fn display_value(c: &CertifiedValue, places: usize) -> (String, Rational) {
    let value = rat::format_decimal(&c.value, places);
    let printed = rat::parse(&value).expect("formatted decimal parses");
    let bound = &c.error_bound + (&printed - &c.value).abs();
    (value, bound)
}
