//! CSV knot-table ingestion with per-row validation.
//!
//! Expected header: `name,pd,unknotting_number,signature,conway_a2,determinant`
//! with empty cells allowed for the optional fields. Rows that do not parse
//! as knot diagrams, or whose stated determinant disagrees with the computed
//! one, are skipped with a warning.

use std::path::Path;

use num_bigint::BigInt;

use regionum::diagram::parse_pd;
use regionum::goeritz;
use regionum::search::KnotRecord;

pub fn ingest_csv(path: &Path) -> Result<Vec<KnotRecord>, Box<dyn std::error::Error>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
    let headers = reader.headers()?.clone();
    let expected = ["name", "pd", "unknotting_number", "signature", "conway_a2", "determinant"];
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(format!("unexpected CSV header {:?}; expected {:?}", headers, expected).into());
    }
    let mut out = Vec::new();
    let mut failures = 0usize;
    let mut total = 0usize;
    for (i, row) in reader.records().enumerate() {
        total += 1;
        let row = row?;
        match parse_row(&row) {
            Ok(rec) => out.push(rec),
            Err(e) => {
                failures += 1;
                eprintln!("warning: row {} skipped: {e}", i + 2);
            }
        }
    }
    if total == 0 {
        eprintln!("warning: {} contains no data rows", path.display());
    }
    if failures > 0 && out.is_empty() {
        return Err("all CSV rows failed validation".into());
    }
    Ok(out)
}

fn parse_row(row: &csv::StringRecord) -> Result<KnotRecord, Box<dyn std::error::Error>> {
    let get = |i: usize| row.get(i).unwrap_or("").to_string();
    let opt = |i: usize| -> Option<&str> {
        match row.get(i) {
            Some("") | None => None,
            Some(s) => Some(s),
        }
    };
    let rec = KnotRecord {
        name: get(0),
        pd: get(1),
        unknotting_number: opt(2).map(str::parse).transpose()?,
        signature: opt(3).map(str::parse).transpose()?,
        conway_a2: opt(4).map(str::parse).transpose()?,
        determinant: opt(5).map(str::parse).transpose()?,
    };
    let d = parse_pd(&rec.pd)?;
    if let Some(stated) = rec.determinant {
        let computed = goeritz::determinant(&d)?;
        if computed != BigInt::from(stated) {
            return Err(format!(
                "{}: stated determinant {} but diagram has {}",
                rec.name, stated, computed
            )
            .into());
        }
    }
    Ok(rec)
}
