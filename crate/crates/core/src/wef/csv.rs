//! CSV exchange format for enumerators.
//!
//! ```text
//! # length: 32
//! # mode: rational
//! # d_cap: none
//! d,coefficient,exact
//! 0,1.00000000000000000000,1
//! ```
//! IOWEF files add an `input_length` header and a leading `w` column.
//! The `exact` column is present in rational mode only.

use std::fmt::Write as _;

use super::coeff::Coeff;
use super::poly::{IOWeightPoly, WeightPoly};
use crate::error::{Error, Result};

pub type Metadata = Vec<(String, String)>;

fn write_header(out: &mut String, meta: &[(String, String)]) {
    for (k, v) in meta {
        let _ = writeln!(out, "# {k}: {v}");
    }
}

pub fn write_wef_csv<C: Coeff>(poly: &WeightPoly<C>, meta: &[(String, String)]) -> String {
    let mut out = String::new();
    write_header(&mut out, meta);
    let _ = writeln!(out, "# length: {}", poly.len());
    let _ = writeln!(out, "# mode: {}", C::MODE.name());
    let exact = C::one().to_exact().is_some();
    out.push_str(if exact { "d,coefficient,exact\n" } else { "d,coefficient\n" });
    for (d, c) in poly.terms() {
        let _ = write!(out, "{d},{}", c.to_decimal());
        if let Some(e) = c.to_exact() {
            let _ = write!(out, ",{e}");
        }
        out.push('\n');
    }
    out
}

pub fn write_iowef_csv<C: Coeff>(poly: &IOWeightPoly<C>, meta: &[(String, String)]) -> String {
    let mut out = String::new();
    write_header(&mut out, meta);
    let _ = writeln!(out, "# input_length: {}", poly.input_len());
    let _ = writeln!(out, "# length: {}", poly.output_len());
    let _ = writeln!(out, "# mode: {}", C::MODE.name());
    let exact = C::one().to_exact().is_some();
    out.push_str(if exact { "w,d,coefficient,exact\n" } else { "w,d,coefficient\n" });
    for (w, d, c) in poly.terms() {
        let _ = write!(out, "{w},{d},{}", c.to_decimal());
        if let Some(e) = c.to_exact() {
            let _ = write!(out, ",{e}");
        }
        out.push('\n');
    }
    out
}

struct Parsed {
    meta: Metadata,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

fn parse(text: &str) -> Result<Parsed> {
    let mut meta = Vec::new();
    let mut columns: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once(':') {
                meta.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        let fields: Vec<String> = line.split(',').map(|s| s.trim().to_string()).collect();
        if columns.is_none() {
            columns = Some(fields);
        } else {
            rows.push(fields);
        }
    }
    let columns = columns.ok_or_else(|| Error::Parse("CSV has no column header".into()))?;
    Ok(Parsed { meta, columns, rows })
}

fn meta_usize(meta: &Metadata, key: &str) -> Option<Result<usize>> {
    meta.iter()
        .rev()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.parse().map_err(|_| Error::Parse(format!("bad {key} value {v:?}"))))
}

fn column(columns: &[String], name: &str) -> Option<usize> {
    columns.iter().position(|c| c == name)
}

fn read_value<C: Coeff>(row: &[String], coeff_col: usize, exact_col: Option<usize>) -> Result<C> {
    let field = |i: usize| row.get(i).ok_or_else(|| Error::Parse(format!("short CSV row {row:?}")));
    match exact_col {
        Some(e) if C::one().to_exact().is_some() => C::parse(field(e)?),
        _ => C::parse(field(coeff_col)?),
    }
}

fn index(row: &[String], col: usize) -> Result<usize> {
    let f = row.get(col).ok_or_else(|| Error::Parse(format!("short CSV row {row:?}")))?;
    f.parse().map_err(|_| Error::Parse(format!("bad weight {f:?}")))
}

/// Reads a WEF; without a `length` header the largest weight is used.
pub fn read_wef_csv<C: Coeff>(text: &str) -> Result<(WeightPoly<C>, Metadata)> {
    let p = parse(text)?;
    let d_col = column(&p.columns, "d").ok_or_else(|| Error::Parse("missing d column".into()))?;
    let c_col = column(&p.columns, "coefficient").ok_or_else(|| Error::Parse("missing coefficient column".into()))?;
    let e_col = column(&p.columns, "exact");
    let mut pairs = Vec::new();
    for row in &p.rows {
        pairs.push((index(row, d_col)?, read_value::<C>(row, c_col, e_col)?));
    }
    let len = match meta_usize(&p.meta, "length") {
        Some(v) => v?,
        None => pairs.iter().map(|(d, _)| *d).max().unwrap_or(0),
    };
    Ok((WeightPoly::from_pairs(len, pairs)?, p.meta))
}

pub fn read_iowef_csv<C: Coeff>(text: &str) -> Result<(IOWeightPoly<C>, Metadata)> {
    let p = parse(text)?;
    let w_col = column(&p.columns, "w").ok_or_else(|| Error::Parse("missing w column".into()))?;
    let d_col = column(&p.columns, "d").ok_or_else(|| Error::Parse("missing d column".into()))?;
    let c_col = column(&p.columns, "coefficient").ok_or_else(|| Error::Parse("missing coefficient column".into()))?;
    let e_col = column(&p.columns, "exact");
    let mut triples = Vec::new();
    for row in &p.rows {
        triples.push((index(row, w_col)?, index(row, d_col)?, read_value::<C>(row, c_col, e_col)?));
    }
    let input_len = match meta_usize(&p.meta, "input_length") {
        Some(v) => v?,
        None => triples.iter().map(|t| t.0).max().unwrap_or(0),
    };
    let len = match meta_usize(&p.meta, "length") {
        Some(v) => v?,
        None => triples.iter().map(|t| t.1).max().unwrap_or(0),
    };
    Ok((IOWeightPoly::from_triples(input_len, len, triples)?, p.meta))
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;

    #[test]
    fn wef_round_trip_exact() {
        let p = WeightPoly::from_pairs(
            8,
            [(0, BigRational::from_integer(1.into())), (4, BigRational::new(7.into(), 3.into()))],
        )
        .unwrap();
        let text = write_wef_csv(&p, &[("spec".into(), "test".into())]);
        assert!(text.contains("4,2.33333333333333333333,7/3"));
        let (back, meta) = read_wef_csv::<BigRational>(&text).unwrap();
        assert_eq!(back, p);
        assert!(meta.contains(&("mode".into(), "rational".into())));
        let (as_float, _) = read_wef_csv::<f64>(&text).unwrap();
        assert!((as_float.coeff(4) - 7.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn iowef_round_trip_float() {
        let p = IOWeightPoly::from_triples(4, 8, [(0, 0, 1.0), (1, 4, 0.125), (3, 5, 2.5)]).unwrap();
        let (back, _) = read_iowef_csv::<f64>(&write_iowef_csv(&p, &[])).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rejects_garbage() {
        assert!(read_wef_csv::<f64>("# only comments\n").is_err());
        assert!(read_wef_csv::<f64>("d,coefficient\nx,1\n").is_err());
    }
}
