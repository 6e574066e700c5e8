//! CSV and JSON output. Floats carry 15 significant digits so that tables
//! diff cleanly across runs and platforms.

use std::io::{Read, Write};

use serde::Serialize;

use crate::channel::PepCurve;
use crate::enumeration::{CountRow, CountTable, LatticePoint};
use crate::error::{Error, Result};
use crate::estimator::ErrorProfile;
use crate::zeta::ZetaSeries;

/// `%.15g`: 15 significant digits, trailing zeros dropped, exponent form
/// outside `1e-5 ≤ |x| < 1e15`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.14e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let m = trim_zeros(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub const COUNT_HEADER: [&str; 6] = ["k", "a_k", "b_k", "n_k_raw", "n_k", "f_k"];

/// Columns `k, a_k, b_k, n_k_raw, n_k, f_k`; missing values are empty cells.
pub fn write_count_table<W: Write>(table: &CountTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COUNT_HEADER)?;
    for r in &table.rows {
        w.write_record([
            r.k.to_string(),
            r.a.to_string(),
            opt(r.b),
            r.n_raw.map(format_float).unwrap_or_default(),
            opt(r.n),
            opt(r.f),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn cell<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, line: usize) -> Result<Option<T>> {
    match rec.get(i).map(str::trim) {
        None | Some("") => Ok(None),
        Some(s) => s
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidParameter(format!("row {line}: bad {} value {s:?}", COUNT_HEADER[i]))),
    }
}

/// Reads a table written by [`write_count_table`]. The CSV does not record
/// the box, so `radius` and `degree` come from the caller; `k_limit` is
/// `min(⌊R^n⌋, max_norm)` when given, otherwise the largest `k` present.
pub fn read_count_table<R: Read>(input: R, radius: f64, degree: usize, max_norm: Option<u64>) -> Result<CountTable> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != COUNT_HEADER {
        return Err(Error::InvalidParameter(format!("count table header must be {}", COUNT_HEADER.join(","))));
    }
    let mut rows: Vec<CountRow> = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let k: u64 = cell(&rec, 0, line)?.ok_or_else(|| Error::InvalidParameter(format!("row {line}: missing k")))?;
        if rows.last().is_some_and(|r| r.k >= k) {
            return Err(Error::InvalidParameter(format!("row {line}: k must increase")));
        }
        rows.push(CountRow {
            k,
            a: cell(&rec, 1, line)?.ok_or_else(|| Error::InvalidParameter(format!("row {line}: missing a_k")))?,
            b: cell(&rec, 2, line)?,
            n_raw: cell(&rec, 3, line)?,
            n: cell(&rec, 4, line)?,
            f: cell(&rec, 5, line)?,
        });
    }
    let spec = crate::enumeration::BoxSpec::new(radius)?;
    let k_limit = match max_norm {
        Some(m) => spec.norm_limit(degree).min(m),
        None => rows.last().map_or(0, |r| r.k),
    };
    let total_points = rows.iter().filter_map(|r| r.b).sum();
    Ok(CountTable {
        radius,
        degree,
        k_limit,
        max_norm: rows.iter().filter(|r| r.b.unwrap_or(0) > 0).map(|r| r.k).max().unwrap_or(0),
        total_points,
        rows,
    })
}

/// Columns `k, a_k` for `1 ≤ k ≤ max`.
pub fn write_zeta_coeffs<W: Write>(zeta: &ZetaSeries, max: usize, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "a_k"])?;
    for k in 1..=max.min(zeta.cutoff()) as u64 {
        w.write_record([k.to_string(), zeta.coeff(k).unwrap_or(0).to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Columns `c_0, ..., c_{n-1}, norm, height`.
pub fn write_points<W: Write>(points: &[LatticePoint], degree: usize, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = (0..degree).map(|i| format!("c_{i}")).collect();
    header.push("norm".into());
    header.push("height".into());
    w.write_record(&header)?;
    for p in points {
        let mut rec: Vec<String> = p.coords.iter().map(i64::to_string).collect();
        rec.push(p.norm.to_string());
        rec.push(format_float(p.height));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Columns `f, count, cumulative_fraction` for every `f ≤ max_error`.
pub fn write_error_histogram<W: Write>(profile: &ErrorProfile, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["f", "count", "cumulative_fraction"])?;
    for (f, c) in profile.cumulative.iter().enumerate() {
        let count = profile.histogram.get(&(f as u64)).copied().unwrap_or(0);
        w.write_record([f.to_string(), count.to_string(), format_float(*c)])?;
    }
    w.flush()?;
    Ok(())
}

/// Columns `snr_db, snr, pe_estimate, pe_exact`.
pub fn write_pep_curve<W: Write>(curve: &PepCurve, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["snr_db", "snr", "pe_estimate", "pe_exact"])?;
    for i in 0..curve.snr.len() {
        w.write_record([
            format_float(curve.snr_db[i]),
            format_float(curve.snr[i]),
            format_float(curve.pe_estimate[i]),
            format_float(curve.pe_exact[i]),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Pretty JSON followed by a newline.
pub fn write_json<W: Write, T: Serialize>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}
