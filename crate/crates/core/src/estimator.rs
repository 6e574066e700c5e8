//! The log-space estimate `n_k` of the number of box points of norm `k`,
//! and its discrepancy `f_k` from the exact count `b_k`.
//!
//! The error is `f_k = ⌊|n_k^raw - b_k|⌋`, taken against the estimate before
//! flooring; flooring `n_k` first would make the outer floor meaningless and
//! disagrees with the worked `R = 10` table (`b_4 = 14`, `n_4 = 13.4`, `f_4 = 0`).
//!
//! Points of norm `k` lie on the hyperbolic surface `Π|x_i| = k`, which the
//! componentwise log maps to the hyperplane `Σ y_i = log k`. Its section by
//! the log image of the cube has volume `√n/(n-1)! · (n log R - log k)^{n-1}`,
//! and each principal ideal of norm `k` contributes `w` translates of the
//! log lattice there, giving `n_k = ⌊w a_k vol(S_k) / vol(Λ_log)⌋`.

use std::collections::BTreeMap;

use crate::enumeration::{BoxSpec, CountRow, CountTable};
use crate::error::{Error, Result};
use crate::units::UnitSystem;
use crate::zeta::ZetaSeries;

fn factorial(m: usize) -> f64 {
    (1..=m).map(|i| i as f64).product()
}

/// `vol(S_k) = √n/(n-1)! · (n log R - log k)^{n-1}`, zero once `k ≥ R^n`.
pub fn section_volume(n: usize, radius: f64, k: u64) -> f64 {
    let t = n as f64 * radius.ln() - (k as f64).ln();
    if t <= 0.0 {
        return 0.0;
    }
    (n as f64).sqrt() / factorial(n - 1) * t.powi(n as i32 - 1)
}

/// `w a_k vol(S_k) / vol(Λ_log)` before flooring.
pub fn raw_estimate(units: &UnitSystem, n: usize, radius: f64, k: u64, a: u32) -> f64 {
    if a == 0 {
        return 0.0;
    }
    units.w() as f64 * a as f64 * section_volume(n, radius, k) / units.log_volume()
}

fn fill(row: &mut CountRow, units: &UnitSystem, n: usize, radius: f64) {
    let raw = raw_estimate(units, n, radius, row.k, row.a);
    let floored = raw.floor() as u64;
    row.n_raw = Some(raw);
    row.n = Some(floored);
    row.f = match (row.a, row.b) {
        (0, _) | (_, None) => None,
        (_, Some(b)) => Some((raw - b as f64).abs().floor() as u64),
    };
}

/// Table of estimates alone: one row per `k ≤ min(⌊R^n⌋, k_max)` with `a_k ≠ 0`.
pub fn estimate_counts(
    zeta: &ZetaSeries,
    units: &UnitSystem,
    spec: &BoxSpec,
    k_max: Option<u64>,
) -> Result<CountTable> {
    let n = zeta.degree();
    let limit = spec.norm_limit(n).min(k_max.unwrap_or(u64::MAX));
    if (zeta.cutoff() as u64) < limit {
        return Err(Error::CutoffMismatch { cutoff: zeta.cutoff(), needed: limit });
    }
    let rows = (1..=limit)
        .filter_map(|k| {
            let a = zeta.coeff(k)?;
            (a != 0).then(|| {
                let mut row = CountRow { k, a, b: None, n_raw: None, n: None, f: None };
                fill(&mut row, units, n, spec.radius());
                row
            })
        })
        .collect();
    Ok(CountTable { radius: spec.radius(), degree: n, k_limit: limit, max_norm: 0, total_points: 0, rows })
}

/// Adds the `n_raw`, `n` and `f` columns to a table of exact counts.
pub fn attach_estimates(table: &mut CountTable, units: &UnitSystem) {
    let (n, radius) = (table.degree, table.radius);
    for row in &mut table.rows {
        fill(row, units, n, radius);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorProfile {
    /// `f → number of rows with f_k = f`.
    pub histogram: BTreeMap<u64, u64>,
    /// `f → fraction of rows with f_k ≤ f`, for every `f ≤ max_error`.
    pub cumulative: Vec<f64>,
    pub max_error: u64,
    pub zero_fraction: f64,
    /// Rows counted (those with `a_k ≠ 0`).
    pub rows: u64,
}

impl ErrorProfile {
    /// Fraction of rows with `f_k ≤ f`.
    pub fn fraction_at_most(&self, f: u64) -> f64 {
        if self.rows == 0 {
            return 1.0;
        }
        match self.cumulative.get(f as usize) {
            Some(&v) => v,
            None => 1.0,
        }
    }
}

/// Distribution of `f_k` over the rows with `a_k ≠ 0`.
pub fn error_profile(table: &CountTable) -> Result<ErrorProfile> {
    if !table.has_exact() {
        return Err(Error::MissingColumn("b_k"));
    }
    if !table.has_estimate() {
        return Err(Error::MissingColumn("n_k"));
    }
    let mut histogram = BTreeMap::new();
    let mut rows = 0u64;
    for r in table.rows.iter().filter(|r| r.a != 0) {
        let f = r.f.expect("rows with a_k != 0 carry f_k");
        *histogram.entry(f).or_insert(0) += 1;
        rows += 1;
    }
    let max_error = histogram.keys().next_back().copied().unwrap_or(0);
    let mut cumulative = Vec::with_capacity(max_error as usize + 1);
    let mut acc = 0u64;
    for f in 0..=max_error {
        acc += histogram.get(&f).copied().unwrap_or(0);
        cumulative.push(if rows == 0 { 1.0 } else { acc as f64 / rows as f64 });
    }
    let zero_fraction = if rows == 0 { 1.0 } else { histogram.get(&0).copied().unwrap_or(0) as f64 / rows as f64 };
    Ok(ErrorProfile { histogram, cumulative, max_error, zero_fraction, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{count_table, DEFAULT_BUDGET};
    use crate::numberfield::{parse_field, AlgebraicInt};
    use crate::poly::Polynomial;
    use crate::units::build_unit_system;
    use crate::zeta::dirichlet_coeffs;

    #[test]
    fn section_volumes() {
        let ln10 = 10f64.ln();
        assert!((section_volume(2, 10.0, 1) - 2f64.sqrt() * 2.0 * ln10).abs() < 1e-12);
        assert!((section_volume(2, 10.0, 10) - 2f64.sqrt() * ln10).abs() < 1e-12);
        assert_eq!(section_volume(2, 10.0, 100), 0.0);
        assert_eq!(section_volume(2, 10.0, 101), 0.0);
        let v: Vec<f64> = (1..50).map(|k| section_volume(4, 10.0, k)).collect();
        assert!(v.windows(2).all(|w| w[1] < w[0]));
    }

    fn golden() -> (crate::NumberField, UnitSystem) {
        let k = parse_field(Polynomial::from_i64s(&[-1, -1, 1]).unwrap(), true).unwrap();
        let u = build_unit_system(&k, vec![AlgebraicInt::theta(2)], 2).unwrap();
        (k, u)
    }

    #[test]
    fn unit_estimate_at_radius_ten() {
        let (k, u) = golden();
        let z = dirichlet_coeffs(&k, 100).unwrap();
        let spec = BoxSpec::new(10.0).unwrap();
        let mut t = count_table(&k, &spec, &z, None, DEFAULT_BUDGET).unwrap();
        attach_estimates(&mut t, &u);
        let r1 = t.row(1).unwrap();
        assert!((r1.n_raw.unwrap() - 19.1398).abs() < 1e-3);
        assert_eq!((r1.n, r1.b, r1.f), (Some(19), Some(18), Some(1)));
        let r100 = t.row(100).unwrap();
        assert_eq!(r100.n, Some(0));
        assert_eq!(t.row(4).unwrap().f, Some(0));
        assert_eq!(t.row(5).unwrap().f, Some(1));
        assert_eq!(t.row(80).unwrap().f, Some(1));
        assert_eq!(t.row(89).unwrap().f, Some(0));
        assert_eq!(t.row(100).unwrap().f, Some(2));
        let p = error_profile(&t).unwrap();
        assert_eq!(p.max_error, 2);
        assert_eq!(*p.cumulative.last().unwrap(), 1.0);
        assert!(p.cumulative.windows(2).all(|w| w[0] <= w[1]));

        let est = estimate_counts(&z, &u, &spec, None).unwrap();
        let from_table: Vec<_> = t.rows.iter().filter(|r| r.a != 0).map(|r| r.n).collect();
        assert_eq!(est.rows.iter().map(|r| r.n).collect::<Vec<_>>(), from_table);
    }

    #[test]
    fn doubling_a_doubles_the_raw_estimate() {
        let (_, u) = golden();
        let one = raw_estimate(&u, 2, 10.0, 11, 1);
        assert!((raw_estimate(&u, 2, 10.0, 11, 2) - 2.0 * one).abs() < 1e-12);
        assert_eq!(raw_estimate(&u, 2, 10.0, 2, 0), 0.0);
    }

    #[test]
    fn unit_estimate_improves_with_radius() {
        // b_1 is a step function of R, so the relative error is not monotone:
        // 0.063 at R = 10, 0.0073 at R = 100, 0.0100 at R = 1000
        let (k, u) = golden();
        let z = dirichlet_coeffs(&k, 1).unwrap();
        let rel: Vec<f64> = [10.0, 100.0, 1000.0]
            .iter()
            .map(|&r| {
                let spec = BoxSpec::new(r).unwrap();
                let t = count_table(&k, &spec, &z, Some(1), DEFAULT_BUDGET).unwrap();
                let b = t.row(1).unwrap().b.unwrap() as f64;
                ((raw_estimate(&u, 2, r, 1, 1) - b) / b).abs()
            })
            .collect();
        assert!(rel[1] < rel[0] && rel[2] < rel[0]);
        assert!(rel[1] < 0.02 && rel[2] < 0.02);
    }

    #[test]
    fn exact_profile_and_missing_columns() {
        let (k, u) = golden();
        let z = dirichlet_coeffs(&k, 100).unwrap();
        let spec = BoxSpec::new(10.0).unwrap();
        let t = count_table(&k, &spec, &z, None, DEFAULT_BUDGET).unwrap();
        assert!(matches!(error_profile(&t), Err(Error::MissingColumn("n_k"))));
        let est = estimate_counts(&z, &u, &spec, None).unwrap();
        assert!(matches!(error_profile(&est), Err(Error::MissingColumn("b_k"))));

        let mut perfect = t.clone();
        attach_estimates(&mut perfect, &u);
        for r in &mut perfect.rows {
            r.n = r.b;
            r.f = Some(0);
        }
        let p = error_profile(&perfect).unwrap();
        assert_eq!((p.zero_fraction, p.max_error), (1.0, 0));
    }
}
