//! Truncated inverse norm power sums and their zeta-function bounds.
//!
//! For the height-truncated sum `S_K(s, m) = Σ_{0 < H(x) ≤ m} |N(x)|^{-s}` a
//! PID field gives `ζ_K(s, m) < S_K(s, m) ≤ max_k b'_k · ζ_K(s, m)`: every ideal
//! with a generator in the box contributes at least the pair `±x`, and at
//! most `max b'_k` generators. For the box sums the log-space estimate gives
//! `Σ n_k k^{-s} ≤ K₁ Σ_m C(n-1, m) (log R^n)^{n-1-m} |D^m ζ_K(s)|`.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::enumeration::{enumerate_box, unit_orbits, BoxSpec, CountTable};
use crate::error::{Error, Result};
use crate::estimator::raw_estimate;
use crate::numberfield::NumberField;
use crate::units::UnitSystem;
use crate::zeta::{zeta_derivative, ZetaSeries};

fn power_sum<I: Iterator<Item = (u64, f64)>>(terms: I, s: u32) -> f64 {
    let mut v: Vec<f64> = terms.map(|(k, c)| c / (k as f64).powi(s as i32)).collect();
    v.sort_by(f64::total_cmp);
    v.iter().sum()
}

/// `Σ_k b_k / k^s` over the table.
pub fn norm_sum(table: &CountTable, s: u32) -> Result<f64> {
    if !table.has_exact() {
        return Err(Error::MissingColumn("b_k"));
    }
    Ok(power_sum(table.rows.iter().map(|r| (r.k, r.b.unwrap() as f64)), s))
}

/// `Σ_k n_k / k^s` with the floored estimate.
pub fn estimated_norm_sum(table: &CountTable, s: u32) -> Result<f64> {
    if !table.has_estimate() {
        return Err(Error::MissingColumn("n_k"));
    }
    Ok(power_sum(table.rows.iter().map(|r| (r.k, r.n.unwrap() as f64)), s))
}

/// Wiretap sum, `s = 3`.
pub fn eve_sum(table: &CountTable) -> Result<f64> {
    norm_sum(table, 3)
}

/// PEP sum, `s = 2`.
pub fn pep_sum(table: &CountTable) -> Result<f64> {
    norm_sum(table, 2)
}

/// Both sides of the height-truncated propositions at one `(s, m)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeightBoundReport {
    pub s: u32,
    pub height: f64,
    /// `S_K(s, m)`.
    pub norm_sum: f64,
    /// `ζ_K(s, m)`, the lower bound.
    pub zeta_truncated: f64,
    /// `max_k b'_k`.
    pub max_count: u64,
    /// `N_m`, the largest norm of an ideal of height at most `m`.
    pub max_norm: u64,
    pub ideals: usize,
    pub points: usize,
    /// `max_k b'_k · ζ_K(s, m)`.
    pub coefficient_upper_bound: f64,
    /// `S > ζ > 1`. Fails necessarily when only the unit ideal fits.
    pub lower_bound_holds: bool,
    pub upper_bound_holds: bool,
}

impl HeightBoundReport {
    /// Only `(1)` has a generator of height at most `m`.
    pub fn degenerate(&self) -> bool {
        self.ideals <= 1
    }
}

/// Enumerates the box of radius `m` once and evaluates both propositions.
pub fn height_bounds(field: &NumberField, s: u32, m: f64, budget: u64) -> Result<HeightBoundReport> {
    if s < 2 {
        return Err(Error::InvalidParameter(format!("s = {s}, need s >= 2")));
    }
    let points = if m >= 1.0 { enumerate_box(field, &BoxSpec::new(m)?, budget)? } else { Vec::new() };
    let norms: Vec<u64> = points.iter().map(|x| field.norm(x).abs().to_u64().expect("norm bounded by m^n")).collect();
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &k in &norms {
        *counts.entry(k).or_insert(0) += 1;
    }
    let norm_sum = power_sum(counts.iter().map(|(&k, &c)| (k, c as f64)), s);
    let orbits = unit_orbits(field, &points);
    let zeta_truncated = power_sum(orbits.iter().map(|o| (o.norm.to_u64().unwrap(), 1.0)), s);
    let max_count = counts.values().copied().max().unwrap_or(0);
    let coefficient_upper_bound = max_count as f64 * zeta_truncated;
    Ok(HeightBoundReport {
        s,
        height: m,
        norm_sum,
        zeta_truncated,
        max_count,
        max_norm: counts.keys().next_back().copied().unwrap_or(0),
        ideals: orbits.len(),
        points: points.len(),
        coefficient_upper_bound,
        lower_bound_holds: norm_sum > zeta_truncated && zeta_truncated > 1.0,
        upper_bound_holds: norm_sum <= coefficient_upper_bound * (1.0 + 1e-12),
    })
}

/// `(S_K(s, m), ζ_K(s, m), S > ζ > 1)`.
pub fn lower_bound_check(field: &NumberField, s: u32, m: f64, budget: u64) -> Result<(f64, f64, bool)> {
    let r = height_bounds(field, s, m, budget)?;
    Ok((r.norm_sum, r.zeta_truncated, r.lower_bound_holds))
}

/// `max_k b_k · ζ_K(s, m)` for a table of exact counts.
pub fn coefficient_upper_bound(table: &CountTable, zeta_truncated: f64) -> Result<f64> {
    if !table.has_exact() {
        return Err(Error::MissingColumn("b_k"));
    }
    let max_b = table.rows.iter().filter_map(|r| r.b).max().unwrap_or(0);
    Ok(max_b as f64 * zeta_truncated)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `K₁ = w√n / ((n-1)! vol(Λ_log))`.
pub fn k1_constant(units: &UnitSystem, n: usize) -> f64 {
    let fact: f64 = (1..n).map(|i| i as f64).product();
    units.w() as f64 * (n as f64).sqrt() / (fact * units.log_volume())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometricBound {
    pub s: u32,
    pub radius: f64,
    pub degree: usize,
    pub k1: f64,
    /// `K₁ C(n-1, m) (log R^n)^{n-1-m} |D^m ζ_K(s)|` for `m = 0..n`.
    pub terms: Vec<f64>,
    /// Doubling tail estimates of the derivative partial sums.
    pub derivative_tails: Vec<f64>,
    pub bound: f64,
    /// `K₁ (log R)^{n-1} |ζ_K(s)|` as printed; smaller than `terms[0]` by
    /// `n^{n-1}`, reported but not a proven bound.
    pub leading_term_bound: f64,
    /// `Σ_{k ≤ cutoff} n_k^raw / k^s`.
    pub estimate_sum: f64,
    /// `K₁ Σ_{k ≤ cutoff} a_k (n log R - log k)^{n-1} / k^s`.
    pub middle_form: f64,
    /// Largest `k` summed: `min(⌊R^n⌋, zeta cutoff)`.
    pub sum_cutoff: u64,
    /// The sums stop below `R^n`.
    pub truncated: bool,
    pub zeta_cutoff: usize,
    /// `estimate_sum ≤ middle_form ≤ bound`.
    pub chain_holds: bool,
    /// The chain also holds with every sum stopped at half the cutoff.
    pub stable: bool,
}

/// The binomial-expanded bound with partial-sum derivatives, together with
/// the sums it dominates.
///
/// Beyond the zeta cutoff the estimate terms are dominated termwise by the
/// (also omitted) derivative terms, so a cutoff below `R^n` keeps the chain
/// sound; `truncated` records when that happens. `tolerance` is relative:
/// each weighted derivative tail must stay below `tolerance · bound`.
pub fn geometric_bound(
    zeta: &ZetaSeries,
    units: &UnitSystem,
    s: u32,
    radius: f64,
    tolerance: f64,
) -> Result<GeometricBound> {
    let n = zeta.degree();
    if n < 2 {
        return Err(Error::InvalidParameter("degree must be at least 2".into()));
    }
    let spec = BoxSpec::new(radius)?;
    let k1 = k1_constant(units, n);
    let big_l = n as f64 * radius.ln();
    let weight = |m: usize| k1 * binomial(n - 1, m) * big_l.powi((n - 1 - m) as i32);
    let derivs = (0..n).map(|m| zeta_derivative(zeta, m as u32, s, f64::INFINITY)).collect::<Result<Vec<_>>>()?;
    let term = |m: usize, d: f64| weight(m) * d;
    let terms: Vec<f64> = derivs.iter().enumerate().map(|(m, d)| term(m, d.value.abs())).collect();
    let half_terms: Vec<f64> = derivs.iter().enumerate().map(|(m, d)| term(m, d.value.abs() - d.tail)).collect();
    let bound: f64 = terms.iter().sum();
    for (m, d) in derivs.iter().enumerate() {
        let tail = weight(m) * d.tail;
        if !(tail <= tolerance * bound) {
            return Err(Error::CutoffTooSmall { cutoff: zeta.cutoff(), tail, tolerance: tolerance * bound });
        }
    }
    let half_bound: f64 = half_terms.iter().sum();

    let zeta_cutoff = zeta.cutoff();
    let sum_cutoff = spec.norm_limit(n).min(zeta_cutoff as u64);
    let sums = |upto: u64| -> (f64, f64) {
        let mut est = Vec::new();
        let mut mid = Vec::new();
        for k in 1..=upto {
            let a = zeta.coeff(k).unwrap_or(0);
            if a == 0 {
                continue;
            }
            let t = big_l - (k as f64).ln();
            if t <= 0.0 {
                continue;
            }
            let ks = (k as f64).powi(s as i32);
            est.push(raw_estimate(units, n, radius, k, a) / ks);
            mid.push(k1 * a as f64 * t.powi(n as i32 - 1) / ks);
        }
        est.sort_by(f64::total_cmp);
        mid.sort_by(f64::total_cmp);
        (est.iter().sum(), mid.iter().sum())
    };
    let (estimate_sum, middle_form) = sums(sum_cutoff);
    let (half_est, half_mid) = sums(sum_cutoff.min(zeta_cutoff as u64 / 2));
    let ordered = |e: f64, m: f64, b: f64| e <= m * (1.0 + 1e-12) && m <= b * (1.0 + 1e-12);
    let chain_holds = ordered(estimate_sum, middle_form, bound);
    let stable = chain_holds && ordered(half_est, half_mid, half_bound);
    Ok(GeometricBound {
        s,
        radius,
        degree: n,
        k1,
        terms,
        derivative_tails: derivs.iter().map(|d| d.tail).collect(),
        bound,
        leading_term_bound: k1 * radius.ln().powi(n as i32 - 1) * derivs[0].value.abs(),
        estimate_sum,
        middle_form,
        sum_cutoff,
        truncated: sum_cutoff < spec.norm_limit(n),
        zeta_cutoff,
        chain_holds,
        stable,
    })
}
