//! Dirichlet coefficients of the Dedekind zeta function and partial-sum
//! evaluation of `ζ_K(s)`, its derivatives, and the bounded-height sum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::enumeration::{enumerate_box, unit_orbits, BoxSpec};
use crate::error::{Error, Result};
use crate::fp;
use crate::numberfield::NumberField;

/// Partial sums at `s = 2` are refused below this cutoff regardless of the
/// requested tolerance; the doubling heuristic is unreliable there.
pub const MIN_CUTOFF_S2: usize = 10_000;

/// How `p` decomposes in `Z[θ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingType {
    pub prime: u64,
    /// Residue degrees of the distinct prime ideals above `p`, ascending.
    pub factor_degrees: Vec<u32>,
    pub ramified: bool,
}

pub fn splitting_type(field: &NumberField, p: u64) -> Result<SplittingType> {
    if !fp::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !field.assume_maximal_order() {
        return Err(Error::NonMaximalOrder);
    }
    if p >= 1 << 32 {
        return Err(Error::InvalidParameter(format!("prime {p} exceeds 2^32")));
    }
    let f = fp::reduce(field.min_poly().coeffs(), p);
    let counts = fp::distinct_degree_counts(&f, p);
    let mut factor_degrees = Vec::new();
    for (d, &c) in counts.iter().enumerate() {
        factor_degrees.extend(std::iter::repeat_n(d as u32, c as usize));
    }
    let ramified = field.poly_discriminant().mod_floor(&BigInt::from(p)).is_zero();
    Ok(SplittingType { prime: p, factor_degrees, ramified })
}

/// Coefficients `a_1..a_N` of `ζ_K(s) = Σ a_k k^{-s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaSeries {
    degree: usize,
    /// `a[0]` is unused and zero.
    a: Vec<u32>,
}

impl ZetaSeries {
    pub fn cutoff(&self) -> usize {
        self.a.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `a_k`, or `None` beyond the cutoff.
    pub fn coeff(&self, k: u64) -> Option<u32> {
        if k == 0 {
            return None;
        }
        self.a.get(k as usize).copied()
    }

    /// `a_1..a_N`, indexed from 1.
    pub fn coeffs(&self) -> &[u32] {
        &self.a[1..]
    }

    /// Builds a series from explicit coefficients `a_1..a_N`.
    pub fn from_coeffs(degree: usize, coeffs: &[u32]) -> Self {
        let mut a = Vec::with_capacity(coeffs.len() + 1);
        a.push(0);
        a.extend_from_slice(coeffs);
        ZetaSeries { degree, a }
    }
}

/// Local factor `Π_i (1 - x^{f_i})^{-1}` expanded to `x^emax`.
fn euler_factor(degrees: &[u32], emax: usize) -> Vec<u32> {
    let mut c = vec![0u32; emax + 1];
    c[0] = 1;
    for &f in degrees {
        let f = f as usize;
        for j in f..=emax {
            c[j] += c[j - f];
        }
    }
    c
}

pub fn dirichlet_coeffs(field: &NumberField, cutoff: usize) -> Result<ZetaSeries> {
    if cutoff == 0 {
        return Err(Error::InvalidParameter("zeta cutoff must be at least 1".into()));
    }
    if !field.assume_maximal_order() {
        return Err(Error::NonMaximalOrder);
    }
    if cutoff > u32::MAX as usize {
        return Err(Error::InvalidParameter(format!("zeta cutoff {cutoff} exceeds 2^32")));
    }
    let n = cutoff;
    let coeffs = field.min_poly().coeffs();

    // smallest prime factor sieve
    let mut spf = vec![0u32; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &p in &primes {
            if p > si || i * p as usize > n {
                break;
            }
            spf[i * p as usize] = p;
        }
    }

    // local[p] for every prime p <= N; large primes only need the root count
    let local: Vec<Vec<u32>> = primes
        .par_iter()
        .map(|&p| {
            let p = p as u64;
            let f = fp::reduce(coeffs, p);
            if p * p > n as u64 {
                vec![1, fp::root_count(&f, p)]
            } else {
                let mut emax = 0;
                let mut q = 1u64;
                while q * p <= n as u64 {
                    q *= p;
                    emax += 1;
                }
                let counts = fp::distinct_degree_counts(&f, p);
                let degrees: Vec<u32> =
                    counts.iter().enumerate().flat_map(|(d, &c)| std::iter::repeat_n(d as u32, c as usize)).collect();
                euler_factor(&degrees, emax)
            }
        })
        .collect();
    let mut prime_index = vec![0u32; n + 1];
    for (i, &p) in primes.iter().enumerate() {
        prime_index[p as usize] = i as u32;
    }

    let mut a = vec![0u32; n + 1];
    a[1] = 1;
    for k in 2..=n {
        let p = spf[k] as usize;
        let mut m = k / p;
        let mut e = 1;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        let c = &local[prime_index[p] as usize];
        a[k] = if e < c.len() { c[e] * a[m] } else { 0 };
    }
    Ok(ZetaSeries { degree: field.degree(), a })
}

/// A partial sum with its doubling-based tail estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// `|S(N) - S(N/2)|`, a heuristic for the truncation error.
    pub tail: f64,
    pub cutoff: usize,
}

/// Neumaier-compensated `Σ_{k ≤ upto} a_k (log k)^m / k^s`.
fn log_weighted_sum(a: &[u32], m: u32, s: u32, from: usize, upto: usize) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for (k, &ak) in a.iter().enumerate().take(upto + 1).skip(from.max(1)) {
        if ak == 0 {
            continue;
        }
        let kf = k as f64;
        let t = ak as f64 * kf.ln().powi(m as i32) / kf.powi(s as i32);
        let next = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - next) + t;
        } else {
            comp += (t - next) + sum;
        }
        sum = next;
    }
    sum + comp
}

/// `D^m ζ_K(s) = (-1)^m Σ a_k (log k)^m / k^s` truncated at the cutoff.
///
/// Fails with `CutoffTooSmall` when the tail estimate exceeds `tolerance`,
/// or when `s = 2` and the cutoff is below [`MIN_CUTOFF_S2`].
pub fn zeta_derivative(series: &ZetaSeries, m: u32, s: u32, tolerance: f64) -> Result<SeriesValue> {
    if s < 2 {
        return Err(Error::InvalidParameter(format!("s = {s}, need s >= 2")));
    }
    let n = series.cutoff();
    let half = log_weighted_sum(&series.a, m, s, 1, n / 2);
    let full = half + log_weighted_sum(&series.a, m, s, n / 2 + 1, n);
    let tail = (full - half).abs();
    if tail > tolerance || (s == 2 && n < MIN_CUTOFF_S2) {
        return Err(Error::CutoffTooSmall { cutoff: n, tail, tolerance });
    }
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(SeriesValue { value: sign * full, tail, cutoff: n })
}

/// `ζ_K(s)` truncated at the cutoff.
pub fn zeta_value(series: &ZetaSeries, s: u32, tolerance: f64) -> Result<SeriesValue> {
    zeta_derivative(series, 0, s, tolerance)
}

/// Bounded-height zeta `ζ_K(s, m) = Σ_{H(I) ≤ m} N(I)^{-s}`, one term per
/// principal ideal with a generator of height at most `m`.
///
/// Every such generator lies in the box of radius `m`, so grouping the box
/// into unit orbits yields the sum exactly (PID fields).
pub fn bounded_height_zeta(field: &NumberField, s: u32, m: f64, budget: u64) -> Result<f64> {
    if m < 1.0 {
        return Ok(0.0);
    }
    let points = enumerate_box(field, &BoxSpec::new(m)?, budget)?;
    let orbits = unit_orbits(field, &points);
    let mut terms: Vec<f64> = orbits
        .iter()
        .map(|o| {
            let k = o.norm.abs().to_f64().unwrap_or(f64::INFINITY);
            k.powi(-(s as i32))
        })
        .collect();
    // smallest first for a stable sum
    terms.sort_by(f64::total_cmp);
    Ok(terms.iter().sum())
}
