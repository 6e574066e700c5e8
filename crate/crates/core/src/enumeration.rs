//! Complete enumeration of `Z[θ] ∩ ψ^{-1}([-R, R]^n)`, exact per-norm counts
//! and grouping into principal ideals.
//!
//! Coordinates `c_{n-1}, …, c_1` are searched Fincke-Pohst style inside the
//! ellipsoid `Σ_i σ_i(x)^2 ≤ nR^2`, which contains the cube. Since
//! `σ_i(θ^0) = 1`, the last coordinate `c_0` is then confined exactly by the
//! `n` interval constraints `|c_0 + r_i| ≤ R`, and every surviving candidate
//! is checked against the cube with certified double-double embeddings.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::fincke_pohst_form;
use crate::numberfield::{AlgebraicInt, NumberField};
use crate::zeta::ZetaSeries;

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// The closed cube `[-R, R]^n`, widened by an additive tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoxSpec {
    radius: f64,
    tolerance: f64,
}

impl BoxSpec {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!("box radius {radius} must be positive")));
        }
        Ok(BoxSpec { radius, tolerance: DEFAULT_TOLERANCE })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        if !(tolerance >= 0.0 && tolerance.is_finite()) {
            return Err(Error::InvalidParameter(format!("tolerance {tolerance}")));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// `⌊R^n⌋`, the largest norm a point in the box can have.
    pub fn norm_limit(&self, degree: usize) -> u64 {
        let v = self.radius.powi(degree as i32);
        // exact integer powers must not lose a unit to rounding
        let r = v.round();
        if (v - r).abs() <= 1e-9 * v.max(1.0) {
            r as u64
        } else {
            v.floor() as u64
        }
    }
}

/// One enumerated point with its exact norm and height.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticePoint {
    pub coords: Vec<i64>,
    pub norm: BigInt,
    pub height: f64,
}

struct Search<'a> {
    field: &'a NumberField,
    n: usize,
    q: Vec<Vec<f64>>,
    bound: f64,
    cube: f64,
    pw: &'a [f64],
    budget: u64,
    nodes: &'a AtomicU64,
    abort: &'a AtomicBool,
}

struct Walker<'s, 'a, V> {
    s: &'s Search<'a>,
    x: Vec<i64>,
    local_nodes: u64,
    visit: V,
}

impl<'a> Search<'a> {
    fn new(
        field: &'a NumberField,
        spec: &BoxSpec,
        budget: u64,
        nodes: &'a AtomicU64,
        abort: &'a AtomicBool,
    ) -> Result<Self> {
        let n = field.degree();
        let g: Vec<Vec<f64>> =
            field.gram_matrix().iter().map(|row| row.iter().map(|v| v.to_f64().unwrap()).collect()).collect();
        let q = fincke_pohst_form(&g)
            .ok_or_else(|| Error::InvalidParameter("Gram matrix is not positive definite".into()))?;
        let cube = spec.radius + spec.tolerance;
        let bound = n as f64 * cube * cube * (1.0 + 1e-9) + 1e-9;
        Ok(Search { field, n, q, bound, cube, pw: field.power_matrix_f64(), budget, nodes, abort })
    }

    /// Integer range for coordinate `j` given the coordinates above it.
    fn range(&self, j: usize, x: &[i64], used: f64) -> Option<(i64, i64)> {
        let rem = self.bound - used;
        if rem < 0.0 {
            return None;
        }
        let centre: f64 = -(j + 1..self.n).map(|l| self.q[j][l] * x[l] as f64).sum::<f64>();
        let half = (rem / self.q[j][j]).sqrt();
        let slack = 1e-9 * (1.0 + centre.abs() + half);
        let lo = (centre - half - slack).ceil();
        let hi = (centre + half + slack).floor();
        if lo > hi {
            return None;
        }
        Some((lo as i64, hi as i64))
    }
}

impl<V: FnMut(&[i64])> Walker<'_, '_, V> {
    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        if self.local_nodes >= 4096 {
            let total = self.s.nodes.fetch_add(self.local_nodes, Ordering::Relaxed) + self.local_nodes;
            self.local_nodes = 0;
            if total > self.s.budget {
                self.s.abort.store(true, Ordering::Relaxed);
            }
        }
        !self.s.abort.load(Ordering::Relaxed)
    }

    /// Descend from level `j` (coordinate `j` still open); `used` is the
    /// ellipsoid mass of the decided coordinates.
    fn descend(&mut self, j: usize, used: f64) {
        let s = self.s;
        if j == 0 {
            self.leaf();
            return;
        }
        let Some((lo, hi)) = s.range(j, &self.x, used) else { return };
        let centre: f64 = -(j + 1..s.n).map(|l| s.q[j][l] * self.x[l] as f64).sum::<f64>();
        for v in lo..=hi {
            if !self.tick() {
                return;
            }
            self.x[j] = v;
            let d = v as f64 - centre;
            self.descend(j - 1, used + s.q[j][j] * d * d);
        }
        self.x[j] = 0;
    }

    fn leaf(&mut self) {
        let s = self.s;
        let n = s.n;
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for i in 0..n {
            let row = &s.pw[i * n..(i + 1) * n];
            let r: f64 = (1..n).map(|j| self.x[j] as f64 * row[j]).sum();
            lo = lo.max(-s.cube - r);
            hi = hi.min(s.cube - r);
        }
        let slack = 1e-7 * (1.0 + lo.abs().max(hi.abs()));
        let (lo, hi) = ((lo - slack).ceil(), (hi + slack).floor());
        if lo > hi {
            return;
        }
        for c in lo as i64..=hi as i64 {
            if !self.tick() {
                return;
            }
            self.x[0] = c;
            if self.x.iter().all(|&v| v == 0) {
                continue;
            }
            let inside = s.field.embed_i64(&self.x).iter().all(|e| e.value.abs().to_f64() <= s.cube);
            if inside {
                (self.visit)(&self.x);
            }
        }
        self.x[0] = 0;
    }
}

/// Runs the search in parallel over the top coordinate, folding leaves into
/// one accumulator per worker.
fn search<A, M, V>(field: &NumberField, spec: &BoxSpec, budget: u64, make: M, visit: V) -> Result<Vec<A>>
where
    A: Send,
    M: Fn() -> A + Sync + Send,
    V: Fn(&mut A, &[i64]) + Sync + Send,
{
    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let s = Search::new(field, spec, budget, &nodes, &abort)?;
    let n = s.n;
    let top = n - 1;
    let (lo, hi) = s.range(top, &vec![0; n], 0.0).unwrap_or((1, 0));
    let out: Vec<A> = (lo..=hi)
        .into_par_iter()
        .fold(&make, |mut acc, v| {
            let mut w = Walker { s: &s, x: vec![0; n], local_nodes: 0, visit: |x: &[i64]| visit(&mut acc, x) };
            if w.tick() {
                w.x[top] = v;
                let d = v as f64;
                if top == 0 {
                    w.leaf();
                } else {
                    w.descend(top - 1, s.q[top][top] * d * d);
                }
            }
            nodes.fetch_add(w.local_nodes, Ordering::Relaxed);
            acc
        })
        .collect();
    if abort.load(Ordering::Relaxed) || nodes.load(Ordering::Relaxed) > budget {
        return Err(Error::BoxTooLarge { budget });
    }
    Ok(out)
}

fn exact_norm(field: &NumberField, coords: &[i64]) -> BigInt {
    match field.norm_i64(coords) {
        Some(v) => BigInt::from(v),
        None => field.norm(&AlgebraicInt::from_i64s(coords)),
    }
}

/// All nonzero points of the box with norms and heights, sorted by coordinates.
pub fn enumerate_points(field: &NumberField, spec: &BoxSpec, budget: u64) -> Result<Vec<LatticePoint>> {
    let parts = search(field, spec, budget, Vec::new, |acc: &mut Vec<Vec<i64>>, x| acc.push(x.to_vec()))?;
    let mut coords: Vec<Vec<i64>> = parts.into_iter().flatten().collect();
    coords.sort_unstable();
    Ok(coords
        .into_par_iter()
        .map(|c| {
            let norm = exact_norm(field, &c);
            let height = field.height_i64(&c).to_f64();
            LatticePoint { coords: c, norm, height }
        })
        .collect())
}

/// The nonzero `x ∈ Z[θ]` with `max_i |σ_i(x)| ≤ R + tolerance`, in
/// lexicographic coordinate order.
pub fn enumerate_box(field: &NumberField, spec: &BoxSpec, budget: u64) -> Result<Vec<AlgebraicInt>> {
    let parts = search(field, spec, budget, Vec::new, |acc: &mut Vec<Vec<i64>>, x| acc.push(x.to_vec()))?;
    let mut coords: Vec<Vec<i64>> = parts.into_iter().flatten().collect();
    coords.sort_unstable();
    Ok(coords.iter().map(|c| AlgebraicInt::from_i64s(c)).collect())
}

/// Number of box points of each absolute norm, without materializing them.
pub fn norm_histogram(field: &NumberField, spec: &BoxSpec, budget: u64) -> Result<BTreeMap<u64, u64>> {
    let parts = search(field, spec, budget, HashMap::<u64, u64>::new, |acc, x| {
        let k = exact_norm(field, x).abs().to_u64().expect("norm bounded by R^n");
        *acc.entry(k).or_insert(0) += 1;
    })?;
    let mut out = BTreeMap::new();
    for part in parts {
        for (k, c) in part {
            *out.entry(k).or_insert(0) += c;
        }
    }
    Ok(out)
}

/// Per-norm record. `b` is the exact count; `n_raw`, `n`, `f` are the
/// geometric estimate before and after flooring and the discrepancy.
#[derive(Clone, Debug, PartialEq)]
pub struct CountRow {
    pub k: u64,
    pub a: u32,
    pub b: Option<u64>,
    pub n_raw: Option<f64>,
    pub n: Option<u64>,
    pub f: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountTable {
    pub radius: f64,
    pub degree: usize,
    /// Rows cover `1 ≤ k ≤ k_limit`.
    pub k_limit: u64,
    /// Largest `|N(x)|` over the whole box, including norms above `k_limit`.
    pub max_norm: u64,
    /// `Σ b_k` over the rows.
    pub total_points: u64,
    pub rows: Vec<CountRow>,
}

impl CountTable {
    /// Builds the `a`/`b` columns from a norm histogram. Rows exist for
    /// every `k ≤ min(⌊R^n⌋, max_norm)` with `a_k ≠ 0` or `b_k ≠ 0`.
    pub fn from_histogram(
        spec: &BoxSpec,
        degree: usize,
        histogram: &BTreeMap<u64, u64>,
        zeta: &ZetaSeries,
        max_norm: Option<u64>,
    ) -> Result<Self> {
        let limit = spec.norm_limit(degree).min(max_norm.unwrap_or(u64::MAX));
        if (zeta.cutoff() as u64) < limit {
            return Err(Error::CutoffMismatch { cutoff: zeta.cutoff(), needed: limit });
        }
        let mut rows = Vec::new();
        let mut total = 0;
        for k in 1..=limit {
            let a = zeta.coeff(k).unwrap_or(0);
            let b = histogram.get(&k).copied().unwrap_or(0);
            if a != 0 || b != 0 {
                total += b;
                rows.push(CountRow { k, a, b: Some(b), n_raw: None, n: None, f: None });
            }
        }
        Ok(CountTable {
            radius: spec.radius(),
            degree,
            k_limit: limit,
            max_norm: histogram.keys().next_back().copied().unwrap_or(0),
            total_points: total,
            rows,
        })
    }

    pub fn row(&self, k: u64) -> Option<&CountRow> {
        self.rows.binary_search_by_key(&k, |r| r.k).ok().map(|i| &self.rows[i])
    }

    pub fn has_exact(&self) -> bool {
        self.rows.iter().all(|r| r.b.is_some())
    }

    pub fn has_estimate(&self) -> bool {
        self.rows.iter().all(|r| r.n.is_some())
    }
}

/// `b_k` table for a list of points, e.g. the output of [`enumerate_box`].
pub fn count_by_norm(
    field: &NumberField,
    spec: &BoxSpec,
    points: &[AlgebraicInt],
    zeta: &ZetaSeries,
    max_norm: Option<u64>,
) -> Result<CountTable> {
    let mut hist = BTreeMap::new();
    for x in points {
        let k = field
            .norm(x)
            .abs()
            .to_u64()
            .ok_or_else(|| Error::InvalidParameter(format!("point {x} has a norm beyond 64 bits")))?;
        *hist.entry(k).or_insert(0) += 1;
    }
    CountTable::from_histogram(spec, field.degree(), &hist, zeta, max_norm)
}

/// Enumerates and counts in one streaming pass.
pub fn count_table(
    field: &NumberField,
    spec: &BoxSpec,
    zeta: &ZetaSeries,
    max_norm: Option<u64>,
    budget: u64,
) -> Result<CountTable> {
    let limit = spec.norm_limit(field.degree()).min(max_norm.unwrap_or(u64::MAX));
    if (zeta.cutoff() as u64) < limit {
        return Err(Error::CutoffMismatch { cutoff: zeta.cutoff(), needed: limit });
    }
    let hist = norm_histogram(field, spec, budget)?;
    CountTable::from_histogram(spec, field.degree(), &hist, zeta, max_norm)
}

/// Points generating the same principal ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct Orbit {
    /// `|N(I)|`.
    pub norm: BigInt,
    /// Indices into the input slice, ascending.
    pub members: Vec<usize>,
    /// Index of a member of least height.
    pub min_member: usize,
    pub min_height: f64,
}

/// `N(y)·y^{-1}`, an element of `Z[θ]`.
fn adjugate(field: &NumberField, y: &AlgebraicInt) -> AlgebraicInt {
    let n = field.degree();
    let ny = field.norm(y);
    let q = field.quotient_rational(&AlgebraicInt::one(n), y).expect("nonzero element is invertible");
    AlgebraicInt::new(q.iter().map(|c| (c * &ny).to_integer()).collect())
}

/// Partitions `points` by principal ideal: `x ~ y` iff `x/y` is a unit of
/// `Z[θ]`. Points of equal `|N|` are compared by testing
/// `x·N(y)y^{-1} ≡ 0 (mod N(y))`.
pub fn unit_orbits(field: &NumberField, points: &[AlgebraicInt]) -> Vec<Orbit> {
    let mut by_norm: BTreeMap<BigInt, Vec<usize>> = BTreeMap::new();
    for (i, x) in points.iter().enumerate() {
        if !x.is_zero() {
            by_norm.entry(field.norm(x).abs()).or_default().push(i);
        }
    }
    let groups: Vec<(BigInt, Vec<usize>)> = by_norm.into_iter().collect();
    let mut orbits: Vec<Orbit> = groups
        .into_par_iter()
        .flat_map_iter(|(norm, idx)| {
            // (representative adjugate, signed norm, members)
            let mut reps: Vec<(AlgebraicInt, BigInt, Vec<usize>)> = Vec::new();
            for &i in &idx {
                let x = &points[i];
                let found = reps.iter_mut().find(|(adj, ny, _)| {
                    let p = field.mul(x, adj);
                    p.coords().iter().all(|c| (c % &*ny).is_zero())
                });
                match found {
                    Some((_, _, members)) => members.push(i),
                    None => {
                        reps.push((adjugate(field, x), field.norm(x), vec![i]));
                    }
                }
            }
            reps.into_iter()
                .map(|(_, _, members)| {
                    let (min_member, min_height) = members
                        .iter()
                        .map(|&i| (i, field.height(&points[i]).to_f64()))
                        .min_by(|a, b| a.1.total_cmp(&b.1))
                        .unwrap();
                    Orbit { norm: norm.clone(), members, min_member, min_height }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    orbits.sort_by(|a, b| a.norm.cmp(&b.norm).then(a.members[0].cmp(&b.members[0])));
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::parse_field;
    use crate::poly::Polynomial;
    use crate::zeta::dirichlet_coeffs;
    use num_traits::One;

    fn field(c: &[i64]) -> NumberField {
        parse_field(Polynomial::from_i64s(c).unwrap(), true).unwrap()
    }

    fn golden() -> NumberField {
        field(&[-1, -1, 1])
    }

    /// Naive scan over a coordinate rectangle from the inverse embedding matrix.
    fn brute_force(k: &NumberField, r: f64) -> Vec<Vec<i64>> {
        let e = k.embeddings_f64();
        // x = a + bθ, b = (σ1 - σ2)/(θ1 - θ2), a = σ1 - bθ1
        let gap = (e[1] - e[0]).abs();
        let bmax = (2.0 * r / gap).ceil() as i64 + 1;
        let amax = (r + bmax as f64 * e[0].abs().max(e[1].abs())).ceil() as i64 + 1;
        let mut out = Vec::new();
        for a in -amax..=amax {
            for b in -bmax..=bmax {
                if (a, b) == (0, 0) {
                    continue;
                }
                if e.iter().all(|t| (a as f64 + b as f64 * t).abs() <= r + 1e-9) {
                    out.push(vec![a, b]);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn matches_brute_force_in_degree_two() {
        let k = golden();
        for r in [0.5, 1.0, 1.5, 2.0, 3.0, 4.7, 7.0, 10.0] {
            let got: Vec<Vec<i64>> = enumerate_box(&k, &BoxSpec::new(r).unwrap(), DEFAULT_BUDGET)
                .unwrap()
                .iter()
                .map(|x| x.to_i64s().unwrap())
                .collect();
            assert_eq!(got, brute_force(&k, r), "R = {r}");
        }
        let k2 = field(&[-2, 0, 1]);
        let got = enumerate_box(&k2, &BoxSpec::new(6.0).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(got.len(), brute_force(&k2, 6.0).len());
    }

    #[test]
    fn small_boxes() {
        let k = golden();
        assert!(enumerate_box(&k, &BoxSpec::new(0.5).unwrap(), DEFAULT_BUDGET).unwrap().is_empty());
        let one = enumerate_box(&k, &BoxSpec::new(1.0).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(one, vec![AlgebraicInt::from_i64s(&[-1, 0]), AlgebraicInt::from_i64s(&[1, 0])]);
        let three = enumerate_box(&k, &BoxSpec::new(3.0).unwrap(), DEFAULT_BUDGET).unwrap();
        let units: Vec<_> = three.iter().filter(|x| k.norm(x).abs().is_one()).collect();
        assert_eq!(units.len(), 10);
    }

    #[test]
    fn rational_integer_on_the_boundary_is_included() {
        let k = golden();
        let pts = enumerate_box(&k, &BoxSpec::new(2.0).unwrap(), DEFAULT_BUDGET).unwrap();
        assert!(pts.contains(&AlgebraicInt::from_i64s(&[2, 0])));
        assert!(pts.contains(&AlgebraicInt::from_i64s(&[-2, 0])));
    }

    #[test]
    fn counts_at_radius_ten() {
        let k = golden();
        let z = dirichlet_coeffs(&k, 100).unwrap();
        let spec = BoxSpec::new(10.0).unwrap();
        let t = count_table(&k, &spec, &z, None, DEFAULT_BUDGET).unwrap();
        assert_eq!(t.row(1).unwrap().b, Some(18));
        assert!(t.row(2).is_none());
        assert_eq!(t.row(4).unwrap().b, Some(14));
        assert_eq!(t.row(5).unwrap().b, Some(14));
        assert_eq!(t.row(9).unwrap().b, Some(10));
        assert!(t.rows.iter().all(|r| r.b.unwrap() % 2 == 0));
        assert!(t.rows.iter().all(|r| r.a != 0 || r.b == Some(0)));
        assert_eq!(t.total_points, t.rows.iter().map(|r| r.b.unwrap()).sum::<u64>());
        assert!(t.max_norm <= 100);
        let pts = enumerate_box(&k, &spec, DEFAULT_BUDGET).unwrap();
        assert_eq!(count_by_norm(&k, &spec, &pts, &z, None).unwrap(), t);
    }

    #[test]
    fn unit_box_has_single_row() {
        let k = field(&[1, 1, -3, -1, 1]);
        let z = dirichlet_coeffs(&k, 10).unwrap();
        let t = count_table(&k, &BoxSpec::new(1.0).unwrap(), &z, None, DEFAULT_BUDGET).unwrap();
        let nonzero: Vec<_> = t.rows.iter().filter(|r| r.b != Some(0)).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!((nonzero[0].k, nonzero[0].b), (1, Some(2)));
    }

    #[test]
    fn cutoff_mismatch() {
        let k = golden();
        let z = dirichlet_coeffs(&k, 50).unwrap();
        let r = count_table(&k, &BoxSpec::new(10.0).unwrap(), &z, None, DEFAULT_BUDGET);
        assert!(matches!(r, Err(Error::CutoffMismatch { needed: 100, .. })));
        assert!(count_table(&k, &BoxSpec::new(10.0).unwrap(), &z, Some(50), DEFAULT_BUDGET).is_ok());
    }

    #[test]
    fn budget_is_enforced() {
        let k = golden();
        let r = enumerate_box(&k, &BoxSpec::new(1000.0).unwrap(), 10_000);
        assert!(matches!(r, Err(Error::BoxTooLarge { budget: 10_000 })));
    }

    #[test]
    fn deterministic_output() {
        let k = field(&[1, 1, -3, -1, 1]);
        let spec = BoxSpec::new(6.0).unwrap();
        let a = enumerate_box(&k, &spec, DEFAULT_BUDGET).unwrap();
        let b = enumerate_box(&k, &spec, DEFAULT_BUDGET).unwrap();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].to_i64s() < w[1].to_i64s()));
    }

    #[test]
    fn orbits_of_small_elements() {
        let k = golden();
        let pts: Vec<_> = [[0, 1], [1, 1], [-1, 0]].iter().map(|c| AlgebraicInt::from_i64s(c)).collect();
        let o = unit_orbits(&k, &pts);
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].min_height, 1.0);

        let pts: Vec<_> = [[-1, 2], [2, 1]].iter().map(|c| AlgebraicInt::from_i64s(c)).collect();
        assert_eq!(unit_orbits(&k, &pts).len(), 1);

        // 5 ramifies, so 2+θ and 3-θ generate the same prime
        let pts: Vec<_> = [[2, 1], [3, -1]].iter().map(|c| AlgebraicInt::from_i64s(c)).collect();
        assert_eq!(unit_orbits(&k, &pts).len(), 1);

        // the two primes above 11 are distinct
        let pts: Vec<_> = [[3, 1], [4, -1]].iter().map(|c| AlgebraicInt::from_i64s(c)).collect();
        assert_eq!(unit_orbits(&k, &pts).len(), 2);
    }

    #[test]
    fn orbit_counts_match_ideal_counts() {
        let k = golden();
        let z = dirichlet_coeffs(&k, 100).unwrap();
        let pts = enumerate_box(&k, &BoxSpec::new(100.0).unwrap(), DEFAULT_BUDGET).unwrap();
        let small: Vec<_> = pts.iter().filter(|x| k.norm(x).abs() <= BigInt::from(20)).cloned().collect();
        let orbits = unit_orbits(&k, &small);
        for n in 1..=20u64 {
            let c = orbits.iter().filter(|o| o.norm == BigInt::from(n)).count();
            assert_eq!(c as u32, z.coeff(n).unwrap(), "norm {n}");
        }
    }
}
