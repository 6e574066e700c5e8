//! Totally real number fields `Q(θ)` with the order `Z[θ]`: certified real
//! embeddings, exact norms, heights and element arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dd::{Dd, DD_EPS};
use crate::error::{Error, Result};
use crate::linalg::{det_bigint, det_i128, solve_rational};
use crate::poly::{bigint_to_dd, real_roots, Polynomial, RealRoot, SturmChain};

/// Mantissa bits to which the embeddings of `θ` are certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    pub const MAX_BITS: u32 = 100;

    pub fn new(bits: u32) -> Result<Self> {
        if bits == 0 || bits > Self::MAX_BITS {
            return Err(Error::PrecisionUnsupported(bits));
        }
        Ok(Precision { bits })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn relative_tolerance(self) -> f64 {
        2f64.powi(-(self.bits as i32))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision { bits: 80 }
    }
}

/// Element of `Z[θ]` in the power basis `1, θ, …, θ^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraicInt {
    coords: Vec<BigInt>,
}

impl AlgebraicInt {
    pub fn new(coords: Vec<BigInt>) -> Self {
        AlgebraicInt { coords }
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        AlgebraicInt { coords: coords.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn one(degree: usize) -> Self {
        let mut coords = vec![BigInt::zero(); degree];
        coords[0] = BigInt::one();
        AlgebraicInt { coords }
    }

    pub fn theta(degree: usize) -> Self {
        let mut coords = vec![BigInt::zero(); degree];
        coords[1] = BigInt::one();
        AlgebraicInt { coords }
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        AlgebraicInt { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgebraicInt { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    /// Coordinates as `i64`, if they fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for AlgebraicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A real number with a certified absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifiedReal {
    pub value: Dd,
    pub radius: f64,
}

impl CertifiedReal {
    pub fn to_f64(self) -> f64 {
        self.value.to_f64()
    }
}

#[derive(Clone, Debug)]
pub struct NumberField {
    min_poly: Polynomial,
    degree: usize,
    roots: Vec<RealRoot>,
    /// `powers[i][j] = σ_i(θ)^j`.
    powers: Vec<Vec<Dd>>,
    power_radius: Vec<Vec<f64>>,
    powers_f64: Vec<f64>,
    discriminant: BigInt,
    assume_maximal_order: bool,
    precision: Precision,
    /// Non-leading minimal polynomial coefficients, when they fit in `i128`.
    reduction_i128: Option<Vec<i128>>,
}

/// Builds the field defined by `poly`, isolating and refining all `n` real roots.
pub fn parse_field(poly: Polynomial, assume_maximal_order: bool) -> Result<NumberField> {
    NumberField::new(poly, assume_maximal_order, Precision::default())
}

impl NumberField {
    pub fn new(poly: Polynomial, assume_maximal_order: bool, precision: Precision) -> Result<Self> {
        let discriminant = poly.discriminant();
        if discriminant.is_zero() {
            return Err(Error::NotSquarefree);
        }
        let degree = poly.degree();
        let real = SturmChain::new(&poly).real_root_count();
        if real != degree {
            return Err(Error::NotTotallyReal { real_roots: real, degree });
        }
        let roots = real_roots(&poly, precision.relative_tolerance());
        debug_assert_eq!(roots.len(), degree);

        let mut powers = Vec::with_capacity(degree);
        let mut power_radius = Vec::with_capacity(degree);
        for r in &roots {
            let theta = r.value;
            let delta = r.radius;
            let mut row = vec![Dd::ONE];
            let mut rad = vec![0.0f64];
            for j in 1..degree {
                let prev = row[j - 1];
                let e = rad[j - 1];
                let next = prev * theta;
                let err = e * theta.to_f64().abs()
                    + prev.to_f64().abs() * delta
                    + e * delta
                    + 2.0 * DD_EPS * next.to_f64().abs();
                row.push(next);
                rad.push(err * (1.0 + 1e-12));
            }
            powers.push(row);
            power_radius.push(rad);
        }
        let powers_f64 = powers.iter().flatten().map(|d| d.to_f64()).collect();
        let reduction_i128 = poly.coeffs()[..degree].iter().map(ToPrimitive::to_i128).collect();
        Ok(NumberField {
            min_poly: poly,
            degree,
            roots,
            powers,
            power_radius,
            powers_f64,
            discriminant,
            assume_maximal_order,
            precision,
            reduction_i128,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn min_poly(&self) -> &Polynomial {
        &self.min_poly
    }

    /// `(r1, r2)`; always `(n, 0)` since complex roots are rejected.
    pub fn signature(&self) -> (usize, usize) {
        (self.degree, 0)
    }

    pub fn poly_discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    pub fn assume_maximal_order(&self) -> bool {
        self.assume_maximal_order
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// `σ_1(θ) < … < σ_n(θ)` with certified intervals.
    pub fn roots(&self) -> &[RealRoot] {
        &self.roots
    }

    pub fn embeddings_f64(&self) -> Vec<f64> {
        self.roots.iter().map(RealRoot::to_f64).collect()
    }

    /// Row-major `n × n` matrix of `σ_i(θ)^j` in `f64`.
    pub fn power_matrix_f64(&self) -> &[f64] {
        &self.powers_f64
    }

    /// Builds an element, checking the coordinate count.
    pub fn element(&self, coords: &[i64]) -> Result<AlgebraicInt> {
        if coords.len() != self.degree {
            return Err(Error::InvalidParameter(format!(
                "element has {} coordinates, field degree is {}",
                coords.len(),
                self.degree
            )));
        }
        Ok(AlgebraicInt::from_i64s(coords))
    }

    fn check(&self, x: &AlgebraicInt) {
        assert_eq!(x.coords.len(), self.degree, "element does not belong to this field");
    }

    /// Canonical embedding `(σ_1(x), …, σ_n(x))`.
    pub fn embed(&self, x: &AlgebraicInt) -> Vec<CertifiedReal> {
        self.check(x);
        let coeffs: Vec<Dd> = x.coords.iter().map(bigint_to_dd).collect();
        (0..self.degree).map(|i| self.embed_row(i, &coeffs)).collect()
    }

    fn embed_row(&self, i: usize, coeffs: &[Dd]) -> CertifiedReal {
        let mut acc = Dd::ZERO;
        let mut mag = 0.0;
        let mut radius = 0.0;
        for (j, c) in coeffs.iter().enumerate() {
            if c.hi == 0.0 {
                continue;
            }
            let t = *c * self.powers[i][j];
            acc = acc + t;
            mag += t.to_f64().abs();
            radius += c.to_f64().abs() * self.power_radius[i][j];
        }
        radius += (self.degree as f64 + 2.0) * DD_EPS * mag;
        CertifiedReal { value: acc, radius }
    }

    /// Embedding of an element given by small integer coordinates.
    pub fn embed_i64(&self, coords: &[i64]) -> Vec<CertifiedReal> {
        debug_assert_eq!(coords.len(), self.degree);
        let coeffs: Vec<Dd> = coords.iter().map(|&c| Dd::from_i64(c)).collect();
        (0..self.degree).map(|i| self.embed_row(i, &coeffs)).collect()
    }

    /// `H(x) = max_i |σ_i(x)|`.
    pub fn height(&self, x: &AlgebraicInt) -> CertifiedReal {
        max_abs(self.embed(x))
    }

    pub fn height_i64(&self, coords: &[i64]) -> CertifiedReal {
        max_abs(self.embed_i64(coords))
    }

    /// Coordinates of `x·θ^j`, `j = 0..n`, as the columns of the
    /// multiplication-by-`x` matrix.
    pub fn multiplication_matrix(&self, x: &AlgebraicInt) -> Vec<Vec<BigInt>> {
        self.check(x);
        let n = self.degree;
        let lower = &self.min_poly.coeffs()[..n];
        let mut cols = Vec::with_capacity(n);
        let mut v = x.coords.clone();
        for _ in 0..n {
            cols.push(v.clone());
            let top = v[n - 1].clone();
            let mut next = vec![BigInt::zero(); n];
            for i in 0..n {
                let shifted = if i == 0 { BigInt::zero() } else { v[i - 1].clone() };
                next[i] = shifted - &top * &lower[i];
            }
            v = next;
        }
        (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect()
    }

    /// Exact `N_{K/Q}(x)`: the resultant `Res(f, g_x)`, computed as the
    /// determinant of multiplication by `x` (equal for monic `f`).
    pub fn norm(&self, x: &AlgebraicInt) -> BigInt {
        if let Some(c) = x.to_i64s() {
            if let Some(v) = self.norm_i64(&c) {
                return BigInt::from(v);
            }
        }
        det_bigint(self.multiplication_matrix(x))
    }

    /// Norm in checked `i128` arithmetic; `None` on overflow.
    pub fn norm_i64(&self, coords: &[i64]) -> Option<i128> {
        let n = self.degree;
        let lower = self.reduction_i128.as_ref()?;
        if n == 2 {
            // det [[a, -f0 b], [b, a - f1 b]]
            let (a, b) = (coords[0] as i128, coords[1] as i128);
            let f0 = lower[0];
            let f1 = lower[1];
            return a.checked_mul(a.checked_sub(f1.checked_mul(b)?)?)?.checked_add(f0.checked_mul(b)?.checked_mul(b)?);
        }
        let mut m = vec![0i128; n * n];
        let mut v: Vec<i128> = coords.iter().map(|&c| c as i128).collect();
        for c in 0..n {
            for r in 0..n {
                m[r * n + c] = v[r];
            }
            let top = v[n - 1];
            let mut next = vec![0i128; n];
            for i in 0..n {
                let shifted = if i == 0 { 0 } else { v[i - 1] };
                next[i] = shifted.checked_sub(top.checked_mul(lower[i])?)?;
            }
            v = next;
        }
        det_i128(&mut m, n)
    }

    pub fn mul(&self, x: &AlgebraicInt, y: &AlgebraicInt) -> AlgebraicInt {
        self.check(x);
        self.check(y);
        let n = self.degree;
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in x.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coords.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let lower = &self.min_poly.coeffs()[..n];
        for k in (n..2 * n - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (i, f) in lower.iter().enumerate() {
                prod[k - n + i] -= &c * f;
            }
        }
        prod.truncate(n);
        AlgebraicInt { coords: prod }
    }

    pub fn pow(&self, x: &AlgebraicInt, e: u32) -> AlgebraicInt {
        let mut acc = AlgebraicInt::one(self.degree);
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Exact quotient `x / y` if it lies in `Z[θ]`.
    pub fn divide(&self, x: &AlgebraicInt, y: &AlgebraicInt) -> Option<AlgebraicInt> {
        self.check(x);
        if y.is_zero() {
            return None;
        }
        let m = self.multiplication_matrix(y);
        let z = solve_rational(&m, &x.coords)?;
        z.iter().map(|q| q.is_integer().then(|| q.to_integer())).collect::<Option<Vec<_>>>().map(AlgebraicInt::new)
    }

    /// `x^{-1}` if `x` is a unit of `Z[θ]`.
    pub fn inverse(&self, x: &AlgebraicInt) -> Option<AlgebraicInt> {
        self.divide(&AlgebraicInt::one(self.degree), x)
    }

    /// Coordinates of `x / y` over the rationals.
    pub fn quotient_rational(&self, x: &AlgebraicInt, y: &AlgebraicInt) -> Option<Vec<BigRational>> {
        solve_rational(&self.multiplication_matrix(y), &x.coords)
    }

    /// Power sums `p_m = Σ_i σ_i(θ)^m` for `m = 0..=max`, exact by Newton's identities.
    pub fn power_sums(&self, max: usize) -> Vec<BigInt> {
        let n = self.degree;
        // f = x^n + a_{n-1} x^{n-1} + … + a_0
        let a = self.min_poly.coeffs();
        let mut p = vec![BigInt::from(n)];
        for m in 1..=max {
            let mut s = BigInt::zero();
            for i in 1..=(m - 1).min(n) {
                s += &a[n - i] * &p[m - i];
            }
            if m <= n {
                s += &a[n - m] * BigInt::from(m);
            }
            p.push(-s);
        }
        p
    }

    /// Gram matrix `Σ_i σ_i(θ^j) σ_i(θ^k)` of the power basis, exact.
    pub fn gram_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.degree;
        let p = self.power_sums(2 * n - 2);
        (0..n).map(|j| (0..n).map(|k| p[j + k].clone()).collect()).collect()
    }
}

fn max_abs(v: Vec<CertifiedReal>) -> CertifiedReal {
    v.into_iter().map(|c| CertifiedReal { value: c.value.abs(), radius: c.radius }).fold(
        CertifiedReal { value: Dd::ZERO, radius: 0.0 },
        |best, c| {
            if c.value > best.value {
                c
            } else {
                best
            }
        },
    )
}

/// `min |N(x)|` over a nonempty set of nonzero elements.
pub fn min_product_distance(field: &NumberField, points: &[AlgebraicInt]) -> Result<BigInt> {
    let mut best: Option<BigInt> = None;
    for x in points {
        if x.is_zero() {
            return Err(Error::InvalidParameter("zero element in product-distance set".into()));
        }
        let n = field.norm(x).abs();
        if best.as_ref().is_none_or(|b| n < *b) {
            best = Some(n);
        }
    }
    best.ok_or(Error::EmptyInput)
}
