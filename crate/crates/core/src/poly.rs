//! Integer polynomials, Sturm sequences and certified real-root isolation.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dd::{Dd, DD_EPS};
use crate::error::{Error, Result};
use crate::linalg::det_bigint;

/// Monic integer polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 3 {
            return Err(Error::InvalidPolynomial(format!("degree {} < 2", coeffs.len().saturating_sub(1))));
        }
        let lead = coeffs.last().unwrap();
        if !lead.is_one() {
            return Err(Error::NotMonic(lead.to_string()));
        }
        if coeffs[0].is_zero() {
            return Err(Error::InvalidPolynomial("constant coefficient is zero".into()));
        }
        Ok(Polynomial { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Discriminant `(-1)^{n(n-1)/2} Res(f, f')` (monic `f`).
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        let res = resultant(&self.coeffs, &derivative(&self.coeffs));
        if (n * (n - 1) / 2) % 2 == 1 {
            -res
        } else {
            res
        }
    }

    pub fn is_squarefree(&self) -> bool {
        !self.discriminant().is_zero()
    }

    /// Value at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    fn sign_at(&self, x: &Dyadic) -> Ordering {
        sign_at_dyadic(&self.coeffs, x)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

fn derivative(c: &[BigInt]) -> Vec<BigInt> {
    c.iter().enumerate().skip(1).map(|(i, v)| v * BigInt::from(i)).collect()
}

/// Resultant via the Sylvester matrix.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            s[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            s[n + i][i + j] = c.clone();
        }
    }
    det_bigint(s)
}

/// A dyadic rational `num / 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub num: BigInt,
    pub exp: u32,
}

impl Dyadic {
    fn int(v: BigInt) -> Self {
        Dyadic { num: v, exp: 0 }
    }

    fn with_exp(&self, exp: u32) -> BigInt {
        &self.num << (exp - self.exp)
    }

    fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let e = a.exp.max(b.exp);
        Dyadic { num: a.with_exp(e) + b.with_exp(e), exp: e + 1 }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_dd().to_f64()
    }

    /// Conversion with error at most `2^-104` relative.
    pub fn to_dd(&self) -> Dd {
        let hi = self.num.to_f64().unwrap_or(f64::INFINITY);
        let rest = &self.num - float_to_bigint(hi);
        let lo = rest.to_f64().unwrap_or(0.0);
        let scale = 2f64.powi(-(self.exp as i32));
        Dd::new(hi * scale, lo * scale)
    }
}

/// Nearest double-double to an integer.
pub fn bigint_to_dd(v: &BigInt) -> Dd {
    match v.to_i64() {
        Some(x) => Dd::from_i64(x),
        None => Dyadic { num: v.clone(), exp: 0 }.to_dd(),
    }
}

fn float_to_bigint(x: f64) -> BigInt {
    // x is an integer-valued double
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1 } else { 1 };
    let exp = ((bits >> 52) & 0x7ff) as i32;
    if exp == 0 {
        return BigInt::zero();
    }
    let mant = (bits & ((1u64 << 52) - 1)) | (1u64 << 52);
    let shift = exp - 1075;
    let m = BigInt::from(mant);
    let v = if shift >= 0 { m << (shift as u32) } else { m >> ((-shift) as u32) };
    v * sign
}

/// Sign of `p(x)` at a dyadic point, exactly.
fn sign_at_dyadic(p: &[BigInt], x: &Dyadic) -> Ordering {
    let n = p.len() - 1;
    let mut acc = p[n].clone();
    for (i, c) in p.iter().enumerate().rev().skip(1) {
        acc = acc * &x.num + (c << (x.exp as usize * (n - i)));
    }
    acc.sign_ordering()
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let g = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in p.iter_mut() {
            *c /= &g;
        }
    }
    p
}

/// Pseudo-remainder `lc(b)^k a mod b`, returned with the exponent `k`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, usize) {
    let mut r = a.to_vec();
    let mut mults = 0;
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        mults += 1;
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * bc;
        }
        r.pop();
        while r.len() > 1 && r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    (r, mults)
}

/// Sturm chain with positively rescaled primitive integer remainders.
pub struct SturmChain {
    polys: Vec<Vec<BigInt>>,
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Self {
        let mut polys = vec![p.coeffs.clone(), primitive(derivative(&p.coeffs))];
        loop {
            let len = polys.len();
            let (a, b) = (&polys[len - 2], &polys[len - 1]);
            if b.len() == 1 {
                break;
            }
            let (r, mults) = pseudo_rem(a, b);
            if r.iter().all(Zero::is_zero) {
                break;
            }
            // prem scales by lc(b)^mults; undo any sign flip, then negate.
            let flip = b.last().unwrap().is_negative() && mults % 2 == 1;
            let r: Vec<BigInt> = if flip { r } else { r.into_iter().map(|c| -c).collect() };
            polys.push(primitive(r));
        }
        SturmChain { polys }
    }

    fn variations<F: Fn(&[BigInt]) -> Ordering>(&self, sign: F) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for p in &self.polys {
            let s = sign(p);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &Dyadic) -> usize {
        self.variations(|p| sign_at_dyadic(p, x))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        self.variations(|p| {
            let lead = p.last().unwrap().sign_ordering();
            if positive || (p.len() - 1) % 2 == 0 {
                lead
            } else {
                lead.reverse()
            }
        })
    }

    /// Number of distinct real roots.
    pub fn real_root_count(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// A real root bracketed by a certified dyadic interval `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct RealRoot {
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub value: Dd,
    /// Certified bound on `|root - value|`.
    pub radius: f64,
}

impl RealRoot {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

/// All real roots of a squarefree polynomial, sorted, each refined until
/// its interval width is at most `rel_tol` relative to its magnitude.
pub fn real_roots(p: &Polynomial, rel_tol: f64) -> Vec<RealRoot> {
    let chain = SturmChain::new(p);
    let bound = p.coeffs.iter().map(|c| c.abs()).max().unwrap() + BigInt::one();
    let mut pending = vec![(Dyadic::int(-bound.clone()), Dyadic::int(bound))];
    let mut isolated = Vec::new();
    while let Some((a, b)) = pending.pop() {
        let count = chain.variations_at(&a) - chain.variations_at(&b);
        match count {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                let m = split_point(p, &a, &b);
                pending.push((a, m.clone()));
                pending.push((m, b));
            }
        }
    }
    let mut roots: Vec<RealRoot> = isolated.into_iter().map(|(a, b)| refine(p, a, b, rel_tol)).collect();
    roots.sort_by(|x, y| x.value.partial_cmp(&y.value).unwrap());
    roots
}

/// A dyadic point strictly inside `(a, b)` that is not a root of `p`.
fn split_point(p: &Polynomial, a: &Dyadic, b: &Dyadic) -> Dyadic {
    let mid = Dyadic::midpoint(a, b);
    if p.sign_at(&mid) != Ordering::Equal {
        return mid;
    }
    let mut lo = a.clone();
    loop {
        lo = Dyadic::midpoint(&lo, &mid);
        if p.sign_at(&lo) != Ordering::Equal {
            return lo;
        }
    }
}

/// Bisection on `(a, b]` containing exactly one root, with `p(a) != 0`.
fn refine(p: &Polynomial, mut a: Dyadic, mut b: Dyadic, rel_tol: f64) -> RealRoot {
    let sa = p.sign_at(&a);
    if p.sign_at(&b) == Ordering::Equal {
        return exact_root(b);
    }
    for _ in 0..2000 {
        let e = a.exp.max(b.exp);
        let width = Dyadic { num: b.with_exp(e) - a.with_exp(e), exp: e }.to_f64();
        let mag = a.to_f64().abs().min(b.to_f64().abs());
        if width <= rel_tol * mag || (mag == 0.0 && width <= rel_tol) {
            break;
        }
        let m = Dyadic::midpoint(&a, &b);
        match p.sign_at(&m) {
            Ordering::Equal => return exact_root(m),
            s if s == sa => a = m,
            _ => b = m,
        }
    }
    let mid = Dyadic::midpoint(&a, &b);
    let value = mid.to_dd();
    let e = a.exp.max(b.exp);
    let half = Dyadic { num: b.with_exp(e) - a.with_exp(e), exp: e + 1 }.to_f64();
    let radius = half * (1.0 + 1e-12) + 4.0 * DD_EPS * value.to_f64().abs();
    RealRoot { lo: a, hi: b, value, radius }
}

fn exact_root(x: Dyadic) -> RealRoot {
    let value = x.to_dd();
    RealRoot { lo: x.clone(), hi: x, value, radius: 4.0 * DD_EPS * value.to_f64().abs() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c).unwrap()
    }

    #[test]
    fn golden_ratio_roots() {
        let roots = real_roots(&poly(&[-1, -1, 1]), 1e-12);
        let got: Vec<f64> = roots.iter().map(RealRoot::to_f64).collect();
        let s5 = 5f64.sqrt();
        assert_eq!(got.len(), 2);
        assert!((got[0] - (1.0 - s5) / 2.0).abs() < 1e-12);
        assert!((got[1] - (1.0 + s5) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn cube_root_of_two_is_the_only_real_root() {
        let p = poly(&[-2, 0, 0, 1]);
        assert_eq!(SturmChain::new(&p).real_root_count(), 1);
        let roots = real_roots(&p, 1e-15);
        assert_eq!(roots.len(), 1);
        assert!((roots[0].to_f64() - 2f64.cbrt()).abs() < 1e-15);
    }

    #[test]
    fn maximal_real_subfield_of_conductor_32() {
        // min poly of 2cos(pi/16); roots are 2cos(k pi/16), k odd
        let roots = real_roots(&poly(&[2, 0, -16, 0, 20, 0, -8, 0, 1]), 1e-15);
        assert_eq!(roots.len(), 8);
        let mut expect: Vec<f64> =
            (0..8).map(|j| 2.0 * ((2 * j + 1) as f64 * std::f64::consts::PI / 16.0).cos()).collect();
        expect.sort_by(f64::total_cmp);
        for (r, e) in roots.iter().zip(&expect) {
            assert!((r.to_f64() - e).abs() < 1e-14, "{} vs {}", r.to_f64(), e);
        }
        assert!((roots[7].to_f64() - 1.961570560806461).abs() < 1e-14);
        for (lo, hi) in roots.iter().zip(roots.iter().rev()) {
            assert!((lo.to_f64() + hi.to_f64()).abs() < 1e-14);
        }
    }

    #[test]
    fn x_squared_plus_one_has_no_real_roots() {
        assert!(real_roots(&poly(&[1, 0, 1]), 1e-12).is_empty());
    }

    #[test]
    fn rational_roots() {
        // (x - 1)(x + 2)(x - 3)
        let roots = real_roots(&poly(&[6, -5, -2, 1]), 1e-15);
        let got: Vec<f64> = roots.iter().map(RealRoot::to_f64).collect();
        for (g, e) in got.iter().zip([-2.0, 1.0, 3.0]) {
            assert!((g - e).abs() < 1e-14);
        }
    }

    #[test]
    fn certified_radius_brackets_the_root() {
        let p = poly(&[-1, -1, 1]);
        for r in real_roots(&p, 1e-15) {
            assert!(r.radius < 1e-14);
            assert_ne!(p.sign_at(&r.lo), p.sign_at(&r.hi));
        }
    }

    #[test]
    fn discriminants() {
        assert_eq!(poly(&[-1, -1, 1]).discriminant(), BigInt::from(5));
        assert_eq!(poly(&[1, 1, -3, -1, 1]).discriminant(), BigInt::from(725));
        assert_eq!(poly(&[2, 0, -16, 0, 20, 0, -8, 0, 1]).discriminant(), BigInt::from(1u64 << 31));
        assert!(!poly(&[1, -2, 1]).is_squarefree());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Polynomial::from_i64s(&[1, 0, 2]), Err(Error::NotMonic(_))));
        assert!(matches!(Polynomial::from_i64s(&[1, 1]), Err(Error::InvalidPolynomial(_))));
        assert!(matches!(Polynomial::from_i64s(&[0, 1, 1]), Err(Error::InvalidPolynomial(_))));
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[-1, -1, 1]).to_string(), "x^2 - x - 1");
    }
}
