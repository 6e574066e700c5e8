//! Fundamental units, the logarithmic embedding and the regulator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::det_f64;
use crate::numberfield::{AlgebraicInt, NumberField};

/// Regulators below this are treated as a dependent unit system.
pub const DEPENDENCE_THRESHOLD: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct UnitSystem {
    units: Vec<AlgebraicInt>,
    w: u32,
    /// `log_matrix[i][j] = log|σ_j(ε_i)|`.
    log_matrix: Vec<Vec<f64>>,
    regulator: f64,
    second_minor: f64,
    log_volume: f64,
}

impl UnitSystem {
    pub fn units(&self) -> &[AlgebraicInt] {
        &self.units
    }

    /// Number of roots of unity in the field.
    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn log_matrix(&self) -> &[Vec<f64>] {
        &self.log_matrix
    }

    /// `|det|` of the minor dropping the last column.
    pub fn regulator(&self) -> f64 {
        self.regulator
    }

    /// The same determinant with the first column dropped instead.
    pub fn second_minor(&self) -> f64 {
        self.second_minor
    }

    /// `vol(Λ_log) = ρ_K √n`.
    pub fn log_volume(&self) -> f64 {
        self.log_volume
    }

    /// Compares against a reference regulator. A fundamental system matches;
    /// a subgroup of index `i` gives a ratio close to the integer `i`.
    pub fn check_regulator(&self, expected: f64) -> RegulatorCheck {
        let ratio = self.regulator / expected;
        RegulatorCheck {
            expected,
            computed: self.regulator,
            ratio,
            matches: (self.regulator - expected).abs() <= 1e-6 * expected.max(1.0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegulatorCheck {
    pub expected: f64,
    pub computed: f64,
    /// `computed / expected`.
    pub ratio: f64,
    pub matches: bool,
}

/// `|N(x)| = 1`, decided exactly.
pub fn is_unit(field: &NumberField, x: &AlgebraicInt) -> bool {
    field.norm(x).abs().is_one()
}

/// Fundamental unit of a real quadratic `Z[θ]`, normalized to be `> 1` at
/// the larger embedding.
///
/// Scans the continued-fraction convergents `p/q` of the larger root `α`,
/// kept exactly as `(P + √D)/Q`, for the first `|N(p - qθ)| = 1`. Since
/// `D ≥ 5`, every unit `p - qθ` with `q > 0` and `|p - qα| < 1` is a
/// convergent, and the smallest `q` gives the fundamental one.
pub fn quadratic_fundamental_unit(field: &NumberField) -> Result<AlgebraicInt> {
    if field.degree() != 2 {
        return Err(Error::InvalidParameter(format!(
            "continued-fraction units need degree 2, field has degree {}",
            field.degree()
        )));
    }
    let c = field.min_poly().coeffs();
    let (f0, f1) = (c[0].clone(), c[1].clone());
    let d: BigInt = &f1 * &f1 - BigInt::from(4) * &f0;
    let sqrt_d = d.sqrt();

    let norm_of = |p: &BigInt, q: &BigInt| p * p + &f1 * p * q + &f0 * q * q;
    let floor_quot = |p: &BigInt, q: &BigInt| -> BigInt {
        // floor((P + √D)/Q), √D irrational
        let t: BigInt = p + &sqrt_d;
        if q.is_positive() {
            t.div_floor(q)
        } else {
            let m: BigInt = -q;
            -(t.div_floor(&m) + BigInt::one())
        }
    };

    let (mut pp, mut qq) = (-f1.clone(), BigInt::from(2));
    let (mut p_prev, mut p_cur) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q_cur) = (BigInt::one(), BigInt::zero());
    let (p, q) = loop {
        let a = floor_quot(&pp, &qq);
        let p_next = &a * &p_cur + &p_prev;
        let q_next = &a * &q_cur + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
        if q_cur.is_positive() && norm_of(&p_cur, &q_cur).abs().is_one() {
            break (p_cur, q_cur);
        }
        pp = &a * &qq - &pp;
        qq = (&d - &pp * &pp) / &qq;
    };

    let mut u = AlgebraicInt::new(vec![p, -q]);
    let larger = |x: &AlgebraicInt| field.embed(x)[1].to_f64();
    if larger(&u).abs() < 1.0 {
        u = field.inverse(&u).expect("norm ±1 elements are invertible");
    }
    if larger(&u) < 0.0 {
        u = u.neg();
    }
    Ok(u)
}

fn log_row(field: &NumberField, u: &AlgebraicInt) -> Vec<f64> {
    field.embed(u).iter().map(|e| e.value.abs().to_f64().ln()).collect()
}

/// Validates `r = n - 1` units and computes the log matrix and regulator.
pub fn build_unit_system(field: &NumberField, units: Vec<AlgebraicInt>, w: u32) -> Result<UnitSystem> {
    let n = field.degree();
    let r = n - 1;
    if units.len() != r {
        return Err(Error::WrongRank { expected: r, got: units.len() });
    }
    for (index, u) in units.iter().enumerate() {
        if u.coords().len() != n {
            return Err(Error::InvalidParameter(format!(
                "unit {index} has {} coordinates, field degree is {n}",
                u.coords().len()
            )));
        }
        let norm = field.norm(u);
        if !norm.abs().is_one() {
            return Err(Error::NotAUnit { index, norm: norm.to_string() });
        }
    }
    if w == 0 {
        return Err(Error::InvalidParameter("roots_of_unity must be positive".into()));
    }
    let log_matrix: Vec<Vec<f64>> = units.iter().map(|u| log_row(field, u)).collect();
    let minor = |skip: usize| -> f64 {
        let m: Vec<Vec<f64>> = log_matrix
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect())
            .collect();
        det_f64(m).abs()
    };
    let regulator = minor(n - 1);
    let second_minor = minor(0);
    if !(regulator >= DEPENDENCE_THRESHOLD) {
        return Err(Error::DependentUnits(regulator));
    }
    Ok(UnitSystem { units, w, log_matrix, regulator, second_minor, log_volume: regulator * (n as f64).sqrt() })
}
