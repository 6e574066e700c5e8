//! Union-bound PEP curves and the eavesdropper's correct-decision bound.

use serde::Serialize;

use crate::bounds::{estimated_norm_sum, eve_sum, pep_sum};
use crate::enumeration::CountTable;
use crate::error::{Error, Result};

/// Linear SNR values for `points` equally spaced dB values in `[start, stop]`.
pub fn snr_grid(start_db: f64, stop_db: f64, points: usize) -> Result<Vec<f64>> {
    if points == 0 {
        return Err(Error::EmptyGrid);
    }
    if !(start_db.is_finite() && stop_db.is_finite()) {
        return Err(Error::InvalidParameter("SNR bounds must be finite".into()));
    }
    let step = if points == 1 { 0.0 } else { (stop_db - start_db) / (points - 1) as f64 };
    Ok((0..points).map(|i| start_db + step * i as f64).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PepCurve {
    pub snr_db: Vec<f64>,
    pub snr: Vec<f64>,
    /// `Σ n_k k^{-2} / γ^n`.
    pub pe_estimate: Vec<f64>,
    /// `Σ b_k k^{-2} / γ^n`.
    pub pe_exact: Vec<f64>,
    /// `pe_estimate / pe_exact`; independent of `γ`.
    pub ratio: f64,
}

/// `P_e(γ) = γ^{-n} Σ_k c_k / k^2` for both count columns, with the
/// unspecified constant `c` set to 1.
pub fn pep_curve(table: &CountTable, start_db: f64, stop_db: f64, points: usize) -> Result<PepCurve> {
    let snr_db = snr_grid(start_db, stop_db, points)?;
    let exact = pep_sum(table)?;
    let estimate = estimated_norm_sum(table, 2)?;
    let n = table.degree as i32;
    let snr: Vec<f64> = snr_db.iter().map(|db| 10f64.powf(db / 10.0)).collect();
    Ok(PepCurve {
        pe_estimate: snr.iter().map(|g| estimate / g.powi(n)).collect(),
        pe_exact: snr.iter().map(|g| exact / g.powi(n)).collect(),
        ratio: estimate / exact,
        snr_db,
        snr,
    })
}

/// `P_{c,e} ≃ (1/(4γ_e^2))^{n/2} · Vol(Λ_b) · Σ_k b_k / k^3`.
pub fn eve_probability(table: &CountTable, gamma_e: f64, vol_lambda_b: f64) -> Result<f64> {
    if !(gamma_e > 0.0 && gamma_e.is_finite()) {
        return Err(Error::InvalidParameter(format!("gamma_e = {gamma_e} must be positive")));
    }
    if !(vol_lambda_b > 0.0 && vol_lambda_b.is_finite()) {
        return Err(Error::InvalidParameter(format!("Vol(Λ_b) = {vol_lambda_b} must be positive")));
    }
    let n = table.degree as f64;
    Ok((4.0 * gamma_e * gamma_e).powf(-n / 2.0) * vol_lambda_b * eve_sum(table)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::CountRow;

    fn single(degree: usize) -> CountTable {
        CountTable {
            radius: 1.0,
            degree,
            k_limit: 1,
            max_norm: 1,
            total_points: 2,
            rows: vec![CountRow { k: 1, a: 1, b: Some(2), n_raw: Some(2.5), n: Some(2), f: Some(0) }],
        }
    }

    #[test]
    fn single_row_curve() {
        let c = pep_curve(&single(2), 0.0, 20.0, 3).unwrap();
        assert_eq!(c.snr, vec![1.0, 10.0, 100.0]);
        for (g, p) in c.snr.iter().zip(&c.pe_exact) {
            assert!((p - 2.0 / (g * g)).abs() < 1e-15);
        }
        assert_eq!(c.ratio, 1.0);
        assert!(matches!(pep_curve(&single(2), 0.0, 1.0, 0), Err(Error::EmptyGrid)));
    }

    #[test]
    fn doubling_snr_divides_by_two_to_the_n() {
        let t = single(4);
        let db2 = 10.0 * 2f64.log10();
        let c = pep_curve(&t, 3.0, 3.0 + db2, 2).unwrap();
        assert!((c.pe_exact[0] / c.pe_exact[1] - 16.0).abs() < 1e-9);
        let e1 = eve_probability(&t, 1.5, 1.0).unwrap();
        let e2 = eve_probability(&t, 3.0, 1.0).unwrap();
        assert!((e1 / e2 - 16.0).abs() < 1e-12);
    }

    #[test]
    fn eve_unit_box() {
        assert!((eve_probability(&single(2), 1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(eve_probability(&single(2), 0.0, 1.0).is_err());
        assert!(eve_probability(&single(2), 1.0, -1.0).is_err());
    }
}
