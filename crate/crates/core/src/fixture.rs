//! Field documents: the JSON description of a field and its unit data.
//!
//! ```json
//! { "label": "Q(sqrt5)", "min_poly": [-1, -1, 1], "assume_maximal_order": true }
//! ```
//!
//! Coefficients may be JSON integers or decimal strings for values beyond
//! `i64`. Degree-2 documents may omit `fundamental_units`; the unit is then
//! found from the continued fraction of `θ`.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numberfield::{AlgebraicInt, NumberField, Precision};
use crate::poly::Polynomial;
use crate::units::{build_unit_system, quadratic_fundamental_unit, RegulatorCheck, UnitSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Text(String),
}

impl Coefficient {
    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            Coefficient::Int(v) => Ok(BigInt::from(*v)),
            Coefficient::Text(s) => {
                s.trim().parse().map_err(|_| Error::InvalidPolynomial(format!("{s:?} is not an integer")))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDocument {
    pub label: String,
    /// Ascending coefficients `c_0, ..., c_n` with `c_n = 1`.
    pub min_poly: Vec<Coefficient>,
    #[serde(default)]
    pub assume_maximal_order: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fundamental_units: Option<Vec<Vec<Coefficient>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots_of_unity: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_regulator: Option<f64>,
}

impl FieldDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn polynomial(&self) -> Result<Polynomial> {
        let coeffs = self.min_poly.iter().map(Coefficient::to_bigint).collect::<Result<Vec<_>>>()?;
        Polynomial::new(coeffs)
    }
}

/// Where the unit system came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitSource {
    Document,
    ContinuedFraction,
}

/// A parsed field together with its validated unit system.
#[derive(Clone, Debug)]
pub struct FieldContext {
    pub label: String,
    pub field: NumberField,
    pub units: UnitSystem,
    pub unit_source: UnitSource,
    /// Present when the document carries `expected_regulator`.
    pub regulator_check: Option<RegulatorCheck>,
}

impl FieldContext {
    pub fn from_document(doc: &FieldDocument, precision: Precision) -> Result<Self> {
        let field = NumberField::new(doc.polynomial()?, doc.assume_maximal_order, precision)?;
        let n = field.degree();
        let w = doc.roots_of_unity.unwrap_or(2);
        if w != 2 {
            // the only roots of unity in a real field are ±1
            return Err(Error::InvalidParameter(format!("roots_of_unity = {w}, a totally real field has 2")));
        }
        let (units, unit_source) = match &doc.fundamental_units {
            Some(list) => {
                let units = list
                    .iter()
                    .map(|c| Ok(AlgebraicInt::new(c.iter().map(Coefficient::to_bigint).collect::<Result<_>>()?)))
                    .collect::<Result<Vec<_>>>()?;
                (units, UnitSource::Document)
            }
            None if n == 2 => (vec![quadratic_fundamental_unit(&field)?], UnitSource::ContinuedFraction),
            None => return Err(Error::MissingUnits(n)),
        };
        let units = build_unit_system(&field, units, w)?;
        let regulator_check = doc.expected_regulator.map(|r| units.check_regulator(r));
        Ok(FieldContext { label: doc.label.clone(), field, units, unit_source, regulator_check })
    }

    pub fn load(path: impl AsRef<Path>, precision: Precision) -> Result<Self> {
        Self::from_document(&FieldDocument::from_path(path)?, precision)
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_without_units() {
        let doc =
            FieldDocument::from_json(r#"{"label":"g","min_poly":[-1,-1,1],"assume_maximal_order":true}"#).unwrap();
        let ctx = FieldContext::from_document(&doc, Precision::default()).unwrap();
        assert_eq!(ctx.unit_source, UnitSource::ContinuedFraction);
        assert!((ctx.units.regulator() - 0.481211825059603).abs() < 1e-12);
        assert!(ctx.regulator_check.is_none());
    }

    #[test]
    fn string_coefficients_and_expected_regulator() {
        let doc = FieldDocument::from_json(
            r#"{"label":"g","min_poly":["-1","-1","1"],"assume_maximal_order":true,
                "fundamental_units":[[0,"1"]],"expected_regulator":0.481211825059603}"#,
        )
        .unwrap();
        let ctx = FieldContext::from_document(&doc, Precision::default()).unwrap();
        assert_eq!(ctx.unit_source, UnitSource::Document);
        assert!(ctx.regulator_check.unwrap().matches);
    }

    #[test]
    fn rejections() {
        let quartic = r#"{"label":"q","min_poly":[1,1,-3,-1,1],"assume_maximal_order":true}"#;
        let doc = FieldDocument::from_json(quartic).unwrap();
        assert!(matches!(FieldContext::from_document(&doc, Precision::default()), Err(Error::MissingUnits(4))));

        let w4 = r#"{"label":"g","min_poly":[-1,-1,1],"roots_of_unity":4}"#;
        let doc = FieldDocument::from_json(w4).unwrap();
        assert!(matches!(FieldContext::from_document(&doc, Precision::default()), Err(Error::InvalidParameter(_))));

        assert!(matches!(FieldDocument::from_json(r#"{"label":"x"}"#), Err(Error::Json(_))));
        let bad = FieldDocument::from_json(r#"{"label":"g","min_poly":["a",1,1]}"#).unwrap();
        assert!(matches!(bad.polynomial(), Err(Error::InvalidPolynomial(_))));
    }
}
