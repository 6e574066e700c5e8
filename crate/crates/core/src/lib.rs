//! Nonasymptotic probability bounds for lattice codes built from totally
//! real number fields.
//!
//! The pipeline: a [`NumberField`] `Q(θ)` with order `Z[θ]`, its Dedekind
//! zeta coefficients ([`zeta`]), a fundamental unit system ([`units`]),
//! exact enumeration of the constellation `ψ(Z[θ]) ∩ [-R, R]^n`
//! ([`enumeration`]), the log-space point-count estimate ([`estimator`]),
//! the inverse-norm-sum bounds ([`bounds`]) and the PEP / eavesdropper
//! curves ([`channel`]).

pub mod bounds;
pub mod channel;
pub mod cli;
pub mod dd;
pub mod enumeration;
pub mod error;
pub mod estimator;
pub mod export;
pub mod fixture;
mod fp;
pub mod linalg;
pub mod numberfield;
pub mod poly;
pub mod units;
pub mod zeta;

pub use error::{Error, Result};
pub use numberfield::{parse_field, AlgebraicInt, CertifiedReal, NumberField, Precision};
pub use poly::{real_roots, Polynomial, RealRoot};
