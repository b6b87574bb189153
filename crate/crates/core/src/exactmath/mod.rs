//! Exact scalars and truncated `q`-series.

mod rat;
mod ring;
mod series;
pub mod taylor;
mod zmod;

pub use rat::{ParseRatError, Rat};
pub use ring::{QAlgebra, Ring};
pub use series::{exponent, qs_exp, qs_inv, qs_log, qs_mul, QExpSeries, GRID};
pub use zmod::ZMod;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("coefficient ring mismatch: {0}")]
    RingMismatch(String),
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("exponent grid error: {0}")]
    GridError(String),
    #[error("series is not exponentiable: {0}")]
    NotExponentiable(String),
    #[error("logarithm undefined: {0}")]
    NotLogarithmic(String),
}

/// Series with rational coefficients.
pub type RatSeries = QExpSeries<Rat>;

/// `sum c_n q^n` from integer-exponent coefficients.
pub fn rat_series(coeffs: &[i64], order: u32) -> RatSeries {
    QExpSeries::from_terms(
        (),
        order,
        coeffs.iter().enumerate().map(|(n, c)| (n as u32 * GRID, Rat::from_int(*c))),
    )
}
