//! Eisenstein series, theta functions and their normalized ratios, the
//! affine `E8` character, numeric modular transformation checks and
//! matching against one-dimensional spaces of modular forms.

mod e8;
mod eisenstein;
mod modular;
mod numeric;
mod ratio;

pub use e8::{e8_character, e8_half_theta_sum, e8_lattice_theta, e8_table, e8_theta_combination, E8Table};
pub use eisenstein::{divisor_sum, eisenstein, phi};
pub use modular::{match_modular_basis, ModularBasis};
pub use numeric::{numeric_transform_check, theta_value, e2_value, NumericReport, TransformKind};
pub use ratio::{lhat_log_ratio, theta_log_ratio, theta_log_ratio_upto, theta_zero};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exactmath::SeriesError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThetaKind {
    Theta,
    Theta1,
    Theta2,
    Theta3,
}

impl ThetaKind {
    pub const ALL: [ThetaKind; 4] = [ThetaKind::Theta, ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3];

    pub fn name(self) -> &'static str {
        match self {
            ThetaKind::Theta => "theta",
            ThetaKind::Theta1 => "theta1",
            ThetaKind::Theta2 => "theta2",
            ThetaKind::Theta3 => "theta3",
        }
    }
}

impl fmt::Display for ThetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ThetaKind {
    type Err = ThetaError;
    fn from_str(s: &str) -> Result<Self, ThetaError> {
        ThetaKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| ThetaError::ArgumentError(format!("unknown theta kind `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ThetaError {
    #[error("invalid argument: {0}")]
    ArgumentError(String),
    #[error("degree error: {0}")]
    DegreeError(String),
    #[error("fractional exponents survived a combination that must cancel them: {0}")]
    InternalCancellationError(String),
    #[error("precision infeasible: {0}")]
    PrecisionError(String),
    #[error("not proportional to the basis form at q^{order}: difference {difference}")]
    NotProportional { order: String, difference: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
}
