use super::eisenstein::eisenstein;
use super::ThetaError;
use crate::exactmath::{exponent, QAlgebra, QExpSeries, RatSeries};

/// Generator of the one-dimensional space of level-one modular forms of
/// weight 10 (`E4 E6`) or 14 (`E4^2 E6`).
#[derive(Clone, Debug, PartialEq)]
pub struct ModularBasis {
    pub weight: u32,
    pub basis: RatSeries,
}

impl ModularBasis {
    pub fn new(weight: u32, n: u32) -> Result<Self, ThetaError> {
        let e4 = eisenstein(4, n)?;
        let e6 = eisenstein(6, n)?;
        let basis = match weight {
            10 => e4.mul(&e6)?,
            14 => e4.mul(&e4)?.mul(&e6)?,
            _ => return Err(ThetaError::ArgumentError(format!("no basis stored for weight {weight}"))),
        };
        Ok(ModularBasis { weight, basis })
    }
}

/// Returns `m = s_0` after checking `s = m * basis` coefficient by
/// coefficient through the truncation order of `s`.
pub fn match_modular_basis<R: QAlgebra>(s: &QExpSeries<R>, weight: u32) -> Result<R, ThetaError> {
    if s.order() < 2 {
        return Err(ThetaError::ArgumentError(format!("truncation order {} is below 2", s.order())));
    }
    let b = ModularBasis::new(weight, s.order())?;
    let m = s.coeff_or_zero(0);
    let keys: std::collections::BTreeSet<u32> = s.terms().map(|(k, _)| k).chain(b.basis.terms().map(|(k, _)| k)).collect();
    for k in keys {
        let expect = m.scale(&b.basis.coeff_or_zero(k));
        let got = s.coeff_or_zero(k);
        let diff = got.sub_ref(&expect);
        if !diff.is_zero_elem() {
            return Err(ThetaError::NotProportional {
                order: exponent(k).to_string(),
                difference: format!("{diff:?}"),
            });
        }
    }
    Ok(m)
}
