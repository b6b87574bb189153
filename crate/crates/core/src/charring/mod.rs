//! Graded characteristic-class ring, virtual bundles via the Chern
//! character, and the Witten bundle expansions.

mod bundle;
mod gens;
mod poly;
mod witten;

pub use bundle::{
    ahat_root, ch_real_bundle, ch_tangent, e8_ch, line_pair_ch, multiplicative_class, multiplicative_class_of,
    pontryagin_power_sums, power_sums_from_pontryagin, tangent12, vb_adams, vb_lambda2_sym2, RootFunction,
    VirtualBundle,
};
pub use gens::{Gen, Monomial, NGENS};
pub use poly::{g, k, GradedPoly, DEFAULT_CAP};
pub use witten::{witten_expand, witten_series, WittenSpecId};

use crate::exactmath::{QExpSeries, Rat, SeriesError};
use crate::thetamod::{self, ThetaError};

/// `q`-series with coefficients in the graded class ring.
pub type CohomQSeries = QExpSeries<GradedPoly>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassError {
    #[error("degree error: {0}")]
    DegreeError(String),
    #[error("root function is not even: {0}")]
    ParityError(String),
    #[error("unsupported manifold dimension {0} (expected 10 or 12)")]
    DimError(u32),
    #[error("invalid argument: {0}")]
    ArgumentError(String),
    #[error("unknown or malformed Witten bundle spec: {0}")]
    SpecError(String),
    #[error("E8 root calibration failed: {0}")]
    CalibrationError(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
}

/// Power sums `g_k = sum_l y_l^(2k)` of the `E8` roots of a bundle with
/// `c2 = 60 x`, matched against `e8_ch(x)` through the `q^1` coefficient of
/// the basic-representation character.
///
/// The `q^1` coefficient is `248 + 30 g1 + 3/2 g1^2 + 1/24 g1^3` and does not
/// involve `g2` or `g3`. Where a degree leaves its power sum undetermined the
/// Weyl-invariant values `g2 = 3/10 g1^2`, `g3 = 1/8 g1^3` are used, after
/// checking that the remaining data already matches.
pub fn calibrate_e8_roots(x: &GradedPoly) -> Result<(GradedPoly, GradedPoly, GradedPoly), ClassError> {
    if !x.is_homogeneous(4) {
        return Err(ClassError::DegreeError(format!("x must be homogeneous of degree 4, got {x}")));
    }
    let cap = x.cap();
    let gens = [GradedPoly::gen(Gen::G1, cap), GradedPoly::gen(Gen::G2, cap), GradedPoly::gen(Gen::G3, cap)];
    let sym = thetamod::e8_character(&gens, 1)?.coeff_q(1);
    let target = e8_ch(x)?.into_ch();
    let gs = [Gen::G1, Gen::G2, Gen::G3];
    let mut solved: Vec<GradedPoly> = Vec::new();
    for (i, gk) in gs.iter().enumerate() {
        let d = 4 * (i as u32 + 1);
        if d > cap {
            solved.push(GradedPoly::zero(cap));
            continue;
        }
        let part = sym.component(d);
        let lead = part.coeff(&Monomial::gen(*gk));
        let known = |gen: Gen| -> Option<GradedPoly> {
            match gs.iter().position(|h| *h == gen) {
                Some(j) if j < solved.len() => Some(solved[j].clone()),
                Some(_) => Some(GradedPoly::zero(cap)),
                None => None,
            }
        };
        let rest = part.substitute(known, cap);
        let residual = &target.component(d) - &rest;
        if !lead.is_zero() {
            solved.push(residual.scale(&lead.recip().unwrap()));
        } else if residual.is_zero() {
            let g1 = &solved[0];
            let v = match i {
                1 => (g1 * g1).scale(&Rat::new(3, 10)),
                _ => (&(g1 * g1) * g1).scale(&Rat::new(1, 8)),
            };
            solved.push(v);
        } else {
            return Err(ClassError::CalibrationError(format!(
                "degree-{d} part is independent of {gk} and mismatches by {residual}"
            )));
        }
    }
    let g3 = solved.pop().unwrap();
    let g2 = solved.pop().unwrap();
    let g1 = solved.pop().unwrap();
    Ok((g1, g2, g3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calibration() {
        let (g1, g2, g3) = calibrate_e8_roots(&g(Gen::X)).unwrap();
        assert_eq!(g1, g(Gen::X).scale_int(-2));
        assert_eq!(g2, g(Gen::X).pow(2).scale(&Rat::new(6, 5)));
        assert_eq!(g3, g(Gen::X).pow(3).scale_int(-1));
        let (a, b, c) = calibrate_e8_roots(&GradedPoly::zero(12)).unwrap();
        assert!(a.is_zero() && b.is_zero() && c.is_zero());
    }
}
