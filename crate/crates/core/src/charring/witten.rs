use std::fmt;
use std::str::FromStr;

use super::bundle::{vb_adams, VirtualBundle};
use super::poly::GradedPoly;
use super::{ClassError, CohomQSeries};
use crate::exactmath::{Rat, GRID};

/// The Witten bundles built from symmetric and exterior power operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WittenSpecId {
    /// `Theta(T)`, symmetric powers `S_{q^m}` of the reduced bundle.
    Theta,
    /// `Theta(T, xi)`: `Theta(T)` twisted by three exterior-power factors of
    /// the reduced line pair.
    ThetaXi,
    Theta1,
    Theta2,
    Theta3,
    /// `Theta (x) Theta1 (x) Theta2 (x) Theta3`.
    Phi,
}

impl WittenSpecId {
    pub const ALL: [WittenSpecId; 6] = [
        WittenSpecId::Theta,
        WittenSpecId::ThetaXi,
        WittenSpecId::Theta1,
        WittenSpecId::Theta2,
        WittenSpecId::Theta3,
        WittenSpecId::Phi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WittenSpecId::Theta => "theta",
            WittenSpecId::ThetaXi => "theta_xi",
            WittenSpecId::Theta1 => "theta1",
            WittenSpecId::Theta2 => "theta2",
            WittenSpecId::Theta3 => "theta3",
            WittenSpecId::Phi => "phi",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            WittenSpecId::ThetaXi => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for WittenSpecId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WittenSpecId {
    type Err = ClassError;
    fn from_str(s: &str) -> Result<Self, ClassError> {
        let t = s.to_ascii_lowercase();
        WittenSpecId::ALL
            .iter()
            .copied()
            .find(|w| w.name() == t)
            .ok_or_else(|| ClassError::SpecError(s.to_string()))
    }
}

/// One tensor factor `prod_n F_{eps q^(n - shift)}(E)` where `F` is the
/// total symmetric or exterior power.
#[derive(Clone, Copy, Debug)]
struct Factor {
    symmetric: bool,
    sign: i64,
    half_shift: bool,
}

const SYM: Factor = Factor { symmetric: true, sign: 1, half_shift: false };
const EXT: Factor = Factor { symmetric: false, sign: 1, half_shift: false };
const EXT_HALF_NEG: Factor = Factor { symmetric: false, sign: -1, half_shift: true };
const EXT_HALF_POS: Factor = Factor { symmetric: false, sign: 1, half_shift: true };

/// `log ch` of a factor, using
/// `log ch S_t(E) = sum t^k/k ch(psi^k E)` and
/// `log ch Lambda_t(E) = sum (-1)^(k+1) t^k/k ch(psi^k E)`.
fn log_factor(adams: &[GradedPoly], f: Factor, order: u32, cap: u32) -> CohomQSeries {
    let lim = order * GRID;
    let mut out = CohomQSeries::zero(cap, order);
    for n in 1.. {
        let base = if f.half_shift { GRID * n - GRID / 2 } else { GRID * n };
        if base > lim {
            break;
        }
        for k in 1.. {
            let key = base * k;
            if key > lim {
                break;
            }
            let k = k as i64;
            let mut s = if f.sign < 0 && k % 2 == 1 { -1 } else { 1 };
            if !f.symmetric && k % 2 == 0 {
                s = -s;
            }
            let coeff = adams[k as usize].scale(&Rat::new(s, k));
            out.add_term(key, coeff);
        }
    }
    out
}

fn adams_table(e: &VirtualBundle, order: u32) -> Result<Vec<GradedPoly>, ClassError> {
    let kmax = 2 * order as i64 + 1;
    let mut v = vec![GradedPoly::zero(e.cap())];
    for k in 1..=kmax {
        v.push(vb_adams(e, k)?.into_ch());
    }
    Ok(v)
}

/// `ch` of a Witten bundle as a `q`-series (fractional exponents kept on the
/// `1/24` grid). `inputs` is `[T]` or, for `ThetaXi`, `[T, xi]`.
pub fn witten_series(spec: WittenSpecId, inputs: &[VirtualBundle], order: u32) -> Result<CohomQSeries, ClassError> {
    if inputs.len() != spec.arity() {
        return Err(ClassError::SpecError(format!(
            "{spec} takes {} input bundle(s), got {}",
            spec.arity(),
            inputs.len()
        )));
    }
    let cap = inputs.iter().map(|b| b.cap()).min().unwrap_or(12);
    let t = adams_table(&inputs[0].reduced(), order)?;
    let mut factors: Vec<(&[GradedPoly], Factor)> = Vec::new();
    let xi;
    match spec {
        WittenSpecId::Theta => factors.push((&t, SYM)),
        WittenSpecId::ThetaXi => {
            xi = adams_table(&inputs[1].reduced(), order)?;
            factors.push((&t, SYM));
            factors.push((&xi, EXT));
            factors.push((&xi, EXT_HALF_NEG));
            factors.push((&xi, EXT_HALF_POS));
        }
        WittenSpecId::Theta1 => factors.push((&t, EXT)),
        WittenSpecId::Theta2 => factors.push((&t, EXT_HALF_NEG)),
        WittenSpecId::Theta3 => factors.push((&t, EXT_HALF_POS)),
        WittenSpecId::Phi => {
            for f in [SYM, EXT, EXT_HALF_NEG, EXT_HALF_POS] {
                factors.push((&t, f));
            }
        }
    }
    let mut expo = CohomQSeries::zero(cap, order);
    for (table, f) in factors {
        expo = expo.add(&log_factor(table, f, order, cap))?;
    }
    Ok(expo.exp()?)
}

/// Coefficients of `q^0, q^1, ..., q^order` as virtual bundles.
pub fn witten_expand(spec: WittenSpecId, inputs: &[VirtualBundle], order: u32) -> Result<Vec<VirtualBundle>, ClassError> {
    let s = witten_series(spec, inputs, order)?;
    Ok((0..=order).map(|n| VirtualBundle::from_ch(s.coeff_q(n))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::bundle::{line_pair_ch, tangent12, vb_lambda2_sym2};
    use crate::charring::gens::Gen;
    use crate::charring::poly::g;

    #[test]
    fn theta_first_coefficient() {
        let t = tangent12();
        let c = witten_expand(WittenSpecId::Theta, std::slice::from_ref(&t), 2).unwrap();
        assert_eq!(c[0], VirtualBundle::trivial(1, 12));
        assert_eq!(c[1], t.reduced());
        // q^2: S^2(T~) + T~
        let tr = t.reduced();
        let (_, s2) = vb_lambda2_sym2(&tr);
        assert_eq!(c[2], &s2 + &tr);
    }

    #[test]
    fn b1_and_d1() {
        let t = tangent12();
        let xi = line_pair_ch(&g(Gen::C)).unwrap();
        let xr = xi.reduced();
        let c = witten_expand(WittenSpecId::ThetaXi, &[t.clone(), xi], 1).unwrap();
        let b1 = &(&t.plus_trivial(-12) - &xr.scale(3)) - &xr.tensor(&xr);
        assert_eq!(c[1], b1);
        let (l2, s2) = vb_lambda2_sym2(&t);
        let d1 = (&(&t.scale(2) + &l2) - &s2).plus_trivial(-12);
        let p = witten_expand(WittenSpecId::Phi, &[t], 1).unwrap();
        assert_eq!(p[1], d1);
    }

    #[test]
    fn half_integer_terms() {
        let t = tangent12();
        let s = witten_series(WittenSpecId::Theta2, std::slice::from_ref(&t), 1).unwrap();
        assert_eq!(s.coeff_or_zero(12), t.reduced().ch().scale_int(-1));
        let x = witten_series(WittenSpecId::ThetaXi, &[t.clone(), line_pair_ch(&g(Gen::C)).unwrap()], 3).unwrap();
        assert!(x.is_integral());
    }

    #[test]
    fn spec_errors() {
        assert!(matches!("nosuch".parse::<WittenSpecId>(), Err(ClassError::SpecError(_))));
        assert!(witten_series(WittenSpecId::ThetaXi, &[tangent12()], 1).is_err());
    }
}
