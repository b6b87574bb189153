use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::AnomalyError;
use crate::charring::{
    calibrate_e8_roots, line_pair_ch, multiplicative_class, tangent12, witten_series, CohomQSeries, Gen,
    GradedPoly, RootFunction, WittenSpecId, DEFAULT_CAP,
};
use crate::exactmath::taylor;
use crate::exactmath::{Rat, RatSeries};
use crate::thetamod::{e8_theta_combination, eisenstein, lhat_log_ratio, theta_log_ratio, ThetaKind};

fn gen(g: Gen) -> GradedPoly {
    GradedPoly::gen(g, DEFAULT_CAP)
}

fn half(p: &GradedPoly) -> GradedPoly {
    p.scale(&Rat::new(1, 2))
}

/// `lambda = p1/2`.
pub fn lambda() -> GradedPoly {
    half(&gen(Gen::P1))
}

/// `p = (p2 - lambda^2)/2`.
pub fn p_spin() -> GradedPoly {
    half(&(&gen(Gen::P2) - &lambda().pow(2)))
}

/// `p~ = p - 3 lambda^2`.
pub fn p_tilde() -> GradedPoly {
    &p_spin() - &lambda().pow(2).scale_int(3)
}

/// `lambda_c = (p1 - 3c^2)/2`.
pub fn lambda_c() -> GradedPoly {
    half(&(&gen(Gen::P1) - &gen(Gen::C).pow(2).scale_int(3)))
}

/// `8 p_c = 4p2 - p1^2 - 6 p1 c^2 + 39 c^4`.
pub fn p_c() -> GradedPoly {
    let (p1, p2, c2) = (gen(Gen::P1), gen(Gen::P2), gen(Gen::C).pow(2));
    let s = &(&(&p2.scale_int(4) - &p1.pow(2)) - &(&p1 * &c2).scale_int(6)) + &c2.pow(2).scale_int(39);
    s.scale(&Rat::new(1, 8))
}

/// `p~_c = p_c - 3 lambda_c^2`.
pub fn p_tilde_c() -> GradedPoly {
    &p_c() - &lambda_c().pow(2).scale_int(3)
}

/// `C(x) = lambda + 2x`.
pub fn cap_c(x: &GradedPoly) -> GradedPoly {
    &lambda() + &x.scale_int(2)
}

/// `C~(x) = lambda + x`.
pub fn cap_c_tilde(x: &GradedPoly) -> GradedPoly {
    &lambda() + x
}

/// `C_c(x) = lambda_c + 2x`.
pub fn cap_c_c(x: &GradedPoly) -> GradedPoly {
    &lambda_c() + &x.scale_int(2)
}

/// `C~_c(x) = lambda_c + x`.
pub fn cap_c_tilde_c(x: &GradedPoly) -> GradedPoly {
    &lambda_c() + x
}

/// `D(x) = -p1 + 2x`.
pub fn cap_d(x: &GradedPoly) -> GradedPoly {
    &x.scale_int(2) - &gen(Gen::P1)
}

/// `D~(x) = -p1 + x`.
pub fn cap_d_tilde(x: &GradedPoly) -> GradedPoly {
    x - &gen(Gen::P1)
}

/// `cosh(c/2)`.
pub fn cosh_half(c: &GradedPoly) -> GradedPoly {
    c.compose_series(&taylor::exp_part(&Rat::new(1, 2), 0, c.cap() as usize / 2 + 1))
        .expect("c is nilpotent")
}

/// `e^{c/2}`.
pub fn exp_half(c: &GradedPoly) -> GradedPoly {
    c.scale(&Rat::new(1, 2)).exp().expect("c is nilpotent")
}

/// The twisted Witten classes.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwistedKind {
    W,
    Wc,
    Qc,
    Rc,
    QL,
    RL,
    LWitten,
}

impl TwistedKind {
    pub const ALL: [TwistedKind; 7] = [
        TwistedKind::W,
        TwistedKind::Wc,
        TwistedKind::Qc,
        TwistedKind::Rc,
        TwistedKind::QL,
        TwistedKind::RL,
        TwistedKind::LWitten,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TwistedKind::W => "W",
            TwistedKind::Wc => "Wc",
            TwistedKind::Qc => "Qc",
            TwistedKind::Rc => "Rc",
            TwistedKind::QL => "QL",
            TwistedKind::RL => "RL",
            TwistedKind::LWitten => "LWitten",
        }
    }

    /// Modular weight of the degree-12 component, for the classes that are
    /// modular forms.
    pub fn weight(self) -> Option<u32> {
        match self {
            TwistedKind::Qc | TwistedKind::QL => Some(14),
            TwistedKind::Rc | TwistedKind::RL => Some(10),
            _ => None,
        }
    }
}

impl fmt::Display for TwistedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for TwistedKind {
    type Err = AnomalyError;
    fn from_str(s: &str) -> Result<Self, AnomalyError> {
        TwistedKind::ALL
            .iter()
            .copied()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| AnomalyError::ArgumentError(format!("unknown class `{s}`")))
    }
}

/// How the Witten-bundle factor is expanded.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Route {
    /// Total symmetric/exterior powers via Adams operations.
    #[default]
    Adams,
    /// Products of normalized theta-function ratios over the Chern roots.
    Theta,
}

/// Twisting data: the degree-4 classes `x_i`, `x_j` of the two `E8`
/// bundles (only `x_i` is used by `Rc`, `RL`) and `c = c1(xi)` (ignored by
/// the orientable classes).
#[derive(Clone, Debug, PartialEq)]
pub struct TwistParams {
    pub xi: GradedPoly,
    pub xj: GradedPoly,
    pub c: GradedPoly,
}

impl TwistParams {
    /// Symbolic `x_i = x_j = x` and symbolic `c`.
    pub fn symbolic() -> Self {
        TwistParams { xi: gen(Gen::X), xj: gen(Gen::X), c: gen(Gen::C) }
    }

    /// Symbolic `x` with `c = 0`.
    pub fn spin() -> Self {
        TwistParams { c: GradedPoly::zero(DEFAULT_CAP), ..Self::symbolic() }
    }
}

fn lift(s: &RatSeries, p: &GradedPoly) -> CohomQSeries {
    s.map(p.cap(), |r| p.scale(r))
}

/// `exp(E2(q) * a / 24)`.
fn e2_prefactor(a: &GradedPoly, n: u32) -> Result<CohomQSeries, AnomalyError> {
    let e2 = eisenstein(2, n)?;
    Ok(lift(&e2, &a.scale(&Rat::new(1, 24))).exp()?)
}

/// `A-hat(TZ) ch Theta(T)` or, with `c`, `A-hat(TZ) cosh(c/2) ch Theta(T, xi)`.
fn ahat_theta(c: Option<&GradedPoly>, n: u32, route: Route) -> Result<CohomQSeries, AnomalyError> {
    let cap = DEFAULT_CAP;
    match route {
        Route::Adams => {
            let ahat = multiplicative_class(&RootFunction::Ahat, 12)?;
            let t = tangent12();
            let (w, pre) = match c {
                None => (witten_series(WittenSpecId::Theta, &[t], n)?, ahat),
                Some(c) => {
                    let xi = line_pair_ch(c)?;
                    (witten_series(WittenSpecId::ThetaXi, &[t, xi], n)?, &ahat * &cosh_half(c))
                }
            };
            Ok(w.scale_by(&pre))
        }
        Route::Theta => {
            let pis = crate::charring::pontryagin_power_sums(cap);
            let mut expo = CohomQSeries::zero(cap, n);
            for (ck, pk) in theta_log_ratio(ThetaKind::Theta, n).iter().zip(pis.iter()) {
                expo = expo.add(&lift(ck, pk))?;
            }
            if let Some(c) = c {
                for kind in [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3] {
                    for (k, ck) in theta_log_ratio(kind, n).iter().enumerate() {
                        expo = expo.add(&lift(ck, &c.pow(2 * (k as u32 + 1))))?;
                    }
                }
            }
            Ok(expo.exp()?)
        }
    }
}

/// `L-hat(TZ) ch Phi(T)`.
fn lhat_phi(n: u32, route: Route) -> Result<CohomQSeries, AnomalyError> {
    let cap = DEFAULT_CAP;
    match route {
        Route::Adams => {
            let lhat = multiplicative_class(&RootFunction::Lhat, 12)?;
            Ok(witten_series(WittenSpecId::Phi, &[tangent12()], n)?.scale_by(&lhat))
        }
        Route::Theta => {
            let pis = crate::charring::pontryagin_power_sums(cap);
            let mut expo = CohomQSeries::zero(cap, n);
            for (ck, pk) in lhat_log_ratio(n).iter().zip(pis.iter()) {
                expo = expo.add(&lift(ck, pk))?;
            }
            Ok(expo.exp()?.scale(&Rat::from_int(64)))
        }
    }
}

/// `phi^8 ch(V)` for the `E8` bundle with `c2 = 60 x`, together with `g1`.
fn e8_factor(x: &GradedPoly, n: u32) -> Result<(CohomQSeries, GradedPoly), AnomalyError> {
    let (g1, g2, g3) = calibrate_e8_roots(x)?;
    let comb = e8_theta_combination(&[g1.clone(), g2, g3], n)?;
    Ok((comb, g1))
}

/// Assembles a twisted Witten class to `q`-order `n` (all degrees up to
/// 12). Take the degree-12 component of each coefficient for the modular
/// forms.
pub fn build_twisted_class(
    kind: TwistedKind,
    params: &TwistParams,
    n: u32,
    route: Route,
) -> Result<CohomQSeries, AnomalyError> {
    let p1 = gen(Gen::P1);
    let c = &params.c;
    let c2 = c.pow(2);
    let spinc_a = &p1 - &c2.scale_int(3);
    let orient_a = p1.scale_int(-2);
    let (mut a, mut body) = match kind {
        TwistedKind::W => (p1.clone(), ahat_theta(None, n, route)?),
        TwistedKind::Wc | TwistedKind::Qc | TwistedKind::Rc => (spinc_a, ahat_theta(Some(c), n, route)?),
        TwistedKind::LWitten | TwistedKind::QL | TwistedKind::RL => (orient_a, lhat_phi(n, route)?),
    };
    let twists: Vec<&GradedPoly> = match kind {
        TwistedKind::Qc | TwistedKind::QL => vec![&params.xi, &params.xj],
        TwistedKind::Rc | TwistedKind::RL => vec![&params.xi],
        _ => vec![],
    };
    for x in twists {
        let (f, g1) = e8_factor(x, n)?;
        a = &a - &g1;
        body = body.mul(&f)?;
    }
    let pre = e2_prefactor(&a, n)?;
    Ok(pre.mul(&body)?)
}

/// Degree-`d` component of every coefficient.
pub fn component_series(s: &CohomQSeries, d: u32) -> CohomQSeries {
    s.map(s.ctx().to_owned(), |p| p.component(d))
}
