use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ThetaError, ThetaKind};

/// What a transformation check is run on.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    Theta(ThetaKind),
    E2,
}

impl TransformKind {
    pub const ALL: [TransformKind; 5] = [
        TransformKind::Theta(ThetaKind::Theta),
        TransformKind::Theta(ThetaKind::Theta1),
        TransformKind::Theta(ThetaKind::Theta2),
        TransformKind::Theta(ThetaKind::Theta3),
        TransformKind::E2,
    ];
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformKind::Theta(k) => write!(f, "{k}"),
            TransformKind::E2 => f.write_str("e2"),
        }
    }
}

impl FromStr for TransformKind {
    type Err = ThetaError;
    fn from_str(s: &str) -> Result<Self, ThetaError> {
        if s.eq_ignore_ascii_case("e2") {
            Ok(TransformKind::E2)
        } else {
            s.parse().map(TransformKind::Theta)
        }
    }
}

/// Residuals of the `tau -> tau + 1` and `tau -> -1/tau` laws.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericReport {
    pub kind: String,
    pub residual_t: f64,
    pub residual_s: f64,
    pub tail_bound: f64,
    pub tol: f64,
    pub pass: bool,
}

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Truncated product formula together with a bound on the neglected tail.
pub fn theta_value(kind: ThetaKind, v: Complex64, tau: Complex64, terms: u32) -> (Complex64, f64) {
    let q = (2.0 * PI * I * tau).exp();
    let qh = (PI * I * tau).exp();
    let z = (2.0 * PI * I * v).exp();
    let zi = 1.0 / z;
    let mut prod = match kind {
        ThetaKind::Theta => 2.0 * (PI * I * tau / 4.0).exp() * (PI * v).sin(),
        ThetaKind::Theta1 => 2.0 * (PI * I * tau / 4.0).exp() * (PI * v).cos(),
        _ => Complex64::new(1.0, 0.0),
    };
    let sign = match kind {
        ThetaKind::Theta | ThetaKind::Theta2 => -1.0,
        _ => 1.0,
    };
    let half = matches!(kind, ThetaKind::Theta2 | ThetaKind::Theta3);
    let mut qj = Complex64::new(1.0, 0.0);
    for _ in 1..=terms {
        let prev = qj;
        qj *= q;
        let t = if half { prev * qh } else { qj };
        prod *= (1.0 - qj) * (1.0 + sign * z * t) * (1.0 + sign * zi * t);
    }
    let aq = q.norm();
    let w = z.norm().max(zi.norm());
    let start = if half { aq.powf(terms as f64 + 0.5) } else { aq.powf(terms as f64 + 1.0) };
    let s = if aq < 1.0 { (start * (2.0 * w + 1.0)) / (1.0 - aq) } else { f64::INFINITY };
    let tail = prod.norm() * (s.exp() - 1.0) * (1.0 + s);
    (prod, tail)
}

/// `E2(tau) = 1 - 24 sum sigma_1(n) q^n` with a bound on the tail.
pub fn e2_value(tau: Complex64, terms: u32) -> (Complex64, f64) {
    let q = (2.0 * PI * I * tau).exp();
    let mut s = Complex64::new(0.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..=terms {
        qn *= q;
        let sigma: u64 = (1..=n as u64).filter(|d| (n as u64).is_multiple_of(*d)).sum();
        s += sigma as f64 * qn;
    }
    let aq = q.norm();
    let mut tail = 0.0;
    if aq >= 1.0 {
        tail = f64::INFINITY;
    } else {
        let mut n = terms as f64 + 1.0;
        let mut t = aq.powf(n);
        while t * n * n > 1e-300 && n < 1e6 {
            tail += n * n * t;
            t *= aq;
            n += 1.0;
        }
    }
    (1.0 - 24.0 * s, 24.0 * tail)
}

/// Checks both modular transformation laws at `(v, tau)` with truncated
/// products/sums of `terms` factors.
pub fn numeric_transform_check(
    kind: TransformKind,
    v: Complex64,
    tau: Complex64,
    terms: u32,
    tol: f64,
) -> Result<NumericReport, ThetaError> {
    if tau.im <= 0.0 {
        return Err(ThetaError::ArgumentError(format!("tau must lie in the upper half plane, got {tau}")));
    }
    let s_tau = -1.0 / tau;
    let root = (tau / I).sqrt();
    let (rt, rs, tail) = match kind {
        TransformKind::E2 => {
            let (a, ta) = e2_value(tau + 1.0, terms);
            let (b, tb) = e2_value(tau, terms);
            let (c, tc) = e2_value(s_tau, terms);
            let rhs = tau * tau * b - 6.0 * I * tau / PI;
            let tail = ta + tb + tc + tau.norm_sqr() * tb;
            ((a - b).norm(), (c - rhs).norm(), tail)
        }
        TransformKind::Theta(k) => {
            let (lt, t1) = theta_value(k, v, tau + 1.0, terms);
            let (lt_rhs, t2) = match k {
                ThetaKind::Theta2 => theta_value(ThetaKind::Theta3, v, tau, terms),
                ThetaKind::Theta3 => theta_value(ThetaKind::Theta2, v, tau, terms),
                _ => {
                    let (x, t) = theta_value(k, v, tau, terms);
                    let ph = (PI * I / 4.0).exp();
                    (ph * x, t)
                }
            };
            let (ls, t3) = theta_value(k, v, s_tau, terms);
            let partner = match k {
                ThetaKind::Theta => ThetaKind::Theta,
                ThetaKind::Theta1 => ThetaKind::Theta2,
                ThetaKind::Theta2 => ThetaKind::Theta1,
                ThetaKind::Theta3 => ThetaKind::Theta3,
            };
            let (p, t4) = theta_value(partner, tau * v, tau, terms);
            let mut factor = root * (PI * I * tau * v * v).exp();
            if k == ThetaKind::Theta {
                factor /= I;
            }
            let rs_rhs = factor * p;
            ((lt - lt_rhs).norm(), (ls - rs_rhs).norm(), t1 + t2 + t3 + factor.norm() * t4)
        }
    };
    if !tail.is_finite() || tail >= tol / 10.0 {
        return Err(ThetaError::PrecisionError(format!(
            "tail bound {tail:e} with {terms} terms is not below tol/10 = {:e}",
            tol / 10.0
        )));
    }
    Ok(NumericReport {
        kind: kind.to_string(),
        residual_t: rt,
        residual_s: rs,
        tail_bound: tail,
        tol,
        pass: rt < tol && rs < tol,
    })
}
