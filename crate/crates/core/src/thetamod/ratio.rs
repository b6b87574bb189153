use super::ThetaKind;
use crate::charring::ahat_root;
use crate::exactmath::taylor;
use crate::exactmath::{QExpSeries, Rat, RatSeries, GRID};

/// Coefficients `c_k(q)`, `k = 1..=3`, of `y^(2k)` in the logarithm of the
/// normalized root function of `kind`:
///
/// * `theta`: `y theta'(0) / theta(y)` (the `q^0` part is `(y/2)/sinh(y/2)`),
/// * `theta1`: `theta1(y) / theta1(0)` (the `q^0` part is `cosh(y/2)`),
/// * `theta2`, `theta3`: `theta_i(y) / theta_i(0)`.
pub fn theta_log_ratio(kind: ThetaKind, n: u32) -> Vec<RatSeries> {
    theta_log_ratio_upto(kind, n, 3)
}

pub fn theta_log_ratio_upto(kind: ThetaKind, n: u32, kmax: u32) -> Vec<RatSeries> {
    let len = 2 * kmax as usize + 1;
    let q0: Vec<Rat> = match kind {
        ThetaKind::Theta => taylor::log(&ahat_root(len)).unwrap(),
        ThetaKind::Theta1 => taylor::log(&taylor::exp_part(&Rat::new(1, 2), 0, len)).unwrap(),
        _ => vec![Rat::zero(); len],
    };
    let lim = n * GRID;
    (1..=kmax)
        .map(|k| {
            let mut s = RatSeries::constant(q0[2 * k as usize].clone(), n);
            let fact = Rat::factorial(2 * k).recip().unwrap();
            for j in 1..=n {
                let base = match kind {
                    ThetaKind::Theta | ThetaKind::Theta1 => j * GRID,
                    _ => j * GRID - GRID / 2,
                };
                for m in 1.. {
                    let key = base * m;
                    if key > lim {
                        break;
                    }
                    let alt = if m % 2 == 0 { -1 } else { 1 };
                    let sign = match kind {
                        ThetaKind::Theta => 1,
                        ThetaKind::Theta1 | ThetaKind::Theta3 => alt,
                        ThetaKind::Theta2 => -1,
                    };
                    let c = Rat::from_int(2 * sign) * Rat::from_int(m as i64).pow(2 * k as i32 - 1) * &fact;
                    s.add_term(key, c);
                }
            }
            s
        })
        .collect()
}

/// Log-coefficients of the per-root factor of `L-hat ch(Phi)`, divided by
/// its constant 2: the sum of all four theta ratios.
pub fn lhat_log_ratio(n: u32) -> Vec<RatSeries> {
    let mut acc: Vec<RatSeries> = vec![RatSeries::zero((), n); 3];
    for kind in ThetaKind::ALL {
        for (a, b) in acc.iter_mut().zip(theta_log_ratio(kind, n)) {
            *a = a.add(&b).unwrap();
        }
    }
    acc
}

/// `theta_i(0, tau)` as a series on the `1/24` grid (zero for `theta`).
pub fn theta_zero(kind: ThetaKind, n: u32) -> RatSeries {
    let lim = n * GRID;
    let one = || RatSeries::one((), n);
    let mut acc = match kind {
        ThetaKind::Theta => return RatSeries::zero((), n),
        ThetaKind::Theta1 => RatSeries::monomial(GRID / 8, Rat::from_int(2), n),
        _ => one(),
    };
    for j in 1..=n {
        let f = QExpSeries::from_terms((), n, [(0, Rat::one()), (j * GRID, -Rat::one())]);
        acc = acc.mul(&f).unwrap();
        let (key, sign) = match kind {
            ThetaKind::Theta1 => (j * GRID, 1),
            ThetaKind::Theta2 => (j * GRID - GRID / 2, -1),
            _ => (j * GRID - GRID / 2, 1),
        };
        if key > lim {
            continue;
        }
        let f = QExpSeries::from_terms((), n, [(0, Rat::one()), (key, Rat::from_int(sign))]);
        acc = acc.mul(&f).unwrap().mul(&f).unwrap();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q0_parts() {
        let t = theta_log_ratio(ThetaKind::Theta, 2);
        assert_eq!(t[0].coeff_q(0), Rat::new(-1, 24));
        assert_eq!(t[0].coeff_q(1), Rat::one());
        let t1 = theta_log_ratio(ThetaKind::Theta1, 2);
        assert_eq!(t1[0].coeff_q(0), Rat::new(1, 8));
        assert_eq!(t1[0].coeff_q(1), Rat::one());
        let t2 = theta_log_ratio(ThetaKind::Theta2, 1);
        assert_eq!(t2[0].coeff_or_zero(12), -Rat::one());
    }

    #[test]
    fn theta_zero_eighth_powers_sum_to_e4() {
        let n = 5;
        let mut sum = RatSeries::zero((), n);
        for kind in [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3] {
            sum = sum.add(&theta_zero(kind, n).pow(8)).unwrap();
        }
        let half = sum.scale(&Rat::new(1, 2));
        assert_eq!(half, crate::thetamod::eisenstein(4, n).unwrap());
    }
}
