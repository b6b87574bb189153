use rayon::prelude::*;

use serde::{Deserialize, Serialize};

use super::eisenstein::{eisenstein, phi};
use super::ratio::{theta_log_ratio, theta_zero};
use super::{ThetaError, ThetaKind};
use crate::charring::{CohomQSeries, GradedPoly};
use crate::exactmath::{Rat, RatSeries, GRID};

fn check_g(g: &[GradedPoly; 3]) -> Result<u32, ThetaError> {
    for (i, p) in g.iter().enumerate() {
        let d = 4 * (i as u32 + 1);
        if !p.is_homogeneous(d) {
            return Err(ThetaError::DegreeError(format!("g{} must be homogeneous of degree {d}, got {p}", i + 1)));
        }
    }
    Ok(g.iter().map(|p| p.cap()).min().unwrap())
}

fn lift(s: &RatSeries, p: &GradedPoly) -> CohomQSeries {
    s.map(p.cap(), |r| p.scale(r))
}

/// `1/2 sum_{i=1..3} theta_i(0)^8 exp(sum_k c_{i,k}(q) g_k)`, which is
/// `phi^8 ch` of the basic representation once the odd product (of degree at
/// least 16 in the roots) is dropped.
pub fn e8_theta_combination(g: &[GradedPoly; 3], n: u32) -> Result<CohomQSeries, ThetaError> {
    let cap = check_g(g)?;
    let mut total = CohomQSeries::zero(cap, n);
    for kind in [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3] {
        let logs = theta_log_ratio(kind, n);
        let mut expo = CohomQSeries::zero(cap, n);
        for (c, gk) in logs.iter().zip(g.iter()) {
            if !gk.is_zero() {
                expo = expo.add(&lift(c, gk))?;
            }
        }
        let z8 = lift(&theta_zero(kind, n).pow(8), &GradedPoly::one(cap));
        total = total.add(&z8.mul(&expo.exp()?)?)?;
    }
    Ok(total.scale(&Rat::new(1, 2)))
}

/// Character of the basic representation of affine `E8` evaluated on a
/// bundle whose root power sums are `g = (g1, g2, g3)`.
pub fn e8_character(g: &[GradedPoly; 3], n: u32) -> Result<CohomQSeries, ThetaError> {
    let cap = check_g(g)?;
    let comb = e8_theta_combination(g, n)?;
    let inv = lift(&phi(n).pow(8).inv()?, &GradedPoly::one(cap));
    let ch = comb.mul(&inv)?;
    if let Some((k, c)) = ch.terms().find(|(k, _)| k % GRID != 0) {
        return Err(ThetaError::InternalCancellationError(format!(
            "coefficient {c} at q^{}",
            crate::exactmath::exponent(k)
        )));
    }
    Ok(ch)
}

/// `1/2 (theta1^8 + theta2^8 + theta3^8)(0)`.
pub fn e8_half_theta_sum(n: u32) -> RatSeries {
    let mut s = RatSeries::zero((), n);
    for kind in [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3] {
        s = s.add(&theta_zero(kind, n).pow(8)).expect("same ring");
    }
    s.scale(&Rat::new(1, 2))
}

/// Side-by-side `q^0..q^order` coefficients of the three descriptions of the
/// `E8` theta function and of the basic-representation character.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct E8Table {
    pub order: u32,
    pub lattice: Vec<Rat>,
    pub half_theta: Vec<Rat>,
    pub e4: Vec<Rat>,
    /// Character at the trivial bundle.
    pub character: Vec<Rat>,
    /// Lattice = theta sum = `E4` = `phi^8` times the character.
    pub equal: bool,
}

pub fn e8_table(order: u32) -> Result<E8Table, ThetaError> {
    let lat = e8_lattice_theta(order)?;
    let half = e8_half_theta_sum(order);
    let e4 = eisenstein(4, order)?;
    let zero = [GradedPoly::zero(12), GradedPoly::zero(12), GradedPoly::zero(12)];
    let ch = e8_character(&zero, order)?.map((), |p| p.constant_term());
    let back = ch.mul(&phi(order).pow(8))?;
    let equal = lat == half && lat == e4 && lat == back;
    let coeffs = |s: &RatSeries| (0..=order).map(|k| s.coeff_q(k)).collect::<Vec<_>>();
    Ok(E8Table {
        order,
        lattice: coeffs(&lat),
        half_theta: coeffs(&half),
        e4: coeffs(&e4),
        character: coeffs(&ch),
        equal,
    })
}

/// Theta series of the `E8` lattice by enumeration, counting vectors of
/// norm `2n` for `n <= order`.
///
/// Points are stored in doubled coordinates `y = 2v`: all entries share a
/// parity and `sum y = 0 mod 4`; the `q` exponent is `|y|^2 / 8`.
pub fn e8_lattice_theta(order: u32) -> Result<RatSeries, ThetaError> {
    if order > 12 {
        return Err(ThetaError::ArgumentError(format!("enumeration bound is order 12, got {order}")));
    }
    let max_norm = 8 * order as i64;
    let r = (max_norm as f64).sqrt() as i64;
    let mut counts = vec![0u64; order as usize + 1];
    for parity in 0..2i64 {
        let firsts: Vec<i64> = (-r..=r).filter(|y| y.rem_euclid(2) == parity).collect();
        let partial: Vec<Vec<u64>> = firsts
            .par_iter()
            .map(|&y0| {
                let mut c = vec![0u64; order as usize + 1];
                enumerate(1, y0 * y0, y0, parity, r, max_norm, &mut c);
                c
            })
            .collect();
        for p in partial {
            for (a, b) in counts.iter_mut().zip(p) {
                *a += b;
            }
        }
    }
    Ok(RatSeries::from_terms(
        (),
        order,
        counts.iter().enumerate().map(|(n, c)| (n as u32 * GRID, Rat::from_int(*c as i64))),
    ))
}

fn enumerate(depth: usize, norm: i64, sum: i64, parity: i64, r: i64, max_norm: i64, counts: &mut [u64]) {
    if depth == 8 {
        if sum.rem_euclid(4) == 0 {
            debug_assert_eq!(norm % 8, 0);
            counts[(norm / 8) as usize] += 1;
        }
        return;
    }
    let mut y = -r;
    if y.rem_euclid(2) != parity {
        y += 1;
    }
    while y <= r {
        let n = norm + y * y;
        if n <= max_norm {
            enumerate(depth + 1, n, sum + y, parity, r, max_norm, counts);
        }
        y += 2;
    }
}
