use num_bigint::BigInt;

use super::ThetaError;
use crate::exactmath::{QExpSeries, Rat, RatSeries, GRID};

/// `sigma_r(n)`.
pub fn divisor_sum(n: u32, r: u32) -> BigInt {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| BigInt::from(d).pow(r)).sum()
}

/// `E_k` for `k` in `{2, 4, 6}`, normalized with constant term 1.
pub fn eisenstein(k: u32, n: u32) -> Result<RatSeries, ThetaError> {
    let c = match k {
        2 => -24,
        4 => 240,
        6 => -504,
        _ => return Err(ThetaError::ArgumentError(format!("no Eisenstein series of weight {k} here"))),
    };
    let mut s = RatSeries::one((), n);
    for m in 1..=n {
        s.add_term(m * GRID, Rat::from_bigint(divisor_sum(m, k - 1) * c));
    }
    Ok(s)
}

/// `prod_{n >= 1} (1 - q^n)` to order `n`.
pub fn phi(n: u32) -> RatSeries {
    let mut acc = RatSeries::one((), n);
    for j in 1..=n {
        let f = QExpSeries::from_terms((), n, [(0, Rat::one()), (j * GRID, -Rat::one())]);
        acc = acc.mul(&f).expect("rational series");
    }
    acc
}
