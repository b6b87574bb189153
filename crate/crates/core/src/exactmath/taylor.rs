//! Dense univariate Taylor polynomials over `Rat`, truncated at a fixed
//! length. Used for root functions of multiplicative classes.

use super::Rat;

/// Coefficients `c[0] + c[1] y + ...`; all operations keep the length of
/// the left operand.
pub type Taylor = Vec<Rat>;

pub fn mul(a: &[Rat], b: &[Rat]) -> Taylor {
    let n = a.len();
    let mut out = vec![Rat::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

pub fn inv(a: &[Rat]) -> Option<Taylor> {
    let n = a.len();
    let c0 = a.first()?.recip()?;
    let mut out = vec![Rat::zero(); n];
    out[0] = c0.clone();
    for k in 1..n {
        let mut s = Rat::zero();
        for j in 1..=k {
            if j < a.len() {
                s += &a[j] * &out[k - j];
            }
        }
        out[k] = -(s * &c0);
    }
    Some(out)
}

/// `log(a)` for `a[0] = 1`.
pub fn log(a: &[Rat]) -> Option<Taylor> {
    let n = a.len();
    if n == 0 || !a[0].is_one() {
        return None;
    }
    let mut out = vec![Rat::zero(); n];
    for k in 1..n {
        let mut s = Rat::zero();
        for j in 1..k {
            s += Rat::from_int(j as i64) * &out[j] * &a[k - j];
        }
        out[k] = &a[k] - &(s * Rat::new(1, k as i64));
    }
    Some(out)
}

/// `exp(a)` for `a[0] = 0`.
pub fn exp(a: &[Rat]) -> Option<Taylor> {
    let n = a.len();
    if n == 0 || !a[0].is_zero() {
        return None;
    }
    let mut out = vec![Rat::zero(); n];
    out[0] = Rat::one();
    for k in 1..n {
        let mut s = Rat::zero();
        for j in 1..=k {
            s += Rat::from_int(j as i64) * &a[j] * &out[k - j];
        }
        out[k] = s * Rat::new(1, k as i64);
    }
    Some(out)
}

/// `sum_n y^n s^n / n!` restricted by `parity`: 0 keeps even powers, 1 odd.
pub fn exp_part(s: &Rat, parity: usize, n: usize) -> Taylor {
    (0..n)
        .map(|k| {
            if k % 2 == parity {
                s.pow(k as i32) * Rat::factorial(k as u32).recip().unwrap()
            } else {
                Rat::zero()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_log_roundtrip() {
        let a: Taylor = vec![Rat::zero(), Rat::one(), Rat::new(1, 3), Rat::new(-2, 5)];
        assert_eq!(log(&exp(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn cosh_sinh() {
        let c = exp_part(&Rat::one(), 0, 5);
        assert_eq!(c[4], Rat::new(1, 24));
        let sh = exp_part(&Rat::new(1, 2), 1, 4);
        assert_eq!(sh[3], Rat::new(1, 48));
        let p = mul(&c, &inv(&c).unwrap());
        assert_eq!(p[0], Rat::one());
        assert!(p[1..].iter().all(|r| r.is_zero()));
    }
}
