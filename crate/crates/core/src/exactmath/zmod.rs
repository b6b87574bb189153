use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Residue class modulo a positive integer. Operands of a binary operation
/// must share a modulus; mixing moduli is a programming error and panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZMod {
    modulus: u64,
    value: u64,
}

impl ZMod {
    pub fn new(value: i128, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        let v = value.rem_euclid(modulus as i128) as u64;
        ZMod { modulus, value: v }
    }

    pub fn zero(modulus: u64) -> Self {
        ZMod::new(0, modulus)
    }

    pub fn one(modulus: u64) -> Self {
        ZMod::new(1, modulus)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = ZMod::one(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse when `gcd(value, modulus) = 1`.
    pub fn inverse(&self) -> Option<Self> {
        let (mut r0, mut r1) = (self.modulus as i128, self.value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return None;
        }
        Some(ZMod::new(t0, self.modulus))
    }

    fn check(&self, o: &ZMod) {
        assert_eq!(self.modulus, o.modulus, "modulus mismatch");
    }
}

impl fmt::Display for ZMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for ZMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl Add for ZMod {
    type Output = ZMod;
    fn add(self, o: ZMod) -> ZMod {
        self.check(&o);
        ZMod::new(self.value as i128 + o.value as i128, self.modulus)
    }
}

impl Sub for ZMod {
    type Output = ZMod;
    fn sub(self, o: ZMod) -> ZMod {
        self.check(&o);
        ZMod::new(self.value as i128 - o.value as i128, self.modulus)
    }
}

impl Mul for ZMod {
    type Output = ZMod;
    fn mul(self, o: ZMod) -> ZMod {
        self.check(&o);
        ZMod::new(self.value as i128 * o.value as i128, self.modulus)
    }
}

impl Neg for ZMod {
    type Output = ZMod;
    fn neg(self) -> ZMod {
        ZMod::new(-(self.value as i128), self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat_mod3() {
        for v in 0..3 {
            let x = ZMod::new(v, 3);
            assert_eq!(x.pow(3), x);
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(ZMod::new(5, 24).inverse(), Some(ZMod::new(5, 24)));
        assert_eq!(ZMod::new(4, 24).inverse(), None);
        assert_eq!(ZMod::new(-1, 24).value(), 23);
    }
}
