use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gens::{Gen, Monomial};
use crate::exactmath::{QAlgebra, Rat, Ring};

pub const DEFAULT_CAP: u32 = 12;

/// Polynomial in the graded generators, truncated above a cohomological
/// degree cap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedPoly {
    cap: u32,
    terms: BTreeMap<Monomial, Rat>,
}

impl GradedPoly {
    pub fn zero(cap: u32) -> Self {
        GradedPoly { cap, terms: BTreeMap::new() }
    }

    pub fn one(cap: u32) -> Self {
        Self::constant(Rat::one(), cap)
    }

    pub fn constant(r: Rat, cap: u32) -> Self {
        Self::monomial(Monomial::one(), r, cap)
    }

    pub fn int(n: i64, cap: u32) -> Self {
        Self::constant(Rat::from_int(n), cap)
    }

    pub fn gen(g: Gen, cap: u32) -> Self {
        Self::monomial(Monomial::gen(g), Rat::one(), cap)
    }

    pub fn monomial(m: Monomial, c: Rat, cap: u32) -> Self {
        let mut p = Self::zero(cap);
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() || m.degree() > self.cap {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Same polynomial under a different cap, truncating if it shrinks.
    pub fn with_cap(&self, cap: u32) -> Self {
        GradedPoly {
            cap,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= cap)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one())
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> Self {
        GradedPoly {
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// True when every term has degree `d` (the zero polynomial qualifies).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn contains_gen(&self, g: Gen) -> bool {
        self.terms.keys().any(|m| m.exp(g) > 0)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero(self.cap);
        }
        GradedPoly {
            cap: self.cap,
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&Rat::from_int(n))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.cap);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient by `g^k`, `None` if some term is not divisible.
    pub fn div_gen(&self, g: Gen, k: u8) -> Option<Self> {
        let mut out = Self::zero(self.cap);
        for (m, c) in &self.terms {
            out.terms.insert(m.div_gen(g, k)?, c.clone());
        }
        Some(out)
    }

    /// Ring homomorphism sending each generator to `f(g)` (or to itself
    /// when `f` returns `None`); the result lives under `cap`.
    pub fn substitute<F: Fn(Gen) -> Option<GradedPoly>>(&self, f: F, cap: u32) -> Self {
        let images: Vec<GradedPoly> = Gen::ALL
            .iter()
            .map(|g| f(*g).map(|p| p.with_cap(cap)).unwrap_or_else(|| GradedPoly::gen(*g, cap)))
            .collect();
        let mut powers: Vec<Vec<GradedPoly>> = images.iter().map(|p| vec![GradedPoly::one(cap), p.clone()]).collect();
        let mut out = Self::zero(cap);
        for (m, c) in &self.terms {
            let mut t = GradedPoly::constant(c.clone(), cap);
            for (g, e) in m.gens() {
                let pw = &mut powers[g.index()];
                while pw.len() <= e as usize {
                    let next = &pw[pw.len() - 1] * &images[g.index()];
                    pw.push(next);
                }
                t = &t * &pw[e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Series `sum_k coeffs[k] * self^k` for nilpotent `self` (constant term
    /// zero), truncated by the cap.
    pub fn compose_series(&self, coeffs: &[Rat]) -> Option<Self> {
        if !self.constant_term().is_zero() {
            return None;
        }
        let mut out = Self::zero(self.cap);
        let mut pw = Self::one(self.cap);
        for c in coeffs {
            if pw.is_zero() {
                break;
            }
            out = &out + &pw.scale(c);
            pw = &pw * self;
        }
        Some(out)
    }

    fn nilpotency_bound(&self) -> usize {
        self.cap as usize / 2 + 1
    }

    pub fn exp(&self) -> Option<Self> {
        let coeffs: Vec<Rat> = (0..=self.nilpotency_bound() as u32)
            .map(|k| Rat::factorial(k).recip().unwrap())
            .collect();
        self.compose_series(&coeffs)
    }

    /// `log(self)` when the constant term is one.
    pub fn log(&self) -> Option<Self> {
        if !self.constant_term().is_one() {
            return None;
        }
        let u = self - &Self::one(self.cap);
        let mut coeffs = vec![Rat::zero()];
        for k in 1..=self.nilpotency_bound() as i64 {
            let s = if k % 2 == 1 { 1 } else { -1 };
            coeffs.push(Rat::new(s, k));
        }
        u.compose_series(&coeffs)
    }

    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.constant_term().recip()?;
        let u = &self.scale(&c0) - &Self::one(self.cap);
        let coeffs: Vec<Rat> = (0..=self.nilpotency_bound())
            .map(|k| if k % 2 == 0 { Rat::one() } else { -Rat::one() })
            .collect();
        Some(u.compose_series(&coeffs)?.scale(&c0))
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, o: &GradedPoly) -> GradedPoly {
        let cap = self.cap.min(o.cap);
        let mut out = if cap == self.cap { self.clone() } else { self.with_cap(cap) };
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, o: &GradedPoly) -> GradedPoly {
        let cap = self.cap.min(o.cap);
        let mut out = if cap == self.cap { self.clone() } else { self.with_cap(cap) };
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, o: &GradedPoly) -> GradedPoly {
        let cap = self.cap.min(o.cap);
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        let rhs: Vec<(Monomial, u32, &Rat)> = o.terms.iter().map(|(m, c)| (*m, m.degree(), c)).collect();
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > cap {
                continue;
            }
            for (mb, db, cb) in &rhs {
                if da + db > cap {
                    continue;
                }
                let m = ma.mul(mb);
                let p = ca * *cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += p,
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        GradedPoly { cap, terms: acc }
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            cap: self.cap,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for GradedPoly {
            type Output = GradedPoly;
            fn $m(self, o: GradedPoly) -> GradedPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GradedPoly> for GradedPoly {
            type Output = GradedPoly;
            fn $m(self, o: &'a GradedPoly) -> GradedPoly {
                (&self).$m(o)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        -&self
    }
}

impl Ring for GradedPoly {
    type Ctx = u32;

    fn ctx(&self) -> u32 {
        self.cap
    }
    fn zero_in(cap: &u32) -> Self {
        GradedPoly::zero(*cap)
    }
    fn one_in(cap: &u32) -> Self {
        GradedPoly::one(*cap)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inverse()
    }
    fn add_assign_ref(&mut self, o: &Self) {
        if o.cap < self.cap {
            *self = &*self + o;
            return;
        }
        for (m, c) in &o.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl QAlgebra for GradedPoly {
    fn scale(&self, r: &Rat) -> Self {
        GradedPoly::scale(self, r)
    }
    fn exp_nilpotent(&self) -> Option<Self> {
        self.exp()
    }
    fn log_unipotent(&self) -> Option<Self> {
        self.log()
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Generator shorthand under the default cap.
pub fn g(gen: Gen) -> GradedPoly {
    GradedPoly::gen(gen, DEFAULT_CAP)
}

/// Rational constant under the default cap.
pub fn k(n: i64, d: i64) -> GradedPoly {
    GradedPoly::constant(Rat::new(n, d), DEFAULT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncates_above_cap() {
        let p = g(Gen::P1);
        assert!(p.pow(3).component(12).len() == 1);
        assert!(p.pow(4).is_zero());
        let x = GradedPoly::gen(Gen::X, 10);
        assert!((&x * &x * x.clone()).is_zero());
    }

    #[test]
    fn render() {
        let p = &(&k(1, 1) - &g(Gen::P1).scale(&Rat::new(1, 24))) + &g(Gen::P2).scale(&Rat::new(-1, 1440));
        let p = &p + &g(Gen::P1).pow(2).scale(&Rat::new(7, 5760));
        assert_eq!(p.to_string(), "1 - 1/24*p1 + 7/5760*p1^2 - 1/1440*p2");
    }

    #[test]
    fn exp_log_inverse() {
        let a = &g(Gen::C) + &g(Gen::P1);
        let e = a.exp().unwrap();
        assert_eq!(e.log().unwrap(), a);
        let u = &k(3, 1) + &a;
        assert_eq!(&u * &u.inverse().unwrap(), k(1, 1));
        assert!(k(2, 1).exp().is_none());
    }

    #[test]
    fn substitution_and_division() {
        let p = &g(Gen::P1) * &g(Gen::C);
        let s = p.substitute(|gen| (gen == Gen::P1).then(|| &g(Gen::TP1) + &g(Gen::E).pow(2)), 10);
        assert_eq!(s.cap(), 10);
        assert_eq!(s.div_gen(Gen::C, 1).unwrap().to_string(), "e^2 + tP1");
        assert!(s.div_gen(Gen::E, 1).is_none());
    }
}
