use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::exactmath::Rat;

/// Polynomial with rational coefficients in `nvars` variables, used for
/// cubic polynomials on a lattice and for the symbolic checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rat::one());
        p
    }

    /// `sum_i c_i x_i`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        coeffs.iter().enumerate().fold(Self::zero(n), |acc, (i, c)| &acc + &Self::var(n, i).scale(&Rat::from_int(*c)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: Vec<u8>, c: Rat) {
        assert_eq!(e.len(), self.nvars, "exponent length");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&k| k as u32).sum()).max()
    }

    /// Homogeneous part of degree `d`.
    pub fn component(&self, d: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().map(|&k| k as u32).sum::<u32>() == d {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * r);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.nvars, Rat::one()), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &[i64]) -> Rat {
        assert_eq!(x.len(), self.nvars, "point dimension");
        self.terms
            .iter()
            .map(|(e, c)| {
                let m: i128 = e.iter().zip(x).map(|(&k, &v)| (v as i128).pow(k as u32)).product();
                c * &Rat::from_bigint(m.into())
            })
            .sum()
    }

    /// Substitutes `images[i]` for variable `i`; the images share a ring.
    pub fn compose(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let m = images.first().map_or(0, |p| p.nvars);
        let mut out = MPoly::zero(m);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(m, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = &t * &img.pow(k as u32);
                }
            }
            out = &out + &t;
        }
        out
    }
}

/// `D * p` with integer coefficients, for fast evaluation at lattice points.
#[derive(Clone, Debug)]
pub(crate) struct ScaledPoly {
    pub den: i128,
    terms: Vec<(Vec<u8>, i128)>,
}

impl ScaledPoly {
    /// `None` if the common denominator or a scaled coefficient leaves `i128`.
    pub fn new(p: &MPoly) -> Option<Self> {
        let mut den: i128 = 1;
        for c in p.terms.values() {
            den = den.lcm(&c.denom().to_i128()?);
        }
        let terms = p
            .terms
            .iter()
            .map(|(e, c)| Some((e.clone(), (c * &Rat::from_bigint(den.into())).to_integer()?.to_i128()?)))
            .collect::<Option<Vec<_>>>()?;
        Some(ScaledPoly { den, terms })
    }

    /// `D * p(x)`; `None` on overflow.
    pub fn eval(&self, x: &[i64]) -> Option<i128> {
        let mut s: i128 = 0;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (&k, &v) in e.iter().zip(x) {
                for _ in 0..k {
                    t = t.checked_mul(v as i128)?;
                }
            }
            s = s.checked_add(t)?;
        }
        Some(s)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        self + &(-o)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        assert_eq!(self.nvars, o.nvars, "ring mismatch");
        let mut out = MPoly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let e: Vec<u8> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let (neg, abs) = (c.is_negative(), c.abs());
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
                .collect();
            let body = match (vars.is_empty(), abs.is_one()) {
                (true, _) => abs.to_string(),
                (false, true) => vars.join("*"),
                (false, false) => format!("{abs}*{}", vars.join("*")),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}
