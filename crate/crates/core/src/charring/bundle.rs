use std::ops::{Add, Mul, Sub};

use super::gens::Gen;
use super::poly::{GradedPoly, DEFAULT_CAP};
use super::ClassError;
use crate::exactmath::taylor::{self, Taylor};
use crate::exactmath::Rat;

/// Virtual bundle represented by its total Chern character; the rank is
/// the degree-0 part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VirtualBundle {
    ch: GradedPoly,
}

impl VirtualBundle {
    pub fn from_ch(ch: GradedPoly) -> Self {
        VirtualBundle { ch }
    }

    pub fn trivial(rank: i64, cap: u32) -> Self {
        VirtualBundle { ch: GradedPoly::int(rank, cap) }
    }

    pub fn ch(&self) -> &GradedPoly {
        &self.ch
    }

    pub fn into_ch(self) -> GradedPoly {
        self.ch
    }

    pub fn cap(&self) -> u32 {
        self.ch.cap()
    }

    pub fn rank(&self) -> Rat {
        self.ch.constant_term()
    }

    /// Degree-`d` Chern character component.
    pub fn component(&self, d: u32) -> GradedPoly {
        self.ch.component(d)
    }

    /// `E - rank(E)`.
    pub fn reduced(&self) -> Self {
        VirtualBundle { ch: &self.ch - &GradedPoly::constant(self.rank(), self.cap()) }
    }

    pub fn tensor(&self, o: &Self) -> Self {
        VirtualBundle { ch: &self.ch * &o.ch }
    }

    pub fn scale(&self, n: i64) -> Self {
        VirtualBundle { ch: self.ch.scale_int(n) }
    }

    pub fn plus_trivial(&self, n: i64) -> Self {
        VirtualBundle { ch: &self.ch + &GradedPoly::int(n, self.cap()) }
    }
}

impl Add for &VirtualBundle {
    type Output = VirtualBundle;
    fn add(self, o: &VirtualBundle) -> VirtualBundle {
        VirtualBundle { ch: &self.ch + &o.ch }
    }
}

impl Sub for &VirtualBundle {
    type Output = VirtualBundle;
    fn sub(self, o: &VirtualBundle) -> VirtualBundle {
        VirtualBundle { ch: &self.ch - &o.ch }
    }
}

impl Mul for &VirtualBundle {
    type Output = VirtualBundle;
    fn mul(self, o: &VirtualBundle) -> VirtualBundle {
        self.tensor(o)
    }
}

fn expect_degree(p: &GradedPoly, d: u32, what: &str) -> Result<(), ClassError> {
    if p.is_homogeneous(d) {
        Ok(())
    } else {
        Err(ClassError::DegreeError(format!("{what} must be homogeneous of degree {d}, got {p}")))
    }
}

/// Newton identities: power sums of the squared Chern roots from the
/// elementary symmetric functions `p1, p2, p3`.
pub fn power_sums_from_pontryagin(
    p1: &GradedPoly,
    p2: &GradedPoly,
    p3: &GradedPoly,
) -> Result<(GradedPoly, GradedPoly, GradedPoly), ClassError> {
    expect_degree(p1, 4, "p1")?;
    expect_degree(p2, 8, "p2")?;
    expect_degree(p3, 12, "p3")?;
    let pi1 = p1.clone();
    let pi2 = &(p1 * p1) - &p2.scale_int(2);
    let pi3 = &(&(&(p1 * p1) * p1) - &(p1 * p2).scale_int(3)) + &p3.scale_int(3);
    Ok((pi1, pi2, pi3))
}

/// Power sums in the free Pontryagin generators.
pub fn pontryagin_power_sums(cap: u32) -> [GradedPoly; 3] {
    let (a, b, c) = power_sums_from_pontryagin(
        &GradedPoly::gen(Gen::P1, cap),
        &GradedPoly::gen(Gen::P2, cap),
        &GradedPoly::gen(Gen::P3, cap),
    )
    .expect("generator degrees");
    [a, b, c]
}

/// Even root functions of the multiplicative classes.
#[derive(Clone, Debug, PartialEq)]
pub enum RootFunction {
    /// `(y/2) / sinh(y/2)`
    Ahat,
    /// `y / tanh(y/2)`
    Lhat,
    /// Any Taylor expansion `f(y)`, which must be even.
    Custom(Taylor),
}

impl RootFunction {
    pub fn taylor(&self, len: usize) -> Taylor {
        match self {
            RootFunction::Ahat => ahat_root(len),
            RootFunction::Lhat => taylor::mul(&ahat_root(len), &taylor::exp_part(&Rat::new(1, 2), 0, len))
                .into_iter()
                .map(|c| c * Rat::from_int(2))
                .collect(),
            RootFunction::Custom(t) => {
                let mut t = t.clone();
                t.resize(len, Rat::zero());
                t
            }
        }
    }
}

/// Taylor coefficients of `(y/2)/sinh(y/2)`.
pub fn ahat_root(len: usize) -> Taylor {
    let shc: Taylor = (0..len)
        .map(|k| {
            if k % 2 == 0 {
                Rat::new(1, 2).pow(k as i32) * Rat::factorial(k as u32 + 1).recip().unwrap()
            } else {
                Rat::zero()
            }
        })
        .collect();
    taylor::inv(&shc).expect("unit constant term")
}

/// `prod_j f(x_j)` over `nroots` roots whose squares have elementary
/// symmetric functions `p1, p2, p3`.
pub fn multiplicative_class_of(
    f: &RootFunction,
    nroots: u32,
    p1: &GradedPoly,
    p2: &GradedPoly,
    p3: &GradedPoly,
    cap: u32,
) -> Result<GradedPoly, ClassError> {
    let len = cap as usize / 2 + 1;
    let t = f.taylor(len);
    if let Some(i) = t.iter().enumerate().position(|(i, c)| i % 2 == 1 && !c.is_zero()) {
        return Err(ClassError::ParityError(format!("root function has a nonzero y^{i} coefficient")));
    }
    let f0 = t[0].clone();
    let inv0 = f0
        .recip()
        .ok_or_else(|| ClassError::ArgumentError("root function vanishes at 0".into()))?;
    let normed: Taylor = t.iter().map(|c| c * &inv0).collect();
    let lg = taylor::log(&normed).expect("normalized");
    let pis = power_sums_from_pontryagin(p1, p2, p3)?;
    let pis = [pis.0, pis.1, pis.2];
    let mut expo = GradedPoly::zero(cap);
    for k in 1..=(cap as usize / 4).min(3) {
        expo = &expo + &pis[k - 1].with_cap(cap).scale(&lg[2 * k]);
    }
    let body = expo.exp().expect("nilpotent exponent");
    Ok(body.scale(&f0.pow(nroots as i32)))
}

fn check_dim(dim: u32) -> Result<(), ClassError> {
    if dim == 10 || dim == 12 {
        Ok(())
    } else {
        Err(ClassError::DimError(dim))
    }
}

/// Multiplicative class of a `dim`-manifold in the free Pontryagin
/// generators, truncated at degree `dim`.
pub fn multiplicative_class(f: &RootFunction, dim: u32) -> Result<GradedPoly, ClassError> {
    check_dim(dim)?;
    multiplicative_class_of(
        f,
        dim / 2,
        &GradedPoly::gen(Gen::P1, dim),
        &GradedPoly::gen(Gen::P2, dim),
        &GradedPoly::gen(Gen::P3, dim),
        dim,
    )
}

/// `ch` of a complexified real bundle of rank `rank` with Pontryagin
/// classes `p1, p2, p3`: `rank + pi1 + pi2/12 + pi3/360`.
pub fn ch_real_bundle(
    rank: i64,
    p1: &GradedPoly,
    p2: &GradedPoly,
    p3: &GradedPoly,
    cap: u32,
) -> Result<VirtualBundle, ClassError> {
    let (a, b, c) = power_sums_from_pontryagin(p1, p2, p3)?;
    let ch = &(&(&GradedPoly::int(rank, cap) + &a.with_cap(cap)) + &b.with_cap(cap).scale(&Rat::new(1, 12)))
        + &c.with_cap(cap).scale(&Rat::new(1, 360));
    Ok(VirtualBundle::from_ch(ch))
}

/// Complexified tangent bundle of a `dim`-manifold.
pub fn ch_tangent(dim: u32) -> Result<VirtualBundle, ClassError> {
    check_dim(dim)?;
    ch_real_bundle(
        dim as i64,
        &GradedPoly::gen(Gen::P1, dim),
        &GradedPoly::gen(Gen::P2, dim),
        &GradedPoly::gen(Gen::P3, dim),
        dim,
    )
}

/// Adjoint `E8` bundle with `c2 = 60 x`: `248 - 60x + 6x^2 - x^3/3`.
pub fn e8_ch(x: &GradedPoly) -> Result<VirtualBundle, ClassError> {
    expect_degree(x, 4, "x")?;
    let cap = x.cap();
    let x2 = x * x;
    let ch = &(&(&GradedPoly::int(248, cap) - &x.scale_int(60)) + &x2.scale_int(6)) - &(&x2 * x).scale(&Rat::new(1, 3));
    Ok(VirtualBundle::from_ch(ch))
}

/// `xi + conj(xi)` for a complex line bundle with first Chern class `c`.
pub fn line_pair_ch(c: &GradedPoly) -> Result<VirtualBundle, ClassError> {
    expect_degree(c, 2, "c")?;
    let cap = c.cap();
    let coeffs = taylor::exp_part(&Rat::one(), 0, cap as usize / 2 + 1);
    let two_cosh = c.compose_series(&coeffs).expect("nilpotent").scale_int(2);
    Ok(VirtualBundle::from_ch(two_cosh))
}

/// Adams operation: the degree-`2j` part is scaled by `k^j`.
pub fn vb_adams(e: &VirtualBundle, k: i64) -> Result<VirtualBundle, ClassError> {
    if k < 1 {
        return Err(ClassError::ArgumentError(format!("Adams operation needs k >= 1, got {k}")));
    }
    let cap = e.cap();
    let mut ch = GradedPoly::zero(cap);
    for (m, c) in e.ch().terms() {
        let j = m.degree() / 2;
        ch.add_term(*m, c * &Rat::from_int(k).pow(j as i32));
    }
    Ok(VirtualBundle::from_ch(ch))
}

/// `(Lambda^2 E, S^2 E)` from `ch(E)^2` and `ch(psi^2 E)`.
pub fn vb_lambda2_sym2(e: &VirtualBundle) -> (VirtualBundle, VirtualBundle) {
    let sq = e.ch() * e.ch();
    let psi2 = vb_adams(e, 2).expect("k = 2").into_ch();
    let half = Rat::new(1, 2);
    (
        VirtualBundle::from_ch((&sq - &psi2).scale(&half)),
        VirtualBundle::from_ch((&sq + &psi2).scale(&half)),
    )
}

/// Default-cap tangent bundle of the 12-manifold.
pub fn tangent12() -> VirtualBundle {
    ch_tangent(DEFAULT_CAP).expect("dim 12")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::poly::{g, k};

    #[test]
    fn ahat_low_terms() {
        let a = multiplicative_class(&RootFunction::Ahat, 12).unwrap();
        assert_eq!(a.component(4), g(Gen::P1).scale(&Rat::new(-1, 24)));
        let d8 = &g(Gen::P1).pow(2).scale(&Rat::new(7, 5760)) - &g(Gen::P2).scale(&Rat::new(4, 5760));
        assert_eq!(a.component(8), d8);
        let p1 = g(Gen::P1);
        let p2 = g(Gen::P2);
        let d12 = (&(&p1.pow(3).scale_int(-31) + &(&p1 * &p2).scale_int(44)) - &g(Gen::P3).scale_int(16)).scale(&Rat::new(1, 967680));
        assert_eq!(a.component(12), d12);
    }

    #[test]
    fn lhat_constant() {
        let l = multiplicative_class(&RootFunction::Lhat, 12).unwrap();
        assert_eq!(l.constant_term(), Rat::from_int(64));
        let l10 = multiplicative_class(&RootFunction::Lhat, 10).unwrap();
        assert_eq!(l10.constant_term(), Rat::from_int(32));
        assert_eq!(l10.cap(), 10);
    }

    #[test]
    fn parity_and_dim_errors() {
        let odd = RootFunction::Custom(vec![Rat::one(), Rat::one()]);
        assert!(matches!(multiplicative_class(&odd, 12), Err(ClassError::ParityError(_))));
        assert!(matches!(multiplicative_class(&RootFunction::Ahat, 8), Err(ClassError::DimError(8))));
        assert!(matches!(ch_tangent(11), Err(ClassError::DimError(11))));
    }

    #[test]
    fn tangent_components() {
        let t = tangent12();
        assert_eq!(t.rank(), Rat::from_int(12));
        assert_eq!(t.component(4), g(Gen::P1));
        let d8 = (&g(Gen::P1).pow(2) - &g(Gen::P2).scale_int(2)).scale(&Rat::new(1, 12));
        assert_eq!(t.component(8), d8);
    }

    #[test]
    fn e8_and_line_pair() {
        let v = e8_ch(&g(Gen::X)).unwrap();
        assert_eq!(v.rank(), Rat::from_int(248));
        assert_eq!(v.component(4), g(Gen::X).scale_int(-60));
        assert!(e8_ch(&g(Gen::C)).is_err());
        let xi = line_pair_ch(&g(Gen::C)).unwrap();
        assert_eq!(xi.rank(), Rat::from_int(2));
        assert_eq!(xi.component(4), g(Gen::C).pow(2));
        assert_eq!(xi.reduced().rank(), Rat::zero());
        assert_eq!(line_pair_ch(&GradedPoly::zero(12)).unwrap(), VirtualBundle::trivial(2, 12));
    }

    #[test]
    fn adams_and_squares() {
        let c = g(Gen::C);
        let xi = line_pair_ch(&c).unwrap();
        assert_eq!(vb_adams(&xi, 2).unwrap(), line_pair_ch(&c.scale_int(2)).unwrap());
        assert_eq!(vb_adams(&xi, 1).unwrap(), xi);
        assert!(vb_adams(&xi, 0).is_err());
        let t = tangent12();
        assert_eq!(vb_adams(&t, 2).unwrap().component(4), g(Gen::P1).scale_int(4));
        let (l2, s2) = vb_lambda2_sym2(&t);
        assert_eq!(l2.rank(), Rat::from_int(66));
        assert_eq!(s2.rank(), Rat::from_int(78));
        assert_eq!(&l2 + &s2, t.tensor(&t));
        assert_eq!((&l2 - &s2).component(4), g(Gen::P1).scale_int(-4));
        let _ = k(1, 1);
    }
}
