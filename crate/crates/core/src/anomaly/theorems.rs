use std::fmt;

use super::classes::{
    build_twisted_class, cap_c, cap_c_c, cap_c_tilde, cap_c_tilde_c, cap_d, cap_d_tilde, exp_half, lambda,
    lambda_c, p_c, p_spin, p_tilde, p_tilde_c, Route, TwistParams, TwistedKind,
};
use super::AnomalyError;
use crate::charring::{
    e8_ch, line_pair_ch, multiplicative_class, tangent12, vb_lambda2_sym2, Gen, GradedPoly, RootFunction,
    VirtualBundle, DEFAULT_CAP,
};
use crate::exactmath::Rat;

fn gen(g: Gen) -> GradedPoly {
    GradedPoly::gen(g, DEFAULT_CAP)
}

fn int(n: i64) -> GradedPoly {
    GradedPoly::int(n, DEFAULT_CAP)
}

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

/// The six degree-12 anomaly cancellation formulas.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    WfhMain,
    SpinNew,
    SpincMain,
    SpincNew,
    O1,
    O2,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] =
        [TheoremId::WfhMain, TheoremId::SpinNew, TheoremId::SpincMain, TheoremId::SpincNew, TheoremId::O1, TheoremId::O2];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::WfhMain => "wfh_main",
            TheoremId::SpinNew => "spin_new",
            TheoremId::SpincMain => "spinc_main",
            TheoremId::SpincNew => "spinc_new",
            TheoremId::O1 => "o1",
            TheoremId::O2 => "o2",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

fn ahat() -> Result<GradedPoly, AnomalyError> {
    Ok(multiplicative_class(&RootFunction::Ahat, 12)?)
}

fn lhat() -> Result<GradedPoly, AnomalyError> {
    Ok(multiplicative_class(&RootFunction::Lhat, 12)?)
}

/// `xi_C`, the complexified real plane bundle with Euler class `c`.
fn xi() -> Result<VirtualBundle, AnomalyError> {
    Ok(line_pair_ch(&gen(Gen::C))?)
}

/// `xi~_C = xi_C - 2`.
fn xi_tilde() -> Result<VirtualBundle, AnomalyError> {
    Ok(xi()?.plus_trivial(-2))
}

fn ch_v() -> Result<VirtualBundle, AnomalyError> {
    Ok(e8_ch(&gen(Gen::X))?)
}

/// `Lambda^2(T) - S^2(T)`.
fn lambda2_minus_sym2() -> VirtualBundle {
    let (l2, s2) = vb_lambda2_sym2(&tangent12());
    &l2 - &s2
}

/// Both sides of a theorem as degree-12 polynomials in `p1, p2, p3, c, x`.
/// The spin and orientable theorems have no `c`.
pub fn theorem_sides(id: TheoremId) -> Result<(GradedPoly, GradedPoly), AnomalyError> {
    let x = gen(Gen::X);
    let t = tangent12();
    let v = ch_v()?;
    let (lhs, rhs) = match id {
        TheoremId::WfhMain => {
            let cc = cap_c(&x);
            let lhs = (&cc * &(&p_spin() - &cc.pow(2))).scale(&q(1, 48));
            let inner = &(&v.ch().scale(&q(1, 2)) + &t.ch().scale(&q(1, 4))) - &int(1);
            (lhs, &ahat()? * &inner)
        }
        TheoremId::SpinNew => {
            let ct = cap_c_tilde(&x);
            let br = &(&p_tilde() + &(&lambda() * &ct).scale_int(6)) - &ct.pow(2).scale_int(4);
            let lhs = (&ct * &br).scale(&q(1, 24));
            let inner = &(&v.ch().scale(&q(1, 2)) + &t.ch().scale(&q(1, 2))) + &int(122);
            (lhs, &ahat()? * &inner)
        }
        TheoremId::SpincMain => {
            let cc = cap_c_c(&x);
            let lhs = (&cc * &(&p_c() - &cc.pow(2))).scale(&q(1, 24));
            let xi = xi()?;
            let sq = (&xi.tensor(&xi) - &xi).plus_trivial(2);
            let inner = &(v.ch() + &t.ch().scale(&q(1, 2))) - &sq.ch().scale(&q(1, 2));
            (lhs, &(&ahat()? * &exp_half(&gen(Gen::C))) * &inner)
        }
        TheoremId::SpincNew => {
            let ct = cap_c_tilde_c(&x);
            let br = &(&p_tilde_c() + &(&lambda_c() * &ct).scale_int(6)) - &ct.pow(2).scale_int(4);
            let lhs = (&ct * &br).scale(&q(1, 12));
            let xi = xi()?;
            let tw = (&xi - &xi.tensor(&xi)).plus_trivial(246);
            let inner = &(v.ch() + t.ch()) + tw.ch();
            (lhs, &(&ahat()? * &exp_half(&gen(Gen::C))) * &inner)
        }
        TheoremId::O1 => {
            let (p1, p2) = (gen(Gen::P1), gen(Gen::P2));
            let d = cap_d(&x);
            let br = &(&p1.pow(2).scale_int(4) - &p2.scale_int(7)) - &d.pow(2);
            let lhs = (&d * &br).scale(&q(1, 6));
            let inner = &(&(&v.ch().scale_int(2) + &t.ch().scale_int(2)) + lambda2_minus_sym2().ch()) - &int(4);
            (lhs, (&lhat()? * &inner).scale(&q(1, 32)))
        }
        TheoremId::O2 => {
            let (p1, p2) = (gen(Gen::P1), gen(Gen::P2));
            let d = cap_d_tilde(&x);
            let br = &(&(&p1.pow(2) - &p2.scale_int(7)) - &(&p1 * &d).scale_int(6)) - &d.pow(2).scale_int(4);
            let lhs = (&d * &br).scale(&q(1, 3));
            let inner = &(&(v.ch() + &t.ch().scale_int(2)) + lambda2_minus_sym2().ch()) + &int(244);
            (lhs, (&lhat()? * &inner).scale(&q(1, 16)))
        }
    };
    Ok((lhs.component(12), rhs.component(12)))
}

/// `LHS - RHS`; the theorem holds iff this is zero.
pub fn identity_difference(id: TheoremId) -> Result<GradedPoly, AnomalyError> {
    let (l, r) = theorem_sides(id)?;
    Ok(&l - &r)
}

/// The four degree-8 identities extracted from the factorizations.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Deg8Id {
    SpincQ,
    SpincR,
    OrientQ,
    OrientR,
}

impl Deg8Id {
    pub const ALL: [Deg8Id; 4] = [Deg8Id::SpincQ, Deg8Id::SpincR, Deg8Id::OrientQ, Deg8Id::OrientR];

    /// Twisted class whose factorization produces this identity.
    pub fn class(self) -> TwistedKind {
        match self {
            Deg8Id::SpincQ => TwistedKind::Qc,
            Deg8Id::SpincR => TwistedKind::Rc,
            Deg8Id::OrientQ => TwistedKind::QL,
            Deg8Id::OrientR => TwistedKind::RL,
        }
    }

    /// `-a1` for the modular form `1 + a1 q + ...` the class is a multiple of.
    pub fn q1_shift(self) -> i64 {
        match self {
            Deg8Id::SpincQ | Deg8Id::OrientQ => 24,
            Deg8Id::SpincR | Deg8Id::OrientR => 264,
        }
    }

    /// The degree-12 theorem this identity proves.
    pub fn theorem(self) -> TheoremId {
        match self {
            Deg8Id::SpincQ => TheoremId::SpincMain,
            Deg8Id::SpincR => TheoremId::SpincNew,
            Deg8Id::OrientQ => TheoremId::O1,
            Deg8Id::OrientR => TheoremId::O2,
        }
    }
}

/// `(A, X, B)`: the 4-form in the exponent, the characteristic form in
/// front and the virtual bundle of the factorization.
fn deg8_data(id: Deg8Id) -> Result<(GradedPoly, GradedPoly, VirtualBundle), AnomalyError> {
    let x = gen(Gen::X);
    let t = tangent12();
    let v = ch_v()?;
    Ok(match id {
        Deg8Id::SpincQ | Deg8Id::SpincR => {
            let xt = xi_tilde()?;
            let xx = &xt.scale(3) + &xt.tensor(&xt);
            let front = &ahat()? * &exp_half(&gen(Gen::C));
            if id == Deg8Id::SpincQ {
                let b = &(&v.scale(2) + &t).plus_trivial(-4) - &xx;
                (cap_c_c(&x).scale_int(2), front, b)
            } else {
                let b = &(&v + &t).plus_trivial(244) - &xx;
                (cap_c_tilde_c(&x).scale_int(2), front, b)
            }
        }
        Deg8Id::OrientQ => {
            let b = (&(&v.scale(2) + &t.scale(2)) + &lambda2_minus_sym2()).plus_trivial(-4);
            (cap_d(&x).scale_int(2), lhat()?, b)
        }
        Deg8Id::OrientR => {
            let b = (&(&v + &t.scale(2)) + &lambda2_minus_sym2()).plus_trivial(244);
            (cap_d_tilde(&x).scale_int(2), lhat()?, b)
        }
    })
}

/// `{ -((e^(A/24) - 1)/A) X ch(B) + e^(A/24) X }` in degree 8, for a
/// 4-form `A`.
pub fn deg8_core(a: &GradedPoly, front: &GradedPoly, bundle: &VirtualBundle) -> GradedPoly {
    let len = a.cap() as usize / 4 + 2;
    let mut coeffs = Vec::with_capacity(len);
    let mut den = Rat::from_int(24);
    for k in 1..=len as i64 {
        coeffs.push(den.recip().unwrap());
        den = &den * &Rat::from_int(24 * (k + 1));
    }
    let quot = a.compose_series(&coeffs).expect("A has no constant term");
    let e = a.scale(&q(1, 24)).exp().expect("A has no constant term");
    let first = &(&quot * front) * bundle.ch();
    (&(&e * front) - &first).component(8)
}

/// `(computed, displayed)` degree-8 forms.
pub fn deg8_identity(id: Deg8Id) -> Result<(GradedPoly, GradedPoly), AnomalyError> {
    let (a, front, b) = deg8_data(id)?;
    let got = deg8_core(&a, &front, &b);
    let x = gen(Gen::X);
    let (p1, p2) = (gen(Gen::P1), gen(Gen::P2));
    let want = match id {
        Deg8Id::SpincQ => (&p_c() - &cap_c_c(&x).pow(2)).scale(&q(1, 24)),
        Deg8Id::SpincR => {
            let ct = cap_c_tilde_c(&x);
            (&(&p_tilde_c() + &(&lambda_c() * &ct).scale_int(6)) - &ct.pow(2).scale_int(4)).scale(&q(1, 24))
        }
        Deg8Id::OrientQ => {
            let d = cap_d(&x);
            (&(&p1.pow(2).scale_int(4) - &p2.scale_int(7)) - &d.pow(2)).scale(&q(8, 3))
        }
        Deg8Id::OrientR => {
            let d = cap_d_tilde(&x);
            let s = &(&(&p1.pow(2) - &p2.scale_int(7)) - &(&p1 * &d).scale_int(6)) - &d.pow(2).scale_int(4);
            s.scale(&q(8, 3))
        }
    };
    Ok((got, want))
}

/// Recomputes the degree-12 split behind a factorization. Returns the two
/// witnesses `[q^1 + k q^0]_12 - {e^(A/24) X (ch B - A)}_12` (read off the
/// twisted class itself) and `{X ch B}_12 - A F8`; both vanish when the
/// factorization step and the degree-8 rearrangement are right.
pub fn factorization_split(id: Deg8Id) -> Result<(GradedPoly, GradedPoly), AnomalyError> {
    let (a, front, b) = deg8_data(id)?;
    let class = build_twisted_class(id.class(), &TwistParams::symbolic(), 1, Route::Adams)?;
    let q0 = class.coeff_q(0).component(12);
    let q1 = class.coeff_q(1).component(12);
    let lhs = &q1 + &q0.scale_int(id.q1_shift());
    let e = a.scale(&q(1, 24)).exp().expect("A has no constant term");
    let expected = (&(&e * &front) * &(b.ch() - &a)).component(12);
    let w1 = &lhs - &expected;
    let f8 = deg8_core(&a, &front, &b);
    let w2 = &(&front * b.ch()).component(12) - &(&a * &f8);
    Ok((w1, w2))
}

/// `(4 + 3 xi~ + xi~ xi~,  xi xi - xi + 2)`.
pub fn bundle_xi_plus() -> Result<(VirtualBundle, VirtualBundle), AnomalyError> {
    let (x, xt) = (xi()?, xi_tilde()?);
    let lhs = (&xt.scale(3) + &xt.tensor(&xt)).plus_trivial(4);
    let rhs = (&x.tensor(&x) - &x).plus_trivial(2);
    Ok((lhs, rhs))
}

/// `(244 - 3 xi~ - xi~ xi~,  246 - xi xi + xi)`.
pub fn bundle_xi_minus() -> Result<(VirtualBundle, VirtualBundle), AnomalyError> {
    let (x, xt) = (xi()?, xi_tilde()?);
    let lhs = (&xt.scale(-3) - &xt.tensor(&xt)).plus_trivial(244);
    let rhs = (&x - &x.tensor(&x)).plus_trivial(246);
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_theorems_hold() {
        for id in TheoremId::ALL {
            let d = identity_difference(id).unwrap();
            assert!(d.is_zero(), "{id}: {d}");
        }
    }

    #[test]
    fn degree8_identities_hold() {
        for id in Deg8Id::ALL {
            let (got, want) = deg8_identity(id).unwrap();
            assert_eq!(got, want, "{id:?}");
        }
    }

    #[test]
    fn spinc_main_at_c_zero_is_twice_wfh() {
        let zero_c = |p: &GradedPoly| p.substitute(|g| (g == Gen::C).then(|| GradedPoly::zero(12)), 12);
        let (l, r) = theorem_sides(TheoremId::SpincMain).unwrap();
        let (lw, rw) = theorem_sides(TheoremId::WfhMain).unwrap();
        assert_eq!(zero_c(&l), lw.scale_int(2));
        assert_eq!(zero_c(&r), rw.scale_int(2));
        let (l, _) = theorem_sides(TheoremId::SpincNew).unwrap();
        let (ls, _) = theorem_sides(TheoremId::SpinNew).unwrap();
        assert_eq!(zero_c(&l), ls.scale_int(2));
    }

    #[test]
    fn xi_bundles() {
        for (l, r) in [bundle_xi_plus().unwrap(), bundle_xi_minus().unwrap()] {
            assert_eq!(l, r);
        }
        assert_eq!(bundle_xi_plus().unwrap().0.rank(), Rat::from_int(4));
    }
}
