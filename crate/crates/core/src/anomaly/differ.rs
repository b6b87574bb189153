use std::time::Instant;

use super::classes::{cap_c, cap_c_c, cap_c_tilde, cap_c_tilde_c, lambda, lambda_c, p_c, p_spin, p_tilde, p_tilde_c};
use super::registry::{poly_witness, IdentityId, VerificationReport};
use super::AnomalyError;
use crate::charring::{
    ch_real_bundle, e8_ch, line_pair_ch, multiplicative_class_of, Gen, GradedPoly, RootFunction, VirtualBundle,
    DEFAULT_CAP,
};
use crate::exactmath::{taylor, Rat};

/// Cap of the ring on the 10-dimensional submanifold.
pub const U_CAP: u32 = 10;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum DifferId {
    /// From the `C(x)` formulas.
    First,
    /// From the `C~(x)` formulas.
    Second,
}

fn ugen(g: Gen) -> GradedPoly {
    GradedPoly::gen(g, U_CAP)
}

fn zgen(g: Gen) -> GradedPoly {
    GradedPoly::gen(g, DEFAULT_CAP)
}

/// Pullback to the submanifold `U` dual to `c`, with `TZ|U = TU + N` and
/// `xi|U = N`: `p1 -> tP1 + e^2`, `p2 -> tP2 + tP1 e^2`, `c -> e`,
/// `x -> tx`, truncated at degree 10.
pub fn restrict_to_u(alpha: &GradedPoly) -> Result<GradedPoly, AnomalyError> {
    let (tp1, tp2, e, tx) = (ugen(Gen::TP1), ugen(Gen::TP2), ugen(Gen::E), ugen(Gen::TX));
    let e2 = e.pow(2);
    restrict_with(alpha, &(&tp1 + &e2), &(&tp2 + &(&tp1 * &e2)), &e, &tx)
}

/// Same substitution with the normal-bundle terms dropped from the
/// Pontryagin classes.
fn restrict_naive(alpha: &GradedPoly) -> Result<GradedPoly, AnomalyError> {
    restrict_with(alpha, &ugen(Gen::TP1), &ugen(Gen::TP2), &ugen(Gen::E), &ugen(Gen::TX))
}

fn restrict_with(
    alpha: &GradedPoly,
    p1: &GradedPoly,
    p2: &GradedPoly,
    c: &GradedPoly,
    x: &GradedPoly,
) -> Result<GradedPoly, AnomalyError> {
    for (m, _) in alpha.terms() {
        if let Some((g, _)) = m.gens().find(|(g, _)| !matches!(g, Gen::P1 | Gen::P2 | Gen::C | Gen::X)) {
            return Err(AnomalyError::UnsupportedGenerator(g.to_string()));
        }
    }
    Ok(alpha.with_cap(DEFAULT_CAP.max(U_CAP)).substitute(
        |g| match g {
            Gen::P1 => Some(p1.clone()),
            Gen::P2 => Some(p2.clone()),
            Gen::C => Some(c.clone()),
            Gen::X => Some(x.clone()),
            _ => None,
        },
        U_CAP,
    ))
}

/// The displayed degree-10 form `(1/64) e {...}` evaluated at `ic`, the
/// restriction of `C(x)` (first) or `C~(x)` (second).
pub fn differ_display(id: DifferId, ic: &GradedPoly) -> GradedPoly {
    let (tp1, tp2, e) = (ugen(Gen::TP1), ugen(Gen::TP2), ugen(Gen::E));
    let e2 = e.pow(2);
    let (a, b, p1sq) = match id {
        DifferId::First => (24, 4, 1),
        DifferId::Second => (48, 28, 7),
    };
    let lin = &tp1.scale_int(b) + &e2.scale_int(10);
    let brace = &(&(&(&(&ic.pow(2).scale_int(a) - &(&lin * ic)) + &tp1.pow(2).scale_int(p1sq)) - &tp2.scale_int(4))
        + &(&tp1 * &e2).scale_int(6))
        - &e2.pow(2).scale_int(21);
    (&e * &brace).scale(&Rat::new(1, 64))
}

/// `tanh(e/4)` on `U`.
fn tanh_quarter(e: &GradedPoly) -> GradedPoly {
    let n = U_CAP as usize / 2 + 2;
    let sinh = taylor::exp_part(&Rat::one(), 1, n);
    let cosh = taylor::exp_part(&Rat::one(), 0, n);
    let t = taylor::mul(&sinh, &taylor::inv(&cosh).expect("cosh(0) = 1"));
    e.scale(&Rat::new(1, 4)).compose_series(&t).expect("e is nilpotent")
}

/// `1/2 A-hat(TU) ch(E) tanh(e/4)` for the bundle `E` on the right of the
/// congruence, in degree 10.
fn tanh_term(id: DifferId) -> Result<GradedPoly, AnomalyError> {
    let (tp1, tp2, e, tx) = (ugen(Gen::TP1), ugen(Gen::TP2), ugen(Gen::E), ugen(Gen::TX));
    let zero = GradedPoly::zero(U_CAP);
    let ahat = multiplicative_class_of(&RootFunction::Ahat, 5, &tp1, &tp2, &zero, U_CAP)?;
    let tu = ch_real_bundle(10, &tp1, &tp2, &zero, U_CAP)?;
    let v = e8_ch(&tx)?;
    let n = line_pair_ch(&e)?;
    let bundle: VirtualBundle = match id {
        DifferId::First => (&(&v.scale(2) + &tu) + &n).plus_trivial(-4),
        DifferId::Second => (&(&v + &tu) + &n).plus_trivial(244),
    };
    Ok((&(&ahat * bundle.ch()) * &tanh_quarter(&e)).scale(&Rat::new(1, 2)).component(10))
}

/// Intermediate classes of the derivation.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferParts {
    /// Difference of the two degree-12 cubic forms, divided by 12.
    pub gamma: GradedPoly,
    /// `gamma / c`, when `c^2` divides `gamma`.
    pub delta: Option<GradedPoly>,
    /// `i^* delta` on `U`.
    pub restricted: GradedPoly,
    /// The displayed form at `i^* C(x)` (or `i^* C~(x)`).
    pub display: GradedPoly,
    /// `1/2 A-hat(TU) ch(..) tanh(e/4)` in degree 10.
    pub tanh: GradedPoly,
}

pub fn differ_parts(id: DifferId) -> Result<DifferParts, AnomalyError> {
    let x = zgen(Gen::X);
    let twelfth = Rat::new(1, 12);
    let (spinc, spin, cx) = match id {
        DifferId::First => {
            let cc = cap_c_c(&x);
            let c = cap_c(&x);
            (&cc * &(&p_c() - &cc.pow(2)), &c * &(&p_spin() - &c.pow(2)), c)
        }
        DifferId::Second => {
            let ct = cap_c_tilde_c(&x);
            let c = cap_c_tilde(&x);
            let a = &(&p_tilde_c() + &(&lambda_c() * &ct).scale_int(6)) - &ct.pow(2).scale_int(4);
            let b = &(&p_tilde() + &(&lambda() * &c).scale_int(6)) - &c.pow(2).scale_int(4);
            (&ct * &a, &c * &b, c)
        }
    };
    let gamma = (&spinc - &spin).scale(&twelfth).component(12);
    let delta = gamma.div_gen(Gen::C, 2).map(|q| &q * &zgen(Gen::C));
    let restricted = match &delta {
        Some(d) => restrict_to_u(d)?,
        None => GradedPoly::zero(U_CAP),
    };
    let display = differ_display(id, &restrict_to_u(&cx)?);
    Ok(DifferParts { gamma, delta, restricted, display, tanh: tanh_term(id)? })
}

/// Checks that `c^2` divides the difference class and that its restriction
/// to `U` is the displayed quadratic form. Mismatches are reported, with
/// the nearby variants that were tried recorded in the notes.
pub fn verify_differ(id: DifferId) -> Result<VerificationReport, AnomalyError> {
    let start = Instant::now();
    let parts = differ_parts(id)?;
    let div = if parts.delta.is_some() {
        String::new()
    } else {
        format!("c^2 does not divide {}", parts.gamma)
    };
    let main = &parts.restricted - &parts.display;
    let rid = match id {
        DifferId::First => IdentityId::Differ1,
        DifferId::Second => IdentityId::Differ2,
    };
    let mut r = VerificationReport::from_witnesses(
        rid,
        0,
        U_CAP,
        vec![("divisibility".into(), div), ("i*delta - display".into(), poly_witness(&main))],
    );
    if !r.passed() {
        if let Some(d) = &parts.delta {
            let cx = match id {
                DifferId::First => cap_c(&zgen(Gen::X)),
                DifferId::Second => cap_c_tilde(&zgen(Gen::X)),
            };
            let naive = &restrict_naive(d)? - &differ_display(id, &restrict_naive(&cx)?);
            r.notes.push(if naive.is_zero() {
                "matches exactly if the normal bundle is dropped from p1, p2 (i*C = p1(TU)/2 + ...)".into()
            } else {
                format!("without normal-bundle terms the difference is {naive}")
            });
        }
        for (sign, label) in [(1, "+"), (-1, "-")] {
            let w = &main + &parts.tanh.scale_int(sign);
            r.notes.push(format!("with {label} the tanh(e/4) term: {}", if w.is_zero() { "0".into() } else { w.to_string() }));
        }
    }
    r.millis = start.elapsed().as_millis() as u64;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restriction_examples() {
        assert_eq!(restrict_to_u(&zgen(Gen::P1)).unwrap(), &ugen(Gen::TP1) + &ugen(Gen::E).pow(2));
        assert_eq!(restrict_to_u(&zgen(Gen::C).pow(2)).unwrap(), ugen(Gen::E).pow(2));
        assert_eq!(
            restrict_to_u(&zgen(Gen::P2)).unwrap(),
            &ugen(Gen::TP2) + &(&ugen(Gen::TP1) * &ugen(Gen::E).pow(2))
        );
        assert!(matches!(restrict_to_u(&zgen(Gen::P3)), Err(AnomalyError::UnsupportedGenerator(_))));
    }

    #[test]
    fn tanh_coefficients() {
        let e = ugen(Gen::E);
        let t = tanh_quarter(&e);
        assert_eq!(t.component(2), e.scale(&Rat::new(1, 4)));
        assert_eq!(t.component(6), e.pow(3).scale(&Rat::new(-1, 192)));
        assert_eq!(t.component(10), e.pow(5).scale(&Rat::new(1, 7680)));
    }

    #[test]
    fn difference_is_divisible_by_c_squared() {
        for id in [DifferId::First, DifferId::Second] {
            let p = differ_parts(id).unwrap();
            assert!(p.delta.is_some());
            assert!(p.restricted.is_homogeneous(10));
        }
    }

    #[test]
    fn display_coefficients() {
        // coefficient of ic^2 inside the braces is 24, resp. 48
        let ic = ugen(Gen::TX);
        let d1 = differ_display(DifferId::First, &ic);
        let m = crate::charring::Monomial::gen(Gen::E).mul(&crate::charring::Monomial::gen_pow(Gen::TX, 2));
        assert_eq!(d1.coeff(&m), Rat::new(24, 64));
        let d2 = differ_display(DifferId::Second, &ic);
        assert_eq!(d2.coeff(&m), Rat::new(48, 64));
    }
}
