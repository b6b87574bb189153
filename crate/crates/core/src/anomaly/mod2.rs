use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use super::classes::{lambda_c, p_c, p_tilde_c};
use super::registry::{poly_witness, IdentityId, VerificationReport};
use super::AnomalyError;
use crate::charring::{Gen, GradedPoly};

/// Stiefel-Whitney generators.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum W {
    W2,
    W4,
    W6,
    W8,
}

impl W {
    pub const ALL: [W; 4] = [W::W2, W::W4, W::W6, W::W8];

    pub fn degree(self) -> u32 {
        2 * (self as u32 + 1)
    }
}

impl fmt::Display for W {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}", self.degree())
    }
}

type WMono = [u8; 4];

fn wdeg(m: &WMono) -> u32 {
    m.iter().zip(W::ALL).map(|(e, w)| *e as u32 * w.degree()).sum()
}

/// Polynomial over `Z/2` in `w2, w4, w6, w8`. A monomial is present iff its
/// coefficient is one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Mod2Poly {
    terms: BTreeSet<WMono>,
}

impl Mod2Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial([0; 4])
    }

    pub fn gen(w: W) -> Self {
        let mut m = [0; 4];
        m[w as usize] = 1;
        Self::from_monomial(m)
    }

    fn from_monomial(m: WMono) -> Self {
        Mod2Poly { terms: BTreeSet::from([m]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn toggle(&mut self, m: WMono) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for m in &o.terms {
            out.toggle(*m);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for a in &self.terms {
            for b in &o.terms {
                let mut m = *a;
                for i in 0..4 {
                    m[i] += b[i];
                }
                out.toggle(m);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for Mod2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // by degree, then larger powers of earlier generators first
        let mut ms: Vec<&WMono> = self.terms.iter().collect();
        ms.sort_by(|a, b| wdeg(a).cmp(&wdeg(b)).then_with(|| b.cmp(a)));
        let parts: Vec<String> = ms
            .into_iter()
            .map(|m| {
                let fs: Vec<String> = W::ALL
                    .iter()
                    .zip(m)
                    .filter(|(_, e)| **e > 0)
                    .map(|(w, e)| if *e == 1 { w.to_string() } else { format!("{w}^{e}") })
                    .collect();
                if fs.is_empty() {
                    "1".to_string()
                } else {
                    fs.join("*")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Reduces an integral polynomial mod 2 by sending each generator through
/// `map`. Non-integral coefficients or unmapped generators are errors.
pub fn reduce_mod2<F: Fn(Gen) -> Option<Mod2Poly>>(p: &GradedPoly, map: F) -> Result<Mod2Poly, AnomalyError> {
    let mut out = Mod2Poly::zero();
    for (m, c) in p.terms() {
        let n = c
            .to_integer()
            .ok_or_else(|| AnomalyError::NotIntegral(format!("coefficient {c} of {m}")))?;
        if n.bit(0) {
            let mut t = Mod2Poly::one();
            for (g, e) in m.gens() {
                let img = map(g).ok_or_else(|| AnomalyError::UnsupportedGenerator(g.to_string()))?;
                t = t.mul(&img.pow(e as u32));
            }
            out = out.add(&t);
        }
    }
    Ok(out)
}

fn gen(g: Gen) -> GradedPoly {
    GradedPoly::gen(g, 16)
}

/// `p1 = 2 q1 + c^2`, `p2 = 2 q2 + q1^2`.
fn to_q_classes(p: &GradedPoly) -> GradedPoly {
    let (q1, q2, c) = (gen(Gen::Q1), gen(Gen::Q2), gen(Gen::C));
    p.with_cap(16).substitute(
        |g| match g {
            Gen::P1 => Some(&q1.scale_int(2) + &c.pow(2)),
            Gen::P2 => Some(&q2.scale_int(2) + &q1.pow(2)),
            _ => None,
        },
        16,
    )
}

fn spinc_w(g: Gen) -> Option<Mod2Poly> {
    match g {
        Gen::Q1 => Some(Mod2Poly::gen(W::W4)),
        Gen::Q2 => Some(Mod2Poly::gen(W::W8)),
        Gen::C => Some(Mod2Poly::gen(W::W2)),
        _ => None,
    }
}

/// `p_i = w_{2i}^2` mod 2.
fn orient_w(g: Gen) -> Option<Mod2Poly> {
    match g {
        Gen::P1 => Some(Mod2Poly::gen(W::W2).pow(2)),
        Gen::P2 => Some(Mod2Poly::gen(W::W4).pow(2)),
        _ => None,
    }
}

fn wpoly(terms: &[WMono]) -> Mod2Poly {
    terms.iter().fold(Mod2Poly::zero(), |acc, m| acc.add(&Mod2Poly::from_monomial(*m)))
}

fn mod2_witness(got: &Mod2Poly, want: &Mod2Poly) -> String {
    let d = got.add(want);
    if d.is_zero() {
        String::new()
    } else {
        format!("got {got}, expected {want}")
    }
}

/// The three integral forms `(8 p_c, 8 p~_c, lambda_c)` in `q1, q2, c`,
/// each paired with its stated value. Labels name the part of the theorem.
pub fn verify_pc() -> Result<Vec<(String, String)>, AnomalyError> {
    let (q1, q2, c) = (gen(Gen::Q1), gen(Gen::Q2), gen(Gen::C));
    let c2 = c.pow(2);
    let eight_pc = to_q_classes(&p_c().scale_int(8));
    let want_pc = (&(&q2 - &(&q1 * &c2).scale_int(2)) + &c2.pow(2).scale_int(4)).scale_int(8);
    let eight_pt = to_q_classes(&p_tilde_c().scale_int(8));
    let want_pt =
        (&(&(&q2 - &q1.pow(2).scale_int(3)) + &(&q1 * &c2).scale_int(4)) + &c2.pow(2)).scale_int(8);
    let lc = to_q_classes(&lambda_c());
    let want_lc = &q1 - &c2;
    // the closed form of 8 p~_c in p1, p2, c
    let (p1, p2) = (gen(Gen::P1), gen(Gen::P2));
    let c16 = gen(Gen::C).pow(2);
    let closed = &(&(&p2.scale_int(4) - &p1.pow(2).scale_int(7)) + &(&p1 * &c16).scale_int(30))
        - &c16.pow(2).scale_int(15);
    let direct = (&p_c() - &lambda_c().pow(2).scale_int(3)).with_cap(16).scale_int(8);
    Ok(vec![
        ("(i) 8 p_c".into(), poly_witness(&(&eight_pc - &want_pc))),
        ("(ii) 8 p~_c".into(), poly_witness(&(&eight_pt - &want_pt))),
        ("(iii) lambda_c".into(), poly_witness(&(&lc - &want_lc))),
        ("8 p~_c closed form".into(), poly_witness(&(&direct - &closed))),
    ])
}

fn spinc_reductions() -> Result<Vec<(String, String)>, AnomalyError> {
    let pc = to_q_classes(&p_c());
    let pt = to_q_classes(&p_tilde_c());
    let lc = to_q_classes(&lambda_c());
    let w8 = wpoly(&[[0, 0, 0, 1]]);
    Ok(vec![
        ("p_c mod 2".into(), mod2_witness(&reduce_mod2(&pc, spinc_w)?, &w8)),
        (
            "p~_c mod 2".into(),
            mod2_witness(&reduce_mod2(&pt, spinc_w)?, &wpoly(&[[0, 0, 0, 1], [0, 2, 0, 0], [4, 0, 0, 0]])),
        ),
        ("lambda_c mod 2".into(), mod2_witness(&reduce_mod2(&lc, spinc_w)?, &wpoly(&[[0, 1, 0, 0], [2, 0, 0, 0]]))),
    ])
}

/// Integrality of `p_c`, `p~_c`, `lambda_c` in the `q`-classes and their
/// reductions mod 2.
pub fn verify_pc_and_mod2() -> Result<VerificationReport, AnomalyError> {
    let start = Instant::now();
    let mut parts = verify_pc()?;
    parts.extend(spinc_reductions()?);
    let mut r = VerificationReport::from_witnesses(IdentityId::PcTheorem, 0, 16, parts);
    r.millis = start.elapsed().as_millis() as u64;
    Ok(r)
}

/// `4p1^2 - 7p2 = w4^2` and `p1^2 - 7p2 = w2^4 + w4^2` mod 2, assuming
/// `p_i = w_{2i}^2` mod 2.
pub fn verify_mod2_orientable() -> Result<VerificationReport, AnomalyError> {
    let start = Instant::now();
    let (p1, p2) = (gen(Gen::P1), gen(Gen::P2));
    let a = &p1.pow(2).scale_int(4) - &p2.scale_int(7);
    let b = &p1.pow(2) - &p2.scale_int(7);
    let parts = vec![
        ("4p1^2 - 7p2".into(), mod2_witness(&reduce_mod2(&a, orient_w)?, &wpoly(&[[0, 2, 0, 0]]))),
        ("p1^2 - 7p2".into(), mod2_witness(&reduce_mod2(&b, orient_w)?, &wpoly(&[[4, 0, 0, 0], [0, 2, 0, 0]]))),
    ];
    let mut r = VerificationReport::from_witnesses(IdentityId::Mod2Orientable, 0, 16, parts);
    r.notes.push("assumes p_i = w_{2i}^2 mod 2".into());
    r.millis = start.elapsed().as_millis() as u64;
    Ok(r)
}
