use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::classes::{build_twisted_class, component_series, Route, TwistParams, TwistedKind};
use super::differ::{verify_differ, DifferId};
use super::mod2::{verify_mod2_orientable, verify_pc_and_mod2};
use super::theorems::{
    bundle_xi_minus, bundle_xi_plus, deg8_identity, factorization_split, identity_difference, Deg8Id, TheoremId,
};
use super::AnomalyError;
use crate::charring::{
    line_pair_ch, tangent12, vb_lambda2_sym2, witten_expand, Gen, GradedPoly, VirtualBundle, WittenSpecId,
    DEFAULT_CAP,
};
use crate::thetamod::{match_modular_basis, ThetaError};

/// Every identity the verifier knows about.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    WfhMain,
    SpinNew,
    SpincMain,
    SpincNew,
    O1,
    O2,
    FactSpincQ,
    FactSpincR,
    FactOrientQ,
    FactOrientR,
    Deg8SpincQ,
    Deg8SpincR,
    Deg8OrientQ,
    Deg8OrientR,
    BundleXiPlus,
    BundleXiMinus,
    SqrtRelation,
    B1Check,
    D1Check,
    PcTheorem,
    Mod2Orientable,
    Differ1,
    Differ2,
}

impl IdentityId {
    pub const ALL: [IdentityId; 23] = [
        IdentityId::WfhMain,
        IdentityId::SpinNew,
        IdentityId::SpincMain,
        IdentityId::SpincNew,
        IdentityId::O1,
        IdentityId::O2,
        IdentityId::FactSpincQ,
        IdentityId::FactSpincR,
        IdentityId::FactOrientQ,
        IdentityId::FactOrientR,
        IdentityId::Deg8SpincQ,
        IdentityId::Deg8SpincR,
        IdentityId::Deg8OrientQ,
        IdentityId::Deg8OrientR,
        IdentityId::BundleXiPlus,
        IdentityId::BundleXiMinus,
        IdentityId::SqrtRelation,
        IdentityId::B1Check,
        IdentityId::D1Check,
        IdentityId::PcTheorem,
        IdentityId::Mod2Orientable,
        IdentityId::Differ1,
        IdentityId::Differ2,
    ];

    pub fn name(self) -> &'static str {
        use IdentityId::*;
        match self {
            WfhMain => "wfh_main",
            SpinNew => "spin_new",
            SpincMain => "spinc_main",
            SpincNew => "spinc_new",
            O1 => "o1",
            O2 => "o2",
            FactSpincQ => "fact_spinc_q",
            FactSpincR => "fact_spinc_r",
            FactOrientQ => "fact_orient_q",
            FactOrientR => "fact_orient_r",
            Deg8SpincQ => "deg8_spinc_q",
            Deg8SpincR => "deg8_spinc_r",
            Deg8OrientQ => "deg8_orient_q",
            Deg8OrientR => "deg8_orient_r",
            BundleXiPlus => "bundle_xi_plus",
            BundleXiMinus => "bundle_xi_minus",
            SqrtRelation => "sqrt_relation",
            B1Check => "b1_check",
            D1Check => "d1_check",
            PcTheorem => "pc_theorem",
            Mod2Orientable => "mod2_orientable",
            Differ1 => "differ1",
            Differ2 => "differ2",
        }
    }

    fn theorem(self) -> Option<TheoremId> {
        Some(match self {
            IdentityId::WfhMain => TheoremId::WfhMain,
            IdentityId::SpinNew => TheoremId::SpinNew,
            IdentityId::SpincMain => TheoremId::SpincMain,
            IdentityId::SpincNew => TheoremId::SpincNew,
            IdentityId::O1 => TheoremId::O1,
            IdentityId::O2 => TheoremId::O2,
            _ => return None,
        })
    }

    fn factorization(self) -> Option<TwistedKind> {
        Some(match self {
            IdentityId::FactSpincQ => TwistedKind::Qc,
            IdentityId::FactSpincR => TwistedKind::Rc,
            IdentityId::FactOrientQ => TwistedKind::QL,
            IdentityId::FactOrientR => TwistedKind::RL,
            _ => return None,
        })
    }

    fn deg8(self) -> Option<Deg8Id> {
        Some(match self {
            IdentityId::Deg8SpincQ => Deg8Id::SpincQ,
            IdentityId::Deg8SpincR => Deg8Id::SpincR,
            IdentityId::Deg8OrientQ => Deg8Id::OrientQ,
            IdentityId::Deg8OrientR => Deg8Id::OrientR,
            _ => return None,
        })
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = AnomalyError;
    fn from_str(s: &str) -> Result<Self, AnomalyError> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| AnomalyError::ArgumentError(format!("unknown identity `{s}`")))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for IdentityId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// Outcome of one check. `witness` is empty exactly when the check passed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: IdentityId,
    pub status: Status,
    pub order: u32,
    pub cap: u32,
    pub witness: String,
    pub millis: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// Report from a list of labelled witnesses; empty strings mean zero.
    pub(crate) fn from_witnesses(id: IdentityId, order: u32, cap: u32, parts: Vec<(String, String)>) -> Self {
        let failing: Vec<String> =
            parts.into_iter().filter(|(_, w)| !w.is_empty()).map(|(l, w)| format!("{l}: {w}")).collect();
        let status = if failing.is_empty() { Status::Pass } else { Status::Fail };
        VerificationReport { id, status, order, cap, witness: failing.join("; "), millis: 0, notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub(crate) fn poly_witness(p: &GradedPoly) -> String {
    if p.is_zero() {
        String::new()
    } else {
        p.to_string()
    }
}

fn bundle_witness(l: &VirtualBundle, r: &VirtualBundle) -> String {
    poly_witness(&(l.ch() - r.ch()))
}

/// Checks that the degree-12 component of a twisted class with symbolic
/// `x` (and `c`) is the `q^0` polynomial times `E4^2 E6` (weight 14) or
/// `E4 E6` (weight 10) through `q^n`.
pub fn verify_factorization(id: IdentityId, n: u32) -> Result<VerificationReport, AnomalyError> {
    let kind = id
        .factorization()
        .ok_or_else(|| AnomalyError::ArgumentError(format!("`{id}` is not a factorization id")))?;
    let start = Instant::now();
    let class = build_twisted_class(kind, &TwistParams::symbolic(), n, Route::Adams)?;
    let top = component_series(&class, 12);
    let witness = match match_modular_basis(&top, kind.weight().expect("modular class")) {
        Ok(_) => String::new(),
        Err(ThetaError::NotProportional { order, difference }) => format!("q^{order}: {difference}"),
        Err(e) => return Err(e.into()),
    };
    let mut r = VerificationReport::from_witnesses(id, n, DEFAULT_CAP, vec![(format!("{kind}"), witness)]);
    r.millis = start.elapsed().as_millis() as u64;
    Ok(r)
}

fn sqrt_relation(n: u32) -> Result<String, AnomalyError> {
    let p = TwistParams::symbolic();
    let r = build_twisted_class(TwistedKind::Rc, &p, n, Route::Adams)?;
    let q = build_twisted_class(TwistedKind::Qc, &p, n, Route::Adams)?;
    let w = build_twisted_class(TwistedKind::Wc, &p, n, Route::Adams)?;
    let diff = r.mul(&r)?.sub(&q.mul(&w)?)?;
    let first = diff
        .terms()
        .find(|(_, c)| !c.is_zero())
        .map(|(k, c)| format!("q^{}: {c}", crate::exactmath::exponent(k)))
        .unwrap_or_default();
    Ok(first)
}

fn b1_check() -> Result<String, AnomalyError> {
    let t = tangent12();
    let xi = line_pair_ch(&GradedPoly::gen(Gen::C, DEFAULT_CAP))?;
    let xr = xi.reduced();
    let got = witten_expand(WittenSpecId::ThetaXi, &[t.clone(), xi], 1)?;
    let b1 = &(&t.plus_trivial(-12) - &xr.scale(3)) - &xr.tensor(&xr);
    Ok(bundle_witness(&got[1], &b1))
}

fn d1_check() -> Result<String, AnomalyError> {
    let t = tangent12();
    let (l2, s2) = vb_lambda2_sym2(&t);
    let d1 = (&(&t.scale(2) + &l2) - &s2).plus_trivial(-12);
    let got = witten_expand(WittenSpecId::Phi, &[t], 1)?;
    Ok(bundle_witness(&got[1], &d1))
}

/// Runs one registry entry at `q`-order `order`.
pub fn verify_identity(id: IdentityId, order: u32) -> Result<VerificationReport, AnomalyError> {
    let start = Instant::now();
    let cap = DEFAULT_CAP;
    let mut report = if let Some(t) = id.theorem() {
        VerificationReport::from_witnesses(id, order, cap, vec![(t.to_string(), poly_witness(&identity_difference(t)?))])
    } else if id.factorization().is_some() {
        verify_factorization(id, order)?
    } else if let Some(d) = id.deg8() {
        let (got, want) = deg8_identity(d)?;
        let (split, rearranged) = factorization_split(d)?;
        VerificationReport::from_witnesses(
            id,
            order,
            cap,
            vec![
                ("degree 8".into(), poly_witness(&(&got - &want))),
                ("q^1 split".into(), poly_witness(&split)),
                ("degree 12 = A * F8".into(), poly_witness(&rearranged)),
            ],
        )
    } else {
        match id {
            IdentityId::BundleXiPlus | IdentityId::BundleXiMinus => {
                let (l, r) = if id == IdentityId::BundleXiPlus { bundle_xi_plus()? } else { bundle_xi_minus()? };
                let mut rep = VerificationReport::from_witnesses(id, order, cap, vec![("ch".into(), bundle_witness(&l, &r))]);
                rep.notes.push(format!("rank {}", l.rank()));
                rep
            }
            IdentityId::SqrtRelation => {
                VerificationReport::from_witnesses(id, order, cap, vec![("R^2 - Q W".into(), sqrt_relation(order)?)])
            }
            IdentityId::B1Check => VerificationReport::from_witnesses(id, order, cap, vec![("B1".into(), b1_check()?)]),
            IdentityId::D1Check => VerificationReport::from_witnesses(id, order, cap, vec![("D1".into(), d1_check()?)]),
            IdentityId::PcTheorem => verify_pc_and_mod2()?,
            IdentityId::Mod2Orientable => verify_mod2_orientable()?,
            IdentityId::Differ1 => verify_differ(DifferId::First)?,
            IdentityId::Differ2 => verify_differ(DifferId::Second)?,
            _ => unreachable!("every id is dispatched above"),
        }
    };
    report.order = order;
    report.millis = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Runs `ids` in parallel; reports come back in the order given.
pub fn verify_all(ids: &[IdentityId], order: u32) -> Result<Vec<VerificationReport>, AnomalyError> {
    ids.par_iter().map(|&id| verify_identity(id, order)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert!("nosuch".parse::<IdentityId>().is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = verify_identity(IdentityId::BundleXiMinus, 2).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for k in ["id", "status", "order", "cap", "witness", "millis"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert_eq!(v["id"], "bundle_xi_minus");
        let back: VerificationReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn factorization_ratios() {
        let r = verify_factorization(IdentityId::FactSpincQ, 3).unwrap();
        assert!(r.passed(), "{}", r.witness);
        assert!(verify_factorization(IdentityId::O1, 3).is_err());
    }
}
